"""Exact arithmetic in Q and in K = Q[x]/(p), plus certified root isolation.

All construction arithmetic stays in the abstract field K; complex
embeddings (one per root of the modulus) are used only for numeric
certificates and rendering. Rationals are arbitrary precision throughout.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import gcd as int_gcd, isqrt

import numpy as np

from . import _ffpoly
from .errors import (
    DivisionByZero,
    FieldMismatch,
    PolyParseError,
    PrecisionExhausted,
    ReducibleModulus,
    TrivialField,
)

Rational = Fraction

_SCREEN_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MAX_SCREEN_PRIMES = 6


# ---------------------------------------------------------------------------
# polynomials over Q
# ---------------------------------------------------------------------------

def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"expected int or Fraction, got {type(x).__name__}")


@dataclass(frozen=True)
class IntPoly:
    """Univariate polynomial with rational coefficients, ascending degree.

    The zero polynomial has an empty coefficient tuple; otherwise the
    leading coefficient is nonzero.
    """

    coeffs: tuple[Fraction, ...]

    @classmethod
    def from_coeffs(cls, seq) -> "IntPoly":
        cs = [_as_fraction(c) for c in seq]
        while cs and cs[-1] == 0:
            cs.pop()
        return cls(tuple(cs))

    @classmethod
    def zero(cls) -> "IntPoly":
        return cls(())

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> Fraction:
        if self.is_zero:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def __add__(self, other: "IntPoly") -> "IntPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPoly.from_coeffs(self[i] + other[i] for i in range(n))

    def __sub__(self, other: "IntPoly") -> "IntPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        return IntPoly.from_coeffs(self[i] - other[i] for i in range(n))

    def __neg__(self) -> "IntPoly":
        return IntPoly(tuple(-c for c in self.coeffs))

    def __mul__(self, other: "IntPoly") -> "IntPoly":
        if self.is_zero or other.is_zero:
            return IntPoly.zero()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly.from_coeffs(out)

    def scale(self, q) -> "IntPoly":
        q = _as_fraction(q)
        if q == 0:
            return IntPoly.zero()
        return IntPoly(tuple(c * q for c in self.coeffs))

    def divmod(self, other: "IntPoly") -> tuple["IntPoly", "IntPoly"]:
        if other.is_zero:
            raise DivisionByZero("polynomial division by zero")
        quo = [Fraction(0)] * max(0, self.degree - other.degree + 1)
        rem = list(self.coeffs)
        d, lead = other.degree, other.leading
        while len(rem) - 1 >= d and rem:
            c = rem[-1] / lead
            shift = len(rem) - 1 - d
            quo[shift] = c
            for i, b in enumerate(other.coeffs):
                rem[i + shift] -= c * b
            while rem and rem[-1] == 0:
                rem.pop()
        return IntPoly.from_coeffs(quo), IntPoly.from_coeffs(rem)

    def derivative(self) -> "IntPoly":
        return IntPoly.from_coeffs(i * c for i, c in enumerate(self.coeffs) if i > 0)

    def eval_fraction(self, x: Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_in(self, x):
        """Horner evaluation at any value supporting + and * with Fraction."""
        acc = x * 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def content(self) -> Fraction:
        if self.is_zero:
            return Fraction(0)
        num = 0
        den = 1
        for c in self.coeffs:
            num = int_gcd(num, abs(c.numerator))
            den = den * c.denominator // int_gcd(den, c.denominator)
        return Fraction(num, den)

    def primitive(self) -> "IntPoly":
        """Integer-coefficient primitive part with positive leading coefficient."""
        if self.is_zero:
            return self
        c = self.content()
        if self.leading < 0:
            c = -c
        return self.scale(1 / c)

    def monic(self) -> "IntPoly":
        if self.is_zero:
            raise ValueError("cannot make the zero polynomial monic")
        return self.scale(1 / self.leading)

    @property
    def is_monic(self) -> bool:
        return not self.is_zero and self.leading == 1

    def int_coeffs(self) -> tuple[int, ...]:
        prim = self
        if any(c.denominator != 1 for c in prim.coeffs):
            raise ValueError("polynomial has non-integer coefficients")
        return tuple(c.numerator for c in prim.coeffs)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self[i]
            if c == 0:
                continue
            mag = abs(c)
            if i == 0:
                body = str(mag)
            elif i == 1:
                body = "x" if mag == 1 else f"{mag}*x"
            else:
                body = f"x^{i}" if mag == 1 else f"{mag}*x^{i}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)


def poly_gcd(f: IntPoly, g: IntPoly) -> IntPoly:
    """Monic gcd over Q."""
    while not g.is_zero:
        f, g = g, f.divmod(g)[1]
    if f.is_zero:
        return f
    return f.monic()


def poly_xgcd(f: IntPoly, g: IntPoly) -> tuple[IntPoly, IntPoly, IntPoly]:
    """Extended Euclid over Q: returns (d, s, t) with s*f + t*g = d, d monic."""
    r0, r1 = f, g
    s0, s1 = IntPoly.from_coeffs([1]), IntPoly.zero()
    t0, t1 = IntPoly.zero(), IntPoly.from_coeffs([1])
    while not r1.is_zero:
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if r0.is_zero:
        return r0, s0, t0
    lead = r0.leading
    return r0.scale(1 / lead), s0.scale(1 / lead), t0.scale(1 / lead)


def squarefree_part(p: IntPoly) -> IntPoly:
    g = poly_gcd(p, p.derivative())
    if g.degree <= 0:
        return p
    return p.divmod(g)[0]


# ---------------------------------------------------------------------------
# polynomial input grammar:  "x^3 - 2",  "2*x^2 - 3*x + 1",  "2x^2-3x+1"
# ---------------------------------------------------------------------------

_TERM_RE = re.compile(r"([+-]?)(\d+)?(\*?x(?:\^(\d+))?)?")


def parse_poly(text: str) -> IntPoly:
    s = re.sub(r"\s+", "", text)
    if not s:
        raise PolyParseError("empty polynomial")
    terms = re.findall(r"[+-]?[^+-]+", s)
    if "".join(terms) != s:
        raise PolyParseError(f"cannot parse polynomial: {text!r}")
    coeffs: dict[int, int] = {}
    for term in terms:
        m = _TERM_RE.fullmatch(term)
        if not m or (m.group(2) is None and m.group(3) is None):
            raise PolyParseError(f"bad term {term!r} in {text!r}")
        sign = -1 if m.group(1) == "-" else 1
        coeff = int(m.group(2)) if m.group(2) is not None else 1
        if m.group(3) is None:
            exp = 0
        elif m.group(4) is None:
            exp = 1
        else:
            exp = int(m.group(4))
        coeffs[exp] = coeffs.get(exp, 0) + sign * coeff
    top = max(coeffs)
    return IntPoly.from_coeffs([coeffs.get(i, 0) for i in range(top + 1)])


# ---------------------------------------------------------------------------
# irreducibility over Q
# ---------------------------------------------------------------------------

IRREDUCIBLE = "irreducible"
REDUCIBLE = "reducible"
UNVERIFIED = "unverified"


@dataclass(frozen=True)
class Irreducibility:
    status: str
    factor: IntPoly | None = None
    witness: str = ""

    @property
    def is_irreducible(self) -> bool:
        return self.status == IRREDUCIBLE

    @property
    def is_reducible(self) -> bool:
        return self.status == REDUCIBLE


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _rational_root(p: IntPoly) -> Fraction | None:
    cs = p.primitive().int_coeffs()
    c0, cn = cs[0], cs[-1]
    if c0 == 0:
        return Fraction(0)
    for den in _divisors(cn):
        for num in _divisors(c0):
            for cand in (Fraction(num, den), Fraction(-num, den)):
                if p.eval_fraction(cand) == 0:
                    return cand
    return None


def _quartic_quadratic_factor(p: IntPoly) -> IntPoly | None:
    """A quadratic factor of a rational-root-free quartic, or None.

    Works on the monic integer model q(y) = lead^3 * p(y/lead) and maps any
    factor back through y = lead*x.
    """
    cs = p.primitive().int_coeffs()
    lead = cs[4]
    q = [cs[0] * lead**3, cs[1] * lead**2, cs[2] * lead, cs[3], 1]

    def check(b: int, c: int) -> IntPoly | None:
        e, f = q[3] - b, (q[0] // c if c != 0 and q[0] % c == 0 else None)
        if f is None:
            return None
        if b * e + c + f != q[2] or b * f + c * e != q[1]:
            return None
        factor_x = IntPoly.from_coeffs([c, b * lead, lead * lead]).primitive()
        if p.divmod(factor_x)[1].is_zero:
            return factor_x
        return None

    for c_abs in _divisors(q[0]):
        for c in (c_abs, -c_abs):
            f = q[0] // c
            if f != c:
                num = q[1] - c * q[3]
                den = f - c
                if num % den:
                    continue
                hit = check(num // den, c)
                if hit is not None:
                    return hit
            else:
                # b*e + c + f = q2 with e = q3 - b gives b^2 - q3*b + (q2-c-f) = 0
                disc = q[3] * q[3] - 4 * (q[2] - c - f)
                if disc < 0:
                    continue
                root = isqrt(disc)
                if root * root != disc:
                    continue
                for b2 in {(q[3] + root), (q[3] - root)}:
                    if b2 % 2 == 0:
                        hit = check(b2 // 2, c)
                        if hit is not None:
                            return hit
    return None


def check_irreducible(p: IntPoly) -> Irreducibility:
    """Exact answer through degree 4; finite-field screen beyond.

    Degree <= 4 uses the rational root test plus quadratic-factor
    enumeration. Degree >= 5 reduces mod several small primes and compares
    factor degree patterns; Unverified is a legitimate outcome there.
    """
    if p.degree < 1:
        raise ValueError("irreducibility is undefined for constants")
    prim = p.primitive()
    n = prim.degree
    if n == 1:
        return Irreducibility(IRREDUCIBLE, witness="degree 1")

    root = _rational_root(prim)
    if root is not None:
        factor = IntPoly.from_coeffs([-root.numerator, root.denominator]).primitive()
        return Irreducibility(REDUCIBLE, factor=factor, witness=f"rational root {root}")
    if n <= 3:
        return Irreducibility(IRREDUCIBLE, witness="no rational root")
    if n == 4:
        quad = _quartic_quadratic_factor(prim)
        if quad is not None:
            return Irreducibility(REDUCIBLE, factor=quad, witness="quadratic factor")
        return Irreducibility(IRREDUCIBLE, witness="no rational root, no quadratic factor")

    ics = list(prim.int_coeffs())
    possible: set[int] | None = None
    used = []
    for q in _SCREEN_PRIMES:
        if len(used) >= _MAX_SCREEN_PRIMES:
            break
        pattern = _ffpoly.factor_degree_pattern(ics, q)
        if pattern is None:
            continue
        used.append(q)
        degs = _ffpoly.proper_factor_degrees(pattern)
        possible = degs if possible is None else (possible & degs)
        if not possible:
            return Irreducibility(
                IRREDUCIBLE, witness=f"degree patterns mod {used} rule out proper factors"
            )
    return Irreducibility(UNVERIFIED, witness=f"screen primes {used} inconclusive")


# ---------------------------------------------------------------------------
# the abstract field K and its elements
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class NumberField:
    """K = Q[x]/(modulus), modulus monic of degree n >= 2."""

    modulus: IntPoly
    source: IntPoly = dc_field(compare=False)
    irreducibility: str = dc_field(compare=False)

    @classmethod
    def create(cls, p: IntPoly, unchecked: bool = False) -> "NumberField":
        prim = p.primitive()
        if prim.degree < 2:
            raise TrivialField(f"need degree >= 2, got {prim.degree}")
        if unchecked:
            status = "unchecked"
        else:
            res = check_irreducible(prim)
            if res.is_reducible:
                raise ReducibleModulus(
                    f"{prim} is reducible, factor {res.factor}", factor=res.factor
                )
            status = res.status
        return cls(modulus=prim.monic(), source=prim, irreducibility=status)

    @property
    def n(self) -> int:
        return self.modulus.degree

    def element(self, coeffs) -> "NFElement":
        cs = tuple(_as_fraction(c) for c in coeffs)
        if len(cs) != self.n:
            raise ValueError(f"need exactly {self.n} coefficients, got {len(cs)}")
        return NFElement(self, cs)

    def from_rational(self, q) -> "NFElement":
        q = _as_fraction(q)
        return self.element((q,) + (Fraction(0),) * (self.n - 1))

    @property
    def zero(self) -> "NFElement":
        return self.from_rational(0)

    @property
    def one(self) -> "NFElement":
        return self.from_rational(1)

    @property
    def gen(self) -> "NFElement":
        cs = [Fraction(0)] * self.n
        cs[1] = Fraction(1)
        return self.element(cs)

    def reduce(self, raw: list[Fraction]) -> tuple[Fraction, ...]:
        """Reduce a coefficient list of any length mod the monic modulus."""
        cs = list(raw)
        mod = self.modulus.coeffs
        n = self.n
        for i in range(len(cs) - 1, n - 1, -1):
            c = cs[i]
            if c:
                cs[i] = Fraction(0)
                for j in range(n):
                    cs[i - n + j] -= c * mod[j]
        cs = cs[:n]
        while len(cs) < n:
            cs.append(Fraction(0))
        return tuple(cs)


@dataclass(frozen=True)
class NFElement:
    field: NumberField
    coeffs: tuple[Fraction, ...]

    def _coerce(self, other) -> "NFElement | None":
        if isinstance(other, NFElement):
            if other.field != self.field:
                raise FieldMismatch("elements belong to different number fields")
            return other
        if isinstance(other, (int, Fraction)):
            return self.field.from_rational(other)
        return None

    @property
    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    @property
    def is_one(self) -> bool:
        return self.coeffs[0] == 1 and all(c == 0 for c in self.coeffs[1:])

    @property
    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def __bool__(self) -> bool:
        return not self.is_zero

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return NFElement(self.field, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return NFElement(self.field, tuple(a - b for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return NFElement(self.field, tuple(-c for c in self.coeffs))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = self.field.n
        out = [Fraction(0)] * (2 * n - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    out[i + j] += a * b
        return NFElement(self.field, self.field.reduce(out))

    __rmul__ = __mul__

    def inv(self) -> "NFElement":
        """Multiplicative inverse by extended Euclid against the modulus.

        A nonconstant gcd means the modulus is reducible; the discovered
        factor is reported so callers can surface it.
        """
        if self.is_zero:
            raise DivisionByZero("inverse of zero")
        rep = IntPoly.from_coeffs(self.coeffs)
        d, s, _ = poly_xgcd(rep, self.field.modulus)
        if d.degree > 0:
            raise ReducibleModulus(
                f"zero divisor detected: gcd {d.primitive()} divides the modulus",
                factor=d.primitive(),
            )
        return NFElement(self.field, self.field.reduce(list(s.coeffs)))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inv()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inv()

    def rep_poly(self) -> IntPoly:
        return IntPoly.from_coeffs(self.coeffs)

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        names = ["1", "z"] + [f"z^{i}" for i in range(2, self.field.n)]
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                parts.append(str(c))
            elif abs(c) == 1:
                parts.append(("-" if c < 0 else "") + names[i])
            else:
                parts.append(f"{c}*{names[i]}")
        return " + ".join(parts).replace("+ -", "- ")


def nf_add(a: NFElement, b: NFElement) -> NFElement:
    return a + b


def nf_mul(a: NFElement, b: NFElement) -> NFElement:
    return a * b


def nf_neg(a: NFElement) -> NFElement:
    return -a


def nf_inv(a: NFElement) -> NFElement:
    return a.inv()


# ---------------------------------------------------------------------------
# embeddings K -> C: certified root isolation and outward-rounded evaluation
# ---------------------------------------------------------------------------

_EPS = 4e-16     # covers one rounding plus one coefficient-conversion slip
_TINY = 1e-300


@dataclass(frozen=True)
class EmbeddingApprox:
    """A certified disc around one root of the modulus."""

    root_index: int
    center: complex
    radius: float


@dataclass(frozen=True)
class Disc:
    """Complex disc used as an outward-rounded interval."""

    center: complex
    radius: float

    def __add__(self, other: "Disc") -> "Disc":
        c = self.center + other.center
        r = self.radius + other.radius
        return Disc(c, r + abs(c) * _EPS + _TINY)

    def __mul__(self, other: "Disc") -> "Disc":
        c = self.center * other.center
        r = (
            abs(self.center) * other.radius
            + abs(other.center) * self.radius
            + self.radius * other.radius
        )
        return Disc(c, r + abs(c) * _EPS + _TINY)

    @classmethod
    def from_fraction(cls, q: Fraction) -> "Disc":
        c = float(q)
        return cls(complex(c, 0.0), abs(c) * _EPS + _TINY)

    def contains_zero(self) -> bool:
        return abs(self.center) <= self.radius

    def disjoint_from(self, other: "Disc") -> bool:
        gap = abs(self.center - other.center) * (1 - 1e-12)
        return gap > self.radius + other.radius


def _eval_with_error(coeffs: list[float], w: complex) -> tuple[complex, float]:
    """Horner evaluation with a running bound on accumulated rounding error."""
    val = 0j
    err = 0.0
    aw = abs(w)
    for c in reversed(coeffs):
        val = val * w + c
        err = err * aw + (abs(val) + abs(c)) * _EPS + _TINY
    return val, err


def isolate_roots(p: IntPoly, precision: float = 1e-9) -> list[EmbeddingApprox]:
    """Disjoint certified discs, one per root of the squarefree part of p.

    Starting values come from the companion matrix; Newton polishing plus
    the a-posteriori bound n*|p(w)/p'(w)| certifies that each disc holds at
    least one root, and pairwise disjointness of n discs upgrades that to
    exactly one root each.
    """
    sf = squarefree_part(p).monic()
    n = sf.degree
    if n < 1:
        raise ValueError("no roots: polynomial is constant")
    cs = [float(c) for c in sf.coeffs]
    dcs = [float(c) for c in sf.derivative().coeffs]

    approx = [complex(w) for w in np.roots(cs[::-1])]
    for _ in range(80):
        moved = 0.0
        for i, w in enumerate(approx):
            fw, _ = _eval_with_error(cs, w)
            dfw, _ = _eval_with_error(dcs, w)
            if dfw == 0:
                continue
            step = fw / dfw
            approx[i] = w - step
            moved = max(moved, abs(step))
        if moved < 1e-16:
            break

    approx.sort(key=lambda w: (w.real, w.imag))
    discs = []
    for i, w in enumerate(approx):
        fw, ferr = _eval_with_error(cs, w)
        dfw, derr = _eval_with_error(dcs, w)
        lower = abs(dfw) - derr
        if lower <= 0:
            raise PrecisionExhausted(
                f"cannot bound the derivative away from zero near root {i}"
            )
        radius = n * (abs(fw) + ferr) / lower
        discs.append(EmbeddingApprox(i, w, radius))

    for e in discs:
        if e.radius > precision:
            raise PrecisionExhausted(
                f"residual bound {e.radius:.3e} exceeds requested precision {precision:.3e}"
            )
    for i in range(len(discs)):
        for j in range(i + 1, len(discs)):
            a, b = discs[i], discs[j]
            if not Disc(a.center, a.radius).disjoint_from(Disc(b.center, b.radius)):
                raise PrecisionExhausted(
                    f"root discs {i} and {j} overlap at the working float width"
                )
    return discs


def embed(a: NFElement, e: EmbeddingApprox) -> Disc:
    """Image of a under the embedding sending gen to the certified root disc."""
    root = Disc(e.center, e.radius)
    acc = Disc(0j, 0.0)
    for c in reversed(a.coeffs):
        acc = acc * root + Disc.from_fraction(c)
    return acc
