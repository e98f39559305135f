"""Divisor bookkeeping for the (Z/2)^3 cover of the blown-up plane.

The plane is blown up at every configuration point; Pic is Z*H plus one
exceptional class E_q per point q. The branch assignment takes D_alpha to
the proper transform of the line union (class L*H - sum e_q E_q) and every
other nonzero D_g to m_g * H for a general degree-m_g curve, where the
multiplicity map m satisfies m_0 = 0, m_alpha = L and sum m_g * g = 0.
That last constraint makes every class sum (chi, g) D_g even, so the half
classes M_chi are integral; ampleness of M_chi is certified by a sufficient
Nakai-Moishezon criterion.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import Bounds, LinearConstraint, milp

from .configuration import Configuration
from .errors import InvalidMMap, MissedIntersection, ParityViolation
from .projgeom import meet


@dataclass(frozen=True)
class GroupElement:
    """Element of (Z/2)^3, also used for characters; pairing is dot mod 2."""

    bits: tuple[int, int, int]

    @classmethod
    def from_index(cls, i: int) -> "GroupElement":
        return cls(((i >> 2) & 1, (i >> 1) & 1, i & 1))

    @property
    def index(self) -> int:
        return self.bits[0] * 4 + self.bits[1] * 2 + self.bits[2]

    @property
    def is_zero(self) -> bool:
        return self.bits == (0, 0, 0)

    def __xor__(self, other: "GroupElement") -> "GroupElement":
        return GroupElement(tuple(a ^ b for a, b in zip(self.bits, other.bits)))

    def __str__(self) -> str:
        return "".join(str(b) for b in self.bits)


ZERO = GroupElement((0, 0, 0))
ALPHA = GroupElement((1, 0, 0))


def group_elements() -> tuple[GroupElement, ...]:
    return tuple(GroupElement.from_index(i) for i in range(8))


def characters() -> tuple[GroupElement, ...]:
    return group_elements()


def pairing(chi: GroupElement, g: GroupElement) -> int:
    return sum(a * b for a, b in zip(chi.bits, g.bits)) % 2


@dataclass(frozen=True)
class PicClass:
    """The class h*H - sum_q b_q E_q on the blow-up."""

    h: int
    b: tuple[int, ...]

    @classmethod
    def zero(cls, npoints: int) -> "PicClass":
        return cls(0, (0,) * npoints)

    def __add__(self, other: "PicClass") -> "PicClass":
        return PicClass(self.h + other.h, tuple(x + y for x, y in zip(self.b, other.b)))

    def scale(self, k: int) -> "PicClass":
        return PicClass(k * self.h, tuple(k * x for x in self.b))

    @property
    def all_even(self) -> bool:
        return self.h % 2 == 0 and all(x % 2 == 0 for x in self.b)

    def half(self) -> "PicClass":
        if not self.all_even:
            raise ParityViolation(f"class with h = {self.h} is not divisible by 2")
        return PicClass(self.h // 2, tuple(x // 2 for x in self.b))


@dataclass
class BranchData:
    m: dict[GroupElement, int]
    D: dict[GroupElement, PicClass]
    line_count: int
    point_valences: tuple[int, ...]


def _m_value(m: dict[GroupElement, int], g: GroupElement) -> int:
    return m.get(g, 0)


def validate_m(m: dict[GroupElement, int], line_count: int) -> None:
    """The three constraints: m_0 = 0, m_alpha = L, sum m_g * g = 0."""
    for g, v in m.items():
        if not isinstance(v, int) or v < 0:
            raise InvalidMMap(f"m_{g} = {v!r} is not a nonnegative integer")
    if _m_value(m, ZERO) != 0:
        raise InvalidMMap(f"m_0 = {_m_value(m, ZERO)}, must be 0")
    if _m_value(m, ALPHA) != line_count:
        raise InvalidMMap(f"m_alpha = {_m_value(m, ALPHA)}, must equal L = {line_count}")
    total = ZERO
    for g in group_elements():
        if _m_value(m, g) % 2 == 1:
            total = total ^ g
    if not total.is_zero:
        raise InvalidMMap(f"sum m_g * g = {total}, must vanish in (Z/2)^3")


def assign_branch_divisors(c: Configuration, m: dict[GroupElement, int]) -> BranchData:
    """D_alpha is the proper transform class; other D_g are m_g * H."""
    L = c.line_count
    validate_m(m, L)
    e = tuple(c.all_valences())
    npoints = len(e)
    D: dict[GroupElement, PicClass] = {}
    for g in group_elements():
        if g == ZERO:
            D[g] = PicClass.zero(npoints)
        elif g == ALPHA:
            D[g] = PicClass(L, e)
        else:
            D[g] = PicClass(_m_value(m, g), (0,) * npoints)
    full_m = {g: (L if g == ALPHA else _m_value(m, g)) for g in group_elements()}
    return BranchData(m=full_m, D=D, line_count=L, point_valences=e)


def compute_M(b: BranchData) -> dict[GroupElement, PicClass]:
    """Half of sum_g (chi, g) D_g for each character, after an evenness check.

    Any odd coefficient indicates an upstream fault (odd valence or an
    invalid multiplicity map) and raises ParityViolation.
    """
    npoints = len(b.point_valences)
    out: dict[GroupElement, PicClass] = {}
    for chi in characters():
        raw = PicClass.zero(npoints)
        for g in group_elements():
            if pairing(chi, g):
                raw = raw + b.D[g]
        if not raw.all_even:
            raise ParityViolation(
                f"sum (chi, g) D_g for chi = {chi} has an odd coefficient"
            )
        out[chi] = raw.half()
    return out


@dataclass(frozen=True)
class HypothesisReport:
    proper_transform_smooth: bool
    pairs_checked: int
    independence: str
    genericity_assumptions: tuple[str, ...]


def check_cover_hypotheses(b: BranchData, c: Configuration) -> HypothesisReport:
    """Hypotheses of the branched-cover theorem, checked or recorded.

    (i) is exact: the proper transforms of the lines are pairwise disjoint
    because every pairwise intersection was blown up. (ii) is a tautology
    for distinct nonzero elements of (Z/2)^3. (iii) concerns general curves
    that exist only as classes, so it is recorded as assumptions.
    """
    index = set(c.points)
    pairs = 0
    for i in range(len(c.lines)):
        for j in range(i + 1, len(c.lines)):
            q = meet(c.lines[i], c.lines[j])
            pairs += 1
            if q not in index:
                raise MissedIntersection(
                    f"intersection of lines {i} and {j} was not blown up"
                )
    assumptions = []
    for g in group_elements():
        if g in (ZERO, ALPHA):
            continue
        if b.m.get(g, 0) > 0:
            assumptions.append(
                f"D_{g}: a general smooth plane curve of degree {b.m[g]} meeting the "
                "lines transversally, through no blown-up point and no triple point"
            )
    return HypothesisReport(
        proper_transform_smooth=True,
        pairs_checked=pairs,
        independence=(
            "any two distinct nonzero elements of (Z/2)^3 are independent, so the "
            "condition 'D_g meets D_g' only for independent g, g'' holds vacuously"
        ),
        genericity_assumptions=tuple(assumptions),
    )


@dataclass(frozen=True)
class AmpleVerdict:
    certified: bool
    reason: str


_AMPLE_JUSTIFICATION = (
    "Nakai-Moishezon on a blow-up of P^2 at distinct points: an irreducible curve "
    "of degree e has multiplicity at most e at each point, so with b_q >= 1 for "
    "all q and h > sum b_q the class meets every curve and itself positively"
)


def ample_certificate(cls: PicClass) -> AmpleVerdict:
    """Sufficient criterion: b_q >= 1 for every blown-up point and h > sum b_q."""
    low = [q for q, x in enumerate(cls.b) if x < 1]
    if low:
        return AmpleVerdict(
            False, f"degree on exceptional curve E_{low[0]} is {cls.b[low[0]]} < 1"
        )
    total = sum(cls.b)
    if cls.h <= total:
        return AmpleVerdict(False, f"h = {cls.h} <= sum of b_q = {total}")
    return AmpleVerdict(True, _AMPLE_JUSTIFICATION)


def _x1_characters() -> list[GroupElement]:
    return [chi for chi in characters() if pairing(chi, ALPHA) == 1]


def select_m(c: Configuration) -> dict[GroupElement, int]:
    """Smallest multiplicity map whose (chi, alpha) = 1 classes all certify.

    Minimal total degree, ties broken lexicographically along the group
    enumeration. For each of the eight parity patterns compatible with the
    vanishing constraint this is a six-variable integer program, solved
    exactly and then refined coordinate by coordinate for the lex order.
    """
    L = c.line_count
    E = sum(c.all_valences())
    need = max(0, E + 1 - L)
    free = [g for g in group_elements() if g not in (ZERO, ALPHA)]
    x1 = _x1_characters()
    cover = {g: [pairing(chi, g) for chi in x1] for g in free}
    target = ALPHA if L % 2 == 1 else ZERO

    def run_milp(eps, objective, pins):
        """Solve over k >= 0 with m_g = 2 k_g + eps_g; pins are equalities on k."""
        a_rows, lbs, ubs = [], [], []
        for ci in range(len(x1)):
            a_rows.append([2 * cover[g][ci] for g in free])
            base = sum(eps[i] * cover[g][ci] for i, g in enumerate(free))
            lbs.append(float(need - base))
            ubs.append(np.inf)
        for row, val in pins:
            a_rows.append(row)
            lbs.append(float(val))
            ubs.append(float(val))
        res = milp(
            c=np.array(objective, dtype=float),
            constraints=LinearConstraint(np.array(a_rows, dtype=float), lbs, ubs),
            integrality=np.ones(6),
            bounds=Bounds(0, float(need + 2)),
        )
        if not res.success:
            return None
        return [int(round(v)) for v in res.x]

    best: tuple[int, tuple[int, ...]] | None = None
    for mask in range(64):
        eps = tuple((mask >> i) & 1 for i in range(6))
        parity = ZERO
        for gi, g in enumerate(free):
            if eps[gi]:
                parity = parity ^ g
        if parity != target:
            continue
        k = run_milp(eps, [2.0] * 6, [])
        if k is None:
            continue
        # pin the total, then lex-minimize the free values front to back
        pins = [([1] * 6, sum(k))]
        values: list[int] = []
        for gi in range(6):
            sol = run_milp(eps, [1.0 if i == gi else 0.0 for i in range(6)], pins)
            values.append(2 * sol[gi] + eps[gi])
            pins.append(([1 if i == gi else 0 for i in range(6)], sol[gi]))
        cand = (sum(values), tuple(values))
        if best is None or cand < best:
            best = cand

    assert best is not None, "a valid m always exists"
    m = {ZERO: 0, ALPHA: L}
    for gi, g in enumerate(free):
        m[g] = best[1][gi]
    validate_m(m, L)
    branch = assign_branch_divisors(c, m)
    classes = compute_M(branch)
    for chi in x1:
        verdict = ample_certificate(classes[chi])
        assert verdict.certified, f"selected m fails ampleness for chi = {chi}"
    return m


@dataclass(frozen=True)
class CoverReport:
    m: dict[GroupElement, int]
    branch: BranchData
    classes: dict[GroupElement, PicClass]
    hypotheses: HypothesisReport
    ampleness: dict[GroupElement, AmpleVerdict]
    nef_gap: tuple[GroupElement, ...]
    source_poly: object = None
    seed: int = 0


def build_cover_report(c: Configuration, m: dict[GroupElement, int] | None = None) -> CoverReport:
    """Full bookkeeping bundle: m, divisors, half classes, checks, verdicts.

    Nonzero characters with (chi, alpha) = 0 get a pure H-multiple, which
    is nef but trivial on every exceptional curve; they are reported as a
    known gap rather than certified.
    """
    if m is None:
        m = select_m(c)
    branch = assign_branch_divisors(c, m)
    classes = compute_M(branch)
    hypotheses = check_cover_hypotheses(branch, c)
    ampleness = {
        chi: ample_certificate(classes[chi])
        for chi in characters()
        if not chi.is_zero
    }
    nef_gap = tuple(
        chi for chi in characters() if not chi.is_zero and pairing(chi, ALPHA) == 0
    )
    return CoverReport(
        m=m,
        branch=branch,
        classes=classes,
        hypotheses=hypotheses,
        ampleness=ampleness,
        nef_gap=nef_gap,
        source_poly=c.source,
        seed=c.seed,
    )
