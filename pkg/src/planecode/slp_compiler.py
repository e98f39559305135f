"""Straight-line programs for p(z) = 0 and their geometric realization.

compile_polynomial turns the defining polynomial into a Horner-form SLP
over registers; emit_configuration replays every instruction through a
small line gadget on the marked axis ell = {y = 0}, where the point
(v : 0 : 1) stands for the number v:

  addition      four lines through an auxiliary point P = (0 : h : 1):
                transfer b up the vertical pencil to height h, then slide
                the segment P-(a,0) over to it; the translated line meets
                ell at (a+b : 0 : 1).
  multiplication transfer b to the y-axis along the slope -1 pencil, draw
                the parallel of P-(a,0) through it (similar triangles give
                a*b/h on ell), then rescale by h through the unit height
                point (0 : 1 : 1) to land exactly on (a*b : 0 : 1).
  negation      reflect through the y-axis: up along slope -1, back down
                along slope +1.

Auxiliary heights h come from the deterministic rational stream, so the
whole construction is defined over K with Galois-stable choices. Integer
constants are built from the unit point by binary double-and-add.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Callable, Union

from .configuration import Configuration, ParamStream, derive_points, RETRY_BUDGET
from .errors import (
    GadgetDegenerate,
    GenericityExhausted,
    NotARoot,
    ReducibleModulus,
    TrivialField,
)
from .numberfield import IntPoly, NFElement, NumberField, check_irreducible
from .projgeom import ProjLine, ProjPoint, direction_of, join, meet, point


# ---------------------------------------------------------------------------
# instructions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LoadZ:
    pass


@dataclass(frozen=True)
class Const:
    value: int


@dataclass(frozen=True)
class Add:
    left: int
    right: int


@dataclass(frozen=True)
class Mul:
    left: int
    right: int


@dataclass(frozen=True)
class Neg:
    operand: int


Instr = Union[LoadZ, Const, Add, Mul, Neg]


@dataclass(frozen=True)
class SLP:
    instructions: tuple[Instr, ...]
    result: int
    source: IntPoly

    def validate(self) -> None:
        for i, instr in enumerate(self.instructions):
            operands = ()
            if isinstance(instr, (Add, Mul)):
                operands = (instr.left, instr.right)
            elif isinstance(instr, Neg):
                operands = (instr.operand,)
            elif isinstance(instr, Const) and instr.value < 0:
                raise ValueError("Const holds nonnegative integers only")
            if any(not (0 <= r < i) for r in operands):
                raise ValueError(f"instruction {i} references a later register")
        if not (0 <= self.result < len(self.instructions)):
            raise ValueError("result register out of range")

    def evaluate(self, field: NumberField) -> list[NFElement]:
        values: list[NFElement] = []
        for instr in self.instructions:
            if isinstance(instr, LoadZ):
                values.append(field.gen)
            elif isinstance(instr, Const):
                values.append(field.from_rational(instr.value))
            elif isinstance(instr, Add):
                values.append(values[instr.left] + values[instr.right])
            elif isinstance(instr, Mul):
                values.append(values[instr.left] * values[instr.right])
            elif isinstance(instr, Neg):
                values.append(-values[instr.operand])
            else:
                raise TypeError(f"unknown instruction {instr!r}")
        return values


def compile_polynomial(p: IntPoly, check: bool = True) -> SLP:
    """Horner-form SLP computing p(z); zero coefficients are skipped.

    With check=True (the default) a modulus proven reducible is rejected
    up front; an Unverified verdict is accepted and any zero divisor is
    caught later during inversion.
    """
    prim = p.primitive()
    if prim.degree < 2:
        raise TrivialField(f"need degree >= 2, got {prim.degree}")
    if check:
        res = check_irreducible(prim)
        if res.is_reducible:
            raise ReducibleModulus(
                f"{prim} is reducible, factor {res.factor}", factor=res.factor
            )
    ints = prim.int_coeffs()
    n = prim.degree

    instructions: list[Instr] = []
    const_cache: dict[int, int] = {}

    def emit(instr: Instr) -> int:
        instructions.append(instr)
        return len(instructions) - 1

    load = emit(LoadZ())

    def signed_const(c: int) -> int:
        if c in const_cache:
            return const_cache[c]
        if c >= 0:
            reg = emit(Const(c))
        else:
            reg = emit(Neg(signed_const(-c)))
        const_cache[c] = reg
        return reg

    acc: int | None = None if ints[n] == 1 else signed_const(ints[n])
    for j in range(n - 1, -1, -1):
        acc = load if acc is None else emit(Mul(acc, load))
        if ints[j] != 0:
            acc = emit(Add(acc, signed_const(ints[j])))
    return SLP(tuple(instructions), acc, prim)


# ---------------------------------------------------------------------------
# gadget emission
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GadgetTrace:
    kind: str
    emitted_lines: tuple[ProjLine, ...]
    output_point: ProjPoint
    aux_params: tuple[Fraction, ...]
    inputs: tuple[int, ...] = ()
    output_reg: int | None = None


def register_point(value: NFElement) -> ProjPoint:
    """The point (v : 0 : 1) on the marked axis standing for the number v."""
    return point(value.field, value, 0)


def _ell(field: NumberField) -> ProjLine:
    return ProjLine.of(field.zero, field.one, field.zero)


def _yaxis(field: NumberField) -> ProjLine:
    return ProjLine.of(field.one, field.zero, field.zero)


def emit_add_gadget(a: NFElement, b: NFElement, h: Fraction) -> GadgetTrace:
    f = a.field
    if h == 0:
        raise GadgetDegenerate("auxiliary height must be nonzero")
    if a.is_zero or b.is_zero:
        raise GadgetDegenerate("addition gadget needs nonzero summands")
    aux = point(f, 0, h)
    l1 = join(point(f, 0, 0), aux)                 # the y-axis
    l2 = join(register_point(b), point(f, 0, 1, 0))  # vertical through (b, 0)
    hline = join(aux, point(f, 1, 0, 0))           # y = h
    corner = meet(l2, hline)                       # (b, h)
    l3 = join(aux, register_point(a))
    l4 = join(corner, direction_of(l3))
    out = meet(l4, _ell(f))
    assert out == register_point(a + b)
    return GadgetTrace("add", (l1, l2, l3, l4, hline), out, (h,))


def emit_mul_gadget(a: NFElement, b: NFElement, h: Fraction) -> GadgetTrace:
    f = a.field
    if h == 0:
        raise GadgetDegenerate("auxiliary height must be nonzero")
    if a.is_zero or b.is_zero:
        raise GadgetDegenerate("multiplication gadget needs nonzero factors")
    if b == f.from_rational(h):
        raise GadgetDegenerate("transfer height collides with auxiliary height")
    t1 = join(register_point(b), point(f, -1, 1, 0))
    lifted = meet(t1, _yaxis(f))                   # (0 : b : 1)
    aux = point(f, 0, h)
    m1 = join(aux, register_point(a))
    m2 = join(lifted, direction_of(m1))
    scaled = meet(m2, _ell(f))                     # (a*b/h : 0 : 1)
    m3 = join(point(f, 0, 1), scaled)
    m4 = join(aux, direction_of(m3))
    out = meet(m4, _ell(f))
    assert out == register_point(a * b)
    return GadgetTrace("mul", (t1, m1, m2, m3, m4), out, (h,))


def emit_neg_gadget(b: NFElement) -> GadgetTrace:
    f = b.field
    if b.is_zero:
        raise GadgetDegenerate("negation gadget needs a nonzero input")
    n1 = join(register_point(b), point(f, -1, 1, 0))
    lifted = meet(n1, _yaxis(f))                   # (0 : b : 1)
    n2 = join(lifted, point(f, 1, 1, 0))
    out = meet(n2, _ell(f))
    assert out == register_point(-b)
    return GadgetTrace("neg", (n1, n2), out, ())


def _with_retry(make: Callable[[Fraction], GadgetTrace], stream: ParamStream) -> GadgetTrace:
    for _ in range(RETRY_BUDGET):
        h = stream.next()
        try:
            return make(h)
        except GadgetDegenerate:
            continue
    raise GenericityExhausted(f"gadget stayed degenerate for {RETRY_BUDGET} heights")


def _emit_const_chain(
    value: int, field: NumberField, stream: ParamStream
) -> GadgetTrace:
    """Build the point (value : 0 : 1) from the unit by double-and-add."""
    assert value >= 0
    lines: list[ProjLine] = []
    params: list[Fraction] = []
    if value >= 2:
        current = field.one
        for bit in bin(value)[3:]:
            steps = [(current, current)]
            if bit == "1":
                steps.append((current + current, field.one))
            for x, y in steps:
                tr = _with_retry(lambda h, x=x, y=y: emit_add_gadget(x, y, h), stream)
                lines.extend(tr.emitted_lines)
                params.extend(tr.aux_params)
                current = x + y
    return GadgetTrace(
        "const", tuple(lines), register_point(field.from_rational(value)), tuple(params)
    )


def emit_configuration(
    slp: SLP, seed: int = 0, field: NumberField | None = None
) -> Configuration:
    """Replay the SLP through gadgets and return the raw configuration.

    The result register must land exactly on (0 : 0 : 1); anything else
    means the modulus was not the minimal polynomial of z.
    """
    slp.validate()
    if field is None:
        field = NumberField.create(slp.source)
    values = slp.evaluate(field)
    stream = ParamStream(seed)

    traces: list[GadgetTrace] = []
    for reg, instr in enumerate(slp.instructions):
        if isinstance(instr, LoadZ):
            trace = GadgetTrace("load", (), register_point(values[reg]), ())
        elif isinstance(instr, Const):
            trace = _emit_const_chain(instr.value, field, stream)
        elif isinstance(instr, Add):
            i, j = instr.left, instr.right
            trace = _with_retry(
                lambda h: emit_add_gadget(values[i], values[j], h), stream
            )
            trace = replace(trace, inputs=(i, j))
        elif isinstance(instr, Mul):
            i, j = instr.left, instr.right
            trace = _with_retry(
                lambda h: emit_mul_gadget(values[i], values[j], h), stream
            )
            trace = replace(trace, inputs=(i, j))
        else:
            trace = replace(emit_neg_gadget(values[instr.operand]), inputs=(instr.operand,))
        trace = replace(trace, output_reg=reg)
        if trace.output_point != register_point(values[reg]):
            raise NotARoot(f"gadget output for register {reg} disagrees with its value")
        traces.append(trace)

    if not values[slp.result].is_zero:
        raise NotARoot(f"p(z) evaluates to {values[slp.result]}, not 0")

    ordered: dict[ProjLine, None] = {}
    ordered[_ell(field)] = None
    ordered[_yaxis(field)] = None
    for tr in traces:
        for l in tr.emitted_lines:
            ordered.setdefault(l, None)

    cfg = derive_points(
        list(ordered), seed=seed, params_consumed=stream.cursor, source=slp.source
    )
    index = {p: i for i, p in enumerate(cfg.points)}
    gen_pt = register_point(field.gen)
    marker_points = {
        "zero": point(field, 0, 0),
        "one": point(field, 1, 0),
        "inf": point(field, 1, 0, 0),
        "z": gen_pt,
    }
    marks = {}
    for label, pt in marker_points.items():
        if pt not in index:
            raise NotARoot(f"marked point {label} is not an intersection point")
        marks[label] = index[pt]
    if len(set(marks.values())) != 4:
        raise NotARoot("marked points are not pairwise distinct")
    return replace(cfg, marks=marks)
