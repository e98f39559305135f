"""Recovery of the encoded number and the Galois separation certificate.

decode reads nothing but valences and coordinates: find the four points
with the most lines, check that they are collinear, take their cross-ratio.
The separation certificate then evaluates the decoded element under every
embedding of K and certifies that the resulting discs are pairwise
disjoint, which is the machine-checkable form of "the conjugate
configuration encodes a different number".
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .configuration import Configuration, valences
from .errors import AmbiguousValences, PlanecodeError, PrecisionExhausted
from .numberfield import (
    Disc,
    EmbeddingApprox,
    IntPoly,
    NFElement,
    embed,
    isolate_roots,
)
from .pipeline import run_pipeline
from .projgeom import cross_ratio


def decode(c: Configuration) -> NFElement:
    """Cross-ratio of the four highest-valence points, in valence order.

    The marks are never consulted; the valence ladder alone must single
    out the quadruple, and any tie among or directly below the top four is
    an error rather than a tie-break.
    """
    report = valences(c)
    entries = report.entries
    if len(entries) < 4:
        raise AmbiguousValences(f"only {len(entries)} points, need at least 4")
    ladder = [v for _, v in entries[:5]] + ([0] if len(entries) == 4 else [])
    if not all(ladder[i] > ladder[i + 1] for i in range(4)):
        raise AmbiguousValences(f"valence ladder {ladder[:5]} is not strict")
    pts = [c.points[i] for i, _ in entries[:4]]
    return cross_ratio(pts[0], pts[1], pts[2], pts[3])


@dataclass(frozen=True)
class SeparationCertificate:
    poly: IntPoly
    seed: int
    precision: float
    line_count: int
    mark_valences: dict[str, int]
    max_other_valence: int
    decoded: tuple[Fraction, ...]
    equals_generator: bool
    roots: tuple[EmbeddingApprox, ...]
    values: tuple[Disc, ...]
    pairwise_disjoint: bool
    statement: str


def _pairwise_disjoint(discs) -> bool:
    return all(
        discs[i].disjoint_from(discs[j])
        for i in range(len(discs))
        for j in range(i + 1, len(discs))
    )


def separation_certificate(
    p: IntPoly, precision: float = 1e-9, seed: int = 0
) -> SeparationCertificate:
    """Build once, decode, embed at every root, certify disjointness.

    Root discs are refined internally (up to the double-precision floor)
    if the decoded values overlap at the requested precision.
    """
    cfg = run_pipeline(p, seed=seed)
    decoded = decode(cfg)
    if decoded != cfg.field.gen:
        raise PlanecodeError("decoded element is not the field generator")

    roots: tuple[EmbeddingApprox, ...] = ()
    images: list[Disc] = []
    prec = precision
    for _ in range(3):
        roots = tuple(isolate_roots(p, prec))
        images = [embed(decoded, e) for e in roots]
        if _pairwise_disjoint(images):
            break
        prec /= 1000.0
    else:
        raise PrecisionExhausted("decoded values overlap at the working float width")

    marked = set(cfg.marks.values())
    mark_valences = {label: cfg.valence(i) for label, i in cfg.marks.items()}
    max_other = max(
        (cfg.valence(i) for i in range(len(cfg.points)) if i not in marked), default=0
    )
    return SeparationCertificate(
        poly=cfg.source if cfg.source is not None else p,
        seed=seed,
        precision=precision,
        line_count=cfg.line_count,
        mark_valences=mark_valences,
        max_other_valence=max_other,
        decoded=decoded.coeffs,
        equals_generator=True,
        roots=roots,
        values=tuple(images),
        pairwise_disjoint=True,
        statement=(
            "for every pair of embeddings i != j the decoded invariants differ: "
            "the certified value discs are pairwise disjoint"
        ),
    )
