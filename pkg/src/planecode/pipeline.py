"""End-to-end construction: polynomial in, finished configuration out."""

from __future__ import annotations

from dataclasses import dataclass

from .configuration import Configuration, amplify_marks, augment_even_valence
from .numberfield import IntPoly
from .slp_compiler import compile_polynomial, emit_configuration


@dataclass(frozen=True)
class PipelineConfig:
    """Inputs recorded verbatim in every output for reproducibility."""

    poly: IntPoly
    seed: int = 0
    precision: float = 1e-9
    poly_text: str | None = None


def run_pipeline(poly: IntPoly, seed: int = 0) -> Configuration:
    """Compile, emit gadgets, even out valences, amplify the marks."""
    slp = compile_polynomial(poly)
    cfg = emit_configuration(slp, seed=seed)
    cfg = augment_even_valence(cfg)
    return amplify_marks(cfg)
