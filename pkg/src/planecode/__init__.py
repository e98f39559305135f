"""planecode: algebraic numbers as point-line configurations.

Pipeline: compile the minimal polynomial into a straight-line program,
realize every instruction as a small line gadget over K = Q[x]/(p), even
out the valences, amplify the four marks 0, 1, inf, z to the top of the
valence ladder, and recover the number as the cross-ratio of the four
busiest points. Embeddings of K certify that Galois conjugates decode to
provably different values, and the cover module does the (Z/2)^3
branched-cover divisor bookkeeping on the blown-up plane.
"""

from .configuration import (
    Configuration,
    ParamStream,
    ValenceReport,
    amplify_marks,
    augment_even_valence,
    derive_points,
    line_count,
    valences,
)
from .cover import (
    ALPHA,
    BranchData,
    CoverReport,
    GroupElement,
    PicClass,
    ample_certificate,
    assign_branch_divisors,
    build_cover_report,
    characters,
    check_cover_hypotheses,
    compute_M,
    group_elements,
    pairing,
    select_m,
)
from .decode import SeparationCertificate, decode, separation_certificate
from .numberfield import (
    Disc,
    EmbeddingApprox,
    IntPoly,
    Irreducibility,
    NFElement,
    NumberField,
    Rational,
    check_irreducible,
    embed,
    isolate_roots,
    nf_add,
    nf_inv,
    nf_mul,
    nf_neg,
    parse_poly,
)
from .pipeline import PipelineConfig, run_pipeline
from .projgeom import (
    ProjLine,
    ProjPoint,
    collinear,
    cross_ratio,
    incident,
    join,
    line,
    meet,
    point,
    transform,
)
from .slp_compiler import (
    SLP,
    GadgetTrace,
    compile_polynomial,
    emit_add_gadget,
    emit_configuration,
    emit_mul_gadget,
    emit_neg_gadget,
    register_point,
)

__version__ = "0.1.0"
