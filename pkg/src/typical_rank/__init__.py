"""Explicit minimal-rank decompositions and typical ranks of real 3-way tensors."""

from .census import CensusReport, census
from .errors import (
    ArgumentError,
    DimensionError,
    NoDecompositionAtP,
    NotGenericError,
    ParseError,
    RankDeficientError,
    SingularError,
    TypicalRankError,
    ValidationError,
)
from .generic import (
    Classification,
    ContractionY,
    GenericResult,
    HypersurfacePoint,
    Outcome,
    Verdict,
    assemble_b,
    classify,
    contract,
    decompose_generic,
    decompose_x_of_y,
    eval_m,
    sample_points,
)
from .rank_tables import TypicalRankAnswer, hurwitz_radon, typical_ranks
from .tall import TallShape, build_h, build_yj, canonical_witness, tall_decompose
from .tensor import (
    Decomposition,
    RankOneTerm,
    Tensor3,
    build_x_of_y,
    from_pdq,
    gl_action,
    permute_decomposition,
    permute_modes,
    random_gaussian,
    reconstruct,
    relative_residual,
    slice_stack,
)

__version__ = "0.1.0"
