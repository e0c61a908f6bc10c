"""SL2(C) representations of knot groups and their cyclic branched covers."""

from .errors import (
    ComputationError,
    DataConsistencyError,
    DimensionError,
    InvalidKnotData,
    ParameterError,
    SchemaError,
    SliceMismatchError,
    Sl2SliceError,
)
from .exactlin import (
    AbelianInvariants,
    IntMatrix,
    LaurentPoly,
    alexander_polynomial,
    block_circulant,
    branched_cover_homology,
    cyclic_cover_homology,
    det,
    smith_normal_form,
)
from .presentation import (
    LinPresentation,
    Presentation,
    abelianization_exponent,
    derive_VU,
    knot_group,
    lift_cn,
    lift_sigman,
    tau_action,
    two_bridge_group,
)
from .reps import (
    Representation,
    character_sample,
    enumerate_dihedral,
    in_slice,
    involution_iota,
    is_irreducible,
    is_metabelian,
    phi_n,
    slice_search,
    slice_trace,
    tau_equivariance,
    two_to_one_probe,
    verify,
)
from .sl2 import ONE, QUAT_I, QUAT_J, QUAT_K, Sl2, Word, evaluate_word, matrix_order

from .pretzel import BrieskornGroup, surjectivity_report
from .registry import REGISTRY
from .twobridge import TwoBridgeKnot, factorization_check, riley_polynomial_minus1

__version__ = "0.1.0"
