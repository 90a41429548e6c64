"""Exact state tomography on the pair groupoid over a finite set.

The package builds the convolution algebra of the pair groupoid (plain
n x n matrices in disguise), the group of bisections (permutations) and its
affine subgroup for odd prime n, frames of bisection characteristic
functions with closed-form dual frames, tomogram extraction, and state
reconstruction, plus the two-level tomographic sets and a prime-dimension
MUB construction.
"""

from .algebra import (
    StateFunction,
    convolve,
    evaluate_state,
    hs_inner,
    hs_norm,
    involution,
    is_positive_semidefinite,
    random_state,
    state_from_json,
    state_to_json,
    tracial_state,
    trivial_projector,
    unit_element,
    validate_state_matrix,
)
from .errors import (
    DimensionMismatch,
    IllConditioned,
    IncompleteFamily,
    InvalidState,
    LengthMismatch,
    NoUniqueFixedPoint,
    NotComposable,
    NotInvertible,
    NotOddPrime,
    NotPrime,
    NotSquare,
    PairTomoError,
    TooLarge,
    UnbiasednessFailed,
    Unsupported,
    ZeroArgument,
)
from .frames import (
    DualFrame,
    Frame,
    FrameBounds,
    analysis,
    dual_frame,
    frame_bounds_empirical,
    frame_from_affine,
    frame_from_operators,
    frame_from_symmetric,
    frame_report,
    metric_apply_bruteforce,
    metric_apply_closed,
    metric_inverse_apply,
    metric_spectrum,
    metric_superoperator,
    reconstruct,
    resolution_residual,
    span_projector_superoperator,
    synthesis,
    uniform_pinching,
)
from .groupoid import (
    AffineBisection,
    Bisection,
    Transition,
    affine_compose,
    affine_fixed_point,
    bisection_compose,
    compose,
    enumerate_affine,
    enumerate_symmetric,
    format_element,
    identity_bisection,
    inverse,
    parse_element,
    permutation_matrix,
    unit,
)
from .modular import (
    DiscreteLogTable,
    discrete_log,
    is_odd_prime,
    mod_inverse,
    primitive_root,
)
from .qubit import (
    BlochTomogram,
    SicTetrahedron,
    bloch_probabilities,
    bloch_reconstruct,
    pauli_tomographic_set,
    purity_defect,
    qubit_demo_report,
    qubit_mub,
    sic_probabilities,
    sic_reconstruct,
    sic_tetrahedron,
)
from .tomography import (
    AdmissibilityVerdict,
    EigenBasis,
    Tomogram,
    TomogramFamily,
    affine_basis_family,
    canonical_eigenbasis,
    eigen_residual,
    fourier_identity_residual,
    mub_family,
    mub_max_deviation,
    orthonormality_residual,
    parse_tomogram_csv,
    reconstruct_state,
    sampling_function,
    tomogram,
    tomogram_csv,
    tomogram_family,
    validate_tomogram_family,
    weyl_commutation_check,
)

__version__ = "0.1.0"
