"""Spinor bilinears, their Dirac-Kahler tensor components and the identities among them."""

from .algebra import (
    CALIBRATION,
    METRIC,
    TENSOR_PAIRS,
    build_pauli_basis,
    build_sigma_generators,
    gamma_matrices,
    levi_civita,
)
from .decomposition import (
    Bispinor,
    Spinor4,
    TensorSet,
    decompose_bispinor,
    decompose_pair,
    decompose_quad,
    isotropic_pair,
    outer_product,
    reconstruct_bispinor,
)
from .dynamics import (
    FieldEquationReport,
    PlaneWaveField,
    dirac_plane_wave,
    linear_system_residual,
    nonlinear_system_residual,
    on_shell_momentum,
    rewrite_envelope,
)
from .identities import (
    IdentityReport,
    fit_quad_ansatz,
    residual_fierz,
    residual_isotropy,
    residual_orthogonality,
    residual_quad_ansatz,
)
from .lorentz import (
    LorentzElement,
    covariance_residual,
    element_from_boost,
    element_from_rotation,
    transform_spinor,
    transform_tensorset,
)
from .sectors import (
    SECTORS,
    PairCase,
    SolverStall,
    pair_case_build,
    pair_case_classify,
    sector_build,
    sector_classify,
    sector_residuals,
)

__all__ = [name for name in dir() if not name.startswith("_")]
