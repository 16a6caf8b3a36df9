"""Compound matrices, higher adjugates and eigenvector wedges from eigenvalues."""

__version__ = "0.1.0"

from .combinatorics import IndexSubset, complement, lex_subsets, subset_rank, subset_sign, subset_unrank
from .compound import (
    adjugate_by_conjugation,
    adjugate_trace,
    complement_sign_matrix,
    compound,
    delta_matrix,
    det_sum,
    higher_adjugate,
)
from .errors import *  # noqa: F401,F403
from .exterior import WedgeVector, pairing, wedge_decode, wedge_encode
from .matrix import Matrix, det, det_laplace, inverse, kernel_basis, rank, rank1_factor, rref, submatrix_det
from .matrixio import parse_matrix_file, parse_matrix_text, serialize_matrix
from .recovery import (
    HermitianMagnitudes,
    RecoveryResult,
    TheoremReport,
    dual_basis,
    hermitian_ev_magnitudes,
    normal_left_from_right,
    recover_wedge,
    verify_theorem,
)
from .scalars import DEFAULT_TOL, EXACT, FLOAT, QQi, TolerancePolicy
from .spectral import (
    CharPoly,
    SpectrumEntry,
    aberth_roots,
    charpoly_faddeev,
    charpoly_via_adjugates,
    cluster_multiplicities,
    geometric_multiplicity,
    jacobi_derivative,
    poly_derivative_eval,
    rational_roots,
    spectrum,
)
