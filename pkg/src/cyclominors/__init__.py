"""Exact verification of sparsity bounds for polynomials vanishing at roots of unity."""

from cyclominors.cyclotomic import (
    CycElem,
    cyclotomic_polynomial,
    geometric_root_sum,
    parse_elem,
    root_power,
)
from cyclominors.errors import TheoremViolation, UsageError
from cyclominors.linalg import CycMatrix, CycVector, determinant, kernel_basis, rank
from cyclominors.spectral import (
    SparsePoly,
    circulant,
    dft_matrix,
    eigencheck,
    find_vanishing_minors,
    minor,
    rank_lemma_check,
    root_count,
    root_count_gcd,
    verify_chebotarev,
)
from cyclominors.uncertainty import (
    check_bound,
    classify_extremal,
    decompose_progression,
    enumerate_extremal,
    generate_extremal,
    prime_case_check,
    rotate,
    scale,
    verify_theorem_exhaustive,
    weight,
)

__version__ = "0.1.0"
