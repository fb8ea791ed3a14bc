"""Galois self-orthogonal generalized Reed-Solomon codes over GF(p^h).

Finite-field arithmetic, exact linear algebra, certified constructions of
e-Galois self-orthogonal (extended) GRS codes, hull-controlled shortening
and puncturing, and quantum MDS parameters.
"""

from sogrs.codes import (
    DistanceResult,
    HullReport,
    LinearCode,
    Verdict,
    galois_dual,
    galois_inner,
    gram,
    hull,
    hull_dim,
    is_mds,
    is_self_orthogonal,
    min_distance,
    puncture,
    shorten,
)
from sogrs.constructions import ConstructionParams, ConstructionResult, build, k_bound
from sogrs.derive import (
    classify_eprime,
    decompose,
    derive_hull_mds,
    derive_so_mds,
    enumerate_extended_params,
    puncture_with_hull,
    replay,
    shorten_with_hull,
)
from sogrs.field import FieldContext, FieldElement, galois_root, is_power_residue, make_field
from sogrs.grs import (
    CertificatePoly,
    GrsSpec,
    compute_u,
    dual_membership,
    generator_matrix,
    grs_code,
    verify_so_egrs,
    verify_so_grs,
)
from sogrs.linalg import MatrixGF, nullspace, rank, rref
from sogrs.quantum import QuantumParams, hermitian_to_quantum, quantum_from_extended

__version__ = "0.1.0"

__all__ = [
    "CertificatePoly", "ConstructionParams", "ConstructionResult", "DistanceResult",
    "FieldContext", "FieldElement", "GrsSpec", "HullReport", "LinearCode", "MatrixGF",
    "QuantumParams", "Verdict", "build", "classify_eprime", "compute_u", "decompose",
    "derive_hull_mds", "derive_so_mds", "dual_membership", "enumerate_extended_params",
    "galois_dual", "galois_inner", "galois_root", "generator_matrix", "gram", "grs_code",
    "hermitian_to_quantum", "hull", "hull_dim", "is_mds", "is_power_residue",
    "is_self_orthogonal", "k_bound", "make_field", "min_distance", "nullspace",
    "puncture", "puncture_with_hull", "quantum_from_extended", "rank", "replay", "rref",
    "shorten", "shorten_with_hull", "verify_so_egrs", "verify_so_grs",
]
