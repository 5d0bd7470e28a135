"""Circulant Riemannian 4-manifolds: connection, curvature and structure checks."""

from ._core import (
    CURVATURE_CONVENTION,
    AdmissibilityError,
    DomainError,
    Error,
    FieldJet,
    InvalidArgument,
    ManifoldSpec,
    ParseError,
    ScalarField,
    SingularityError,
    SolverError,
    admissibility,
    christoffel_at,
    coeff_angles,
    find_orthogonal_q_basis,
    induces_q_basis,
    inverse_metric,
    load_spec,
    metric_at,
    nabla_q,
    parse,
    q_apply,
    riemann_at,
    sectional_curvature,
    spec_from_json,
    verify,
)

__version__ = "0.1.0"
