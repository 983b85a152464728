"""Exact toolkit for identities, invariants and degenerations of
finite-dimensional algebras given by structure constants."""

from .algebra import Algebra, SquareMatrix, base_change, product, substitute_algebra_params
from .catalog import (
    builtin,
    builtin_catalog,
    load_catalog_dir,
    load_certificates_dir,
    parse_algebra_file,
    parse_algebras,
    parse_certificate_file,
    serialize_algebra,
)
from .degeneration import (
    Certificate,
    Verdict,
    check_necessary_conditions,
    closure_dimension,
    family_closure_dimension_estimate,
    trivial_scaling_certificate,
    verify_certificate,
)
from .errors import CDAlgError, GraphInconsistencyError, InputError, ParseError
from .graph import build_graph, components_report, saturate, to_dot, to_json
from .identities import check_cd, check_symmetry, is_cd_algebra
from .invariants import (
    annihilator_dimension,
    derivation_algebra,
    invariant_profile,
    orbit_dimension,
    power_series_dims,
    square_dimension,
)
from .kernels import BACKEND
from .scalars import Scalar, limit_at_zero, scalar, substitute, valuation_at_t, var

__version__ = "0.1.0"
