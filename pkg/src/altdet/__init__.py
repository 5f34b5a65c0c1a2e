"""Exact alternating-sum determinant identities and the searches they power."""

from .engine import (
    DenseTensorForm,
    IdentityReport,
    MatrixTuple,
    MultilinearForm,
    alternating_sum,
    invariant_at_identity,
    verify_identity,
)
from .errors import AltdetError, BudgetError, DimensionError, InputError
from .exact import Matrix, Polynomial, Scalar, det, format_rational, parse_rational, poly_det, poly_mul
from .instances import (
    SplitMix64,
    load_instance,
    parse_instance_doc,
    random_colorful_instance,
    random_dense_form,
    random_matrix_tuple,
    random_spinor_instance,
)
from .onn import (
    ColorfulInstance,
    LatinSquare,
    OnnReport,
    TransversalSelection,
    alon_tarsi_count,
    colorful_form,
    latin_sign,
    latin_squares,
    rota_search,
    verify_onn,
)
from .perms import Shape, SignedPerm, SignedPermTuple, act, enumerate_product, enumerate_signed
from .svrtan import (
    Choice,
    SpinorInstance,
    SvrtanReport,
    as_engine_instance,
    choice_det,
    choice_polys,
    nonzero_term_census,
    svrtan_search,
    verify_svrtan,
)

__all__ = [
    "AltdetError",
    "BudgetError",
    "Choice",
    "ColorfulInstance",
    "DenseTensorForm",
    "DimensionError",
    "IdentityReport",
    "InputError",
    "LatinSquare",
    "Matrix",
    "MatrixTuple",
    "MultilinearForm",
    "OnnReport",
    "Polynomial",
    "Scalar",
    "Shape",
    "SignedPerm",
    "SignedPermTuple",
    "SpinorInstance",
    "SplitMix64",
    "SvrtanReport",
    "TransversalSelection",
    "act",
    "alon_tarsi_count",
    "alternating_sum",
    "as_engine_instance",
    "choice_det",
    "choice_polys",
    "colorful_form",
    "det",
    "enumerate_product",
    "enumerate_signed",
    "format_rational",
    "invariant_at_identity",
    "latin_sign",
    "latin_squares",
    "load_instance",
    "nonzero_term_census",
    "parse_instance_doc",
    "parse_rational",
    "poly_det",
    "poly_mul",
    "random_colorful_instance",
    "random_dense_form",
    "random_matrix_tuple",
    "random_spinor_instance",
    "rota_search",
    "svrtan_search",
    "verify_identity",
    "verify_onn",
    "verify_svrtan",
]

__version__ = "0.1.0"
