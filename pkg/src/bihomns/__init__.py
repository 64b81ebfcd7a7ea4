"""Exact structure-constant checks for BiHom-NS algebras and the operators that induce them."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    BiHomError,
    ConsistencyError,
    ConstructionFailed,
    DimensionMismatch,
    DivisionByZero,
    FieldMismatch,
    KindMismatch,
    MissingComponent,
    ParseError,
    PrerequisiteFailed,
    SpaceTooLarge,
    UnknownChecker,
    UnknownIdentity,
    ValidationError,
)
from .multilinear import (  # noqa: E402
    BilinearOp,
    LinearMap,
    Vector,
    apply_bilinear,
    apply_linear,
    compose_maps,
    is_multiplicative,
    maps_commute,
)
from .report import CheckReport  # noqa: E402
from .scalars import GF2, GF3, QQ, Field, Scalar, scalar_add, scalar_inv, scalar_mul  # noqa: E402
from .structures import (  # noqa: E402
    AlgebraPresentation,
    BimodulePresentation,
    check_bihom_associative,
    check_bihom_ns,
    check_bihom_tridendriform,
    check_bimodule,
    check_bimodule_algebra,
    check_hochschild_2cocycle,
    check_morphism,
    check_ns,
    regular_bimodule,
)
from .operators import (  # noqa: E402
    GenNijInstance,
    TwistedRBInstance,
    check_gen_nijenhuis,
    check_nijenhuis,
    check_reynolds,
    check_twisted_rb,
    specialize_corollary_1,
    specialize_corollary_2,
)
