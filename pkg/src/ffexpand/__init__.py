"""Exact digit expansions and automatic-sequence machinery for completions
of rational function fields over finite fields."""

from ._kernels import BACKEND as KERNEL_BACKEND
from .algebra import (
    NEG_DEG,
    FieldCtx,
    FieldElem,
    Poly,
    RatFunc,
    field_make,
    poly_divmod,
    rat_degree,
    val_p,
)
from .errors import (
    DomainError,
    NoRelationError,
    ParseError,
    StateCapError,
    ZeroScanError,
)

__version__ = "0.1.0"
