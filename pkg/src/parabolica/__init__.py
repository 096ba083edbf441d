"""Parabolic curves, special parabolic points and Viro patchworking."""

from .poly import (
    NEG_INF,
    ParamPoly,
    ParseError,
    SparsePoly,
    TPoly,
    from_exchange,
    parse_param_poly,
    parse_poly,
    quasihomothety,
    restrict,
    specialize,
    to_exchange,
)

__version__ = "0.1.0"
