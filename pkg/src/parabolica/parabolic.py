"""Hessian curve, the E1/E2 pair and pointwise classification."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from gmpy2 import mpq

from .poly import ParamPoly, SparsePoly, _Bivariate, as_rational

__all__ = [
    "ParabolicSystem",
    "build_system",
    "hessian_matrix",
    "q_form",
    "PointTag",
    "PointClass",
    "classify_point",
]


@dataclass(frozen=True)
class ParabolicSystem:
    """Polynomials attached to f.

    h  : Hessian f_xx f_yy - f_xy^2
    e1 : f_xx (-h_y) + f_xy h_x
    e2 : f_xy (-h_y) + f_yy h_x
    c  : Q_f(-h_y, h_x), the second fundamental form along the tangent of V(h)
    """

    source: _Bivariate
    h: _Bivariate
    e1: _Bivariate
    e2: _Bivariate
    c: _Bivariate

    @property
    def hx(self):
        return self.h.diff("x")

    @property
    def hy(self):
        return self.h.diff("y")


def hessian_matrix(f: _Bivariate):
    fx, fy = f.diff("x"), f.diff("y")
    return fx.diff("x"), fx.diff("y"), fy.diff("y")


def build_system(f: _Bivariate) -> ParabolicSystem:
    """Exact H, E1, E2 and C of a SparsePoly or ParamPoly."""
    if not isinstance(f, (SparsePoly, ParamPoly)):
        raise TypeError("build_system expects a SparsePoly or ParamPoly")
    fxx, fxy, fyy = hessian_matrix(f)
    h = fxx * fyy - fxy * fxy
    hx, hy = h.diff("x"), h.diff("y")
    u, v = -hy, hx
    e1 = fxx * u + fxy * v
    e2 = fxy * u + fyy * v
    # C evaluated straight from the quadratic form, not from e1/e2
    c = fxx * u * u + fxy * u * v * 2 + fyy * v * v
    return ParabolicSystem(source=f, h=h, e1=e1, e2=e2, c=c)


def q_form(f: SparsePoly, q, v) -> mpq:
    """v^T Hess(f)(q) v, exact."""
    fxx, fxy, fyy = hessian_matrix(f)
    x, y = (as_rational(a) for a in q)
    v1, v2 = (as_rational(a) for a in v)
    return fxx(x, y) * v1 * v1 + 2 * fxy(x, y) * v1 * v2 + fyy(x, y) * v2 * v2


class PointTag(str, enum.Enum):
    ELLIPTIC = "elliptic"
    HYPERBOLIC = "hyperbolic"
    GENERIC_CANDIDATE = "parabolic-generic-candidate"
    SPECIAL_CANDIDATE = "parabolic-special-candidate"
    HESSIAN_SINGULAR = "hessian-singular"


@dataclass(frozen=True)
class PointClass:
    """Classification of a rational point.

    ``degenerate`` marks points where the whole Hessian matrix vanishes;
    such points always also carry the HESSIAN_SINGULAR tag.
    """

    tag: PointTag
    degenerate: bool = False

    def __str__(self):
        return self.tag.value + (" (parabolic-degenerate)" if self.degenerate else "")


def classify_point(system, q) -> PointClass:
    """Sign and derivative pattern of the Hessian at an exact rational point.

    ``system`` is a ParabolicSystem or the SparsePoly f itself.
    """
    sys_ = system if isinstance(system, ParabolicSystem) else build_system(system)
    f = sys_.source
    if not isinstance(f, SparsePoly):
        raise TypeError("classify_point needs a system over rational coefficients")
    x, y = (as_rational(a) for a in q)
    hv = sys_.h(x, y)
    if hv > 0:
        return PointClass(PointTag.ELLIPTIC)
    if hv < 0:
        return PointClass(PointTag.HYPERBOLIC)
    fxx, fxy, fyy = hessian_matrix(f)
    degenerate = not (fxx(x, y) or fxy(x, y) or fyy(x, y))
    if not (sys_.hx(x, y) or sys_.hy(x, y)):
        return PointClass(PointTag.HESSIAN_SINGULAR, degenerate)
    if sys_.e1(x, y) or sys_.e2(x, y):
        return PointClass(PointTag.GENERIC_CANDIDATE, degenerate)
    return PointClass(PointTag.SPECIAL_CANDIDATE, degenerate)
