"""Regular subdivisions, patchworking polynomials and face flattening."""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

import numpy as np

from .poly import ParamPoly, SparsePoly, TPoly, _Bivariate, as_rational, quasihomothety

__all__ = [
    "Lifting",
    "Face",
    "Subdivision",
    "DegenerateLiftingError",
    "NonIntegerNormalError",
    "SupportNotCoveredError",
    "normalize_lifting",
    "regular_subdivision",
    "validate_inducing",
    "patchworking_polynomial",
    "level_restriction",
    "face_normal",
    "flatten_face",
    "face_gamma",
    "read_lifting_csv",
    "write_lifting_csv",
    "convex_hull_2d",
]


class DegenerateLiftingError(ValueError):
    """The lifting domain spans no two-dimensional polygon."""


class NonIntegerNormalError(ValueError):
    """The face normal has non-integer entries; rescale the lifting."""


class SupportNotCoveredError(ValueError):
    """The support of f is not contained in the lifting domain."""


@dataclass(frozen=True)
class Lifting:
    """Non-negative integer heights on a finite set of lattice points."""

    values: Mapping

    def __post_init__(self):
        clean = {}
        for p, v in dict(self.values).items():
            p = (int(p[0]), int(p[1]))
            if isinstance(v, bool) or not isinstance(v, int):
                if isinstance(v, Fraction) and v.denominator == 1:
                    v = int(v)
                else:
                    raise ValueError(f"lifting value at {p} must be an integer; use normalize_lifting")
            if v < 0:
                raise ValueError(f"lifting value at {p} is negative")
            clean[p] = v
        object.__setattr__(self, "values", dict(sorted(clean.items())))

    @property
    def domain(self) -> frozenset:
        return frozenset(self.values)

    def __getitem__(self, p):
        return self.values[tuple(p)]

    def __hash__(self):
        return hash(tuple(self.values.items()))


def normalize_lifting(values: Mapping) -> tuple[Lifting, int]:
    """Scale rational heights by the LCM of their denominators.

    Returns ``(lifting, d)`` with integer heights d*lambda. Negative values
    are shifted up to zero first by adding a constant, which leaves the
    induced subdivision unchanged.
    """
    vals = {}
    for p, v in values.items():
        q = as_rational(v)
        vals[tuple(p)] = Fraction(int(q.numerator), int(q.denominator))
    lo = min(vals.values())
    if lo < 0:
        vals = {p: v - lo for p, v in vals.items()}
    d = 1
    for v in vals.values():
        d = d * v.denominator // math.gcd(d, v.denominator)
    return Lifting({p: int(v * d) for p, v in vals.items()}), d


# ---------------------------------------------------------------- 2d geometry


def _cross(o, a, b) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def convex_hull_2d(points: Iterable) -> list[tuple[int, int]]:
    """Vertices of the convex hull, counter-clockwise, exact integer arithmetic."""
    pts = sorted(set(tuple(p) for p in points))
    if len(pts) <= 2:
        return pts
    lower: list = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _twice_area(poly) -> int:
    n = len(poly)
    return abs(sum(poly[k][0] * poly[(k + 1) % n][1] - poly[(k + 1) % n][0] * poly[k][1] for k in range(n)))


# ---------------------------------------------------------------- subdivision


@dataclass(frozen=True)
class Face:
    """A maximal cell: vertices (ccw), all domain points on it, and its plane.

    On the face lambda(i, j) + alpha i + beta j = level.
    """

    vertices: tuple
    points: frozenset
    alpha: Fraction
    beta: Fraction
    level: Fraction

    @property
    def normal(self) -> tuple[Fraction, Fraction]:
        return (self.alpha, self.beta)

    def sort_key(self):
        return tuple(sorted(self.vertices))


@dataclass(frozen=True)
class Subdivision:
    lifting: Lifting
    faces: tuple

    def face_vertex_sets(self) -> set:
        return {frozenset(f.vertices) for f in self.faces}

    def to_json(self) -> dict:
        return {
            "faces": [
                {
                    "vertices": [list(v) for v in f.vertices],
                    "normal": [_frac_json(f.alpha), _frac_json(f.beta)],
                    "level": _frac_json(f.level),
                }
                for f in self.faces
            ]
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


def _frac_json(q: Fraction):
    return int(q) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _face_from_plane(lift: Lifting, alpha: Fraction, beta: Fraction, level: Fraction) -> Face:
    pts = frozenset(p for p, v in lift.values.items() if v + alpha * p[0] + beta * p[1] == level)
    hull = convex_hull_2d(pts)
    return Face(vertices=tuple(hull), points=pts, alpha=alpha, beta=beta, level=level)


def _plane_through(a, b, c):
    """(alpha, beta, level) of the non-vertical plane through three lifted points, or None."""
    u = (b[0] - a[0], b[1] - a[1], b[2] - a[2])
    v = (c[0] - a[0], c[1] - a[1], c[2] - a[2])
    n = (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])
    if n[2] == 0:
        return None
    alpha = Fraction(n[0], n[2])
    beta = Fraction(n[1], n[2])
    level = alpha * a[0] + beta * a[1] + a[2]
    return alpha, beta, level


def _finish(lift: Lifting, planes: Iterable) -> Subdivision:
    faces = {}
    for alpha, beta, level in planes:
        if (alpha, beta, level) in faces:
            continue
        faces[(alpha, beta, level)] = _face_from_plane(lift, alpha, beta, level)
    ordered = sorted(faces.values(), key=Face.sort_key)
    return Subdivision(lifting=lift, faces=tuple(ordered))


def regular_subdivision(lift: Lifting) -> Subdivision:
    """Subdivision induced by the lower convex hull of the lifted points.

    Candidate lower facets come from Qhull; every facet plane is then
    recomputed and checked in exact arithmetic, and the faces must tile the
    Newton polygon exactly.
    """
    pts = list(lift.values)
    if len(pts) < 3:
        raise DegenerateLiftingError("need at least three non-collinear points")
    hull2 = convex_hull_2d(pts)
    if len(hull2) < 3:
        raise DegenerateLiftingError("lifting domain is collinear")
    lifted = [(p[0], p[1], lift.values[p]) for p in pts]
    total = _twice_area(hull2)

    # all lifted points on one plane: a single face
    a = lifted[pts.index(hull2[0])]
    b = lifted[pts.index(hull2[1])]
    c = lifted[pts.index(hull2[2])]
    plane = _plane_through(a, b, c)
    if plane is not None and all(p[2] + plane[0] * p[0] + plane[1] * p[1] == plane[2] for p in lifted):
        return _finish(lift, [plane])

    from scipy.spatial import ConvexHull

    hull = ConvexHull(np.array(lifted, dtype=float))
    planes = []
    for simplex, eq in zip(hull.simplices, hull.equations):
        if eq[2] >= -1e-12:
            continue
        pl = _plane_through(*(lifted[k] for k in simplex))
        if pl is None:
            continue
        alpha, beta, level = pl
        if all(p[2] + alpha * p[0] + beta * p[1] >= level for p in lifted):
            planes.append(pl)
    sub = _finish(lift, planes)
    if sum(_twice_area(f.vertices) for f in sub.faces) != total or any(len(f.vertices) < 3 for f in sub.faces):
        sub = _brute_force(lift)
    return sub


def _brute_force(lift: Lifting) -> Subdivision:
    """Exact fallback: test every triple of points."""
    lifted = [(p[0], p[1], v) for p, v in lift.values.items()]
    planes = []
    n = len(lifted)
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                pl = _plane_through(lifted[i], lifted[j], lifted[k])
                if pl is None:
                    continue
                alpha, beta, level = pl
                if all(p[2] + alpha * p[0] + beta * p[1] >= level for p in lifted):
                    planes.append(pl)
    return _finish(lift, planes)


def validate_inducing(lift: Lifting, claimed) -> bool:
    """True when ``lift`` induces exactly the claimed subdivision.

    ``claimed`` is a Subdivision or an iterable of vertex lists.
    """
    if isinstance(claimed, Subdivision):
        want = claimed.face_vertex_sets()
    else:
        want = {frozenset(convex_hull_2d(f)) for f in claimed}
    try:
        got = regular_subdivision(lift).face_vertex_sets()
    except DegenerateLiftingError:
        return False
    return got == want


# ---------------------------------------------------------------- polynomials


def patchworking_polynomial(f: SparsePoly, lift: Lifting) -> ParamPoly:
    """f_t = sum a_ij t^lambda(i, j) x^i y^j."""
    missing = f.support - lift.domain
    if missing:
        raise SupportNotCoveredError(f"support points without a lifting value: {sorted(missing)}")
    return ParamPoly._from_clean({ij: TPoly.monomial(c, lift.values[ij]) for ij, c in f.terms.items()})


def level_restriction(f_t: ParamPoly, lift: Lifting, r: int) -> ParamPoly:
    """Terms of f_t sitting at lifting level r."""
    return ParamPoly._from_clean({ij: c for ij, c in f_t.terms.items() if lift.values.get(ij) == r})


def face_normal(sub: Subdivision, face_id: int) -> tuple[int, int]:
    """Integer (alpha, beta) with lambda + alpha i + beta j constant on the face."""
    face = sub.faces[face_id]
    if face.alpha.denominator != 1 or face.beta.denominator != 1:
        raise NonIntegerNormalError(
            f"face {face_id} has normal ({face.alpha}, {face.beta}); scale the lifting by "
            f"{math.lcm(face.alpha.denominator, face.beta.denominator)}")
    return int(face.alpha), int(face.beta)


def flatten_face(f_t: ParamPoly, sub: Subdivision, face_id: int) -> tuple[ParamPoly, SparsePoly]:
    """Return (t^gamma f_t(t^alpha x, t^beta y), tile) for a face.

    gamma = -min over lifted points v of (alpha, beta, 1).v; at t = 0 the
    flattened polynomial reduces to the tile, the restriction of f to the face.
    """
    alpha, beta = face_normal(sub, face_id)
    face = sub.faces[face_id]
    lift = sub.lifting
    gamma = -min(v + alpha * p[0] + beta * p[1] for p, v in lift.values.items())
    flat = quasihomothety(f_t, alpha, beta, gamma)
    f = f_t.specialize(1)
    tile = f.restrict(face.points)
    if flat.specialize(0) != tile:
        raise AssertionError("flattened polynomial does not reduce to the tile at t = 0")
    return flat, tile


def face_gamma(sub: Subdivision, face_id: int) -> int:
    alpha, beta = face_normal(sub, face_id)
    return -min(v + alpha * p[0] + beta * p[1] for p, v in sub.lifting.values.items())


# ---------------------------------------------------------------- CSV


def read_lifting_csv(source) -> Lifting:
    """Read ``i,j,lambda`` rows (header optional) from a path or text.

    Rational heights are normalized by the LCM of their denominators.
    """
    if isinstance(source, str) and "\n" not in source and "," not in source:
        with open(source, newline="") as fh:
            text = fh.read()
    else:
        text = source
    vals = {}
    for row in csv.reader(io.StringIO(text)):
        row = [c.strip() for c in row]
        if not row or not row[0] or row[0].startswith("#"):
            continue
        if row[0] in ("i", "I"):
            continue
        if len(row) != 3:
            raise ValueError(f"bad lifting row {row!r}")
        vals[(int(row[0]), int(row[1]))] = as_rational(row[2])
    if not vals:
        raise ValueError("empty lifting")
    if all(v.denominator == 1 and v >= 0 for v in vals.values()):
        return Lifting({p: int(v) for p, v in vals.items()})
    return normalize_lifting(vals)[0]


def write_lifting_csv(lift: Lifting) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["i", "j", "lambda"])
    for (i, j), v in lift.values.items():
        w.writerow([i, j, v])
    return buf.getvalue()
