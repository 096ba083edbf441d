import json
import random
from fractions import Fraction
from importlib import resources

import jsonschema
import pytest
from gmpy2 import mpq
from hypothesis import given
from hypothesis import strategies as st

from oracles import brute_force_faces
from parabolica.patchwork import (
    DegenerateLiftingError,
    Lifting,
    NonIntegerNormalError,
    SupportNotCoveredError,
    convex_hull_2d,
    face_normal,
    flatten_face,
    level_restriction,
    normalize_lifting,
    patchworking_polynomial,
    read_lifting_csv,
    regular_subdivision,
    validate_inducing,
    write_lifting_csv,
)
from parabolica.poly import parse_param_poly, parse_poly

EX = parse_poly("x^2*y^2*(1+x+y+y^2)")
EX_LIFT = Lifting({p: max(0, p[0] + p[1] - 5) for p in EX.support})
D1 = [(2, 2), (3, 2), (2, 3)]
D2 = [(3, 2), (2, 3), (2, 4)]


def _face_index(sub, verts):
    for k, f in enumerate(sub.faces):
        if set(f.vertices) == set(verts):
            return k
    raise KeyError(verts)


def test_example_subdivision():
    sub = regular_subdivision(EX_LIFT)
    assert sub.face_vertex_sets() == {frozenset(D1), frozenset(D2)}
    assert face_normal(sub, _face_index(sub, D1)) == (0, 0)
    assert face_normal(sub, _face_index(sub, D2)) == (-1, -1)


def test_example_patchworking_polynomial():
    f_t = patchworking_polynomial(EX, EX_LIFT)
    assert str(f_t) == "x^2*y^2*(1+x+y+t*y^2)"
    assert f_t == parse_param_poly("x^2*y^2*(1+x+y+t*y^2)")


def test_example_flattening():
    sub = regular_subdivision(EX_LIFT)
    f_t = patchworking_polynomial(EX, EX_LIFT)
    for verts in (D1, D2):
        flat, tile = flatten_face(f_t, sub, _face_index(sub, verts))
        assert tile == EX.restrict(set(verts))
        assert flat.specialize(0) == tile


def test_constant_lifting_single_face():
    pts = [(i, j) for i in range(4) for j in range(4 - i)]
    sub = regular_subdivision(Lifting({p: 0 for p in pts}))
    assert len(sub.faces) == 1
    assert set(sub.faces[0].vertices) == {(0, 0), (3, 0), (0, 3)}
    assert sub.faces[0].points == frozenset(pts)


def test_degenerate_domains():
    with pytest.raises(DegenerateLiftingError):
        regular_subdivision(Lifting({(0, 0): 0, (1, 1): 0, (2, 2): 5}))
    with pytest.raises(DegenerateLiftingError):
        regular_subdivision(Lifting({(0, 0): 0, (1, 0): 0}))


def test_lifting_rejects_non_integers():
    with pytest.raises(ValueError):
        Lifting({(0, 0): Fraction(1, 2)})
    with pytest.raises(ValueError):
        Lifting({(0, 0): -1})


def test_validate_inducing():
    assert validate_inducing(EX_LIFT, [D1, D2])
    assert not validate_inducing(EX_LIFT, [D1 + [(2, 4)]])
    # a flat lifting does not induce the two-triangle subdivision
    flat = Lifting({p: 0 for p in EX.support})
    assert not validate_inducing(flat, [D1, D2])
    assert validate_inducing(flat, [D1 + [(2, 4)]])
    # the other diagonal of the unit square
    sq = Lifting({(0, 0): 0, (1, 0): 0, (0, 1): 0, (1, 1): 1})
    assert validate_inducing(sq, [[(0, 0), (1, 0), (0, 1)], [(1, 0), (0, 1), (1, 1)]])
    assert not validate_inducing(sq, [[(0, 0), (1, 0), (1, 1)], [(0, 0), (0, 1), (1, 1)]])


def test_level_restriction():
    lift = Lifting({(0, 0): 0, (1, 0): 1, (0, 1): 1, (2, 0): 7})
    f = parse_poly("1 + 2*x - y + 5*x^2")
    f_t = patchworking_polynomial(f, lift)
    assert level_restriction(f_t, lift, 0) == parse_param_poly("1")
    assert level_restriction(f_t, lift, 1) == parse_param_poly("2*t*x - t*y")
    assert level_restriction(f_t, lift, 7) == parse_param_poly("5*t^7*x^2")
    assert level_restriction(f_t, lift, 3).is_zero()


def test_support_must_be_covered():
    with pytest.raises(SupportNotCoveredError):
        patchworking_polynomial(parse_poly("1 + x^5"), Lifting({(0, 0): 0, (1, 0): 0, (0, 1): 0}))


def test_non_integer_normal():
    # the triangle (0,0),(2,0),(0,1) with heights 0,1,0 has alpha = -1/2
    lift = Lifting({(0, 0): 0, (2, 0): 1, (0, 1): 0})
    sub = regular_subdivision(lift)
    with pytest.raises(NonIntegerNormalError):
        face_normal(sub, 0)
    _, d = normalize_lifting({(0, 0): 0, (2, 0): 1, (0, 1): 0})
    assert d == 1
    doubled = Lifting({p: 2 * v for p, v in lift.values.items()})
    assert face_normal(regular_subdivision(doubled), 0) == (-1, 0)


def test_normalize_lifting():
    lift, d = normalize_lifting({(0, 0): Fraction(1, 2), (1, 0): Fraction(-1, 3), (0, 1): 0})
    assert d == 6
    assert lift.values == {(0, 0): 5, (0, 1): 2, (1, 0): 0}


def test_csv_roundtrip(tmp_path):
    text = write_lifting_csv(EX_LIFT)
    assert text.splitlines()[0] == "i,j,lambda"
    assert read_lifting_csv(text) == EX_LIFT
    path = tmp_path / "lift.csv"
    path.write_text(text)
    assert read_lifting_csv(str(path)) == EX_LIFT
    assert read_lifting_csv("0,0,1/2\n1,0,0\n0,1,0\n").values == {(0, 0): 1, (0, 1): 0, (1, 0): 0}
    with pytest.raises(ValueError):
        read_lifting_csv("0,0\n")


def test_convex_hull():
    assert convex_hull_2d([(0, 0), (2, 0), (1, 1), (0, 2), (1, 0)]) == [(0, 0), (2, 0), (0, 2)]


def test_subdivision_json_schema():
    schema = json.loads(resources.files("parabolica").joinpath("schemas/subdivision.schema.json").read_text())
    sub = regular_subdivision(EX_LIFT)
    jsonschema.validate(sub.to_json(), schema)
    assert sub.dumps() == regular_subdivision(EX_LIFT).dumps()


@st.composite
def liftings(draw, max_points=12):
    n = draw(st.integers(3, max_points))
    pts = draw(st.lists(st.tuples(st.integers(0, 4), st.integers(0, 4)), min_size=n, max_size=n, unique=True))
    vals = draw(st.lists(st.integers(0, 6), min_size=len(pts), max_size=len(pts)))
    return Lifting(dict(zip(pts, vals)))


def _subdivide_or_none(lift):
    try:
        return regular_subdivision(lift)
    except DegenerateLiftingError:
        return None


@given(liftings())
def test_matches_brute_force(lift):
    sub = _subdivide_or_none(lift)
    if sub is None:
        return
    assert sub.face_vertex_sets() == brute_force_faces(lift.values)


@given(liftings(), st.integers(-3, 3), st.integers(-3, 3), st.integers(0, 5))
def test_affine_shift_equivariance(lift, a, b, c):
    sub = _subdivide_or_none(lift)
    if sub is None:
        return
    lo = min(v + a * i + b * j for (i, j), v in lift.values.items())
    shifted = Lifting({(i, j): v + a * i + b * j - lo + c for (i, j), v in lift.values.items()})
    assert regular_subdivision(shifted).face_vertex_sets() == sub.face_vertex_sets()


@given(liftings(max_points=10))
def test_faces_cover_domain_hull(lift):
    sub = _subdivide_or_none(lift)
    if sub is None:
        return
    from parabolica.patchwork import _twice_area

    total = _twice_area(convex_hull_2d(lift.domain))
    assert sum(_twice_area(list(f.vertices)) for f in sub.faces) == total


@given(liftings(max_points=10), st.data())
def test_flattening_law(lift, data):
    sub = _subdivide_or_none(lift)
    if sub is None:
        return
    scaled = None
    for scale in (1, 2, 6, 12, 60):
        cand = Lifting({p: scale * v for p, v in lift.values.items()})
        s = regular_subdivision(cand)
        try:
            [face_normal(s, k) for k in range(len(s.faces))]
        except NonIntegerNormalError:
            continue
        scaled, sub = cand, s
        break
    if scaled is None:
        return
    coeffs = data.draw(st.lists(st.integers(-5, 5).filter(bool), min_size=len(scaled.domain),
                                max_size=len(scaled.domain)))
    f = parse_poly("0")
    for (p, _), c in zip(scaled.values.items(), coeffs):
        f = f + parse_poly(f"{c}*x^{p[0]}*y^{p[1]}")
    f_t = patchworking_polynomial(f, scaled)
    assert f_t.specialize(1) == f
    for k, face in enumerate(sub.faces):
        flat, tile = flatten_face(f_t, sub, k)
        assert flat.specialize(0) == f.restrict(face.points)


def test_random_liftings_against_brute_force():
    rng = random.Random(5)
    done = 0
    while done < 50:
        n = rng.randint(3, 15)
        pts = set()
        while len(pts) < n:
            pts.add((rng.randint(0, 5), rng.randint(0, 5)))
        lift = Lifting({p: rng.randint(0, 8) for p in pts})
        sub = _subdivide_or_none(lift)
        if sub is None:
            continue
        assert sub.face_vertex_sets() == brute_force_faces(lift.values)
        done += 1


def test_specialize_at_one_recovers_f():
    f = parse_poly("3*x^2*y^2 - x^3*y^2 + 1/2*x^2*y^4")
    assert patchworking_polynomial(f, EX_LIFT).specialize(mpq(1)) == f
