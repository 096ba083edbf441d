"""
Patchworking a four-term polynomial
===================================

Lift the support of x^2 y^2 (1 + x + y + y^2) by max(0, i + j - 5), read
off the two triangles, and flatten each face to recover its tile.
"""

# %%
from parabolica import parse_poly
from parabolica.patchwork import (
    Lifting,
    face_normal,
    flatten_face,
    patchworking_polynomial,
    regular_subdivision,
)

f = parse_poly("x^2*y^2*(1+x+y+y^2)")
lift = Lifting({p: max(0, p[0] + p[1] - 5) for p in f.support})
sub = regular_subdivision(lift)
print(sub.dumps())

# %%
f_t = patchworking_polynomial(f, lift)
print(f_t)

# %%
for k, face in enumerate(sub.faces):
    flat, tile = flatten_face(f_t, sub, k)
    print(face.vertices, face_normal(sub, k))
    print("  flattened:", flat)
    print("  tile:     ", tile)

# %%
# certified special points of the glued polynomial at a small t
from gmpy2 import mpq

from parabolica.construction import glued_points

pts, unresolved = glued_points(f, lift, mpq(1, 64))
for p in pts:
    print(p.window, p.midpoint)
print("unresolved regions:", unresolved)
