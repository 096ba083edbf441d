"""
Hessian, E1, E2 and C for a bivariate polynomial
================================================

Build the system of a small polynomial, check the identities that tie the
four polynomials together, and classify a few points.
"""

# %%
from gmpy2 import mpq

from parabolica import parse_poly
from parabolica.parabolic import build_system, classify_point, q_form

f = parse_poly("x^2*y^2*(1+x+y+y^2)")
s = build_system(f)
print("H  =", s.h)
print("E1 =", s.e1)
print("E2 =", s.e2)

# %%
# C is the Hessian form evaluated on the rotated gradient of H
print(s.c == -s.hy * s.e1 + s.hx * s.e2)

# %%
# the triangle tile x^2 y^2 (1 + x + y) has a rational special point
p1 = build_system(parse_poly("x^2*y^2*(1+x+y)"))
q = (mpq(-1, 2), mpq(-1, 2))
print(p1.h(*q), p1.e1(*q), p1.e2(*q))
print(classify_point(p1, q))

# %%
# the quadratic form vanishes on the asymptotic direction there
v = (-p1.hy(*q), p1.hx(*q))
print(v, q_form(parse_poly("x^2*y^2*(1+x+y)"), q, v))

# %%
# a monkey saddle has a singular Hessian curve at the origin
print(classify_point(build_system(parse_poly("x^3-3*x*y^2")), (0, 0)))
