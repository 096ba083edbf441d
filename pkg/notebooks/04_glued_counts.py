"""
Glued counts against the lower bound
====================================

For d = 5 and 6, glue the tiles with an integer convex lifting and count
the certified special points of the glued polynomial at a few values of t.
"""

# %%
from gmpy2 import mpq

from parabolica.construction import build_lifting, reports_csv, reproduce_theorem, theorem_bound

for d in (5, 6):
    print(d, theorem_bound(d), build_lifting(d).values)

# %%
t_values = [mpq(1, 16), mpq(-1, 16), mpq(1, 1024), mpq(-1, 1024)]
reports = reproduce_theorem(6, t_values)
print(reports_csv(reports))

# %%
# where the points sit: the scale of each face window shows up in the magnitudes
for p in reports[2].points:
    print(p.window, p.midpoint)
