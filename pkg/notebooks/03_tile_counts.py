"""
Special points of the three tile shapes
=======================================

Certify the points of every tile in the triangulation of degree 8 and
write an SVG of the curves of one P3 tile.
"""

# %%
import time
from collections import Counter

from parabolica.construction import TILE_WINDOW, build_triangulation, tile
from parabolica.parabolic import build_system
from parabolica.solver import isolate_tspp

counts = Counter()
start = time.perf_counter()
for t in build_triangulation(8):
    res = isolate_tspp(build_system(t.polynomial), TILE_WINDOW)
    counts[(t.kind, res.count, res.complete)] += 1
print(dict(counts), f"{time.perf_counter() - start:.1f}s")

# %%
res = isolate_tspp(build_system(tile("P3", 2, 2).polynomial), TILE_WINDOW)
for p in res.points:
    print(p.midpoint, p.enclosure.width)

# %%
from parabolica.plotting import render_svg, trace_curve
from parabolica.solver import Box

window = Box(0, 4, -2, 0)
s = build_system(tile("P3", 2, 2).polynomial)
curves = {name: trace_curve(p, window, 300) for name, p in (("H", s.h), ("E1", s.e1), ("E2", s.e2))}
with open("p3_tile.svg", "w") as fh:
    fh.write(render_svg(curves, window, [p.midpoint for p in res.points]))
