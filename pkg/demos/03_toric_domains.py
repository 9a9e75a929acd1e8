# %% [markdown]
# # Convex toric domains
#
# A Delzant polygon is normalized to have a corner at the origin, its weight
# sequence is read off, and the ECH capacities from the weight formula are
# compared with f_k of the matching rational surface.

# %%
from capcalc.toric import (
    capacities_of_polygon,
    chop_corner,
    delzant_corpus,
    simplex,
    weight_sequence,
    weights_to_class,
)

p = simplex(7)
for corner, size in [((0, 7), 3), ((3, 4), 1), ((7, 0), 2), ((5, 0), 1)]:
    p = chop_corner(p, p.vertices.index(corner), size)
print("polygon:", p)

ws = weight_sequence(p)
print("weights:", ws, " head^2 - sum w^2 =", ws.volume2(), " 2*area =", 2 * p.area())
red = weights_to_class(ws)
print("class:", red.omega)

# %%
for row in capacities_of_polygon(p, range(1, 9), crosscheck=True):
    print(row["k"], row["ech"], row["fk"], row["equal"])

# %% [markdown]
# The same check over the built-in corpus of small Delzant polygons.

# %%
for name, poly in delzant_corpus().items():
    rows = capacities_of_polygon(poly, range(1, 21), crosscheck=True)
    print(f"{name:<20} {all(r['equal'] for r in rows)}")

# %% [markdown]
# Non-Delzant triangles still have ECH capacities (the triangle with legs a, b is
# the ellipsoid E(a, b)); only the f_k crosscheck is unavailable.

# %%
from capcalc.toric import Polygon

tri = Polygon(((0, 0), (3, 0), (0, 2)))
print([str(r["ech"]) for r in capacities_of_polygon(tri, range(1, 11))])
