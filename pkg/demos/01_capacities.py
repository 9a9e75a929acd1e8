# %% [markdown]
# # f_k of a blown-up projective plane
#
# A symplectic class on CP^2 # n(-CP^2) is written (x0 | x1, ..., xn).  f_k is
# the smallest area of a class of index at least 2k.  The solver first brings
# the class into the reduced cone and then searches only reduced classes.

# %%
from fractions import Fraction

from capcalc import CohomClass, capacity_fk, reduce

w = CohomClass(1, (Fraction(1, 2),))
for k in range(1, 9):
    res = capacity_fk(w, k)
    print(f"f_{k}(1 | 1/2) = {str(res.value):>4}   attained by", ", ".join(A.pretty() for A in res.witnesses))

# %% [markdown]
# Classes outside the reduced cone are moved there by sorting and Cremona
# reflections.  The trace records every move, so a witness found in the reduced
# frame can be mapped back.

# %%
red = reduce(CohomClass(8, (5, 3, 3)))
print(red.omega, "boundary:", red.boundary, "trace:", red.trace.to_json())

w = CohomClass(7, (3, 1, 2, 1))
res = capacity_fk(w, 3)
back = res.trace.inverse()
print("f_3 =", res.value)
for A in res.witnesses:
    print("  reduced frame:", A.pretty(), "  input frame:", back.apply_class(A).pretty())

# %% [markdown]
# f_k is homogeneous of degree one and non-decreasing in k; a quick numerical
# look with numpy on a grid of two-point blowups.

# %%
import numpy as np

xs = np.arange(1, 10) / 20
table = np.array(
    [[float(capacity_fk(CohomClass(1, (Fraction(x).limit_denominator(), Fraction(1, 20))), k).value)
      for k in range(1, 6)] for x in xs]
)
print(np.round(table, 3))
print("monotone in k:", bool(np.all(np.diff(table, axis=1) >= 0)))
