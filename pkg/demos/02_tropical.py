# %% [markdown]
# # f_k as a tropical polynomial
#
# On the c1-nef part of the reduced cone f_k is the minimum of finitely many
# linear forms.  For one blowup these are printed in tropical notation, where
# a ⊕ b = min(a, b) and a ⊙ b = a + b.

# %%
from fractions import Fraction

from capcalc import CohomClass, capacity_fk, minimizer_set

for k in range(1, 9):
    tp = minimizer_set(1, k)
    print(f"f_{k} = {tp.pretty():<28} kinks at {[str(x) for x in tp.breakpoints()]}")

# %% [markdown]
# The term list is exact: evaluating it agrees with the lattice solver.

# %%
tp = minimizer_set(3, 6)
print(tp.pretty())
w = CohomClass(1, (Fraction(2, 5), Fraction(1, 3), Fraction(1, 4)))
print(tp.eval(w), capacity_fk(w, 6).value)

# %% [markdown]
# The curves for k = 1..8 as exact CSV rows plus an SVG file; every kink is a
# sample point.

# %%
from pathlib import Path

from capcalc.cli import main

out = Path(__file__).with_name("f1_to_f8.svg")
main(["plot", "--k", "1..8", "--samples", "32", "--format", "svg", "--out", str(out)])
print("wrote", out)
main(["plot", "--k", "1..4", "--samples", "8"])

# %% [markdown]
# For ten or more points the enumeration bound is astronomically large, so a
# budget has to be given and the answer is flagged as uncertified.

# %%
import warnings

with warnings.catch_warnings(record=True) as caught:
    warnings.simplefilter("always")
    tp = minimizer_set(10, 1, budget=30)
print(tp.pretty(), "certified:", tp.certified)
print(caught[0].message)
