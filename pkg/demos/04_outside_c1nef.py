# %% [markdown]
# # Leaving the c1-nef cone
#
# On ten points, the classes
#     N_a = 3H - E_1 - ... - E_8 + m_a (3H - E_1 - ... - E_9) - a E_10,  m_a = (a^2 + a) / 2
# all have index 2, and each one wins somewhere in the reduced cone where
# 3H - E_1 - ... - E_10 has negative area.  So no finite term list can describe
# f_1 there.

# %%
from fractions import Fraction

from capcalc import CohomClass, HomologyClass, index
from capcalc.cremona import c1_pairing, is_reduced
from capcalc.lattice import area


def N(a):
    m = (a * a + a) // 2
    return HomologyClass(3 + 3 * m, (1 + m,) * 8 + (m, a))


for a in range(1, 6):
    eps = next(Fraction(1, 2**j) for j in range(1, 40)
               if is_reduced(CohomClass(1, ((1 - Fraction(1, 2**j)) / 3,) * 9 + ((3 * a + 4) * Fraction(1, 2**j),))))
    w = CohomClass(1, ((1 - eps) / 3,) * 9 + ((3 * a + 4) * eps,))
    areas = [area(w, N(j)) for j in range(1, a + 2)]
    best = min(range(len(areas)), key=areas.__getitem__) + 1
    print(f"a={a} index={index(N(a))} eps={eps} c1-area={c1_pairing(w)} winner=N_{best}")
