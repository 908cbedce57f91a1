"""
Gauss sums and the quadratic forms Q_{u,v}
==========================================

All character sums are exact elements of Z[w], w = exp(2 pi i / p).
"""

# %%
from monomial_codes.cyclotomic import CycInt
from monomial_codes.expsums import (
    gauss_sum_brute,
    gauss_sum_closed,
    quad_diag,
    quad_rank,
    radical_rank,
    t_sum,
)
from monomial_codes.field import build_field

# %%
# Brute force against the closed form.  For p = 3, i*sqrt(3) is 1 + 2w.
for p, t in [(3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (7, 3)]:
    brute = gauss_sum_brute(build_field(p, t), t)
    print(f"p={p} t={t}: {brute.render():>14}  closed form agrees: {brute == gauss_sum_closed(p, t)}")

g = CycInt(3, [1, 2])
print("(1+2w)^2 =", (g * g).render(), " |value| =", abs(complex(g)))

# %%
# Rank of Q_{u,v} from the bilinear-form matrix, and from the radical directly.
F = build_field(3, 5)
for u, v in [(0, 1), (1, 0), (F.alpha, 1), (57, 200), (5, 5)]:
    form = quad_rank(F, u, v, 2)
    print(f"u={u:3d} v={v:3d}: rank {form.rank} (radical: {radical_rank(F, u, v, 2)}), "
          f"discriminant class {form.disc_class:+d}")

# %%
# Rank and discriminant pin down T(u, v) exactly.
for u, v in [(F.alpha, 1), (57, 200)]:
    diag = quad_diag(F, u, v, 2)
    print(f"T({u},{v}) = {t_sum(F, u, v, 2).render():>14}   from the diagonal form: {diag.form_sum_value.render()}")
