"""
Exponents solving d(p^k + 1) = 2 (mod p^m - 1)
===============================================

Both solutions, their residue classes, and the ternary APN families.
"""

# %%
from monomial_codes.exponents import apn_catalog, differential_uniformity, solve_d
from monomial_codes.field import build_field

for p, m, k in [(3, 5, 2), (3, 6, 2), (3, 9, 3)]:
    sols = solve_d(p, m, k)
    print((p, m, k), [(s.d, s.residue_class.name) for s in sols])

# %%
# The two solutions are half a period apart.
d1, d2 = solve_d(3, 5, 2)
print("difference:", d2.d - d1.d, "half period:", (3**5 - 1) // 2)

# %%
# Each APN exponent satisfies the congruence for some k; the first k found is kept.
for m in (5, 7):
    field = build_field(3, m)
    for entry in apn_catalog(m):
        du = differential_uniformity(field, entry.d)
        print(f"m={m} family ({entry.family}): d={entry.d} k={entry.k} uniformity={du}")

# %%
# For comparison: x^2 is planar and x is linear.
F = build_field(3, 5)
print("d=2:", differential_uniformity(F, 2), " d=1:", differential_uniformity(F, 1))
