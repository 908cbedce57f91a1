"""
Arithmetic in GF(3^5)
=====================

Build a field from its smallest primitive polynomial and poke at the tables.
"""

# %%
# Elements are ints whose base-p digits are polynomial coordinates.
import numpy as np

from monomial_codes.field import build_field

F = build_field(3, 5)
print(F.descriptor())

a = F.alpha
print("alpha =", a, "coords", F.coeffs(a))
print("alpha^5 =", F.exp(5), "coords", F.coeffs(F.exp(5)))

# %%
# Multiplication and inversion go through the log tables.
x, y = 17, 200
print(f"{x} * {y} = {F.mul(x, y)}, inverse of {x} is {F.inv(x)}")
print("x * x^-1 =", F.mul(x, F.inv(x)))

# %%
# Vectorised traces: Tr(x) takes each value of GF(3) on 81 elements.
xs = np.arange(F.q)
print("trace histogram:", np.bincount(F.trace_vec(xs)))

# %%
# Half the nonzero elements are squares; alpha is not one of them.
chars = np.array([F.quad_char(int(v)) for v in xs[1:]])
print("squares:", (chars == 1).sum(), "non-squares:", (chars == -1).sum())
print("eta(alpha) =", F.quad_char(a))

# %%
# x -> x^(3^k + 1) hits every square twice when m/gcd(k, m) is odd.
hits = np.bincount(F.pow_vec(xs[1:], 3**2 + 1), minlength=F.q)
print("distinct hit counts:", sorted(set(hits[1:].tolist())))
