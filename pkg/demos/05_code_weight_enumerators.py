"""
Weight enumerators of the codes C_D(a)
======================================

Build the code, count weights by brute force and check the closed forms.
"""

# %%
from monomial_codes.codes import build_code, verify, weight_distribution
from monomial_codes.expsums import count_na, count_nab
from monomial_codes.field import build_field

F5 = build_field(3, 5)
code = build_code(F5, k=2, d=97, a=0)
print("length", code.length, "first defining logs", code.defining_logs[:8].tolist())
print(weight_distribution(code).enumerator())

# %%
# The weight of c_b is n_a - N(a, b); N comes from either a scan or the T sums.
b = F5.alpha
n0 = count_na(F5, 2, 97, 0)
print("n_0 - N(0, alpha):", n0 - count_nab(F5, 2, 97, 0, b), n0 - count_nab(F5, 2, 97, 0, b, "formula"))

# %%
# Verification against the matching closed form.
F6 = build_field(3, 6)
for d, a in [(73, 1), (437, 2)]:
    report = verify(build_code(F6, 2, d, a))
    print(report.branch, report.observed.enumerator(), report.verdict)

# %%
# The odd-e, other-class case only lists possible weights.
F9 = build_field(3, 9)
for a in (1, 2):
    report = verify(build_code(F9, 3, 10544, a))
    print(f"a={a} length {report.observed.length}: {report.observed.enumerator()}")
    print("   allowed:", sorted(report.expected.possible_weights), report.verdict)
