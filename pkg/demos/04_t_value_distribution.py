"""
Value distribution of T(u, v)
=============================

Histogram T over all (u, v) and compare it with the closed-form spectrum,
first by brute force and then with the orbit reduction that scales to m = 9.
"""

# %%
import time

from monomial_codes.expsums import joint_t_distribution, t_distribution
from monomial_codes.field import build_field

F = build_field(3, 5)
report = t_distribution(F, 2, "naive")
for value, count in sorted(report.observed.items()):
    print(f"{value.render():>14}: {count:6d}  expected {report.expected.get(value, 0)}")
print("match:", report.ok)

# %%
# The orbit mode needs only the rows v = 1 and v = theta plus the two axes.
orbit = t_distribution(F, 2, "orbit")
print("naive == orbit:", orbit.observed == report.observed)

start = time.perf_counter()
big = t_distribution(build_field(3, 9), 3, "orbit")
print(f"(3, 9, 3) orbit mode: match={big.ok} in {time.perf_counter() - start:.1f} s")

# %%
# Joint values (T(u, v), T(-u, v)); the last table rows must stay empty.
joint = joint_t_distribution(F, 2)
for (left, right), count in sorted(joint.observed.items()):
    print(f"({left.render()}, {right.render()}): {count}")
print("match:", joint.ok)
