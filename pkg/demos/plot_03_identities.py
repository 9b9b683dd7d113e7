"""
Classical identities as special cases
=====================================

Formula 3 at ``p = pi^2`` gives ``1 + 2 sum 1/(1+n^2) = pi coth pi``.  Its
closed form also has a power series in ``p`` with Bernoulli-number
coefficients, and a related sine series appears in steady heat conduction
in a rectangle.
"""

import math

from filmseries import (
    bernoulli_numbers,
    bernoulli_series,
    formula3_lhs,
    formula3_rhs,
    ozisik_lhs,
    ozisik_rhs,
    pi_coth_pi,
)
from filmseries.series import bernoulli_coefficients, formula3_tail

# %%
# pi coth pi from a partial sum.  The integral estimate of the omitted tail
# removes the leading 1/N error, leaving roughly 1/N^2.
exact = pi_coth_pi()
for n in (10, 1_000, 100_000):
    bare = formula3_lhs(math.pi**2, n, tail_correction=False).value
    fixed = formula3_lhs(math.pi**2, n).value
    print(f"N = {n:>7d}: bare error {abs(bare - exact):.2e}, with tail {abs(fixed - exact):.2e}"
          f"  (tail = {formula3_tail(math.pi**2, n):.3e})")

# %%
# The Bernoulli expansion sqrt(p) coth(sqrt p) = 1 + p/3 - p^2/45 + 2p^3/945 - ...
print("\nB_0, B_2, B_4, B_6 =", bernoulli_numbers(4, exact=True))
print("coefficients      =", bernoulli_coefficients(4, exact=True))

# It converges for |p| < pi^2, slowly near the edge: terms shrink like
# (p/pi^2)^n, so p = 9.8 needs thousands of them.
for p in (1.0, 5.0, 9.8):
    for n in (30, 5000):
        s = bernoulli_series(p, n)
        print(f"p = {p:4}: N = {n:4d} error {abs(s.value - formula3_rhs(p)):.1e}")
print("p = 12 flagged as diverging:", bernoulli_series(12.0, 40).diverging)

# %%
# The rectangle sine series converges like 1/N at an interior point.
target = ozisik_rhs(1, 1.0, 1.0, 0.5)
print(f"\nsinh(pi/2)/sinh(pi) = {target:.10f}")
for n in (1_000, 10_000, 100_000):
    err = abs(ozisik_lhs(1, 1.0, 1.0, 0.5, n).value - target)
    print(f"N = {n:>6d}: error {err:.2e}")
