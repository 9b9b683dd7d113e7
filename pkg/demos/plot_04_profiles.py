"""
Concentration and temperature profiles
======================================

The same eigenvalues give the time-domain solutions.  We evaluate the
profiles across the film, check the surface coupling conditions and compare
the term-by-term Laplace transform of the series with its closed form.
"""

import numpy as np

from filmseries import (
    ProfileRequest,
    concentration,
    coupling_residuals,
    derive,
    find_roots,
    load_table1_fixture,
    reference_params,
    temperature,
    termwise_transform_check,
)

params = reference_params()
d = derive(params)
roots = find_roots(d, 400)

# %%
# Profiles at a few times.  At x = 1 every term carries sin(0), so both
# profiles are exactly zero; late in time they relax to straight lines.
xs = np.linspace(0.0, 1.0, 5)
for tau in (0.001, 0.01, 0.1, 1.0):
    a = [concentration(ProfileRequest(params, float(x), tau, 100, roots)).value for x in xs]
    t = [temperature(ProfileRequest(params, float(x), tau, 100, roots)).value for x in xs]
    print(f"tau = {tau:5}:  a = {np.round(a, 4)}")
    print(f"              theta = {np.round(t, 4)}")
print("steady surface value w2/(1 - gamma) =", params.w2 / (1 - d.gamma))

# %%
# The surface conditions a = w1 theta + w2 and theta' = beta_s a' hold term
# by term when the roots are accurate, and fail in proportion to the root
# error otherwise.
print()
for label, es in (("solver", roots), ("tabulated", load_table1_fixture(d))):
    bc5, bc6 = coupling_residuals(0.1, params, es, 25)
    print(f"{label:9s} roots: residuals at tau = 0.1: {bc5:+.2e}, {bc6:+.2e}")

# %%
# At tau = 0 the series should reproduce the zero initial state, which it
# only approaches as more terms are kept.
for n in (25, 100, 400):
    v = concentration(ProfileRequest(params, 0.5, 0.0, n, roots)).value
    print(f"a(0.5, 0) with N = {n:3d}: {v:+.5f}")

# %%
# The Laplace transform of each series term is elementary; summed, it must
# match the closed-form transform.
print()
for n in (25, 100, 400):
    s, c = termwise_transform_check(0.5, 1.0, params, roots, n)
    print(f"N = {n:3d}: series {s:.12f}  closed form {c:.12f}  rel. diff {abs(s - c) / c:.1e}")
