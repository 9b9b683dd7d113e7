"""
Three summation formulae
========================

Transforming the series solutions to the Laplace domain and equating them
with the closed-form transforms yields sums over the eigenvalues.  Here we
tabulate both sides over eleven decades of the Laplace parameter ``p``.
"""

from filmseries import derive, find_roots, load_table1_fixture, reference_params
from filmseries.tables import formula3_report, report_to_markdown, table2, table3, truncation_experiment

d = derive(reference_params())
fixture = load_table1_fixture(d)

# %%
# Surface temperature (formula 1).  With 25 tabulated roots the two sides
# agree to five decimals up to p = 1 and drift apart by about two percent
# for p of order 1e5 and beyond.
print(report_to_markdown(table2(d, roots=fixture, n_terms=25)))

# %%
# Surface concentration gradient (formula 2).  The terms decay only like
# 1/q_n^2 once p is large, so 25 terms fall far short and the discrepancy
# grows quickly past p = 100.
print(report_to_markdown(table3(d, roots=fixture, n_terms=25)))

# %%
# Fewer terms make this worse, more terms better.  400 roots from the solver
# cut the gap at p = 1000 by more than a factor of ten.
print("formula 2 at p = 1000, tabulated roots:")
for n, gap in truncation_experiment(d, 1e3, fixture, [20, 25]):
    print(f"  N = {n:3d}: |LHS - RHS| = {gap:.4f}")
solver = find_roots(d, 400)
print("formula 2 at p = 1000, solver roots:")
for n, gap in truncation_experiment(d, 1e3, solver, [25, 100, 400]):
    print(f"  N = {n:3d}: |LHS - RHS| = {gap:.4f}")

# %%
# With gamma = 0 the roots become n*pi and formula 2 collapses to the
# classical 1 + 2 sum 1/(1 + n^2 pi^2/p) = sqrt(p) coth(sqrt p).
print()
print(report_to_markdown(formula3_report()))
