"""Monte Carlo validation of the concentration bounds.

The analysis leans on a handful of concentration inequalities: matrix
Rademacher series, a matrix Hoeffding bound for sums of bounded Hermitian
samples, scalar complex Hoeffding, sub-exponential width tails, and tails of
the advantage over random families.  Each bench draws fresh samples, compares
empirical tail frequencies against the stated bounds (with binomial slack),
and reports pass/fail.  Existential constants are replaced by fixed test
constants, so a pass certifies the *shape* of each bound at desk scale.
"""

import phaselab as pl

reports = pl.default_suite(seed=2026, samples=500)

for rep in reports:
    print(f"{rep.bound_name}  (samples={rep.samples}, passed={rep.passed})")
    for t, emp, bnd in zip(rep.thresholds, rep.empirical, rep.bounds):
        print(f"   t={t:8.3f}   empirical {emp:8.4f}   bound {bnd:8.4f}")
    interesting = {k: v for k, v in rep.extras.items() if isinstance(v, float)}
    if interesting:
        print("   " + ", ".join(f"{k}={v:.4f}" for k, v in interesting.items()))
    print()

print("all passed:", all(r.passed for r in reports))
