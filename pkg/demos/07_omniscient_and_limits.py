"""How good can any one-query adversary be?

An omniscient adversary that knows the family projects onto the span of its
phase states: it accepts family states with certainty and random states with
probability rank/N, for an advantage of exactly 1 - rank/N.  No choice of
(V, Pi, f) can beat it.  This script builds the omniscient distinguisher,
compares it against brute-forced random adversaries, and shows the dimension
wall that blocks naive exhaustive approaches over all families.
"""

import numpy as np

import phaselab as pl
from phaselab.numerics import CapacityError, RngStream

rng = RngStream(41)
N, K = 16, 2

R = pl.random_family(K, N, rng.child(0))
omni = pl.omniscient_distinguisher(R)
val = pl.omniscient_advantage(R)
print(f"omniscient advantage at K={K}, N={N}: {val:.4f}  (= 1 - {K}/{N})")
print(f"achieved by its own game play: "
      f"{pl.advantage_given_f(omni, R, np.ones(omni.M)):.4f}")

print("\nrandom adversaries never beat it (N=8, K=2):")
R8 = pl.random_family(2, 8, rng.child(1))
ceiling = pl.omniscient_advantage(R8)
for M in (8, 10, 12):
    s = rng.child(M)
    adv = pl.AdversarySpec(
        V=pl.random_isometry(8, M, s.child(0)),
        Pi=pl.random_projector(M, M // 2, s.child(1)),
    )
    best, _ = pl.max_advantage_bruteforce(adv, R8)
    print(f"  M={M:2d}: brute-force max {best:.4f}  <=  {ceiling:.4f}")

# Advice states: an adversary may carry a fixed side state alongside the query.
advice = np.array([1.0, 1.0]) / np.sqrt(2)
adv = pl.advice_state_adversary(np.eye(2 * N), advice)
print(f"\nadvice-state adversary with a full projector accepts always: "
      f"{pl.acceptance_probability(adv, R[0], np.ones(adv.M)):.4f}")

# The dimension needed to enumerate every K-function family explodes.
for K, n in ((1, 4), (2, 4), (2, 8)):
    print(f"enumeration dimension for K={K}, N={n}: {pl.bv_query_dimension(K, n)}")
try:
    pl.bv_query_dimension(8, 64)
except CapacityError as exc:
    print(f"K=8, N=64 -> CapacityError: {exc}")
