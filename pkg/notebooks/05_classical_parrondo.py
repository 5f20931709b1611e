"""
The classical capital-dependent game
====================================

Two losing games, A and B, and a winning mixture.  Exact drifts come from
the capital-mod-3 Markov chain; the simulation is seeded.
"""

from qparrondo.classical import (
    LITERATURE_PRESET,
    Periodic,
    RandomMix,
    exact_drift,
    expected_capital,
    paradox_demo,
    report_json,
)

params = LITERATURE_PRESET
for name, seq in (("A", Periodic("A")), ("B", Periodic("B")), ("ABB", Periodic("ABB")),
                  ("AABB", Periodic("AABB")), ("random", RandomMix(0.5))):
    print(f"{name:>7}: stationary {exact_drift(params, seq):+.5f}   "
          f"first 1000 rounds {expected_capital(params, seq, 1000) / 1000:+.5f}")

# Monte Carlo, 10^4 runs of 10^3 rounds each
rep = paradox_demo(params, RandomMix(0.5), rounds=1000, trials=10_000, seed=0)
print(report_json(rep))
print("paradox:", rep["paradox"])
