"""
A long walk
===========

Runs 200 steps with a fixed coin, checks the invariants, and writes the
position distribution as CSV.
"""

import math
import time
from pathlib import Path

from qparrondo import CoinParams, initial_state, make_su2_coin, marginals, position_distribution, tensor_coin
from qparrondo.walk import trajectory

m = tensor_coin(make_su2_coin(CoinParams(0.0, math.pi / 4, -3 * math.pi / 2)))

t0 = time.perf_counter()
worst = 0.0
for s in trajectory(initial_state(), [m] * 200):
    worst = max(worst, abs(s.norm_squared() - 1))
    assert not s.invariant_violations()
print(f"200 steps in {time.perf_counter() - t0:.2f}s, max norm drift {worst:.2e}")

d = position_distribution(s)
print(marginals(d))

# most probable sites
top = sorted(d.as_dict().items(), key=lambda kv: -kv[1])[:5]
for site, prob in top:
    print(site, round(prob, 5))

out = Path("walk_200.csv")
out.write_text(d.to_csv())
print("wrote", out, len(d.as_dict()), "rows")
