"""
The coin and the first step
===========================

Builds the 2x2 coin, squares it into the 4x4 walk coin, and compares one
engine step with the closed-form probabilities.
"""

import math

import numpy as np

from qparrondo import CoinParams, initial_state, make_su2_coin, position_distribution, step, tensor_coin
from qparrondo.oracle import step1_probabilities

np.set_printoptions(precision=4, suppress=True)

# beta = pi/4 with no phases is the Hadamard coin
p = CoinParams(0.0, math.pi / 4, 0.0)
print(make_su2_coin(p))

# the walk coin is its Kronecker square, basis (L, R, D, U)
m = tensor_coin(make_su2_coin(p))
print(m.real)

# the standard initial state is fully absorbed into |U>, so the walker moves up
d = position_distribution(step(initial_state(), m))
print(d.as_dict())

# away from the Hadamard point the four unit sites share the mass
for alpha in np.linspace(0, math.pi, 5):
    q = CoinParams(alpha, math.pi / 4, 0.0)
    d = position_distribution(step(initial_state(), tensor_coin(make_su2_coin(q))))
    engine = [d[-1, 0], d[1, 0], d[0, -1], d[0, 1]]
    print(f"alpha={alpha:.3f}", np.round(engine, 4), np.round(step1_probabilities(q).as_tuple(), 4))

# p_up - p_left is sin(2b) cos(a - g); at a = g it is only zero when sin(2b) is
k = math.sin(2 * 0.6) * math.cos(0.0)
q = step1_probabilities(CoinParams(0.3, 0.6, 0.3))
print(q.p_up - q.p_left, k)
