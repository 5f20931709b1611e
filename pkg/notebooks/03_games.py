"""
Solo, alternating and combined play
===================================

Each player's coin has one constraint (A: alpha = 0, B': gamma = 0,
C': alpha = -gamma, D': alpha = gamma).  The winner is read from the
half-plane marginals.
"""

import math

from qparrondo import CoinParams, Kind, Player, StrategySpec, run_game

A, B, C, D = Player.A, Player.Bprime, Player.Cprime, Player.Dprime
beta = math.pi / 4


def show(title, spec):
    v = run_game(spec)
    m = v.marginals
    names = ", ".join(p.label for p in Player if p in v.winners)
    print(f"{title:<40} winners: {names:<16} "
          f"L={m.p_left:.4f} R={m.p_right:.4f} D={m.p_down:.4f} U={m.p_up:.4f}")


# solo play
for gamma in (-2 * math.pi, -1.5 * math.pi, -math.pi):
    show(f"A alone, gamma={gamma:.3f}", StrategySpec(Kind.SOLO, (A,), (CoinParams(0, beta, gamma),), 20))
show("D' alone, alpha=gamma=0.7", StrategySpec(Kind.SOLO, (D,), (CoinParams(0.7, beta, 0.7),), 20))

# alternating with one shared triple, both starting orders
shared = CoinParams(0.5, beta, -0.5)
for order in ((A, B), (B, A)):
    show("alternate " + "".join(p.label for p in order), StrategySpec.shared(Kind.ALTERNATING, order, shared, 20))

# combined coins: order matters because the coins do not commute
pa, pb = CoinParams(0, beta, -math.pi), CoinParams(-4.0, beta, 0)
show("combined A then B'", StrategySpec(Kind.COMBINED, (A, B), (pa, pb), 20))
show("combined B' then A", StrategySpec(Kind.COMBINED, (B, A), (pb, pa), 20))

# the winner can change with t
for t in (2, 10, 20, 50):
    show(f"combined A, B' at t={t}", StrategySpec(Kind.COMBINED, (A, B), (pa, pb), t))
