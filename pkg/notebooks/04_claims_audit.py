"""
Auditing the claims
===================

Runs every claim on a coarse grid and prints holds-fractions and the first
counterexample of each claim.  The CLI ``audit`` command runs the default
(finer) grid.
"""

from qparrondo.audit import GridConfig, audit, replay

cfg = GridConfig(n_beta=3, n_angle=3, n_wide=5, steps=(2, 10))
reports = audit(None, cfg)

for r in reports:
    print(f"{r.claim:>4}  {r.holds_count:5d}/{r.evaluations:<5d}  {r.description}")

# the first-step identity behind C2 and C6
print(reports[1].analytic)

# any counterexample can be re-run
r = next(r for r in reports if r.counterexamples)
cx = r.counterexamples[0]
print(r.claim, cx["params"], "t =", cx["t"])
print(replay(r.claim, cx["clause"], cx["params"], cx["t"], cfg))
