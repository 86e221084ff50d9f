"""Aliasing under sampling: identical at the ticks, different between.

For a two-state system whose closed loop A + alpha N has a complex
eigenvalue pair, sampled_pair builds a second system whose sampled
input/output behaviour is identical for every pulse train switching
between the levels 0 and alpha at the sampling instants, while the
continuous-time outputs differ between ticks. The second system hides
an extra whole rotation per sampling period.
"""

import numpy as np

from bilinid import constant_input, sample_in_B_alpha, sampled_pair, simulate
from bilinid.simulate import sample_discrete

rng = np.random.default_rng(2)
seed, _ = sample_in_B_alpha(1.0, rng)

tau, alpha = 1.0, 1.0
pair = sampled_pair(seed, tau=tau, alpha=alpha)
a, b = pair.sigma, pair.sigma_hat
print(f"sampling period tau = {tau}, recorded agreement "
      f"{pair.agreement_residual:.2e}")

# identical samples for an arbitrary on/off switching pattern
levels = [alpha, 0.0, alpha, alpha, 0.0, alpha]
sa = sample_discrete(a, tau, levels)
sb = sample_discrete(b, tau, levels)
worst = max(abs(ya - yb) for (_, ya), (_, yb) in zip(sa, sb))
print(f"output gap at the ticks (pattern {levels}): {worst:.2e}")

# but between ticks the trajectories visibly differ
grid = np.linspace(0.05, 3.0, 240)
u = constant_input(alpha, horizon=4.0)
gap = np.max(np.abs(simulate(a, u, grid).outputs
                    - simulate(b, u, grid).outputs))
print(f"continuous gap under the held input u = {alpha}: {gap:.2e}")
print("\nthe pair differs by a rotation completing whole turns per period,")
print("invisible at the sampling instants")
