"""
When is the weighing impulse g dm T right?
==========================================

An extra weight g*dm on the balance changes the box momentum.  For a free
box that change would be g dm T.  On an undamped spring it is
(g dm / omega) sin(omega T), so the simple impulse law is only good while
omega T is small; the relative error is close to (omega T)^2 / 6.
"""

import numpy as np

from photonbox import DebateScenario, weigh_impulse

scen = DebateScenario.natural()
for wT in (0.01, 0.05, 0.1, 0.5, 1.0, 2.0):
    res = weigh_impulse(scen, wT)
    print(f"omega*T={wT:5.2f}  simulated={res.delta_p_sim:.6f}  impulse law={res.delta_p_formula:.6f}  "
          f"regime error={res.regime_error:.3e}  (omega T)^2/6={wT**2 / 6:.3e}  "
          f"vs exact={1 - np.sin(wT) / wT:.3e}")
