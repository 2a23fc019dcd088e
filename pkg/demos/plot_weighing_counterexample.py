"""
A box state that breaks the weighing relation
=============================================

The weighing relation asks for dp < T g dm.  For a coherent state of the
balance dp is fixed while dm = hbar omega |alpha| / c^2 can be made as
small as we like, so below a threshold |alpha| the relation fails.  Sending
the state's own spreads through the rest of the chain then gives
dE dT < hbar.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from photonbox import DebateScenario, boomerang, counterexample_scan, counterexample_threshold

scen = DebateScenario.natural()
thr = counterexample_threshold(scen)
print(f"threshold |alpha| = {thr:.6f}")

alphas = np.linspace(0, 1.5, 31)
records = counterexample_scan(scen, alphas)
for rec in records[::5]:
    print(f"|alpha|={abs(rec.alpha):.2f}  dp={rec.delta_p:.5f}  Tg*dm={rec.Tg_delta_m:.5f}  "
          f"violates={rec.violates_weighing}")

# %%
# Chain product dE*dT with the actual spreads, against hbar.

products = [boomerang(scen, a).product for a in alphas]
fig, ax = plt.subplots()
ax.plot(alphas, products, label="dE dT from the chain")
ax.axhline(scen.hbar, color="k", ls=":", label="hbar")
ax.axvline(thr, color="r", ls="--", label="threshold")
ax.set_xlabel("|alpha|")
ax.legend()
fig.savefig("weighing_counterexample.png", dpi=100)
