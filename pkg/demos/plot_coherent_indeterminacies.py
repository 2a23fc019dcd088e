"""
Indeterminacies of a coherent box state
=======================================

The balance holding the box is an undamped oscillator.  Its coherent
states have a momentum spread that does not depend on alpha, while the
energy spread grows linearly with |alpha|.  Both are computed here on a
truncated Fock space and compared with the closed forms.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from photonbox import coherent, coherent_space, observables, robertson_gap, variance

radii = np.linspace(0, 4, 41)
dp, dE, gap = [], [], []
for r in radii:
    space = coherent_space(r * np.exp(1j * np.pi / 3))
    psi = coherent(space, r * np.exp(1j * np.pi / 3))
    ops = observables(space)
    dp.append(variance(psi, ops["p"]).sigma)
    dE.append(variance(psi, ops["H"]).sigma)
    gap.append(robertson_gap(psi, ops["x"], ops["p"]))

print("largest |dp - 1/sqrt(2)|:", np.max(np.abs(np.array(dp) - np.sqrt(0.5))))
print("largest |dE - |alpha||  :", np.max(np.abs(np.array(dE) - radii)))
print("largest |Robertson gap| :", np.max(np.abs(gap)))

# %%
# Momentum spread is flat, energy spread is a straight line of slope hbar*omega.

fig, ax = plt.subplots()
ax.plot(radii, dp, label="momentum spread")
ax.plot(radii, dE, label="energy spread")
ax.set_xlabel("|alpha|")
ax.legend()
fig.savefig("coherent_indeterminacies.png", dpi=100)
