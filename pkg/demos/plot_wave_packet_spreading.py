"""
Position spread of a moving packet
==================================

The spread of a free packet follows

    dx(t)^2 = dx(0)^2 + (<xv + vx> - 2<x><v>) t + C t^2

Exact propagation in momentum space says C is the velocity variance.  With
the raw second moment <v^2> in its place, a packet with nonzero drift
seems to spread faster than it does.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from photonbox import (GaussianPacket, Grid, free_propagate, gaussian_packet_state,
                       spread_analytic, spread_coefficients, spread_numeric)

grid = Grid(400.0, 8192)
psi = gaussian_packet_state(GaussianPacket(sigma=1.0, x0=0.0, p0=3.0, mass=1.0, grid=grid))
coeffs = spread_coefficients(psi, 1.0)
print(coeffs)

times = np.linspace(0, 10, 21)
exact = [spread_numeric(free_propagate(psi, 1.0, t)) for t in times]
var_mode = [spread_analytic(coeffs, t, "variance") for t in times]
raw_mode = [spread_analytic(coeffs, t, "raw") for t in times]
print("max relative error, variance reading:", np.max(np.abs(np.subtract(var_mode, exact)) / exact))

fig, ax = plt.subplots()
ax.plot(times, exact, "k", lw=3, label="propagated")
ax.plot(times, var_mode, "--", label="velocity variance")
ax.plot(times, raw_mode, ":", label="raw <v^2>")
ax.set_xlabel("t")
ax.set_ylabel("position spread")
ax.legend()
fig.savefig("wave_packet_spreading.png", dpi=100)
