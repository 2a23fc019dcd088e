"""
A short shutter opening means a wide spectrum
=============================================

Pulses of three shapes are squeezed in time.  Their RMS bandwidth grows as
the duration shrinks, the product never drops below 1/2, and for the
hard-edged shutter the bandwidth does not converge at all.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from photonbox import make_pulse, rms_widths, spectrum

widths = np.geomspace(2.0, 0.25, 8)
for shape in ("gaussian", "raised_cosine", "rectangular"):
    print(shape)
    for w in widths:
        rep = rms_widths(make_pulse(shape, w))
        flag = "  (diverged)" if rep.diverged else ""
        print(f"  width {w:.3f}: dt={rep.delta_t:.4f} dw={rep.delta_omega:.4f} "
              f"product={rep.product:.4f}{flag}")

# %%
# Spectra of a wide and a narrow shutter.

fig, ax = plt.subplots()
for w in (2.0, 0.5):
    spec = spectrum(make_pulse("rectangular", w))
    sel = np.abs(spec.omega) < 60
    ax.plot(spec.omega[sel], np.abs(spec.amplitudes[sel]) ** 2, label=f"open for {w}")
ax.set_xlabel("angular frequency")
ax.legend()
fig.savefig("shutter_spectrum.png", dpi=100)
