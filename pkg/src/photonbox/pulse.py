"""Classical pulse envelopes and their time/frequency widths.

A shutter opened for a short time lets out a short pulse; the shorter the
pulse, the wider its spectrum.  Pulses are scalar complex envelopes on a
uniform time grid, normalized to unit energy, and widths are RMS widths of
the normalized intensity in time and in angular frequency.

A hard-edged (rectangular) pulse has an RMS bandwidth that grows without
bound as more of its spectrum is included.  That case is reported with
``diverged=True`` rather than a number that only reflects the grid.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .defaults import DEFAULTS
from .errors import GridError

SHAPES = ("gaussian", "rectangular", "raised_cosine")


@dataclass(frozen=True, eq=False)
class PulseSignal:
    """Envelope samples at times ``t0 + n*dt``, n = 0..M-1."""

    samples: np.ndarray
    dt: float
    t0: float = 0.0
    shape: str = "custom"
    hard_edged: bool = False

    def __post_init__(self):
        s = np.array(self.samples, dtype=complex)
        m = s.size
        if m < 2 or m & (m - 1):
            raise GridError(f"pulse length must be a power of two, got {m}")
        if not self.dt > 0:
            raise GridError(f"dt must be positive, got {self.dt!r}")
        energy = float(np.sum(np.abs(s) ** 2) * self.dt)
        if abs(energy - 1.0) > DEFAULTS["parseval_tol"]:
            raise GridError(f"pulse energy is {energy!r}, expected 1")
        peak = np.max(np.abs(s))
        edge = max(abs(s[0]), abs(s[-1]))
        if not self.hard_edged and edge >= DEFAULTS["pulse_edge_tol"] * peak:
            raise GridError(
                f"pulse does not decay at the grid ends (edge/peak = {edge / peak:.2e}); "
                "widen the grid"
            )
        s.setflags(write=False)
        object.__setattr__(self, "samples", s)

    @property
    def times(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(self.samples.size)


def make_pulse(
    shape: str,
    width: float,
    points: int = DEFAULTS["pulse_points"],
    dt: float = DEFAULTS["pulse_dt"],
    t0: float = DEFAULTS["pulse_t0"],
    shift: float = 0.0,
) -> PulseSignal:
    """Unit-energy pulse centred on the grid midpoint (plus ``shift``).

    ``width`` means: the RMS duration for ``gaussian``; the open time of the
    shutter for ``rectangular``; the full support of the cos^2 window for
    ``raised_cosine``.
    """
    if shape not in SHAPES:
        raise ValueError(f"unknown pulse shape {shape!r}; expected one of {SHAPES}")
    min_width = 2 * dt if shape == "rectangular" else 4 * dt
    if width < min_width:
        raise GridError(f"{shape} width {width:g} under-resolved on dt = {dt:g} (need >= {min_width:g})")
    n = np.arange(points)
    centre_index = points // 2
    # work in sample units so the centre lands exactly on a grid point
    u = (n - centre_index) * dt - shift
    if shape == "gaussian":
        s = np.exp(-(u**2) / (4.0 * width**2))
    elif shape == "rectangular":
        s = ((u >= -width / 2) & (u < width / 2)).astype(float)
    else:
        s = np.where(np.abs(u) <= width / 2, np.cos(np.pi * u / width) ** 2, 0.0)
    s = s.astype(complex)
    s /= np.sqrt(np.sum(np.abs(s) ** 2) * dt)
    return PulseSignal(s, dt, t0, shape, hard_edged=(shape == "rectangular"))


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Unitary Fourier transform on an ascending angular-frequency grid."""

    omega: np.ndarray
    amplitudes: np.ndarray

    @property
    def d_omega(self) -> float:
        return float(self.omega[1] - self.omega[0])

    @property
    def energy(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2) * self.d_omega)


def spectrum(pulse: PulseSignal) -> Spectrum:
    """S(w) = (2 pi)^-1/2 * integral s(t) exp(-i w t) dt, sampled by FFT."""
    m, dt = pulse.samples.size, pulse.dt
    omega = 2.0 * np.pi * np.fft.fftfreq(m, d=dt)
    amps = np.fft.fft(pulse.samples) * dt / np.sqrt(2.0 * np.pi) * np.exp(-1j * omega * pulse.t0)
    return Spectrum(np.fft.fftshift(omega), np.fft.fftshift(amps))


def _rms(axis: np.ndarray, weights: np.ndarray) -> tuple[float, float]:
    w = weights / weights.sum()
    mean = float(np.sum(axis * w))
    return mean, float(np.sqrt(np.sum((axis - mean) ** 2 * w)))


@dataclass(frozen=True)
class SpectralReport:
    delta_t: float
    delta_omega: float
    product: float
    delta_E: float
    diverged: bool
    hbar: float = 1.0
    band_growth: float = 0.0  # RMS bandwidth growth when the band is doubled


def rms_widths(pulse: PulseSignal, hbar: float = 1.0,
               growth_limit: float = DEFAULTS["divergence_growth"]) -> SpectralReport:
    """RMS duration and bandwidth.

    Convergence of the bandwidth is tested by comparing the RMS width over
    the central half of the frequency band with the width over the whole
    band.  Growth above ``growth_limit`` marks the bandwidth as diverged.
    """
    _, delta_t = _rms(pulse.times, np.abs(pulse.samples) ** 2)
    spec = spectrum(pulse)
    power = np.abs(spec.amplitudes) ** 2
    centre, delta_w = _rms(spec.omega, power)
    half_band = np.abs(spec.omega - centre) <= 0.5 * np.max(np.abs(spec.omega))
    _, delta_w_half = _rms(spec.omega[half_band], power[half_band])
    growth = delta_w / delta_w_half - 1.0
    return SpectralReport(
        delta_t=delta_t,
        delta_omega=delta_w,
        product=delta_t * delta_w,
        delta_E=hbar * delta_w,
        diverged=bool(growth > growth_limit),
        hbar=hbar,
        band_growth=float(growth),
    )


def photon_energy_spread(report: SpectralReport, hbar: float = 1.0) -> float:
    """Energy spread hbar * d_omega carried by the pulse."""
    return hbar * report.delta_omega


@dataclass(frozen=True)
class EnergyTimeCheck:
    """dE * dt against the RMS bound hbar/2 and the order-of-magnitude bound hbar."""

    product: float
    rms_bound: float
    order_bound: float
    rms_ok: bool
    order_ok: bool
    diverged: bool


def energy_time_check(report: SpectralReport, hbar: float = 1.0,
                      tol: float = DEFAULTS["duality_tol"]) -> EnergyTimeCheck:
    dE = photon_energy_spread(report, hbar)
    prod = dE * report.delta_t
    return EnergyTimeCheck(
        product=prod,
        rms_bound=hbar / 2,
        order_bound=hbar,
        rms_ok=report.diverged or prod >= hbar / 2 - tol * hbar,
        order_ok=report.diverged or prod >= hbar,
        diverged=report.diverged,
    )
