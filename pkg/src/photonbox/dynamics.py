"""Time evolution.

Two pieces: the closed-form rotation of a coherent amplitude under the
oscillator Hamiltonian, and free-particle spreading of a sampled packet.
Spreading is computed two ways, from the analytic law

    dx(t)^2 = dx(0)^2 + (<xv + vx> - 2<x><v>) t + C t^2

and by exact propagation in momentum space.  The t^2 coefficient C is
either the velocity variance (``mode="variance"``, the correct law) or the
raw second moment <v^2> (``mode="raw"``); the two differ by <v>^2 t^2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .defaults import DEFAULTS
from .errors import GridError, PhotonBoxError
from .states import Wavefunction


def evolve_coherent(alpha: complex, omega: float, t: float) -> complex:
    """alpha(t) = alpha * exp(-i omega t)."""
    return complex(alpha) * np.exp(-1j * omega * t)


@dataclass(frozen=True)
class SpreadCoefficients:
    var_x0: float
    cross: float  # <xv + vx> - 2 <x><v>
    var_v: float
    raw_second_v: float  # <v^2>
    mean_x: float
    mean_v: float


def spread_coefficients(state: Wavefunction, mass: float) -> SpreadCoefficients:
    """Moments entering the spreading law, with v = p / m.

    The cross term uses the symmetrized product: <xp + px> = 2 Re <x psi | p psi>.
    """
    state.require_normalized()
    g = state.grid
    psi = state.values
    mean_x, var_x = state.position_moments()
    p_psi = state.apply_p()
    xp_sym = 2.0 * float(np.real(np.vdot(g.x * psi, p_psi))) * g.dx
    mean_p, second_p = state.momentum_moments()
    mean_v = mean_p / mass
    raw_second_v = second_p / mass**2
    var_v = max(raw_second_v - mean_v**2, 0.0)
    cross = xp_sym / mass - 2.0 * mean_x * mean_v
    return SpreadCoefficients(var_x, cross, var_v, raw_second_v, mean_x, mean_v)


def _radicand(coeffs: SpreadCoefficients, t: float, mode: str) -> float:
    if mode == "variance":
        c2 = coeffs.var_v
    elif mode == "raw":
        c2 = coeffs.raw_second_v
    else:
        raise ValueError(f"mode must be 'variance' or 'raw', got {mode!r}")
    return coeffs.var_x0 + coeffs.cross * t + c2 * t * t


def spread_analytic(coeffs: SpreadCoefficients, t: float, mode: str = "variance") -> float:
    """Position spread at time ``t`` from the analytic law."""
    if t < 0:
        raise ValueError("t must be nonnegative")
    r = _radicand(coeffs, t, mode)
    if r < 0:
        raise PhotonBoxError(
            f"negative radicand {r:.3e} at t = {t:g}: inconsistent spread coefficients"
        )
    return float(np.sqrt(r))


def spread_discrepancy(coeffs: SpreadCoefficients, t: float) -> float:
    """raw-mode minus variance-mode squared spread; equals <v>^2 t^2."""
    return _radicand(coeffs, t, "raw") - _radicand(coeffs, t, "variance")


def free_propagate(state: Wavefunction, mass: float, t: float,
                   margin: float = DEFAULTS["spread_margin"]) -> Wavefunction:
    """Exact free evolution: multiply psi~(k) by exp(-i hbar k^2 t / 2m).

    Refuses to run when the packet, predicted from its own moments, would
    come within ``margin`` spreads of the periodic boundary.
    """
    if t == 0:
        return state
    g = state.grid
    coeffs = spread_coefficients(state, mass)
    sigma_t = spread_analytic(coeffs, abs(t))
    centre = coeffs.mean_x + coeffs.mean_v * t
    half = g.length / 2
    if abs(centre) + margin * sigma_t > half:
        raise GridError(
            f"packet would reach the boundary by t = {t:g}: centre {centre:g}, "
            f"spread {sigma_t:g}, half-length {half:g}"
        )
    phase = np.exp(-1j * state.hbar * g.k**2 * t / (2.0 * mass))
    return Wavefunction(g, np.fft.ifft(phase * np.fft.fft(state.values)), state.hbar)


def spread_numeric(state: Wavefunction) -> float:
    """Grid position spread of a sampled state."""
    return float(np.sqrt(state.position_moments()[1]))
