"""State constructors: Fock states, coherent states, random superpositions,
and Gaussian packets sampled on a periodic position grid."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy.stats import poisson

from .defaults import DEFAULTS
from .errors import GridError, NormalizationError, TruncationError
from .hilbert import FockSpace, StateVector

logger = logging.getLogger(__name__)


# --------------------------------------------------------------------------
# Fock-basis states

def fock(space: FockSpace, n: int) -> StateVector:
    """Energy eigenstate with exactly ``n`` quanta."""
    if not 0 <= n < space.dim:
        raise TruncationError(f"Fock level {n} outside truncation dim {space.dim}", n + 1)
    amps = np.zeros(space.dim, dtype=complex)
    amps[n] = 1.0
    return StateVector(space, amps)


@dataclass(frozen=True)
class CoherentParams:
    alpha: complex

    def __post_init__(self):
        alpha = complex(self.alpha)
        if not (math.isfinite(alpha.real) and math.isfinite(alpha.imag)):
            raise ValueError(f"coherent amplitude must be finite, got {self.alpha!r}")
        object.__setattr__(self, "alpha", alpha)


def poisson_tail(alpha: complex, dim: int, levels: int = DEFAULTS["tail_levels"]) -> float:
    """P(n >= dim - levels) for the photon-number distribution of psi_alpha."""
    mu = abs(alpha) ** 2
    if mu == 0.0:
        return 0.0
    return float(poisson.sf(dim - levels - 1, mu))


def required_dim(
    alpha: complex,
    budget: float = DEFAULTS["truncation_budget"],
    max_dim: int = DEFAULTS["max_dim"],
    max_alpha: float = DEFAULTS["max_alpha"],
) -> int:
    """Smallest truncation meeting ``budget`` for a coherent amplitude.

    Starts from ceil(|a|^2 + 10|a| + 20) and grows one level at a time.
    """
    r = abs(alpha)
    if r > max_alpha:
        start = math.ceil(r * r + 10 * r + 20)
        raise TruncationError(
            f"|alpha| = {r:g} exceeds the truncation policy limit {max_alpha:g} "
            f"(would need dim >= {start})",
            start,
        )
    dim = math.ceil(r * r + 10 * r + 20)
    while poisson_tail(alpha, dim) >= budget:
        dim += 1
        if dim > max_dim:
            raise TruncationError(
                f"coherent |alpha| = {r:g} needs dim > {max_dim} for tail budget {budget:g}",
                dim,
            )
    return dim


def coherent_amplitudes(alpha: complex, dim: int) -> np.ndarray:
    """Unnormalized series coefficients exp(-|a|^2/2) a^n / sqrt(n!), n < dim.

    Built by the recurrence c[n+1] = c[n] * a / sqrt(n+1) so nothing
    overflows at large n.
    """
    c = np.empty(dim, dtype=complex)
    c[0] = math.exp(-0.5 * abs(alpha) ** 2)
    for n in range(dim - 1):
        c[n + 1] = c[n] * alpha / math.sqrt(n + 1)
    return c


def coherent(
    space: FockSpace,
    params: CoherentParams | complex,
    budget: float = DEFAULTS["truncation_budget"],
) -> StateVector:
    """Coherent state psi_alpha truncated to ``space`` and renormalized."""
    if not isinstance(params, CoherentParams):
        params = CoherentParams(params)
    alpha = params.alpha
    need = required_dim(alpha, budget)
    if poisson_tail(alpha, space.dim) >= budget:
        raise TruncationError(
            f"dim {space.dim} too small for alpha = {alpha}: tail budget {budget:g} "
            f"needs dim >= {need}",
            need,
        )
    amps = coherent_amplitudes(alpha, space.dim)
    kept = float(np.sum(np.abs(amps) ** 2))
    logger.debug("coherent alpha=%s dim=%d renormalized by 1 - tail = %.3e", alpha, space.dim, kept)
    return StateVector(space, amps / math.sqrt(kept))


def coherent_space(alpha: complex, mass=1.0, omega=1.0, hbar=1.0,
                   budget=DEFAULTS["truncation_budget"]) -> FockSpace:
    """Fock space sized automatically for ``alpha``."""
    return FockSpace(required_dim(alpha, budget), mass, omega, hbar)


def random_state(space: FockSpace, rng: np.random.Generator, support: int | None = None) -> StateVector:
    """Random superposition of the lowest ``support`` Fock levels.

    The default support leaves the top levels empty, so the state meets the
    truncation budget and x, p act on it as they would untruncated.
    """
    if support is None:
        support = space.dim - DEFAULTS["tail_levels"]
    if not 1 <= support <= space.dim:
        raise ValueError(f"support {support} out of range for dim {space.dim}")
    amps = np.zeros(space.dim, dtype=complex)
    amps[:support] = rng.normal(size=support) + 1j * rng.normal(size=support)
    return StateVector.normalized(space, amps)


def superposition(space: FockSpace, amplitudes) -> StateVector:
    """Normalized state from a list of (complex) amplitudes, zero-padded."""
    amplitudes = np.asarray(amplitudes, dtype=complex)
    if amplitudes.size > space.dim:
        raise TruncationError(
            f"{amplitudes.size} amplitudes do not fit in dim {space.dim}", amplitudes.size
        )
    amps = np.zeros(space.dim, dtype=complex)
    amps[: amplitudes.size] = amplitudes
    return StateVector.normalized(space, amps)


# --------------------------------------------------------------------------
# Position-space grid states

@dataclass(frozen=True)
class Grid:
    """Uniform periodic grid of ``points`` samples over ``length``, centred on 0."""

    length: float
    points: int

    def __post_init__(self):
        m = int(self.points)
        if m != self.points or m < 2 or m & (m - 1):
            raise GridError(f"grid points must be a power of two, got {self.points!r}")
        if not self.length > 0:
            raise GridError(f"grid length must be positive, got {self.length!r}")

    @property
    def dx(self) -> float:
        return self.length / self.points

    @cached_property
    def x(self) -> np.ndarray:
        return (np.arange(self.points) - self.points // 2) * self.dx

    @cached_property
    def k(self) -> np.ndarray:
        return 2.0 * np.pi * np.fft.fftfreq(self.points, d=self.dx)

    @property
    def k_max(self) -> float:
        return np.pi / self.dx


@dataclass(frozen=True, eq=False)
class Wavefunction:
    """Complex samples psi(x_j) on a :class:`Grid`."""

    grid: Grid
    values: np.ndarray
    hbar: float = 1.0

    def __post_init__(self):
        values = np.array(self.values, dtype=complex)
        if values.shape != (self.grid.points,):
            raise GridError(f"{values.size} samples on a grid of {self.grid.points} points")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def norm(self) -> float:
        return float(np.sum(np.abs(self.values) ** 2) * self.grid.dx)

    def require_normalized(self, tol: float = 1e-10):
        if abs(self.norm - 1.0) > tol:
            raise NormalizationError(f"grid state has norm {self.norm!r}, expected 1")

    @property
    def density(self) -> np.ndarray:
        return np.abs(self.values) ** 2

    def momentum_density(self) -> np.ndarray:
        """|psi~(k)|^2 normalized to unit sum (discrete weights)."""
        w = np.abs(np.fft.fft(self.values)) ** 2
        return w / w.sum()

    def apply_p(self) -> np.ndarray:
        """-i hbar d/dx psi by spectral differentiation."""
        return np.fft.ifft(self.hbar * self.grid.k * np.fft.fft(self.values))

    def position_moments(self) -> tuple[float, float]:
        """(<x>, variance of x)."""
        rho = self.density * self.grid.dx
        rho = rho / rho.sum()
        mean = float(np.sum(self.grid.x * rho))
        return mean, float(np.sum((self.grid.x - mean) ** 2 * rho))

    def momentum_moments(self) -> tuple[float, float]:
        """(<p>, <p^2>) from the discrete spectrum."""
        w = self.momentum_density()
        p = self.hbar * self.grid.k
        return float(np.sum(p * w)), float(np.sum(p * p * w))


@dataclass(frozen=True)
class GaussianPacket:
    """Free-particle Gaussian: position spread ``sigma``, centre ``x0``, momentum ``p0``."""

    sigma: float
    x0: float
    p0: float
    mass: float
    grid: Grid
    hbar: float = 1.0
    margin: float = DEFAULTS["spread_margin"]

    def __post_init__(self):
        if not (self.sigma > 0 and self.mass > 0 and self.hbar > 0):
            raise ValueError("sigma, mass and hbar must be positive")
        g = self.grid
        if self.sigma < 4 * g.dx:
            raise GridError(f"sigma = {self.sigma:g} under-resolved: need >= 4 dx = {4 * g.dx:g}")
        if abs(self.x0) + self.margin * self.sigma > g.length / 2:
            raise GridError(
                f"packet at x0 = {self.x0:g} with sigma = {self.sigma:g} is within "
                f"{self.margin:g} sigma of the grid boundary +-{g.length / 2:g}"
            )
        k_extent = abs(self.p0) / self.hbar + self.margin / (2 * self.sigma)
        if k_extent > g.k_max:
            raise GridError(
                f"momentum content up to k = {k_extent:g} exceeds grid Nyquist {g.k_max:g}"
            )


def gaussian_packet_state(packet: GaussianPacket) -> Wavefunction:
    """Sample exp(-(x-x0)^2 / 4 sigma^2 + i p0 x / hbar), discretely normalized."""
    x = packet.grid.x
    psi = np.exp(-((x - packet.x0) ** 2) / (4 * packet.sigma**2) + 1j * packet.p0 * x / packet.hbar)
    psi /= np.sqrt(np.sum(np.abs(psi) ** 2) * packet.grid.dx)
    return Wavefunction(packet.grid, psi, packet.hbar)
