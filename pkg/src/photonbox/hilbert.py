"""Truncated Fock-space linear algebra for a single harmonic oscillator.

The oscillator models the photon box hanging from a spring balance: mass
``m``, angular frequency ``omega``.  Everything is dense numpy; dimensions
stay in the low hundreds.

Indeterminacies are standard deviations throughout.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .defaults import DEFAULTS
from .errors import DimensionMismatchError, HermiticityError, NormalizationError


@dataclass(frozen=True)
class FockSpace:
    """Truncation dimension plus the oscillator parameters."""

    dim: int
    mass: float = 1.0
    omega: float = 1.0
    hbar: float = 1.0

    def __post_init__(self):
        if int(self.dim) != self.dim or self.dim < 2:
            raise ValueError(f"dim must be an integer >= 2, got {self.dim!r}")
        for name in ("mass", "omega", "hbar"):
            value = getattr(self, name)
            if not (np.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be positive and finite, got {value!r}")
        object.__setattr__(self, "dim", int(self.dim))

    def with_dim(self, dim: int) -> "FockSpace":
        return FockSpace(dim, self.mass, self.omega, self.hbar)

    @property
    def x_scale(self) -> float:
        """Ground-state position spread sqrt(hbar / 2 m omega)."""
        return float(np.sqrt(self.hbar / (2.0 * self.mass * self.omega)))

    @property
    def p_scale(self) -> float:
        """Ground-state momentum spread sqrt(hbar m omega / 2)."""
        return float(np.sqrt(self.hbar * self.mass * self.omega / 2.0))


@dataclass(frozen=True, eq=False)
class StateVector:
    """Normalized pure state over the Fock basis of ``space``."""

    space: FockSpace
    amps: np.ndarray

    def __post_init__(self):
        amps = np.array(self.amps, dtype=complex).reshape(-1)
        if amps.shape != (self.space.dim,):
            raise DimensionMismatchError(
                f"amplitude vector has length {amps.size}, space has dim {self.space.dim}"
            )
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > DEFAULTS["norm_tol"]:
            raise NormalizationError(f"state norm is {norm!r}, expected 1")
        amps.setflags(write=False)
        object.__setattr__(self, "amps", amps)

    @classmethod
    def normalized(cls, space: FockSpace, amps) -> "StateVector":
        amps = np.asarray(amps, dtype=complex)
        norm = np.linalg.norm(amps)
        if norm == 0 or not np.isfinite(norm):
            raise NormalizationError("cannot normalize a zero or non-finite vector")
        return cls(space, amps / norm)

    @property
    def probabilities(self) -> np.ndarray:
        return np.abs(self.amps) ** 2

    def tail_mass(self, levels: int = DEFAULTS["tail_levels"]) -> float:
        """Probability in the top ``levels`` Fock levels."""
        return float(np.sum(self.probabilities[-levels:]))


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    """Dense operator on ``space``.

    ``hermitian=True`` is checked on construction; use :meth:`of` to have
    the flag inferred.
    """

    space: FockSpace
    entries: np.ndarray
    hermitian: bool = False

    def __post_init__(self):
        entries = np.array(self.entries, dtype=complex)
        d = self.space.dim
        if entries.shape != (d, d):
            raise DimensionMismatchError(f"operator shape {entries.shape} != ({d}, {d})")
        if self.hermitian and _hermitian_defect(entries) >= DEFAULTS["hermitian_tol"]:
            raise HermiticityError(
                f"operator flagged hermitian but |A - A^dag| = {_hermitian_defect(entries):.3e}"
            )
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    @classmethod
    def of(cls, space: FockSpace, entries) -> "OperatorMatrix":
        entries = np.asarray(entries, dtype=complex)
        scale = max(1.0, float(np.max(np.abs(entries), initial=0.0)))
        herm = _hermitian_defect(entries) < DEFAULTS["hermitian_tol"] * scale
        if herm:
            entries = 0.5 * (entries + entries.conj().T)
        return cls(space, entries, herm)

    @property
    def dag(self) -> "OperatorMatrix":
        return OperatorMatrix(self.space, self.entries.conj().T, self.hermitian)

    def _check(self, other: "OperatorMatrix"):
        if other.space != self.space:
            raise DimensionMismatchError("operators live on different Fock spaces")

    def __matmul__(self, other):
        if isinstance(other, OperatorMatrix):
            self._check(other)
            return OperatorMatrix.of(self.space, self.entries @ other.entries)
        if isinstance(other, StateVector):
            if other.space != self.space:
                raise DimensionMismatchError("operator and state live on different Fock spaces")
            return self.entries @ other.amps
        return NotImplemented

    def __add__(self, other):
        if not isinstance(other, OperatorMatrix):
            return NotImplemented
        self._check(other)
        return OperatorMatrix.of(self.space, self.entries + other.entries)

    def __sub__(self, other):
        if not isinstance(other, OperatorMatrix):
            return NotImplemented
        self._check(other)
        return OperatorMatrix.of(self.space, self.entries - other.entries)

    def __mul__(self, scalar):
        if not np.isscalar(scalar):
            return NotImplemented
        return OperatorMatrix.of(self.space, scalar * self.entries)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self * (1.0 / scalar)

    def __neg__(self):
        return OperatorMatrix(self.space, -self.entries, self.hermitian)


def _hermitian_defect(entries: np.ndarray) -> float:
    return float(np.max(np.abs(entries - entries.conj().T), initial=0.0))


@dataclass(frozen=True)
class IndeterminacyReport:
    """Mean, second moment and spread of one observable in one state.

    ``variance`` keeps the raw value (it may be a hair below zero from
    roundoff); ``sigma`` is the clamped square root.
    """

    mean: float
    second_moment: float
    variance: float
    sigma: float = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "sigma", float(np.sqrt(max(self.variance, 0.0))))


def build_ladder(space: FockSpace) -> tuple[OperatorMatrix, OperatorMatrix]:
    """Return the truncated annihilation and creation operators."""
    lower = np.diag(np.sqrt(np.arange(1, space.dim, dtype=float)), k=1).astype(complex)
    a = OperatorMatrix(space, lower)
    return a, a.dag


def observables(space: FockSpace) -> dict[str, OperatorMatrix]:
    """Position, momentum, number and Hamiltonian operators ``x, p, N, H``."""
    a, ad = build_ladder(space)
    hbar, m, w = space.hbar, space.mass, space.omega
    x = np.sqrt(hbar / (2 * m * w)) * (a.entries + ad.entries)
    p = 1j * np.sqrt(hbar * m * w / 2) * (ad.entries - a.entries)
    n = np.arange(space.dim, dtype=float)
    return {
        "x": OperatorMatrix(space, x, True),
        "p": OperatorMatrix(space, p, True),
        "N": OperatorMatrix(space, np.diag(n), True),
        "H": OperatorMatrix(space, np.diag(hbar * w * (n + 0.5)), True),
    }


def _check_pair(state: StateVector, op: OperatorMatrix):
    if state.space != op.space:
        raise DimensionMismatchError(
            f"state on dim {state.space.dim} vs operator on dim {op.space.dim} "
            "(or differing oscillator parameters)"
        )


def expectation(state: StateVector, op: OperatorMatrix) -> complex:
    """<psi|A|psi>."""
    _check_pair(state, op)
    return complex(np.vdot(state.amps, op.entries @ state.amps))


def variance(state: StateVector, op: OperatorMatrix) -> IndeterminacyReport:
    """Indeterminacy of a Hermitian observable.

    The variance is evaluated as ||(A - <A>) psi||^2, which equals
    <A^2> - <A>^2 but does not lose digits when the mean dominates (the
    zero-point offset of H, for instance).
    """
    _check_pair(state, op)
    if not op.hermitian:
        raise HermiticityError("variance requires a Hermitian observable")
    a_psi = op.entries @ state.amps
    mean = float(np.vdot(state.amps, a_psi).real)
    second = float(np.vdot(a_psi, a_psi).real)
    centered = a_psi - mean * state.amps
    var = float(np.vdot(centered, centered).real)
    return IndeterminacyReport(mean, second, var)


def commutator(A: OperatorMatrix, B: OperatorMatrix) -> OperatorMatrix:
    A._check(B)
    return OperatorMatrix.of(A.space, A.entries @ B.entries - B.entries @ A.entries)


def robertson_gap(state: StateVector, A: OperatorMatrix, B: OperatorMatrix) -> float:
    """Return dA * dB - |<[A, B]>| / 2, nonnegative for any state."""
    if not (A.hermitian and B.hermitian):
        raise HermiticityError("Robertson relation needs Hermitian A and B")
    _check_pair(state, A)
    _check_pair(state, B)
    # <[A,B]> = 2i Im<A psi|B psi> for Hermitian A, B
    comm = 2.0 * np.vdot(A.entries @ state.amps, B.entries @ state.amps).imag
    return variance(state, A).sigma * variance(state, B).sigma - 0.5 * abs(comm)


@dataclass(frozen=True)
class FunctionVariance:
    """Spread of p^2/2m (``lhs``) against (dp)^2/2m (``rhs``) for one state."""

    lhs: float
    rhs: float

    @property
    def differ(self) -> bool:
        return not np.isclose(self.lhs, self.rhs, rtol=1e-9, atol=0.0)


def variance_of_function_counterexample(space: FockSpace, state: StateVector) -> FunctionVariance:
    """Compare the spread of a function of p with the function of the spread.

    Free-particle energy E = p^2/2m is built on the same truncated space.
    Nothing is asserted; the two numbers are returned side by side.
    """
    p = observables(space)["p"]
    kinetic = (p @ p) / (2.0 * space.mass)
    lhs = variance(state, kinetic).sigma
    rhs = variance(state, p).sigma ** 2 / (2.0 * space.mass)
    return FunctionVariance(lhs, rhs)
