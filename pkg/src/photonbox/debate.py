"""The photon-box exchange as executable arithmetic.

Quantum indeterminacies are written ``delta_*`` on quantum objects (state
spreads, chain values) and classical experimental uncertainties live only
in :class:`ClassicalUncertainties`.  The two are never mixed in one field.

Bohr's relations, in the order used:

    (E)  dE = dm c^2                     mass-energy
    (Q)  dp dq ~ hbar                    position-momentum
    (W)  dp < T g dm                     claimed weighing relation
    (R)  dT / T = g dq / c^2             red shift

Relation (W) is treated as a claim that a state can falsify, never as an
invariant.  For a coherent state of the balance with small enough |alpha|
the momentum spread exceeds T g dm, and feeding the actual spreads back
through the chain gives dE dT < hbar.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .defaults import DEFAULTS
from .hilbert import FockSpace, StateVector, observables, variance
from .states import coherent, required_dim


@dataclass(frozen=True)
class ClassicalUncertainties:
    """Apparatus-limited uncertainties of the weighing: mass, momentum, position."""

    delta_m: float
    delta_p: float
    delta_q: float

    def __post_init__(self):
        for name in ("delta_m", "delta_p", "delta_q"):
            if not getattr(self, name) > 0:
                raise ValueError(f"classical {name} must be positive")


@dataclass(frozen=True)
class DebateScenario:
    """Constants, balancing time ``T`` and the balance oscillator.

    ``T`` is the balancing interval of the weighing, not the emission time
    of the pulse.
    """

    hbar: float
    c: float
    g: float
    T: float
    box: FockSpace
    classical: ClassicalUncertainties

    def __post_init__(self):
        for name in ("hbar", "c", "g", "T"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if not math.isclose(self.box.hbar, self.hbar, rel_tol=1e-15):
            raise ValueError("box FockSpace must use the scenario hbar")

    @property
    def omega_T(self) -> float:
        """Regime indicator: the impulse law holds while omega*T << 1."""
        return self.box.omega * self.T

    @classmethod
    def natural(cls, dim=40, T=1.0, delta_m=1.0, delta_p=1.0, delta_q=1.0, **overrides):
        """All-ones natural-unit scenario, with keyword overrides."""
        kw = dict(hbar=1.0, c=1.0, g=1.0, mass=1.0, omega=1.0)
        kw.update(overrides)
        box = FockSpace(dim, kw["mass"], kw["omega"], kw["hbar"])
        return cls(kw["hbar"], kw["c"], kw["g"], T, box,
                   ClassicalUncertainties(delta_m, delta_p, delta_q))


def mass_energy(delta_m: float, c: float) -> float:
    if delta_m < 0 or c < 0 or not (math.isfinite(delta_m) and math.isfinite(c)):
        raise ValueError("mass_energy needs finite nonnegative inputs")
    return delta_m * c * c


@dataclass(frozen=True)
class ChainStep:
    relation: str
    inputs: dict
    output: float


@dataclass(frozen=True)
class ChainAudit:
    delta_p: float
    delta_q: float
    delta_m: float
    delta_E: float
    delta_T: float
    product: float
    satisfied: bool  # product >= hbar
    position_momentum_holds: bool  # dp dq >= hbar was met by the inputs
    weighing_holds: bool | None  # dp < T g dm for a supplied dm; None at equality
    steps: tuple[ChainStep, ...] = field(default_factory=tuple)

    def replay(self) -> float:
        """Recompute the product from the recorded steps alone."""
        out = {s.relation: s.output for s in self.steps}
        return out["mass-energy"] * out["red-shift"]


def bohr_chain(delta_p: float, delta_q: float, T: float, g: float, c: float, hbar: float,
               delta_m: float | None = None) -> ChainAudit:
    """Run dp, dq through relations (W), (E), (R) and audit dE * dT >= hbar.

    Without ``delta_m`` the weighing relation is taken at equality,
    dm = dp / (T g), which reduces the chain to the identity dE dT = dp dq.
    Passing an actual mass spread instead records whether the strict
    inequality dp < T g dm held.
    """
    if T == 0 or g == 0:
        raise ZeroDivisionError("balancing time T and gravity g must be nonzero")
    steps = []
    if delta_m is None:
        delta_m = delta_p / (T * g)
        weighing = None
        steps.append(ChainStep("weighing", {"delta_p": delta_p, "T": T, "g": g}, delta_m))
    else:
        weighing = bool(delta_p < T * g * delta_m)
        steps.append(ChainStep("weighing", {"delta_m": delta_m}, delta_m))
    delta_E = mass_energy(delta_m, c)
    steps.append(ChainStep("mass-energy", {"delta_m": delta_m, "c": c}, delta_E))
    delta_T = T * g * delta_q / (c * c)
    steps.append(ChainStep("red-shift", {"T": T, "g": g, "delta_q": delta_q, "c": c}, delta_T))
    product = delta_E * delta_T
    return ChainAudit(
        delta_p=delta_p,
        delta_q=delta_q,
        delta_m=delta_m,
        delta_E=delta_E,
        delta_T=delta_T,
        product=product,
        satisfied=bool(product >= hbar),
        position_momentum_holds=bool(delta_p * delta_q >= hbar),
        weighing_holds=weighing,
        steps=tuple(steps),
    )


def counterexample_threshold(scenario: DebateScenario) -> float:
    """|alpha| below which a coherent balance state breaks dp < T g dm."""
    s = scenario
    return s.c**2 / (s.T * s.g) * math.sqrt(s.box.mass / (2.0 * s.hbar * s.box.omega))


@dataclass(frozen=True)
class ScanRecord:
    alpha: complex
    dim: int
    delta_p: float
    delta_E: float
    delta_m: float
    Tg_delta_m: float
    violates_weighing: bool  # dp > T g dm
    closed_form_p: float
    closed_form_E: float
    closed_form_ok: bool


def coherent_spreads(space: FockSpace, alpha: complex) -> tuple[float, float, StateVector]:
    """(dp, dE, state) computed on the truncated space."""
    state = coherent(space, alpha)
    ops = observables(space)
    return variance(state, ops["p"]).sigma, variance(state, ops["H"]).sigma, state


def scan_one(scenario: DebateScenario, alpha: complex,
             rtol: float = DEFAULTS["closed_form_rtol"]) -> ScanRecord:
    s, box = scenario, scenario.box
    alpha = complex(alpha)
    space = box.with_dim(max(box.dim, required_dim(alpha)))
    dp, dE, _ = coherent_spreads(space, alpha)
    dm = dE / s.c**2
    cf_p = math.sqrt(s.hbar * box.mass * box.omega / 2.0)
    cf_E = s.hbar * box.omega * abs(alpha)
    ok = math.isclose(dp, cf_p, rel_tol=rtol) and abs(dE - cf_E) <= rtol * max(cf_E, s.hbar * box.omega * 1e-3)
    return ScanRecord(alpha, space.dim, dp, dE, dm, s.T * s.g * dm,
                      bool(dp > s.T * s.g * dm), cf_p, cf_E, bool(ok))


def counterexample_scan(scenario: DebateScenario, alphas: Sequence[complex]) -> list[ScanRecord]:
    """Spreads of coherent balance states and whether each breaks the weighing claim.

    Records come back in input order.
    """
    return [scan_one(scenario, a) for a in alphas]


def violation_boundary(scenario: DebateScenario, lo: float, hi: float,
                       tol: float = 1e-12, phase: float = 0.0) -> float:
    """Bisect the scanner's own verdict for the |alpha| where violation stops.

    ``lo`` must violate and ``hi`` must not.
    """
    def violates(r):
        return scan_one(scenario, r * np.exp(1j * phase)).violates_weighing

    if not violates(lo) or violates(hi):
        raise ValueError("bracket does not straddle the violation boundary")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if violates(mid):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def boomerang(scenario: DebateScenario, alpha: complex) -> ChainAudit:
    """Feed a coherent state's actual spreads through the chain.

    dq is set from dp dq = hbar so the position-momentum step holds exactly;
    any shortfall of dE dT below hbar then comes from the weighing step.
    """
    rec = scan_one(scenario, alpha)
    dq = scenario.hbar / rec.delta_p
    return bohr_chain(rec.delta_p, dq, scenario.T, scenario.g, scenario.c,
                      scenario.hbar, delta_m=rec.delta_m)


@dataclass(frozen=True)
class ImpulseResult:
    delta_p_sim: float
    delta_p_formula: float
    delta_p_exact: float
    regime_error: float
    integrator_error: float  # relative to the exact oscillator solution


def weigh_impulse(scenario: DebateScenario, duration: float,
                  steps: int = DEFAULTS["weigh_steps"],
                  delta_m: float | None = None) -> ImpulseResult:
    """Momentum picked up by the balance from the unbalanced weight g*dm.

    The balance is an undamped oscillator (mass m, frequency omega) starting
    at rest in equilibrium.  It is integrated with velocity Verlet; the
    impulse formula g dm T is exact only while omega T << 1, and
    ``regime_error`` measures how far it is off.  ``delta_m`` overrides
    the scenario's classical mass uncertainty (zero is allowed here).
    """
    if not duration > 0:
        raise ValueError("duration must be positive")
    if steps < DEFAULTS["weigh_min_steps"]:
        raise ValueError(f"need at least {DEFAULTS['weigh_min_steps']} steps")
    m, w = scenario.box.mass, scenario.box.omega
    if delta_m is None:
        delta_m = scenario.classical.delta_m
    if delta_m < 0:
        raise ValueError("delta_m must be nonnegative")
    force = scenario.g * delta_m
    h = duration / steps
    k = m * w * w
    q, p = 0.0, 0.0
    f = force - k * q
    for _ in range(steps):
        p += 0.5 * h * f
        q += h * p / m
        f = force - k * q
        p += 0.5 * h * f
    formula = force * duration
    exact = force / w * math.sin(w * duration)
    if formula == 0.0:
        return ImpulseResult(p, 0.0, exact, 0.0, 0.0)
    return ImpulseResult(
        delta_p_sim=p,
        delta_p_formula=formula,
        delta_p_exact=exact,
        regime_error=abs(p - formula) / formula,
        integrator_error=abs(p - exact) / abs(formula),
    )


@dataclass(frozen=True)
class SeparationReport:
    delta_p: float  # quantum, from the state
    delta_m: float  # quantum, dE / c^2
    classical_p: float
    classical_m: float
    momentum_below: bool  # dp < classical dp
    mass_below: bool  # dm < classical dm


def separation_check(scenario: DebateScenario, state: StateVector) -> SeparationReport:
    """Are the box's quantum spreads below the weighing uncertainties?

    Both comparisons are reported; either may legitimately fail.
    """
    if state.space.mass != scenario.box.mass or state.space.omega != scenario.box.omega:
        raise ValueError("state must live on the scenario's balance oscillator")
    ops = observables(state.space)
    dp = variance(state, ops["p"]).sigma
    dm = variance(state, ops["H"]).sigma / scenario.c**2
    cl = scenario.classical
    return SeparationReport(dp, dm, cl.delta_p, cl.delta_m,
                            bool(dp < cl.delta_p), bool(dm < cl.delta_m))
