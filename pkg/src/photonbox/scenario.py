"""Scenario files: strict parsing and per-kind runners.

A scenario is a JSON object::

    {"name": "...", "kind": "counterexample",
     "params": {"alphas": [0, 0.1, 0.5]},
     "units": "natural", "seed": 0,
     "output": {"format": "json", "path": null}}

Only ``name``, ``kind`` and ``params`` are required.  Every parameter not
given is filled from :mod:`photonbox.defaults` (constants from the chosen
unit system), and the filled-in scenario is echoed in the report so a
report alone is enough to rerun it.

Complex amplitudes are written as a number or a ``[re, im]`` pair.
"""

from __future__ import annotations

import copy
import json
import math
from dataclasses import dataclass, field
from typing import Any, Callable

import numpy as np

from . import debate, dynamics, hilbert, pulse, states
from .defaults import DEFAULTS, UNIT_SYSTEMS
from .errors import ScenarioError

KINDS = ("coherent", "counterexample", "chain", "spread", "pulse", "weigh", "separation")
TOP_KEYS = {"name", "kind", "params", "output", "units", "seed"}
OUTPUT_KEYS = {"format", "path"}

REQUIRED = object()

# kind -> {param: (type, default)}; a default of "@name" reads the unit system
PARAMS: dict[str, dict[str, tuple[str, Any]]] = {
    "coherent": {
        "alpha": ("complex", REQUIRED),
        "hbar": ("pos", "@hbar"), "mass": ("pos", "@mass"), "omega": ("pos", "@omega"),
        "budget": ("pos", DEFAULTS["truncation_budget"]),
    },
    "counterexample": {
        "alpha": ("complex", None),
        "alphas": ("complex_list", None),
        "hbar": ("pos", "@hbar"), "c": ("pos", "@c"), "g": ("pos", "@g"),
        "T": ("pos", 1.0), "mass": ("pos", "@mass"), "omega": ("pos", "@omega"),
    },
    "chain": {
        "delta_p": ("pos", None), "delta_q": ("pos", None), "delta_m": ("pos", None),
        "T": ("pos", 1.0), "g": ("pos", "@g"), "c": ("pos", "@c"), "hbar": ("pos", "@hbar"),
        "random_points": ("int", 0),
    },
    "spread": {
        "sigma": ("pos", REQUIRED), "x0": ("real", 0.0), "p0": ("real", 0.0),
        "mass": ("pos", "@mass"), "hbar": ("pos", "@hbar"),
        "times": ("real_list", [0.5, 2.0, 10.0]),
        "length": ("pos", DEFAULTS["spread_length"]), "points": ("int", DEFAULTS["spread_points"]),
    },
    "pulse": {
        "shape": ("str", REQUIRED), "width": ("pos", REQUIRED),
        "points": ("int", DEFAULTS["pulse_points"]), "dt": ("pos", DEFAULTS["pulse_dt"]),
        "t0": ("real", DEFAULTS["pulse_t0"]), "shift": ("real", 0.0), "hbar": ("pos", "@hbar"),
    },
    "weigh": {
        "T": ("pos", REQUIRED), "delta_m": ("nonneg", REQUIRED),
        "mass": ("pos", "@mass"), "omega": ("pos", "@omega"),
        "g": ("pos", "@g"), "c": ("pos", "@c"), "hbar": ("pos", "@hbar"),
        "steps": ("int", DEFAULTS["weigh_steps"]),
    },
    "separation": {
        "state": ("state", REQUIRED),
        "delta_p": ("pos", REQUIRED), "delta_m": ("pos", REQUIRED), "delta_q": ("pos", 1.0),
        "hbar": ("pos", "@hbar"), "c": ("pos", "@c"), "g": ("pos", "@g"), "T": ("pos", 1.0),
        "mass": ("pos", "@mass"), "omega": ("pos", "@omega"), "dim": ("int", None),
    },
}


@dataclass
class Scenario:
    name: str
    kind: str
    params: dict
    units: str = "natural"
    seed: int = 0
    output: dict = field(default_factory=lambda: {"format": "json", "path": None})

    def echo(self) -> dict:
        return {"name": self.name, "kind": self.kind, "params": self.params,
                "units": self.units, "seed": self.seed, "output": self.output}


@dataclass
class Check:
    name: str
    passed: bool
    measured: Any
    threshold: Any

    def as_dict(self) -> dict:
        return {"name": self.name, "passed": bool(self.passed),
                "measured": self.measured, "threshold": self.threshold}


# --------------------------------------------------------------------------
# parsing

def _locate(text: str, key: str) -> str:
    idx = text.find(f'"{key}"')
    if idx < 0:
        return ""
    line = text.count("\n", 0, idx) + 1
    col = idx - (text.rfind("\n", 0, idx) + 1) + 1
    return f" (line {line}, column {col})"


def load_scenario(path, units: str | None = None, seed: int | None = None) -> Scenario:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    return parse_scenario(text, units=units, seed=seed, source=str(path))


def parse_scenario(text: str, units: str | None = None, seed: int | None = None,
                   source: str = "<scenario>") -> Scenario:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(f"{source}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return scenario_from_dict(raw, units=units, seed=seed, text=text, source=source)


def scenario_from_dict(raw: Any, units: str | None = None, seed: int | None = None,
                       text: str = "", source: str = "<scenario>",
                       allow_ranges: bool = False) -> Scenario:
    if not isinstance(raw, dict):
        raise ScenarioError(f"{source}: scenario must be a JSON object")
    unknown = sorted(set(raw) - TOP_KEYS)
    if unknown:
        raise ScenarioError(f"{source}: unknown key {unknown[0]!r}{_locate(text, unknown[0])}")
    for key in ("name", "kind", "params"):
        if key not in raw:
            raise ScenarioError(f"{source}: missing required key {key!r}")
    kind = raw["kind"]
    if kind not in KINDS:
        raise ScenarioError(f"{source}: unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
    units = units or raw.get("units", "natural")
    if units not in UNIT_SYSTEMS:
        raise ScenarioError(f"{source}: units must be 'natural' or 'si', got {units!r}")
    if seed is None:
        seed = raw.get("seed", 0)
    if not isinstance(seed, int) or isinstance(seed, bool):
        raise ScenarioError(f"{source}: seed must be an integer")
    output = {"format": "json", "path": None}
    if "output" in raw:
        out = raw["output"]
        if not isinstance(out, dict):
            raise ScenarioError(f"{source}: output must be an object")
        bad = sorted(set(out) - OUTPUT_KEYS)
        if bad:
            raise ScenarioError(f"{source}: unknown key {bad[0]!r} in output{_locate(text, bad[0])}")
        output.update(out)
        if output["format"] not in ("json", "csv"):
            raise ScenarioError(f"{source}: output format must be json or csv")
    params = raw["params"]
    if not isinstance(params, dict):
        raise ScenarioError(f"{source}: params must be an object")
    spec = PARAMS[kind]
    bad = sorted(set(params) - set(spec))
    if bad:
        raise ScenarioError(
            f"{source}: unknown key {bad[0]!r} for kind {kind!r}{_locate(text, bad[0])}"
        )
    filled = {}
    for name, (typ, default) in spec.items():
        if name in params:
            value = params[name]
            if allow_ranges and isinstance(value, dict):
                filled[name] = value  # resolved per grid point by the sweeper
                continue
            filled[name] = _coerce(name, typ, value, source)
        elif default is REQUIRED:
            raise ScenarioError(f"{source}: kind {kind!r} requires parameter {name!r}")
        elif isinstance(default, str) and default.startswith("@"):
            filled[name] = UNIT_SYSTEMS[units][default[1:]]
        else:
            filled[name] = copy.deepcopy(default)
    if not allow_ranges:
        _cross_validate(kind, filled, source)
    return Scenario(str(raw["name"]), kind, filled, units, seed, output)


def _is_number(v) -> bool:
    return isinstance(v, (int, float)) and not isinstance(v, bool) and math.isfinite(v)


def _coerce(name: str, typ: str, value, source: str):
    def fail(what):
        raise ScenarioError(f"{source}: parameter {name!r} must be {what}, got {value!r}")

    if typ in ("real", "pos", "nonneg"):
        if not _is_number(value):
            fail("a finite number")
        value = float(value)
        if typ == "pos" and not value > 0:
            fail("positive")
        if typ == "nonneg" and value < 0:
            fail("nonnegative")
        return value
    if typ == "int":
        if not isinstance(value, int) or isinstance(value, bool):
            fail("an integer")
        return value
    if typ == "str":
        if not isinstance(value, str):
            fail("a string")
        return value
    if typ == "complex":
        return _complex_param(name, value, source)
    if typ == "complex_list":
        if not isinstance(value, list):
            fail("a list")
        return [_complex_param(name, v, source) for v in value]
    if typ == "real_list":
        if not isinstance(value, list) or not all(_is_number(v) for v in value):
            fail("a list of numbers")
        return [float(v) for v in value]
    if typ == "state":
        if not isinstance(value, dict) or len(value) != 1:
            fail('an object with exactly one of "alpha", "fock", "amplitudes"')
        (key, v), = value.items()
        if key == "alpha":
            return {"alpha": _complex_param(name, v, source)}
        if key == "fock":
            if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                fail("a nonnegative Fock level")
            return {"fock": v}
        if key == "amplitudes":
            if not isinstance(v, list) or not v:
                fail("a nonempty amplitude list")
            return {"amplitudes": [_complex_param(name, a, source) for a in v]}
        raise ScenarioError(f"{source}: unknown key {key!r} in state")
    raise AssertionError(typ)


def _complex_param(name, value, source) -> list[float]:
    """Canonical form [re, im]."""
    if _is_number(value):
        return [float(value), 0.0]
    if isinstance(value, list) and len(value) == 2 and all(_is_number(v) for v in value):
        return [float(value[0]), float(value[1])]
    raise ScenarioError(f"{source}: parameter {name!r} must be a number or [re, im], got {value!r}")


def _cross_validate(kind: str, p: dict, source: str):
    if kind == "counterexample":
        if (p["alpha"] is None) == (p["alphas"] is None):
            raise ScenarioError(f"{source}: counterexample needs exactly one of 'alpha', 'alphas'")
        if p["alphas"] is not None and not p["alphas"]:
            raise ScenarioError(f"{source}: 'alphas' is empty")
    if kind == "chain" and p["random_points"] == 0:
        if p["delta_p"] is None or p["delta_q"] is None:
            raise ScenarioError(f"{source}: chain needs 'delta_p' and 'delta_q' (or 'random_points')")
    if kind == "chain" and p["random_points"] < 0:
        raise ScenarioError(f"{source}: 'random_points' must be nonnegative")
    if kind == "pulse" and p["shape"] not in pulse.SHAPES:
        raise ScenarioError(f"{source}: unknown pulse shape {p['shape']!r}")
    if kind == "spread" and any(t < 0 for t in p["times"]):
        raise ScenarioError(f"{source}: spread times must be nonnegative")


# --------------------------------------------------------------------------
# runners; each returns (results, checks, rows)

def _c(pair) -> complex:
    return complex(pair[0], pair[1])


def _run_coherent(p, seed):
    alpha = _c(p["alpha"])
    space = states.coherent_space(alpha, p["mass"], p["omega"], p["hbar"], p["budget"])
    st = states.coherent(space, alpha, p["budget"])
    ops = hilbert.observables(space)
    vx, vp, vE = (hilbert.variance(st, ops[k]) for k in ("x", "p", "H"))
    gap = hilbert.robertson_gap(st, ops["x"], ops["p"])
    hb, m, w = p["hbar"], p["mass"], p["omega"]
    cf_p = hb * m * w / 2
    cf_E = (hb * w) ** 2 * abs(alpha) ** 2
    tail = st.tail_mass()
    results = {
        "dim": space.dim, "tail_mass": tail,
        "mean_x": vx.mean, "mean_p": vp.mean, "mean_E": vE.mean,
        "var_x": vx.variance, "var_p": vp.variance, "var_E": vE.variance,
        "delta_x": vx.sigma, "delta_p": vp.sigma, "delta_E": vE.sigma,
        "xp_product": vx.sigma * vp.sigma, "robertson_gap": gap,
    }
    rtol = DEFAULTS["closed_form_rtol"]
    checks = [
        Check("momentum variance matches hbar*m*omega/2 (rel)", abs(vp.variance - cf_p) <= rtol * cf_p,
              abs(vp.variance - cf_p) / cf_p, rtol),
        Check("energy variance matches (hbar*omega*|alpha|)^2 (abs, scaled)",
              abs(vE.variance - cf_E) <= rtol * max(cf_E, (hb * w) ** 2 * 1e-6),
              abs(vE.variance - cf_E), rtol * max(cf_E, (hb * w) ** 2 * 1e-6)),
        Check("coherent state saturates dx*dp = hbar/2", abs(gap) <= DEFAULTS["robertson_tol"] * hb,
              gap, DEFAULTS["robertson_tol"] * hb),
        Check("truncation tail below budget", tail < p["budget"], tail, p["budget"]),
    ]
    return results, checks, [dict(alpha_re=alpha.real, alpha_im=alpha.imag, **results)]


def _debate_scenario(p, dim=40, delta_m=1.0, delta_p=1.0, delta_q=1.0):
    box = hilbert.FockSpace(dim, p["mass"], p["omega"], p["hbar"])
    return debate.DebateScenario(p["hbar"], p["c"], p["g"], p["T"], box,
                                 debate.ClassicalUncertainties(delta_m, delta_p, delta_q))


def _run_counterexample(p, seed):
    scen = _debate_scenario(p, dim=2)
    alphas = [_c(a) for a in (p["alphas"] if p["alphas"] is not None else [p["alpha"]])]
    thr = debate.counterexample_threshold(scen)
    records, rows, checks = [], [], []
    for rec in debate.counterexample_scan(scen, alphas):
        chain = debate.boomerang(scen, rec.alpha)
        row = {
            "alpha_re": rec.alpha.real, "alpha_im": rec.alpha.imag, "abs_alpha": abs(rec.alpha),
            "dim": rec.dim, "delta_p": rec.delta_p, "delta_E": rec.delta_E, "delta_m": rec.delta_m,
            "Tg_delta_m": rec.Tg_delta_m, "violates_weighing": rec.violates_weighing,
            "closed_form_ok": rec.closed_form_ok, "chain_product": chain.product,
            "chain_satisfied": chain.satisfied,
        }
        records.append(row)
        rows.append(row)
        label = f"alpha={rec.alpha.real:g}{rec.alpha.imag:+g}j"
        checks.append(Check(f"{label}: spreads match closed forms", rec.closed_form_ok,
                            rec.delta_p, rec.closed_form_p))
        if abs(abs(rec.alpha) - thr) > 1e-9:
            expect = abs(rec.alpha) < thr
            checks.append(Check(f"{label}: violation iff |alpha| < threshold",
                                rec.violates_weighing == expect, abs(rec.alpha), thr))
        if rec.violates_weighing:
            checks.append(Check(f"{label}: chain product below hbar (reversed sign)",
                                chain.product < p["hbar"], chain.product, p["hbar"]))
    return {"threshold": thr, "records": records}, checks, rows


def _chain_check(audit, hbar) -> list[Check]:
    target = audit.delta_p * audit.delta_q
    rel = abs(audit.product - target) / target
    return [
        Check("chain identity dE*dT = dp*dq (rel)", rel <= 1e-12, rel, 1e-12),
        Check("satisfied iff dp*dq >= hbar", audit.satisfied == (target >= hbar), audit.product, hbar),
        Check("steps replay the product", audit.replay() == audit.product, audit.replay(), audit.product),
    ]


def _audit_dict(a) -> dict:
    return {
        "delta_p": a.delta_p, "delta_q": a.delta_q, "delta_m": a.delta_m, "delta_E": a.delta_E,
        "delta_T": a.delta_T, "product": a.product, "satisfied": a.satisfied,
        "position_momentum_holds": a.position_momentum_holds, "weighing_holds": a.weighing_holds,
        "steps": [{"relation": s.relation, "inputs": s.inputs, "output": s.output} for s in a.steps],
    }


def _run_chain(p, seed):
    audits = []
    if p["random_points"]:
        rng = np.random.default_rng(seed)
        for _ in range(p["random_points"]):
            dp, dq, T, g, c = np.exp(rng.uniform(-3, 3, size=5))
            audits.append(debate.bohr_chain(float(dp), float(dq), float(T), float(g), float(c), p["hbar"]))
    else:
        audits.append(debate.bohr_chain(p["delta_p"], p["delta_q"], p["T"], p["g"], p["c"],
                                        p["hbar"], delta_m=p["delta_m"]))
    checks = []
    for i, a in enumerate(audits):
        if a.weighing_holds is None:
            for ch in _chain_check(a, p["hbar"]):
                ch.name = f"point {i}: {ch.name}" if len(audits) > 1 else ch.name
                checks.append(ch)
        else:
            checks.append(Check("steps replay the product", a.replay() == a.product,
                                a.replay(), a.product))
    rows = [{k: v for k, v in _audit_dict(a).items() if k != "steps"} for a in audits]
    return {"audits": [_audit_dict(a) for a in audits]}, checks, rows


def _run_spread(p, seed):
    grid = states.Grid(p["length"], p["points"])
    packet = states.GaussianPacket(p["sigma"], p["x0"], p["p0"], p["mass"], grid, p["hbar"])
    psi0 = states.gaussian_packet_state(packet)
    coeffs = dynamics.spread_coefficients(psi0, p["mass"])
    rows, checks = [], []
    rtol = DEFAULTS["spread_rtol"]
    atol = DEFAULTS["spread_discrepancy_atol"]
    for t in p["times"]:
        psi_t = dynamics.free_propagate(psi0, p["mass"], t)
        numeric = dynamics.spread_numeric(psi_t)
        var_mode = dynamics.spread_analytic(coeffs, t, "variance")
        raw_mode = dynamics.spread_analytic(coeffs, t, "raw")
        disc = dynamics.spread_discrepancy(coeffs, t)
        expected_disc = coeffs.mean_v**2 * t * t
        rel = abs(var_mode - numeric) / numeric
        rows.append({"t": t, "delta_x_propagated": numeric, "delta_x_variance_mode": var_mode,
                     "delta_x_raw_mode": raw_mode, "raw_minus_variance_sq": disc,
                     "mean_v_sq_t_sq": expected_disc, "norm": psi_t.norm})
        checks.append(Check(f"t={t:g}: variance-mode spread matches propagation (rel)",
                            rel <= rtol, rel, rtol))
        checks.append(Check(f"t={t:g}: raw-mode discrepancy equals <v>^2 t^2",
                            abs(disc - expected_disc) <= atol, abs(disc - expected_disc), atol))
        checks.append(Check(f"t={t:g}: norm conserved", abs(psi_t.norm - 1) <= 1e-12,
                            abs(psi_t.norm - 1), 1e-12))
    results = {
        "coefficients": {"var_x0": coeffs.var_x0, "cross": coeffs.cross, "var_v": coeffs.var_v,
                         "raw_second_v": coeffs.raw_second_v, "mean_x": coeffs.mean_x,
                         "mean_v": coeffs.mean_v},
        "times": rows,
    }
    return results, checks, rows


def _run_pulse(p, seed):
    sig = pulse.make_pulse(p["shape"], p["width"], p["points"], p["dt"], p["t0"], p["shift"])
    spec = pulse.spectrum(sig)
    rep = pulse.rms_widths(sig, p["hbar"])
    et = pulse.energy_time_check(rep, p["hbar"])
    tol = DEFAULTS["duality_tol"]
    results = {
        "shape": p["shape"], "width": p["width"], "delta_t": rep.delta_t,
        "delta_omega": rep.delta_omega, "product": rep.product, "delta_E": rep.delta_E,
        "energy_time_product": et.product, "rms_bound": et.rms_bound, "order_bound": et.order_bound,
        "order_bound_met": et.order_ok, "diverged": rep.diverged, "band_growth": rep.band_growth,
        "spectral_energy": spec.energy,
    }
    checks = [Check("Parseval: spectral energy = 1", abs(spec.energy - 1) <= DEFAULTS["parseval_tol"],
                    abs(spec.energy - 1), DEFAULTS["parseval_tol"])]
    if p["shape"] == "rectangular":
        checks.append(Check("hard-edged pulse flagged as diverged", rep.diverged,
                            rep.band_growth, DEFAULTS["divergence_growth"]))
    else:
        checks.append(Check("bandwidth converged", not rep.diverged, rep.band_growth,
                            DEFAULTS["divergence_growth"]))
        checks.append(Check("duality product >= 1/2", rep.product >= 0.5 - tol, rep.product, 0.5 - tol))
    if p["shape"] == "gaussian":
        checks.append(Check("gaussian duality product = 1/2", abs(rep.product - 0.5) <= tol,
                            rep.product, 0.5))
        checks.append(Check("gaussian RMS duration = width", abs(rep.delta_t - p["width"]) <= tol,
                            rep.delta_t, p["width"]))
    return results, checks, [results]


def _run_weigh(p, seed):
    scen = _debate_scenario(p, dim=2)
    res = debate.weigh_impulse(scen, p["T"], p["steps"], delta_m=p["delta_m"])
    wt = p["omega"] * p["T"]
    bound = wt * wt / 6 + DEFAULTS["weigh_integrator_tol"]
    results = {
        "omega_T": wt, "delta_p_sim": res.delta_p_sim, "delta_p_formula": res.delta_p_formula,
        "delta_p_exact": res.delta_p_exact, "regime_error": res.regime_error,
        "regime_error_exact": (1 - math.sin(wt) / wt) if p["delta_m"] else 0.0,
        "integrator_error": res.integrator_error,
    }
    checks = [
        Check("regime error within (omega T)^2/6", res.regime_error <= bound, res.regime_error, bound),
        Check("integrator matches exact oscillator", res.integrator_error <= DEFAULTS["weigh_integrator_tol"],
              res.integrator_error, DEFAULTS["weigh_integrator_tol"]),
    ]
    return results, checks, [results]


def _run_separation(p, seed):
    spec = p["state"]
    if "alpha" in spec:
        alpha = _c(spec["alpha"])
        dim = p["dim"] or states.required_dim(alpha)
        space = hilbert.FockSpace(dim, p["mass"], p["omega"], p["hbar"])
        st = states.coherent(space, alpha)
    elif "fock" in spec:
        dim = p["dim"] or spec["fock"] + 2 + DEFAULTS["tail_levels"]
        st = states.fock(hilbert.FockSpace(dim, p["mass"], p["omega"], p["hbar"]), spec["fock"])
    else:
        amps = [_c(a) for a in spec["amplitudes"]]
        dim = p["dim"] or len(amps) + 2 + DEFAULTS["tail_levels"]
        st = states.superposition(hilbert.FockSpace(dim, p["mass"], p["omega"], p["hbar"]), amps)
    scen = _debate_scenario(p, dim=st.space.dim, delta_m=p["delta_m"], delta_p=p["delta_p"],
                            delta_q=p["delta_q"])
    rep = debate.separation_check(scen, st)
    tail = st.tail_mass()
    results = {
        "dim": st.space.dim, "tail_mass": tail,
        "quantum_delta_p": rep.delta_p, "quantum_delta_m": rep.delta_m,
        "classical_delta_p": rep.classical_p, "classical_delta_m": rep.classical_m,
        "momentum_below_uncertainty": rep.momentum_below, "mass_below_uncertainty": rep.mass_below,
    }
    checks = [Check("truncation tail below budget", tail < DEFAULTS["truncation_budget"], tail,
                    DEFAULTS["truncation_budget"])]
    return results, checks, [results]


RUNNERS: dict[str, Callable] = {
    "coherent": _run_coherent,
    "counterexample": _run_counterexample,
    "chain": _run_chain,
    "spread": _run_spread,
    "pulse": _run_pulse,
    "weigh": _run_weigh,
    "separation": _run_separation,
}


def execute(scenario: Scenario) -> tuple[dict, list[Check], list[dict]]:
    """Run one scenario; returns (results, checks, csv rows)."""
    results, checks, rows = RUNNERS[scenario.kind](scenario.params, scenario.seed)
    results = {"units": scenario.units, **results}
    return results, checks, rows
