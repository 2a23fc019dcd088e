"""Single table of numeric defaults.

Every scenario parameter not given explicitly is taken from here, so this
is the one place to look up a tolerance, grid size or budget.
"""

from types import MappingProxyType

NATURAL = MappingProxyType({"hbar": 1.0, "c": 1.0, "g": 1.0, "mass": 1.0, "omega": 1.0})

# CODATA 2018 hbar and c (exact), standard gravity.
SI = MappingProxyType(
    {"hbar": 1.054571817e-34, "c": 299792458.0, "g": 9.80665, "mass": 1.0, "omega": 1.0}
)

UNIT_SYSTEMS = {"natural": NATURAL, "si": SI}

DEFAULTS = MappingProxyType(
    {
        # Fock truncation
        "truncation_budget": 1e-12,  # tail mass allowed in the top 5 levels
        "tail_levels": 5,
        "max_alpha": 12.0,
        "max_dim": 512,
        "norm_tol": 1e-12,
        "hermitian_tol": 1e-12,
        # Robertson slack for truncated states
        "robertson_tol": 1e-9,
        # closed-form agreement of coherent-state spreads
        "closed_form_rtol": 1e-8,
        # free-particle grid
        "spread_length": 400.0,
        "spread_points": 8192,
        "spread_margin": 6.0,  # packet must stay 6 sigma(t) from the edge
        "spread_rtol": 1e-6,
        "spread_discrepancy_atol": 1e-9,
        # pulse grid
        "pulse_points": 4096,
        "pulse_dt": 1.0 / 64.0,
        "pulse_t0": 0.0,
        "pulse_edge_tol": 1e-8,
        "parseval_tol": 1e-10,
        "duality_tol": 1e-6,
        "divergence_growth": 0.10,
        # weighing integrator
        "weigh_steps": 10000,
        "weigh_min_steps": 1000,
        "weigh_integrator_tol": 1e-6,
    }
)
