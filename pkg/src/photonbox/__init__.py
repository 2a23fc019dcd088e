"""Numerical laboratory for the photon-box exchange.

A truncated-Fock-space oscillator for the weighed box, classical pulse
envelopes for the escaping radiation, free-particle spreading, and the
Bohr chain as auditable arithmetic.
"""

from .debate import (
    ClassicalUncertainties,
    DebateScenario,
    bohr_chain,
    boomerang,
    counterexample_scan,
    counterexample_threshold,
    mass_energy,
    separation_check,
    violation_boundary,
    weigh_impulse,
)
from .dynamics import (
    evolve_coherent,
    free_propagate,
    spread_analytic,
    spread_coefficients,
    spread_discrepancy,
    spread_numeric,
)
from .errors import (
    DimensionMismatchError,
    GridError,
    HermiticityError,
    NormalizationError,
    PhotonBoxError,
    ScenarioError,
    TruncationError,
)
from .hilbert import (
    FockSpace,
    IndeterminacyReport,
    OperatorMatrix,
    StateVector,
    build_ladder,
    expectation,
    observables,
    robertson_gap,
    variance,
    variance_of_function_counterexample,
)
from .pulse import make_pulse, photon_energy_spread, rms_widths, spectrum
from .states import (
    CoherentParams,
    GaussianPacket,
    Grid,
    coherent,
    coherent_space,
    fock,
    gaussian_packet_state,
    random_state,
    required_dim,
    superposition,
)

__version__ = "0.1.0"
