"""Quantized Euler-Bernoulli nanobeams: mode spectra, phonon Casimir
energy and phase-damping decoherence of two-mode superpositions."""

from .beam_modes import (
    BeamSpec,
    BoundaryCondition,
    FrequencyConvention,
    Mode,
    ModeTable,
    bracket_root,
    characteristic_fn,
    find_lambda,
    mode_frequencies,
    mode_shape_hinged,
    spacing_deviation,
    stable_characteristic_fn,
)
from .casimir import (
    CasimirReport,
    Scheme,
    casimir_energy,
    casimir_force_per_area,
    casimir_report,
    energy_per_area,
    regularized_difference_exact,
    regularized_difference_paper,
    sound_speed,
)
from .decoherence import (
    DEFAULT_DEPHASING,
    DephasingScenario,
    EntropySeries,
    decoherence_time,
    linear_entropy_series,
    mode_decay_rates,
    offdiag_decay,
    rank_subspaces,
    scenario_from_table,
    two_mode_energy,
)
from .errors import (
    BracketFailure,
    DomainError,
    NanobeamError,
    NoConvergence,
    NumericalFailure,
    UnsupportedBoundary,
)
from .spectrum import (
    DegeneracyPair,
    DegeneracyReport,
    EnergyLevel,
    energy_level,
    energy_levels,
    energy_scale,
    find_exact_degeneracies,
    frequency_ratio,
    renormalized_energy,
    scan_quasi_degeneracies,
)

__version__ = "0.1.0"
