"""
Phase damping of two-mode superpositions

    |psi> = a |0>_j |n>_k + b |m>_j |0>_k

Phase damping exchanges no energy, so the populations |a|^2, |b|^2 are
constant and the coherence between the two branches decays as
exp(-Lambda dE^2 t) with dE = hbar omega_j m - hbar omega_k n. The state
therefore lives in a two-dimensional effective space and its linear
entropy is

    delta(t) = 2 |a|^2 |b|^2 (1 - exp(-2 Lambda dE^2 t)).

Degenerate branches (dE = 0) never decohere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .beam_modes import BoundaryCondition, ModeTable
from .errors import DomainError
from .spectrum import energy_scale

NORM_TOL = 1e-12
DEFAULT_DEPHASING = 1.0 / (10.0 * math.pi) ** 2


def two_mode_energy(omega_j: float, omega_k: float, m: int, n: int, hbar: float = 1.0) -> float:
    """Renormalized energy hbar*omega_j*m + hbar*omega_k*n of |m>_j |n>_k."""
    if m < 0 or n < 0:
        raise DomainError(f"occupation numbers must be nonnegative, got m={m}, n={n}")
    return hbar * omega_j * m + hbar * omega_k * n


@dataclass(frozen=True)
class DephasingScenario:
    """Two-branch superposition under a phase-damping reservoir.

    ``dephasing`` is the effective strength Lambda (1 / (energy^2 time)).
    ``gap`` optionally pins the branch energy difference; scenarios built
    from hinged-hinged tables use it so that integer degeneracies give an
    exact zero instead of a rounding residue.
    """

    mode_j: int
    mode_k: int
    omega_j: float
    omega_k: float
    m: int
    n: int
    a: complex = 1 / math.sqrt(2)
    b: complex = 1 / math.sqrt(2)
    dephasing: float = DEFAULT_DEPHASING
    hbar: float = 1.0
    gap: float | None = None

    def __post_init__(self):
        if self.m < 0 or self.n < 0:
            raise DomainError(f"occupation numbers must be nonnegative, got m={self.m}, n={self.n}")
        if not self.dephasing >= 0.0:
            raise DomainError(f"dephasing strength must be nonnegative, got {self.dephasing!r}")
        norm = abs(self.a) ** 2 + abs(self.b) ** 2
        if abs(norm - 1.0) > NORM_TOL:
            raise DomainError(f"|a|^2 + |b|^2 = {norm!r}, expected 1")

    @property
    def energy_gap(self) -> float:
        """E(m-branch) - E(n-branch)."""
        if self.gap is not None:
            return self.gap
        upper = two_mode_energy(self.omega_j, self.omega_k, self.m, 0, self.hbar)
        lower = two_mode_energy(self.omega_j, self.omega_k, 0, self.n, self.hbar)
        return upper - lower

    @property
    def populations(self) -> tuple[float, float]:
        return abs(self.a) ** 2, abs(self.b) ** 2

    def density_matrix(self, t: float) -> np.ndarray:
        """Effective 2x2 density matrix in the (n-branch, m-branch) basis."""
        coherence = self.a * np.conj(self.b) * offdiag_decay(self.energy_gap, self.dephasing, t)
        pa, pb = self.populations
        return np.array([[pa, coherence], [np.conj(coherence), pb]], dtype=complex)


@dataclass(frozen=True)
class EntropySeries:
    times: np.ndarray
    delta: np.ndarray
    delta_asymptote: float
    decoherence_time: float


def offdiag_decay(delta_E: float, dephasing: float, t: float) -> float:
    """exp(-Lambda dE^2 t)."""
    if t < 0:
        raise DomainError(f"time must be nonnegative, got {t!r}")
    if dephasing < 0:
        raise DomainError(f"dephasing strength must be nonnegative, got {dephasing!r}")
    return math.exp(-dephasing * delta_E * delta_E * t)


def linear_entropy_series(scenario: DephasingScenario, t_grid) -> EntropySeries:
    times = np.asarray(t_grid, dtype=float)
    if times.ndim != 1:
        raise DomainError("time grid must be one-dimensional")
    if np.any(times < 0.0) or np.any(np.diff(times) < 0.0):
        raise DomainError("time grid must be sorted and nonnegative")
    pa, pb = scenario.populations
    asymptote = 2.0 * pa * pb
    rate = 2.0 * scenario.dephasing * scenario.energy_gap**2
    # 1 - (pa^2 + pb^2 + 2 pa pb D) with pa + pb = 1
    delta = asymptote * -np.expm1(-rate * times)
    return EntropySeries(times, delta, asymptote, decoherence_time(scenario))


def decoherence_time(scenario: DephasingScenario) -> float:
    """e-fold time 1 / (Lambda dE^2) of the coherence; inf when it never decays."""
    rate = scenario.dephasing * scenario.energy_gap**2
    return math.inf if rate == 0.0 else 1.0 / rate


def scenario_from_table(
    table: ModeTable,
    j: int,
    k: int,
    m: int,
    n: int,
    a: complex = 1 / math.sqrt(2),
    b: complex = 1 / math.sqrt(2),
    dephasing: float = DEFAULT_DEPHASING,
) -> DephasingScenario:
    mode_j, mode_k = table.mode(j), table.mode(k)
    spec = table.spec
    gap = None
    if spec.bc is BoundaryCondition.HINGED_HINGED:
        gap = energy_scale(spec, table.convention) * (m * j * j - n * k * k)
    return DephasingScenario(
        mode_j=j,
        mode_k=k,
        omega_j=mode_j.omega,
        omega_k=mode_k.omega,
        m=m,
        n=n,
        a=a,
        b=b,
        dephasing=dephasing,
        hbar=spec.hbar,
        gap=gap,
    )


def rank_subspaces(
    table: ModeTable, j: int, k: int, m_max: int, n_max: int, dephasing: float = DEFAULT_DEPHASING
) -> list[tuple[int, int, float]]:
    """(m, n, t*) for 1 <= m <= m_max, 1 <= n <= n_max, longest-lived first."""
    ranking = []
    for m in range(1, m_max + 1):
        for n in range(1, n_max + 1):
            scenario = scenario_from_table(table, j, k, m, n, dephasing=dephasing)
            ranking.append((m, n, decoherence_time(scenario)))
    ranking.sort(key=lambda row: (-row[2], row[0], row[1]))
    return ranking


def mode_decay_rates(table: ModeTable, eta: float) -> list[tuple[int, float]]:
    """Per-mode damping rates kappa_k = eta * omega_k (diagnostic only)."""
    if eta < 0:
        raise DomainError(f"eta must be nonnegative, got {eta!r}")
    return [(mode.k, eta * mode.omega) for mode in table]
