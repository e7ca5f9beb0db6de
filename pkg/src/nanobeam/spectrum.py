"""Renormalized single-mode energy levels and (quasi-)degenerate level pairs.

A level (k, n) has raw energy hbar*omega_k*(n + 1/2) and renormalized
energy hbar*omega_k*n. For hinged-hinged beams omega_k = omega_1 k^2, so
levels are C*k^2*n with C = hbar*omega_1 and exact degeneracies are the
integer solutions of n k^2 = n' k'^2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .beam_modes import (
    DEFAULT_TOL,
    BeamSpec,
    BoundaryCondition,
    FrequencyConvention,
    ModeTable,
    _check_k,
    find_lambda,
)
from .errors import DomainError, UnsupportedBoundary

Level = tuple[int, int]


@dataclass(frozen=True)
class EnergyLevel:
    k: int
    n: int
    energy0: float
    energy_raw: float


@dataclass(frozen=True)
class DegeneracyPair:
    a: Level
    b: Level
    gap: float
    rel_gap: float
    exact: bool

    def sort_key(self):
        return (self.rel_gap, self.a, self.b)


@dataclass(frozen=True)
class DegeneracyReport:
    spec: BeamSpec
    kmax: int
    nmax: int
    rel_tol: float
    pairs: tuple[DegeneracyPair, ...]


def energy_scale(spec: BeamSpec, convention: FrequencyConvention | str = FrequencyConvention.PAPER) -> float:
    """C = hbar (pi/L)^2 * frequency factor, the hinged-hinged level spacing of mode 1."""
    return spec.hbar * spec.frequency_factor(convention) * (math.pi / spec.length) ** 2


def _check_n(n) -> int:
    if isinstance(n, bool) or int(n) != n or n < 0:
        raise DomainError(f"occupation number must be a nonnegative integer, got {n!r}")
    return int(n)


def _mode_quantum(spec: BeamSpec, k: int, tol: float, convention) -> float:
    """hbar*omega_k for a non-hinged beam."""
    mode = find_lambda(spec.bc, spec.length, k, tol)
    return spec.hbar * spec.frequency_factor(convention) * mode.lam**2


def renormalized_energy(
    spec: BeamSpec,
    k: int,
    n: int,
    tol: float = DEFAULT_TOL,
    convention: FrequencyConvention | str = FrequencyConvention.PAPER,
) -> float:
    return energy_level(spec, k, n, tol, convention).energy0


def energy_level(
    spec: BeamSpec,
    k: int,
    n: int,
    tol: float = DEFAULT_TOL,
    convention: FrequencyConvention | str = FrequencyConvention.PAPER,
) -> EnergyLevel:
    k, n = _check_k(k), _check_n(n)
    if spec.bc is BoundaryCondition.HINGED_HINGED:
        c = energy_scale(spec, convention)
        return EnergyLevel(k, n, c * (k * k * n), c * (k * k * (2 * n + 1)) / 2)
    quantum = _mode_quantum(spec, k, tol, convention)
    return EnergyLevel(k, n, quantum * n, quantum * (n + 0.5))


def _table_levels(table: ModeTable, kmax: int, nmax: int) -> list[EnergyLevel]:
    """Nonvacuum levels 1 <= k <= kmax, 1 <= n <= nmax, in (k, n) order."""
    if kmax > len(table):
        raise IndexError(f"table has {len(table)} modes, kmax={kmax} requested")
    spec = table.spec
    levels = []
    if spec.bc is BoundaryCondition.HINGED_HINGED:
        # integer products keep coincident levels bitwise equal
        c = energy_scale(spec, table.convention)
        for k in range(1, kmax + 1):
            for n in range(1, nmax + 1):
                levels.append(EnergyLevel(k, n, c * (k * k * n), c * (k * k * (2 * n + 1)) / 2))
        return levels
    for k in range(1, kmax + 1):
        quantum = spec.hbar * table.mode(k).omega
        for n in range(1, nmax + 1):
            levels.append(EnergyLevel(k, n, quantum * n, quantum * (n + 0.5)))
    return levels


def energy_levels(table: ModeTable, kmax: int | None = None, nmax: int = 1) -> list[EnergyLevel]:
    kmax = len(table) if kmax is None else _check_k(kmax)
    return _table_levels(table, kmax, _check_k(nmax))


def find_exact_degeneracies(kmax: int, nmax: int, spec: BeamSpec | None = None) -> list[DegeneracyPair]:
    """All hinged-hinged pairs (k, n) ~ (k', n') with n k^2 = n' k'^2.

    Enumerates 1 <= k < k' <= kmax and 1 <= n' <= n <= nmax using integer
    arithmetic only.
    """
    kmax, nmax = _check_k(kmax), _check_k(nmax)
    if spec is not None and spec.bc is not BoundaryCondition.HINGED_HINGED:
        raise UnsupportedBoundary(f"exact degeneracies are only defined for hinged-hinged beams, not {spec.bc}")
    pairs = []
    for k in range(1, kmax + 1):
        kk = k * k
        for k2 in range(k + 1, kmax + 1):
            for n2 in range(1, nmax + 1):
                weight = n2 * k2 * k2
                if weight % kk:
                    continue
                n = weight // kk
                if n <= nmax:
                    pairs.append(DegeneracyPair((k, n), (k2, n2), 0.0, 0.0, True))
    pairs.sort(key=DegeneracyPair.sort_key)
    return pairs


def _pair(lo: EnergyLevel, hi: EnergyLevel, hinged: bool) -> DegeneracyPair:
    a, b = sorted([(lo.k, lo.n), (hi.k, hi.n)])
    gap = abs(hi.energy0 - lo.energy0)
    if hinged:
        # relative gap from the integer weights k^2 n: exact ties stay ties under rescaling
        w_lo, w_hi = lo.k * lo.k * lo.n, hi.k * hi.k * hi.n
        exact = w_lo == w_hi
        rel_gap = abs(w_hi - w_lo) / max(w_lo, w_hi)
    else:
        exact = gap == 0.0
        rel_gap = gap / max(abs(lo.energy0), abs(hi.energy0))
    return DegeneracyPair(a, b, 0.0 if exact else gap, 0.0 if exact else rel_gap, exact)


def scan_quasi_degeneracies(table: ModeTable, kmax: int, nmax: int, rel_tol: float) -> DegeneracyReport:
    """All nonvacuum level pairs whose relative gap is at most ``rel_tol``.

    Levels are sorted by energy; for sorted E_i <= E_j the relative gap
    1 - E_i/E_j grows with j, so each level only needs to be compared with
    successors until the first one outside the tolerance.
    """
    kmax, nmax = _check_k(kmax), _check_k(nmax)
    if not rel_tol >= 0.0:
        raise DomainError(f"rel_tol must be nonnegative, got {rel_tol!r}")
    hinged = table.spec.bc is BoundaryCondition.HINGED_HINGED
    levels = sorted(_table_levels(table, kmax, nmax), key=lambda lv: (lv.energy0, lv.k, lv.n))

    pairs = []
    for i, low in enumerate(levels):
        for high in levels[i + 1:]:
            pair = _pair(low, high, hinged)
            if not (pair.exact or pair.rel_gap <= rel_tol):
                break
            pairs.append(pair)
    pairs.sort(key=DegeneracyPair.sort_key)
    return DegeneracyReport(table.spec, kmax, nmax, rel_tol, tuple(pairs))


def frequency_ratio(table: ModeTable, k: int) -> float:
    """omega_bc(k) / omega_hinged(k) under the table's frequency convention."""
    mode = table.mode(k)
    spec = table.spec
    omega0 = spec.frequency_factor(table.convention) * (k * math.pi / spec.length) ** 2
    return mode.omega / omega0
