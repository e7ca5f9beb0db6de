"""
Phonon Casimir energy of a hinged-hinged beam.

The zero-point sum over the k^2 spectrum minus its continuum integral is
regularized with a heat-kernel factor exp(-eps k^2). Two evaluations of
the dimensionless difference D(eps) are provided:

* ``paper-midpoint``: the sum is replaced by the average of the integrals
  over [0, M] and [1, M], which leaves D(eps) = -1/2 int_0^1 k^2 e^{-eps k^2} dk
  and the limit -1/6 used for the physical energy and force.
* ``theta-exact``: the truncated sum minus the closed-form integral
  (1/4) sqrt(pi / eps^3). By the Jacobi theta identity this is
  exponentially small in 1/eps, so its eps -> 0 limit is 0, not -1/6.

The physical outputs (energy, energy per area, force per area) always use
the -1/6 coefficient; the exact scheme is reported as a cross-check.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from scipy.integrate import quad

from .beam_modes import BeamSpec
from .errors import DomainError

QUAD_EPSABS = 1e-12
CASIMIR_COEFFICIENT = -1.0 / 6.0


class Scheme(str, enum.Enum):
    PAPER = "paper-midpoint"
    THETA = "theta-exact"

    @classmethod
    def parse(cls, value: "Scheme | str") -> "Scheme":
        if isinstance(value, cls):
            return value
        aliases = {"paper": cls.PAPER, "paper-midpoint": cls.PAPER, "theta": cls.THETA, "theta-exact": cls.THETA}
        try:
            return aliases[str(value).strip().lower()]
        except KeyError:
            raise DomainError(f"unknown scheme {value!r}; expected 'paper' or 'theta'") from None

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class CasimirReport:
    scheme: Scheme
    epsilon_schedule: tuple[float, ...]
    difference_values: tuple[float, ...]
    extrapolated_limit: float
    delta_E: float
    energy_per_area: float
    force_per_area: float
    sound_speed: float


def _check_eps(eps: float) -> float:
    eps = float(eps)
    if not (eps > 0.0 and math.isfinite(eps)):
        raise DomainError(f"regularization parameter must be positive and finite, got {eps!r}")
    return eps


def sound_speed(spec: BeamSpec) -> float:
    """Longitudinal sound speed sqrt(E / rho)."""
    return math.sqrt(spec.youngs_modulus / spec.density)


def regularized_difference_paper(eps: float) -> float:
    """-1/2 * int_0^1 k^2 exp(-eps k^2) dk by adaptive quadrature."""
    eps = _check_eps(eps)
    value, _ = quad(lambda k: k * k * math.exp(-eps * k * k), 0.0, 1.0, epsabs=QUAD_EPSABS, epsrel=0.0, limit=200)
    return -0.5 * value


def truncation_index(eps: float, tail_tol: float) -> int:
    """Smallest M with M^2 exp(-eps M^2) < tail_tol * eps, taken past the peak of k^2 e^{-eps k^2}."""
    eps = _check_eps(eps)
    if not tail_tol > 0.0:
        raise DomainError(f"tail_tol must be positive, got {tail_tol!r}")
    m = max(1, math.ceil(1.0 / math.sqrt(eps)))
    bound = math.log(tail_tol * eps)
    while 2.0 * math.log(m) - eps * m * m >= bound:
        m += 1
    return m


def regularized_difference_exact(eps: float, tail_tol: float = 1e-14) -> float:
    """sum_{k=1}^{M} k^2 e^{-eps k^2} - (1/4) sqrt(pi / eps^3)."""
    m = truncation_index(eps, tail_tol)
    total = math.fsum(k * k * math.exp(-eps * k * k) for k in range(1, m + 1))
    return total - 0.25 * math.sqrt(math.pi / eps**3)


def _omega_tilde(spec: BeamSpec) -> float:
    return math.sqrt(spec.mass_per_stiffness) * (math.pi / spec.length) ** 2


def casimir_energy(spec: BeamSpec) -> float:
    """-1/6 hbar sqrt(rho A / (E I)) (pi / L)^2."""
    return CASIMIR_COEFFICIENT * spec.hbar * _omega_tilde(spec)


def energy_per_area(spec: BeamSpec) -> float:
    """-1/6 hbar sqrt(rho / (E I A)) (pi / L)^2."""
    return (
        CASIMIR_COEFFICIENT
        * spec.hbar
        * math.sqrt(spec.density / (spec.youngs_modulus * spec.area_moment * spec.cross_section))
        * (math.pi / spec.length) ** 2
    )


def casimir_force_per_area(spec: BeamSpec) -> float:
    """-dV/dL = -1/3 hbar sqrt(rho / (E I A)) pi^2 / L^3 (attractive)."""
    return (
        2.0
        * CASIMIR_COEFFICIENT
        * spec.hbar
        * math.sqrt(spec.density / (spec.youngs_modulus * spec.area_moment * spec.cross_section))
        * math.pi**2
        / spec.length**3
    )


def casimir_report(
    spec: BeamSpec,
    scheme: Scheme | str = Scheme.PAPER,
    epsilon_schedule=(1e-2, 1e-4, 1e-6),
    tail_tol: float = 1e-14,
) -> CasimirReport:
    """Evaluate D(eps) on a schedule and attach the physical Casimir quantities.

    The schedule is sorted into strictly decreasing order (duplicates
    dropped); the limit is the value at the smallest eps.
    """
    scheme = Scheme.parse(scheme)
    schedule = tuple(sorted({_check_eps(e) for e in epsilon_schedule}, reverse=True))
    if not schedule:
        raise DomainError("epsilon schedule is empty")
    if scheme is Scheme.PAPER:
        values = tuple(regularized_difference_paper(e) for e in schedule)
    else:
        values = tuple(regularized_difference_exact(e, tail_tol) for e in schedule)
    return CasimirReport(
        scheme=scheme,
        epsilon_schedule=schedule,
        difference_values=values,
        extrapolated_limit=values[-1],
        delta_E=casimir_energy(spec),
        energy_per_area=energy_per_area(spec),
        force_per_area=casimir_force_per_area(spec),
        sound_speed=sound_speed(spec),
    )
