"""
Transverse vibration modes of a uniform Euler-Bernoulli beam.

The eigenvalues lambda_k follow from the roots x = lambda_k L of a
boundary-condition dependent characteristic function:

    hinged-hinged     F0(x) = sin x
    clamped-clamped   F1(x) = cos x cosh x - 1
    clamped-hinged    F2(x) = cos x sinh x - sin x cosh x
    clamped-free      F3(x) = cos x cosh x + 1
    free-free         F4(x) = F1(x)

The hyperbolic factors overflow near x ~ 710, so the root finder works on
rescaled forms with the same zero set and bounded magnitude:

    F1 / cosh x       = cos x - sech x
    F3 / cosh x       = cos x + sech x
    F2 * exp(-|x|)

Hinged-hinged roots are analytic (x = k pi) and never iterated.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace
from typing import Callable, Iterator

import numpy as np

from .errors import BracketFailure, DomainError, NoConvergence

HBAR_SI = 1.054571817e-34  # J s

DEFAULT_TOL = 1e-13
MAX_MODES = 10_000
MAX_ITER = 64

_BISECT_WIDTH = 1e-6
_BRACKET_HALF_WIDTH = 0.3
_BRACKET_TRIES = 4
# Above this |x| the textbook forms are replaced by the rescaled ones.
_OVERFLOW_X = 700.0


class BoundaryCondition(str, enum.Enum):
    HINGED_HINGED = "hinged-hinged"
    CLAMPED_CLAMPED = "clamped-clamped"
    CLAMPED_HINGED = "clamped-hinged"
    CLAMPED_FREE = "clamped-free"
    FREE_FREE = "free-free"

    @classmethod
    def parse(cls, value: "BoundaryCondition | str") -> "BoundaryCondition":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).strip().lower().replace("_", "-"))
        except ValueError:
            names = ", ".join(bc.value for bc in cls)
            raise DomainError(f"unknown boundary condition {value!r}; expected one of {names}") from None

    def __str__(self) -> str:
        return self.value


class FrequencyConvention(str, enum.Enum):
    """How lambda_k^2 is converted to an angular frequency.

    ``PAPER`` uses omega = sqrt(rho A / (E I)) lambda^2, ``STANDARD`` the
    textbook omega = sqrt(E I / (rho A)) lambda^2.
    """

    PAPER = "paper"
    STANDARD = "standard"

    @classmethod
    def parse(cls, value: "FrequencyConvention | str") -> "FrequencyConvention":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).strip().lower())
        except ValueError:
            raise DomainError(f"unknown frequency convention {value!r}; expected 'paper' or 'standard'") from None

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class BeamSpec:
    """Material, geometry and boundary condition of a beam (SI units)."""

    youngs_modulus: float
    area_moment: float
    density: float
    cross_section: float
    length: float
    bc: BoundaryCondition = BoundaryCondition.HINGED_HINGED
    hbar: float = HBAR_SI

    def __post_init__(self):
        object.__setattr__(self, "bc", BoundaryCondition.parse(self.bc))
        for name in ("youngs_modulus", "area_moment", "density", "cross_section", "length", "hbar"):
            value = float(getattr(self, name))
            if not math.isfinite(value) or value <= 0.0:
                raise DomainError(f"{name} must be finite and strictly positive, got {value!r}")
            object.__setattr__(self, name, value)

    @classmethod
    def unit(cls, bc: BoundaryCondition | str = BoundaryCondition.HINGED_HINGED, **overrides) -> "BeamSpec":
        """Unit-normalized beam: E = I = rho = A = L = hbar = 1."""
        values = dict(youngs_modulus=1.0, area_moment=1.0, density=1.0, cross_section=1.0, length=1.0, hbar=1.0)
        values.update(overrides)
        return cls(bc=bc, **values)

    @property
    def mass_per_stiffness(self) -> float:
        """rho A / (E I)."""
        return (self.density * self.cross_section) / (self.youngs_modulus * self.area_moment)

    def frequency_factor(self, convention: FrequencyConvention | str = FrequencyConvention.PAPER) -> float:
        """Factor multiplying lambda^2 to give omega."""
        ratio = self.mass_per_stiffness
        if FrequencyConvention.parse(convention) is FrequencyConvention.PAPER:
            return math.sqrt(ratio)
        return math.sqrt(1.0 / ratio)

    def with_(self, **changes) -> "BeamSpec":
        return replace(self, **changes)

    def as_dict(self) -> dict:
        return {
            "E": self.youngs_modulus,
            "I": self.area_moment,
            "rho": self.density,
            "A": self.cross_section,
            "L": self.length,
            "bc": self.bc.value,
            "hbar": self.hbar,
        }


@dataclass(frozen=True)
class Mode:
    k: int
    lam: float
    x_root: float
    residual: float
    bracket: tuple[float, float]
    omega: float | None = None


@dataclass(frozen=True)
class ModeTable:
    spec: BeamSpec
    modes: tuple[Mode, ...]
    tol: float
    convention: FrequencyConvention = FrequencyConvention.PAPER

    def __post_init__(self):
        object.__setattr__(self, "modes", tuple(self.modes))
        object.__setattr__(self, "convention", FrequencyConvention.parse(self.convention))
        for i, mode in enumerate(self.modes):
            if mode.k != i + 1:
                raise ValueError(f"mode indices must run 1..n contiguously, got k={mode.k} at position {i}")
            if i and not mode.x_root > self.modes[i - 1].x_root:
                raise ValueError(f"roots must be strictly increasing, violated at k={mode.k}")

    def __len__(self) -> int:
        return len(self.modes)

    def __iter__(self) -> Iterator[Mode]:
        return iter(self.modes)

    def mode(self, k: int) -> Mode:
        if not 1 <= k <= len(self.modes):
            raise IndexError(f"mode k={k} not in table (modes 1..{len(self.modes)})")
        return self.modes[k - 1]

    @property
    def bc(self) -> BoundaryCondition:
        return self.spec.bc

    @property
    def x_roots(self) -> np.ndarray:
        return np.array([m.x_root for m in self.modes])

    @property
    def omegas(self) -> np.ndarray:
        return np.array([m.omega for m in self.modes], dtype=float)


def characteristic_fn(bc: BoundaryCondition | str, x: float) -> float:
    """Textbook characteristic function F(x) for ``bc``.

    For |x| beyond the cosh overflow threshold the rescaled form is
    returned instead; it has the same sign and the same zeros.
    """
    bc = BoundaryCondition.parse(bc)
    x = float(x)
    if bc is BoundaryCondition.HINGED_HINGED:
        return math.sin(x)
    if abs(x) > _OVERFLOW_X:
        return stable_characteristic_fn(bc, x)
    if bc in (BoundaryCondition.CLAMPED_CLAMPED, BoundaryCondition.FREE_FREE):
        return math.cos(x) * math.cosh(x) - 1.0
    if bc is BoundaryCondition.CLAMPED_FREE:
        return math.cos(x) * math.cosh(x) + 1.0
    return math.cos(x) * math.sinh(x) - math.sin(x) * math.cosh(x)


def _sech(x: float) -> float:
    e = math.exp(-abs(x))
    return 2.0 * e / (1.0 + e * e)


def _stable_pair(bc: BoundaryCondition) -> tuple[Callable[[float], float], Callable[[float], float]]:
    """Rescaled characteristic function and its derivative."""
    if bc is BoundaryCondition.HINGED_HINGED:
        return math.sin, math.cos

    if bc in (BoundaryCondition.CLAMPED_CLAMPED, BoundaryCondition.FREE_FREE):
        def f(x):
            return math.cos(x) - _sech(x)

        def df(x):
            return -math.sin(x) + _sech(x) * math.tanh(x)

        return f, df

    if bc is BoundaryCondition.CLAMPED_FREE:
        def f(x):
            return math.cos(x) + _sech(x)

        def df(x):
            return -math.sin(x) - _sech(x) * math.tanh(x)

        return f, df

    # exp(-|x|) * (cos x sinh x - sin x cosh x)
    def _scaled(x):
        e2 = math.exp(-2.0 * abs(x))
        sinh_s = math.copysign(0.5 * (1.0 - e2), x)
        cosh_s = 0.5 * (1.0 + e2)
        return sinh_s, cosh_s

    def f(x):
        sinh_s, cosh_s = _scaled(x)
        return math.cos(x) * sinh_s - math.sin(x) * cosh_s

    def df(x):
        # d/dx [e^{-|x|} F2] = e^{-|x|} (F2' - sgn(x) F2),  F2' = -2 sin x sinh x
        sinh_s, _ = _scaled(x)
        return -2.0 * math.sin(x) * sinh_s - math.copysign(1.0, x) * f(x)

    return f, df


def stable_characteristic_fn(bc: BoundaryCondition | str, x: float) -> float:
    """Overflow-free rescaling of :func:`characteristic_fn` used by the root finder."""
    f, _ = _stable_pair(BoundaryCondition.parse(bc))
    return f(float(x))


def _seed(bc: BoundaryCondition, k: int) -> float:
    if bc is BoundaryCondition.HINGED_HINGED:
        return k * math.pi
    if bc in (BoundaryCondition.CLAMPED_CLAMPED, BoundaryCondition.FREE_FREE):
        return (k + 0.5) * math.pi
    if bc is BoundaryCondition.CLAMPED_HINGED:
        return (k + 0.25) * math.pi
    return 1.875 if k == 1 else (k - 0.5) * math.pi


def _check_k(k) -> int:
    if isinstance(k, bool) or int(k) != k or k < 1:
        raise DomainError(f"mode index must be a positive integer, got {k!r}")
    return int(k)


def bracket_root(bc: BoundaryCondition | str, k: int) -> tuple[float, float]:
    """Dimensionless interval around the k-th root with a sign change.

    Starts from the asymptotic seed with half-width 0.3 and doubles the
    half-width at most four times.
    """
    bc = BoundaryCondition.parse(bc)
    k = _check_k(k)
    f, _ = _stable_pair(bc)
    seed = _seed(bc, k)
    half = _BRACKET_HALF_WIDTH
    for _ in range(_BRACKET_TRIES):
        lo, hi = seed - half, seed + half
        if math.copysign(1.0, f(lo)) != math.copysign(1.0, f(hi)):
            return lo, hi
        half *= 2.0
    raise BracketFailure(f"no sign change around seed {seed:.6g} for mode k={k} ({bc})", k=k)


def _polish(f, df, lo: float, hi: float, tol: float, k: int) -> tuple[float, float]:
    """Bisect to width 1e-6, then safeguarded Newton.

    Stops when |f| <= tol, or when the bracket has shrunk to adjacent
    doubles (the root is then resolved to machine precision even if the
    residual floor |f'| * ulp(x) exceeds ``tol``).
    """
    flo = f(lo)
    iterations = 0
    while hi - lo > _BISECT_WIDTH and iterations < MAX_ITER:
        iterations += 1
        mid = 0.5 * (lo + hi)
        fmid = f(mid)
        if fmid == 0.0:
            return mid, 0.0
        if math.copysign(1.0, fmid) == math.copysign(1.0, flo):
            lo, flo = mid, fmid
        else:
            hi = mid

    x = 0.5 * (lo + hi)
    while iterations < MAX_ITER:
        iterations += 1
        fx = f(x)
        if abs(fx) <= tol:
            return x, fx
        if math.copysign(1.0, fx) == math.copysign(1.0, flo):
            lo, flo = x, fx
        else:
            hi = x
        if math.nextafter(lo, hi) >= hi:
            fhi = f(hi)
            return (lo, flo) if abs(flo) <= abs(fhi) else (hi, fhi)
        d = df(x)
        step = x - fx / d if d != 0.0 else math.nan
        x = step if lo < step < hi else 0.5 * (lo + hi)
    raise NoConvergence(f"root polish for mode k={k} did not converge in {MAX_ITER} iterations", k=k)


def find_lambda(bc: BoundaryCondition | str, length: float, k: int, tol: float = DEFAULT_TOL) -> Mode:
    """Locate the k-th eigenvalue lambda_k; the returned mode has no omega yet."""
    bc = BoundaryCondition.parse(bc)
    k = _check_k(k)
    if not (length > 0.0 and math.isfinite(length)):
        raise DomainError(f"length must be positive, got {length!r}")
    if not tol > 0.0:
        raise DomainError(f"tol must be positive, got {tol!r}")

    lo, hi = bracket_root(bc, k)
    if bc is BoundaryCondition.HINGED_HINGED:
        x = k * math.pi
        residual = math.sin(x)
    else:
        f, df = _stable_pair(bc)
        x, residual = _polish(f, df, lo, hi, tol, k)
    return Mode(k=k, lam=x / length, x_root=x, residual=residual, bracket=(lo, hi))


def mode_frequencies(
    spec: BeamSpec,
    count: int,
    tol: float = DEFAULT_TOL,
    convention: FrequencyConvention | str = FrequencyConvention.PAPER,
) -> ModeTable:
    """First ``count`` modes of ``spec`` with omega_k = factor * lambda_k^2."""
    count = _check_k(count)
    if count > MAX_MODES:
        raise DomainError(f"count is capped at {MAX_MODES}, got {count}")
    convention = FrequencyConvention.parse(convention)
    factor = spec.frequency_factor(convention)
    modes = []
    for k in range(1, count + 1):
        mode = find_lambda(spec.bc, spec.length, k, tol)
        modes.append(replace(mode, omega=factor * mode.lam**2))
    return ModeTable(spec=spec, modes=tuple(modes), tol=tol, convention=convention)


def mode_shape_hinged(k: int, x, length: float):
    """sin(k pi x / L) on 0 <= x <= L."""
    k = _check_k(k)
    xs = np.asarray(x, dtype=float)
    if np.any(xs < 0.0) or np.any(xs > length):
        raise DomainError(f"x must lie in [0, {length}]")
    out = np.sin(k * math.pi * xs / length)
    return float(out) if out.ndim == 0 else out


def spacing_deviation(table: ModeTable, k: int) -> float:
    """(x_{k+1} - x_k) / pi - 1."""
    lower, upper = table.mode(k), table.mode(k + 1)
    return (upper.x_root - lower.x_root) / math.pi - 1.0
