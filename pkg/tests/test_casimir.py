import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from nanobeam import (
    BeamSpec,
    DomainError,
    Scheme,
    casimir_energy,
    casimir_force_per_area,
    casimir_report,
    energy_per_area,
    regularized_difference_exact,
    regularized_difference_paper,
    sound_speed,
)
from nanobeam.casimir import truncation_index

mp = pytest.importorskip("mpmath")

positive = st.floats(1e-3, 1e3)
specs = st.builds(
    BeamSpec,
    youngs_modulus=positive,
    area_moment=positive,
    density=positive,
    cross_section=positive,
    length=positive,
    hbar=positive,
)


def midpoint_closed_form(eps):
    """-1/2 int_0^1 k^2 e^{-eps k^2} dk via erf, at 50 digits."""
    with mp.workdps(50):
        e = mp.mpf(eps)
        integral = mp.sqrt(mp.pi) * mp.erf(mp.sqrt(e)) / (4 * e**1.5) - mp.exp(-e) / (2 * e)
        return float(-integral / 2)


def exact_by_nsum(eps):
    with mp.workdps(40):
        e = mp.mpf(eps)
        total = mp.nsum(lambda k: k**2 * mp.exp(-e * k**2), [1, mp.inf])
        return float(total - mp.sqrt(mp.pi / e**3) / 4)


class TestSoundSpeed:
    def test_identity(self):
        assert sound_speed(BeamSpec.unit()) == 1.0

    def test_square_root(self):
        assert sound_speed(BeamSpec.unit(youngs_modulus=4.0)) == 2.0

    def test_silicon(self):
        spec = BeamSpec(169e9, 1e-29, 2330.0, 1e-14, 1e-6)
        # sqrt(169e9 / 2330) = 8516.5832...
        assert sound_speed(spec) == pytest.approx(8516.583, abs=0.1)


class TestMidpointScheme:
    def test_small_eps_limit(self):
        assert regularized_difference_paper(1e-6) == pytest.approx(-1 / 6, abs=1e-6)

    def test_large_eps_suppressed(self):
        value = regularized_difference_paper(1e3)
        assert -1 / 6 < value < 0
        assert value > -1e-5

    def test_eps_one(self):
        # erf closed form gives -0.0947361729...
        assert regularized_difference_paper(1.0) == pytest.approx(-0.094736, abs=2e-6)

    @pytest.mark.parametrize("eps", [1e-8, 1e-6, 1e-3, 0.01, 0.3, 1.0, 7.0, 50.0])
    def test_matches_erf_closed_form(self, eps):
        assert regularized_difference_paper(eps) == pytest.approx(midpoint_closed_form(eps), abs=1e-10)

    def test_monotone_toward_minus_sixth(self):
        eps = np.logspace(1, -7, 40)
        values = [regularized_difference_paper(e) for e in eps]
        assert all(-1 / 6 < v < 0 for v in values)
        assert all(b < a for a, b in zip(values, values[1:]))
        assert abs(values[-1] + 1 / 6) <= 1e-5

    @pytest.mark.parametrize("eps", [0.0, -1.0, math.nan, math.inf])
    def test_domain(self, eps):
        with pytest.raises(DomainError):
            regularized_difference_paper(eps)


class TestExactScheme:
    def test_small_at_eps_001(self):
        assert abs(regularized_difference_exact(0.01, 1e-14)) <= 1e-8

    def test_eps_ten_two_term(self):
        expected = math.exp(-10) + 4 * math.exp(-40) - 0.25 * math.sqrt(math.pi / 1000)
        assert regularized_difference_exact(10.0) == pytest.approx(expected, abs=1e-15)

    def test_gap_to_midpoint_scheme(self):
        gap = regularized_difference_exact(0.01) - regularized_difference_paper(0.01)
        assert gap == pytest.approx(0.1657, abs=1e-3)

    @pytest.mark.parametrize("eps", [0.005, 0.01, 0.03, 0.05, 0.1, 0.5, 2.0, 10.0])
    def test_matches_nsum_oracle(self, eps):
        assert regularized_difference_exact(eps, 1e-14) == pytest.approx(exact_by_nsum(eps), abs=1e-9)

    def test_small_over_interval(self):
        for eps in np.linspace(0.005, 0.1, 60):
            assert abs(regularized_difference_exact(eps, 1e-14)) <= 1e-6

    def test_truncation_rule(self):
        for eps in (0.005, 0.1, 3.0):
            m = truncation_index(eps, 1e-14)
            assert m * m * math.exp(-eps * m * m) < 1e-14 * eps
            assert (m - 1) ** 2 * math.exp(-eps * (m - 1) ** 2) >= 1e-14 * eps

    def test_domain(self):
        with pytest.raises(DomainError):
            regularized_difference_exact(0.0)
        with pytest.raises(DomainError):
            regularized_difference_exact(0.1, 0.0)


class TestPhysicalQuantities:
    def test_unit_energy(self):
        assert casimir_energy(BeamSpec.unit()) == pytest.approx(-math.pi**2 / 6, abs=1e-12)

    def test_energy_length_scaling(self):
        assert casimir_energy(BeamSpec.unit(length=2.0)) == pytest.approx(-math.pi**2 / 24, rel=1e-15)

    @given(specs)
    def test_energy_formula_inversion(self, spec):
        omega_tilde = math.sqrt(spec.density * spec.cross_section / (spec.youngs_modulus * spec.area_moment))
        omega_tilde *= (math.pi / spec.length) ** 2
        assert casimir_energy(spec) * -6 / (spec.hbar * omega_tilde) == pytest.approx(1.0, rel=1e-13)

    def test_unit_force(self):
        assert casimir_force_per_area(BeamSpec.unit()) == pytest.approx(-math.pi**2 / 3, abs=1e-12)

    @given(specs)
    def test_force_cubic_scaling(self, spec):
        ratio = casimir_force_per_area(spec.with_(length=2 * spec.length)) / casimir_force_per_area(spec)
        assert ratio == pytest.approx(1 / 8, rel=1e-13)

    @given(specs)
    def test_force_equals_fundamental_energy_over_volume(self, spec):
        omega_tilde = math.sqrt(spec.density * spec.cross_section / (spec.youngs_modulus * spec.area_moment))
        omega_tilde *= (math.pi / spec.length) ** 2
        force = casimir_force_per_area(spec)
        assert force * 3 * spec.cross_section * spec.length / spec.hbar == pytest.approx(-omega_tilde, rel=1e-12)

    @given(specs)
    def test_energy_per_area_is_energy_over_area(self, spec):
        assert energy_per_area(spec) == pytest.approx(casimir_energy(spec) / spec.cross_section, rel=1e-12)

    @given(specs)
    def test_force_is_minus_length_derivative(self, spec):
        h = spec.length * 1e-5
        fd = -(energy_per_area(spec.with_(length=spec.length + h)) - energy_per_area(spec.with_(length=spec.length - h))) / (2 * h)
        assert casimir_force_per_area(spec) == pytest.approx(fd, rel=1e-8)

    def test_length_decades(self):
        base = BeamSpec(169e9, 1e-29, 2330.0, 1e-14, 1e-6)
        for length in np.logspace(-7, -4, 7):
            spec = base.with_(length=length)
            s = base.length / length
            assert casimir_energy(spec) == pytest.approx(casimir_energy(base) * s**2, rel=1e-12)
            assert casimir_force_per_area(spec) == pytest.approx(casimir_force_per_area(base) * s**3, rel=1e-12)

    @given(specs)
    def test_all_negative(self, spec):
        assert casimir_energy(spec) < 0
        assert energy_per_area(spec) < 0
        assert casimir_force_per_area(spec) < 0


class TestReport:
    def test_midpoint_report(self):
        report = casimir_report(BeamSpec.unit(), "paper", [1e-6, 1e-2, 1e-4])
        assert report.scheme is Scheme.PAPER
        assert report.epsilon_schedule == (1e-2, 1e-4, 1e-6)
        assert report.extrapolated_limit == report.difference_values[-1]
        assert report.extrapolated_limit == pytest.approx(-1 / 6, abs=1e-5)
        assert report.delta_E == casimir_energy(BeamSpec.unit())
        assert all(-1 / 6 < v < 0 for v in report.difference_values)

    def test_theta_report_uses_same_physical_coefficient(self):
        paper = casimir_report(BeamSpec.unit(), "paper", [1e-2])
        theta = casimir_report(BeamSpec.unit(), "theta", [1e-2])
        assert abs(theta.extrapolated_limit) <= 1e-6
        assert theta.delta_E == paper.delta_E
        assert theta.force_per_area == paper.force_per_area

    def test_rejects_bad_schedule(self):
        with pytest.raises(DomainError):
            casimir_report(BeamSpec.unit(), "paper", [1e-2, 0.0])
        with pytest.raises(DomainError):
            casimir_report(BeamSpec.unit(), "paper", [])
        with pytest.raises(DomainError):
            casimir_report(BeamSpec.unit(), "zeta", [1e-2])
