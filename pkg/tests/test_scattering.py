import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from flyq.errors import DegenerateEnergyError, DomainError, UnreachableTargetError
from flyq.scattering import (
    CouplerSpec,
    ScatteringRegion,
    calibrate_phase,
    coupler_unitary,
    double_barrier_transmission,
    fig3_curve,
    find_resonances,
    phase_step,
    phase_well,
    resonance_width,
    scatter,
    tunneling_suppression,
)
from flyq.tables import to_csv

from conftest import wrap


class TestPhaseStep:
    def test_zero_potential(self):
        assert phase_step(0.0, 1) == 0.0

    def test_three_quarters_is_minus_pi(self):
        # 1/sqrt(1 - 0.75) = 2 exactly
        assert phase_step(0.75, 1) == pytest.approx(-math.pi, abs=1e-15)

    def test_half_with_two_half_waves(self):
        expected = 2 * math.pi * (1 - math.sqrt(2.0))
        assert phase_step(0.5, 2) == pytest.approx(expected, abs=1e-12)
        assert phase_step(0.5, 2) == pytest.approx(-2.60258, abs=1e-5)

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            phase_step(1.0, 1)
        with pytest.raises(DomainError):
            phase_step(1.5, 1)
        with pytest.raises(DomainError):
            phase_step(-0.1, 1)
        with pytest.raises(DomainError):
            phase_step(0.5, 0)

    def test_strictly_decreasing(self):
        values = np.linspace(0.0, 0.99, 200)
        phases = [phase_step(v, 1) for v in values]
        assert all(b < a for a, b in zip(phases, phases[1:]))

    def test_sign_structure(self):
        for v in np.linspace(0.01, 0.99, 50):
            for n in (1, 2, 5):
                assert phase_step(v, n) < 0


class TestPhaseWell:
    def test_depth_three_is_half_pi(self):
        # 1/sqrt(1 + 3) = 1/2 exactly
        assert phase_well(3.0, 1) == pytest.approx(math.pi / 2, abs=1e-15)

    def test_zero_boundary(self):
        assert phase_well(0.0, 1) == 0.0

    def test_horizontal_asymptote(self):
        assert abs(phase_well(1e9, 1) - math.pi) < 1e-4

    def test_domain_error(self):
        with pytest.raises(DomainError):
            phase_well(-0.5, 1)

    def test_sign_structure(self):
        for v in np.geomspace(0.01, 1e6, 40):
            for n in (1, 3):
                assert 0 < phase_well(v, n) < n * math.pi


class TestResonanceWidth:
    def test_step_examples(self):
        assert resonance_width(0.75, "step", 1) == pytest.approx(1.0, abs=1e-15)
        assert resonance_width(0.0, "step", 2) == pytest.approx(1.0, abs=1e-15)

    def test_well_example(self):
        assert resonance_width(3.0, "well", 1) == pytest.approx(0.25, abs=1e-15)

    def test_unit_transmission_at_width(self):
        for kind, v in (("step", 0.6), ("step", 0.9), ("well", 2.2), ("well", 7.0)):
            for n in (1, 2, 3):
                width = resonance_width(v, kind, n)
                result = scatter(ScatteringRegion(kind, v, width))
                assert abs(abs(result.t) - 1.0) < 1e-10

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            resonance_width(1.0, "step", 1)
        with pytest.raises(DomainError):
            resonance_width(0.5, "plateau", 1)


class TestScatter:
    def test_step_resonance_phase(self):
        result = scatter(ScatteringRegion("step", 0.75, 1.0))
        assert abs(abs(result.t) - 1.0) < 1e-10
        assert abs(wrap(result.phase - (-math.pi))) < 1e-10

    def test_well_resonance_phase(self):
        result = scatter(ScatteringRegion("well", 3.0, 0.25))
        assert abs(abs(result.t) - 1.0) < 1e-10
        assert abs(wrap(result.phase - math.pi / 2)) < 1e-10

    def test_vanishing_barrier(self):
        result = scatter(ScatteringRegion("barrier", 2.0, 1e-9))
        assert abs(result.t - 1.0) < 1e-6
        assert abs(result.r) < 1e-6

    def test_degenerate_energy(self):
        with pytest.raises(DegenerateEnergyError):
            scatter(ScatteringRegion("barrier", 1.0, 0.5))

    def test_flux_conservation_seeded(self, rng):
        for _ in range(300):
            kind = ("step", "well", "barrier")[int(rng.integers(3))]
            if kind == "step":
                v = float(rng.uniform(0.01, 0.99))
            elif kind == "well":
                v = float(rng.uniform(0.01, 20.0))
            else:
                v = float(rng.uniform(1.05, 6.0))
            region = ScatteringRegion(kind, v, float(rng.uniform(0.05, 3.0)))
            result = scatter(region)
            assert abs(result.transmission_prob + result.reflection_prob - 1) < 1e-12

    def test_oracle_equivalence_seeded(self, rng):
        # Closed forms against the transfer matrix at resonance width.
        for _ in range(500):
            n = int(rng.integers(1, 5))
            if rng.random() < 0.5:
                kind, v = "step", float(rng.uniform(0.0, 0.95))
            else:
                kind, v = "well", float(rng.uniform(0.01, 40.0))
            width = resonance_width(v, kind, n)
            if v == 0:
                continue
            formula = phase_step(v, n) if kind == "step" else phase_well(v, n)
            result = scatter(ScatteringRegion(kind, v, width))
            assert abs(wrap(result.phase - formula)) < 1e-9


class TestTunnelingSuppression:
    def test_zero_width(self):
        assert tunneling_suppression(0.0, 7.7) == 1.0

    def test_unit_kappa(self):
        v = 1 + 1 / (4 * math.pi ** 2)
        assert tunneling_suppression(1.0, v) == pytest.approx(math.exp(-1), rel=1e-12)
        assert tunneling_suppression(2.0, v) == pytest.approx(math.exp(-2), rel=1e-12)

    def test_monotone(self):
        assert tunneling_suppression(2.0, 3.0) < tunneling_suppression(1.0, 3.0)
        assert tunneling_suppression(1.0, 4.0) < tunneling_suppression(1.0, 3.0)

    def test_domain(self):
        with pytest.raises(DomainError):
            tunneling_suppression(1.0, 1.0)
        with pytest.raises(DomainError):
            tunneling_suppression(-1.0, 2.0)


class TestCalibratePhase:
    def test_step_minus_pi(self):
        assert calibrate_phase(-math.pi, "step", 1) == pytest.approx(0.75, abs=1e-12)

    def test_well_half_pi(self):
        assert calibrate_phase(math.pi / 2, "well", 1) == pytest.approx(3.0, abs=1e-12)

    def test_zero_boundary(self):
        assert calibrate_phase(0.0, "step", 1) == 0.0
        assert calibrate_phase(0.0, "well", 1) == 0.0

    def test_unreachable(self):
        with pytest.raises(UnreachableTargetError):
            calibrate_phase(1.0, "step", 1)
        with pytest.raises(UnreachableTargetError):
            calibrate_phase(math.pi, "well", 1)
        with pytest.raises(UnreachableTargetError):
            calibrate_phase(-0.5, "well", 1)

    @settings(max_examples=80, derandomize=True)
    @given(st.floats(min_value=-40.0, max_value=-1e-6), st.integers(1, 4))
    def test_step_round_trip(self, target, n):
        v = calibrate_phase(target, "step", n)
        assert abs(phase_step(v, n) - target) < 1e-12 * max(1.0, abs(target))

    @settings(max_examples=80, derandomize=True)
    @given(st.floats(min_value=1e-6, max_value=math.pi - 1e-6), st.integers(1, 4))
    def test_well_round_trip(self, target, n):
        v = calibrate_phase(target, "well", n)
        assert abs(phase_well(v, n) - target) < 1e-12


class TestFig3Curve:
    def test_well_row_count_and_last(self):
        rows = fig3_curve("well", 1, 0.0, 10.0, 11)
        assert len(rows) == 11
        assert rows[-1][0] == 10.0
        assert rows[-1][1] == pytest.approx(math.pi * (1 - 1 / math.sqrt(11)),
                                            abs=1e-12)

    def test_step_monotone(self):
        rows = fig3_curve("step", 1, 0.0, 0.999, 64)
        phases = [p for _, p in rows]
        assert all(b < a for a, b in zip(phases, phases[1:]))

    def test_single_sample(self):
        assert fig3_curve("well", 1, 0.0, 0.0, 1) == [(0.0, 0.0)]

    def test_step_clipping(self):
        rows = fig3_curve("step", 1, 0.0, 1.0, 11)
        assert len(rows) == 10  # the V = E sample is clipped out
        assert all(v < 1.0 for v, _ in rows)

    def test_domain(self):
        with pytest.raises(DomainError):
            fig3_curve("step", 1, 1.0, 2.0, 5)
        with pytest.raises(DomainError):
            fig3_curve("well", 1, -1.0, 2.0, 5)
        with pytest.raises(DomainError):
            fig3_curve("well", 1, 0.0, 2.0, 0)

    def test_csv_shape(self):
        rows = fig3_curve("well", 1, 0.0, 2.0, 3)
        text = to_csv("v_over_e,phase_rad", rows)
        lines = text.splitlines()
        assert lines[0] == "v_over_e,phase_rad"
        assert len(lines) == 4
        assert "\r" not in text
        # 13 significant digits survive a round trip
        assert float(lines[-1].split(",")[1]) == pytest.approx(rows[-1][1],
                                                               rel=1e-12)


@pytest.fixture
def symmetric_double_barrier():
    return ScatteringRegion("double_barrier", 4.0, 0.25, well_gap=0.5)


class TestDoubleBarrier:
    def test_resonance_peaks_reach_unity(self, symmetric_double_barrier):
        energies = find_resonances(symmetric_double_barrier, (0.05, 3.95))
        assert energies
        for e in energies:
            assert scatter(symmetric_double_barrier, e).transmission_prob >= 1 - 1e-6

    def test_deep_tunneling_bounded_by_suppression(self, symmetric_double_barrier):
        region = symmetric_double_barrier
        e = 0.05
        t_prob = scatter(region, e).transmission_prob
        # Both barriers tunnel, so the squared amplitude suppression over the
        # total barrier width bounds the transmission up to an O(1) prefactor.
        kappa = 2 * math.pi * math.sqrt(region.v_over_e - e)
        suppression = math.exp(-kappa * 2 * region.length)
        assert t_prob <= 100 * suppression ** 2

    def test_zero_width_limit(self):
        region = ScatteringRegion("double_barrier", 4.0, 1e-8, well_gap=1e-8)
        rows = double_barrier_transmission(region, (0.1, 3.9), points=64)
        assert all(t > 1 - 1e-4 for _, t in rows)

    def test_wider_gap_more_resonances(self):
        narrow = ScatteringRegion("double_barrier", 4.0, 0.25, well_gap=0.5)
        wide = ScatteringRegion("double_barrier", 4.0, 0.25, well_gap=2.0)
        window = (0.05, 3.95)
        assert len(find_resonances(wide, window)) > len(find_resonances(narrow, window))

    def test_scan_order_invariance(self, symmetric_double_barrier):
        forward = find_resonances(symmetric_double_barrier, (0.05, 3.95))
        backward = find_resonances(symmetric_double_barrier, (3.95, 0.05))
        assert len(forward) == len(backward)
        for a, b in zip(forward, backward):
            assert abs(a - b) < 1e-9

    def test_tiny_gap_no_resonance(self):
        region = ScatteringRegion("double_barrier", 4.0, 0.25, well_gap=1e-6)
        assert find_resonances(region, (0.05, 3.95)) == []

    def test_max_count(self):
        wide = ScatteringRegion("double_barrier", 4.0, 0.25, well_gap=2.0)
        all_res = find_resonances(wide, (0.05, 3.95))
        assert find_resonances(wide, (0.05, 3.95), max_count=1) == all_res[:1]

    def test_scan_validation(self, symmetric_double_barrier):
        with pytest.raises(DomainError):
            double_barrier_transmission(symmetric_double_barrier, (0.5, 0.5))
        with pytest.raises(DomainError):
            double_barrier_transmission(symmetric_double_barrier, (0.0, 3.9))
        with pytest.raises(DomainError):
            double_barrier_transmission(symmetric_double_barrier, (0.1, 4.5))
        with pytest.raises(DomainError):
            double_barrier_transmission(
                ScatteringRegion("barrier", 4.0, 0.25), (0.1, 3.9)
            )


class TestCoupler:
    def test_zero_coupling_is_identity(self):
        u = coupler_unitary(CouplerSpec(0.0, 0.28))
        assert np.allclose(u, np.eye(2), atol=1e-15)

    def test_full_transfer(self):
        u = coupler_unitary(CouplerSpec(0.28, 0.28))
        assert abs(abs(u[0, 1]) - 1.0) < 1e-12
        assert abs(abs(u[1, 0]) - 1.0) < 1e-12
        assert abs(u[0, 0]) < 1e-12

    def test_half_transfer_is_balanced(self):
        u = coupler_unitary(CouplerSpec(0.14, 0.28))
        assert np.all(np.abs(np.abs(u) - 1 / math.sqrt(2)) < 1e-12)

    def test_unitarity_seeded(self, rng):
        for _ in range(100):
            spec = CouplerSpec(float(rng.uniform(0, 1)), float(rng.uniform(0.1, 1)))
            u = coupler_unitary(spec)
            assert np.max(np.abs(u.conj().T @ u - np.eye(2))) < 1e-14

    def test_validation(self):
        with pytest.raises(DomainError):
            CouplerSpec(-0.1, 0.28)
        with pytest.raises(DomainError):
            CouplerSpec(0.1, 0.0)


class TestRegionValidation:
    def test_step_range(self):
        with pytest.raises(DomainError):
            ScatteringRegion("step", 1.2, 0.5)
        with pytest.raises(DomainError):
            ScatteringRegion("well", 0.0, 0.5)
        with pytest.raises(DomainError):
            ScatteringRegion("step", 0.5, 0.0)
        with pytest.raises(DomainError):
            ScatteringRegion("double_barrier", 2.0, 0.3)
        with pytest.raises(DomainError):
            ScatteringRegion("ramp", 0.5, 0.5)
