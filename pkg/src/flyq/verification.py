"""Wave-packet verification battery for the scattering gate formulas.

The default battery drives quasi-monoenergetic packets through the
phase-gate potentials at resonance width and checks, row by row, that the
plane-wave predictions hold: transmitted phase within tolerance, reflection
suppressed at resonance and restored off resonance, norm conserved, and
both error columns of the bandwidth study shrinking with packet width.

The quick variant runs the narrowest acceptable packet with a looser phase
tolerance; it exists so the battery can gate test runs without the
multi-minute default cost.
"""

from dataclasses import dataclass

import numpy as np

from .scattering import ScatteringRegion, resonance_width
from .wavepacket import bandwidth_study, evolve, plan_run, plane_wave_phase

FULL_SIGMA = 30.0
QUICK_SIGMA = 10.0
FULL_PHASE_RTOL = 0.02
QUICK_PHASE_RTOL = 0.05
REFLECTION_MAX = 1e-3
NORM_DRIFT_MAX = 1e-8
BANDWIDTH_SIGMAS = (10.0, 20.0, 40.0)
#: Grid-dispersion floor of the phase-error column; consecutive entries may
#: rise by at most this much and still count as monotone.
PHASE_MONOTONE_SLACK = 1e-4


@dataclass(frozen=True)
class BatteryRow:
    name: str
    passed: bool
    details: dict


def _resonant_run(kind: str, v_over_e: float, sigma: float, dx: float,
                  length_scale: float = 1.0):
    width = resonance_width(v_over_e, kind, 1) * length_scale
    region = ScatteringRegion(kind, v_over_e, width)
    grid, packet, steps = plan_run(region, sigma, dx=dx)
    return region, evolve(grid, region, packet, steps)


def _phase_row(name: str, region: ScatteringRegion, result, sigma: float,
               rtol: float) -> BatteryRow:
    target = plane_wave_phase(region, 1)
    error = abs(float(np.angle(np.exp(1j * (result.transmitted_phase - target)))))
    checks = {
        "phase": error <= rtol * abs(target),
        "reflection": result.reflected_prob < REFLECTION_MAX,
        "norm": result.max_norm_drift <= NORM_DRIFT_MAX,
    }
    return BatteryRow(
        name=name,
        passed=all(checks.values()),
        details={
            "sigma": sigma,
            "phase_error_rad": error,
            "phase_tolerance_rad": rtol * abs(target),
            "reflected_prob": result.reflected_prob,
            "max_norm_drift": result.max_norm_drift,
            "failed_checks": sorted(k for k, ok in checks.items() if not ok),
        },
    )


def _off_resonance_row(on_res, sigma: float, dx: float) -> BatteryRow:
    _, off_res = _resonant_run("step", 0.5, sigma, dx, length_scale=1.25)
    passed = off_res.reflected_prob > on_res.reflected_prob
    return BatteryRow(
        name="off_resonance_reflection",
        passed=passed,
        details={
            "sigma": sigma,
            "on_resonance_reflection": on_res.reflected_prob,
            "off_resonance_reflection": off_res.reflected_prob,
        },
    )


def _bandwidth_row(dx: float) -> BatteryRow:
    rows = bandwidth_study(0.5, "step", 1, sigma_list=BANDWIDTH_SIGMAS, dx=dx)
    errors = [r[1] for r in rows]
    reflections = [r[2] for r in rows]
    target = abs(plane_wave_phase(
        ScatteringRegion("step", 0.5, resonance_width(0.5, "step", 1)), 1))
    checks = {
        "reflection_decreasing": all(
            b < a for a, b in zip(reflections, reflections[1:])
        ),
        "phase_error_non_increasing": all(
            b <= a + PHASE_MONOTONE_SLACK for a, b in zip(errors, errors[1:])
        ),
        "widest_within_tolerance": errors[-1] <= FULL_PHASE_RTOL * target,
    }
    return BatteryRow(
        name="bandwidth_step",
        passed=all(checks.values()),
        details={
            "rows": [
                {"sigma": s, "phase_error_rad": e, "reflected_prob": r}
                for s, e, r in rows
            ],
            "failed_checks": sorted(k for k, ok in checks.items() if not ok),
        },
    )


def run_battery(quick: bool = False, dx: float = 0.025,
                length_scale: float = 1.0) -> list:
    """Execute the battery and return its rows.

    ``length_scale`` rescales the resonance widths; anything other than 1
    deliberately detunes the gates and should flag the reflection checks.
    """
    sigma = QUICK_SIGMA if quick else FULL_SIGMA
    rtol = QUICK_PHASE_RTOL if quick else FULL_PHASE_RTOL
    step_region, step_res = _resonant_run("step", 0.5, sigma, dx, length_scale)
    well_region, well_res = _resonant_run("well", 3.0, sigma, dx, length_scale)
    rows = [
        _phase_row("step_resonance", step_region, step_res, sigma, rtol),
        _phase_row("well_resonance", well_region, well_res, sigma, rtol),
        _off_resonance_row(step_res, sigma, dx),
    ]
    if not quick:
        rows.append(_bandwidth_row(dx))
    return rows
