"""Plane-wave scattering off piecewise-constant potentials in 1D wires.

Gate regions are described by their potential-to-energy ratio V/E and their
width in units of the incident wavelength (see :mod:`flyq.units`).  Two
independent routes compute the transmitted phase:

* closed forms :func:`phase_step` / :func:`phase_well` for a plateau whose
  width is a multiple of the half wavelength inside it, and
* :func:`scatter`, a transfer-matrix solver that matches plane waves at
  every interface and works for any width or energy.

The transfer matrix acts as the numerical oracle for the closed forms; the
tests hold the two within 1e-9 rad of each other.  Phases are always
reported relative to free propagation over the same extent, i.e. the
transmission amplitude of an empty region is exactly 1.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateEnergyError, DomainError, UnreachableTargetError
from .units import K0

_KINDS = ("step", "well", "barrier", "double_barrier")


@dataclass(frozen=True)
class ScatteringRegion:
    """A gate potential: a plateau, a well, or a symmetric double barrier.

    ``v_over_e`` is the magnitude of the potential as a fraction of the
    incident energy (wells store their depth as a positive number).
    ``length`` is the plateau/barrier width and ``well_gap`` the spacing
    between the two barriers of a ``double_barrier``, both in wavelength
    units.
    """

    kind: str
    v_over_e: float
    length: float
    well_gap: float = 0.0

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise DomainError(f"unknown region kind {self.kind!r}")
        if self.length <= 0:
            raise DomainError("region length must be positive")
        if self.kind == "step":
            if not 0 <= self.v_over_e < 1:
                raise DomainError("step requires 0 <= V/E < 1 (transmission regime)")
        elif self.v_over_e <= 0:
            raise DomainError(f"{self.kind} requires V/E > 0")
        if self.kind == "double_barrier":
            if self.well_gap <= 0:
                raise DomainError("double_barrier requires a positive well_gap")

    def segments(self, e_ratio: float = 1.0):
        """Piecewise wavenumber profile as (k_inside, width) pairs.

        ``e_ratio`` rescales the incident energy relative to the energy the
        ratio ``v_over_e`` was specified at; the lead wavenumber becomes
        ``K0*sqrt(e_ratio)`` while widths stay in reference-wavelength units.
        """
        if e_ratio <= 0:
            raise DomainError("incident energy ratio must be positive")
        sign = -1.0 if self.kind == "well" else 1.0
        k_in = K0 * np.sqrt(complex(e_ratio - sign * self.v_over_e))
        k_free = K0 * np.sqrt(e_ratio)
        if self.kind == "double_barrier":
            return [(k_in, self.length), (k_free, self.well_gap), (k_in, self.length)]
        return [(k_in, self.length)]


@dataclass(frozen=True)
class ScatterResult:
    """Transmission/reflection amplitudes for one scattering solve.

    ``t`` is normalized so that free propagation gives exactly 1; its
    argument is therefore the gate phase relative to free flight.
    """

    t: complex
    r: complex

    @property
    def transmission_prob(self) -> float:
        return abs(self.t) ** 2

    @property
    def reflection_prob(self) -> float:
        return abs(self.r) ** 2

    @property
    def phase(self) -> float:
        """Transmitted phase in (-pi, pi], relative to free propagation."""
        return float(np.angle(self.t))


@dataclass(frozen=True)
class CouplerSpec:
    """Waveguide-coupler geometry: interaction length and transfer length,
    both in microns.  A full transfer length moves the electron to the
    other rail; half of it is a 50/50 beam splitter."""

    coupling_length: float
    transfer_length: float

    def __post_init__(self):
        if self.coupling_length < 0:
            raise DomainError("coupling length must be non-negative")
        if self.transfer_length <= 0:
            raise DomainError("transfer length must be positive")

    @property
    def mixing_angle(self) -> float:
        return 0.5 * np.pi * self.coupling_length / self.transfer_length


def _interface(k1: complex, k2: complex) -> np.ndarray:
    ratio = k1 / k2
    return 0.5 * np.array(
        [[1 + ratio, 1 - ratio], [1 - ratio, 1 + ratio]], dtype=complex
    )


def _total_matrix(segments, k_lead: complex) -> np.ndarray:
    """Transfer matrix from the left lead to the right lead.

    Amplitudes are referenced to the left edge of each region; right-movers
    carry exp(+ikx).
    """
    m = np.eye(2, dtype=complex)
    k_prev = k_lead
    for k_in, width in segments:
        if abs(k_in) < 1e-9 * K0:
            raise DegenerateEnergyError(
                "wavenumber vanishes inside a region (V = E); plane-wave "
                "matching is singular there"
            )
        m = _interface(k_prev, k_in) @ m
        m = np.diag([np.exp(1j * k_in * width), np.exp(-1j * k_in * width)]) @ m
        k_prev = k_in
    return _interface(k_prev, k_lead) @ m


def scatter(region: ScatteringRegion, e_ratio: float = 1.0) -> ScatterResult:
    """Solve the scattering problem for one region by interface matching.

    Returns amplitudes for a unit wave incident from the left at energy
    ``e_ratio`` times the reference energy.  The transmitted amplitude is
    divided by the free-propagation factor exp(i*k*L_total), so ``t`` of an
    empty region is 1 and arg(t) is directly comparable with
    :func:`phase_step` / :func:`phase_well` (modulo 2*pi).
    """
    segments = region.segments(e_ratio)
    k_lead = K0 * np.sqrt(e_ratio)
    m = _total_matrix(segments, k_lead)
    r = -m[1, 0] / m[1, 1]
    # Equal asymptotic wavenumbers make det(M) = 1, so t = 1/M11; this form
    # avoids the catastrophic cancellation of M00 + M01*r for opaque barriers.
    t_raw = 1.0 / m[1, 1]
    total_length = sum(width for _, width in segments)
    t = t_raw * np.exp(-1j * k_lead * total_length)
    return ScatterResult(t=complex(t), r=complex(r))


def phase_step(v_over_e: float, n: int = 1) -> float:
    """Transmitted phase of a potential plateau of height V < E whose width
    is n half-wavelengths inside the plateau: n*pi*(1 - 1/sqrt(1 - V/E)).

    Always non-positive; diverges as V approaches E from below.
    """
    _check_n(n)
    if v_over_e < 0:
        raise DomainError("step requires V/E >= 0")
    if v_over_e >= 1:
        raise DomainError(
            "step phase is undefined for V >= E (vertical-asymptote regime)"
        )
    return n * np.pi * (1.0 - 1.0 / np.sqrt(1.0 - v_over_e))


def phase_well(v_over_e: float, n: int = 1) -> float:
    """Transmitted phase of a well of depth V, width n half-wavelengths
    inside: n*pi*(1 - 1/sqrt(1 + V/E)).

    Lies in [0, n*pi) and approaches n*pi as the well deepens.
    """
    _check_n(n)
    if v_over_e < 0:
        raise DomainError("well requires V/E >= 0")
    return n * np.pi * (1.0 - 1.0 / np.sqrt(1.0 + v_over_e))


def resonance_width(v_over_e: float, kind: str, n: int = 1) -> float:
    """Region width (in incident wavelengths) giving unit transmission.

    Half the wavelength inside the region times n: the reflectionless
    condition for both plateaus and wells.
    """
    _check_n(n)
    if kind == "step":
        if v_over_e < 0 or v_over_e >= 1:
            raise DomainError("step requires 0 <= V/E < 1")
        return 0.5 * n / np.sqrt(1.0 - v_over_e)
    if kind == "well":
        if v_over_e < 0:
            raise DomainError("well requires V/E >= 0")
        return 0.5 * n / np.sqrt(1.0 + v_over_e)
    raise DomainError(f"resonance width is defined for step|well, got {kind!r}")


def tunneling_suppression(length: float, v_over_e: float) -> float:
    """Amplitude suppression exp(-kappa*L) across a barrier with V > E,
    with kappa = 2*pi*sqrt(V/E - 1) in internal units."""
    if v_over_e <= 1:
        raise DomainError("tunneling regime requires V/E > 1")
    if length < 0:
        raise DomainError("length must be non-negative")
    return float(np.exp(-K0 * np.sqrt(v_over_e - 1.0) * length))


def calibrate_phase(target: float, kind: str, n: int = 1) -> float:
    """Invert the phase formulas: the V/E producing ``target`` radians.

    Steps reach (-inf, 0]; wells reach [0, n*pi).  Raises
    :class:`UnreachableTargetError` outside the achievable range.
    """
    _check_n(n)
    if kind == "step":
        if target > 0:
            raise UnreachableTargetError(
                f"a step only delays the wave; achievable range is (-inf, 0], "
                f"got {target}",
                achievable=(-np.inf, 0.0),
            )
        return 1.0 - (1.0 - target / (n * np.pi)) ** -2
    if kind == "well":
        if target < 0 or target >= n * np.pi:
            raise UnreachableTargetError(
                f"a well with n={n} reaches [0, {n}*pi); got {target}",
                achievable=(0.0, n * np.pi),
            )
        return (1.0 - target / (n * np.pi)) ** -2 - 1.0
    raise DomainError(f"calibration is defined for step|well, got {kind!r}")


def fig3_curve(kind: str, n: int, v_min: float, v_max: float, samples: int):
    """Uniformly sampled (V/E, phase) curve for CSV emission.

    For the step kind any sample at V/E >= 1 is clipped out, keeping the
    curve strictly below the vertical asymptote.
    """
    _check_n(n)
    if samples < 1:
        raise DomainError("need at least one sample")
    if v_min < 0 or v_min > v_max:
        raise DomainError("need 0 <= v_min <= v_max")
    if kind == "step":
        if v_min >= 1:
            raise DomainError("step curve requires v_min < 1")
        phase = phase_step
    elif kind == "well":
        phase = phase_well
    else:
        raise DomainError(f"curve is defined for step|well, got {kind!r}")
    values = np.linspace(v_min, v_max, samples)
    if kind == "step":
        values = values[values < 1.0]
    return [(float(v), float(phase(v, n))) for v in values]


def double_barrier_transmission(
    spec: ScatteringRegion, energy_scan, points: int = 2048
):
    """Transmission of a symmetric double barrier over an energy window.

    ``energy_scan`` is a (low, high) pair of E/E0 ratios strictly inside
    (0, barrier height); the window is sampled at ``points`` energies.
    Returns a list of (energy_ratio, transmission_prob) rows.
    """
    if spec.kind != "double_barrier":
        raise DomainError("transmission scan requires a double_barrier region")
    lo, hi = (float(energy_scan[0]), float(energy_scan[1]))
    if lo > hi:
        lo, hi = hi, lo
    if lo == hi or points < 2:
        raise DomainError("empty energy scan")
    if lo <= 0 or hi >= spec.v_over_e:
        raise DomainError(
            "scan must stay strictly inside (0, barrier height) so the "
            "barriers remain in the tunneling regime"
        )
    energies = np.linspace(lo, hi, points)
    return [(float(e), scatter(spec, e).transmission_prob) for e in energies]


def _transmission_slope(spec: ScatteringRegion, energy: float, h: float) -> float:
    t_plus = scatter(spec, energy + h).transmission_prob
    t_minus = scatter(spec, energy - h).transmission_prob
    return (t_plus - t_minus) / (2 * h)


def find_resonances(
    spec: ScatteringRegion, energy_scan, max_count: int | None = None,
    points: int = 2048,
):
    """Resonance energies of a double barrier, sorted ascending.

    Peaks are located on a uniform scan and refined by bisection on the
    transmission slope; each survivor passes a 3-point local-maximum test.
    An empty list means no resonance in the window.
    """
    table = double_barrier_transmission(spec, energy_scan, points)
    energies = np.array([row[0] for row in table])
    trans = np.array([row[1] for row in table])
    step = energies[1] - energies[0]
    slope_h = step * 1e-3

    resonances = []
    for i in range(1, len(trans) - 1):
        if not (trans[i] > trans[i - 1] and trans[i] > trans[i + 1]):
            continue
        lo, hi = energies[i - 1], energies[i + 1]
        # The slope is positive at lo and negative at hi; bisect it to the peak.
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if hi - lo < 1e-14 * max(1.0, mid):
                break
            if _transmission_slope(spec, mid, slope_h) > 0:
                lo = mid
            else:
                hi = mid
        peak = 0.5 * (lo + hi)
        t_peak = scatter(spec, peak).transmission_prob
        t_left = scatter(spec, peak - step).transmission_prob
        t_right = scatter(spec, peak + step).transmission_prob
        if t_peak >= t_left and t_peak >= t_right:
            resonances.append(float(peak))

    resonances.sort()
    if max_count is not None:
        resonances = resonances[:max_count]
    return resonances


def coupler_unitary(spec: CouplerSpec) -> np.ndarray:
    """Rail-space unitary of a waveguide coupler.

    The population oscillates between the rails with period twice the
    transfer length; a coupling length of L_t gives total transfer, L_t/2 a
    symmetric beam splitter.
    """
    theta = spec.mixing_angle
    c, s = np.cos(theta), np.sin(theta)
    return np.array([[c, 1j * s], [1j * s, c]], dtype=complex)


def _check_n(n: int):
    if int(n) != n or n < 1:
        raise DomainError("n must be a positive integer")
