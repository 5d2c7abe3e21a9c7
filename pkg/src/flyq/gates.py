"""Constructors for the universal gate set {H, P_phi, CP_pi} and composites.

Every constructor returns a :class:`GateUnitary` whose matrix is checked for
unitarity on creation.  Ideal gates carry zero physical length; gates built
from device parameters (the waveguide coupler, the Coulomb coupler) record
their length in microns and are tagged ``provenance="device"``.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, NotAHadamardError
from .scattering import CouplerSpec, coupler_unitary

UNITARITY_TOL = 1e-12

_SQRT1_2 = 1.0 / np.sqrt(2.0)


@dataclass(frozen=True)
class GateUnitary:
    """A 2x2 or 4x4 unitary with provenance and physical extent."""

    matrix: np.ndarray
    arity: int
    provenance: str = "ideal"
    physical_length: float = 0.0

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        object.__setattr__(self, "matrix", m)
        if self.arity not in (1, 2):
            raise ValueError("arity must be 1 or 2")
        dim = 2 ** self.arity
        if m.shape != (dim, dim):
            raise ValueError(f"arity {self.arity} needs a {dim}x{dim} matrix")
        defect = np.max(np.abs(m.conj().T @ m - np.eye(dim)))
        if defect > UNITARITY_TOL:
            raise ValueError(f"matrix is not unitary (defect {defect:.2e})")
        if self.provenance not in ("ideal", "device"):
            raise ValueError("provenance must be 'ideal' or 'device'")
        if self.physical_length < 0:
            raise ValueError("physical length must be non-negative")


@dataclass(frozen=True)
class CoulombCouplerSpec:
    """Interaction region between two adjacent rails: coupling constant chi
    (1/time), interaction time (same unit), and length in microns."""

    chi: float
    interaction_time: float
    physical_length: float = 0.0

    def __post_init__(self):
        if self.chi < 0 or self.interaction_time < 0:
            raise DomainError("chi and interaction time must be non-negative")
        if self.physical_length < 0:
            raise DomainError("physical length must be non-negative")


@dataclass(frozen=True)
class CoupledHadamard:
    """A Hadamard realized by a 50/50 coupler plus two corrective phase
    shifters; ``corrections`` lists the phases applied before and after."""

    gate: GateUnitary
    corrections: tuple = (-np.pi / 2, -np.pi / 2)
    fidelity: float = 1.0


def hadamard() -> GateUnitary:
    """The ideal Hadamard (1 1; 1 -1)/sqrt(2)."""
    m = np.array([[_SQRT1_2, _SQRT1_2], [_SQRT1_2, -_SQRT1_2]], dtype=complex)
    return GateUnitary(m, arity=1)


def phase_gate(phi: float) -> GateUnitary:
    """Single-qubit phase shift diag(1, e^{i*phi})."""
    m = np.array([[1.0, 0.0], [0.0, np.exp(1j * phi)]], dtype=complex)
    return GateUnitary(m, arity=1)


def controlled_phase(phi: float) -> GateUnitary:
    """Two-qubit controlled phase diag(1, 1, 1, e^{i*phi})."""
    m = np.diag([1.0, 1.0, 1.0, np.exp(1j * phi)]).astype(complex)
    return GateUnitary(m, arity=2)


def _hadamard_fidelity(m: np.ndarray) -> float:
    return abs(np.trace(hadamard().matrix.conj().T @ m)) / 2.0


def hadamard_from_coupler(spec: CouplerSpec, rel_tol: float = 1e-9) -> CoupledHadamard:
    """Hadamard built from a waveguide coupler at half the transfer length.

    The bare 50/50 coupler is the symmetric beam splitter (1 i; i 1)/sqrt(2),
    not H; a -pi/2 phase shifter on the 1-rail before and after the coupler
    turns it into the exact Hadamard.  Specs away from the 50/50 ratio raise
    :class:`NotAHadamardError` carrying the fidelity actually achieved.
    """
    ratio = spec.coupling_length / spec.transfer_length
    correction = phase_gate(-np.pi / 2).matrix
    composite = correction @ coupler_unitary(spec) @ correction
    if abs(ratio - 0.5) > rel_tol * 0.5:
        raise NotAHadamardError(
            f"coupling/transfer ratio {ratio:.6g} is not 1/2; the coupler "
            "is not a symmetric beam splitter",
            fidelity=_hadamard_fidelity(composite),
        )
    gate = GateUnitary(
        composite, arity=1, provenance="device",
        physical_length=spec.coupling_length,
    )
    return CoupledHadamard(gate=gate, fidelity=_hadamard_fidelity(composite))


def coulomb_phase(spec: CoulombCouplerSpec) -> GateUnitary:
    """Controlled phase from the Coulomb coupler: |11> picks up e^{-2i*chi*t}.

    The minus sign follows the interaction convention; calibration chooses
    chi*t to land on the wanted phase.
    """
    phi = -2.0 * spec.chi * spec.interaction_time
    return GateUnitary(
        controlled_phase(phi).matrix, arity=2, provenance="device",
        physical_length=spec.physical_length,
    )


def cnot() -> GateUnitary:
    """CNOT with the lower qubit index as control: (I x H) CP_pi (I x H)."""
    ih = np.kron(np.eye(2), hadamard().matrix)
    m = ih @ controlled_phase(np.pi).matrix @ ih
    return GateUnitary(m, arity=2)


def swap() -> GateUnitary:
    """Exchange of two qubits, composed from three CNOTs."""
    forward = cnot().matrix
    reverse = _reversed_cnot()
    return GateUnitary(forward @ reverse @ forward, arity=2)


def _reversed_cnot() -> np.ndarray:
    hh = np.kron(hadamard().matrix, hadamard().matrix)
    return hh @ cnot().matrix @ hh
