"""Dual-rail state-vector simulation.

The register amplitude array is ordered with qubit 0 as the most
significant bit, matching the physical picture of qubit 0's rail pair at
the top of the wire stack.  Two-qubit gates act only on neighboring wires;
moving distant qubits together is the router's job, not the simulator's.

Injection timing and the coherence-length budget are modeled at the level
the hardware story needs: per-qubit launch offsets, per-gate path lengths,
and a single phase-coherence length to compare against.
"""

import json
from dataclasses import dataclass

import numpy as np

from .circuit import Circuit, Instruction
from .errors import CircuitError, DomainError
from . import gates as _gates

MAX_QUBITS = 20

#: Gate lengths in microns used when the caller supplies none.  The
#: Hadamard coupler and the Coulomb coupler lengths follow the device
#: figures of merit; the phase gate default is an artifact choice.  cnot
#: and swap derive from their {h, cp} expansions.
DEFAULT_GATE_LENGTHS = {
    "h": 0.14,
    "p": 0.1,
    "cp": 1.0,
    "cnot": 2 * 0.14 + 1.0,
    "swap": 3 * (2 * 0.14 + 1.0),
}


@dataclass(frozen=True)
class StateVector:
    """Normalized amplitudes over the 2^n logical basis states."""

    num_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        object.__setattr__(self, "amplitudes", amps)
        if not 1 <= self.num_qubits <= MAX_QUBITS:
            raise DomainError(f"qubit count must be in [1, {MAX_QUBITS}]")
        if amps.shape != (2 ** self.num_qubits,):
            raise DomainError("amplitude array does not match the qubit count")
        norm = float(np.sum(np.abs(amps) ** 2))
        if abs(norm - 1.0) > 1e-10:
            raise DomainError(f"state is not normalized (sum |a|^2 = {norm})")

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def to_json(self) -> str:
        """JSON array of [re, im] pairs in basis order."""
        pairs = [[float(a.real), float(a.imag)] for a in self.amplitudes]
        return json.dumps(pairs)


@dataclass(frozen=True)
class MeasurementRecord:
    """Seeded sampling outcome: counts per observed bitstring."""

    shots: int
    seed: int
    counts: dict

    def to_json(self) -> str:
        return json.dumps(
            {"shots": self.shots, "seed": self.seed, "counts": self.counts},
            sort_keys=True,
        )


@dataclass(frozen=True)
class InjectionSchedule:
    """Per-qubit launch offsets in time units."""

    offsets: tuple

    def __post_init__(self):
        object.__setattr__(self, "offsets", tuple(float(x) for x in self.offsets))
        if not all(np.isfinite(self.offsets)):
            raise DomainError("launch offsets must be finite")

    @classmethod
    def uniform(cls, num_qubits: int, offset: float = 0.0) -> "InjectionSchedule":
        return cls((offset,) * num_qubits)


@dataclass(frozen=True)
class GateArrival:
    """When (and after how much traversed gate path) the two electrons of a
    two-qubit gate reach it."""

    position: int
    kind: str
    times: tuple
    paths_um: tuple

    @property
    def skew(self) -> float:
        return abs(self.times[0] - self.times[1])


@dataclass(frozen=True)
class SyncReport:
    """Arrival-time audit of every two-qubit gate."""

    ok: bool
    tolerance: float
    arrivals: tuple  # GateArrival per two-qubit gate, in circuit order
    mismatches: tuple  # subset of arrivals exceeding the tolerance


@dataclass(frozen=True)
class BudgetReport:
    """Worst-case path length against the phase-coherence length."""

    max_path: float
    l_phi: float
    ok: bool
    per_qubit: tuple


def init_register(n: int) -> StateVector:
    """All qubits in the 0-rail: amplitude 1 on |0...0>."""
    if not 1 <= n <= MAX_QUBITS:
        raise DomainError(f"qubit count must be in [1, {MAX_QUBITS}]")
    amps = np.zeros(2 ** n, dtype=complex)
    amps[0] = 1.0
    return StateVector(n, amps)


def _apply_matrix(amps: np.ndarray, matrix: np.ndarray, targets, n: int) -> np.ndarray:
    """Apply a 2^k x 2^k matrix to the given qubit axes of the amplitude
    tensor; works for state vectors and for batched columns alike."""
    k = len(targets)
    tensor = amps.reshape((2,) * n + amps.shape[1:])
    op = matrix.reshape((2,) * k + (2,) * k)
    moved = np.tensordot(op, tensor, axes=(tuple(range(k, 2 * k)), targets))
    return np.moveaxis(moved, tuple(range(k)), targets).reshape(amps.shape)


def apply_gate(state: StateVector, gate: "_gates.GateUnitary", targets) -> StateVector:
    """Apply a gate to the listed qubits, returning a new state.

    Two-qubit gates must target adjacent wires; the first target is the
    more significant index of the gate's own 4x4 basis.
    """
    targets = tuple(int(q) for q in targets)
    _check_targets(targets, gate.arity, state.num_qubits)
    new_amps = _apply_matrix(state.amplitudes, gate.matrix, targets, state.num_qubits)
    return StateVector(state.num_qubits, new_amps)


def _check_targets(targets, arity: int, n: int, position=None):
    where = "" if position is None else f"instruction {position}: "
    if len(targets) != arity:
        raise CircuitError(
            f"{where}gate arity {arity} does not match {len(targets)} target(s)",
            position=position,
        )
    for q in targets:
        if not 0 <= q < n:
            raise CircuitError(f"{where}qubit index {q} out of range",
                               position=position)
    if arity == 2 and abs(targets[0] - targets[1]) != 1:
        raise CircuitError(
            f"{where}two-qubit gate on non-adjacent wires {targets}; route "
            "the circuit first",
            position=position,
        )


def instruction_matrix(instr: Instruction) -> np.ndarray:
    """The unitary an instruction denotes."""
    if instr.kind == "h":
        return _gates.hadamard().matrix
    if instr.kind == "p":
        return _gates.phase_gate(instr.params[0]).matrix
    if instr.kind == "cp":
        return _gates.controlled_phase(instr.params[0]).matrix
    if instr.kind == "cnot":
        return _gates.cnot().matrix
    if instr.kind == "swap":
        return _gates.swap().matrix
    return instr.matrix  # u1 / u2


def run_circuit(circuit: Circuit, initial: StateVector | None = None) -> StateVector:
    """Apply all instructions in order, starting from |0...0> unless an
    initial state is supplied.  The first invalid instruction is reported
    with its position."""
    state = init_register(circuit.num_qubits) if initial is None else initial
    if state.num_qubits != circuit.num_qubits:
        raise CircuitError("initial state size does not match the circuit")
    amps = state.amplitudes
    n = circuit.num_qubits
    for pos, instr in enumerate(circuit.instructions):
        _check_targets(instr.targets, len(instr.targets), n, position=pos)
        amps = _apply_matrix(amps, instruction_matrix(instr), instr.targets, n)
    return StateVector(n, amps)


def bell_network(input_label: str) -> Circuit:
    """The two-qubit entangling network: rail-swap preparation of the input
    label, a beam splitter on each qubit, the Coulomb coupler, and a final
    beam splitter on qubit b.

    The four basis labels map to the four Bell states (00 -> (|00>+|11>)/sqrt2
    and so on); rail swaps are built as H P_pi H since a bare X is not in the
    gate alphabet.
    """
    if input_label not in ("00", "01", "10", "11"):
        raise DomainError(f"input label must be two bits, got {input_label!r}")
    circuit = Circuit(2)
    for q, bit in enumerate(input_label):
        if bit == "1":
            circuit.h(q).p(q, np.pi).h(q)
    circuit.h(0)
    circuit.h(1)
    circuit.cp(0, 1, np.pi)
    circuit.h(1)
    return circuit


def measure_all(state: StateVector, shots: int, seed: int = 0) -> MeasurementRecord:
    """Sample all qubits ``shots`` times from |amplitude|^2.

    Sampling uses a seeded generator; identical state and seed give
    bit-identical counts.
    """
    if shots < 1:
        raise DomainError("need at least one shot")
    probs = state.probabilities()
    probs = probs / probs.sum()
    rng = np.random.default_rng(seed)
    sampled = rng.multinomial(shots, probs)
    n = state.num_qubits
    counts = {
        format(idx, f"0{n}b"): int(c) for idx, c in enumerate(sampled) if c > 0
    }
    return MeasurementRecord(shots=shots, seed=seed, counts=counts)


def _lengths_for(circuit: Circuit, gate_lengths: dict) -> dict:
    lengths = {}
    for instr in circuit.instructions:
        if instr.kind not in gate_lengths:
            raise DomainError(f"no length assigned for gate kind {instr.kind!r}")
        lengths[instr.kind] = float(gate_lengths[instr.kind])
    return lengths


def synchronization_check(
    schedule: InjectionSchedule,
    circuit: Circuit,
    gate_lengths: dict,
    velocity: float,
    tolerance: float = 1e-9,
) -> SyncReport:
    """Check that both electrons of every two-qubit gate arrive together.

    Each qubit's arrival time at a gate is its launch offset plus the
    traversed gate path divided by the group velocity.  The verdict is OK
    when every two-qubit gate sees arrival times within the tolerance.
    """
    if velocity <= 0:
        raise DomainError("velocity must be positive")
    if len(schedule.offsets) != circuit.num_qubits:
        raise DomainError("schedule does not cover every qubit")
    _lengths_for(circuit, gate_lengths)
    path = [0.0] * circuit.num_qubits
    arrivals = []
    mismatches = []
    for pos, instr in enumerate(circuit.instructions):
        length = float(gate_lengths[instr.kind])
        if len(instr.targets) == 2:
            a, b = instr.targets
            t_a = schedule.offsets[a] + path[a] / velocity
            t_b = schedule.offsets[b] + path[b] / velocity
            entry = (pos, instr.kind, (t_a, t_b))
            arrivals.append(entry)
            if abs(t_a - t_b) > tolerance:
                mismatches.append(entry)
        for q in instr.targets:
            path[q] += length
    return SyncReport(
        ok=not mismatches,
        tolerance=tolerance,
        arrivals=tuple(arrivals),
        mismatches=tuple(mismatches),
    )


def coherence_budget(circuit: Circuit, gate_lengths: dict, l_phi: float) -> BudgetReport:
    """Longest per-qubit gate path compared against the coherence length."""
    if l_phi <= 0:
        raise DomainError("coherence length must be positive")
    _lengths_for(circuit, gate_lengths)
    path = [0.0] * circuit.num_qubits
    for instr in circuit.instructions:
        for q in instr.targets:
            path[q] += float(gate_lengths[instr.kind])
    max_path = max(path) if path else 0.0
    return BudgetReport(
        max_path=max_path, l_phi=l_phi, ok=max_path < l_phi, per_qubit=tuple(path)
    )
