"""Lowering to the native alphabet and linear nearest-neighbor routing.

Single-qubit unitaries decompose through the z-x-z Euler form using the
identity H P_beta H = e^{i beta/2} Rx(beta), so the emitted sequence is
P-gamma, H, P-beta, H, P-alpha plus a reported global phase.  Explicit
two-qubit matrices are synthesized exactly via the cosine-sine
decomposition into single-qubit gates and one controlled phase per
multiplexer.  Distant two-qubit gates are bracketed by swap chains that
walk the higher wire down to the lower one and back, after which swaps
lower to three CNOTs and CNOTs to H / CP_pi / H.
"""

import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import cossin, schur

from .circuit import Circuit, Instruction
from .errors import CircuitError, DomainError
from .simulator import _apply_matrix, instruction_matrix

MAX_UNITARY_QUBITS = 10
_PHASE_EPS = 1e-12  # phases below this are dropped as identity gates


def wrap_angle(x: float) -> float:
    """Map an angle to (-pi, pi]."""
    wrapped = math.remainder(x, 2 * math.pi)
    return math.pi if wrapped == -math.pi else wrapped


@dataclass(frozen=True)
class DecompositionResult:
    """A {H, P} realization of a single-qubit unitary, in application
    order, together with the global phase and the reconstruction error."""

    sequence: tuple
    global_phase: float
    residual: float


@dataclass(frozen=True)
class EquivalenceReport:
    equivalent: bool
    distance: float
    phase: float


def _sequence_matrix(sequence) -> np.ndarray:
    m = np.eye(2, dtype=complex)
    for instr in sequence:
        m = instruction_matrix(instr) @ m
    return m


def decompose_1q(u, target: int = 0) -> DecompositionResult:
    """Decompose a 2x2 unitary into phase gates and Hadamards.

    The identity and pure phase gates come back as themselves (empty or
    single-instruction sequences); everything else needs the full
    P H P H P pattern.
    """
    u = np.asarray(u, dtype=complex)
    if u.shape != (2, 2):
        raise DomainError("decomposition needs a 2x2 matrix")
    if np.max(np.abs(u.conj().T @ u - np.eye(2))) > 1e-10:
        raise DomainError("matrix is not unitary")

    det = u[0, 0] * u[1, 1] - u[0, 1] * u[1, 0]
    delta = 0.5 * np.angle(det)
    s = u * np.exp(-1j * delta)

    beta = 2.0 * math.atan2(abs(s[0, 1]), abs(s[0, 0]))
    if abs(s[0, 1]) < 1e-14:
        # Diagonal in the logical basis: a single phase gate suffices.
        phi = -2.0 * float(np.angle(s[0, 0]))
        sequence = []
        if abs(wrap_angle(phi)) > _PHASE_EPS:
            sequence.append(Instruction("p", (target,), (phi,)))
        global_phase = wrap_angle(delta - 0.5 * phi)
        return _finish(u, sequence, global_phase)
    if abs(s[0, 0]) < 1e-14:
        total, diff = 0.0, -2.0 * (float(np.angle(s[0, 1])) + 0.5 * math.pi)
    else:
        total = -2.0 * float(np.angle(s[0, 0]))
        diff = -2.0 * (float(np.angle(s[0, 1])) + 0.5 * math.pi)
    alpha = 0.5 * (total + diff)
    gamma = 0.5 * (total - diff)

    sequence = []
    for phi in (gamma,):
        if abs(wrap_angle(phi)) > _PHASE_EPS:
            sequence.append(Instruction("p", (target,), (phi,)))
    sequence.append(Instruction("h", (target,)))
    sequence.append(Instruction("p", (target,), (beta,)))
    sequence.append(Instruction("h", (target,)))
    if abs(wrap_angle(alpha)) > _PHASE_EPS:
        sequence.append(Instruction("p", (target,), (alpha,)))
    global_phase = wrap_angle(delta - 0.5 * (alpha + beta + gamma))
    return _finish(u, sequence, global_phase)


def _finish(u, sequence, global_phase) -> DecompositionResult:
    rebuilt = _sequence_matrix(sequence) * np.exp(1j * global_phase)
    residual = float(np.max(np.abs(u - rebuilt)))
    return DecompositionResult(
        sequence=tuple(sequence), global_phase=global_phase, residual=residual
    )


def _diag_gates(z, q0: int, q1: int):
    """Synthesize a diagonal 4x4 unitary diag(z) on wires (q0, q1) into at
    most two phase gates and one controlled phase, plus a global phase."""
    g = float(np.angle(z[0]))
    a = float(np.angle(z[1] / z[0]))
    b = float(np.angle(z[2] / z[0]))
    c = float(np.angle(z[3] / z[0]))
    out = []
    if abs(wrap_angle(a)) > _PHASE_EPS:
        out.append(Instruction("p", (q1,), (a,)))
    if abs(wrap_angle(b)) > _PHASE_EPS:
        out.append(Instruction("p", (q0,), (b,)))
    if abs(wrap_angle(c - a - b)) > _PHASE_EPS:
        out.append(Instruction("cp", (q0, q1), (c - a - b,)))
    return out, g


def _demultiplex(block_a, block_b, selector: int, target: int):
    """Lower a select-on-``selector`` pair of 1q gates: apply ``block_a`` to
    ``target`` when the selector is 0, ``block_b`` when it is 1.

    Writes the pair as (I x V) diag(D, D*) (I x W) with A = V D W and
    B = V D* W, obtained from the eigenstructure of A B^dagger.
    """
    m = block_a @ block_b.conj().T
    # m is unitary (normal), so its complex Schur form is diagonal.
    tri, vecs = schur(m, output="complex")
    lams = np.diag(tri)
    d = np.exp(0.5j * np.angle(lams))
    v = vecs
    w = np.diag(d) @ v.conj().T @ block_b

    out = []
    res = decompose_1q(w, target)
    out.extend(res.sequence)
    phase = res.global_phase
    diag_entries = np.concatenate([d, d.conj()])
    diag_ops, diag_phase = _diag_gates(diag_entries, selector, target)
    out.extend(diag_ops)
    phase += diag_phase
    res = decompose_1q(v, target)
    out.extend(res.sequence)
    phase += res.global_phase
    return out, phase


def _ry(theta: float) -> np.ndarray:
    c, s = math.cos(theta / 2), math.sin(theta / 2)
    return np.array([[c, -s], [s, c]], dtype=complex)


def _synth_2q(u4, q0: int, q1: int):
    """Exact synthesis of a 4x4 unitary on adjacent wires (q0, q1) into
    {h, p, cp, cnot} instructions plus a global phase.

    Cosine-sine decomposition splits the matrix into two single-qubit
    multiplexers and one multiplexed y-rotation; each multiplexer
    demultiplexes into single-qubit gates around a diagonal."""
    (u_a, u_b), theta, (v_ah, v_bh) = cossin(u4, p=2, q=2, separate=True)

    out = []
    phase = 0.0

    ops, ph = _demultiplex(v_ah, v_bh, selector=q0, target=q1)
    out.extend(ops)
    phase += ph

    # The CS block mixes the q0 blocks with q1-dependent angles: a
    # multiplexed Ry(2*theta_j) on q0 selected by q1.
    phi0, phi1 = 2.0 * float(theta[0]), 2.0 * float(theta[1])
    half_sum, half_diff = 0.5 * (phi0 + phi1), 0.5 * (phi0 - phi1)
    out.append(Instruction("cnot", (q1, q0)))
    res = decompose_1q(_ry(half_diff), q0)
    out.extend(res.sequence)
    phase += res.global_phase
    out.append(Instruction("cnot", (q1, q0)))
    res = decompose_1q(_ry(half_sum), q0)
    out.extend(res.sequence)
    phase += res.global_phase

    ops, ph = _demultiplex(u_a, u_b, selector=q0, target=q1)
    out.extend(ops)
    phase += ph
    return out, wrap_angle(phase)


def _swap_chain(lo: int, hi: int):
    """Swaps that walk the wire at ``hi`` down to ``lo + 1``."""
    return [Instruction("swap", (j - 1, j)) for j in range(hi, lo + 1, -1)]


def _adjacency_pass(circuit: Circuit):
    """Bracket every distant two-qubit gate in swap-in/swap-out chains."""
    out = []
    for instr in circuit.instructions:
        if len(instr.targets) < 2 or abs(instr.targets[0] - instr.targets[1]) == 1:
            out.append(instr)
            continue
        a, b = instr.targets
        lo, hi = min(a, b), max(a, b)
        chain = _swap_chain(lo, hi)
        moved = {lo: lo, hi: lo + 1}
        new_targets = tuple(moved[q] for q in instr.targets)
        out.extend(chain)
        out.append(Instruction(instr.kind, new_targets, instr.params,
                               matrix=instr.matrix))
        out.extend(reversed(chain))
    return out


def _lower(instr: Instruction):
    """Expand one instruction into {h, p, cp} gates plus a phase."""
    kind = instr.kind
    if kind in ("h", "p", "cp"):
        return [instr], 0.0
    if kind == "cnot":
        control, target = instr.targets
        return [
            Instruction("h", (target,)),
            Instruction("cp", (control, target), (math.pi,)),
            Instruction("h", (target,)),
        ], 0.0
    if kind == "swap":
        a, b = instr.targets
        ops = []
        for control, target in ((a, b), (b, a), (a, b)):
            lowered, _ = _lower(Instruction("cnot", (control, target)))
            ops.extend(lowered)
        return ops, 0.0
    if kind == "u1":
        res = decompose_1q(instr.matrix, instr.targets[0])
        return list(res.sequence), res.global_phase
    if kind == "u2":
        ops, phase = _synth_2q(instr.matrix, *instr.targets)
        lowered = []
        for op in ops:
            expanded, extra = _lower(op)
            lowered.extend(expanded)
            phase += extra
        return lowered, phase
    raise CircuitError(f"cannot lower gate kind {kind!r}")


def route_lnn(circuit: Circuit) -> Circuit:
    """Route onto the linear wire array and lower to {h, p, cp}.

    Every distant two-qubit gate is executed by swapping the higher wire
    down until the operands are neighbors, performing the gate, and
    swapping back; swaps and CNOTs are then expanded so the result uses
    only the native alphabet on adjacent wires.  The accumulated global
    phase is recorded on the returned circuit.
    """
    routed = Circuit(circuit.num_qubits, global_phase=circuit.global_phase)
    for instr in _adjacency_pass(circuit):
        ops, phase = _lower(instr)
        for op in ops:
            routed.append(op)
        routed.global_phase = wrap_angle(routed.global_phase + phase)
    return routed


def circuit_unitary(circuit: Circuit) -> np.ndarray:
    """Full matrix of the instruction product (global phase excluded)."""
    n = circuit.num_qubits
    if n > MAX_UNITARY_QUBITS:
        raise DomainError(
            f"unitary construction is capped at {MAX_UNITARY_QUBITS} qubits"
        )
    dim = 2 ** n
    u = np.eye(dim, dtype=complex)
    for pos, instr in enumerate(circuit.instructions):
        for q in instr.targets:
            if not 0 <= q < n:
                raise CircuitError(f"instruction {pos}: qubit {q} out of range",
                                   position=pos)
        u = _apply_matrix(u, instruction_matrix(instr), instr.targets, n)
    return u


def verify_equivalence(a: Circuit, b: Circuit, tol: float = 1e-9) -> EquivalenceReport:
    """Compare two circuits up to a global phase.

    The phase is fixed by the trace inner product (the Frobenius-optimal
    choice, which is also entrywise-optimal at equivalence); the distance
    is the largest entry of the phase-aligned difference.
    """
    if a.num_qubits != b.num_qubits:
        raise DomainError("circuits act on different register sizes")
    ua, ub = circuit_unitary(a), circuit_unitary(b)
    overlap = np.trace(ua.conj().T @ ub)
    if abs(overlap) < 1e-12:
        # Orthogonal operators: align on the largest entry instead.
        idx = np.unravel_index(np.argmax(np.abs(ua)), ua.shape)
        ratio = ub[idx] / ua[idx] if abs(ua[idx]) > 0 else 1.0
        phase = float(np.angle(ratio)) if abs(ratio) > 0 else 0.0
    else:
        phase = float(np.angle(overlap))
    distance = float(np.max(np.abs(ub - np.exp(1j * phase) * ua)))
    return EquivalenceReport(equivalent=distance <= tol, distance=distance,
                             phase=phase)
