"""Circuit intermediate representation and its text interchange format.

An instruction is a gate kind, its qubit targets, and either a phase
parameter or an explicit matrix (``u1``/``u2``, which exist only before
routing).  The text format is line oriented::

    qubits N
    h q
    p q PHI
    cp q1 q2 PHI
    cnot qc qt
    swap q1 q2

with ``#`` starting a comment and PHI a decimal radian literal.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import CircuitError, ParseError

ARITY = {"h": 1, "p": 1, "u1": 1, "cp": 2, "cnot": 2, "swap": 2, "u2": 2}
PHASE_KINDS = ("p", "cp")
MATRIX_KINDS = ("u1", "u2")


@dataclass(frozen=True)
class Instruction:
    kind: str
    targets: tuple
    params: tuple = ()
    matrix: np.ndarray | None = None

    def __post_init__(self):
        if self.kind not in ARITY:
            raise CircuitError(f"unknown gate kind {self.kind!r}")
        object.__setattr__(self, "targets", tuple(int(q) for q in self.targets))
        object.__setattr__(self, "params", tuple(float(x) for x in self.params))
        if len(self.targets) != ARITY[self.kind]:
            raise CircuitError(
                f"{self.kind} takes {ARITY[self.kind]} target(s), "
                f"got {len(self.targets)}"
            )
        if len(set(self.targets)) != len(self.targets):
            raise CircuitError(f"{self.kind} targets must be distinct")
        if self.kind in PHASE_KINDS and len(self.params) != 1:
            raise CircuitError(f"{self.kind} takes exactly one phase parameter")
        if self.kind not in PHASE_KINDS and self.params:
            raise CircuitError(f"{self.kind} takes no phase parameter")
        if self.kind in MATRIX_KINDS:
            dim = 2 ** ARITY[self.kind]
            m = np.asarray(self.matrix, dtype=complex)
            if m.shape != (dim, dim):
                raise CircuitError(f"{self.kind} needs a {dim}x{dim} matrix")
            object.__setattr__(self, "matrix", m)
        elif self.matrix is not None:
            raise CircuitError(f"{self.kind} does not carry a matrix")


@dataclass
class Circuit:
    """Ordered instruction list over ``num_qubits`` wires.

    ``global_phase`` records phase accumulated by compilation passes; it is
    metadata, not part of the instruction product.
    """

    num_qubits: int
    instructions: list = field(default_factory=list)
    global_phase: float = 0.0

    def __post_init__(self):
        if self.num_qubits < 1:
            raise CircuitError("a circuit needs at least one qubit")
        for instr in self.instructions:
            self._check_targets(instr)

    def _check_targets(self, instr: Instruction):
        for q in instr.targets:
            if not 0 <= q < self.num_qubits:
                raise CircuitError(
                    f"target {q} out of range for {self.num_qubits} qubit(s)"
                )

    def append(self, instr: Instruction) -> "Circuit":
        self._check_targets(instr)
        self.instructions.append(instr)
        return self

    def h(self, q: int) -> "Circuit":
        return self.append(Instruction("h", (q,)))

    def p(self, q: int, phi: float) -> "Circuit":
        return self.append(Instruction("p", (q,), (phi,)))

    def cp(self, q1: int, q2: int, phi: float) -> "Circuit":
        return self.append(Instruction("cp", (q1, q2), (phi,)))

    def cnot(self, control: int, target: int) -> "Circuit":
        return self.append(Instruction("cnot", (control, target)))

    def swap(self, q1: int, q2: int) -> "Circuit":
        return self.append(Instruction("swap", (q1, q2)))

    def u1(self, q: int, matrix) -> "Circuit":
        return self.append(Instruction("u1", (q,), matrix=matrix))

    def u2(self, q1: int, q2: int, matrix) -> "Circuit":
        return self.append(Instruction("u2", (q1, q2), matrix=matrix))

    def adjacent_only(self) -> bool:
        """True when every two-qubit gate touches neighboring wires."""
        return all(
            len(i.targets) < 2 or abs(i.targets[0] - i.targets[1]) == 1
            for i in self.instructions
        )

    def is_lowered(self) -> bool:
        """True for the post-routing alphabet: only h/p/cp, all adjacent."""
        return (
            all(i.kind in ("h", "p", "cp") for i in self.instructions)
            and self.adjacent_only()
        )


def parse_circuit(text: str) -> Circuit:
    """Parse the text format; raises :class:`ParseError` with a line number
    for syntax problems and :class:`CircuitError` for semantic ones."""
    circuit = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if circuit is None:
            if fields[0] != "qubits" or len(fields) != 2:
                raise ParseError("expected 'qubits N' header", lineno)
            n = _parse_int(fields[1], lineno)
            if n < 1:
                raise ParseError("qubit count must be positive", lineno)
            circuit = Circuit(n)
            continue
        kind, args = fields[0], fields[1:]
        if kind == "qubits":
            raise ParseError("duplicate 'qubits' header", lineno)
        if kind not in ("h", "p", "cp", "cnot", "swap"):
            raise ParseError(f"unknown gate {kind!r}", lineno)
        n_targets = ARITY[kind]
        n_phases = 1 if kind in PHASE_KINDS else 0
        if len(args) != n_targets + n_phases:
            raise ParseError(
                f"{kind} takes {n_targets} qubit(s)"
                + (" and a phase" if n_phases else ""),
                lineno,
            )
        targets = tuple(_parse_int(a, lineno) for a in args[:n_targets])
        params = tuple(_parse_float(a, lineno) for a in args[n_targets:])
        try:
            circuit.append(Instruction(kind, targets, params))
        except CircuitError as exc:
            raise CircuitError(f"line {lineno}: {exc}") from exc
    if circuit is None:
        raise ParseError("missing 'qubits N' header", 1)
    return circuit


def format_circuit(circuit: Circuit) -> str:
    """Serialize to the text format (LF newlines).

    Circuits still carrying explicit-matrix gates cannot be serialized; a
    nonzero global phase is recorded as a trailing comment.
    """
    lines = [f"qubits {circuit.num_qubits}"]
    for instr in circuit.instructions:
        if instr.kind in MATRIX_KINDS:
            raise CircuitError(
                f"{instr.kind} has no text form; lower the circuit first"
            )
        parts = [instr.kind, *map(str, instr.targets)]
        parts.extend(repr(x) for x in instr.params)
        lines.append(" ".join(parts))
    if circuit.global_phase:
        lines.append(f"# global phase {circuit.global_phase!r}")
    return "\n".join(lines) + "\n"


def _parse_int(token: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"expected an integer, got {token!r}", lineno) from None


def _parse_float(token: str, lineno: int) -> float:
    try:
        return float(token)
    except ValueError:
        raise ParseError(f"expected a number, got {token!r}", lineno) from None
