import numpy as np
import pytest

from flyq.circuit import Circuit


def wrap(x: float) -> float:
    """Angle difference wrapped to (-pi, pi]."""
    return float(np.angle(np.exp(1j * np.asarray(x))))


def random_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_circuit(n: int, length: int, rng: np.random.Generator,
                   kinds=("h", "p", "cp", "cnot", "swap")) -> Circuit:
    circuit = Circuit(n)
    usable = [k for k in kinds if n >= 2 or k in ("h", "p", "u1")]
    for _ in range(length):
        kind = usable[int(rng.integers(len(usable)))]
        if kind == "h":
            circuit.h(int(rng.integers(n)))
        elif kind == "p":
            circuit.p(int(rng.integers(n)), float(rng.uniform(-np.pi, np.pi)))
        elif kind == "u1":
            circuit.u1(int(rng.integers(n)), random_unitary(2, rng))
        else:
            a, b = (int(q) for q in rng.choice(n, size=2, replace=False))
            if kind == "cp":
                circuit.cp(a, b, float(rng.uniform(-np.pi, np.pi)))
            elif kind == "cnot":
                circuit.cnot(a, b)
            elif kind == "swap":
                circuit.swap(a, b)
            else:
                circuit.u2(a, b, random_unitary(4, rng))
    return circuit


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(12345)
