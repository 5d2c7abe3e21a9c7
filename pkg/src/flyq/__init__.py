"""Flying-qubit simulator for ballistic electrons in dual-rail nanowires."""

from .circuit import Circuit, Instruction, format_circuit, parse_circuit
from .errors import (
    CircuitError,
    DegenerateEnergyError,
    DomainError,
    EdgeReachedError,
    FlyqError,
    NotAHadamardError,
    ParseError,
    UnreachableTargetError,
)
from .gates import (
    CoulombCouplerSpec,
    GateUnitary,
    cnot,
    controlled_phase,
    coulomb_phase,
    hadamard,
    hadamard_from_coupler,
    phase_gate,
    swap,
)
from .scattering import (
    CouplerSpec,
    ScatterResult,
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
from .simulator import (
    InjectionSchedule,
    MeasurementRecord,
    StateVector,
    apply_gate,
    bell_network,
    coherence_budget,
    init_register,
    measure_all,
    run_circuit,
    synchronization_check,
)
from .compiler import (
    DecompositionResult,
    circuit_unitary,
    decompose_1q,
    route_lnn,
    verify_equivalence,
)
from .wavepacket import (
    GaussianPacket,
    Grid1D,
    PropagationResult,
    bandwidth_study,
    evolve,
    norm_history,
    plan_run,
)

__version__ = "0.1.0"
