"""Service operations behind the HTTP endpoints.

These are plain functions over the request/response models so the CLI can
call them in process; the FastAPI routes are thin wrappers.
"""

from .. import scattering, simulator, units
from ..circuit import format_circuit, parse_circuit
from ..compiler import route_lnn, verify_equivalence
from ..errors import CircuitError
from ..tables import to_csv
from ..verification import run_battery
from . import schemas


def run_op(req: schemas.RunRequest) -> schemas.RunResponse:
    circuit = parse_circuit(req.circuit)
    if not circuit.adjacent_only():
        if req.strict:
            raise CircuitError(
                "circuit contains non-adjacent two-qubit gates; route it "
                "first or disable strict mode"
            )
        circuit = route_lnn(circuit)
    state = simulator.run_circuit(circuit)
    counts = None
    if req.shots > 0:
        counts = simulator.measure_all(state, req.shots, req.seed).counts
    amplitudes = [[float(a.real), float(a.imag)] for a in state.amplitudes]
    return schemas.RunResponse(
        num_qubits=state.num_qubits,
        amplitudes=amplitudes,
        counts=counts,
        seed=req.seed,
    )


def curves_op(req: schemas.CurvesRequest) -> schemas.CurvesResponse:
    rows = scattering.fig3_curve(req.kind, req.n, req.v_min, req.v_max, req.samples)
    return schemas.CurvesResponse(csv=to_csv("v_over_e,phase_rad", rows), rows=rows)


def calibrate_op(req: schemas.CalibrateRequest) -> schemas.CalibrateResponse:
    v_over_e = scattering.calibrate_phase(req.target, req.kind, req.n)
    width = scattering.resonance_width(v_over_e, req.kind, req.n)
    achieved = (
        scattering.phase_step(v_over_e, req.n)
        if req.kind == "step"
        else scattering.phase_well(v_over_e, req.n)
    )
    width_um = None
    if req.energy_mev is not None:
        width_um = units.length_to_um(width, req.energy_mev, req.mstar)
    return schemas.CalibrateResponse(
        v_over_e=v_over_e,
        resonance_width=width,
        achieved_phase=achieved,
        width_um=width_um,
    )


def route_op(req: schemas.RouteRequest) -> schemas.RouteResponse:
    circuit = parse_circuit(req.circuit)
    routed = route_lnn(circuit)
    verified = distance = phase = None
    if req.verify:
        report = verify_equivalence(circuit, routed, req.tol)
        verified, distance, phase = report.equivalent, report.distance, report.phase
    return schemas.RouteResponse(
        routed=format_circuit(routed),
        global_phase=routed.global_phase,
        instructions=len(routed.instructions),
        verified=verified,
        distance=distance,
        phase=phase,
    )


def verify_gates_op(req: schemas.VerifyGatesRequest) -> schemas.VerifyGatesResponse:
    rows = run_battery(quick=req.quick)
    models = [
        schemas.BatteryRowModel(name=r.name, passed=r.passed, details=r.details)
        for r in rows
    ]
    return schemas.VerifyGatesResponse(
        passed=all(r.passed for r in rows), rows=models
    )


def budget_op(req: schemas.BudgetRequest) -> schemas.BudgetResponse:
    circuit = parse_circuit(req.circuit)
    lengths = req.lengths or simulator.DEFAULT_GATE_LENGTHS
    report = simulator.coherence_budget(circuit, lengths, req.l_phi)
    return schemas.BudgetResponse(
        max_path=report.max_path,
        l_phi=report.l_phi,
        ok=report.ok,
        per_qubit=list(report.per_qubit),
    )
