"""Command-line client for the simulator service layer.

Each subcommand builds the same request models the HTTP API consumes and
calls the service handlers in process, so CLI and server behavior cannot
drift apart.  Output is deterministic byte for byte given identical inputs,
flags, and seed.

Exit codes: 0 success, 2 parse error, 3 semantic error (bad index,
non-adjacent gate in strict mode, unreachable calibration target),
4 unwritable output path, 5 routing verification failure, 6 gate-battery
failure, 7 coherence budget exceeded.
"""

import json

import click

from .errors import CircuitError, DomainError, FlyqError, ParseError
from .service import handlers, schemas
from .simulator import DEFAULT_GATE_LENGTHS

EXIT_PARSE = 2
EXIT_SEMANTIC = 3
EXIT_WRITE = 4
EXIT_VERIFY = 5
EXIT_BATTERY = 6
EXIT_BUDGET = 7

_format_option = click.option(
    "--format", "fmt", type=click.Choice(["json", "text"]), default="text",
    show_default=True, help="report rendering",
)
_out_option = click.option(
    "--out", type=click.Path(dir_okay=False, writable=False), default=None,
    help="write the primary output to this path instead of stdout",
)


def _fail(exc: Exception, code: int):
    click.echo(f"error: {exc}", err=True)
    raise SystemExit(code)


def _guard(fn, *args):
    """Run a handler, mapping package errors onto the exit-code contract."""
    try:
        return fn(*args)
    except ParseError as exc:
        _fail(exc, EXIT_PARSE)
    except (CircuitError, DomainError) as exc:
        _fail(exc, EXIT_SEMANTIC)
    except FlyqError as exc:
        _fail(exc, EXIT_SEMANTIC)


def _emit(text: str, out: str | None):
    if out is None:
        click.echo(text, nl=False)
        return
    try:
        with open(out, "w", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        _fail(exc, EXIT_WRITE)


def _read_circuit(path: str) -> str:
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        _fail(exc, EXIT_PARSE)


def _as_json(payload) -> str:
    return json.dumps(payload, sort_keys=True) + "\n"


@click.group()
@click.version_option(package_name="flyq")
def main():
    """Ballistic-electron flying-qubit simulator."""


@main.command()
@click.argument("circuit_file", type=click.Path(dir_okay=False))
@click.option("--shots", type=click.IntRange(min=0), default=0, show_default=True,
              help="measurement shots; 0 prints amplitudes only")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--strict/--no-strict", default=True, show_default=True,
              help="reject non-adjacent two-qubit gates (no-strict routes them)")
@_format_option
@_out_option
def run(circuit_file, shots, seed, strict, fmt, out):
    """Simulate a circuit file and report amplitudes (and counts)."""
    req = schemas.RunRequest(
        circuit=_read_circuit(circuit_file), shots=shots, seed=seed, strict=strict
    )
    resp = _guard(handlers.run_op, req)
    if fmt == "json":
        _emit(_as_json(resp.model_dump(exclude_none=True)), out)
        return
    lines = [f"qubits: {resp.num_qubits}", "amplitudes:"]
    n = resp.num_qubits
    for idx, (re, im) in enumerate(resp.amplitudes):
        prob = re * re + im * im
        lines.append(f"  |{idx:0{n}b}>  {re:+.12f}{im:+.12f}j  p={prob:.12f}")
    if resp.counts is not None:
        lines.append(f"counts ({shots} shots, seed {seed}):")
        for bits in sorted(resp.counts):
            lines.append(f"  {bits}  {resp.counts[bits]}")
    _emit("\n".join(lines) + "\n", out)


@main.command()
@click.argument("kind", type=click.Choice(["step", "well"]))
@click.option("--n", type=click.IntRange(min=1), default=1, show_default=True,
              help="half-wavelength multiple of the region width")
@click.option("--vmin", type=float, default=0.0, show_default=True)
@click.option("--vmax", type=float, required=True, help="upper V/E bound")
@click.option("--samples", type=click.IntRange(min=1), default=101,
              show_default=True)
@_out_option
def curves(kind, n, vmin, vmax, samples, out):
    """Emit the phase-shift curve (V/E versus phase) as CSV."""
    req = schemas.CurvesRequest(
        kind=kind, n=n, v_min=vmin, v_max=vmax, samples=samples
    )
    resp = _guard(handlers.curves_op, req)
    _emit(resp.csv, out)


@main.command()
@click.argument("target", type=float)
@click.argument("kind", type=click.Choice(["step", "well"]))
@click.option("--n", type=click.IntRange(min=1), default=1, show_default=True)
@click.option("--energy-mev", type=float, default=None,
              help="incident energy, enables micron reporting")
@click.option("--mstar", type=float, default=1.0, show_default=True,
              help="effective mass in electron masses")
@_format_option
@_out_option
def calibrate(target, kind, n, energy_mev, mstar, fmt, out):
    """Find the V/E ratio and width realizing a target phase."""
    req = schemas.CalibrateRequest(
        target=target, kind=kind, n=n, energy_mev=energy_mev, mstar=mstar
    )
    resp = _guard(handlers.calibrate_op, req)
    if fmt == "json":
        _emit(_as_json(resp.model_dump(exclude_none=True)), out)
        return
    lines = [
        f"v_over_e: {resp.v_over_e!r}",
        f"resonance_width: {resp.resonance_width!r} wavelengths",
        f"achieved_phase: {resp.achieved_phase!r} rad",
    ]
    if resp.width_um is not None:
        lines.append(f"width: {resp.width_um!r} um")
    _emit("\n".join(lines) + "\n", out)


@main.command()
@click.argument("circuit_file", type=click.Path(dir_okay=False))
@click.option("--verify", is_flag=True,
              help="check unitary equivalence of input and output")
@click.option("--tol", type=float, default=1e-9, show_default=True)
@_out_option
def route(circuit_file, verify, tol, out):
    """Route a circuit onto nearest-neighbor wires and lower it."""
    req = schemas.RouteRequest(
        circuit=_read_circuit(circuit_file), verify=verify, tol=tol
    )
    resp = _guard(handlers.route_op, req)
    _emit(resp.routed, out)
    if verify:
        if resp.verified is None:
            click.echo("verify: skipped (register too large)", err=True)
        elif resp.verified:
            click.echo(f"verify: equivalent, distance {resp.distance:.3e}",
                       err=True)
        else:
            click.echo(f"verify: FAILED, distance {resp.distance:.3e}", err=True)
            raise SystemExit(EXIT_VERIFY)


@main.command("verify-gates")
@click.option("--quick", is_flag=True,
              help="narrow packet and 5% phase tolerance for a fast pass")
@_format_option
@_out_option
def verify_gates(quick, fmt, out):
    """Run the wave-packet verification battery against the gate formulas."""
    resp = _guard(handlers.verify_gates_op, schemas.VerifyGatesRequest(quick=quick))
    if fmt == "json":
        _emit(_as_json(resp.model_dump()), out)
    else:
        lines = []
        for row in resp.rows:
            status = "pass" if row.passed else "FAIL"
            lines.append(f"{status}  {row.name}")
        lines.append("battery: " + ("pass" if resp.passed else "FAIL"))
        _emit("\n".join(lines) + "\n", out)
    if not resp.passed:
        raise SystemExit(EXIT_BATTERY)


@main.command()
@click.argument("circuit_file", type=click.Path(dir_okay=False))
@click.option("--lphi", type=float, default=30.0, show_default=True,
              help="phase coherence length in microns")
@click.option("--len-h", type=float, default=DEFAULT_GATE_LENGTHS["h"],
              show_default=True, help="Hadamard coupler length in microns")
@click.option("--len-p", type=float, default=DEFAULT_GATE_LENGTHS["p"],
              show_default=True, help="phase gate length in microns")
@click.option("--len-cp", type=float, default=DEFAULT_GATE_LENGTHS["cp"],
              show_default=True, help="Coulomb coupler length in microns")
@_format_option
@_out_option
def budget(circuit_file, lphi, len_h, len_p, len_cp, fmt, out):
    """Compare the worst-case gate path against the coherence length."""
    lengths = {
        "h": len_h,
        "p": len_p,
        "cp": len_cp,
        "cnot": 2 * len_h + len_cp,
        "swap": 3 * (2 * len_h + len_cp),
    }
    req = schemas.BudgetRequest(
        circuit=_read_circuit(circuit_file), lengths=lengths, l_phi=lphi
    )
    resp = _guard(handlers.budget_op, req)
    if fmt == "json":
        _emit(_as_json(resp.model_dump()), out)
    else:
        lines = [
            f"max_path: {resp.max_path!r} um",
            f"l_phi: {resp.l_phi!r} um",
            "per_qubit: " + " ".join(repr(x) for x in resp.per_qubit),
            f"ok: {str(resp.ok).lower()}",
        ]
        _emit("\n".join(lines) + "\n", out)
    if not resp.ok:
        raise SystemExit(EXIT_BUDGET)


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve(host, port):
    """Start the HTTP API."""
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=host, port=port)


if __name__ == "__main__":
    main()
