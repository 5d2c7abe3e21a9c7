import json
import math
import os

import pytest
from click.testing import CliRunner

from flyq.cli import main

BELL_TEXT = "qubits 2\nh 0\nh 1\ncp 0 1 3.141592653589793\nh 1\n"
DISTANT_TEXT = "qubits 3\ncnot 0 2\n"


@pytest.fixture
def runner():
    return CliRunner()


def write(path, text):
    with open(path, "w") as fh:
        fh.write(text)
    return str(path)


@pytest.fixture
def bell_file(tmp_path):
    return write(tmp_path / "bell.fq", BELL_TEXT)


@pytest.fixture
def distant_file(tmp_path):
    return write(tmp_path / "distant.fq", DISTANT_TEXT)


class TestRun:
    def test_bell_counts_only_00_11(self, runner, bell_file):
        result = runner.invoke(
            main, ["run", bell_file, "--shots", "10000", "--seed", "0",
                   "--format", "json"]
        )
        assert result.exit_code == 0
        counts = json.loads(result.output)["counts"]
        assert set(counts) == {"00", "11"}

    def test_shots_zero_amplitudes_only(self, runner, bell_file):
        result = runner.invoke(main, ["run", bell_file, "--format", "json"])
        assert result.exit_code == 0
        body = json.loads(result.output)
        assert "counts" not in body
        assert len(body["amplitudes"]) == 4

    def test_malformed_line_exit_2(self, runner, tmp_path):
        path = write(tmp_path / "bad.fq", "qubits 2\nh\n")
        result = runner.invoke(main, ["run", path])
        assert result.exit_code == 2
        assert "line 2" in result.output

    def test_bad_index_exit_3(self, runner, tmp_path):
        path = write(tmp_path / "bad.fq", "qubits 2\nh 7\n")
        result = runner.invoke(main, ["run", path])
        assert result.exit_code == 3

    def test_strict_distant_exit_3(self, runner, distant_file):
        result = runner.invoke(main, ["run", distant_file])
        assert result.exit_code == 3

    def test_no_strict_routes(self, runner, distant_file):
        result = runner.invoke(main, ["run", distant_file, "--no-strict"])
        assert result.exit_code == 0

    def test_missing_file_exit_2(self, runner, tmp_path):
        result = runner.invoke(main, ["run", str(tmp_path / "nope.fq")])
        assert result.exit_code == 2

    def test_determinism(self, runner, bell_file):
        args = ["run", bell_file, "--shots", "64", "--seed", "9"]
        a = runner.invoke(main, args)
        b = runner.invoke(main, args)
        assert a.output == b.output


class TestCurves:
    def test_row_count_includes_header(self, runner):
        result = runner.invoke(
            main, ["curves", "well", "--n", "1", "--vmin", "0", "--vmax", "10",
                   "--samples", "101"]
        )
        assert result.exit_code == 0
        assert len(result.output.splitlines()) == 102

    def test_step_near_asymptote(self, runner):
        result = runner.invoke(
            main, ["curves", "step", "--vmax", "0.999", "--samples", "50"]
        )
        phases = [float(line.split(",")[1])
                  for line in result.output.splitlines()[1:]]
        assert min(phases) < -50.0

    def test_byte_identical_reruns(self, runner, tmp_path):
        out_a = str(tmp_path / "a.csv")
        out_b = str(tmp_path / "b.csv")
        args = ["curves", "well", "--vmax", "5", "--samples", "33"]
        assert runner.invoke(main, args + ["--out", out_a]).exit_code == 0
        assert runner.invoke(main, args + ["--out", out_b]).exit_code == 0
        with open(out_a, "rb") as fa, open(out_b, "rb") as fb:
            assert fa.read() == fb.read()

    def test_unwritable_path_exit_4(self, runner, tmp_path):
        target = str(tmp_path / "no" / "such" / "dir" / "x.csv")
        result = runner.invoke(
            main, ["curves", "well", "--vmax", "1", "--out", target]
        )
        assert result.exit_code == 4


class TestCalibrate:
    def test_step_minus_pi(self, runner):
        result = runner.invoke(
            main, ["calibrate", "--", "-3.141592653589793", "step"]
        )
        assert result.exit_code == 0
        assert "v_over_e: 0.75" in result.output
        assert "resonance_width: 1.0" in result.output

    def test_well_half_pi(self, runner):
        result = runner.invoke(
            main, ["calibrate", str(math.pi / 2), "well", "--format", "json"]
        )
        body = json.loads(result.output)
        assert body["v_over_e"] == pytest.approx(3.0, abs=1e-9)

    def test_round_trip_precision(self, runner):
        target = -2.345678901234
        result = runner.invoke(
            main, ["calibrate", "--format", "json", "--", str(target), "step"]
        )
        body = json.loads(result.output)
        assert abs(body["achieved_phase"] - target) < 1e-12

    def test_unreachable_exit_3(self, runner):
        result = runner.invoke(main, ["calibrate", "1.0", "step"])
        assert result.exit_code == 3
        assert "achievable" in result.output

    def test_micron_reporting(self, runner):
        result = runner.invoke(
            main, ["calibrate", "1.5707963267948966", "well",
                   "--energy-mev", "10", "--mstar", "0.067", "--format", "json"]
        )
        body = json.loads(result.output)
        assert body["width_um"] == pytest.approx(0.0118, rel=1e-2)


class TestRoute:
    def test_output_alphabet(self, runner, distant_file, tmp_path):
        out = str(tmp_path / "routed.fq")
        result = runner.invoke(main, ["route", distant_file, "--out", out])
        assert result.exit_code == 0
        with open(out) as fh:
            routed = fh.read()
        kinds = {line.split()[0] for line in routed.splitlines()[1:]
                 if line and not line.startswith("#")}
        assert kinds <= {"h", "p", "cp"}

    def test_adjacent_input_unchanged_interactions(self, runner, tmp_path):
        path = write(tmp_path / "adj.fq", "qubits 2\ncp 0 1 0.5\n")
        result = runner.invoke(main, ["route", path])
        assert result.exit_code == 0
        lines = [l for l in result.output.splitlines()[1:] if l]
        assert lines == ["cp 0 1 0.5"]

    def test_verify_reports_distance(self, runner, bell_file, tmp_path):
        out = str(tmp_path / "routed.fq")
        result = runner.invoke(
            main, ["route", bell_file, "--verify", "--out", out]
        )
        assert result.exit_code == 0
        assert "equivalent" in result.output


class TestBudget:
    def test_bell_defaults_ok(self, runner, bell_file):
        result = runner.invoke(main, ["budget", bell_file, "--format", "json"])
        assert result.exit_code == 0
        body = json.loads(result.output)
        assert body["ok"] is True
        assert body["max_path"] < 5.0

    def test_lphi_window(self, runner, bell_file):
        for lphi in ("30", "40"):
            result = runner.invoke(main, ["budget", bell_file, "--lphi", lphi])
            assert result.exit_code == 0

    def test_pathological_circuit_exit_7(self, runner, tmp_path):
        lines = ["qubits 2"] + ["cp 0 1 0.5"] * 500
        path = write(tmp_path / "cc500.fq", "\n".join(lines) + "\n")
        result = runner.invoke(main, ["budget", path])
        assert result.exit_code == 7

    def test_length_overrides(self, runner, bell_file):
        result = runner.invoke(
            main, ["budget", bell_file, "--len-cp", "40", "--format", "json"]
        )
        assert result.exit_code == 7


class TestVerifyGatesQuick:
    def test_quick_battery_passes(self, runner):
        result = runner.invoke(
            main, ["verify-gates", "--quick", "--format", "json"]
        )
        assert result.exit_code == 0, result.output
        body = json.loads(result.output)
        assert body["passed"] is True
        names = {row["name"] for row in body["rows"]}
        assert names == {"step_resonance", "well_resonance",
                         "off_resonance_reflection"}
