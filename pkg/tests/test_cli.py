"""Command-line interface: schemas, exit codes, determinism."""

import json
import math
from importlib import resources

import jsonschema
import pytest
from click.testing import CliRunner

from qhide.cli import main

PI6 = math.pi / 6
PI4 = math.pi / 4


@pytest.fixture(scope="module")
def schema():
    path = resources.files("qhide").joinpath("schemas/cli_output.schema.json")
    return json.loads(path.read_text(encoding="utf-8"))


@pytest.fixture()
def runner():
    return CliRunner()


def invoke(runner, *args):
    return runner.invoke(main, [str(a) for a in args], catch_exceptions=False)


def validate(schema, payload):
    jsonschema.Draft202012Validator(schema).validate(payload)


# -- verify -------------------------------------------------------------------


def test_verify_passes_at_pi_over_6(runner, schema):
    result = invoke(runner, "verify", "--theta", PI6)
    assert result.exit_code == 0
    payload = json.loads(result.output)
    validate(schema, payload)
    assert payload["passed"] is True
    assert payload["product_4f0f1"] == pytest.approx(0.9998, abs=5e-4)
    assert payload["hiding_condition"] is True


def test_verify_passes_at_pi_over_4(runner, schema):
    result = invoke(runner, "verify", "--theta", PI4)
    payload = json.loads(result.output)
    validate(schema, payload)
    assert result.exit_code == 0
    assert payload["product_4f0f1"] == pytest.approx(0.9983, abs=5e-4)


def test_verify_at_zero_reports_no_hiding(runner, schema):
    result = invoke(runner, "verify", "--theta", 0.0)
    assert result.exit_code == 0
    payload = json.loads(result.output)
    validate(schema, payload)
    assert payload["product_4f0f1"] == pytest.approx(1.0, abs=1e-12)
    assert payload["hiding_condition"] is False


def test_verify_rejects_out_of_range_theta(runner):
    result = invoke(runner, "verify", "--theta", 1.2)
    assert result.exit_code == 2


def test_verify_csv_lists_each_identity(runner):
    result = invoke(runner, "verify", "--theta", PI4, "--format", "csv")
    lines = result.output.strip().splitlines()
    assert lines[0] == "check,residual,pass"
    names = {line.split(",")[0] for line in lines[1:]}
    assert "certificate_sum" in names and "trace_norm_f1" in names


# -- sweep --------------------------------------------------------------------


def test_sweep_csv_header_and_endpoint_rows(runner):
    result = invoke(runner, "sweep", "--points", 100, "--format", "csv")
    assert result.exit_code == 0
    lines = result.output.strip().splitlines()
    assert lines[0] == "theta,f0,f1,product,hiding_ok,thm1_bound_L"
    assert len(lines) == 101
    first = lines[1].split(",")
    assert float(first[0]) == 0.0
    assert float(first[3]) == pytest.approx(1.0, abs=1e-12)
    assert first[4] == "false" and first[5] == ""


def test_sweep_hits_the_reference_angles(runner):
    # 101 points over [0, pi/3] puts pi/6 and pi/4 exactly on the grid
    result = invoke(runner, "sweep", "--points", 101, "--format", "csv")
    lines = result.output.strip().splitlines()
    by_theta = {round(float(row.split(",")[0]), 12): row.split(",") for row in lines[1:]}
    pi6_row = by_theta[round(PI6, 12)]
    pi4_row = by_theta[round(PI4, 12)]
    assert float(pi6_row[3]) == pytest.approx(0.9998, abs=5e-4)
    assert float(pi4_row[3]) == pytest.approx(0.9983, abs=5e-4)
    assert pi6_row[4] == "true" and pi4_row[4] == "true"


def test_sweep_json_matches_schema(runner, schema):
    result = invoke(runner, "sweep", "--points", 7, "--L", 9)
    payload = json.loads(result.output)
    validate(schema, payload)
    assert payload["L"] == 9
    assert len(payload["rows"]) == 7


def test_sweep_validates_range(runner):
    assert invoke(runner, "sweep", "--theta-min", -0.5).exit_code == 2
    assert invoke(runner, "sweep", "--points", 1).exit_code == 2


# -- bounds -------------------------------------------------------------------


def test_bounds_decay_value(runner, schema):
    result = invoke(runner, "bounds", "--theta", PI4, "--L", 5)
    payload = json.loads(result.output)
    validate(schema, payload)
    exact = (11 + math.sqrt(17)) * (6 + math.sqrt(6)) / 128
    assert payload["thm1_bound"] == pytest.approx(0.5 + 0.5 * exact, abs=1e-10)
    assert payload["cor1_bound"] is None
    assert payload["p_G"] == 1.0


def test_bounds_csv_schema(runner):
    result = invoke(runner, "bounds", "--theta", PI4, "--L", 5, "--format", "csv")
    lines = result.output.strip().splitlines()
    assert lines[0] == "theta,L,p_G,thm1_bound,cor1_bound,product_4T"
    cells = lines[1].split(",")
    assert cells[1] == "5" and cells[4] == ""


def test_bounds_k1_route(runner, schema):
    result = invoke(runner, "bounds", "--theta", 0.3, "--L", 2, "--k", 1)
    payload = json.loads(result.output)
    validate(schema, payload)
    # the halved difference has trace norm exactly 1/2: no decay hypotheses
    assert payload["feasibility"]["idss_half"] is False
    assert payload["cor1_bound"] is None


# -- solve --------------------------------------------------------------------


def test_solve_perfect_case(runner, schema):
    result = invoke(runner, "solve", "--theta", 0.0, "--L", 1)
    payload = json.loads(result.output)
    validate(schema, payload)
    assert payload["p_ppt"] == pytest.approx(1.0, abs=1e-6)
    assert payload["converged"] is True
    assert payload["config"]["over_relaxation"] == 1.8


def test_solve_csv_row(runner):
    result = invoke(runner, "solve", "--theta", PI4, "--L", 1, "--format", "csv")
    lines = result.output.strip().splitlines()
    assert lines[0] == "theta,L,p_ppt,value,iterations,converged,constraint_residual"
    cells = lines[1].split(",")
    assert float(cells[2]) == pytest.approx(0.9330127, abs=1e-5)
    assert cells[5] == "true"


# -- simulate -----------------------------------------------------------------


def test_simulate_global_strategy(runner, schema):
    result = invoke(
        runner, "simulate", "--theta", PI4, "--L", 1,
        "--strategy", "GlobalOrthogonal", "--trials", 10000, "--seed", 42,
    )
    payload = json.loads(result.output)
    validate(schema, payload)
    assert payload["empirical_rate"] == 1.0
    assert payload["exact_rate"] == pytest.approx(1.0, abs=1e-12)
    assert payload["seed"] == 42


def test_simulate_csv_schema(runner):
    result = invoke(
        runner, "simulate", "--theta", PI4, "--L", 2,
        "--strategy", "best-local", "--trials", 2000, "--seed", 1, "--format", "csv",
    )
    lines = result.output.strip().splitlines()
    assert lines[0] == "theta,L,strategy,exact_rate,empirical_rate,trials,seed"
    cells = lines[1].split(",")
    assert cells[2].startswith("rotated(")
    assert 0.5 <= float(cells[3]) <= 1.0


def test_simulate_rejects_unknown_strategy(runner):
    result = invoke(runner, "simulate", "--theta", PI4, "--strategy", "psychic")
    assert result.exit_code == 2


def test_simulate_accepts_rotated_strategy(runner, schema):
    result = invoke(
        runner, "simulate", "--theta", PI4, "--L", 1,
        "--strategy", "rotated:0.3926990816987241,0.3926990816987241",
        "--trials", 1000, "--seed", 9,
    )
    payload = json.loads(result.output)
    validate(schema, payload)
    assert payload["exact_rate"] == pytest.approx(0.5 + 0.5 / math.sqrt(2), abs=1e-9)


# -- cross-cutting ---------------------------------------------------------------


def test_outputs_are_byte_identical_across_invocations(runner):
    for args in (
        ["verify", "--theta", PI4],
        ["sweep", "--points", 11, "--format", "csv"],
        ["bounds", "--theta", PI6, "--L", 4],
        ["solve", "--theta", PI6, "--L", 1],
        ["simulate", "--theta", PI4, "--L", 2, "--strategy", "computational",
         "--trials", 5000, "--seed", 77],
    ):
        first = invoke(runner, *args)
        second = invoke(runner, *args)
        assert first.output == second.output
        assert first.exit_code == second.exit_code == 0


def test_out_flag_writes_file(runner, tmp_path):
    target = tmp_path / "report.json"
    result = invoke(runner, "verify", "--theta", PI4, "--out", str(target))
    assert result.exit_code == 0
    payload = json.loads(target.read_text(encoding="utf-8"))
    assert payload["command"] == "verify"


def test_floats_are_printed_with_15_significant_digits(runner):
    result = invoke(runner, "bounds", "--theta", PI4, "--L", 5, "--format", "csv")
    theta_cell = result.output.strip().splitlines()[1].split(",")[0]
    assert theta_cell == "%.15g" % PI4
