"""Smoke tests for the python bindings (and, when available, the CLI's JSON)."""

import json
import math
import os
import subprocess

import pytest

qaos = pytest.importorskip("qaos")


def test_group_roundtrip():
    g = qaos.GroupElement(1.0, 1.0, 0.0, 0.0)
    gg = qaos.compose(g, g)
    assert (gg.a, gg.b1, gg.b2, gg.b3) == pytest.approx((2.0, 2.0, 1.0, 0.5))
    unit = qaos.compose(g, qaos.inverse(g))
    assert max(abs(unit.a), abs(unit.b1), abs(unit.b2), abs(unit.b3)) < 1e-14


def test_casimir_and_scaling():
    beta = qaos.BetaVector(1.0, 2.0, 3.0)
    assert qaos.casimir_c(beta) == pytest.approx(2.0)
    scaled = qaos.scale_beta(beta, 2.0)
    assert (scaled.beta1, scaled.beta2, scaled.beta3) == pytest.approx((2.0, 8.0, 24.0))
    assert qaos.casimir_c(scaled) == pytest.approx(16.0 * 2.0)


def test_closed_forms():
    cf = qaos.closed_form_n1_even(-0.7, 0.1)
    assert cf.energy == pytest.approx(0.2807142857142857, abs=1e-13)
    assert cf.beta2 == pytest.approx(0.4185714285714286, abs=1e-13)

    b3 = qaos.simultaneous_n2_beta3(0.4)
    odd = qaos.closed_form_n2_odd(0.4, b3)
    even = qaos.closed_form_n2_even(0.4, b3, qaos.Branch.Minus)
    assert odd.energy == pytest.approx(0.32, abs=1e-14)
    assert even.beta2 == pytest.approx(odd.beta2, abs=1e-9)

    with pytest.raises(qaos.NoRealSolution):
        qaos.closed_form_n2_even(1.0, 1.0, qaos.Branch.Plus)


def test_solver_and_wavefunction():
    result = qaos.solve_qes(qaos.QESProblem(1, qaos.Parity.Even, -0.7, 0.1))
    assert any(abs(s.energy - 0.2807142857142857) < 1e-9 for s in result.solutions)
    sol = min(result.solutions, key=lambda s: abs(s.energy - 0.2807142857142857))
    wf = qaos.WavefunctionSpec.from_solution(sol, -0.7, 0.1)
    assert qaos.count_nodes(wf, 12.0, 4000).nodes == 2
    assert qaos.schrodinger_residual_relative(wf, 1.3) < 1e-10
    assert qaos.eval_psi(wf, 0.7) == pytest.approx(qaos.eval_psi(wf, -0.7))


def test_zero_energy_table():
    sols = qaos.czero_solutions(4, 0.5, qaos.Parity.Even)
    ratios = sorted(s.beta2 / 0.25 for s in sols)
    assert ratios == pytest.approx([3 - math.sqrt(7), 3 + math.sqrt(7)], abs=1e-9)
    with pytest.raises(qaos.NoZeroEnergySolution):
        qaos.czero_solutions(5, 0.5, qaos.Parity.Even)


def test_oracle_benchmark():
    cf = qaos.closed_form_n1_even(-0.7, 0.1)
    cfg = qaos.OracleConfig()
    cfg.grid_points = 1001
    cfg.refinement_levels = 2
    cfg.eigen_count = 4
    pot = qaos.PotentialParams(-2.0, qaos.BetaVector(-0.7, cf.beta2, 0.1))
    spectrum = qaos.lowest_eigenvalues(pot, cfg)
    assert spectrum.extrapolated[2] == pytest.approx(0.280714, abs=1e-4)
    assert qaos.rank_of_energy(spectrum, cf.energy, 1e-4) == 2


def test_synthesis():
    xs = [(-3.0 + 0.2 * i) for i in range(31)]
    ys = [(-1.0 + 0.25 * j) for j in range(9)]
    spec = qaos.make_n1_even_family(-0.9, -0.5, 5, 0.1, xs, ys)
    out = qaos.synthesize_psi(spec)
    assert len(out.mode_energies) == 5
    assert out.energy_max > out.energy_min


@pytest.mark.skipif("QAOS_CLI" not in os.environ, reason="CLI binary path not provided")
def test_cli_json_matches_schema(tmp_path):
    jsonschema = pytest.importorskip("jsonschema")
    schema_path = os.path.join(os.path.dirname(__file__), "..", "..", "docs",
                               "result.schema.json")
    with open(schema_path) as fh:
        schema = json.load(fh)
    subprocess.run(
        [os.environ["QAOS_CLI"], "solve", "--n", "1", "--parity", "even", "--beta1",
         "-0.7", "--beta3", "0.1", "--format", "json", "--out", str(tmp_path)],
        check=True, capture_output=True)
    with open(tmp_path / "solve.json") as fh:
        report = json.load(fh)
    jsonschema.validate(report, schema)

    for args, name in [
        (["oracle", "--n", "1", "--parity", "even", "--beta1", "-0.7", "--beta3",
          "0.1", "--grid", "501", "--levels", "2"], "oracle.json"),
        (["table1", "--beta1", "0.5"], "table1.json"),
        (["scan", "--n", "1", "--parity", "even", "--beta1-min", "0.4",
          "--beta1-max", "0.8", "--steps", "3", "--beta3", "0.1"], "scan.json"),
    ]:
        subprocess.run([os.environ["QAOS_CLI"], *args, "--format", "json", "--out",
                        str(tmp_path)], check=True, capture_output=True)
        with open(tmp_path / name) as fh:
            jsonschema.validate(json.load(fh), schema)
