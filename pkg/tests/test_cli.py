import csv

import numpy as np
import pytest

from oqwc.chain import steady_state
from oqwc.cli import EXIT_DATA, EXIT_NUMERICAL, EXIT_OK, EXIT_USAGE, main
from oqwc.walk import total_variation


def run_cli(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def parse_csv(text):
    rows = list(csv.reader(text.strip().splitlines()))
    return rows[0], rows[1:]


class TestSteadyState:
    def test_uniform_at_half(self, capsys):
        code, out, _ = run_cli(capsys, ["steady-state", "--nodes", "4", "--omega", "0.5"])
        assert code == EXIT_OK
        header, rows = parse_csv(out)
        assert header == ["node", "pi"]
        assert [float(r[1]) for r in rows] == pytest.approx([0.25] * 4)

    def test_known_values(self, capsys):
        code, out, _ = run_cli(capsys, ["steady-state", "--omega", "0.7"])
        assert code == EXIT_OK
        _, rows = parse_csv(out)
        values = [float(r[1]) for r in rows]
        assert values == pytest.approx((np.array([27, 63, 147, 343]) / 580).tolist(), abs=1e-9)

    def test_verify_column_reports_small_tv(self, capsys):
        code, out, _ = run_cli(capsys, ["steady-state", "--omega", "0.7", "--verify"])
        assert code == EXIT_OK
        header, rows = parse_csv(out)
        assert header == ["node", "pi", "empirical", "tv_distance"]
        assert float(rows[0][3]) <= 1e-4

    def test_rejects_absorbing_omega(self, capsys):
        code, _, err = run_cli(capsys, ["steady-state", "--omega", "1.0"])
        assert code == EXIT_USAGE
        assert "omega" in err

    def test_rejects_single_node(self, capsys):
        code, _, _ = run_cli(capsys, ["steady-state", "--nodes", "1"])
        assert code == EXIT_USAGE


class TestCurves:
    def test_starts_at_zero_and_reaches_stationary(self, capsys):
        code, out, _ = run_cli(
            capsys,
            ["curves", "--omega", "0.7", "--steps", "10", "--omega-prime", "0.0"],
        )
        assert code == EXIT_OK
        header, rows = parse_csv(out)
        assert header == ["omega", "n", "p_node3"]
        assert float(rows[0][2]) == 0.0
        assert abs(float(rows[-1][2]) - steady_state(4, 0.7)[3]) <= 0.02

    def test_high_omega_small_tail_gap(self, capsys):
        code, out, _ = run_cli(
            capsys,
            ["curves", "--omega", "0.9", "--steps", "10", "--omega-prime", "1.3"],
        )
        assert code == EXIT_OK
        _, rows = parse_csv(out)
        by_n = {int(r[1]): float(r[2]) for r in rows}
        assert abs(by_n[5] - steady_state(4, 0.9)[3]) <= 0.03
        assert abs(by_n[10] - by_n[5]) <= 0.03

    def test_omega_list_emits_groups(self, capsys):
        code, out, _ = run_cli(
            capsys,
            ["curves", "--omega-list", "0.6,0.8", "--steps", "3", "--omega-prime", "0.0"],
        )
        assert code == EXIT_OK
        _, rows = parse_csv(out)
        assert {r[0] for r in rows} == {"0.6", "0.8"}
        assert len(rows) == 2 * 4

    def test_default_angle_comes_from_bundled_triple(self, capsys):
        code, out, _ = run_cli(capsys, ["curves", "--steps", "2"])
        assert code == EXIT_OK
        _, rows = parse_csv(out)
        assert len(rows) == 3


class TestEvolution:
    def test_initial_distribution_is_point_mass(self, capsys):
        code, out, _ = run_cli(capsys, ["evolution", "--steps", "4"])
        assert code == EXIT_OK
        header, rows = parse_csv(out)
        assert header == ["n", "node", "probability"]
        first = [float(r[2]) for r in rows if r[0] == "0"]
        assert first == [1.0, 0.0, 0.0, 0.0]

    def test_each_step_normalized(self, capsys):
        code, out, _ = run_cli(capsys, ["evolution", "--omega", "0.7", "--steps", "10"])
        assert code == EXIT_OK
        _, rows = parse_csv(out)
        for n in range(11):
            group = [float(r[2]) for r in rows if int(r[0]) == n]
            assert sum(group) == pytest.approx(1.0, abs=1e-9)
            assert all(-1e-12 <= p <= 1.0 + 1e-12 for p in group)

    def test_final_step_near_stationary(self, capsys):
        code, out, _ = run_cli(capsys, ["evolution", "--omega", "0.7", "--steps", "10"])
        _, rows = parse_csv(out)
        final = np.array([float(r[2]) for r in rows if r[0] == "10"])
        assert total_variation(final, steady_state(4, 0.7)) <= 0.02

    def test_other_chain_sizes(self, capsys):
        code, out, _ = run_cli(
            capsys, ["evolution", "--nodes", "6", "--omega", "0.6", "--steps", "5"]
        )
        assert code == EXIT_OK
        _, rows = parse_csv(out)
        assert len(rows) == 6 * 6


class TestClassifyOne:
    def test_nearest_point_wins(self, capsys):
        code, out, _ = run_cli(
            capsys,
            ["classify-one", "--x0", "1", "0", "--x1", "0", "1", "--xtest", "0", "1"],
        )
        assert code == EXIT_OK
        assert "prediction           = +1" in out
        assert "classical_prediction = +1" in out

    def test_reference_point_wins(self, capsys):
        code, out, _ = run_cli(
            capsys,
            ["classify-one", "--x0", "1", "0", "--x1", "0", "1", "--xtest", "1", "0"],
        )
        assert code == EXIT_OK
        assert "prediction           = -1" in out

    def test_negative_components_accepted(self, capsys):
        code, out, _ = run_cli(
            capsys,
            [
                "classify-one",
                "--x0", "0.999807", "0.0196469",
                "--x1", "-0.275974", "0.961165",
                "--xtest", "-0.194006", "-0.981000",
            ],
        )
        assert code == EXIT_OK
        assert "prediction           = -1" in out
        assert "classical_prediction = -1" in out

    def test_equidistant_reports_tie(self, capsys):
        code, out, _ = run_cli(
            capsys,
            ["classify-one", "--x0", "1", "0", "--x1", "0", "1", "--xtest", "1", "1"],
        )
        assert code == EXIT_OK
        assert "prediction           = tie" in out

    def test_csv_output(self, capsys, tmp_path):
        out_path = tmp_path / "one.csv"
        code, _, _ = run_cli(
            capsys,
            [
                "classify-one", "--x0", "1", "0", "--x1", "0", "1",
                "--xtest", "0.8", "0.6", "--out", str(out_path),
            ],
        )
        assert code == EXIT_OK
        header, rows = parse_csv(out_path.read_text())
        assert header[:4] == ["phi", "gamma", "t", "omega_prime"]
        assert len(rows) == 1

    def test_singular_triple_is_numerical_failure(self, capsys):
        code, _, err = run_cli(
            capsys,
            ["classify-one", "--x0", "1", "0", "--x1", "0", "1", "--xtest", "0", "-1"],
        )
        assert code == EXIT_NUMERICAL
        assert "singular" in err

    def test_zero_vector_rejected(self, capsys):
        code, _, _ = run_cli(
            capsys,
            ["classify-one", "--x0", "0", "0", "--x1", "0", "1", "--xtest", "1", "0"],
        )
        assert code == EXIT_USAGE


class TestIrisExperiment:
    def test_small_run_shape_and_ranges(self, capsys):
        code, out, _ = run_cli(
            capsys, ["iris-experiment", "--triples", "40", "--seed", "11"]
        )
        assert code == EXIT_OK
        header, rows = parse_csv(out)
        assert header == [
            "omega", "p_succ", "p_err_1_given_2", "p_err_2_given_1",
            "p_err_total", "tie_rate",
        ]
        assert [r[0] for r in rows] == ["0.5", "0.8", "1"]
        for row in rows:
            succ, err_total, ties = float(row[1]), float(row[4]), float(row[5])
            assert succ + err_total + ties == pytest.approx(100.0, abs=0.01)

    def test_rates_identical_across_omegas(self, capsys):
        code, out, _ = run_cli(
            capsys, ["iris-experiment", "--triples", "60", "--seed", "3"]
        )
        assert code == EXIT_OK
        _, rows = parse_csv(out)
        assert rows[0][1:] == rows[1][1:] == rows[2][1:]

    def test_deterministic_output(self, capsys, tmp_path):
        args = ["iris-experiment", "--triples", "30", "--seed", "7"]
        first = tmp_path / "a.csv"
        second = tmp_path / "b.csv"
        assert main(args + ["--out", str(first)]) == EXIT_OK
        assert main(args + ["--out", str(second)]) == EXIT_OK
        assert first.read_bytes() == second.read_bytes()

    def test_sampling_mode_runs(self, capsys):
        code, out, _ = run_cli(
            capsys,
            [
                "iris-experiment", "--triples", "20", "--seed", "5",
                "--shots", "64", "--omega-list", "0.8",
            ],
        )
        assert code == EXIT_OK
        _, rows = parse_csv(out)
        assert len(rows) == 1
        assert 0.0 <= float(rows[0][1]) <= 100.0

    def test_missing_data_file(self, capsys, tmp_path):
        code, _, err = run_cli(
            capsys,
            ["iris-experiment", "--triples", "5", "--data", str(tmp_path / "nope.csv")],
        )
        assert code == EXIT_DATA
        assert "data error" in err

    def test_bad_omega_list(self, capsys):
        code, _, _ = run_cli(
            capsys, ["iris-experiment", "--omega-list", "0.5,1.5"]
        )
        assert code == EXIT_USAGE


class TestUsageErrors:
    def test_unknown_command(self, capsys):
        assert main(["no-such-command"]) == EXIT_USAGE

    def test_missing_required_vector(self, capsys):
        assert main(["classify-one", "--x0", "1", "0"]) == EXIT_USAGE

    def test_out_of_range_omega(self, capsys):
        assert main(["curves", "--omega", "0"]) == EXIT_USAGE
