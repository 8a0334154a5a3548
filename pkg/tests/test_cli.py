from __future__ import annotations

from fractions import Fraction

from cfcert.cli import (
    EXIT_INCONCLUSIVE,
    EXIT_NO_WITNESS,
    EXIT_NOT_CONVERGED,
    EXIT_OK,
    EXIT_USAGE,
    decimal_down,
    decimal_up,
    emit,
    geometric_grid,
    main,
    parse_records,
    reverify_records,
)


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out


class TestEval:
    def test_json_record(self, capsys):
        code, out = run(capsys, "eval", "--m", "1", "--lambda", "1",
                        "--tol", "1e-9", "--format", "json")
        assert code == EXIT_OK
        (rec,) = parse_records(out, "json")
        assert rec.command == "eval"
        assert rec.inputs == {"m": "1/1", "lambda": "1/1"}
        assert Fraction(rec.lo) <= Fraction("1.433127426722311758") <= Fraction(rec.hi)
        assert rec.mode == "exact"

    def test_m0_below_one(self, capsys):
        code, out = run(capsys, "eval", "--m", "0", "--lambda", "1")
        assert code == EXIT_OK
        (rec,) = parse_records(out, "csv")
        assert Fraction(rec.hi) < 1

    def test_domain_error_exit(self, capsys):
        code, _ = run(capsys, "eval", "--m", "-2", "--lambda", "1")
        assert code == EXIT_USAGE

    def test_decimal_inputs_parsed_exactly(self, capsys):
        code, out = run(capsys, "eval", "--m", "0.1", "--lambda", "0.5")
        assert code == EXIT_OK
        (rec,) = parse_records(out, "csv")
        assert rec.inputs["m"] == "1/10"
        assert rec.inputs["lambda"] == "1/2"

    def test_not_converged_exit_with_best_record(self, capsys):
        code, out = run(capsys, "eval", "--m", "1", "--lambda", "0.001",
                        "--mode", "directed", "--max-depth", "50", "--tol", "1e-9")
        assert code == EXIT_NOT_CONVERGED
        (rec,) = parse_records(out, "csv")
        assert Fraction(rec.lo) <= Fraction(rec.hi)

    def test_max_depth_env_override(self, capsys, monkeypatch):
        monkeypatch.setenv("MAX_DEPTH", "50")
        code, _ = run(capsys, "eval", "--m", "1", "--lambda", "0.001",
                      "--mode", "directed", "--tol", "1e-9")
        assert code == EXIT_NOT_CONVERGED

    def test_help_exits_zero(self, capsys):
        assert run(capsys, "--help")[0] == 0


class TestCheck:
    def test_sandwich_certified(self, capsys):
        code, out = run(capsys, "check", "sandwich", "--m", "0", "--lambda", "1")
        assert code == EXIT_OK
        recs = parse_records(out, "csv")
        assert [r.command for r in recs] == ["check-sandwich-upper", "check-sandwich-lower"]
        assert all(r.certified for r in recs)

    def test_reciprocal_certified(self, capsys):
        code, out = run(capsys, "check", "reciprocal", "--lambda", "10")
        assert code == EXIT_OK
        (rec,) = parse_records(out, "csv")
        assert rec.certified and Fraction(rec.hi) < 1

    def test_above_one_hypothesis_gate(self, capsys):
        code, _ = run(capsys, "check", "above-one", "--m", "0.5", "--lambda", "1")
        assert code == EXIT_USAGE

    def test_functional_negative_m(self, capsys):
        # negative rationals need the --m=value form (argparse dash handling)
        code, out = run(capsys, "check", "functional", "--m=-1/2", "--lambda", "1")
        assert code == EXIT_OK
        (rec,) = parse_records(out, "csv")
        assert rec.certified

    def test_inconclusive_exit_with_capped_tightening(self, capsys):
        code, out = run(capsys, "check", "sandwich", "--m", "0", "--lambda", "1",
                        "--tol", "0.9", "--max-tighten", "0")
        assert code == EXIT_INCONCLUSIVE
        (rec,) = parse_records(out, "csv")
        assert rec.certified is False

    def test_missing_m_usage_error(self, capsys):
        code, _ = run(capsys, "check", "sandwich", "--lambda", "1")
        assert code == EXIT_USAGE


class TestAlphaScanWitnessOracle:
    def test_alpha_bracket_interior(self, capsys):
        code, out = run(capsys, "alpha", "--lambda", "1", "--bracket-tol", "1e-6")
        assert code == EXIT_OK
        recs = {r.command: r for r in parse_records(out, "csv")}
        m_lo = Fraction(recs["alpha-lo"].inputs["m"])
        m_hi = Fraction(recs["alpha-hi"].inputs["m"])
        assert 0 < m_lo < m_hi < 1
        assert m_hi - m_lo <= Fraction(1, 10**6)
        assert Fraction(recs["alpha-lo"].hi) < 1
        assert Fraction(recs["alpha-hi"].lo) > 1

    def test_scan_rows(self, capsys):
        code, out = run(capsys, "scan", "--m", "0.1", "--grid-list", "1/4,1,2")
        assert code == EXIT_OK
        recs = parse_records(out, "csv")
        assert [Fraction(r.inputs["lambda"]) for r in recs] == [Fraction(1, 4), 1, 2]

    def test_witness_found(self, capsys):
        code, out = run(capsys, "witness", "--m", "0.1",
                        "--grid-geom", "0.0625:4:9", "--format", "json")
        assert code == EXIT_OK
        recs = parse_records(out, "json")
        assert [r.command for r in recs] == ["witness-g1", "witness-g2"]
        lam1 = Fraction(recs[0].inputs["lambda"])
        lam2 = Fraction(recs[1].inputs["lambda"])
        assert lam1 < lam2
        assert Fraction(recs[0].lo) > Fraction(recs[1].hi)

    def test_witness_not_found(self, capsys):
        code, out = run(capsys, "witness", "--m", "0.9", "--grid-list", "1,2")
        assert code == EXIT_NO_WITNESS
        assert parse_records(out, "csv") == []

    def test_oracle_rows_intersect(self, capsys):
        code, out = run(capsys, "oracle", "--m", "2", "--lambda", "1")
        assert code == EXIT_OK
        cf, series = parse_records(out, "csv")
        assert max(Fraction(cf.lo), Fraction(series.lo)) <= min(
            Fraction(cf.hi), Fraction(series.hi)
        )

    def test_oracle_rejects_fractional_m(self, capsys):
        code, _ = run(capsys, "oracle", "--m", "1/2", "--lambda", "1")
        assert code == EXIT_USAGE

    def test_alpha_inconclusive_in_flat_region(self, capsys):
        # G(1/2, lam) sits exponentially close to 1 at tiny lam, so the first
        # midpoint can never be classified and the bracket comes back flagged
        code, out = run(capsys, "alpha", "--lambda", "0.000001")
        assert code == EXIT_INCONCLUSIVE
        recs = parse_records(out, "csv")
        assert [r.command for r in recs] == ["alpha-lo", "alpha-hi", "alpha-mid"]

    def test_bad_grid_values_are_usage_errors(self, capsys):
        assert run(capsys, "scan", "--m", "1", "--grid-list", "a,b")[0] == EXIT_USAGE
        assert run(capsys, "scan", "--m", "1", "--grid-geom", "1:2")[0] == EXIT_USAGE
        assert run(capsys, "scan", "--m", "1", "--grid-geom", "1:2:x")[0] == EXIT_USAGE


class TestRecordFormat:
    def test_csv_and_json_identical_values(self, capsys):
        _, csv_out = run(capsys, "check", "sandwich", "--m", "1", "--lambda", "1")
        _, json_out = run(capsys, "check", "sandwich", "--m", "1", "--lambda", "1",
                          "--format", "json")
        assert parse_records(csv_out, "csv") == parse_records(json_out, "json")

    def test_emit_parse_round_trip(self, capsys):
        _, out = run(capsys, "eval", "--m", "1", "--lambda", "1")
        recs = parse_records(out, "csv")
        assert emit(recs, "csv") == out
        assert parse_records(emit(recs, "json"), "json") == recs

    def test_reverify(self, capsys):
        _, out = run(capsys, "witness", "--m", "0.1", "--format", "json")
        assert reverify_records(parse_records(out, "json"))

    def test_directed_rounding_of_decimals(self):
        third = Fraction(1, 3)
        lo, hi = decimal_down(third), decimal_up(third)
        assert Fraction(lo) < third < Fraction(hi)
        assert decimal_down(Fraction(1)) == decimal_up(Fraction(1)) == "1"
        neg = Fraction(-1, 3)
        assert Fraction(decimal_down(neg)) < neg < Fraction(decimal_up(neg))


class TestGeometricGrid:
    def test_exact_power_of_two_grid(self):
        grid = geometric_grid(Fraction(1, 16), 4, 7)
        assert grid == [Fraction(2) ** k for k in range(-4, 3)]

    def test_endpoints_exact_for_irrational_ratio(self):
        grid = geometric_grid(Fraction(1, 16), 4, 9)
        assert len(grid) == 9
        assert grid[0] == Fraction(1, 16)
        assert grid[-1] == 4
        assert all(a < b for a, b in zip(grid, grid[1:]))

    def test_singleton(self):
        assert geometric_grid(2, 2, 5) == [Fraction(2)]
