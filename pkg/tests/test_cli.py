import json
import subprocess
import sys
from pathlib import Path

import jsonschema
import pytest
from hypothesis import given
from hypothesis import strategies as st

from matstrata.cli import (
    EXIT_FAIL,
    EXIT_INCONCLUSIVE,
    EXIT_PASS,
    EXIT_USAGE,
    REPORT_SCHEMA,
    RunConfig,
    UsageError,
    build_verify_report,
    main,
    parse_jordan,
    parse_multiplicities,
    parse_singular,
    render_jordan,
    render_multiplicities,
    render_singular,
)
from matstrata.profiles import JordanStructure, MultiplicityProfile, SingularProfile

GOLDEN_DIR = Path(__file__).parent / "goldens"


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


class TestParsers:
    def test_multiplicities(self):
        assert parse_multiplicities("2,1,1") == MultiplicityProfile.of(2, 1, 1)

    def test_multiplicities_bad_token_position(self):
        with pytest.raises(UsageError, match="position 2"):
            parse_multiplicities("2,x,1")

    def test_jordan(self):
        js = parse_jordan("0:3,1; 1:2")
        assert js == JordanStructure.of((3, 1), (2,))

    def test_jordan_duplicate_label(self):
        with pytest.raises(UsageError, match="duplicate"):
            parse_jordan("a:2;a:1")

    def test_jordan_missing_colon(self):
        with pytest.raises(UsageError, match="label:sizes"):
            parse_jordan("3,1")

    def test_jordan_unsorted_sizes(self):
        with pytest.raises(UsageError, match="decreasing"):
            parse_jordan("0:1,3")

    def test_singular(self):
        assert parse_singular("4x3:2,1") == SingularProfile(4, 3, (2, 1))

    def test_singular_rank_zero(self):
        assert parse_singular("4x3:") == SingularProfile(4, 3, ())

    def test_singular_bad_shape(self):
        with pytest.raises(UsageError, match="NxM"):
            parse_singular("4y3:2")

    @given(st.lists(st.integers(min_value=1, max_value=9), min_size=1, max_size=6))
    def test_multiplicities_round_trip(self, parts):
        profile = MultiplicityProfile.of(*parts)
        assert parse_multiplicities(render_multiplicities(profile)) == profile

    @given(
        st.lists(
            st.lists(st.integers(min_value=1, max_value=5), min_size=1, max_size=3).map(
                lambda xs: tuple(sorted(xs, reverse=True))
            ),
            min_size=1,
            max_size=3,
        )
    )
    def test_jordan_round_trip(self, blocks):
        js = JordanStructure.of(*blocks)
        assert parse_jordan(render_jordan(js)) == js

    @given(st.integers(min_value=1, max_value=6), st.integers(min_value=1, max_value=6), st.data())
    def test_singular_round_trip(self, n, m, data):
        r = data.draw(st.integers(min_value=0, max_value=min(n, m)))
        parts = []
        left = r
        while left:
            k = data.draw(st.integers(min_value=1, max_value=left))
            parts.append(k)
            left -= k
        parts.sort(reverse=True)
        sp = SingularProfile(n, m, tuple(parts))
        assert parse_singular(render_singular(sp)) == sp


class TestDimCommand:
    def test_real_symmetric_spec_example(self, capsys):
        code, out, _ = run_cli(capsys, "dim", "real-symmetric", "2,1,1")
        assert code == EXIT_PASS
        assert "codim 2" in out

    def test_hermitian_spec_example(self, capsys):
        code, out, _ = run_cli(capsys, "dim", "hermitian", "3,1")
        assert code == EXIT_PASS
        assert "codim 8" in out

    def test_jordan_spec_example(self, capsys):
        code, out, _ = run_cli(capsys, "dim", "jordan", "0:3,1; 1:2")
        assert code == EXIT_PASS
        assert "dim 30" in out
        assert "commutant -8" in out

    def test_json_matches_text_numbers(self, capsys):
        code, text_out, _ = run_cli(capsys, "dim", "normal", "2,2")
        code2, json_out, _ = run_cli(capsys, "dim", "normal", "2,2", "--format", "json")
        payload = json.loads(json_out)
        assert code == code2 == EXIT_PASS
        assert f"dim {payload['free']['stratum_dim']}, codim {payload['free']['codim']}" in text_out

    def test_invariant_violation_is_usage_error(self, capsys):
        code, _, err = run_cli(capsys, "dim", "singular", "2x2:3")
        assert code == EXIT_USAGE
        assert "rank" in err

    def test_parse_error_reports_position(self, capsys):
        code, _, err = run_cli(capsys, "dim", "hermitian", "2,q")
        assert code == EXIT_USAGE
        assert "position" in err


class TestTableCommand:
    @pytest.mark.parametrize(
        "golden,argv",
        [
            ("table1_symbolic.txt", ("table", "1")),
            ("table2_symbolic.txt", ("table", "2")),
            ("table1_n3.txt", ("table", "1", "--n", "3", "--m", "4", "--r", "2")),
            (
                "table2_numeric.txt",
                (
                    "table", "2", "--n", "3", "--profile", "2,1",
                    "--jordan", "0:2;1:1", "--svd", "3x4:2",
                ),
            ),
        ],
    )
    def test_goldens(self, capsys, golden, argv):
        code, out, _ = run_cli(capsys, *argv)
        assert code == EXIT_PASS
        assert out == (GOLDEN_DIR / golden).read_text()

    def test_table1_numeric_row(self, capsys):
        _, out, _ = run_cli(capsys, "table", "1", "--n", "3")
        normal_row = next(line for line in out.splitlines() if "Normal" in line)
        assert normal_row.split()[-1] == "12"

    def test_table2_hermitian_row(self, capsys):
        _, out, _ = run_cli(capsys, "table", "2", "--profile", "2,1", "--n", "3")
        herm_row = next(line for line in out.splitlines() if "Hermitian" in line)
        assert herm_row.split()[-1] == "6"

    def test_numeric_mode_missing_parameters(self, capsys):
        code, _, err = run_cli(capsys, "table", "2", "--n", "3")
        assert code == EXIT_USAGE
        assert "needs" in err

    def test_profile_order_cross_checked(self, capsys):
        code, _, err = run_cli(capsys, "table", "2", "--profile", "2,1", "--n", "5")
        assert code == EXIT_USAGE


class TestVerifyCommand:
    def test_small_sweep_passes(self, capsys):
        code, out, _ = run_cli(capsys, "verify", "hermitian", "--max-n", "3")
        assert code == EXIT_PASS
        assert out.strip().endswith("(0 failed, 0 inconclusive)")

    def test_json_validates_against_schema(self, capsys):
        code, out, _ = run_cli(
            capsys, "verify", "real-symmetric", "--max-n", "3", "--format", "json"
        )
        assert code == EXIT_PASS
        report = json.loads(out)
        jsonschema.validate(report, REPORT_SCHEMA)

    def test_text_and_json_report_identical_numbers(self, capsys):
        args = ("verify", "unitary", "--max-n", "3", "--seed", "5")
        _, text_out, _ = run_cli(capsys, *args)
        _, json_out, _ = run_cli(capsys, *args, "--format", "json")
        report = json.loads(json_out)
        text_lines = [l for l in text_out.splitlines() if "predicted=" in l]
        assert len(text_lines) == len(report["cases"])
        for line, case in zip(text_lines, report["cases"]):
            assert f"predicted={case['predicted']}" in line
            assert f"observed={case['observed']}" in line
            assert f"gap_ratio={case['gap_ratio']}" in line

    def test_fail_exit_via_fault_injection(self, capsys):
        code, out, _ = run_cli(
            capsys, "verify", "hermitian", "--max-n", "2", "--inject-fault"
        )
        assert code == EXIT_FAIL
        assert "FAIL" in out

    def test_inconclusive_exit(self, capsys):
        # an absurd gap requirement that finite kept/dropped ratios cannot meet
        # (the jordan sweep at n = 3 has probes whose discarded singular
        # values are tiny but nonzero, so their gap is finite)
        code, out, _ = run_cli(
            capsys, "verify", "jordan", "--max-n", "3", "--gap", "1e30"
        )
        assert code == EXIT_INCONCLUSIVE
        assert "INCONCLUSIVE" in out

    def test_tolerance_out_of_range(self, capsys):
        code, _, err = run_cli(
            capsys, "verify", "jordan", "--max-n", "3", "--tolerance", "0.5"
        )
        assert code == EXIT_USAGE
        assert "tolerance out of range" in err

    def test_deterministic_reports(self):
        config = RunConfig(seed=7, max_n=3, max_m=3, trials=2)
        a = build_verify_report("all", config)
        b = build_verify_report("all", config)
        assert json.dumps(a) == json.dumps(b)

    def test_gap_ratios_capped_for_json(self):
        report = build_verify_report("hermitian", RunConfig(max_n=2))
        for case in report["cases"]:
            assert case["gap_ratio"] <= 1e12


class TestUsageErrors:
    def test_unknown_command(self, capsys):
        assert run_cli(capsys, "frobnicate")[0] == EXIT_USAGE

    def test_unknown_class(self, capsys):
        assert run_cli(capsys, "dim", "quaternionic", "2,1")[0] == EXIT_USAGE

    def test_missing_arguments(self, capsys):
        assert run_cli(capsys, "dim")[0] == EXIT_USAGE


class TestConsoleEntry:
    def test_module_invocation(self):
        proc = subprocess.run(
            [sys.executable, "-m", "matstrata", "dim", "unitary", "2,1"],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert "codim 3" in proc.stdout
