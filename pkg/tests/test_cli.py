import json
import math
from importlib import resources

import jsonschema
import pytest

from semishor.cli import (
    default_register_width,
    factor_pipeline,
    main,
    validate_factor_target,
)


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


class TestArgumentHandling:
    def test_unknown_command_exits_one(self, capsys):
        assert main(["bogus"]) == 1

    def test_missing_required_flag(self, capsys):
        assert main(["dist"]) == 1

    def test_bad_mode(self, capsys):
        assert main(["dist", "--N", "33", "--mode", "semi"]) == 1

    def test_bad_n(self, capsys):
        code, _, err = run(["dist", "--N", "0"], capsys)
        assert code == 1 and "error" in err

    def test_register_too_small(self, capsys):
        code, _, err = run(["dist", "--N", "33", "--x", "5", "--l", "4"], capsys)
        assert code == 1


class TestValidation:
    def test_default_width(self):
        assert default_register_width(33) == 11
        assert default_register_width(15) == 8

    def test_even_rejected(self):
        with pytest.raises(ValueError):
            validate_factor_target(34)

    def test_prime_rejected(self):
        with pytest.raises(ValueError):
            validate_factor_target(37)

    def test_prime_power_rejected(self):
        with pytest.raises(ValueError):
            validate_factor_target(27)
        with pytest.raises(ValueError):
            validate_factor_target(121)

    def test_target_accepted(self):
        validate_factor_target(33)
        validate_factor_target(15)


class TestDist:
    def test_csv_shape_and_flags(self, capsys):
        code, out, _ = run(
            ["dist", "--mode", "quantum", "--N", "33", "--x", "5", "--l", "8", "--k", "1"],
            capsys,
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[0].startswith("# q=256 N=33 x=5 L=10 k=1 mode=quantum")
        assert lines[1] == "c_hat,probability,normalized_probability,is_good_c"
        rows = [line.split(",") for line in lines[2:]]
        assert len(rows) == 256
        good = [int(r[0]) for r in rows if r[3] == "1"]
        assert good == [0, 26, 51, 77, 102, 128, 154, 179, 205, 230]

    def test_normalized_column_sums_to_one(self, capsys):
        _, out, _ = run(
            ["dist", "--mode", "semi-paper", "--N", "15", "--x", "2", "--l", "4"],
            capsys,
        )
        rows = [line.split(",") for line in out.strip().splitlines()[2:]]
        assert sum(float(r[2]) for r in rows) == pytest.approx(1.0, abs=1e-9)

    def test_determinism(self, tmp_path):
        args = ["dist", "--mode", "semi-strict", "--N", "15", "--x", "2", "--l", "4"]
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        assert main(args + ["--out", str(a)]) == 0
        assert main(args + ["--out", str(b)]) == 0
        assert a.read_bytes() == b.read_bytes()

    def test_json_validates_against_schema(self, capsys):
        code, out, _ = run(
            ["dist", "--N", "15", "--x", "2", "--l", "4", "--format", "json",
             "--marginal"],
            capsys,
        )
        assert code == 0
        doc = json.loads(out)
        schema = json.loads(
            resources.files("semishor").joinpath("schemas/dist.schema.json").read_text()
        )
        jsonschema.validate(doc, schema)
        assert doc["k"] is None and len(doc["rows"]) == 16


class TestFactor:
    def test_quantum_pipeline_succeeds(self, capsys):
        code, out, _ = run(
            ["factor", "--N", "33", "--x", "5", "--l", "8", "--seed", "42"], capsys
        )
        assert code == 0
        report = json.loads(out)
        assert report["factors"] == [3, 11]
        assert report["recovered_L"] % 10 == 0

    def test_small_case_hand_check(self, capsys):
        code, out, _ = run(
            ["factor", "--N", "15", "--x", "4", "--l", "8", "--seed", "7"], capsys
        )
        assert code == 0
        report = json.loads(out)
        assert report["factors"] == [3, 5]

    def test_exhausted_trials_exit_three(self, capsys):
        # 4 has odd order 3 mod 21 and 4**3k/2 roots are trivial, so the
        # pipeline can never split 21 from x=4
        code, out, _ = run(
            ["factor", "--N", "21", "--x", "4", "--l", "6", "--seed", "1",
             "--max-trials", "10"],
            capsys,
        )
        assert code == 3
        assert json.loads(out)["succeeded"] is False

    def test_invalid_target_exit_one(self, capsys):
        assert main(["factor", "--N", "27"]) == 1

    def test_lucky_gcd_short_circuit(self):
        report = factor_pipeline(33, 6, 8, "quantum", 0, 10)
        assert report["lucky_gcd"] == 3 and report["factors"] == [3, 11]

    def test_seed_determinism(self):
        r1 = factor_pipeline(33, 5, 8, "quantum", 5, 50)
        r2 = factor_pipeline(33, 5, 8, "quantum", 5, 50)
        assert r1 == r2


class TestVerifyCommand:
    def test_single_suite_passes(self, capsys):
        code, out, _ = run(["verify", "--suite", "appendixb"], capsys)
        assert code == 0
        assert "OK suite=appendixb" in out

    def test_tol_override_can_fail(self, capsys):
        code, out, _ = run(["verify", "--suite", "appendixb", "--tol", "0"], capsys)
        assert code == 2
        assert "FAIL" in out


class TestPhaseCommand:
    def test_full_revolution_closes(self, capsys):
        code, out, _ = run(
            ["phase", "--lambda0", "1", "--dphi", str(math.pi / 200), "--steps", "400"],
            capsys,
        )
        assert code == 0
        lines = out.strip().splitlines()
        assert lines[1].split(",")[0] == "step"
        assert len(lines) == 403
        first = [float(v) for v in lines[2].split(",")[2:4]]
        last = [float(v) for v in lines[-1].split(",")[2:4]]
        assert first == pytest.approx(last, abs=1e-9)
        casimirs = {line.split(",")[-1] for line in lines[2:]}
        assert all(float(v) == pytest.approx(0.25, abs=1e-14) for v in casimirs)

    def test_constant_trajectory(self, capsys):
        code, out, _ = run(["phase", "--lambda0", "0", "--steps", "3"], capsys)
        assert code == 0
        rows = out.strip().splitlines()[2:]
        assert all(row.split(",")[2:4] == ["0", "0"] for row in rows)

    def test_bad_lambda_exit_one(self, capsys):
        assert main(["phase", "--lambda0", "nope"]) == 1
