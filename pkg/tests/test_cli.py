import json
import math

import pytest

from cmfun import cli


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestEval:
    def test_beta_value(self, capsys):
        code, out, _ = run(capsys, "eval", "beta", "1")
        assert code == 0
        header, row = out.strip().split("\n")
        assert header == "x,value"
        assert float(row.split(",")[1]) == pytest.approx(math.log(2.0),
                                                         abs=1e-15)

    def test_trigamma_value(self, capsys):
        code, out, _ = run(capsys, "eval", "trigamma", "1")
        assert float(out.strip().split("\n")[1].split(",")[1]) == \
            pytest.approx(math.pi ** 2 / 6, abs=1e-14)

    def test_multiple_points(self, capsys):
        code, out, _ = run(capsys, "eval", "digamma", "1", "2", "3")
        assert code == 0
        assert len(out.strip().split("\n")) == 4

    def test_parameterized_keys(self, capsys):
        code, out, _ = run(capsys, "eval", "beta-a-lambda", "2",
                           "--a", "0.5", "--lam", "1.5")
        assert code == 0
        code, out, _ = run(capsys, "eval", "gamma-ratio-log", "1",
                           "--a", "0.5", "--b", "2")
        assert float(out.strip().split("\n")[1].split(",")[1]) == \
            pytest.approx(math.log(1.875), abs=1e-13)

    def test_domain_error_exits_2(self, capsys):
        code, _, err = run(capsys, "eval", "beta", "0")
        assert code == 2
        assert "error" in err

    def test_unknown_key_exits_2(self, capsys):
        code, _, _ = run(capsys, "eval", "nosuchfn", "1")
        assert code == 2


class TestCheck:
    def test_passing_suite(self, capsys):
        code, out, _ = run(capsys, "check", "counterexample")
        assert code == 0
        report = json.loads(out)
        assert report["passed"] is True
        assert report["suite"] == "counterexample"

    def test_unknown_suite_exits_2(self, capsys):
        code, _, _ = run(capsys, "check", "nosuchsuite")
        assert code == 2

    def test_reports_byte_identical(self, capsys):
        _, out1, _ = run(capsys, "check", "hamburger")
        _, out2, _ = run(capsys, "check", "hamburger")
        assert out1 == out2

    def test_jobs_flag(self, capsys):
        code, out, _ = run(capsys, "check", "hamburger", "--jobs", "4")
        assert code == 0 and json.loads(out)["passed"]

    def test_counterexample_order_flag(self, capsys):
        code, out, _ = run(capsys, "check", "counterexample", "--r", "3")
        report = json.loads(out)
        assert code == 0
        assert report["items"][0]["residual"] < 1e-10

    def test_config_file(self, capsys, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"tolerances": {"hamburger": 1e-30}}))
        code, out, _ = run(capsys, "--config", str(cfg), "check", "hamburger")
        assert code == 1           # absurd tolerance fails -> exit 1
        code, out, _ = run(capsys, "--config", str(cfg), "check",
                           "hamburger", "--tol", "1e-8")
        assert code == 0           # explicit flag wins over the config

    def test_witnesses_in_failing_report(self, capsys, tmp_path):
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps({"tolerances": {"identities-s3": 1e-30}}))
        code, out, _ = run(capsys, "--config", str(cfg), "check",
                           "identities-s3")
        report = json.loads(out)
        assert code == 1 and not report["passed"]
        assert any("max_error" in it for it in report["items"])


class TestInvert:
    def test_beta_pow_c_csv(self, capsys, tmp_path):
        diag = tmp_path / "diag.json"
        code, out, _ = run(capsys, "invert", "beta-pow-c", "--c", "1",
                           "--dt", "0.25", "--tmax", "2", "--diag", str(diag))
        assert code == 0
        lines = out.strip().split("\n")
        assert lines[0] == "t,value"
        t1, v1 = map(float, lines[1].split(","))
        assert v1 == pytest.approx(1.0 / (1.0 + math.exp(-t1)), abs=1e-6)
        d = json.loads(diag.read_text())
        assert "method_spread" in d and d["methods"] == ["euler",
                                                         "gaver-stehfest"]

    def test_negative_c_exits_2(self, capsys):
        code, _, _ = run(capsys, "invert", "beta-pow-c", "--c", "-1")
        assert code == 2

    def test_unknown_transform_exits_2(self, capsys):
        code, _, _ = run(capsys, "invert", "nosuch", "--c", "1")
        assert code == 2


class TestSemigroupCommand:
    def test_small_grid(self, capsys):
        code, out, _ = run(capsys, "semigroup", "1", "1",
                           "--dt", "0.01", "--tmax", "4", "--tol", "1e-4")
        report = json.loads(out)
        assert code == 0 and report["passed"]
        assert report["sup_discrepancy"] < 1e-4


class TestSample:
    def test_deterministic_csv(self, capsys):
        code, out1, _ = run(capsys, "sample", "--family", "nu", "--a", "0.5",
                            "--count", "5", "--seed", "9")
        code2, out2, _ = run(capsys, "sample", "--family", "nu", "--a", "0.5",
                             "--count", "5", "--seed", "9")
        assert code == code2 == 0
        assert out1 == out2
        lines = out1.strip().split("\n")
        assert lines[0] == "t" and len(lines) == 6
        assert all(float(v) > 0 for v in lines[1:])

    def test_bad_family_exits_2(self, capsys):
        code, _, _ = run(capsys, "sample", "--family", "cauchy", "--a", "1",
                         "--count", "5")
        assert code == 2
