import json
import math
import subprocess
import sys

import pytest

from zetadet.cli import main
from zetadet.config import ConfigError, bundled_configs, load_config, parse_config
from zetadet.specfun import HALF_LOG_2PI, hurwitz_zeta, log_gamma

MINIMAL = {
    "base": {"k0": 0, "multiplicity": [1]},
    "operators": [
        {"name": "A", "factors": [{"shift": "0.5", "order": 1}]},
        {"name": "B", "factors": [{"shift": 1, "order": "2"}]},
    ],
}


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write(tmp_path, obj, name="family.json"):
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj), encoding="utf-8")
    return str(p)


class TestConfig:
    def test_bundled(self):
        assert {"flat", "circle", "sphere"} <= set(bundled_configs())
        cfg = load_config("circle")
        assert cfg.family.base.exceptions == ((0, 1),)
        assert cfg.family["D"].order == 1.5
        assert cfg.tolerance == 1e-6

    def test_minimal(self, tmp_path):
        cfg = load_config(write(tmp_path, MINIMAL))
        assert cfg.family.names == ["A", "B"]
        assert cfg.params.K is None and cfg.params.J == 20

    def test_decimal_strings_exact(self):
        cfg = parse_config(json.dumps({**MINIMAL, "operators": [{"name": "A", "factors": [{"shift": "0.1", "order": "0.3"}]}]}))
        (a, m), = cfg.family["A"].factors
        assert (a.numerator, a.denominator, m.numerator, m.denominator) == (1, 10, 3, 10)

    def test_malformed_json_position(self):
        with pytest.raises(ConfigError, match=r"line 3 column \d+"):
            parse_config('{\n  "base": {"k0": 0},\n  "operators": [,]\n}')

    @pytest.mark.parametrize(
        "mutate, message",
        [
            (lambda c: c.update(extra=1), "unknown field"),
            (lambda c: c["base"].update(degree=2), "unknown field"),
            (lambda c: c["operators"][0].update(color="red"), "unknown field"),
            (lambda c: c["operators"][0]["factors"][0].update(weight=1), "unknown field"),
            (lambda c: c.update(defaults={"tol": 1}), "unknown field"),
            (lambda c: c.pop("operators"), "missing field"),
            (lambda c: c["operators"].append(dict(c["operators"][0])), "duplicate"),
            (lambda c: c["operators"][0]["factors"][0].update(shift="-0.5"), "shift"),
            (lambda c: c["operators"][0]["factors"][0].update(order=0), "positive"),
            (lambda c: c["operators"][0]["factors"][0].update(order=True), "number"),
            (lambda c: c["base"].update(multiplicity=[]), "multiplicity"),
            (lambda c: c["base"].update(multiplicity=["1/2"]), "positive integer"),
            (lambda c: c["base"].update(k0=1.5), "integer"),
            (lambda c: c["base"].update(exceptions=[[0]]), "exceptions"),
            (lambda c: c["operators"][0].update(name="A,B"), "name"),
        ],
    )
    def test_rejections(self, mutate, message):
        cfg = json.loads(json.dumps(MINIMAL))
        mutate(cfg)
        with pytest.raises(ConfigError, match=message):
            parse_config(json.dumps(cfg))

    def test_missing_file(self):
        with pytest.raises(ConfigError):
            load_config("/nonexistent/family.json")


class TestCommands:
    def test_zeta_at_zero(self, capsys):
        code, out, _ = run(capsys, "zeta", "--config", "flat", "--op", "A", "--s", "0", "--json")
        assert code == 0
        res = json.loads(out)["results"]
        assert abs(res["value"]) < 1e-12
        assert abs(res["derivative"] - (log_gamma(0.5) - HALF_LOG_2PI)) < 1e-10

    def test_zeta_convergent(self, capsys):
        code, out, _ = run(capsys, "zeta", "--config", "flat", "--op", "B", "--s", "3", "--json")
        assert code == 0
        # B = (k + 1)^2 on the flat base: zeta(6)
        assert abs(json.loads(out)["results"]["value"] - hurwitz_zeta(6, 1)) < 1e-12

    def test_human_output(self, capsys):
        code, out, _ = run(capsys, "det", "--config", "flat", "--op", "A")
        assert code == 0
        assert out.startswith("log det_zeta(A) = ")
        assert out.rstrip().splitlines()[-1].startswith("runtime ")

    def test_det_value(self, capsys):
        code, out, _ = run(capsys, "det", "--config", "flat", "--op", "A", "--json")
        assert abs(json.loads(out)["results"]["log_det"] - 0.5 * math.log(2)) < 1e-10

    def test_anomaly(self, capsys):
        code, out, _ = run(capsys, "anomaly", "--config", "sphere", "--ops", "A,B,C", "--json")
        assert code == 0
        rep = json.loads(out)
        assert len(rep["results"]["log_M"]) == 4
        assert all(c["pass"] for c in rep["checks"])

    @pytest.mark.parametrize("config", ["flat", "circle", "sphere"])
    def test_verify_bundled(self, capsys, config):
        for args in (
            ["theorem", "--ops", "A,B,C,D,E"],
            ["corollary", "--k", "3", "--ops", "A,B,C,D"],
            ["zero-anomaly", "--ops", "S1,S2,S3"],
            ["reduction", "--ops", "A,B,C,D"],
            ["equal-order", "--ops", "A,C"],
            ["lemma", "--ops", "A,B,C,D"],
        ):
            code, out, _ = run(capsys, "verify", "--config", config, *args)
            assert code == 0, (config, args, out)
            assert "PASS" in out

    def test_symbolic(self, capsys):
        code, out, _ = run(capsys, "symbolic", "--n", "4", "--trials", "5", "--seed", "7", "--json")
        assert code == 0
        rep = json.loads(out)
        assert rep["seed"] == 7 and rep["results"]["pass"]


class TestExitCodes:
    def test_usage(self, capsys):
        assert run(capsys, "anomaly", "--config", "flat", "--ops", "A")[0] == 2
        assert run(capsys, "zeta", "--config", "flat", "--op", "Z", "--s", "0")[0] == 2
        assert run(capsys, "verify", "--config", "flat", "corollary")[0] == 2
        assert run(capsys, "verify", "--config", "flat", "equal-order", "--ops", "A,B,C")[0] == 2
        assert run(capsys, "symbolic", "--n", "1", "--trials", "5", "--seed", "1")[0] == 2
        assert run(capsys, "bogus")[0] == 2
        assert run(capsys, "zeta", "--config", "flat")[0] == 2

    def test_pole_is_usage_error(self, capsys):
        code, _, err = run(capsys, "zeta", "--config", "flat", "--op", "A", "--s", "1")
        assert code == 2 and "pole" in err

    def test_bad_config(self, capsys, tmp_path):
        path = write(tmp_path, '{"base": {"k0": 0,\n  "multiplicity": [1]}\n  "operators": []}')
        code, _, err = run(capsys, "det", "--config", path, "--op", "A")
        assert code == 2
        assert "line 3 column" in err

    def test_unknown_field(self, capsys, tmp_path):
        path = write(tmp_path, {**MINIMAL, "colour": "blue"})
        code, _, err = run(capsys, "det", "--config", path, "--op", "A")
        assert code == 2 and "colour" in err

    def test_continuation_failure(self, capsys):
        code, _, err = run(capsys, "det", "--config", "flat", "--op", "D", "--J", "3", "--prec-target", "1e-30")
        assert code == 3 and "continuation failed" in err

    def test_failed_check(self, capsys):
        # distinct shifts on the sphere have a real anomaly
        code, out, _ = run(capsys, "verify", "--config", "sphere", "zero-anomaly", "--ops", "A,C")
        assert code == 4 and "FAIL" in out
        code, _, _ = run(capsys, "verify", "--config", "sphere", "theorem", "--ops", "A,B,C", "--tol", "1e-30")
        assert code == 4

    def test_help(self, capsys):
        assert run(capsys, "--help")[0] == 0


class TestReports:
    def test_byte_identical_json(self, capsys):
        args = ["verify", "--config", "circle", "theorem", "--ops", "A,B,D", "--json"]
        first = run(capsys, *args)[1]
        second = run(capsys, *args)[1]
        assert first == second
        rep = json.loads(first)
        assert list(rep) == sorted(rep)
        assert "runtime_s" not in rep

    def test_symbolic_transcript_deterministic(self, capsys):
        args = ["symbolic", "--n", "5", "--trials", "8", "--seed", "42", "--json"]
        assert run(capsys, *args)[1] == run(capsys, *args)[1]

    def test_timing_opt_in(self, capsys):
        out = run(capsys, "det", "--config", "flat", "--op", "A", "--json", "--timing")[1]
        assert json.loads(out)["runtime_s"] >= 0

    def test_report_fields(self, capsys):
        rep = json.loads(run(capsys, "verify", "--config", "flat", "reduction", "--ops", "A,B,C", "--json")[1])
        assert set(rep) == {"command", "checks", "params", "seed"}
        (check,) = rep["checks"]
        assert set(check) >= {"identity", "residual", "tolerance", "pass"}

    def test_module_entry_point(self):
        proc = subprocess.run(
            [sys.executable, "-m", "zetadet", "zeta", "--config", "flat", "--op", "A", "--s", "0"],
            capture_output=True,
            text=True,
            check=False,
        )
        assert proc.returncode == 0
        assert proc.stdout.startswith("zeta_A(0) = 0")
