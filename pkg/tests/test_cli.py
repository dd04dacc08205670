import json
import subprocess
import sys
from fractions import Fraction

import pytest

from partzeta.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    return code, json.loads(out)


def test_partitions_count(capsys):
    code, data = run_json(capsys, "partitions", "10", "--count")
    assert code == 0 and data["count"] == 42


def test_partitions_listing(capsys):
    code, out, _ = run(capsys, "partitions", "5", "--class", "all;distinct")
    assert code == 0
    assert "count: 3" in out and "4 + 1" in out


def test_expand(capsys):
    code, data = run_json(capsys, "expand", "reciprocal", "--f", "const:1", "-N", "8")
    assert code == 0
    assert [Fraction(c) for c in data["series"]["coeffs"]] == [1, 1, 2, 3, 5, 7, 11, 15, 22]


def test_verify_five_forms_example(capsys):
    code, data = run_json(capsys, "verify", "five-forms", "--f", "pow:-2", "--q", "3/10", "--prec", "50")
    assert code == 0
    checks = data["suites"]["five-forms"]
    numeric = [c for c in checks if c["name"] == "five-forms-numeric"]
    assert numeric and "pairwise_deltas" in numeric[0]["report"]
    assert all(c["verdict"] != "disagree" for c in checks)


def test_zeta_fixed_length_example(capsys):
    code, data = run_json(capsys, "zeta", "--class", "all;len:2", "--s", "2", "--prec", "50")
    assert code == 0
    assert data["closed_form"] == {"rational": "7/360", "pi_power": 4}
    assert data["numeric"]["value"].startswith("1.8940")


def test_zeta_product(capsys):
    code, data = run_json(capsys, "zeta", "--class", "geq:2", "--s", "2")
    assert code == 0
    assert abs(float(data["numeric"]["value"]) - 2) <= float(data["numeric"]["tail_bound"])


def test_zeta_finite_exact(capsys):
    code, data = run_json(capsys, "zeta", "--class", "finite:2,3", "--s", "2")
    assert code == 0 and data["numeric"]["exact"] == "3/2"


def test_pi_example(capsys):
    code, data = run_json(capsys, "pi", "--m", "2", "--t", "1", "--N", "10000")
    assert code == 0
    assert data["closed_form"]["value"].startswith("1.570796326794896619231321691639751442098584699687")
    assert data["verdict"] == "agree"
    assert float(data["delta"]) < 1e-4


def test_mzv(capsys):
    code, data = run_json(capsys, "mzv", "--t", "1", "--k", "2")
    assert code == 0 and data["closed_form"]["rational"] == "1/120"


def test_etaq(capsys):
    code, data = run_json(capsys, "etaq", "--layer", "X=all;f=const:1;inner=-;exp=-1", "-N", "6")
    assert code == 0
    assert [Fraction(c) for c in data["series"]["coeffs"]] == [1, 1, 2, 3, 5, 7, 11]
    assert data["verdict"] == "agree"


def test_verify_only_subset(capsys):
    code, data = run_json(capsys, "verify", "--only", "doubling")
    assert code == 0 and list(data["suites"]) == ["doubling"]
    code, data = run_json(capsys, "verify", "--only", "golden,congruence")
    assert code == 0 and sorted(data["suites"]) == ["congruence", "golden"]


def test_verify_text_summary(capsys):
    code, out, _ = run(capsys, "verify", "congruence")
    assert code == 0 and "checks without disagreement" in out


def test_json_is_deterministic(capsys):
    argv = ("zeta", "--class", "geq:2", "--s", "3", "--json")
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second
    assert first == json.dumps(json.loads(first), sort_keys=True, indent=2) + "\n"


@pytest.mark.parametrize(
    "argv,token",
    [
        (("partitions", "5", "--class", "nonsense"), "nonsense"),
        (("expand", "4", "--f", "wiggle:3"), "wiggle"),
        (("zeta", "--class", "geq:x", "--s", "2"), "geq:x"),
        (("etaq", "--layer", "X=all;inner=*"), "*"),
    ],
)
def test_grammar_errors_name_token(capsys, argv, token):
    code, _, err = run(capsys, *argv)
    assert code == 1
    assert "offending token" in err and token in err


def test_usage_errors(capsys):
    assert run(capsys, "verify", "no-such-suite")[0] == 1
    assert run(capsys, "verify", "--only", "no-such-suite")[0] == 1
    assert run(capsys, "pi", "--m", "1")[0] == 1
    for argv in (["frobnicate"], ["partitions", "5", "-N", "-3"], ["zeta", "--s", "2", "--prec", "3"]):
        with pytest.raises(SystemExit) as info:
            main(argv)
        assert info.value.code == 1


def test_divergent_query_is_usage_error(capsys):
    code, _, err = run(capsys, "zeta", "--class", "all", "--s", "2")
    assert code == 1 and "diverge" in err


def test_disagreement_exits_two(capsys, monkeypatch):
    from partzeta import cli
    from partzeta.report import CheckResult

    monkeypatch.setitem(cli.HANDLERS, "etaq", lambda args, ctx: ({"x": 1}, [CheckResult("forced", "disagree")]))
    assert run(capsys, "etaq", "--layer", "X=all")[0] == 2


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "partzeta", "partitions", "6", "--count"], capture_output=True, text=True)
    assert proc.returncode == 0 and "11" in proc.stdout


def test_verify_all_default_run(capsys):
    code, data = run_json(capsys, "verify", "all")
    assert code == 0
    verdicts = [c["verdict"] for cs in data["suites"].values() for c in cs]
    assert len(data["suites"]) == 12 and "disagree" not in verdicts
