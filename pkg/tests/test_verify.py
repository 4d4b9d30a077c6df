import pytest

from jbmaslov import cli, verify
from jbmaslov.errors import InputError
from jbmaslov.verify import SUITES, SuiteResult, run_suite


@pytest.mark.parametrize("name", sorted(SUITES))
def test_suites_pass(name):
    res = run_suite(name, seed=11, count=8)
    assert res.passed, res.failures
    assert res.cases == 8


def test_suites_are_deterministic():
    a = run_suite("perturbation", seed=5, count=10)
    b = run_suite("perturbation", seed=5, count=10)
    assert a == b


def test_unknown_suite_and_bad_count():
    with pytest.raises(InputError):
        run_suite("nope")
    with pytest.raises(InputError):
        run_suite("axioms", count=0)


def test_failures_are_reported(monkeypatch, capsys):
    def broken(seed, count):
        res = SuiteResult("axioms", cases=count)
        res.fail(3, "residual too large")
        return res

    monkeypatch.setitem(verify.SUITES, "axioms", broken)
    code = cli.main(["verify", "axioms", "--count", "4"])
    out = capsys.readouterr().out
    assert code == 1
    assert "FAIL axioms: 3/4" in out and "case 3: residual too large" in out
