from k2lab.report import CheckReport
from k2lab.suites import DEFAULT_FUEL, SUITES, run_suite


def test_every_suite_maps_to_an_acceptance_row():
    assert {row for _fn, row in SUITES.values()} == set(range(1, 12))
    assert DEFAULT_FUEL == {"fclaim": 10**6}


def test_suites_are_deterministic():
    a = [r.line() for r in run_suite("k-axiom", samples=20, seed=4)]
    b = [r.line() for r in run_suite("k-axiom", samples=20, seed=4)]
    assert a == b


def test_model_selection():
    (rep,) = run_suite("s-axiom", samples=10, model="k2p")
    assert rep.name == "k2p:s-axiom" and rep.tested == 10


def test_report_status():
    r = CheckReport("x", tested=3)
    assert r.status() == 0 and r.passed
    r.inconclusive = 1
    assert r.status() == 2 and r.status(allow_inconclusive=True) == 0 and not r.passed
    r.fail("boom")
    assert r.status(allow_inconclusive=True) == 1
    merged = CheckReport("y", tested=2).merge(r)
    assert merged.tested == 5 and merged.failures == [("boom",)]
    assert "FAIL" in merged.line()
