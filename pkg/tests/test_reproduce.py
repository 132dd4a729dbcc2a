import pytest

from bullygame import reproduce as repro


def statuses(rep):
    return {c.name: c.status for c in rep.checks}


def test_attrition_case():
    (rep,) = repro.run("attrition")
    assert statuses(rep)["stage III Nash set"] == repro.MATCH
    assert not rep.failed


def test_high_case_at_ten():
    (rep,) = repro.run("high", 10)
    s = statuses(rep)
    assert s["Nash set against doubly marked cells"] == repro.MATCH
    assert s["every SPNE ends in (E, W)"] == repro.MATCH
    assert s["stage I critical point at a=10"] == repro.DISCREPANCY
    assert not rep.failed


def test_baseline_case():
    (rep,) = repro.run("baseline")
    s = statuses(rep)
    assert s["Nash set against doubly marked cells"] == repro.MATCH
    assert s["Nash set against the running text"] == repro.DISCREPANCY
    assert s["SPNE set against the running text"] == repro.DISCREPANCY
    spne = next(c for c in rep.checks if c.name == "SPNE set against the running text")
    assert spne.derived == {("IR", "Er"), ("ED", "Wd")}
    assert spne.published == {("ER", "Er"), ("ED", "Ed")}


def test_critical_point_audit_prints_both_values():
    (rep,) = repro.run("low")
    text = repro.render([rep])
    s = statuses(rep)
    assert s["critical point radicand at a=0.4"] == repro.MATCH
    assert s["critical point radicand at a=0.9"] == repro.MATCH
    for a in ("0.4", "0.9"):
        assert s[f"critical point location at a={a}"] == repro.DISCREPANCY
        assert s[f"critical value at a={a}"] == repro.DISCREPANCY
    assert "published: 0.279" in text and "derived:   0.243432" in text
    assert "published: -0.086" in text and "derived:   -0.219089" in text


@pytest.mark.parametrize("case, a", [("low", 0.4), ("low", 0.89), ("low", 0.9), ("high", 0.95), ("high", 5)])
def test_overrides_never_mismatch(case, a):
    (rep,) = repro.run(case, a)
    assert not rep.failed, repro.render([rep])


def test_unaudited_difference_is_a_mismatch():
    rep = repro.CaseReport("x", 0)
    rep.add("thing", "published", 1, 2, audited=3)
    assert rep.failed


def test_bad_case_levels():
    with pytest.raises(ValueError):
        repro.run("low", 2)
    with pytest.raises(ValueError):
        repro.run("baseline", 0.5)
