import pytest

from dworkhyp.dwork import (
    CONJ_SIGN,
    CongruenceOptions,
    congruence_suite,
    conjecture_point_count,
    conjecture_trace_period,
)

CORE = ("3.1", "3.2", "3.3", "3.4", "1.4", "7.1-lemma", "bridge")


@pytest.mark.parametrize("p", [5, 13, 17])
def test_core_congruences_pass(p):
    reports = congruence_suite(p, CongruenceOptions(theorems=CORE))
    assert {r.theorem for r in reports} == set(CORE)
    bad = [r for r in reports if r.status != "pass"]
    assert not bad, bad[:3]


def test_three_one_covers_every_divisor():
    reports = congruence_suite(13, CongruenceOptions(theorems=("3.1",)))
    pairs = {(r.params["m"], r.params["d"]) for r in reports}
    assert pairs == {(m, d) for d in (2, 3, 4, 6) for m in range(1, d)}
    assert len(reports) == len(pairs) * 12


def test_quartic_congruences_skip_p_three_mod_four():
    reports = congruence_suite(7, CongruenceOptions(theorems=("3.4", "1.4", "bridge")))
    assert reports == []


def test_lambda_subset():
    reports = congruence_suite(13, CongruenceOptions(theorems=("1.4",), lambdas=(2, 5)))
    assert [r.params["lambda"] for r in reports] == [2, 5]


def test_pochhammer_identity_inside_suite():
    reports = congruence_suite(5, CongruenceOptions(theorems=("2.8",)))
    failed = {(r.params["m"], r.params["d"], r.params["j"]) for r in reports if r.status == "fail"}
    # failures are confined to m > d/2, (d-m)t < j
    assert failed == {(3, 4, 2), (3, 4, 3)}


@pytest.mark.parametrize("p", [3, 7, 13])
def test_conjecture_point_count(p):
    reports = conjecture_point_count(5, p, 2, None)
    assert len(reports) == p - 1
    assert all(r.status == "conjecture" for r in reports)
    assert all(r.outcome == "pass" for r in reports)


def test_conjecture_sign_convention():
    assert CONJ_SIGN == -1
    reports = conjecture_point_count(5, 7, 1, None)
    # the opposite sign fails somewhere, so the sign is not vacuous
    assert not all(r.extra["opposite_sign_holds"] for r in reports)


def test_conjecture_trace_period():
    reports = conjecture_trace_period(5, 11, None)
    assert len(reports) == 10
    assert all(r.status == "conjecture" and r.outcome == "pass" for r in reports)


def test_conjecture_routing():
    assert congruence_suite(11, CongruenceOptions(theorems=("conj8.2",))) == []
    assert congruence_suite(7, CongruenceOptions(theorems=("conj8.4",))) == []
    assert congruence_suite(11, CongruenceOptions(theorems=("conj8.4",)))
