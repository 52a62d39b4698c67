import itertools
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from dworkhyp.approx import ComplexApprox
from dworkhyp.char_sums import (
    HgfSpec,
    char_at_minus_one,
    char_value,
    gauss_sum,
    greene_2f1_alt,
    greene_binomial,
    greene_hgf,
    hasse_davenport_pairs,
    identity_suite,
    jacobi_sum,
    jacobi_via_gauss,
)
from dworkhyp.cyclotomic import cyclo_context
from dworkhyp.finite_field import build_field

F5 = build_field(5)
F13 = build_field(13)


def test_character_values():
    K = cyclo_context(4)
    assert char_value(F5, 1, 4) == K.rational(-1)
    assert char_value(F5, 1, 0) == 0
    assert char_value(F5, 0, 0) == 0  # trivial character also vanishes at 0
    assert char_value(F5, 1, 2) == K.zeta()
    for q in (5, 7, 9, 13):
        F = build_field(*{9: (3, 2)}.get(q, (q, 1)))
        for k in range(F.q - 1):
            assert char_value(F, k, F.minus_one) == char_at_minus_one(F, k)


def test_jacobi_goldens():
    K = cyclo_context(4)
    assert jacobi_sum(F5, (0, 0)) == 3
    # J(T, T) at q = 5 with T(2) = i
    assert jacobi_sum(F5, (1, 1)) == K.rational(-1) - 2 * K.zeta()
    for F in (F5, F13):
        for k in range(1, F.q - 1):
            assert jacobi_sum(F, (k, -k)) == -char_at_minus_one(F, k)


def test_binomial_golden():
    assert greene_binomial(F5, 1, 0) == Fraction(-1, 5)
    # binom(A, eps) = -1/q for nontrivial A and binom(A, A) = -1/q + (q-1)/q delta(A)
    for a in range(1, 12):
        assert greene_binomial(F13, a, 0) == Fraction(-1, 13)


def test_gauss_sum_of_quadratic_character():
    g = gauss_sum(F5, 2)
    assert (g * g).close_to(5)
    g13 = gauss_sum(F13, 6)
    assert (g13 * g13).close_to(13)
    assert gauss_sum(F5, 0).close_to(-1)


def test_exact_gauss_backend_matches_approx():
    for k in range(4):
        exact = gauss_sum(F5, k, backend="exact")
        assert exact.to_complex().close_to(gauss_sum(F5, k), 1e-25)
    g = gauss_sum(F5, 1, backend="exact")
    assert g * g.conjugate() == 5


@pytest.mark.parametrize("q", [5, 7, 9, 13])
def test_jacobi_direct_and_recursive_agree(q):
    F = build_field(*{9: (3, 2)}.get(q, (q, 1)))
    n = q - 1
    for ks in itertools.product(range(n), repeat=3):
        assert jacobi_sum(F, ks, "direct") == jacobi_sum(F, ks, "recursive")


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([5, 13, 17, 25]), st.data())
def test_jacobi_gauss_quotient(q, data):
    F = build_field(*{25: (5, 2)}.get(q, (q, 1)))
    n = q - 1
    ks = data.draw(st.lists(st.integers(1, n - 1), min_size=2, max_size=4))
    if sum(ks) % n == 0:
        return
    exact = jacobi_sum(F, ks)
    assert exact.to_complex().close_to(jacobi_via_gauss(F, ks), 1e-20)


@settings(max_examples=80, deadline=None)
@given(st.sampled_from([5, 7, 13, 9, 25]), st.data())
def test_gauss_norm_and_reflection(q, data):
    F = build_field(*{9: (3, 2), 25: (5, 2)}.get(q, (q, 1)))
    k = data.draw(st.integers(1, q - 2))
    g, gbar = gauss_sum(F, k), gauss_sum(F, -k)
    assert g.abs2().close_to(q)
    assert (g * gbar).close_to(char_at_minus_one(F, k) * q)
    assert g.conjugate().close_to(gbar * char_at_minus_one(F, k))


def test_dual_definition_exhaustive_q5():
    for A, B, C in itertools.product(range(4), repeat=3):
        for x in range(5):
            assert greene_hgf(F5, HgfSpec((A, B), (C,), x)) == greene_2f1_alt(F5, A, B, C, x)


@pytest.mark.parametrize("q", [7, 9, 13])
def test_dual_definition_at_generator(q):
    F = build_field(*{9: (3, 2)}.get(q, (q, 1)))
    g = F.generator_index
    for A, B, C in itertools.product(range(q - 1), repeat=3):
        assert greene_hgf(F, HgfSpec((A, B), (C,), g)) == greene_2f1_alt(F, A, B, C, g)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([17, 25, 29]), st.data())
def test_dual_definition_random(q, data):
    F = build_field(*{25: (5, 2)}.get(q, (q, 1)))
    A, B, C = (data.draw(st.integers(0, q - 2)) for _ in range(3))
    x = data.draw(st.integers(0, q - 1))
    assert greene_hgf(F, HgfSpec((A, B), (C,), x)) == greene_2f1_alt(F, A, B, C, x)


def test_hgf_at_zero_is_zero():
    assert greene_hgf(F13, HgfSpec((3, 6, 9), (0, 0), 0)) == 0


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([5, 13]), st.data())
def test_hgf_denominator_bound(q, data):
    F = build_field(q)
    n = q - 1
    up = tuple(data.draw(st.integers(0, n - 1)) for _ in range(3))
    lo = tuple(data.draw(st.integers(0, n - 1)) for _ in range(2))
    x = data.draw(st.integers(1, q - 1))
    v = greene_hgf(F, HgfSpec(up, lo, x))
    assert (q**2 * (q - 1)) % v.den == 0


def test_3f2_denominator_exceeds_q_times_q_minus_one():
    # a 3F2 value whose reduced denominator does not divide q(q-1)
    v = greene_hgf(F5, HgfSpec((1, 1, 1), (0, 0), F5.generator_index))
    assert (5 * 4) % v.den != 0 and (25 * 4) % v.den == 0


def test_hgf_spec_validation():
    with pytest.raises(ValueError):
        HgfSpec((1, 2), (0, 0))


@pytest.mark.parametrize("q", [5, 13])
def test_identity_suite_passes(q):
    reports = identity_suite(build_field(q))
    names = {r.theorem for r in reports}
    assert {"gauss-norm", "hasse-davenport", "helversen-pasotto", "2.6", "2.4"} <= names
    bad = [r for r in reports if r.status != "pass"]
    assert not bad, bad


def test_identity_suite_prime_power():
    reports = identity_suite(build_field(3, 2), helversen_pasotto=False)
    assert all(r.status == "pass" for r in reports)


def test_hasse_davenport_needs_divisibility():
    with pytest.raises(ValueError):
        hasse_davenport_pairs(F5, 3, 100)


def test_hasse_davenport_pair_count():
    pairs = hasse_davenport_pairs(F13, 3, 120)
    assert len(pairs) == 2 * 12
    assert all(l.close_to(r) for l, r in pairs)


def test_complex_approx_rounding_gate():
    from dworkhyp.approx import PrecisionError

    x = ComplexApprox.exact(Fraction(7, 2))
    with pytest.raises(PrecisionError):
        x.nearest_integer()
    assert ComplexApprox.exact(5).nearest_integer() == 5
