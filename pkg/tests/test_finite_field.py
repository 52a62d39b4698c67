import pytest
from hypothesis import given, settings, strategies as st

from dworkhyp.finite_field import (
    all_generators,
    all_irreducible_moduli,
    build_field,
    cache_file,
    is_irreducible,
    smallest_irreducible,
)

FIELDS = [(3, 1), (5, 1), (13, 1), (3, 2), (5, 2), (7, 2), (3, 3)]


@pytest.fixture(scope="module", params=FIELDS, ids=lambda pe: f"F{pe[0]}^{pe[1]}")
def F(request):
    return build_field(*request.param)


def test_default_moduli_and_generators():
    assert smallest_irreducible(3, 2) == (1, 0, 1)
    assert smallest_irreducible(5, 2) == (1, 1, 1)
    F9 = build_field(3, 2)
    assert F9.modulus == (1, 0, 1)
    assert F9.generator.coeffs == (1, 1)
    assert build_field(5).generator_index == 2
    assert build_field(13).generator_index == 2
    assert build_field(7).generator_index == 3


def test_construction_is_deterministic():
    a, b = build_field(5, 2), build_field(5, 2)
    assert a.modulus == b.modulus
    assert (a.log == b.log).all()


@pytest.mark.parametrize("p,e", [(4, 1), (2, 3), (9, 1), (1, 1)])
def test_rejects_bad_characteristic(p, e):
    with pytest.raises(ValueError):
        build_field(p, e)


def test_size_bound():
    with pytest.raises(ValueError):
        build_field(101, 2, max_q=10_000)


def test_reducible_modulus_rejected():
    with pytest.raises(ValueError):
        build_field(5, 2, modulus=(4, 0, 1))  # x^2 - 1


def test_non_generator_rejected():
    with pytest.raises(ValueError):
        build_field(5, generator=(4,))


def test_generator_has_full_order(F):
    g = F.generator_index
    seen = {F.pow(g, k) for k in range(F.q - 1)}
    assert len(seen) == F.q - 1 and 0 not in seen


def test_log_exp_inverse(F):
    for x in range(1, F.q):
        assert F.exp[F.log[x]] == x
        assert F.pow(F.generator_index, F.dlog(x)) == x


def test_minus_one(F):
    m = F.minus_one
    assert F.add(m, 1) == 0
    assert F.dlog(m) == (F.q - 1) // 2


def test_frobenius_fixes_prime_field(F):
    for n in range(F.p):
        assert F.pow(F.from_int(n), F.p) == F.from_int(n)
    for x in range(F.q):
        assert F.pow(x, F.q) == x


def test_trace_properties(F):
    for x in range(F.q):
        t = F.trace(x)
        assert 0 <= t < F.p
        assert F.trace(F.pow(x, F.p)) == t
    # trace is onto F_p and balanced
    counts = [0] * F.p
    for x in range(F.q):
        counts[F.trace(x)] += 1
    assert counts == [F.q // F.p] * F.p


def test_vectorised_matches_scalar(F):
    import numpy as np

    a = np.arange(F.q)
    b = (a * 7 + 3) % F.q
    assert [F.add(int(x), int(y)) for x, y in zip(a, b)] == F.add_arrays(a, b).tolist()
    assert [F.mul(int(x), int(y)) for x, y in zip(a, b)] == F.mul_arrays(a, b).tolist()
    assert [F.pow(int(x), 4) for x in a] == F.pow_array(4).tolist()


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(FIELDS), st.data())
def test_field_axioms(pe, data):
    F = build_field(*pe)
    el = st.integers(0, F.q - 1)
    x, y, z = data.draw(el), data.draw(el), data.draw(el)
    X, Y, Z = F.element(x), F.element(y), F.element(z)
    assert (X + Y) + Z == X + (Y + Z)
    assert (X * Y) * Z == X * (Y * Z)
    assert X * (Y + Z) == X * Y + X * Z
    assert X - X == 0 and X + (-X) == 0
    if x:
        assert X / X == 1
        assert F.mul(x, F.inv(x)) == 1


def test_moduli_enumeration():
    mods = all_irreducible_moduli(3, 2)
    assert len(mods) == 3  # (9 - 3) / 2 monic irreducible quadratics
    assert all(is_irreducible(list(m), 3) for m in mods)
    assert len(all_irreducible_moduli(5, 2)) == 10


def test_generator_enumeration():
    assert len(all_generators(build_field(13))) == 4  # phi(12)
    assert len(all_generators(build_field(3, 2))) == 4  # phi(8)


def test_cache_round_trip(tmp_path):
    F = build_field(5, 2, cache_dir=tmp_path)
    path = cache_file(tmp_path, 5, 2, F.modulus)
    assert path.exists()
    G = build_field(5, 2, cache_dir=tmp_path)
    assert (G.log == F.log).all() and G.generator_index == F.generator_index


def test_corrupt_cache_is_rebuilt(tmp_path):
    F = build_field(7, 2, cache_dir=tmp_path)
    path = cache_file(tmp_path, 7, 2, F.modulus)
    path.write_bytes(b"junk")
    G = build_field(7, 2, cache_dir=tmp_path)
    assert (G.log == F.log).all()
