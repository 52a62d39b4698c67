"""End-to-end acceptance grid.

Each ``criterion_N`` returns ``(ok, detail)``; the pytest wrappers print one
``ACCEPTANCE N PASS|FAIL`` line each and then assert.  Run this file directly
to get just the eleven lines.
"""
import itertools
import sys
import time
from fractions import Fraction

import pytest

from dworkhyp.char_sums import (
    HgfSpec,
    gauss_product_reports,
    gauss_sum,
    greene_2f1_alt,
    greene_hgf,
    hasse_davenport_pairs,
    helversen_pasotto_reports,
)
from dworkhyp.approx import choose_precision
from dworkhyp.dwork import (
    CongruenceOptions,
    DworkParams,
    coset_closed_forms,
    congruence_suite,
    count_general_greene,
    count_k3_greene,
    count_k3_padic,
    count_koblitz,
    count_naive,
)
from dworkhyp.finite_field import all_generators, all_irreducible_moduli, build_field
from dworkhyp.padic import gamma_p, mccarthy_G, reflection_sign

PRIME_POWERS = {25: (5, 2), 49: (7, 2), 9: (3, 2)}


def field(q):
    return build_field(*PRIME_POWERS.get(q, (q, 1)))


def _tally(results):
    bad = [r for r in results if not r[0]]
    return not bad, f"{len(results) - len(bad)}/{len(results)} instances" + (f"; first failure {bad[0][1]}" if bad else "")


def criterion_1():
    out = []
    for q in (5, 13, 17, 25, 29, 37, 49):
        F = field(q)
        for lam in range(1, q):
            a, b = count_k3_greene(lam, F), count_naive(DworkParams(4, lam, F))
            out.append((a == b, (q, lam, a, b)))
    return _tally(out)


def criterion_2():
    out = []
    for d, q in ((4, 5), (4, 13), (3, 7), (3, 13), (5, 11)):
        F = field(q)
        for lam in range(1, q):
            n, residual, _ = count_koblitz(DworkParams(d, lam, F), return_residual=True)
            naive = count_naive(DworkParams(d, lam, F))
            out.append((n == naive and residual < 1e-6, (d, q, lam, n, naive, residual)))
    return _tally(out)


def criterion_3():
    out = []
    for p in (3, 7, 11, 19, 23):
        F = field(p)
        for lam in range(1, p):
            naive = count_naive(DworkParams(4, lam, F))
            for k in (1, 2, 3):
                v = count_k3_padic(lam, p, k)
                out.append((v.residue == naive % p**k, (p, lam, k)))
    return _tally(out)


def criterion_4():
    out = []
    for p in (5, 13, 17, 29):
        F = field(p)
        for lam in range(1, p):
            naive = count_naive(DworkParams(4, lam, F))
            greene = count_k3_greene(lam, F)
            for k in (1, 2):
                v = count_k3_padic(lam, p, k).residue
                m = p**k
                out.append((v == naive % m and v == greene % m, (p, lam, k)))
    return _tally(out)


def _suite(primes, theorems):
    reports = []
    for p in primes:
        reports.extend(congruence_suite(p, CongruenceOptions(theorems=theorems)))
    seen = {r.theorem for r in reports}
    missing = set(theorems) - seen
    ok, detail = _tally([(r.status == "pass", (r.theorem, r.params)) for r in reports])
    if missing:
        return False, f"no instances for {sorted(missing)}"
    return ok, detail


def criterion_5():
    return _suite((5, 13, 17), ("3.1", "3.2", "3.3", "3.4"))


def criterion_6():
    return _suite((5, 13, 17, 29), ("1.4", "7.1-lemma"))


def criterion_7():
    out = []
    branches = set()
    for q in (5, 13, 17):
        F = field(q)
        for lam in range(1, q):
            branches.add(F.pow(lam, 4) == 1)
            for r in coset_closed_forms(F, lam):
                out.append((r.status == "pass", (r.theorem, r.params, r.discrepancy)))
    ok, detail = _tally(out)
    return ok and branches == {True, False}, detail


def criterion_8():
    out = []
    for q in (13, 25):
        F = field(q)
        prec = choose_precision(q)
        for m in (2, 3, 4):
            pairs = hasse_davenport_pairs(F, m, prec)
            out.extend((l.close_to(r), ("hasse-davenport", q, m)) for l, r in pairs)
        for r in gauss_product_reports(F, prec):
            out.append((r.status == "pass", ("2.6", r.params)))
        for k in range(1, q - 1):
            out.append((gauss_sum(F, k, prec=prec).abs2().close_to(q), ("norm", q, k)))
    for q in (5, 13):
        F = field(q)
        for r in helversen_pasotto_reports(F, choose_precision(q)):
            out.append((r.status == "pass", ("helversen-pasotto", r.params)))
    return _tally(out)


def criterion_9():
    out = []
    for d, q in ((3, 7), (3, 13), (5, 11)):
        F = field(q)
        for lam in range(1, q):
            r = count_general_greene(d, lam, F)
            out.append((r.status == "pass", (d, q, lam, r.lhs, r.rhs)))
    return _tally(out)


def criterion_10():
    reports = []
    for p in (3, 7, 13, 17, 23):
        reports.extend(congruence_suite(p, CongruenceOptions(theorems=("conj8.2",), conj_d=5)))
    reports.extend(congruence_suite(11, CongruenceOptions(theorems=("conj8.4",), conj_d=5)))
    expected = sum(p - 1 for p in (3, 7, 13, 17, 23)) + 10
    ok, detail = _tally([(r.status == "conjecture" and r.outcome == "pass", (r.theorem, r.params)) for r in reports])
    return ok and len(reports) == expected, detail


def criterion_11():
    out = []
    # generator invariance
    for p in (5, 13):
        base = field(p)
        ref = [count_k3_greene(lam, base) for lam in range(1, p)]
        for g in all_generators(base):
            F = build_field(p, generator=(g,))
            out.append(([count_k3_greene(lam, F) for lam in range(1, p)] == ref, ("generator", p, g)))
            out.append((count_general_greene(4, 2, F, naive=ref[1]).status == "pass", ("generator-8.1", p, g)))
    # modulus invariance
    for p, e in ((3, 2), (5, 2)):
        fields = [build_field(p, e, modulus=m) for m in all_irreducible_moduli(p, e)]
        for n in range(1, p):
            counts = {count_k3_greene(F.from_int(n), F) for F in fields}
            out.append((len(counts) == 1, ("modulus", p, e, n)))
    # Gamma_p reflection and continuity
    for p in (3, 5, 7, 11, 13):
        for k in (1, 2, 3):
            for num in range(-12, 13):
                for den in (1, 2, 3, 4, 5, 6, 7, 8):
                    if den % p == 0:
                        continue
                    x = Fraction(num, den)
                    prod = gamma_p(x, p, k) * gamma_p(1 - x, p, k)
                    out.append((prod.residue == reflection_sign(x, p) % p**k, ("reflection", p, k, x)))
                    out.append((gamma_p(x + p**k, p, k) == gamma_p(x, p, k), ("continuity", p, k, x)))
    # nGn precision soundness
    upper, lower = [Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)], [0, 0, 0]
    for p in (3, 5, 7, 11, 13):
        for t in range(1, p):
            for k in (1, 2):
                ok = mccarthy_G(upper, lower, t, p, k + 1).reduce(k) == mccarthy_G(upper, lower, t, p, k)
                out.append((ok, ("nGn", p, t, k)))
    # 2F1 dual definition
    for q in (5, 7, 9):
        F = field(q)
        xs = range(q) if q == 5 else (F.generator_index, F.minus_one)
        for A, B, C in itertools.product(range(q - 1), repeat=3):
            for x in xs:
                ok = greene_hgf(F, HgfSpec((A, B), (C,), x)) == greene_2f1_alt(F, A, B, C, x)
                out.append((ok, ("2F1", q, A, B, C, x)))
    return _tally(out)


CRITERIA = {n: globals()[f"criterion_{n}"] for n in range(1, 12)}


def report_line(n):
    start = time.perf_counter()
    ok, detail = CRITERIA[n]()
    elapsed = time.perf_counter() - start
    return ok, f"ACCEPTANCE {n:>2} {'PASS' if ok else 'FAIL'}  {detail}  ({elapsed:.1f}s)"


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_acceptance(n, capsys):
    ok, line = report_line(n)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [report_line(n) for n in sorted(CRITERIA)]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
