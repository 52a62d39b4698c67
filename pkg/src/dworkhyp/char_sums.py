"""Multiplicative characters, Gauss and Jacobi sums, and Greene's
hypergeometric functions over a ``FieldContext``.

Characters are exponents ``k`` mod ``q - 1``: ``T^k(x) = zeta_{q-1}^{k dlog x}``
with ``T^k(0) = 0`` for every ``k`` (the trivial character included).

Exact values live in Q(zeta_{q-1}) and are accumulated in the group ring
``Z[x]/(x^{q-1} - 1)`` as integer vectors; Gauss sums need zeta_p as well and
default to the ``ComplexApprox`` backend.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import mpmath
import numpy as np

from .approx import ComplexApprox, PrecisionError, approx_sum, choose_precision  # noqa: F401
from .cyclotomic import CycloNumber, cyclo_context, euler_phi
from .finite_field import FieldContext
from .report import VerificationReport

EXACT_GAUSS_MAX_PHI = 4096


# --- characters -------------------------------------------------------------


def char_exponent(ctx: FieldContext, k: int, x: int):
    """Exponent ``e`` with ``T^k(x) = zeta_{q-1}^e``, or ``None`` when ``x = 0``."""
    if x == 0:
        return None
    return (k * ctx.dlog(x)) % (ctx.q - 1)


def char_value(ctx: FieldContext, k: int, x) -> CycloNumber:
    cyc = cyclo_context(ctx.q - 1)
    e = char_exponent(ctx, k, ctx.index(x))
    return cyc.zero() if e is None else cyc.zeta(e)


def char_at_minus_one(ctx: FieldContext, k: int) -> int:
    """``T^k(-1) = (-1)^k``, since ``-1 = g^{(q-1)/2}``."""
    return -1 if k % 2 else 1


def char_sign(ctx: FieldContext, k: int, x: int) -> int:
    """Value of a character known to be real (order 1 or 2) at ``x``, as an int."""
    e = char_exponent(ctx, k, x)
    if e is None:
        return 0
    if e == 0:
        return 1
    if 2 * e == ctx.q - 1:
        return -1
    raise ValueError(f"T^{k}({x}) is not real")


def _cyclic_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    n = len(a)
    full = np.convolve(a, b)
    out = full[:n].copy()
    out[: n - 1] += full[n:]
    return out


def _rotate(vec: np.ndarray, m: int) -> np.ndarray:
    """Multiply a group-ring vector by ``zeta^m``."""
    return np.roll(vec, m % len(vec))


def _sparse_vec(n: int, exponents) -> np.ndarray:
    return np.bincount(np.asarray(exponents, dtype=np.int64) % n, minlength=n).astype(object)


# --- Gauss sums ------------------------------------------------------------


@lru_cache(maxsize=64)
def _gauss_exponent_histogram(ctx: FieldContext, k: int) -> np.ndarray:
    """Histogram over ``Z/p(q-1)`` of ``k p dlog(x) + (q-1) tr(x)`` for ``x != 0``."""
    q, p = ctx.q, ctx.p
    xs = np.arange(1, q)
    expo = (k % (q - 1)) * p * ctx.log[xs] + (q - 1) * ctx.trace_table[xs]
    return np.bincount(expo % (p * (q - 1)), minlength=p * (q - 1))


@lru_cache(maxsize=4096)
def _gauss_approx(ctx: FieldContext, k: int, prec: int) -> ComplexApprox:
    hist = _gauss_exponent_histogram(ctx, k % (ctx.q - 1))
    N = len(hist)
    terms = [ComplexApprox.root_of_unity(N, m, prec) * int(c) for m, c in enumerate(hist) if c]
    return approx_sum(terms, prec)


def gauss_sum(ctx: FieldContext, k: int, backend: str = "approx", prec: int = None):
    """``g(T^k) = sum_x T^k(x) zeta_p^{tr x}``; ``g(trivial) = -1``.

    ``backend="approx"`` returns a ``ComplexApprox``; ``backend="exact"``
    returns a ``CycloNumber`` in Q(zeta_{p(q-1)}), allowed only when
    ``phi(p(q-1))`` is at most ``EXACT_GAUSS_MAX_PHI``.
    """
    k %= ctx.q - 1
    if backend == "approx":
        return _gauss_approx(ctx, k, prec or choose_precision(ctx.q))
    if backend == "exact":
        N = ctx.p * (ctx.q - 1)
        if euler_phi(N) > EXACT_GAUSS_MAX_PHI:
            raise ValueError(f"exact Gauss sums need phi({N}) <= {EXACT_GAUSS_MAX_PHI}")
        return cyclo_context(N, EXACT_GAUSS_MAX_PHI).from_group_ring(
            _gauss_exponent_histogram(ctx, k).astype(object)
        )
    raise ValueError(f"unknown backend {backend!r}")


# --- Jacobi sums -----------------------------------------------------------


@lru_cache(maxsize=32)
def _jacobi_tables(ctx: FieldContext):
    """dlog(x) and dlog(1 - x) for x outside {0, 1}."""
    xs = np.arange(ctx.q)
    one_minus = np.array([ctx.sub(1, int(x)) for x in xs], dtype=np.int64)
    keep = (xs != 0) & (one_minus != 0)
    return ctx.log[xs[keep]], ctx.log[one_minus[keep]]


@lru_cache(maxsize=8192)
def _jacobi2_vec(ctx: FieldContext, a: int, b: int) -> np.ndarray:
    n = ctx.q - 1
    lx, l1x = _jacobi_tables(ctx)
    return _sparse_vec(n, (a % n) * lx + (b % n) * l1x)


def _jacobi3_direct_vec(ctx: FieldContext, a: int, b: int, c: int) -> np.ndarray:
    """Direct sum over ``x1 + x2 + x3 = 1`` (vectorised over x2)."""
    n, q = ctx.q - 1, ctx.q
    x1 = np.arange(1, q)
    total = np.zeros(n, dtype=object)
    for x2 in range(1, q):
        s = ctx.sub(1, x2)
        x3 = ctx.add_arrays(np.full_like(x1, s), ctx.mul_arrays(np.full_like(x1, ctx.minus_one), x1))
        ok = x3 != 0
        expo = a * ctx.log[x1[ok]] + b * ctx.log[x2] + c * ctx.log[x3[ok]]
        total += _sparse_vec(n, expo)
    return total


def _jacobi_recursive_vec(ctx: FieldContext, ks: tuple) -> np.ndarray:
    """Recursion on the last variable.

    ``J(k_1..k_n) = J(k_1 + .. + k_{n-1}, k_n) J(k_1..k_{n-1}) + Z(k_1..k_{n-1})``
    where ``Z`` sums over ``x_1 + .. + x_{n-1} = 0``; with every character
    vanishing at 0, ``Z(k_1..k_m) = (q-1) prod_{i<m} T^{k_i}(-1) J(k_1..k_{m-1})``
    when the product of all ``m`` characters is trivial, else 0 (and 0 for m = 1).
    """
    n = ctx.q - 1
    if len(ks) == 1:
        out = np.zeros(n, dtype=object)
        out[0] = 1
        return out
    head = ks[:-1]
    first = _cyclic_mul(_jacobi2_vec(ctx, sum(head) % n, ks[-1]), _jacobi_recursive_vec(ctx, head))
    m = len(head)
    if m >= 2 and sum(head) % n == 0:
        sign = 1
        for k in head[:-1]:
            sign *= char_at_minus_one(ctx, k)
        first = first + sign * (ctx.q - 1) * _jacobi_recursive_vec(ctx, head[:-1])
    return first


def jacobi_vector(ctx: FieldContext, ks: Sequence[int], method: str = "auto") -> np.ndarray:
    ks = tuple(k % (ctx.q - 1) for k in ks)
    if len(ks) < 2:
        raise ValueError("a Jacobi sum needs at least two characters")
    if method == "auto":
        method = "direct" if len(ks) <= 3 else "recursive"
    if method == "direct":
        if len(ks) == 2:
            return _jacobi2_vec(ctx, *ks).copy()
        if len(ks) == 3:
            return _jacobi3_direct_vec(ctx, *ks)
        raise ValueError("direct summation is implemented for at most three characters")
    if method == "recursive":
        return _jacobi_recursive_vec(ctx, ks)
    raise ValueError(f"unknown method {method!r}")


def jacobi_sum(ctx: FieldContext, chis: Sequence[int], method: str = "auto") -> CycloNumber:
    """``J(T^{k_1}, ..., T^{k_n}) = sum_{x_1+..+x_n=1} prod T^{k_i}(x_i)``, exactly."""
    return cyclo_context(ctx.q - 1).from_group_ring(jacobi_vector(ctx, chis, method))


def jacobi_via_gauss(ctx: FieldContext, chis: Sequence[int], prec: int = None) -> ComplexApprox:
    """``prod g(chi_i) / g(prod chi_i)``; equals J when all chis and their product are nontrivial."""
    num = ComplexApprox.exact(1, prec or choose_precision(ctx.q))
    for k in chis:
        num = num * gauss_sum(ctx, k, prec=prec)
    return num / gauss_sum(ctx, sum(chis), prec=prec)


# --- Greene's functions ---------------------------------------------------


def _binom_vec(ctx: FieldContext, a: int, b: int):
    """``q * binom(T^a, T^b)`` as a group-ring vector: ``T^b(-1) J(T^a, T^{-b})``."""
    return char_at_minus_one(ctx, b) * _jacobi2_vec(ctx, a, -b)


def greene_binomial(ctx: FieldContext, A: int, B: int) -> CycloNumber:
    """Normalized Jacobi sum ``binom(A, B) = B(-1)/q * J(A, conj B)``."""
    return cyclo_context(ctx.q - 1).from_group_ring(_binom_vec(ctx, A, B), ctx.q)


@dataclass(frozen=True)
class HgfSpec:
    """Parameters of ``{n+1}F{n}(A_0..A_n; B_1..B_n | x)``; characters as exponents."""

    upper: tuple
    lower: tuple
    argument: int = 1

    def __post_init__(self):
        object.__setattr__(self, "upper", tuple(self.upper))
        object.__setattr__(self, "lower", tuple(self.lower))
        if len(self.upper) != len(self.lower) + 1:
            raise ValueError("need exactly one more upper than lower parameter")


@lru_cache(maxsize=256)
def _hgf_coefficients(ctx: FieldContext, upper: tuple, lower: tuple) -> np.ndarray:
    """Row k holds ``q^{n+1} prod binom(A_i chi, B_i chi)`` for ``chi = T^k``."""
    n = ctx.q - 1
    rows = np.zeros((n, n), dtype=object)
    bottoms = (0,) + tuple(lower)
    for k in range(n):
        acc = None
        for a, b in zip(upper, bottoms):
            v = _binom_vec(ctx, a + k, b + k)
            acc = v if acc is None else _cyclic_mul(acc, v)
        rows[k] = acc
    return rows


def greene_hgf_vector(ctx: FieldContext, spec: HgfSpec):
    """Group-ring numerator and denominator of the Greene function value."""
    n = ctx.q - 1
    q = ctx.q
    den = q ** len(spec.lower) * (q - 1)
    x = ctx.index(spec.argument)
    if x == 0:
        return np.zeros(n, dtype=object), den
    upper = tuple(a % n for a in spec.upper)
    lower = tuple(b % n for b in spec.lower)
    rows = _hgf_coefficients(ctx, upper, lower)
    L = ctx.dlog(x)
    # chi(x) = zeta^{kL}: row k is rotated by kL
    idx = (np.arange(n)[None, :] - (np.arange(n)[:, None] * L)) % n
    total = rows[np.arange(n)[:, None], idx].sum(axis=0)
    return total, den


def greene_hgf(ctx: FieldContext, spec: HgfSpec) -> CycloNumber:
    """Greene's ``{n+1}F{n}``: ``q/(q-1) sum_chi binom(A_0 chi, chi) prod binom(A_i chi, B_i chi) chi(x)``."""
    vec, den = greene_hgf_vector(ctx, spec)
    return cyclo_context(ctx.q - 1).from_group_ring(vec, den)


def greene_2f1_alt(ctx: FieldContext, A: int, B: int, C: int, x) -> CycloNumber:
    """Single-sum ``2F1``: ``eps(x) BC(-1)/q sum_y B(y) conj(B)C(1-y) conj(A)(1-xy)``."""
    n, q = ctx.q - 1, ctx.q
    cyc = cyclo_context(n)
    x = ctx.index(x)
    if x == 0:
        return cyc.zero()
    ys = np.arange(q)
    one_minus_y = np.array([ctx.sub(1, int(y)) for y in ys])
    xy = ctx.mul_arrays(np.full_like(ys, x), ys)
    one_minus_xy = np.array([ctx.sub(1, int(v)) for v in xy])
    ok = (ys != 0) & (one_minus_y != 0) & (one_minus_xy != 0)
    expo = B * ctx.log[ys[ok]] + (C - B) * ctx.log[one_minus_y[ok]] - A * ctx.log[one_minus_xy[ok]]
    vec = _sparse_vec(n, expo) * (char_at_minus_one(ctx, B) * char_at_minus_one(ctx, C))
    return cyc.from_group_ring(vec, q)


# --- identity suite --------------------------------------------------------


def _max_discrepancy(pairs):
    worst = mpmath.mpf(0)
    ok = True
    for lhs, rhs in pairs:
        d = lhs.distance(rhs)
        worst = max(worst, d)
        if d > lhs.err + rhs.err:
            ok = False
    return ok, worst


def _suite_report(theorem, params, pairs, note=""):
    ok, worst = _max_discrepancy(pairs)
    return VerificationReport(
        theorem=theorem,
        params=params,
        lhs=f"{len(pairs)} instances",
        rhs=note or "closed form",
        status="pass" if ok else "fail",
        discrepancy=mpmath.nstr(worst, 5),
        comparison="within err",
    )


def hasse_davenport_pairs(ctx: FieldContext, m: int, prec: int):
    """Both sides of the product formula for every chi of exact order m and every psi."""
    n = ctx.q - 1
    if n % m:
        raise ValueError(f"q = {ctx.q} is not 1 mod {m}")
    g = lambda k: gauss_sum(ctx, k, prec=prec)  # noqa: E731
    step = n // m
    mm = ctx.from_int(m)
    pairs = []
    for u in range(1, m):
        if math.gcd(u, m) != 1:
            continue
        chi = u * step
        base = ComplexApprox.exact(1, prec)
        for i in range(m):
            base = base * g(i * chi)
        for psi in range(n):
            lhs = ComplexApprox.exact(1, prec)
            for i in range(m):
                lhs = lhs * g(i * chi + psi)
            twist = ComplexApprox.root_of_unity(n, -m * psi * ctx.dlog(mm), prec)
            rhs = -g(m * psi) * twist * base
            pairs.append((lhs, rhs))
    return pairs


def identity_suite(ctx: FieldContext, prec: int = None, helversen_pasotto: bool = True) -> list:
    """Classical Gauss-sum identities at this field, one report per identity family."""
    prec = prec or choose_precision(ctx.q)
    n, q = ctx.q - 1, ctx.q
    g = lambda k: gauss_sum(ctx, k, prec=prec)  # noqa: E731
    base = {"q": q, "p": ctx.p, "e": ctx.e}
    reports = []

    pairs = [(g(k).abs2(), ComplexApprox.exact(q, prec)) for k in range(1, n)]
    reports.append(_suite_report("gauss-norm", base, pairs, "|g|^2 = q"))

    pairs = []
    for k in range(1, n):
        pairs.append((g(k) * g(-k), ComplexApprox.exact(char_at_minus_one(ctx, k) * q, prec)))
    reports.append(_suite_report("gauss-conjugate-product", base, pairs, "chi(-1) q"))

    for m in (2, 3, 4, 5, 6):
        if n % m == 0:
            reports.append(
                _suite_report("hasse-davenport", {**base, "m": m}, hasse_davenport_pairs(ctx, m, prec))
            )

    for d in range(2, 7):
        if n % d:
            continue
        t = n // d
        dd = ctx.from_int(d)
        denom = ComplexApprox.exact(1, prec)
        for i in range(1, d):
            denom = denom * g(i * t)
        pairs = []
        for j in range(n):
            num = ComplexApprox.exact(1, prec)
            for i in range(d):
                num = num * g(i * t + j)
            twist = ComplexApprox.root_of_unity(n, -d * j * ctx.dlog(dd), prec)
            pairs.append((g(d * j), num / (twist * denom)))
        reports.append(_suite_report("2.4-general", {**base, "d": d}, pairs))
        if d == 4:
            pairs = []
            for j in range(n):
                num = ComplexApprox.exact(1, prec)
                for i in range(4):
                    num = num * g(i * t + j)
                twist = ComplexApprox.root_of_unity(n, -4 * j * ctx.dlog(dd), prec)
                rhs = num / (twist * q * char_at_minus_one(ctx, t) * g(2 * t))
                pairs.append((g(4 * j), rhs))
            reports.append(_suite_report("2.4", {**base, "d": 4}, pairs))

    if helversen_pasotto:
        reports.extend(helversen_pasotto_reports(ctx, prec))

    if n % 4 == 0:
        reports.extend(gauss_product_reports(ctx, prec))
    return reports


def helversen_pasotto_pairs(ctx: FieldContext, prec: int, branch: str):
    """All (A, B, C) with D = (ABC)^{-1} (``branch="trivial"``) or D = (ABC)^{-1} T (``"nontrivial"``)."""
    n, q = ctx.q - 1, ctx.q
    g = lambda k: gauss_sum(ctx, k, prec=prec)  # noqa: E731
    G = [g(k) for k in range(n)]
    pairs = []
    for A, B, C in itertools.product(range(n), repeat=3):
        D = (-(A + B + C)) % n if branch == "trivial" else (1 - (A + B + C)) % n
        lhs = approx_sum(
            [G[(A + c) % n] * G[(B - c) % n] * G[(C + c) % n] * G[(D - c) % n] for c in range(n)], prec
        ) / (q - 1)
        rhs = G[(A + B) % n] * G[(A + D) % n] * G[(B + C) % n] * G[(C + D) % n] / G[(A + B + C + D) % n]
        if (A + B + C + D) % n == 0:
            rhs = rhs + q * (q - 1) * char_at_minus_one(ctx, A + C)
        pairs.append(((A, B, C, D), lhs, rhs))
    return pairs


def helversen_pasotto_reports(ctx: FieldContext, prec: int) -> list:
    out = []
    for branch in ("trivial", "nontrivial"):
        triples = helversen_pasotto_pairs(ctx, prec, branch)
        report = _suite_report(
            "helversen-pasotto",
            {"q": ctx.q, "p": ctx.p, "e": ctx.e, "delta": 1 if branch == "trivial" else 0},
            [(lhs, rhs) for _, lhs, rhs in triples],
        )
        out.append(report)
    return out


def gauss_product_pairs(ctx: FieldContext, prec: int):
    """Both sides of the twisted Gauss-product evaluation for a, b in tZ with a + b = 2t."""
    n, q = ctx.q - 1, ctx.q
    t = n // 4
    g = lambda k: gauss_sum(ctx, k, prec=prec)  # noqa: E731
    out = []
    for a_i in range(4):
        a = a_i * t
        b = (2 * t - a) % n
        for lam in range(1, q):
            lam4 = ctx.pow(lam, 4)
            terms = []
            for j in range(n):
                tw = ComplexApprox.root_of_unity(n, char_exponent(ctx, j, ctx.minus_one) + 4 * j * ctx.dlog(lam), prec)
                terms.append(g(j + a) * g(-j + b) * tw)
            lhs = g(2 * t) * approx_sum(terms, prec)
            one_minus = ctx.sub(1, lam4)
            if one_minus == 0:
                rhs = ComplexApprox.exact(0, prec)
            else:
                rhs = ComplexApprox.root_of_unity(n, char_exponent(ctx, 2 * t, one_minus), prec) * (
                    q * (q - 1) * char_at_minus_one(ctx, b)
                )
            out.append(((a, b, lam, lam4 == 1), lhs, rhs))
    return out


def gauss_product_reports(ctx: FieldContext, prec: int) -> list:
    rows = gauss_product_pairs(ctx, prec)
    out = []
    for branch in (True, False):
        pairs = [(l, r) for (a, b, lam, unit), l, r in rows if unit == branch]
        out.append(
            _suite_report(
                "2.6",
                {"q": ctx.q, "p": ctx.p, "e": ctx.e, "lambda4_is_1": branch},
                pairs,
            )
        )
    return out
