"""Point counts on the Dwork hypersurfaces

    x_1^d + ... + x_d^d = d * lam * x_1 * ... * x_d

by exhaustive enumeration, by Koblitz's Gauss-sum formula, by Greene
hypergeometric functions and by McCarthy's p-adic ``nGn``; plus the
congruence checks linking these counts to truncated classical series.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Optional, Sequence

import mpmath
import numpy as np

from .approx import ComplexApprox, PrecisionError, approx_sum, choose_precision
from .char_sums import (
    HgfSpec,
    char_at_minus_one,
    char_exponent,
    char_sign,
    gauss_sum,
    greene_binomial,
    greene_hgf,
    jacobi_sum,
)
from .cyclotomic import CycloNumber, cyclo_context, reduce_mod_p
from .finite_field import FieldContext, build_field
from .padic import (
    PadicInt,
    classical_hgf_partial,
    mccarthy_G,
    pochhammer_identity_check,
    truncated_hgf_mod_p,
)
from .report import VerificationReport, check

NAIVE_BUDGET = 10**8
MAX_PRECISION_RETRIES = 2


@dataclass(frozen=True)
class DworkParams:
    """One member ``X_lam^d`` of the family over the field ``ctx``; ``lam`` is a field index."""

    d: int
    lam: int
    ctx: FieldContext = field(repr=False, compare=False)

    def __post_init__(self):
        if self.d < 2:
            raise ValueError("degree must be at least 2")
        if not 0 <= self.lam < self.ctx.q:
            raise ValueError(f"lambda index {self.lam} is outside F_{self.ctx.q}")

    @property
    def q(self) -> int:
        return self.ctx.q

    @property
    def t(self) -> int:
        if (self.q - 1) % self.d:
            raise ValueError(f"q = {self.q} is not 1 mod {self.d}")
        return (self.q - 1) // self.d


def _need_character_field(ctx: FieldContext, d: int):
    if (ctx.q - 1) % d:
        raise ValueError(f"q = {ctx.q} is not 1 mod {d}; the characters T^(j(q-1)/{d}) do not exist")
    return (ctx.q - 1) // d


def _need_nonzero(lam: int):
    if lam == 0:
        raise ValueError("the formula requires lambda != 0")


# --- brute force -------------------------------------------------------------


@lru_cache(maxsize=16)
def _root_count_table(ctx: FieldContext, d: int) -> np.ndarray:
    """``R[a, b] = #{x : x^d - a x + b = 0}``."""
    q = ctx.q
    R = np.zeros((q, q), dtype=np.int64)
    xs = np.arange(q)
    xd = ctx.pow_array(d) if d > 0 else None
    xd[0] = 0
    neg_xd = ctx.mul_arrays(np.full(q, ctx.minus_one), xd)
    for a in range(q):
        ax = ctx.mul_arrays(np.full(q, a), xs)
        b = ctx.add_arrays(neg_xd, ax)  # b = a x - x^d
        np.add.at(R[a], b, 1)
    return R


def count_naive(params: DworkParams, budget: int = NAIVE_BUDGET) -> int:
    """Projective point count by enumeration of the affine cone.

    The last ``d - 1`` coordinates are enumerated (vectorised over all but
    one); the first is resolved with the table ``R``.
    """
    ctx, d, q = params.ctx, params.d, params.q
    if q ** (d - 1) > budget:
        raise ValueError(f"naive count needs {q}^{d - 1} steps, over the budget {budget}")
    R = _root_count_table(ctx, d)
    xd = ctx.pow_array(d)
    dlam = ctx.mul(ctx.from_int(d), params.lam)
    # power sum and product over coordinates 3..d, shared by every x2
    rest = [g.ravel() for g in np.meshgrid(*([np.arange(q)] * (d - 2)), indexing="ij")] if d > 2 else []
    S_rest = np.zeros(q ** (d - 2), dtype=np.int64)
    P_rest = np.full(q ** (d - 2), dlam, dtype=np.int64)
    for col in rest:
        S_rest = ctx.add_arrays(S_rest, xd[col])
        P_rest = ctx.mul_arrays(P_rest, col)
    n_aff = 0
    for x2 in range(q):
        S = ctx.add_arrays(S_rest, np.full_like(S_rest, xd[x2]))
        P = ctx.mul_arrays(P_rest, np.full_like(P_rest, x2))
        n_aff += int(R[P, S].sum())
    if (n_aff - 1) % (q - 1):
        raise AssertionError(f"affine count {n_aff} is not 1 mod {q - 1}")
    return (n_aff - 1) // (q - 1)


# --- exponent tuples and cosets ------------------------------------------------


def exponent_tuples(d: int):
    """All ``w`` in ``[0, d)^d`` with ``sum(w) = 0 mod d``, in lexicographic order."""
    for head in itertools.product(range(d), repeat=d - 1):
        yield head + ((-sum(head)) % d,)


def canonical_label(w: Sequence[int], d: int) -> tuple:
    """Smallest sorted tuple among all shifts ``w + s(1, ..., 1)``."""
    return min(tuple(sorted((x + s) % d for x in w)) for s in range(d))


@dataclass(frozen=True)
class CosetLabel:
    """A class of exponent tuples up to permutation and diagonal shift.

    ``multiplicity`` counts the tuples of ``W`` in the class; the number of
    shift-cosets it contains is ``multiplicity / d``.
    """

    w: tuple
    multiplicity: int

    @property
    def d(self) -> int:
        return len(self.w)

    @property
    def cosets(self) -> int:
        return self.multiplicity // self.d

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.w)


@lru_cache(maxsize=None)
def coset_labels(d: int) -> tuple:
    counts = {}
    for w in exponent_tuples(d):
        key = canonical_label(w, d)
        counts[key] = counts.get(key, 0) + 1
    return tuple(CosetLabel(w, m) for w, m in sorted(counts.items()))


def coset_label(w: Sequence[int], d: Optional[int] = None) -> CosetLabel:
    d = d or len(w)
    key = canonical_label(w, d)
    for label in coset_labels(d):
        if label.w == key:
            return label
    raise ValueError(f"{tuple(w)} does not sum to 0 mod {d}")


# --- Gauss-sum formulas ------------------------------------------------------------


def _g(ctx, k, prec):
    return gauss_sum(ctx, k, prec=prec)


def koblitz_summand(ctx: FieldContext, d: int, w: Sequence[int], lam: int, prec: int) -> ComplexApprox:
    """``1/(q-1) sum_j prod_i g(T^{w_i t + j}) / g(T^{dj}) T^{dj}(d lam)`` for one tuple ``w``."""
    t = _need_character_field(ctx, d)
    n = ctx.q - 1
    dlam = ctx.mul(ctx.from_int(d), lam)
    if dlam == 0:
        return ComplexApprox.exact(0, prec)
    L = ctx.dlog(dlam)
    terms = []
    for j in range(n):
        num = ComplexApprox.exact(1, prec)
        for wi in w:
            num = num * _g(ctx, wi * t + j, prec)
        terms.append(num / _g(ctx, d * j, prec) * ComplexApprox.root_of_unity(n, d * j * L, prec))
    return approx_sum(terms, prec) / n


def coset_term(ctx: FieldContext, d: int, w, lam: int, prec: Optional[int] = None) -> ComplexApprox:
    """``S_[w]``: the Koblitz contribution of every shift-coset in the class of ``w``."""
    label = w if isinstance(w, CosetLabel) else coset_label(w, d)
    prec = prec or choose_precision(ctx.q, d)
    return koblitz_summand(ctx, d, label.w, lam, prec) * label.cosets


def n0_term(ctx: FieldContext, d: int, prec: Optional[int] = None) -> ComplexApprox:
    """Point count of the diagonal (Fermat) hypersurface ``sum x_i^d = 0``.

    ``(q^{d-1} - 1)/(q - 1) + 1/q sum_{w, all w_i != 0} prod g(T^{w_i t})``.
    For ``d = 4`` the closed form
    ``q^2 + 7q + 1 + 1/q sum_i g(T^{it})^4 + 12 q T^t(-1)`` is also evaluated
    and must agree.
    """
    t = _need_character_field(ctx, d)
    q = ctx.q
    prec = prec or choose_precision(q, d)
    terms = []
    for w in exponent_tuples(d):
        if all(w):
            prod = ComplexApprox.exact(1, prec)
            for wi in w:
                prod = prod * _g(ctx, wi * t, prec)
            terms.append(prod)
    total = approx_sum(terms, prec) / q + (q ** (d - 1) - 1) // (q - 1)
    if d == 4:
        closed = n0_closed_form_k3(ctx, prec)
        if not total.close_to(closed):
            raise AssertionError(f"N_q(0) closed form {closed} disagrees with definition {total}")
    return total


def n0_closed_form_k3(ctx: FieldContext, prec: int) -> ComplexApprox:
    t = _need_character_field(ctx, 4)
    q = ctx.q
    s = approx_sum([_g(ctx, i * t, prec) ** 4 for i in range(1, 4)], prec)
    return s / q + (q * q + 7 * q + 1 + 12 * q * char_at_minus_one(ctx, t))


def n0_exact(ctx: FieldContext, d: int) -> int:
    """Same count through Jacobi sums: ``prod g(chi_i) / q = chi_d(-1) J(chi_1..chi_{d-1})``."""
    t = _need_character_field(ctx, d)
    q = ctx.q
    total = cyclo_context(q - 1).rational((q ** (d - 1) - 1) // (q - 1))
    for w in exponent_tuples(d):
        if all(w):
            total = total + jacobi_sum(ctx, [wi * t for wi in w[:-1]]) * char_at_minus_one(ctx, w[-1] * t)
    return _as_integer(total)


def _as_integer(v: CycloNumber) -> int:
    if not v.is_rational():
        raise AssertionError(f"expected a rational integer, got {v!r}")
    r = v.rational_value()
    if r.denominator != 1:
        raise AssertionError(f"expected an integer, got {r}")
    return int(r)


def _with_retries(fn, prec: int):
    """Run ``fn(prec)``, doubling precision on a failed rounding gate."""
    for attempt in range(MAX_PRECISION_RETRIES + 1):
        try:
            return fn(prec)
        except PrecisionError:
            if attempt == MAX_PRECISION_RETRIES:
                raise
            prec *= 2


def koblitz_total(ctx: FieldContext, d: int, lam: int, prec: int) -> ComplexApprox:
    total = n0_term(ctx, d, prec)
    for label in coset_labels(d):
        total = total + koblitz_summand(ctx, d, label.w, lam, prec) * label.cosets
    return total


def count_koblitz(params: DworkParams, prec: Optional[int] = None, return_residual: bool = False):
    """Koblitz's formula: ``N_q(0)`` plus one Gauss-sum ratio sum per shift-coset of ``W``."""
    ctx, d, lam = params.ctx, params.d, params.lam
    _need_character_field(ctx, d)
    _need_nonzero(lam)

    def run(pr):
        total = koblitz_total(ctx, d, lam, pr)
        n = total.nearest_integer()
        return n, total.rounding_residual(n), pr

    n, residual, used = _with_retries(run, prec or choose_precision(ctx.q, d))
    return (n, float(residual), used) if return_residual else n


# --- Greene formulas -------------------------------------------------------------


def _inv_pow(ctx: FieldContext, lam: int, d: int) -> int:
    return ctx.inv(ctx.pow(lam, d))


def k3_hgf_terms(ctx: FieldContext, lam: int) -> dict:
    """Exact ingredients of the K3 count at ``x = 1/lam^4``."""
    t = _need_character_field(ctx, 4)
    x = _inv_pow(ctx, lam, 4)
    return {
        "3F2": greene_hgf(ctx, HgfSpec((t, 2 * t, 3 * t), (0, 0), x)),
        "2F1": greene_hgf(ctx, HgfSpec((3 * t, t), (2 * t,), x)),
        "binom": greene_binomial(ctx, 3 * t, t),
    }


def count_k3_greene(lam: int, ctx: FieldContext, return_parts: bool = False):
    """Exact K3 point count from Greene's ``3F2`` and ``2F1`` (requires q = 1 mod 4)."""
    t = _need_character_field(ctx, 4)
    _need_nonzero(lam)
    q = ctx.q
    parts = k3_hgf_terms(ctx, lam)
    sign_t = char_at_minus_one(ctx, t)
    one_minus = ctx.sub(1, ctx.pow(lam, 4))
    quad = char_sign(ctx, 2 * t, one_minus)
    total = (
        parts["3F2"] * q**2
        + parts["binom"] * parts["2F1"] * (3 * q**2)
        + ((q**3 - 1) // (q - 1) + 12 * q * sign_t * quad)
    )
    count = _as_integer(total)
    if one_minus == 0:
        special = parts["3F2"] * q**2 + ((q**3 - 1) // (q - 1) + 3 * q * sign_t)
        if _as_integer(special) != count:
            raise AssertionError(f"the two K3 formulas disagree at q = {q}, lambda = {lam}")
    if return_parts:
        return count, parts
    return count


def _legendre(a: int, p: int) -> int:
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


G3_UPPER = (Fraction(1, 4), Fraction(2, 4), Fraction(3, 4))
G3_LOWER = (0, 0, 0)


def count_k3_padic(lam: int, p: int, k: int) -> PadicInt:
    """K3 point count modulo ``p^k`` from McCarthy's ``3G3`` and ``2G2`` (any odd p)."""
    if p % 2 == 0:
        raise ValueError("p must be odd")
    lam %= p
    _need_nonzero(lam)
    lam4 = pow(lam, 4, p)
    base = (p**3 - 1) // (p - 1)
    g3 = mccarthy_G(G3_UPPER, G3_LOWER, lam4, p, k)
    if p % 4 == 3:
        g2 = mccarthy_G((Fraction(3, 4), Fraction(1, 4)), (0, Fraction(1, 2)), lam4, p, k)
        return g3 + base - g2 * (3 * p)
    t = (p - 1) // 4
    g2 = mccarthy_G((Fraction(3, 4), Fraction(1, 4)), (0, Fraction(2, 4)), lam4, p, k)
    extra = 12 * p * (-1) ** t * _legendre(1 - lam4, p)
    return g3 + (base + extra) + g2 * (3 * p)


def general_greene_total(ctx: FieldContext, d: int, lam: int, prec: int) -> ComplexApprox:
    """Right side of the general-d formula with the ``{d-1}F{d-2}`` term exact."""
    t = _need_character_field(ctx, d)
    q = ctx.q
    x = _inv_pow(ctx, lam, d)
    F = greene_hgf(ctx, HgfSpec(tuple(i * t for i in range(1, d)), (0,) * (d - 2), x))
    exact_part = F * q ** (d - 2) + (q ** (d - 1) - 1) // (q - 1)
    total = exact_part.to_complex(prec)
    wss = []
    for w in exponent_tuples(d):
        if all(w) and len(set(w)) > 1:
            prod = ComplexApprox.exact(1, prec)
            for wi in w:
                prod = prod * _g(ctx, wi * t, prec)
            wss.append(prod)
    total = total + approx_sum(wss, prec) / q
    for label in coset_labels(d):
        if not label.is_zero():
            total = total + koblitz_summand(ctx, d, label.w, lam, prec) * label.cosets
    return total


def count_general_greene(d: int, lam: int, ctx: FieldContext, prec: Optional[int] = None,
                         naive: Optional[int] = None) -> VerificationReport:
    """General-d hypergeometric count, rounded, compared with ``count_naive``."""
    _need_character_field(ctx, d)
    _need_nonzero(lam)

    def run(pr):
        total = general_greene_total(ctx, d, lam, pr)
        n = total.nearest_integer()
        return n, total.rounding_residual(n), pr

    n, residual, used = _with_retries(run, prec or choose_precision(ctx.q, d))
    if naive is None:
        naive = count_naive(DworkParams(d, lam, ctx))
    report = check(
        "8.1",
        {"d": d, "q": ctx.q, "p": ctx.p, "e": ctx.e, "lambda": lam},
        n,
        naive,
        comparison="exact integer",
        discrepancy=n - naive,
    )
    report.extra["prec"] = used
    return report


def trace_frobenius_k3(lam: int, p) -> int:
    """``#X_lam^4(F_p) - p^2 - 1`` via the Greene formula."""
    ctx = p if isinstance(p, FieldContext) else build_field(p)
    q = ctx.q
    return count_k3_greene(lam, ctx) - q * q - 1


def trace_formula_k3(lam: int, ctx: FieldContext) -> int:
    """The trace written out directly: ``p + 12pT^t(-1)T^{2t}(1-lam^4) + p^2 3F2 + 3p^2 binom 2F1``."""
    t = _need_character_field(ctx, 4)
    q = ctx.q
    parts = k3_hgf_terms(ctx, lam)
    quad = char_sign(ctx, 2 * t, ctx.sub(1, ctx.pow(lam, 4)))
    v = parts["3F2"] * q**2 + parts["binom"] * parts["2F1"] * (3 * q**2)
    return _as_integer(v + (q + 12 * q * char_at_minus_one(ctx, t) * quad))


def period_value(d: int, z, N: int) -> Fraction:
    """First ``N`` terms of ``{d-1}F{d-2}(1/d, ..., (d-1)/d; 1, ..., 1 | z)``."""
    if N < 1:
        raise ValueError("need at least one term")
    return classical_hgf_partial([Fraction(i, d) for i in range(1, d)], [1] * (d - 2), z, N)


# --- coset closed forms --------------------------------------------------------------


def coset_closed_forms(ctx: FieldContext, lam: int, prec: Optional[int] = None) -> list:
    """Closed forms for ``N_q(0)`` and the three K3 coset classes against their definitions."""
    t = _need_character_field(ctx, 4)
    _need_nonzero(lam)
    q = ctx.q
    prec = prec or choose_precision(q, 4)
    sign_t = char_at_minus_one(ctx, t)
    unit = ctx.pow(lam, 4) == 1
    quad = char_sign(ctx, 2 * t, ctx.sub(1, ctx.pow(lam, 4)))
    parts = k3_hgf_terms(ctx, lam)
    g4 = approx_sum([_g(ctx, i * t, prec) ** 4 for i in range(1, 4)], prec)
    params = {"q": q, "p": ctx.p, "e": ctx.e, "lambda": lam, "lambda4_is_1": unit}
    out = []

    def rep(theorem, lhs, rhs):
        diff = lhs.distance(rhs)
        ok = diff <= lhs.err + rhs.err and diff < 1e-10
        out.append(
            VerificationReport(
                theorem=theorem,
                params=dict(params),
                lhs=mpmath.nstr(lhs.value, 20),
                rhs=mpmath.nstr(rhs.value, 20),
                status="pass" if ok else "fail",
                discrepancy=mpmath.nstr(diff, 5),
                comparison="within err",
            )
        )

    definitional = approx_sum(
        [
            _prod_g(ctx, [wi * t for wi in w], prec)
            for w in exponent_tuples(4)
            if all(w)
        ],
        prec,
    ) / q + (q**3 - 1) // (q - 1)
    rep("4.2", definitional, n0_closed_form_k3(ctx, prec))

    s0 = coset_term(ctx, 4, (0, 0, 0, 0), lam, prec)
    rep("4.3", s0, -g4 / q + parts["3F2"].to_complex(prec) * q**2)

    s1 = coset_term(ctx, 4, (0, 1, 1, 2), lam, prec)
    rep("4.4", s1, ComplexApprox.exact(12 * q * sign_t * (quad - 1), prec))
    if unit:
        rep("4.5", s1, ComplexApprox.exact(-12 * q * sign_t, prec))

    s2 = coset_term(ctx, 4, (0, 0, 2, 2), lam, prec)
    rhs = (parts["binom"] * parts["2F1"] * (3 * q**2)).to_complex(prec) - 6 * q
    rep("4.6", s2, rhs)
    if unit:
        rep("4.7", s2, ComplexApprox.exact(-6 * q + 3 * q * sign_t, prec))
    return out


def _prod_g(ctx, ks, prec):
    out = ComplexApprox.exact(1, prec)
    for k in ks:
        out = out * _g(ctx, k, prec)
    return out


def binom_gauss_route(ctx: FieldContext, prec: Optional[int] = None) -> ComplexApprox:
    """``binom(T^{3t}, T^t)`` written as ``g(T^{2t}) g(T^{3t})^2 T^t(-1) / q^2``."""
    t = _need_character_field(ctx, 4)
    prec = prec or choose_precision(ctx.q)
    q = ctx.q
    v = _g(ctx, 2 * t, prec) * _g(ctx, 3 * t, prec) ** 2 * char_at_minus_one(ctx, t)
    return v / (q * q)


# --- congruences ----------------------------------------------------------------------


@dataclass
class CongruenceOptions:
    theorems: tuple = ("2.8", "3.1", "3.2", "3.3", "3.4", "1.4", "7.1-lemma", "bridge")
    max_d: int = 6
    conj_d: int = 5
    conj_k: int = 2
    lambdas: Optional[tuple] = None


def _reduce_scaled(v: CycloNumber, scale: int, field: FieldContext):
    """``reduce_mod_p(scale * v)`` or ``None`` when the product is not p-integral."""
    try:
        return reduce_mod_p(v * scale, field)
    except ZeroDivisionError:
        return None


def _residue_report(theorem, params, lhs, rhs, p):
    if lhs is None or rhs is None:
        return VerificationReport(
            theorem=theorem,
            params=params,
            lhs=str(lhs),
            rhs=str(rhs),
            status="vacuous",
            discrepancy="not p-integral",
            comparison=f"mod {p}",
        )
    return check(theorem, params, lhs % p, rhs % p, comparison=f"mod {p}",
                 discrepancy=(lhs - rhs) % p)


def congruence_suite(p: int, options: Optional[CongruenceOptions] = None) -> list:
    """Every congruence that applies at the prime ``p``, one report per instance."""
    opts = options or CongruenceOptions()
    field = build_field(p)
    xs = list(opts.lambdas) if opts.lambdas else list(range(1, p))
    wanted = set(opts.theorems)
    out = []

    if "2.8" in wanted:
        for d in range(2, opts.max_d + 1):
            if (p - 1) % d:
                continue
            t = (p - 1) // d
            for m in range(1, d):
                for j in range(m * t + 1):
                    out.append(pochhammer_identity_check(m, d, p, j))

    if "3.1" in wanted:
        for d in range(2, opts.max_d + 1):
            if (p - 1) % d:
                continue
            t = (p - 1) // d
            for m in range(1, d):
                for x in xs:
                    lhs = truncated_hgf_mod_p([Fraction(m, d), Fraction(d - m, d)], [1], x, p, p)
                    F = greene_hgf(field, HgfSpec((m * t, -m * t), (0,), x))
                    rhs = _reduce_scaled(F, -p, field)
                    out.append(_residue_report("3.1", {"p": p, "m": m, "d": d, "x": x}, lhs, rhs, p))

    if "3.2" in wanted:
        half = (p - 1) // 2
        phi_m1 = char_at_minus_one(field, half)
        for x in xs:
            lhs = (-1) ** half * truncated_hgf_mod_p([Fraction(1, 2)] * 2, [1], x, p, p)
            F = greene_hgf(field, HgfSpec((half, half), (0,), x))
            rhs = _reduce_scaled(F, -phi_m1 * p, field)
            out.append(_residue_report("3.2", {"p": p, "x": x}, lhs, rhs, p))

    if "3.3" in wanted:
        for d in range(3, opts.max_d + 1):
            if (p - 1) % d:
                continue
            t = (p - 1) // d
            for x in xs:
                F = greene_hgf(field, HgfSpec(tuple(i * t for i in range(1, d)), (0,) * (d - 2), x))
                lhs = _reduce_scaled(F, p ** (d - 2), field)
                trunc = truncated_hgf_mod_p([Fraction(i, d) for i in range(1, d)], [1] * (d - 2), x, p, p)
                out.append(_residue_report("3.3", {"p": p, "d": d, "x": x}, lhs, (-1) ** d * trunc, p))

    if p % 4 == 1:
        t = (p - 1) // 4
        if "3.4" in wanted:
            for x in xs:
                trunc = truncated_hgf_mod_p(G3_UPPER, [1, 1], x, p, p)
                F = greene_hgf(field, HgfSpec((t, 2 * t, 3 * t), (0, 0), x))
                out.append(_residue_report("3.4", {"p": p, "x": x}, trunc, _reduce_scaled(F, p * p, field), p))
        if "1.4" in wanted:
            for lam in xs:
                trace = trace_frobenius_k3(lam, field)
                z = pow(pow(lam, 4, p), -1, p)
                trunc = truncated_hgf_mod_p(G3_UPPER, [1, 1], z, p, p)
                out.append(_residue_report("1.4", {"p": p, "lambda": lam}, trace, trunc, p))
        if "7.1-lemma" in wanted:
            binom = greene_binomial(field, 3 * t, t)
            for x in xs:
                F = greene_hgf(field, HgfSpec((3 * t, t), (2 * t,), x))
                lhs = _reduce_scaled(binom * F, 3 * p * p, field)
                out.append(_residue_report("7.1-lemma", {"p": p, "x": x}, lhs, 0, p))
        if "bridge" in wanted:
            for lam in xs:
                lam4 = pow(lam, 4, p)
                F = greene_hgf(field, HgfSpec((t, 2 * t, 3 * t), (0, 0), pow(lam4, -1, p)))
                lhs = _reduce_scaled(F, p * p, field)
                rhs = mccarthy_G(G3_UPPER, G3_LOWER, lam4, p, 1).residue
                out.append(_residue_report("bridge", {"p": p, "lambda": lam}, lhs, rhs, p))

    d = opts.conj_d
    if "conj8.2" in wanted and (p - 1) % d and _is_odd_prime(d):
        out.extend(conjecture_point_count(d, p, opts.conj_k, xs))
    if "conj8.4" in wanted and (p - 1) % d == 0:
        out.extend(conjecture_trace_period(d, p, xs))
    return out


def _is_odd_prime(n: int) -> bool:
    return n > 2 and all(n % f for f in range(2, int(n**0.5) + 1))


CONJ_SIGN = -1


def conjecture_point_count(d: int, p: int, k: int, lambdas=None) -> list:
    """``#X(F_p) = (p^{d-1}-1)/(p-1) + sign * {d-1}G{d-1}[1/d..(d-1)/d; 0..0 | lam^d]`` mod ``p^k``.

    The sign is ``CONJ_SIGN``; the value of the opposite sign is recorded in
    ``extra`` so a report shows which one the data support.
    """
    field = build_field(p)
    upper = [Fraction(i, d) for i in range(1, d)]
    lower = [0] * (d - 1)
    out = []
    for lam in lambdas or range(1, p):
        naive = count_naive(DworkParams(d, lam % p, field))
        G = mccarthy_G(upper, lower, pow(lam, d, p), p, k)
        base = (p ** (d - 1) - 1) // (p - 1)
        predicted = (G * CONJ_SIGN + base).residue
        other = (G * -CONJ_SIGN + base).residue
        r = check(
            "conj8.2",
            {"d": d, "p": p, "k": k, "lambda": lam, "sign": "+" if CONJ_SIGN > 0 else "-"},
            naive % p**k,
            predicted,
            comparison=f"mod {p}^{k}",
            discrepancy=(naive - predicted) % p**k,
        )
        r.extra["opposite_sign_holds"] = naive % p**k == other
        out.append(r.as_conjecture())
    return out


def conjecture_trace_period(d: int, p: int, lambdas=None) -> list:
    """For d = 5: ``p^3 + 25p^2 - 100p + 1 - #X(F_p)`` against the truncated period mod p."""
    if d != 5:
        raise ValueError("the trace normalisation is only known here for d = 5")
    field = build_field(p)
    out = []
    for lam in lambdas or range(1, p):
        naive = count_naive(DworkParams(d, lam % p, field))
        trace = p**3 + 25 * p**2 - 100 * p + 1 - naive
        z = pow(pow(lam, d, p), -1, p)
        trunc = truncated_hgf_mod_p([Fraction(i, d) for i in range(1, d)], [1] * (d - 2), z, p, p)
        r = check("conj8.4", {"d": d, "p": p, "lambda": lam}, trace % p, trunc,
                  comparison=f"mod {p}", discrepancy=(trace - trunc) % p)
        out.append(r.as_conjecture())
    return out
