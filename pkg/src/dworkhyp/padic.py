"""p-adic integers at finite precision, Morita's p-adic Gamma function,
McCarthy's ``nGn`` function and (truncated) classical hypergeometric series.

All p-adic quantities are plain residues modulo ``p**k``.  Rational arguments
are mapped into ``Z_p`` through modular inverses of their denominators, which
is legitimate because every function here is p-adically continuous.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Union

Rational = Union[int, Fraction, "PadicRational"]

# prefix-product tables for Gamma_p are built when p**k is at most this
GAMMA_TABLE_LIMIT = 2_000_000


@dataclass(frozen=True)
class PadicInt:
    """A residue modulo ``p**k`` standing for a p-adic integer."""

    p: int
    k: int
    residue: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("precision must be positive")
        object.__setattr__(self, "residue", self.residue % self.modulus)

    @property
    def modulus(self) -> int:
        return self.p**self.k

    def is_unit(self) -> bool:
        return self.residue % self.p != 0

    def valuation(self) -> int:
        """p-adic valuation, capped at ``k`` for zero."""
        if self.residue == 0:
            return self.k
        v, r = 0, self.residue
        while r % self.p == 0:
            r //= self.p
            v += 1
        return v

    def reduce(self, k: int) -> "PadicInt":
        if k > self.k:
            raise ValueError(f"cannot raise precision from {self.k} to {k}")
        return PadicInt(self.p, k, self.residue)

    def _coerce(self, other) -> "PadicInt":
        if isinstance(other, PadicInt):
            if other.p != self.p:
                raise ValueError("mismatched primes")
            return other if other.k == self.k else other.reduce(min(other.k, self.k))
        return PadicInt(self.p, self.k, to_residue(other, self.p, self.k))

    def _combine(self, other, op) -> "PadicInt":
        other = self._coerce(other)
        k = min(self.k, other.k)
        return PadicInt(self.p, k, op(self.residue, other.residue))

    def __add__(self, other):
        return self._combine(other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        return self._combine(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return self._combine(other, lambda a, b: b - a)

    def __mul__(self, other):
        return self._combine(other, lambda a, b: a * b)

    __rmul__ = __mul__

    def __neg__(self):
        return PadicInt(self.p, self.k, -self.residue)

    def inverse(self) -> "PadicInt":
        if not self.is_unit():
            raise ZeroDivisionError(f"{self.residue} is not a unit mod {self.p}")
        return PadicInt(self.p, self.k, pow(self.residue, -1, self.modulus))

    def __truediv__(self, other):
        return self * self._coerce(other).inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return PadicInt(self.p, self.k, pow(self.residue, n, self.modulus))

    def __eq__(self, other):
        if isinstance(other, PadicInt):
            k = min(self.k, other.k)
            return self.p == other.p and (self.residue - other.residue) % self.p**k == 0
        if isinstance(other, (int, Fraction, PadicRational)):
            try:
                return self.residue == to_residue(other, self.p, self.k)
            except ZeroDivisionError:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.p, self.k, self.residue))

    def __int__(self):
        return self.residue

    def __repr__(self):
        return f"{self.residue} mod {self.p}^{self.k}"


@dataclass(frozen=True)
class PadicRational:
    """A rational number with denominator prime to ``p``.

    The prime is not stored; it is supplied when the value is reduced.
    """

    numerator: int
    denominator: int = 1

    def __post_init__(self):
        if self.denominator == 0:
            raise ZeroDivisionError("zero denominator")
        g = math.gcd(self.numerator, self.denominator)
        s = -1 if self.denominator < 0 else 1
        object.__setattr__(self, "numerator", s * self.numerator // g)
        object.__setattr__(self, "denominator", s * self.denominator // g)

    @classmethod
    def of(cls, x: Rational) -> "PadicRational":
        if isinstance(x, PadicRational):
            return x
        x = Fraction(x)
        return cls(x.numerator, x.denominator)

    @property
    def value(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def floor(self) -> int:
        return self.numerator // self.denominator

    def frac(self) -> Fraction:
        """Fractional part ``x - floor(x)`` in ``[0, 1)``."""
        return self.value - self.floor()

    def to_padic(self, p: int, k: int) -> PadicInt:
        return PadicInt(p, k, to_residue(self, p, k))

    def __repr__(self):
        return str(self.value)


def to_residue(x, p: int, k: int) -> int:
    """Image of an integer or p-integral rational in ``Z/p^k``."""
    if isinstance(x, PadicInt):
        if x.k < k:
            raise ValueError("not enough precision")
        return x.residue % p**k
    if isinstance(x, int):
        return x % p**k
    x = PadicRational.of(x)
    m = p**k
    if x.denominator % p == 0:
        raise ZeroDivisionError(f"{x.value} is not p-integral for p = {p}")
    return x.numerator * pow(x.denominator, -1, m) % m


def teichmuller(x: int, p: int, k: int) -> PadicInt:
    """Teichmuller lift of ``x mod p`` to ``Z/p^k`` (zero maps to zero)."""
    w = x % p
    m = p**k
    # x -> x^p converges to the lift after k - 1 steps
    for _ in range(k):
        w = pow(w, p, m)
    return PadicInt(p, k, w)


@lru_cache(maxsize=64)
def _gamma_table(p: int, k: int) -> tuple:
    m = p**k
    table = [1] * m
    acc = 1
    for n in range(1, m):
        j = n - 1
        if j % p:
            acc = acc * j % m
        table[n] = acc if n % 2 == 0 else (-acc) % m
    return tuple(table)


def _gamma_int(n: int, p: int, k: int) -> int:
    m = p**k
    if m <= GAMMA_TABLE_LIMIT:
        return _gamma_table(p, k)[n]
    acc = 1
    for j in range(1, n):
        if j % p:
            acc = acc * j % m
    return acc if n % 2 == 0 else (-acc) % m


def gamma_p(a: Rational, p: int, k: int) -> PadicInt:
    """Morita's p-adic Gamma function at a p-integral rational, mod ``p**k``.

    The argument is replaced by the integer ``n`` in ``[0, p^k)`` congruent to
    it, and the defining product ``(-1)^n prod_{j<n, p∤j} j`` is used; this is
    exact modulo ``p**k`` by continuity.

    >>> gamma_p(0, 5, 1), gamma_p(1, 5, 1)
    (1 mod 5^1, 4 mod 5^1)
    >>> gamma_p(Fraction(1, 2), 5, 1)
    3 mod 5^1
    """
    n = to_residue(a, p, k)
    return PadicInt(p, k, _gamma_int(n, p, k))


def reflection_sign(x: Rational, p: int) -> int:
    """``(-1)^{x_0}`` with ``x_0 in {1..p}`` the leading p-adic digit of ``x``."""
    x0 = to_residue(x, p, 1)
    if x0 == 0:
        x0 = p
    return -1 if x0 % 2 else 1


def pochhammer(a: Fraction, n: int) -> Fraction:
    out = Fraction(1)
    for i in range(n):
        out *= a + i
    return out


def pochhammer_identity_check(m: int, d: int, p: int, j: int):
    """Compare both sides of the Gamma_p / Pochhammer product identity mod p."""
    from .report import VerificationReport

    if not 1 <= m < d:
        raise ValueError("need 1 <= m < d")
    if (p - 1) % d:
        raise ValueError(f"p = {p} is not 1 mod {d}")
    t = (p - 1) // d
    if not 0 <= j <= m * t:
        raise ValueError(f"j must lie in [0, {m * t}]")
    a = Fraction(m, d)
    g = lambda x: gamma_p(x, p, 1)  # noqa: E731
    lhs = g(a + j) * g(1 - a + j) / g(1 + j) ** 2
    sign = -1 if (m * t + 1) % 2 else 1
    rhs_value = sign * pochhammer(a, j) * pochhammer(1 - a, j) / Fraction(math.factorial(j)) ** 2
    rhs = PadicRational.of(rhs_value).to_padic(p, 1)
    return VerificationReport(
        theorem="2.8",
        params={"m": m, "d": d, "p": p, "j": j},
        lhs=str(lhs.residue),
        rhs=str(rhs.residue),
        status="pass" if lhs == rhs else "fail",
        discrepancy=str((lhs.residue - rhs.residue) % p),
        comparison=f"mod {p}",
    )


def _mccarthy_terms(upper, lower, p):
    """Per-j data of the nGn sum that does not depend on the argument.

    Returns a list of ``(exponent, [gamma numerator args], [gamma denominator
    args])`` with all Gamma arguments as Fractions in ``[0, 1)``.
    """
    n = len(upper)
    terms = []
    for j in range(p - 1):
        s = Fraction(j, p - 1)
        num, den, exponent = [], [], 0
        for a, b in zip(upper, lower):
            fa = PadicRational.of(a).frac()
            fb = PadicRational.of(-PadicRational.of(b).value).frac()
            num.append(PadicRational.of(fa - s).frac())
            den.append(fa)
            num.append(PadicRational.of(fb + s).frac())
            den.append(fb)
            exponent -= math.floor(fa - s) + math.floor(fb + s)
        sign = -1 if (j * n) % 2 else 1
        terms.append((j, sign, exponent, tuple(num), tuple(den)))
    return terms


def mccarthy_G(
    upper: Sequence[Rational],
    lower: Sequence[Rational],
    t: int,
    p: int,
    k: int,
) -> PadicInt:
    """McCarthy's p-adic hypergeometric function ``nGn[upper; lower | t]_p``.

    Evaluated modulo ``p**k`` for ``t`` a nonzero residue mod ``p``.  Terms
    carrying negative powers of ``p`` are handled by raising the working
    precision by exactly the largest such power; if the total is not
    p-integral a ``ValueError`` is raised.
    """
    if len(upper) != len(lower) or not upper:
        raise ValueError("upper and lower parameter lists must have equal positive length")
    if t % p == 0:
        raise ValueError("nGn is only evaluated at t != 0 mod p")
    for b in lower:
        den = PadicRational.of(b).denominator
        if (p - 1) % den:
            warnings.warn(f"lower parameter {b} has denominator not dividing p - 1", stacklevel=2)
    for x in list(upper) + list(lower):
        if PadicRational.of(x).denominator % p == 0:
            raise ValueError(f"parameter {x} is not p-integral")

    terms = _mccarthy_terms(tuple(upper), tuple(lower), p)
    min_exp = min(e for _, _, e, _, _ in terms)
    shift = max(0, -min_exp)
    K = k + shift
    M = p**K
    w_inv = pow(teichmuller(t, p, K).residue, -1, M)

    total = 0
    w_pow = 1
    for j, sign, exponent, num, den in terms:
        e = exponent + shift
        if e < K:
            unit = sign * w_pow
            for x in num:
                unit = unit * gamma_p(x, p, K).residue % M
            for x in den:
                unit = unit * pow(gamma_p(x, p, K).residue, -1, M) % M
            if exponent % 2:
                unit = -unit
            total = (total + unit * p**e) % M
        w_pow = w_pow * w_inv % M

    if shift:
        if total % p**shift:
            raise ValueError("nGn value is not p-integral at these parameters")
        total //= p**shift
    m = p**k
    total = -total * pow(p - 1, -1, m) % m
    return PadicInt(p, k, total)


def truncated_hgf_mod_p(
    upper: Sequence[Rational],
    lower: Sequence[Rational],
    x: Rational,
    m: int,
    p: int,
) -> int:
    """``sum_{k<m} prod (a_i)_k / (k! prod (b_j)_k) x^k`` reduced mod ``p``."""
    if m > p:
        raise ValueError(f"truncation m = {m} exceeds p = {p}")
    if m < 1:
        raise ValueError("truncation must be positive")
    ups = [to_residue(a, p, 1) for a in upper]
    lows = [to_residue(b, p, 1) for b in lower]
    xr = to_residue(x, p, 1)
    total, num, den = 0, 1, 1
    for k in range(m):
        total = (total + num * pow(den, -1, p)) % p
        if k == m - 1:
            break
        for a in ups:
            num = num * (a + k) % p
        step = (k + 1) % p
        for b in lows:
            step = step * (b + k) % p
        if step == 0:
            raise ValueError(f"Pochhammer denominator vanishes mod {p} at k = {k + 1}")
        num = num * xr % p
        den = den * step % p
    return total


def classical_hgf_partial(
    upper: Sequence[Rational],
    lower: Sequence[Rational],
    x: Rational,
    N: int,
) -> Fraction:
    """Exact partial sum of the first ``N`` terms of ``{n+1}F{n}(upper; lower | x)``."""
    ups = [PadicRational.of(a).value for a in upper]
    lows = [PadicRational.of(b).value for b in lower]
    x = PadicRational.of(x).value
    total, term = Fraction(0), Fraction(1)
    for k in range(N):
        total += term
        num = Fraction(1)
        for a in ups:
            num *= a + k
        den = Fraction(k + 1)
        for b in lows:
            if b + k == 0:
                raise ZeroDivisionError(f"pole: lower parameter {b} at term {k + 1}")
            den *= b + k
        term = term * num / den * x
    return total
