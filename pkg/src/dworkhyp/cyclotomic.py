"""Exact arithmetic in Q(zeta_n).

A ``CycloNumber`` is an integer coefficient vector in the power basis
``1, zeta, ..., zeta^{phi(n)-1}`` together with one positive common
denominator.  Character sums are most naturally accumulated in the group ring
``Z[x]/(x^n - 1)`` (multiplying by ``zeta^m`` is a rotation there), so
``from_group_ring`` folds such a vector into canonical form.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath
import numpy as np

from .approx import DEFAULT_PREC, ComplexApprox, approx_sum

MAX_PHI = 4096


def _poly_divexact(a, b):
    """Exact quotient of integer polynomials (low degree first), ``b`` monic."""
    a = list(a)
    out = [0] * (len(a) - len(b) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = a[i + len(b) - 1]
        out[i] = c
        if c:
            for j, bj in enumerate(b):
                a[i + j] -= c * bj
    if any(a):
        raise ArithmeticError("polynomial division is not exact")
    return out


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple:
    """Coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise ValueError("n must be positive")
    f = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            f = _poly_divexact(f, cyclotomic_poly(d))
    return tuple(f)


def euler_phi(n: int) -> int:
    out, m, f = n, n, 2
    while f * f <= m:
        if m % f == 0:
            while m % f == 0:
                m //= f
            out -= out // f
        f += 1
    if m > 1:
        out -= out // m
    return out


class CycloContext:
    """Q(zeta_n) with its defining polynomial ``phi`` = Phi_n."""

    def __init__(self, n: int):
        self.n = n
        self.phi = cyclotomic_poly(n)
        self.degree = len(self.phi) - 1
        self._phi_arr = np.array(self.phi[:-1], dtype=object)

    def __repr__(self):
        return f"CycloContext(n={self.n})"

    def __eq__(self, other):
        return isinstance(other, CycloContext) and other.n == self.n

    def __hash__(self):
        return hash(("cyclo", self.n))

    def reduce(self, vec) -> np.ndarray:
        """Reduce a coefficient vector of any length modulo ``x^n - 1`` and Phi_n."""
        n, deg = self.n, self.degree
        vec = np.asarray(vec, dtype=object)
        if len(vec) > n:
            folded = np.zeros(n, dtype=object)
            for start in range(0, len(vec), n):
                chunk = vec[start:start + n]
                folded[: len(chunk)] += chunk
            vec = folded
        else:
            vec = vec.copy()
        for i in range(len(vec) - 1, deg - 1, -1):
            c = vec[i]
            if c:
                vec[i - deg:i] -= c * self._phi_arr
                vec[i] = 0
        out = np.zeros(deg, dtype=object)
        m = min(deg, len(vec))
        out[:m] = vec[:m]
        return out

    def zero(self) -> "CycloNumber":
        return CycloNumber(self, np.zeros(self.degree, dtype=object), 1)

    def one(self) -> "CycloNumber":
        return self.rational(1)

    def rational(self, x) -> "CycloNumber":
        x = Fraction(x)
        num = np.zeros(self.degree, dtype=object)
        num[0] = x.numerator
        return CycloNumber(self, num, x.denominator)

    def zeta(self, m: int = 1) -> "CycloNumber":
        vec = np.zeros(self.n, dtype=object)
        vec[m % self.n] = 1
        return self.from_group_ring(vec)

    def from_group_ring(self, vec, den: int = 1) -> "CycloNumber":
        """``sum_i vec[i] zeta^i / den`` for an integer vector indexed mod ``n``."""
        return CycloNumber(self, self.reduce(vec), den)


@lru_cache(maxsize=256)
def cyclo_context(n: int, max_phi: int = MAX_PHI) -> CycloContext:
    if n < 1:
        raise ValueError("conductor must be positive")
    if euler_phi(n) > max_phi:
        raise ValueError(f"phi({n}) = {euler_phi(n)} exceeds the bound {max_phi}")
    return CycloContext(n)


class CycloNumber:
    """Exact element of Q(zeta_n); immutable."""

    __slots__ = ("ctx", "num", "den")

    def __init__(self, ctx: CycloContext, num, den: int = 1):
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        num = np.asarray(num, dtype=object)
        if len(num) != ctx.degree:
            raise ValueError("coefficient vector has the wrong length")
        den = int(den)
        if den < 0:
            num, den = -num, -den
        g = den
        for c in num:
            if g == 1:
                break
            g = math.gcd(g, int(c))
        if g > 1:
            num = num // g
            den //= g
        self.ctx = ctx
        self.num = num
        self.den = den

    # --- views -----------------------------------------------------------

    @property
    def coeffs(self) -> tuple:
        return tuple(Fraction(int(c), self.den) for c in self.num)

    def is_rational(self) -> bool:
        return not any(self.num[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return Fraction(int(self.num[0]), self.den) if self.ctx.degree else Fraction(0)

    def is_integral(self) -> bool:
        """Integer coordinates in the power basis (i.e. lies in Z[zeta_n])."""
        return self.den == 1

    def __bool__(self):
        return any(self.num)

    # --- arithmetic --------------------------------------------------------

    def _lift(self, other) -> "CycloNumber":
        if isinstance(other, CycloNumber):
            if other.ctx.n != self.ctx.n:
                raise ValueError(f"mixed conductors {self.ctx.n} and {other.ctx.n}")
            return other
        if isinstance(other, (int, Fraction, np.integer)):
            return self.ctx.rational(other)
        raise TypeError(f"cannot combine CycloNumber with {type(other).__name__}")

    def __add__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        den = self.den * other.den // math.gcd(self.den, other.den)
        return CycloNumber(self.ctx, self.num * (den // self.den) + other.num * (den // other.den), den)

    __radd__ = __add__

    def __neg__(self):
        return CycloNumber(self.ctx, -self.num, self.den)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, np.integer)):
            return CycloNumber(self.ctx, self.num * int(other), self.den)
        if isinstance(other, Fraction):
            return CycloNumber(self.ctx, self.num * other.numerator, self.den * other.denominator)
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        prod = np.convolve(self.num, other.num) if self.ctx.degree else self.num
        return CycloNumber(self.ctx, self.ctx.reduce(prod), self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, CycloNumber):
            if not other.is_rational():
                raise TypeError("division is only by nonzero rationals")
            other = other.rational_value()
        other = Fraction(other)
        if other == 0:
            raise ZeroDivisionError("division by zero")
        return self * (1 / other)

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not supported")
        out, base = self.ctx.one(), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conjugate(self) -> "CycloNumber":
        """Complex conjugation, zeta -> zeta^{-1}."""
        n = self.ctx.n
        vec = np.zeros(n, dtype=object)
        for i, c in enumerate(self.num):
            vec[(-i) % n] += c
        return CycloNumber(self.ctx, self.ctx.reduce(vec), self.den)

    def __eq__(self, other):
        try:
            other = self._lift(other)
        except (TypeError, ValueError):
            return NotImplemented
        return self.den == other.den and all(a == b for a, b in zip(self.num, other.num))

    def __hash__(self):
        return hash((self.ctx.n, tuple(int(c) for c in self.num), self.den))

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.num):
            if c:
                terms.append(f"{c}" if i == 0 else f"{c}*z^{i}")
        body = " + ".join(terms) or "0"
        return f"({body})/{self.den} in Q(zeta_{self.ctx.n})" if self.den != 1 else f"{body} in Q(zeta_{self.ctx.n})"

    # --- embeddings and reductions ------------------------------------------

    def to_complex(self, prec: int = DEFAULT_PREC) -> ComplexApprox:
        """Image under zeta_n -> exp(2 pi i / n)."""
        n = self.ctx.n
        terms = [
            ComplexApprox.root_of_unity(n, i, prec) * int(c)
            for i, c in enumerate(self.num)
            if c
        ]
        return approx_sum(terms, prec) / self.den

    def __complex__(self):
        v = self.to_complex(53).value
        return complex(v)

    def embed_mod(self, root: int, modulus: int) -> int:
        """Image under zeta_n -> ``root`` in Z/modulus (``root`` must have order dividing n)."""
        acc, power = 0, 1
        for c in self.num:
            acc = (acc + int(c) * power) % modulus
            power = power * root % modulus
        if math.gcd(self.den, modulus) != 1:
            raise ZeroDivisionError(
                f"denominator {self.den} is not invertible mod {modulus}; value is not integral there"
            )
        return acc * pow(self.den, -1, modulus) % modulus


def reduce_mod_p(v: CycloNumber, field) -> int:
    """Reduce ``v`` in Q(zeta_{p-1}) modulo the prime above p on which zeta_{p-1} -> g.

    ``g`` is the generator of the prime field ``field``; this is the prime
    for which the character ``T^k`` reduces to the k-th power of the
    Teichmuller character.
    """
    if field.e != 1:
        raise ValueError("reduction is implemented for prime fields only")
    p = field.p
    if v.ctx.n != p - 1:
        raise ValueError(f"expected a value in Q(zeta_{p - 1}), got conductor {v.ctx.n}")
    return v.embed_mod(field.generator_index, p)


def reduce_mod_pk(v: CycloNumber, field, k: int) -> int:
    """As ``reduce_mod_p`` but modulo ``p^k``, sending zeta_{p-1} to the Teichmuller lift of g."""
    from .padic import teichmuller

    if field.e != 1:
        raise ValueError("reduction is implemented for prime fields only")
    p = field.p
    if v.ctx.n != p - 1:
        raise ValueError(f"expected a value in Q(zeta_{p - 1}), got conductor {v.ctx.n}")
    return v.embed_mod(teichmuller(field.generator_index, p, k).residue, p**k)


def evaluate_phi_at_zeta(n: int, prec: int = DEFAULT_PREC) -> ComplexApprox:
    """Phi_n(exp(2 pi i / n)) in the approximate backend; should enclose 0."""
    phi = cyclotomic_poly(n)
    return approx_sum(
        [ComplexApprox.root_of_unity(n, i, prec) * c for i, c in enumerate(phi) if c], prec
    )


def complex_value(v: CycloNumber, prec: int = DEFAULT_PREC):
    """Plain mpmath complex value of ``v`` (no error bound)."""
    with mpmath.workprec(prec):
        return v.to_complex(prec).value
