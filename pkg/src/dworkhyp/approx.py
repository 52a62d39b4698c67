"""Complex numbers at fixed binary precision with a tracked absolute error bound."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

DEFAULT_PREC = 100
ROUNDING_THRESHOLD = 1e-6


class PrecisionError(ArithmeticError):
    """Raised when an approximate total cannot be rounded unambiguously."""


def choose_precision(q: int, d: int = 4) -> int:
    return max(DEFAULT_PREC, math.ceil(math.log2(q) * (d + 3) + 40))


def _mpf(x, prec):
    with mpmath.workprec(prec):
        return mpmath.mpf(x)


@dataclass(frozen=True)
class ComplexApprox:
    """``value`` is within ``err`` of the true complex number.

    Every operation widens ``err`` by the first-order propagated error, the
    product of input errors, and one rounding unit of the result.
    """

    value: mpmath.mpc
    err: mpmath.mpf
    prec: int = DEFAULT_PREC

    @classmethod
    def exact(cls, x, prec: int = DEFAULT_PREC) -> "ComplexApprox":
        """An integer, Fraction or Python complex, rounded once to ``prec`` bits."""
        with mpmath.workprec(prec):
            if isinstance(x, Fraction):
                v = mpmath.mpc(mpmath.mpf(x.numerator) / x.denominator)
            else:
                v = mpmath.mpc(x)
            return cls(v, _ulp(v, prec), prec)

    @classmethod
    def root_of_unity(cls, n: int, m: int, prec: int = DEFAULT_PREC) -> "ComplexApprox":
        """``exp(2 pi i m / n)``."""
        m %= n
        with mpmath.workprec(prec + 10):
            v = mpmath.expjpi(mpmath.mpf(2 * m) / n)
        with mpmath.workprec(prec):
            v = +v
        return cls(v, _mpf(2, prec) ** (2 - prec), prec)

    @property
    def re(self):
        return self.value.real

    @property
    def im(self):
        return self.value.imag

    def _wrap(self, other) -> "ComplexApprox":
        if isinstance(other, ComplexApprox):
            return other
        return ComplexApprox.exact(other, self.prec)

    def _prec(self, other):
        return min(self.prec, other.prec)

    def __add__(self, other):
        other = self._wrap(other)
        prec = self._prec(other)
        with mpmath.workprec(prec):
            v = self.value + other.value
            return ComplexApprox(v, self.err + other.err + _ulp(v, prec), prec)

    __radd__ = __add__

    def __neg__(self):
        # mpmath rounds even negation to the ambient precision
        with mpmath.workprec(self.prec):
            return ComplexApprox(-self.value, self.err, self.prec)

    def __sub__(self, other):
        return self + (-self._wrap(other))

    def __rsub__(self, other):
        return self._wrap(other) - self

    def __mul__(self, other):
        other = self._wrap(other)
        prec = self._prec(other)
        with mpmath.workprec(prec):
            v = self.value * other.value
            err = (
                abs(self.value) * other.err
                + abs(other.value) * self.err
                + self.err * other.err
                + _ulp(v, prec)
            )
            return ComplexApprox(v, err, prec)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._wrap(other)
        prec = self._prec(other)
        with mpmath.workprec(prec):
            b = abs(other.value)
            if b <= other.err:
                raise PrecisionError("divisor is indistinguishable from zero")
            v = self.value / other.value
            err = (self.err + abs(v) * other.err) / (b - other.err) + _ulp(v, prec)
            return ComplexApprox(v, err, prec)

    def __rtruediv__(self, other):
        return self._wrap(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return ComplexApprox.exact(1, self.prec) / self ** (-n)
        out = ComplexApprox.exact(1, self.prec)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def conjugate(self):
        with mpmath.workprec(self.prec):
            return ComplexApprox(mpmath.conj(self.value), self.err, self.prec)

    def abs2(self) -> "ComplexApprox":
        return self * self.conjugate()

    def close_to(self, other, tol=0) -> bool:
        """True when the two enclosing discs, widened by ``tol``, overlap."""
        other = self._wrap(other)
        with mpmath.workprec(self._prec(other)):
            return abs(self.value - other.value) <= self.err + other.err + tol

    def distance(self, other):
        other = self._wrap(other)
        with mpmath.workprec(self._prec(other)):
            return abs(self.value - other.value)

    def nearest_integer(self, threshold: float = ROUNDING_THRESHOLD) -> int:
        """Round to a rational integer, or raise ``PrecisionError``.

        Allowed only if the distance to the integer plus ``err`` is below
        ``threshold``.
        """
        n = int(mpmath.nint(self.value.real))
        residual = self.rounding_residual(n)
        if residual >= threshold:
            raise PrecisionError(
                f"cannot round {mpmath.nstr(self.value, 15)} (err {mpmath.nstr(self.err, 3)}) to an integer"
            )
        return n

    def rounding_residual(self, n: int):
        with mpmath.workprec(self.prec):
            return abs(self.value - n) + self.err

    def __repr__(self):
        return f"ComplexApprox({mpmath.nstr(self.value, 20)} ± {mpmath.nstr(self.err, 3)})"


def _ulp(v, prec):
    return (abs(v) + 1) * mpmath.mpf(2) ** (1 - prec)


def approx_sum(values, prec: int = DEFAULT_PREC) -> ComplexApprox:
    """Pairwise (tree) summation in a fixed order, so error bounds are reproducible."""
    items = list(values)
    if not items:
        return ComplexApprox.exact(0, prec)
    while len(items) > 1:
        nxt = [items[i] + items[i + 1] for i in range(0, len(items) - 1, 2)]
        if len(items) % 2:
            nxt.append(items[-1])
        items = nxt
    return items[0]
