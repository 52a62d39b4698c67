"""Finite fields F_q = F_p[x]/(f) with a fixed generator and discrete-log table.

Elements are encoded as integers ``0 <= i < q`` via their power-basis
coordinates, ``i = c_0 + c_1 p + ... + c_{e-1} p^{e-1}``; index 0 is zero and
index 1 is one.  Multiplication goes through the log/exp tables, addition
through base-p digits.  ``FieldElement`` wraps an index for operator use.
"""
from __future__ import annotations

import itertools
import struct
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from .padic import PadicInt, teichmuller  # noqa: F401  (re-exported)

MAX_Q = 10_000
CACHE_MAGIC = b"DWFF"


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list:
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


# --- polynomials over F_p, coefficient lists, lowest degree first ---------


def _trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a, f, p):
    a = _trim([c % p for c in a])
    inv = pow(f[-1], -1, p)
    while len(a) >= len(f):
        c = a[-1] * inv % p
        shift = len(a) - len(f)
        for i, fc in enumerate(f):
            a[shift + i] = (a[shift + i] - c * fc) % p
        _trim(a)
    return a


def _poly_mulmod(a, b, f, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _poly_mod(out, f, p)


def _poly_powmod(a, n, f, p):
    result, base = [1], _poly_mod(a, f, p)
    while n:
        if n & 1:
            result = _poly_mulmod(result, base, f, p)
        base = _poly_mulmod(base, base, f, p)
        n >>= 1
    return result


def _poly_gcd(a, b, p):
    a, b = _trim([c % p for c in a]), _trim([c % p for c in b])
    while b:
        a, b = b, _poly_mod(a, b, p)
    return a


def is_irreducible(f: Sequence[int], p: int) -> bool:
    """Rabin-style test: ``gcd(x^{p^i} - x, f) = 1`` for ``i <= deg f / 2``."""
    f = _trim([c % p for c in f])
    e = len(f) - 1
    if e < 1:
        return False
    if e == 1:
        return True
    xp = [0, 1]
    for _ in range(e // 2):
        xp = _poly_powmod(xp, p, f, p)
        diff = list(xp) + [0] * max(0, 2 - len(xp))
        diff[1] = (diff[1] - 1) % p
        if len(_poly_gcd(f, diff, p)) > 1:
            return False
    return True


def smallest_irreducible(p: int, e: int) -> tuple:
    """Lexicographically smallest monic irreducible of degree ``e`` over F_p.

    Candidates are compared as coefficient tuples ``(c_0, ..., c_{e-1}, 1)``.
    """
    if e == 1:
        return (0, 1)
    for low in itertools.product(range(p), repeat=e):
        f = list(low) + [1]
        if low[0] != 0 and is_irreducible(f, p):
            return tuple(f)
    raise RuntimeError("no irreducible polynomial found")  # unreachable


class FieldContext:
    """F_q with modulus, generator and full discrete-log table.

    Characters are indexed through the generator: ``T^k(x) = zeta_{q-1}^{k dlog(x)}``.
    Immutable after construction.
    """

    def __init__(self, p: int, e: int, modulus: Sequence[int], generator: Optional[Sequence[int]] = None,
                 *, _tables=None):
        self.p = p
        self.e = e
        self.q = p**e
        self.modulus = tuple(int(c) % p for c in modulus)
        if len(self.modulus) != e + 1 or self.modulus[-1] != 1:
            raise ValueError("modulus must be monic of degree e")
        if not is_irreducible(list(self.modulus), p):
            raise ValueError(f"modulus {self.modulus} is reducible over F_{p}")
        q = self.q
        self._pow_p = np.array([p**i for i in range(e)], dtype=np.int64)
        self.digits = np.array(
            [[(i // p**j) % p for j in range(e)] for i in range(q)], dtype=np.int64
        )
        if _tables is not None:
            gen_index, exp = _tables
            self.generator_index = gen_index
        else:
            if generator is None:
                gen_index = self._smallest_generator()
            else:
                gen_index = self.index(generator)
                if not self._has_full_order(gen_index):
                    raise ValueError(f"{tuple(generator)} does not generate F_{q}^x")
            self.generator_index = gen_index
            exp = self._exp_table(gen_index)
        self.exp = np.asarray(exp, dtype=np.int64)
        log = np.full(q, -1, dtype=np.int64)
        log[self.exp] = np.arange(q - 1)
        if (log[1:] < 0).any():
            raise ValueError("generator table is not a bijection")
        self.log = log
        self._log_list = log.tolist()
        self._exp_list = self.exp.tolist()

    # --- encoding ---------------------------------------------------------

    def index(self, x) -> int:
        if isinstance(x, FieldElement):
            return x.index
        if isinstance(x, (int, np.integer)):
            if self.e == 1:
                return int(x) % self.p
            if not 0 <= x < self.q:
                raise ValueError(f"index {x} out of range for F_{self.q}")
            return int(x)
        coeffs = list(x)
        if len(coeffs) != self.e:
            raise ValueError(f"expected {self.e} coefficients")
        return sum((int(c) % self.p) * self.p**i for i, c in enumerate(coeffs))

    def coeffs(self, i: int) -> tuple:
        return tuple(int(c) for c in self.digits[i])

    def element(self, x) -> "FieldElement":
        return FieldElement(self, self.index(x))

    @property
    def generator(self) -> "FieldElement":
        return FieldElement(self, self.generator_index)

    def from_int(self, n: int) -> int:
        """Index of the image of the integer ``n`` in the prime field."""
        return n % self.p

    # --- construction helpers ---------------------------------------------

    def _poly(self, i: int):
        return [int(c) for c in self.digits[i]]

    def _from_poly(self, a) -> int:
        a = list(a) + [0] * (self.e - len(a))
        return sum(c * self.p**j for j, c in enumerate(a))

    def _has_full_order(self, i: int) -> bool:
        if i == 0:
            return False
        f = list(self.modulus)
        a = self._poly(i)
        for r in prime_factors(self.q - 1):
            if _poly_powmod(a, (self.q - 1) // r, f, self.p) == [1]:
                return False
        return _poly_powmod(a, self.q - 1, f, self.p) == [1]

    def _smallest_generator(self) -> int:
        for c in itertools.product(range(self.p), repeat=self.e):
            i = self.index(c)
            if self._has_full_order(i):
                return i
        raise RuntimeError("no generator found")  # unreachable

    def _exp_table(self, gen: int):
        f = list(self.modulus)
        g = self._poly(gen)
        out, cur = [], [1]
        for _ in range(self.q - 1):
            out.append(self._from_poly(cur))
            cur = _poly_mulmod(cur, g, f, self.p)
        return out

    # --- scalar arithmetic on indices -------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        return int(((self.digits[a] + self.digits[b]) % self.p) @ self._pow_p)

    def neg(self, a: int) -> int:
        if self.e == 1:
            return (-a) % self.p
        return int(((-self.digits[a]) % self.p) @ self._pow_p)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp_list[(self._log_list[a] + self._log_list[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return self._exp_list[(-self._log_list[a]) % (self.q - 1)]

    def pow(self, a: int, n: int) -> int:
        if a == 0:
            if n <= 0:
                raise ZeroDivisionError("0 to a non-positive power")
            return 0
        return self._exp_list[(self._log_list[a] * n) % (self.q - 1)]

    def dlog(self, a: int) -> int:
        if a == 0:
            raise ValueError("dlog(0) is undefined")
        return self._log_list[a]

    @cached_property
    def minus_one(self) -> int:
        return self.neg(1)

    # --- vectorised arithmetic --------------------------------------------

    def add_arrays(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if self.e == 1:
            return (a + b) % self.p
        return ((self.digits[a] + self.digits[b]) % self.p) @ self._pow_p

    def mul_arrays(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        la, lb = self.log[a], self.log[b]
        out = self.exp[(la + lb) % (self.q - 1)]
        return np.where((la < 0) | (lb < 0), 0, out)

    def pow_array(self, n: int) -> np.ndarray:
        """``x -> x^n`` for every index ``x`` (``n >= 1``)."""
        out = self.exp[(self.log * n) % (self.q - 1)]
        out[0] = 0
        return out

    @cached_property
    def trace_table(self) -> np.ndarray:
        """``tr(x) = x + x^p + ... + x^{p^{e-1}}`` as a residue in [0, p)."""
        acc = np.zeros(self.q, dtype=np.int64)
        for i in range(self.e):
            acc = self.add_arrays(acc, self.pow_array(self.p**i))
        if (acc >= self.p).any():
            raise AssertionError("trace left the prime field")
        return acc

    def trace(self, x) -> int:
        return int(self.trace_table[self.index(x)])

    def __repr__(self):
        return f"FieldContext(p={self.p}, e={self.e}, modulus={self.modulus}, generator={self.coeffs(self.generator_index)})"

    # --- dlog cache ---------------------------------------------------------

    def save_cache(self, cache_dir) -> Path:
        path = cache_file(cache_dir, self.p, self.e, self.modulus)
        path.parent.mkdir(parents=True, exist_ok=True)
        header = CACHE_MAGIC + struct.pack("<II", self.p, self.e)
        header += struct.pack(f"<{self.e + 1}I", *self.modulus)
        body = self.log[1:].astype("<u4").tobytes()
        path.write_bytes(header + body)
        return path


@dataclass(frozen=True)
class FieldElement:
    ctx: FieldContext = field(repr=False, compare=False)
    index: int

    @property
    def coeffs(self) -> tuple:
        return self.ctx.coeffs(self.index)

    def _idx(self, other):
        return other.index if isinstance(other, FieldElement) else self.ctx.index(other)

    def __add__(self, other):
        return FieldElement(self.ctx, self.ctx.add(self.index, self._idx(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.ctx, self.ctx.sub(self.index, self._idx(other)))

    def __rsub__(self, other):
        return FieldElement(self.ctx, self.ctx.sub(self._idx(other), self.index))

    def __neg__(self):
        return FieldElement(self.ctx, self.ctx.neg(self.index))

    def __mul__(self, other):
        return FieldElement(self.ctx, self.ctx.mul(self.index, self._idx(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.ctx, self.ctx.mul(self.index, self.ctx.inv(self._idx(other))))

    def __pow__(self, n: int):
        return FieldElement(self.ctx, self.ctx.pow(self.index, n))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.index == other.index and self.ctx.q == other.ctx.q
        if isinstance(other, int):
            return self.index == self.ctx.index(other)
        return NotImplemented

    def __hash__(self):
        return hash(self.index)

    def __bool__(self):
        return self.index != 0


def cache_file(cache_dir, p: int, e: int, modulus) -> Path:
    mod = "-".join(str(c) for c in modulus)
    return Path(cache_dir) / f"dlog_{p}_{e}_{mod}.bin"


def _load_cache(path: Path, p: int, e: int, modulus: tuple):
    try:
        data = path.read_bytes()
    except OSError:
        return None
    head = 4 + 8 + 4 * (e + 1)
    if len(data) != head + 4 * (p**e - 1) or data[:4] != CACHE_MAGIC:
        return None
    if struct.unpack("<II", data[4:12]) != (p, e):
        return None
    if tuple(struct.unpack(f"<{e + 1}I", data[12:head])) != modulus:
        return None
    logs = np.frombuffer(data[head:], dtype="<u4").astype(np.int64)
    exp = np.zeros(p**e - 1, dtype=np.int64)
    exp[logs] = np.arange(1, p**e)
    return int(exp[1]), exp


def build_field(
    p: int,
    e: int = 1,
    *,
    modulus: Optional[Sequence[int]] = None,
    generator=None,
    max_q: int = MAX_Q,
    cache_dir=None,
) -> FieldContext:
    """Deterministic realization of F_{p^e}.

    Uses the lexicographically smallest monic irreducible modulus and the
    lexicographically smallest generator (on power-basis coordinates) unless
    either is given explicitly.  With ``cache_dir`` the dlog table is read
    from / written to a ``DWFF`` binary file; a missing or corrupt file is
    silently rebuilt.
    """
    if not isinstance(p, int) or not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p == 2:
        raise ValueError("characteristic 2 is not supported")
    if e < 1:
        raise ValueError("degree must be positive")
    if p**e > max_q:
        raise ValueError(f"q = {p}^{e} exceeds the size bound {max_q}")
    mod = tuple(modulus) if modulus is not None else smallest_irreducible(p, e)
    if cache_dir is not None and generator is None:
        cached = _load_cache(cache_file(cache_dir, p, e, mod), p, e, mod)
        if cached is not None:
            try:
                ctx = FieldContext(p, e, mod, _tables=cached)
                if ctx._has_full_order(ctx.generator_index):
                    return ctx
            except ValueError:
                pass
        ctx = FieldContext(p, e, mod)
        try:
            ctx.save_cache(cache_dir)
        except OSError:
            pass
        return ctx
    return FieldContext(p, e, mod, generator)


def all_irreducible_moduli(p: int, e: int) -> list:
    out = []
    for low in itertools.product(range(p), repeat=e):
        f = list(low) + [1]
        if (e == 1 or low[0] != 0) and is_irreducible(f, p):
            out.append(tuple(f))
    return out


def all_generators(ctx: FieldContext) -> list:
    """Indices of every generator of F_q^x (``g^k`` with ``gcd(k, q-1) = 1``)."""
    import math

    n = ctx.q - 1
    return sorted(ctx._exp_list[k] for k in range(1, n) if math.gcd(k, n) == 1) if n > 1 else [1]
