"""Finite fields GF(2^e) (1 <= e <= 16) and GF(p) (p < 2^16).

Elements are plain Python ints in ``[0, q)``.  For binary-extension fields an
element is the bit vector of a polynomial in ``x`` reduced modulo the
primitive polynomial listed in :data:`PRIMITIVE_POLYNOMIALS`; the monomial
``x`` (integer 2) is the primitive element.  For prime fields an element is a
residue and the primitive element is the smallest primitive root.

Multiplication goes through exp/log tables.  Fields are cached and immutable,
so ``binary_field(8) is binary_field(8)``.
"""

from __future__ import annotations

import functools
import re

import numpy as np

from .errors import (
    BadFieldIdentifier,
    DivisionByZero,
    FieldNotOrderFourPower,
    NonPrimeCharacteristic,
    UnsupportedDegree,
    ZeroToNegativePower,
)

BINARY = "binary"
PRIME = "prime"

# Frozen table: degree -> primitive polynomial bit mask (bit i = coefficient
# of x^i).  Changing an entry changes every encoded shard.
PRIMITIVE_POLYNOMIALS = {
    1: 0x3,        # x + 1
    2: 0x7,        # x^2 + x + 1
    3: 0xB,        # x^3 + x + 1
    4: 0x13,       # x^4 + x + 1
    5: 0x25,       # x^5 + x^2 + 1
    6: 0x43,       # x^6 + x + 1
    7: 0x83,       # x^7 + x + 1
    8: 0x11D,      # x^8 + x^4 + x^3 + x^2 + 1
    9: 0x211,      # x^9 + x^4 + 1
    10: 0x409,     # x^10 + x^3 + 1
    11: 0x805,     # x^11 + x^2 + 1
    12: 0x1053,    # x^12 + x^6 + x^4 + x + 1
    13: 0x201B,    # x^13 + x^4 + x^3 + x + 1
    14: 0x4443,    # x^14 + x^10 + x^6 + x + 1
    15: 0x8003,    # x^15 + x + 1
    16: 0x1100B,   # x^16 + x^12 + x^3 + x + 1
}

MAX_PRIME = 1 << 16


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def smallest_primitive_root(p: int) -> int:
    if p == 2:
        return 1
    factors = _prime_factors(p - 1)
    for g in range(2, p):
        if all(pow(g, (p - 1) // r, p) != 1 for r in factors):
            return g
    raise AssertionError(f"no primitive root mod {p}")  # unreachable for primes


class Field:
    """A concrete finite field with a designated primitive element ``w``.

    Use :func:`make_field`, :func:`binary_field`, :func:`prime_field` or
    :meth:`Field.parse` rather than calling the constructor directly.
    """

    __slots__ = ("kind", "p", "e", "order", "modulus", "w", "exp", "log", "_np")

    def __init__(self, kind: str, p: int, e: int):
        self.kind = kind
        self.p = p
        self.e = e
        self.order = p ** e
        q = self.order
        exp = [0] * (q - 1)
        log = [-1] * q
        if kind == BINARY:
            self.modulus = PRIMITIVE_POLYNOMIALS[e]
            self.w = 2 if e > 1 else 1
            x = 1
            for i in range(q - 1):
                exp[i] = x
                log[x] = i
                x <<= 1
                if x & q:
                    x ^= self.modulus
        else:
            self.modulus = p
            self.w = smallest_primitive_root(p)
            x = 1
            for i in range(q - 1):
                exp[i] = x
                log[x] = i
                x = x * self.w % p
        # A non-primitive polynomial or root would revisit an element early.
        if any(log[v] < 0 for v in range(1, q)) or x != 1:
            raise AssertionError(f"built-in generator for {self.ident} is not primitive")
        self.exp = tuple(exp)
        self.log = tuple(log)
        self._np = None

    # -- identity --------------------------------------------------------

    @property
    def ident(self) -> str:
        return f"gf2^{self.e}" if self.kind == BINARY else f"prime:{self.p}"

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def symbol_bytes(self) -> int:
        """Bytes used to store one element in a shard file.

        One byte for binary fields up to GF(2^8); two little-endian bytes for
        larger binary fields and for every prime field.
        """
        return 1 if self.kind == BINARY and self.order <= 256 else 2

    @property
    def data_bits(self) -> int:
        """Largest b with 2^b <= q; that many input bits fit in one element."""
        return self.order.bit_length() - 1

    def __repr__(self):
        return f"Field({self.ident!r})"

    def __eq__(self, other):
        return isinstance(other, Field) and (self.p, self.e) == (other.p, other.e)

    def __hash__(self):
        return hash((self.p, self.e))

    def __reduce__(self):
        return (make_field, (self.kind, self.p, self.e))

    @classmethod
    def parse(cls, ident: str) -> "Field":
        """Parse ``gf2^E`` or ``prime:P``."""
        text = ident.strip().lower()
        m = re.fullmatch(r"gf2\^(\d+)", text)
        if m:
            return make_field(BINARY, 2, int(m.group(1)))
        m = re.fullmatch(r"prime:(\d+)", text)
        if m:
            return make_field(PRIME, int(m.group(1)), 1)
        raise BadFieldIdentifier(f"cannot parse field identifier {ident!r}")

    # -- scalar arithmetic ----------------------------------------------

    def __contains__(self, x) -> bool:
        return isinstance(x, int) and 0 <= x < self.order

    def add(self, x: int, y: int) -> int:
        if self.kind == BINARY:
            return x ^ y
        s = x + y
        return s - self.p if s >= self.p else s

    def sub(self, x: int, y: int) -> int:
        if self.kind == BINARY:
            return x ^ y
        return (x - y) % self.p

    def neg(self, x: int) -> int:
        if self.kind == BINARY:
            return x
        return (-x) % self.p

    def mul(self, x: int, y: int) -> int:
        if x == 0 or y == 0:
            return 0
        return self.exp[(self.log[x] + self.log[y]) % (self.order - 1)]

    def inv(self, x: int) -> int:
        if x == 0:
            raise DivisionByZero(f"0 has no inverse in {self.ident}")
        return self.exp[-self.log[x] % (self.order - 1)]

    def div(self, x: int, y: int) -> int:
        if y == 0:
            raise DivisionByZero(f"division by 0 in {self.ident}")
        if x == 0:
            return 0
        return self.exp[(self.log[x] - self.log[y]) % (self.order - 1)]

    def pow(self, x: int, n: int) -> int:
        if x == 0:
            if n < 0:
                raise ZeroToNegativePower("0 raised to a negative power")
            return 1 if n == 0 else 0
        return self.exp[self.log[x] * n % (self.order - 1)]

    def w_pow(self, n: int) -> int:
        """``w**n`` for any integer ``n``."""
        return self.exp[n % (self.order - 1)]

    def arith(self, op: str, x: int, y: int | None = None) -> int:
        """Dispatch by name: add, sub, mul, div, neg, inv."""
        if op in ("neg", "inv"):
            return getattr(self, op)(x)
        if op not in ("add", "sub", "mul", "div"):
            raise ValueError(f"unknown field operation {op!r}")
        return getattr(self, op)(x, y)

    def elements(self):
        return range(self.order)

    # -- bulk arithmetic on numpy arrays --------------------------------

    @property
    def tables(self):
        """(exp, log) as int64 numpy arrays; exp is doubled to skip a modulo."""
        if self._np is None:
            exp = np.array(self.exp + self.exp, dtype=np.int64)
            log = np.array(self.log, dtype=np.int64)
            self._np = (exp, log)
        return self._np

    def scale_array(self, c: int, arr: np.ndarray) -> np.ndarray:
        """Multiply every element of ``arr`` by the scalar ``c``."""
        if c == 0:
            return np.zeros_like(arr)
        if c == 1:
            return arr.copy()
        if self.kind == PRIME:
            return arr * c % self.p
        exp, log = self.tables
        out = exp[log[arr] + self.log[c]]
        out[arr == 0] = 0
        return out

    def add_arrays(self, x: np.ndarray, y: np.ndarray) -> np.ndarray:
        if self.kind == BINARY:
            return x ^ y
        return (x + y) % self.p

    def neg_array(self, x: np.ndarray) -> np.ndarray:
        if self.kind == BINARY:
            return x
        return (-x) % self.p


@functools.lru_cache(maxsize=None)
def make_field(kind: str, p: int, e: int = 1) -> Field:
    """Build (or fetch from cache) the field of the given kind.

    Raises :class:`NonPrimeCharacteristic` or :class:`UnsupportedDegree` for
    parameters outside GF(2^1..2^16) and GF(p), p < 2^16.
    """
    if kind not in (BINARY, PRIME):
        raise BadFieldIdentifier(f"unknown field kind {kind!r}")
    if not is_prime(p):
        raise NonPrimeCharacteristic(f"{p} is not prime")
    if kind == BINARY:
        if p != 2:
            raise NonPrimeCharacteristic(f"binary-extension fields need p=2, got {p}")
        if not 1 <= e <= 16:
            raise UnsupportedDegree(f"extension degree {e} not in [1, 16]")
    else:
        if e != 1:
            raise UnsupportedDegree(f"prime fields have degree 1, got {e}")
        if p >= MAX_PRIME:
            raise UnsupportedDegree(f"prime {p} is not below 2^16")
    return Field(kind, p, e)


def binary_field(e: int) -> Field:
    return make_field(BINARY, 2, e)


def prime_field(p: int) -> Field:
    return make_field(PRIME, p, 1)


def is_order_four_power(field: Field) -> bool:
    """True when q = 2^(2t), the fields where 3 | q - 1 in characteristic 2."""
    return field.kind == BINARY and field.e % 2 == 0


def cubic_nonvanishing(field: Field, i: int) -> bool:
    """Whether ``w^(2i) + w^i + 1 != 0``.

    Holds for every ``0 <= i < (q-1)/3`` when q = 2^(2t); at ``i = (q-1)/3``
    the power ``w^i`` is a primitive cube root of unity and the sum vanishes.
    """
    if not is_order_four_power(field):
        raise FieldNotOrderFourPower(f"{field.ident} is not of order 2^(2t)")
    if not 0 <= i < field.order - 1:
        raise ValueError(f"exponent {i} outside [0, q-1)")
    wi = field.w_pow(i)
    return field.add(field.add(field.mul(wi, wi), wi), 1) != 0
