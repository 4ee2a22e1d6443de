"""Arithmetic in the finite fields GF(p^k).

Field elements are plain integers in ``[0, q)``: the integer with base-p
digits ``(c_0, c_1, ..., c_{k-1})`` stands for the polynomial
``c_0 + c_1*x + ... + c_{k-1}*x^{k-1}`` over GF(p).  A :class:`GF` object
carries the characteristic, the reducing polynomial, and dense
multiplication/inverse tables for small fields.

The reducing polynomial is the lexicographically smallest monic irreducible
polynomial of the right degree, comparing coefficient vectors from the
constant term up, so a given ``(p, k)`` always yields the same labelled
field and every structure built on top of it is reproducible.
"""

from __future__ import annotations

import itertools

from .errors import DegreeZero, NonPrimeCharacteristic, OrderTooLarge

DEFAULT_MAX_ORDER = 1 << 16
_TABLE_LIMIT = 256  # dense mul/inv tables below this order


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def _poly_mod(num: list[int], den: tuple[int, ...], p: int) -> list[int]:
    # Remainder of num by monic den, coefficients low-degree-first.
    num = list(num)
    dd = len(den) - 1
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i] % p
        if c:
            for j in range(dd + 1):
                num[i - dd + j] = (num[i - dd + j] - c * den[j]) % p
    while len(num) > dd:
        num.pop()
    while len(num) < dd:
        num.append(0)
    return [c % p for c in num]


def _is_irreducible(poly: tuple[int, ...], p: int) -> bool:
    """Trial division by every monic polynomial of degree 1..deg//2."""
    deg = len(poly) - 1
    for d in range(1, deg // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            den = low + (1,)
            if not any(_poly_mod(list(poly), den, p)):
                return False
    return True


def smallest_irreducible(p: int, k: int) -> tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree k over GF(p).

    Coefficient tuples are compared constant term first.  For k = 1 the
    convention is the polynomial x, i.e. ``(0, 1)``.
    """
    if k == 1:
        return (0, 1)
    for low in itertools.product(range(p), repeat=k):
        cand = low + (1,)
        if _is_irreducible(cand, p):
            return cand
    raise AssertionError("no irreducible polynomial found")  # unreachable


class GF:
    """A finite field GF(p^k) acting on integer element indices.

    Instances are immutable after construction and safe to share across
    threads.  All operations take and return plain ints in ``[0, q)``.
    """

    __slots__ = ("p", "k", "q", "modulus", "_mul", "_inv")

    def __init__(self, p: int, k: int, modulus: tuple[int, ...]):
        self.p = p
        self.k = k
        self.q = p**k
        self.modulus = modulus
        self._mul: list[list[int]] | None = None
        self._inv: list[int] | None = None
        if self.q <= _TABLE_LIMIT:
            self._build_tables()

    # -- representation helpers ------------------------------------------

    def _digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.k):
            out.append(a % self.p)
            a //= self.p
        return out

    def _undigits(self, digs: list[int]) -> int:
        val = 0
        for c in reversed(digs):
            val = val * self.p + c
        return val

    def coeffs(self, a: int) -> tuple[int, ...]:
        """Polynomial coefficients of element a, low degree first."""
        return tuple(self._digits(a))

    # -- arithmetic -------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        da, db = self._digits(a), self._digits(b)
        return self._undigits([(x + y) % self.p for x, y in zip(da, db)])

    def neg(self, a: int) -> int:
        if self.k == 1:
            return (-a) % self.p
        return self._undigits([(-x) % self.p for x in self._digits(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def _mul_slow(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a * b) % self.p
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * self.k - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] += x * y
        return self._undigits(_poly_mod(prod, self.modulus, self.p))

    def mul(self, a: int, b: int) -> int:
        if self._mul is not None:
            return self._mul[a][b]
        return self._mul_slow(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative inverse")
        if self._inv is not None:
            return self._inv[a]
        # a^(q-2) by square and multiply; fine for the rare large-q path.
        result, base, e = 1, a, self.q - 2
        while e:
            if e & 1:
                result = self._mul_slow(result, base)
            base = self._mul_slow(base, base)
            e >>= 1
        return result

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def elements(self) -> range:
        """All q element indices, ascending."""
        return range(self.q)

    def _build_tables(self) -> None:
        q = self.q
        mul = [[0] * q for _ in range(q)]
        for a in range(q):
            row = mul[a]
            for b in range(a, q):
                v = self._mul_slow(a, b)
                row[b] = v
                mul[b][a] = v
        inv = [0] * q
        for a in range(1, q):
            for b in range(1, q):
                if mul[a][b] == 1:
                    inv[a] = b
                    break
        self._mul = mul
        self._inv = inv

    def __repr__(self) -> str:
        return f"GF({self.p}^{self.k})" if self.k > 1 else f"GF({self.p})"


def make_field(p: int, k: int, max_order: int = DEFAULT_MAX_ORDER) -> GF:
    """Construct GF(p^k) with the canonical smallest reducing polynomial.

    Raises NonPrimeCharacteristic, DegreeZero, or OrderTooLarge when the
    parameters are unusable.
    """
    if k < 1:
        raise DegreeZero(f"extension degree must be >= 1, got {k}")
    if not is_prime(p):
        raise NonPrimeCharacteristic(f"{p} is not prime")
    if p**k > max_order:
        raise OrderTooLarge(f"{p}^{k} exceeds the ceiling {max_order}")
    return GF(p, k, smallest_irreducible(p, k))


def field_for_order(q: int, max_order: int = DEFAULT_MAX_ORDER) -> GF:
    """GF(q) for a prime power q; factors q as p^k first."""
    if q < 2:
        raise NonPrimeCharacteristic(f"{q} is not a prime power")
    p = 2
    while p * p <= q:
        if q % p == 0:
            break
        p += 1
    else:
        p = q
    k = 0
    rest = q
    while rest % p == 0 and rest > 1:
        rest //= p
        k += 1
    if rest != 1:
        raise NonPrimeCharacteristic(f"{q} is not a prime power")
    return make_field(p, k, max_order)
