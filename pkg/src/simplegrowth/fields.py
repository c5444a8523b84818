"""Arithmetic in small finite fields GF(p^k).

Elements are encoded as integers ``0..q-1``: the base-``p`` digits of the
integer are the polynomial coefficients, lowest degree first. The modulus is
the lexicographically smallest monic irreducible polynomial of degree ``k``,
so the encoding is fixed for every ``q``.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, k)`` with ``q == p**k``, or ``None`` if ``q`` is not a prime power."""
    if q < 2:
        return None
    p = next(d for d in range(2, q + 1) if q % d == 0)
    k = 0
    while q % p == 0:
        q //= p
        k += 1
    return (p, k) if q == 1 else None


def _is_irreducible(poly: tuple[int, ...], p: int) -> bool:
    # brute-force irreducibility for tiny degrees: no monic factor of degree <= k/2
    k = len(poly) - 1
    for d in range(1, k // 2 + 1):
        for low in product(range(p), repeat=d):
            divisor = tuple(low) + (1,)
            if _poly_rem(poly, divisor, p) == (0,) * d:
                return False
    return True


def _poly_rem(a: tuple[int, ...], b: tuple[int, ...], p: int) -> tuple[int, ...]:
    rem = list(a)
    db = len(b) - 1
    for shift in range(len(a) - 1 - db, -1, -1):
        coef = rem[shift + db] % p
        if coef:
            for i, c in enumerate(b):
                rem[shift + i] = (rem[shift + i] - coef * c) % p
    return tuple(r % p for r in rem[:db])


class GF:
    """The field with ``q`` elements, with full addition and multiplication tables."""

    def __init__(self, q: int):
        pk = prime_power(q)
        if pk is None:
            raise ValueError(f"{q} is not a prime power")
        self.q = q
        self.p, self.k = pk
        p, k = self.p, self.k
        if k == 1:
            self.modulus = (0, 1)
        else:
            self.modulus = next(
                tuple(low) + (1,)
                for low in product(range(p), repeat=k)
                if low[0] != 0 and _is_irreducible(tuple(low) + (1,), p)
            )
        digits = [self._digits(x) for x in range(q)]
        self.add = [[self._encode([(a + b) % p for a, b in zip(da, db)]) for db in digits] for da in digits]
        self.mul = [[self._encode(self._polymul(da, db)) for db in digits] for da in digits]
        self.neg = [self.add[x].index(0) for x in range(q)]
        self.inv = [0] + [self.mul[x].index(1) for x in range(1, q)]
        self.primitive = next(x for x in range(2, q) if self._order(x) == q - 1) if q > 2 else 1

    def _digits(self, x: int) -> list[int]:
        out = []
        for _ in range(self.k):
            out.append(x % self.p)
            x //= self.p
        return out

    def _encode(self, digits: list[int]) -> int:
        return sum(d * self.p**i for i, d in enumerate(digits))

    def _polymul(self, a: list[int], b: list[int]) -> list[int]:
        p, k = self.p, self.k
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
        if k == 1:
            return prod
        return list(_poly_rem(tuple(prod) + (0,), self.modulus, p)) if len(prod) > k else prod[:k]

    def _order(self, x: int) -> int:
        n, y = 1, x
        while y != 1:
            y = self.mul[y][x]
            n += 1
        return n

    def pow(self, x: int, e: int) -> int:
        out = 1
        for _ in range(e):
            out = self.mul[out][x]
        return out


@lru_cache(maxsize=None)
def field(q: int) -> GF:
    return GF(q)
