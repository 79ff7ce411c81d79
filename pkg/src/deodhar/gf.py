"""Exact arithmetic in small finite fields F_q, q = p^e <= 512, p in {2,3,5,7}.

Elements are integer codes 0..q-1: the code of a residue polynomial
sum d_i x^i modulo the fixed irreducible polynomial below is sum d_i p^i.
The modulus table is part of the package contract so that every brute-force
count in this repository is bit-for-bit reproducible:

    q    modulus (ascending coefficients, monic)
    4    x^2 + x + 1
    8    x^3 + x + 1
    16   x^4 + x + 1
    32   x^5 + x^2 + 1
    64   x^6 + x + 1
    128  x^7 + x + 1
    256  x^8 + x^4 + x^3 + x^2 + 1
    512  x^9 + x^4 + 1
    9    x^2 + 2x + 2
    27   x^3 + 2x + 1
    81   x^4 + 2x^3 + 2
    243  x^5 + 2x + 1
    25   x^2 + 4x + 2
    125  x^3 + 3x + 3
    49   x^2 + 6x + 3
    343  x^3 + 6x^2 + 4

Each modulus is re-verified irreducible at construction time.  Multiplication
runs through discrete-log tables over the smallest generator; addition is
XOR in characteristic 2 and digit arithmetic otherwise.
"""

from __future__ import annotations

from .errors import ConfigError

MAX_FIELD_ORDER = 512
_PRIMES = (2, 3, 5, 7)

# ascending coefficient tuples, including the leading 1
_MODULUS: dict[int, tuple[int, ...]] = {
    4: (1, 1, 1),
    8: (1, 1, 0, 1),
    16: (1, 1, 0, 0, 1),
    32: (1, 0, 1, 0, 0, 1),
    64: (1, 1, 0, 0, 0, 0, 1),
    128: (1, 1, 0, 0, 0, 0, 0, 1),
    256: (1, 0, 1, 1, 1, 0, 0, 0, 1),
    512: (1, 0, 0, 0, 1, 0, 0, 0, 0, 1),
    9: (2, 2, 1),
    27: (1, 2, 0, 1),
    81: (2, 0, 0, 2, 1),
    243: (1, 2, 0, 0, 0, 1),
    25: (2, 4, 1),
    125: (3, 3, 0, 1),
    49: (3, 6, 1),
    343: (4, 0, 6, 1),
}


def _factor_prime_power(q: int) -> tuple[int, int]:
    for p in _PRIMES:
        if q % p == 0:
            e = 0
            m = q
            while m % p == 0:
                m //= p
                e += 1
            if m != 1:
                break
            return p, e
    raise ConfigError(f"field order {q} is not a power of a prime in {_PRIMES}")


def _poly_mul_mod(a: list[int], b: list[int], modulus: tuple[int, ...], p: int) -> list[int]:
    e = len(modulus) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    # reduce by the monic modulus
    for d in range(len(prod) - 1, e - 1, -1):
        c = prod[d]
        if c:
            prod[d] = 0
            for i in range(e):
                prod[d - e + i] = (prod[d - e + i] - c * modulus[i]) % p
    out = prod[:e]
    out += [0] * (e - len(out))
    return out


def _poly_divides(d: list[int], f: list[int], p: int) -> bool:
    # monic trial division of f by monic d over F_p
    rem = list(f)
    while len(rem) >= len(d) and any(rem):
        while rem and rem[-1] == 0:
            rem.pop()
        if len(rem) < len(d):
            break
        c = rem[-1]
        shift = len(rem) - len(d)
        for i, x in enumerate(d):
            rem[shift + i] = (rem[shift + i] - c * x) % p
    return not any(rem)


def _verify_irreducible(modulus: tuple[int, ...], p: int) -> None:
    e = len(modulus) - 1
    f = list(modulus)

    def monic_polys(deg):
        # all monic polynomials of the given degree over F_p
        def rec(coeffs):
            if len(coeffs) == deg:
                yield coeffs + [1]
                return
            for c in range(p):
                yield from rec(coeffs + [c])

        yield from rec([])

    for deg in range(1, e // 2 + 1):
        for d in monic_polys(deg):
            if _poly_divides(d, f, p):
                raise ConfigError(
                    f"modulus table entry for p={p}, degree {e} is reducible"
                )


class FqField:
    """The finite field with q elements; obtain instances via :func:`field`."""

    def __init__(self, q: int):
        if q > MAX_FIELD_ORDER:
            raise ConfigError(f"field order {q} exceeds the cap {MAX_FIELD_ORDER}")
        p, e = _factor_prime_power(q)
        self.order = q
        self.char = p
        self.degree = e
        if e == 1:
            self.modulus = None
        else:
            if q not in _MODULUS:
                raise ConfigError(f"no modulus table entry for field order {q}")
            self.modulus = _MODULUS[q]
            _verify_irreducible(self.modulus, p)
        self._digits = [self._decode(a) for a in range(q)]
        self._add_table: list[list[int]] | None = None
        self._build_log_tables()

    # -- encoding ---------------------------------------------------------

    def _decode(self, a: int) -> list[int]:
        p, e = self.char, self.degree
        digits = []
        for _ in range(e):
            digits.append(a % p)
            a //= p
        return digits

    def _encode(self, digits: list[int]) -> int:
        a = 0
        for d in reversed(digits):
            a = a * self.char + d
        return a

    def _build_log_tables(self) -> None:
        q, p = self.order, self.char

        def raw_mul(a: int, b: int) -> int:
            if self.degree == 1:
                return (a * b) % p
            return self._encode(
                _poly_mul_mod(self._digits[a], self._digits[b], self.modulus, p)
            )

        generator = None
        for g in range(2, q):
            x, order = g, 1
            while x != 1:
                x = raw_mul(x, g)
                order += 1
            if order == q - 1:
                generator = g
                break
        if generator is None and q == 2:
            generator = 1
        if generator is None:
            raise ConfigError(f"no generator found for field of order {q}")
        self.generator = generator
        exp = [1] * (2 * (q - 1))
        log = [0] * q
        x = 1
        for i in range(q - 1):
            exp[i] = x
            log[x] = i
            x = raw_mul(x, generator)
        for i in range(q - 1, 2 * (q - 1)):
            exp[i] = exp[i - (q - 1)]
        self._exp = exp
        self._log = log

    # -- arithmetic --------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.char == 2:
            return a ^ b
        if self.degree == 1:
            return (a + b) % self.char
        if self._add_table is None:
            p = self.char
            self._add_table = [
                [
                    self._encode([(x + y) % p for x, y in zip(self._digits[a], self._digits[b])])
                    for b in range(self.order)
                ]
                for a in range(self.order)
            ]
        return self._add_table[a][b]

    def neg(self, a: int) -> int:
        if self.char == 2:
            return a
        p = self.char
        if self.degree == 1:
            return (-a) % p
        return self._encode([(-d) % p for d in self._digits[a]])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        n = self.order - 1
        return self._exp[(n - self._log[a]) % n]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        if n == 0:
            return 1
        if a == 0:
            return 0
        return self._exp[(self._log[a] * n) % (self.order - 1)]

    def frobenius(self, a: int) -> int:
        return self.pow(a, self.char)

    def elements(self) -> range:
        return range(self.order)

    def nonzero(self) -> range:
        return range(1, self.order)

    def __repr__(self) -> str:
        return f"FqField({self.order})"


_FIELDS: dict[int, FqField] = {}


def field(q: int) -> FqField:
    """Interned field constructor."""
    f = _FIELDS.get(q)
    if f is None:
        f = FqField(q)
        _FIELDS[q] = f
    return f
