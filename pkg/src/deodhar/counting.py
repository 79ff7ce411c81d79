"""Exact point-count polynomials in one variable q.

Counting an affine line as q points and a torus as q-1, a Deodhar cell of
shape (n, m) has q^n (q-1)^m rational points and a double Schubert cell has
the sum of its cell polynomials.  The same polynomial is produced, completely
independently, by the classical two-case R-polynomial recursion; the equality
of the two routes is the package's central oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from . import cells
from .errors import ConfigError
from .rootdata import WeylElement, bruhat_leq


@dataclass(frozen=True)
class IntPolynomial:
    """Dense integer polynomial with ascending coefficients, no trailing zeros.

    >>> p = IntPolynomial.from_coeffs([-1, 1])   # q - 1
    >>> str(p * p)
    'q^2 - 2q + 1'
    >>> (p * p)(3)
    4
    """

    coeffs: tuple[int, ...]

    @staticmethod
    def from_coeffs(coeffs) -> "IntPolynomial":
        coeffs = list(coeffs)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        return IntPolynomial(tuple(int(c) for c in coeffs))

    @staticmethod
    def zero() -> "IntPolynomial":
        return IntPolynomial(())

    @staticmethod
    def one() -> "IntPolynomial":
        return IntPolynomial((1,))

    @staticmethod
    def q_power(n: int) -> "IntPolynomial":
        return IntPolynomial(tuple([0] * n + [1]))

    @property
    def degree(self) -> int:
        """Degree, with the usual convention -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading_coefficient(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPolynomial.from_coeffs(out)

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        out = list(self.coeffs) + [0] * max(0, len(other.coeffs) - len(self.coeffs))
        for i, c in enumerate(other.coeffs):
            out[i] -= c
        return IntPolynomial.from_coeffs(out)

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        if not self.coeffs or not other.coeffs:
            return IntPolynomial.zero()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial.from_coeffs(out)

    def scale(self, c: int) -> "IntPolynomial":
        return IntPolynomial.from_coeffs(c * x for x in self.coeffs)

    def __call__(self, q: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * q + c
        return acc

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                var = "q" if i == 1 else f"q^{i}"
                body = var if mag == 1 else f"{mag}{var}"
            terms.append((sign, body))
        first_sign, first_body = terms[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        return text


_Q_MINUS_1 = IntPolynomial((-1, 1))


def cell_count_poly(shape: cells.CellShape) -> IntPolynomial:
    """q^n (q-1)^m for a cell of shape (n, m)."""
    out = IntPolynomial.q_power(shape.n_affine)
    for _ in range(shape.m_torus):
        out = out * _Q_MINUS_1
    return out


def deodhar_poly(word: cells.ReducedWord, v: WeylElement) -> IntPolynomial:
    """Point-count polynomial of the double cell, summed over Gamma_v.

    Zero when v is not below the word's target in Bruhat order.
    """
    out = IntPolynomial.zero()
    for gamma in cells.enumerate_distinguished(word, v):
        out = out + cell_count_poly(gamma.cell_shape())
    return out


def schubert_cell_poly(w: WeylElement) -> IntPolynomial:
    """q^{l(w)}, the point count of the Schubert cell of w."""
    return IntPolynomial.q_power(w.length)


def r_polynomial(
    v: WeylElement,
    w: WeylElement,
    _descent: Optional[Callable[[frozenset[int]], int]] = None,
) -> IntPolynomial:
    """Kazhdan-Lusztig R-polynomial R_{v,w} by the two-case recursion.

    Pick s with sw < w.  If sv < v then R_{v,w} = R_{sv,sw}; otherwise
    R_{v,w} = (q-1) R_{v,sw} + q R_{sv,sw}.  Bases: R_{w,w} = 1 and
    R_{v,w} = 0 unless v <= w.  The default descent choice is the smallest
    index; the result is descent-independent (a tested property).

    >>> from deodhar.rootdata import build_root_system
    >>> rs = build_root_system("A", 2)
    >>> e, s = rs.identity(), rs.simple_reflection(0)
    >>> str(r_polynomial(e, s))
    'q - 1'
    """
    if v.system is not w.system:
        raise ConfigError("R-polynomial arguments must share a root system")
    sys = v.system
    pick = _descent if _descent is not None else min
    memo = sys.cache("r_polynomial") if _descent is None else {}

    def rec(v: WeylElement, w: WeylElement) -> IntPolynomial:
        key = (v.matrix, w.matrix)
        got = memo.get(key)
        if got is not None:
            return got
        if v == w:
            out = IntPolynomial.one()
        elif not bruhat_leq(v, w):
            out = IntPolynomial.zero()
        else:
            i = pick(w.left_descents())
            s = sys.simple_reflection(i)
            sw = s * w
            sv = s * v
            if sv.length < v.length:
                out = rec(sv, sw)
            else:
                out = _Q_MINUS_1 * rec(v, sw) + IntPolynomial.q_power(1) * rec(sv, sw)
        memo[key] = out
        return out

    return rec(v, w)
