"""Exact root systems and Weyl groups over the root lattice.

Roots are integer coordinate vectors in the simple-root basis, so reflections,
lengths and Bruhat comparisons are all exact integer computations; no floating
point appears anywhere.  A Weyl group element is canonically its action matrix
on the root lattice (columns are the images of the simple roots).  The cached
lexicographically-least reduced word is only used for display and tie-breaks.

Supported Cartan types: A1..A4, B2, B3, C2, C3, D4, G2.  Rank is capped at 4
because downstream cell enumeration is exponential in the word length.

The Cartan matrix convention used here is ``C[i][j] = 2(a_i, a_j)/(a_i, a_i)``
so that the simple reflection acts by ``s_i(a_j) = a_j - C[i][j] a_i``.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Optional

from .errors import ConfigError

Root = tuple[int, ...]
Matrix = tuple[tuple[int, ...], ...]

# Letters for simple reflections, in the order of the simple roots.
LETTERS = "stuv"

_SUPPORTED_RANKS = {"A": (1, 2, 3, 4), "B": (2, 3), "C": (2, 3), "D": (4,), "G": (2,)}


def _cartan_matrix(type_label: str, rank: int) -> Matrix:
    c = [[2 * (i == j) for j in range(rank)] for i in range(rank)]

    def bond(i, j, cij=-1, cji=-1):
        c[i][j] = cij
        c[j][i] = cji

    if type_label in ("A", "B", "C"):
        for i in range(rank - 1):
            bond(i, i + 1)
        if type_label == "B":
            # last simple root short: the double bond points at it
            bond(rank - 2, rank - 1, -1, -2)
        elif type_label == "C":
            bond(rank - 2, rank - 1, -2, -1)
    elif type_label == "D":
        # node 1 is the branch node; D4 only
        for i in (0, 2, 3):
            bond(1, i)
    elif type_label == "G":
        bond(0, 1, -3, -1)
    return tuple(tuple(row) for row in c)


def _identity_matrix(rank: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(rank)) for i in range(rank))


def _mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n))
        for i in range(n)
    )


def _mat_vec(m: Matrix, v: Root) -> Root:
    return tuple(sum(row[j] * v[j] for j in range(len(v))) for row in m)


class RootSystem:
    """Root system of a finite Weyl group, with all arithmetic caches.

    Use :func:`build_root_system` to obtain the interned instance for a
    type/rank pair; Weyl elements compare systems by identity.
    """

    def __init__(self, type_label: str, rank: int):
        type_label = type_label.upper()
        if type_label not in _SUPPORTED_RANKS or rank not in _SUPPORTED_RANKS[type_label]:
            raise ConfigError(f"unsupported root system {type_label}{rank}")
        self.type_label = type_label
        self.rank = rank
        self.cartan_matrix = _cartan_matrix(type_label, rank)
        self.simple_roots: tuple[Root, ...] = tuple(
            tuple(int(i == j) for j in range(rank)) for i in range(rank)
        )
        self._simple_matrices = tuple(self._reflection_matrix(i) for i in range(rank))
        self._id_matrix = _identity_matrix(rank)
        self.roots, self.positive_roots = self._generate_roots()
        self._positive_set = frozenset(self.positive_roots)
        self._root_set = frozenset(self.roots)
        # per-matrix caches, filled lazily
        self._length: dict[Matrix, int] = {self._id_matrix: 0}
        self._canonical: dict[Matrix, tuple[int, ...]] = {self._id_matrix: ()}
        self._inverse: dict[Matrix, Matrix] = {}
        self._bruhat: dict[tuple[Matrix, Matrix], bool] = {}
        self._elements: Optional[tuple["WeylElement", ...]] = None
        self._w0: Optional["WeylElement"] = None
        self._op_caches: dict[str, dict] = {}

    # -- construction ----------------------------------------------------

    def _reflection_matrix(self, i: int) -> Matrix:
        rows = [list(row) for row in _identity_matrix(self.rank)]
        for j in range(self.rank):
            rows[i][j] = (1 if i == j else 0) - self.cartan_matrix[i][j]
        return tuple(tuple(row) for row in rows)

    def _generate_roots(self) -> tuple[tuple[Root, ...], tuple[Root, ...]]:
        roots = set(self.simple_roots)
        frontier = set(self.simple_roots)
        while frontier:
            new = set()
            for r in frontier:
                for m in self._simple_matrices:
                    img = _mat_vec(m, r)
                    if img not in roots:
                        new.add(img)
            roots |= new
            frontier = new
        pos = sorted(r for r in roots if all(c >= 0 for c in r))
        neg = sorted(r for r in roots if all(c <= 0 for c in r))
        if len(pos) + len(neg) != len(roots) or len(pos) != len(neg):
            raise ConfigError("root generation produced mixed-sign vectors")
        return tuple(sorted(roots)), tuple(pos)

    # -- elements ---------------------------------------------------------

    def identity(self) -> "WeylElement":
        return WeylElement(self, self._id_matrix)

    def simple_reflection(self, i: int) -> "WeylElement":
        if not 0 <= i < self.rank:
            raise ConfigError(f"simple index {i} out of range for rank {self.rank}")
        return WeylElement(self, self._simple_matrices[i])

    def element_from_word(self, letters: Iterable[int]) -> "WeylElement":
        m = self._id_matrix
        for i in letters:
            if not 0 <= i < self.rank:
                raise ConfigError(f"simple index {i} out of range for rank {self.rank}")
            m = _mat_mul(m, self._simple_matrices[i])
        return WeylElement(self, m)

    def weyl_elements(self) -> tuple["WeylElement", ...]:
        """All group elements, sorted by (length, canonical word)."""
        if self._elements is None:
            seen = {self._id_matrix}
            frontier = [self._id_matrix]
            while frontier:
                nxt = []
                for m in frontier:
                    for s in self._simple_matrices:
                        ms = _mat_mul(m, s)
                        if ms not in seen:
                            seen.add(ms)
                            nxt.append(ms)
                frontier = nxt
            els = [WeylElement(self, m) for m in seen]
            els.sort(key=lambda w: (w.length, w.canonical_word))
            self._elements = tuple(els)
        return self._elements

    def longest_element(self) -> "WeylElement":
        if self._w0 is None:
            w = self.identity()
            rising = True
            while rising:
                rising = False
                for i in range(self.rank):
                    if w.act(self.simple_roots[i]) in self._positive_set:
                        w = w * self.simple_reflection(i)
                        rising = True
                        break
            if w.length != len(self.positive_roots):
                raise ConfigError("longest element search failed")
            self._w0 = w
        return self._w0

    def cache(self, name: str) -> dict:
        """Named per-system scratch cache for other modules."""
        return self._op_caches.setdefault(name, {})

    # -- helpers ----------------------------------------------------------

    def is_positive(self, root: Root) -> bool:
        return root in self._positive_set

    def letter(self, i: int) -> str:
        return LETTERS[i]

    def letter_index(self, ch: str) -> int:
        idx = LETTERS.find(ch)
        if idx < 0 or idx >= self.rank:
            raise ConfigError(f"letter {ch!r} is not a simple reflection of {self}")
        return idx

    def parse_word(self, text: str) -> tuple[int, ...]:
        """Parse a word like ``"sts"``; ``""`` and ``"e"`` mean the identity."""
        if text in ("", "e"):
            return ()
        return tuple(self.letter_index(ch) for ch in text)

    def __repr__(self) -> str:
        return f"RootSystem({self.type_label}{self.rank})"


@lru_cache(maxsize=None)
def build_root_system(type_label: str, rank: int) -> RootSystem:
    """Interned constructor; raises ConfigError on unsupported pairs."""
    return RootSystem(type_label, rank)


class WeylElement:
    """Element of a Weyl group, canonically its root-lattice action matrix."""

    __slots__ = ("system", "matrix", "_hash")

    def __init__(self, system: RootSystem, matrix: Matrix):
        self.system = system
        self.matrix = matrix
        self._hash = hash(matrix)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, WeylElement)
            and self.system is other.system
            and self.matrix == other.matrix
        )

    def __hash__(self) -> int:
        return self._hash

    def __mul__(self, other: "WeylElement") -> "WeylElement":
        if self.system is not other.system:
            raise ConfigError("cannot multiply elements of different root systems")
        return WeylElement(self.system, _mat_mul(self.matrix, other.matrix))

    def act(self, root: Root) -> Root:
        return _mat_vec(self.matrix, root)

    def inverse(self) -> "WeylElement":
        sys = self.system
        inv = sys._inverse.get(self.matrix)
        if inv is None:
            # invert the induced permutation of the (finite) root set
            preimage = {self.act(r): r for r in sys.roots}
            cols = [preimage[a] for a in sys.simple_roots]
            inv = tuple(
                tuple(cols[j][i] for j in range(sys.rank)) for i in range(sys.rank)
            )
            sys._inverse[self.matrix] = inv
        return WeylElement(sys, inv)

    @property
    def length(self) -> int:
        sys = self.system
        cached = sys._length.get(self.matrix)
        if cached is None:
            cached = sum(
                1 for r in sys.positive_roots if self.act(r) not in sys._positive_set
            )
            sys._length[self.matrix] = cached
        return cached

    @property
    def is_identity(self) -> bool:
        return self.matrix == self.system._id_matrix

    @property
    def canonical_word(self) -> tuple[int, ...]:
        """Lexicographically least reduced word (greedy smallest left descent)."""
        sys = self.system
        cached = sys._canonical.get(self.matrix)
        if cached is None:
            letters = []
            w = self
            while not w.is_identity:
                for i in range(sys.rank):
                    sw = sys.simple_reflection(i) * w
                    if sw.length < w.length:
                        letters.append(i)
                        w = sw
                        break
            cached = tuple(letters)
            sys._canonical[self.matrix] = cached
        return cached

    @property
    def word_str(self) -> str:
        word = self.canonical_word
        return "".join(LETTERS[i] for i in word) if word else "e"

    def left_descents(self) -> frozenset[int]:
        # s_i w < w  iff  w^{-1}(a_i) is negative
        winv = self.inverse()
        sys = self.system
        return frozenset(
            i
            for i in range(sys.rank)
            if winv.act(sys.simple_roots[i]) not in sys._positive_set
        )

    def right_descents(self) -> frozenset[int]:
        sys = self.system
        return frozenset(
            i
            for i in range(sys.rank)
            if self.act(sys.simple_roots[i]) not in sys._positive_set
        )

    def __repr__(self) -> str:
        return f"<{self.word_str} in {self.system.type_label}{self.system.rank}>"


# -- free functions mirroring the library surface --------------------------


def simple_reflection(rs: RootSystem, i: int) -> WeylElement:
    return rs.simple_reflection(i)


def multiply(a: WeylElement, b: WeylElement) -> WeylElement:
    return a * b


def inverse(a: WeylElement) -> WeylElement:
    return a.inverse()


def length(w: WeylElement) -> int:
    return w.length


def longest_element(rs: RootSystem) -> WeylElement:
    return rs.longest_element()


def left_descents(w: WeylElement) -> frozenset[int]:
    return w.left_descents()


def right_descents(w: WeylElement) -> frozenset[int]:
    return w.right_descents()


def bruhat_leq(v: WeylElement, w: WeylElement) -> bool:
    """Bruhat order, by the standard descent recursion.

    Equivalent to the subword characterisation: v <= w iff some (equivalently
    any) reduced word of w contains some reduced word of v as a subword.
    """
    if v.system is not w.system:
        raise ConfigError("cannot compare elements of different root systems")
    sys = v.system
    key = (v.matrix, w.matrix)
    cached = sys._bruhat.get(key)
    if cached is not None:
        return cached
    if v.length > w.length:
        result = False
    elif v == w:
        result = True
    elif w.is_identity:
        result = False
    else:
        i = min(w.left_descents())
        s = sys.simple_reflection(i)
        sw = s * w
        sv = s * v
        if sv.length < v.length:
            result = bruhat_leq(sv, sw)
        else:
            result = bruhat_leq(v, sw)
    sys._bruhat[key] = result
    return result


def reduced_words(w: WeylElement) -> tuple[tuple[int, ...], ...]:
    """All reduced words of w, sorted lexicographically."""
    memo: dict[Matrix, tuple[tuple[int, ...], ...]] = {}

    def rec(u: WeylElement) -> tuple[tuple[int, ...], ...]:
        got = memo.get(u.matrix)
        if got is not None:
            return got
        if u.is_identity:
            words: tuple[tuple[int, ...], ...] = ((),)
        else:
            acc = []
            for i in sorted(u.left_descents()):
                su = u.system.simple_reflection(i) * u
                acc.extend((i,) + rest for rest in rec(su))
            words = tuple(acc)
        memo[u.matrix] = words
        return words

    return tuple(sorted(rec(w)))


def word_str(letters: Iterable[int]) -> str:
    letters = tuple(letters)
    return "".join(LETTERS[i] for i in letters) if letters else "e"
