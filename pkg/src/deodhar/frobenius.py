"""Frobenius diagram data and the twisted cell invariants behind the
regular-character vanishing criterion.

A Frobenius endomorphism acts on the root datum through a Cartan-preserving
permutation phi of the simple roots together with a p-power q_a^o per simple
root.  Each phi-orbit O_a has a length d_a and a product q_a of the q^o along
it; the orbit group is a copy of F_{q_a}.  A linear character of U trivial on
the derived group restricts to each orbit group, and it is regular when every
restriction is nontrivial.

For a distinguished subexpression gamma ending at the identity, the quotient
of its Deligne-Lusztig piece by D(U)^F factors as

    (G_a)^{n_bar} x (G_m)^{m_bar} x prod_a  X_{q_a}(n_a, m_a)

where X_q(n, m) is the Artin-Schreier model cut out by
zeta^q - zeta = sum mu_i + sum lambda_j, and the exponents count positions i
of the word by where w0 sends the twisted root beta~_i.  The regular isotypic
part of the cohomology survives exactly when every n_a vanishes, which for
distinguished gamma in Gamma_1 happens only for the all-skip subexpression;
the surviving piece sits in degree l(w).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping, Optional

from . import cells
from .errors import BudgetError, ConfigError, EmptyCellError, PreconditionError
from .gf import MAX_FIELD_ORDER, field
from .rootdata import RootSystem, WeylElement

MAX_MODEL_TUPLES = 4 * 10**6


def _prime_of(q: int) -> int:
    for p in (2, 3, 5, 7):
        if q % p == 0:
            return p
    raise ConfigError(f"{q} is not a power of a supported prime")


def _is_power_of(q: int, p: int) -> bool:
    while q % p == 0:
        q //= p
    return q == 1


@dataclass(frozen=True)
class TwistData:
    """A diagram permutation phi together with the p-powers q_a^o."""

    phi: tuple[int, ...]
    q_circ: tuple[int, ...]
    p: int

    def __post_init__(self):
        if sorted(self.phi) != list(range(len(self.phi))):
            raise ConfigError("phi is not a permutation of the simple roots")
        if len(self.q_circ) != len(self.phi):
            raise ConfigError("q_circ must assign a power of p to every simple root")
        for q in self.q_circ:
            if q < 2 or not _is_power_of(q, self.p):
                raise ConfigError(f"{q} is not a positive power of p={self.p}")

    @classmethod
    def split(cls, rank: int, q: int) -> "TwistData":
        return cls(tuple(range(rank)), (q,) * rank, _prime_of(q))

    @classmethod
    def twisted(cls, phi: tuple[int, ...], q: int) -> "TwistData":
        return cls(tuple(phi), (q,) * len(phi), _prime_of(q))

    @property
    def is_split(self) -> bool:
        return self.phi == tuple(range(len(self.phi)))


def diagram_automorphisms(rs: RootSystem) -> list[tuple[int, ...]]:
    """All Cartan-preserving permutations of the simple roots."""
    c = rs.cartan_matrix
    n = rs.rank
    out = []
    for sigma in itertools.permutations(range(n)):
        if all(c[sigma[i]][sigma[j]] == c[i][j] for i in range(n) for j in range(n)):
            out.append(sigma)
    return out


@dataclass(frozen=True)
class OrbitData:
    """phi-orbits on the simple roots with their lengths and field orders."""

    system: RootSystem
    twist: TwistData
    orbits: tuple[tuple[int, ...], ...]

    @property
    def representatives(self) -> tuple[int, ...]:
        return tuple(o[0] for o in self.orbits)

    def orbit_of(self, i: int) -> tuple[int, ...]:
        for o in self.orbits:
            if i in o:
                return o
        raise ConfigError(f"{i} is not a simple index")

    def representative_of(self, i: int) -> int:
        return self.orbit_of(i)[0]

    def d(self, i: int) -> int:
        return len(self.orbit_of(i))

    def q_alpha(self, i: int) -> int:
        out = 1
        for j in self.orbit_of(i):
            out *= self.twist.q_circ[j]
        return out

    @property
    def is_split(self) -> bool:
        return self.twist.is_split


def orbit_data(rs: RootSystem, twist: TwistData) -> OrbitData:
    """Validate the twist against the Cartan matrix and compute its orbits."""
    n = rs.rank
    if len(twist.phi) != n:
        raise ConfigError("twist rank does not match the root system")
    c = rs.cartan_matrix
    phi = twist.phi
    if any(c[phi[i]][phi[j]] != c[i][j] for i in range(n) for j in range(n)):
        raise ConfigError("phi does not preserve the Cartan matrix")
    seen = set()
    orbits = []
    for i in range(n):
        if i in seen:
            continue
        orbit = [i]
        j = phi[i]
        while j != i:
            orbit.append(j)
            j = phi[j]
        seen.update(orbit)
        orbits.append(tuple(orbit))
    return OrbitData(rs, twist, tuple(orbits))


# -- the vanishing witness ----------------------------------------------------


def vanishing_witness(x: WeylElement) -> Optional[int]:
    """Smallest simple index a with x^{-1}(alpha_a) positive, None for w0.

    Such a root lets the finite orbit group acting on the quotient of the
    piece indexed by x extend to a connected group, which kills every regular
    isotypic part; only x = w0 has no witness.
    """
    sys = x.system
    xinv = x.inverse()
    for i in range(sys.rank):
        if sys.is_positive(xinv.act(sys.simple_roots[i])):
            return i
    return None


# -- regular characters -------------------------------------------------------


@dataclass(frozen=True)
class RegularCharacter:
    """Additive character tags per phi-orbit: 0 is trivial, nonzero is a
    multiplier c in F_{q_a} composed with the trace and a fixed primitive
    p-th root of unity."""

    components: tuple[tuple[int, int], ...]  # (orbit representative, multiplier)

    @classmethod
    def from_mapping(cls, components: Mapping[int, int]) -> "RegularCharacter":
        return cls(tuple(sorted((int(k), int(v)) for k, v in components.items())))

    @classmethod
    def regular_default(cls, od: OrbitData) -> "RegularCharacter":
        return cls(tuple((rep, 1) for rep in od.representatives))

    def multiplier(self, rep: int) -> int:
        for r, c in self.components:
            if r == rep:
                return c
        raise ConfigError(f"character has no component for orbit representative {rep}")


def is_regular(psi: RegularCharacter, od: OrbitData) -> bool:
    """True when psi has a nontrivial component on every phi-orbit."""
    reps = set(od.representatives)
    tagged = {r for r, _ in psi.components}
    if tagged != reps:
        raise ConfigError(
            f"character components {sorted(tagged)} do not match orbit "
            f"representatives {sorted(reps)}"
        )
    return all(psi.multiplier(rep) != 0 for rep in od.representatives)


def violated_orbit(psi: RegularCharacter, od: OrbitData) -> Optional[int]:
    for rep in od.representatives:
        if psi.multiplier(rep) == 0:
            return rep
    return None


# -- cell invariants ----------------------------------------------------------


@dataclass
class CellInvariants:
    """Per-orbit exponents of the quotient factorisation of one cell."""

    n: dict[int, int]  # orbit representative -> n_a(gamma)
    m: dict[int, int]  # orbit representative -> m_a(gamma)
    n_bar: int
    m_bar: int

    def total_dimension(self) -> int:
        return self.n_bar + self.m_bar + sum(self.n.values()) + sum(self.m.values())


def cell_invariants(gamma: cells.Subexpression, od: OrbitData) -> CellInvariants:
    """Count word positions by the simple-root orbit of w0(beta~_i).

    n_a counts positions in I minus J (affine coordinates), m_a positions
    outside I (torus coordinates); n_bar and m_bar absorb the positions whose
    w0-image is not a simple root.
    """
    if not gamma.is_distinguished:
        raise EmptyCellError(f"{gamma.display} is not distinguished")
    sys = gamma.word.system
    if od.system is not sys:
        raise ConfigError("orbit data belongs to a different root system")
    w0 = sys.longest_element()
    n = {rep: 0 for rep in od.representatives}
    m = {rep: 0 for rep in od.representatives}
    simple_index = {root: i for i, root in enumerate(sys.simple_roots)}
    for i in range(gamma.r):
        pos = i + 1
        image = w0.act(gamma.tilde_betas[i])
        idx = simple_index.get(image)
        if idx is None:
            continue
        rep = od.representative_of(idx)
        if pos in gamma.I and pos not in gamma.J:
            n[rep] += 1
        elif pos not in gamma.I:
            m[rep] += 1
    shape = gamma.cell_shape()
    n_bar = shape.n_affine - sum(n.values())
    m_bar = shape.m_torus - sum(m.values())
    if n_bar < 0 or m_bar < 0:
        raise AssertionError("orbit exponents exceed the cell shape")
    return CellInvariants(n=n, m=m, n_bar=n_bar, m_bar=m_bar)


# -- Artin-Schreier models ----------------------------------------------------


def xq_point_count(q: int, n: int, m: int, k: int = 1) -> int:
    """Rational points of X_q(n, m) over F_{q^k}.

    X_q(n, m) is the hypersurface zeta^q - zeta = sum mu_i + sum lambda_j in
    (G_a)^{n+1} x (G_m)^m.  With n >= 1 the closed form q^{nk} (q^k - 1)^m
    applies (solve for mu_1); with n = 0 the count is exhaustive.
    """
    if n < 0 or m < 0 or k < 1:
        raise ConfigError("n, m must be nonnegative and k positive")
    if n >= 1:
        return q ** (n * k) * (q**k - 1) ** m
    return _artin_schreier_count(q, m, k, power=1)


def yqs_point_count(q: int, s: int, n: int, m: int, k: int = 1) -> int:
    """Rational points of Y_{q,s}(n, m) over F_{q^k}.

    Same equation with the torus coordinates raised to the s-th power:
    zeta^q - zeta = sum mu_i + sum lambda_j^s, s coprime to the characteristic.
    """
    if s < 1:
        raise ConfigError("the covering exponent s must be a positive integer")
    p = _prime_of(q)
    if s % p == 0:
        raise ConfigError(f"s={s} must be coprime to the characteristic {p}")
    if n < 0 or m < 0 or k < 1:
        raise ConfigError("n, m must be nonnegative and k positive")
    if n >= 1:
        return q ** (n * k) * (q**k - 1) ** m
    return _artin_schreier_count(q, m, k, power=s)


def _artin_schreier_count(q: int, m: int, k: int, power: int) -> int:
    qk = q**k
    if qk > MAX_FIELD_ORDER:
        raise BudgetError(f"brute-force model count needs a field of order {qk} > 512")
    if m >= 1 and qk * (qk - 1) ** (m - 1) > MAX_MODEL_TUPLES:
        raise BudgetError("brute-force model count exceeds the tuple budget")
    f = field(qk)
    count = 0
    if m == 0:
        count = sum(1 for z in f.elements() if f.sub(f.pow(z, q), z) == 0)
    else:
        # number of nonzero lambda with lambda^power equal to each value
        power_fibre = [0] * qk
        for lam in f.nonzero():
            power_fibre[f.pow(lam, power)] += 1
        for z in f.elements():
            target = f.sub(f.pow(z, q), z)
            for lams in itertools.product(f.nonzero(), repeat=m - 1):
                acc = target
                for lam in lams:
                    acc = f.sub(acc, f.pow(lam, power))
                count += power_fibre[acc]
    if count % q:
        raise AssertionError("Artin-Schreier count is not divisible by q")
    return count


# -- quotient model -----------------------------------------------------------


@dataclass(frozen=True)
class ModelFactor:
    orbit_rep: int
    q_alpha: int
    d_alpha: int
    n_alpha: int
    m_alpha: int

    def __str__(self) -> str:
        return f"X_{self.q_alpha}({self.n_alpha},{self.m_alpha})"


@dataclass(frozen=True)
class QuotientModel:
    """(G_a)^{n_bar} x (G_m)^{m_bar} x prod_a X_{q_a}(n_a, m_a)."""

    base_q: int
    n_bar: int
    m_bar: int
    factors: tuple[ModelFactor, ...]

    @property
    def dimension(self) -> int:
        return (
            self.n_bar
            + self.m_bar
            + sum(fac.n_alpha + fac.m_alpha for fac in self.factors)
        )

    def point_count(self, k: int = 1) -> int:
        """Rational points over F_{q^k}; split twists only."""
        if any(fac.d_alpha != 1 for fac in self.factors):
            raise ConfigError(
                "point counts of twisted quotient models are not supported"
            )
        q = self.base_q
        out = q ** (self.n_bar * k) * (q**k - 1) ** self.m_bar
        for fac in self.factors:
            out *= xq_point_count(fac.q_alpha, fac.n_alpha, fac.m_alpha, k)
        return out

    def __str__(self) -> str:
        parts = []
        if self.n_bar:
            parts.append(f"(Ga)^{self.n_bar}")
        if self.m_bar:
            parts.append(f"(Gm)^{self.m_bar}")
        parts.extend(str(fac) for fac in self.factors)
        return " x ".join(parts) if parts else "point"


def quotient_model(gamma: cells.Subexpression, od: OrbitData) -> QuotientModel:
    inv = cell_invariants(gamma, od)
    factors = tuple(
        ModelFactor(
            orbit_rep=rep,
            q_alpha=od.q_alpha(rep),
            d_alpha=od.d(rep),
            n_alpha=inv.n[rep],
            m_alpha=inv.m[rep],
        )
        for rep in od.representatives
    )
    model = QuotientModel(
        base_q=od.twist.q_circ[0],
        n_bar=inv.n_bar,
        m_bar=inv.m_bar,
        factors=factors,
    )
    if model.dimension != gamma.cell_shape().dimension:
        raise AssertionError("quotient model dimension mismatch")
    return model


# -- isotypic predictions -----------------------------------------------------


@dataclass(frozen=True)
class IsotypicPrediction:
    vanishes: bool
    shift: Optional[int]
    module_description: str


def isotypic_prediction(
    gamma: cells.Subexpression, psi: RegularCharacter, od: OrbitData
) -> IsotypicPrediction:
    """Predicted regular-isotypic cohomology of the piece attached to gamma.

    Applies to distinguished subexpressions ending at the identity and regular
    psi: the isotypic part vanishes iff some n_a(gamma) > 0, and the surviving
    all-skip subexpression contributes the regular torus module in degree
    l(w).
    """
    if not is_regular(psi, od):
        rep = violated_orbit(psi, od)
        raise PreconditionError(
            f"character is trivial on the orbit of alpha_{od.system.letter(rep)}; "
            "the prediction requires a regular character"
        )
    if not gamma.end.is_identity:
        raise PreconditionError(
            "the prediction applies to subexpressions ending at the identity"
        )
    inv = cell_invariants(gamma, od)
    if any(c > 0 for c in inv.n.values()):
        return IsotypicPrediction(True, None, "zero")
    if any(gamma.bits):
        raise AssertionError(
            "a non-trivial distinguished subexpression ending at the identity "
            "must have a positive affine orbit exponent"
        )
    shift = gamma.r - len(gamma.I)
    return IsotypicPrediction(False, shift, "regular module of T^{wF}")


@dataclass(frozen=True)
class PredictionRow:
    x: WeylElement
    vanishes: bool
    witness: Optional[int]
    gamma_rows: Optional[tuple[tuple[cells.Subexpression, CellInvariants, IsotypicPrediction], ...]]


@dataclass(frozen=True)
class PredictionTable:
    word: cells.ReducedWord
    od: OrbitData
    psi: RegularCharacter
    rows: tuple[PredictionRow, ...]
    survivor: cells.Subexpression
    shift: int
    torus_order: Optional[int]


def theorem_table(
    word: cells.ReducedWord,
    od: OrbitData,
    psi: RegularCharacter,
    q: Optional[int] = None,
) -> PredictionTable:
    """Per-piece ledger of the regular-isotypic cohomology of Y(w).

    One row per x in W: for x != w0 the row records the witness root that
    forces vanishing; for x = w0 the nested table runs over the distinguished
    subexpressions ending at the identity, of which only the all-skip one
    survives, in degree l(w).  For split type A systems with a concrete q the
    order of the torus T^{wF} is included via the GL_n diagonal model.
    """
    sys = word.system
    if not is_regular(psi, od):
        rep = violated_orbit(psi, od)
        raise PreconditionError(
            f"character is trivial on the orbit of alpha_{sys.letter(rep)}; "
            "the table requires a regular character"
        )
    w0 = sys.longest_element()
    rows = []
    survivor = None
    shift = None
    for x in sys.weyl_elements():
        if x == w0:
            gamma_rows = []
            for gamma in cells.filtration(word, sys.identity()):
                inv = cell_invariants(gamma, od)
                pred = isotypic_prediction(gamma, psi, od)
                gamma_rows.append((gamma, inv, pred))
                if not pred.vanishes:
                    survivor = gamma
                    shift = pred.shift
            rows.append(PredictionRow(x, False, None, tuple(gamma_rows)))
        else:
            witness = vanishing_witness(x)
            if witness is None:
                raise AssertionError("only w0 lacks a vanishing witness")
            rows.append(PredictionRow(x, True, witness, None))
    if survivor is None or shift != word.target.length:
        raise AssertionError("prediction table lost its surviving piece")
    t_order = None
    if q is not None and sys.type_label == "A" and od.is_split:
        # the split GL_n diagonal-torus model; no twisted analogue is kept
        from .flags import torus_order

        t_order = torus_order(word.target, q)
    return PredictionTable(word, od, psi, tuple(rows), survivor, shift, t_order)
