"""Twist data, cell invariants, Artin-Schreier models and predictions."""

import pytest

from deodhar.cells import ReducedWord, enumerate_distinguished, subexpression
from deodhar.errors import ConfigError, EmptyCellError, PreconditionError
from deodhar.frobenius import (
    RegularCharacter,
    TwistData,
    cell_invariants,
    diagram_automorphisms,
    is_regular,
    isotypic_prediction,
    orbit_data,
    quotient_model,
    theorem_table,
    vanishing_witness,
    xq_point_count,
    yqs_point_count,
)
from deodhar.gf import field
from deodhar.rootdata import build_root_system, reduced_words

RANK3_TYPES = [("A", 1), ("A", 2), ("A", 3), ("B", 2), ("B", 3), ("C", 2), ("C", 3), ("G", 2)]


def _split_a2(q=2):
    rs = build_root_system("A", 2)
    return rs, orbit_data(rs, TwistData.split(2, q))


def test_orbit_data_split():
    rs, od = _split_a2()
    assert od.orbits == ((0,), (1,))
    assert od.d(0) == od.d(1) == 1
    assert od.q_alpha(0) == od.q_alpha(1) == 2


def test_orbit_data_twisted_a2():
    rs = build_root_system("A", 2)
    od = orbit_data(rs, TwistData.twisted((1, 0), 2))
    assert od.orbits == ((0, 1),)
    assert od.d(0) == od.d(1) == 2
    assert od.q_alpha(0) == 4


def test_orbit_data_d4_triality():
    rs = build_root_system("D", 4)
    phi = (2, 1, 3, 0)  # 3-cycle on the outer nodes, fixing the branch node
    od = orbit_data(rs, TwistData.twisted(phi, 2))
    assert sorted(len(o) for o in od.orbits) == [1, 3]
    assert {od.q_alpha(rep) for rep in od.representatives} == {2, 8}


def test_twist_validation():
    rs = build_root_system("B", 2)
    with pytest.raises(ConfigError):
        orbit_data(rs, TwistData.twisted((1, 0), 2))  # swaps long and short
    with pytest.raises(ConfigError):
        TwistData(phi=(0, 0), q_circ=(2, 2), p=2)
    with pytest.raises(ConfigError):
        TwistData(phi=(0, 1), q_circ=(2, 3), p=2)


def test_diagram_automorphism_counts():
    expected = {
        ("A", 1): 1,
        ("A", 2): 2,
        ("A", 3): 2,
        ("B", 2): 1,
        ("B", 3): 1,
        ("C", 2): 1,
        ("C", 3): 1,
        ("G", 2): 1,
        ("D", 4): 6,
    }
    for (type_label, rank), count in expected.items():
        rs = build_root_system(type_label, rank)
        assert len(diagram_automorphisms(rs)) == count


def test_vanishing_witness_examples():
    rs = build_root_system("A", 2)
    assert vanishing_witness(rs.identity()) == 0
    assert vanishing_witness(rs.longest_element()) is None
    st_ = rs.element_from_word((0, 1))
    witness = vanishing_witness(st_)
    assert witness is not None
    assert rs.is_positive(st_.inverse().act(rs.simple_roots[witness]))


@pytest.mark.parametrize("type_label,rank", RANK3_TYPES)
def test_vanishing_witness_iff_not_longest(type_label, rank):
    rs = build_root_system(type_label, rank)
    w0 = rs.longest_element()
    for x in rs.weyl_elements():
        witness = vanishing_witness(x)
        assert (witness is None) == (x == w0)
        if witness is not None:
            assert rs.is_positive(x.inverse().act(rs.simple_roots[witness]))


def test_cell_invariants_examples():
    rs, od = _split_a2()
    word = ReducedWord.from_letters(rs, (0, 1, 0))
    inv = cell_invariants(subexpression(word, (1, 0, 1)), od)
    assert inv.n == {0: 0, 1: 1}
    assert inv.m == {0: 0, 1: 0}
    assert (inv.n_bar, inv.m_bar) == (0, 1)

    inv0 = cell_invariants(subexpression(word, (0, 0, 0)), od)
    assert inv0.n == {0: 0, 1: 0}
    assert inv0.m == {0: 1, 1: 2}
    assert (inv0.n_bar, inv0.m_bar) == (0, 0)

    full = cell_invariants(subexpression(word, (1, 1, 1)), od)
    assert full.n == {0: 0, 1: 0}
    assert full.m == {0: 0, 1: 0}
    assert (full.n_bar, full.m_bar) == (0, 0)

    with pytest.raises(EmptyCellError):
        cell_invariants(subexpression(word, (1, 0, 0)), od)


def test_quotient_model_examples():
    rs, od = _split_a2()
    word = ReducedWord.from_letters(rs, (0, 1, 0))
    closed = quotient_model(subexpression(word, (1, 0, 1)), od)
    assert str(closed) == "(Gm)^1 x X_2(0,0) x X_2(1,0)"
    assert closed.dimension == 2
    open_ = quotient_model(subexpression(word, (0, 0, 0)), od)
    assert str(open_) == "X_2(0,1) x X_2(0,2)"
    point = quotient_model(subexpression(word, (1, 1, 1)), od)
    assert str(point) == "X_2(0,0) x X_2(0,0)"
    assert point.point_count(1) == 4  # two copies of F_q
    twisted = orbit_data(rs, TwistData.twisted((1, 0), 2))
    model = quotient_model(subexpression(word, (0, 0, 0)), twisted)
    with pytest.raises(ConfigError):
        model.point_count(1)


def test_xq_point_counts():
    for q in (2, 3, 4):
        for k in (1, 2):
            if q**k <= 64:
                assert xq_point_count(q, 0, 0, k) == q
                assert xq_point_count(q, 1, 0, k) == q**k
    assert xq_point_count(2, 0, 1, 2) == 2
    assert xq_point_count(2, 2, 1, 1) == 2**2 * 1
    assert xq_point_count(3, 1, 2, 1) == 3 * 4


def test_yqs_point_counts():
    assert yqs_point_count(2, 1, 0, 2, 2) == xq_point_count(2, 0, 2, 2)
    for m in (0, 1, 2):
        assert yqs_point_count(2, 3, 1, m, 2) == 4 * 3**m
    # Y_{2,3}(0,1) over F_4: q times the nonzero cubes inside the image of
    # the Artin-Schreier map
    f = field(4)
    image = {f.sub(f.mul(z, z), z) for z in f.elements()}
    expected = 2 * sum(1 for lam in f.nonzero() if f.pow(lam, 3) in image)
    assert yqs_point_count(2, 3, 0, 1, 2) == expected == 6
    with pytest.raises(ConfigError):
        yqs_point_count(2, 4, 0, 1, 1)  # s divisible by the characteristic
    with pytest.raises(ConfigError):
        yqs_point_count(3, 3, 0, 1, 1)


def test_yqs_against_full_enumeration():
    # independent naive count of Y_{q,s}(0, m) over small fields
    for q, s, m, k in ((2, 3, 1, 2), (2, 3, 2, 2), (3, 2, 1, 1), (3, 2, 2, 2), (2, 5, 2, 2)):
        f = field(q**k)
        count = 0
        for zeta in f.elements():
            target = f.sub(f.pow(zeta, q), zeta)
            stack = [(target, m)]
            while stack:
                acc, remaining = stack.pop()
                if remaining == 0:
                    count += int(acc == 0)
                    continue
                for lam in f.nonzero():
                    stack.append((f.sub(acc, f.pow(lam, s)), remaining - 1))
        assert yqs_point_count(q, s, 0, m, k) == count


def test_regular_characters():
    rs, od = _split_a2()
    psi = RegularCharacter.regular_default(od)
    assert is_regular(psi, od)
    partial = RegularCharacter.from_mapping({0: 1, 1: 0})
    assert not is_regular(partial, od)
    with pytest.raises(ConfigError):
        is_regular(RegularCharacter.from_mapping({0: 1}), od)


def test_isotypic_predictions():
    rs, od = _split_a2()
    word = ReducedWord.from_letters(rs, (0, 1, 0))
    psi = RegularCharacter.regular_default(od)
    surviving = isotypic_prediction(subexpression(word, (0, 0, 0)), psi, od)
    assert not surviving.vanishes
    assert surviving.shift == 3
    assert "regular module" in surviving.module_description
    gone = isotypic_prediction(subexpression(word, (1, 0, 1)), psi, od)
    assert gone.vanishes and gone.shift is None
    with pytest.raises(PreconditionError):
        isotypic_prediction(subexpression(word, (1, 1, 1)), psi, od)  # ends at w0
    with pytest.raises(PreconditionError):
        isotypic_prediction(
            subexpression(word, (0, 0, 0)),
            RegularCharacter.from_mapping({0: 0, 1: 1}),
            od,
        )


def test_theorem_table_a2():
    rs, od = _split_a2()
    word = ReducedWord.from_letters(rs, (0, 1, 0))
    psi = RegularCharacter.regular_default(od)
    table = theorem_table(word, od, psi, q=2)
    assert len(table.rows) == 6
    w0 = rs.longest_element()
    for row in table.rows:
        if row.x == w0:
            assert row.gamma_rows is not None
            assert [g.bits for g, _, _ in row.gamma_rows] == [(0, 0, 0), (1, 0, 1)]
        else:
            assert row.vanishes and row.witness is not None
    assert table.survivor.bits == (0, 0, 0)
    assert table.shift == 3
    assert table.torus_order == 3  # (q^2-1)(q-1) at q=2


def test_theorem_table_identity_word():
    rs, od = _split_a2()
    word = ReducedWord.from_letters(rs, ())
    psi = RegularCharacter.regular_default(od)
    table = theorem_table(word, od, psi)
    assert table.shift == 0
    assert table.survivor.bits == ()
    assert table.torus_order is None


def test_theorem_table_rejects_nonregular():
    rs, od = _split_a2()
    word = ReducedWord.from_letters(rs, (0, 1, 0))
    with pytest.raises(PreconditionError) as err:
        theorem_table(word, od, RegularCharacter.from_mapping({0: 1, 1: 0}))
    assert "alpha_t" in str(err.value)


def test_torus_order_a1_q3():
    rs = build_root_system("A", 1)
    od = orbit_data(rs, TwistData.split(1, 3))
    word = ReducedWord.from_letters(rs, (0,))
    psi = RegularCharacter.regular_default(od)
    table = theorem_table(word, od, psi, q=3)
    assert table.shift == 1
    assert table.torus_order == 8


@pytest.mark.parametrize("type_label,rank", [("A", 2), ("B", 2), ("G", 2), ("A", 3)])
def test_largest_affine_index_structure(type_label, rank):
    """The mechanism behind the vanishing criterion, checked exhaustively.

    For a non-trivial distinguished subexpression ending at the identity the
    largest index of I minus J has identity partial product, simple previous
    partial, and contributes an affine coordinate on a simple-root orbit.
    """
    rs = build_root_system(type_label, rank)
    e = rs.identity()
    w0 = rs.longest_element()
    simple_roots = set(rs.simple_roots)
    for w in rs.weyl_elements():
        for letters in reduced_words(w):
            word = ReducedWord.from_letters(rs, letters)
            for gamma in enumerate_distinguished(word, e):
                if not any(gamma.bits):
                    continue
                affine = sorted(gamma.I - gamma.J)
                assert affine, f"{gamma.display} has I = J but ends at e"
                i0 = affine[-1]
                assert gamma.partials[i0].is_identity
                assert gamma.partials[i0 - 1].length == 1
                assert w0.act(gamma.tilde_betas[i0 - 1]) in simple_roots


@pytest.mark.parametrize("type_label,rank", [("A", 2), ("B", 2), ("G", 2), ("A", 3)])
def test_dimension_bookkeeping(type_label, rank):
    """n_bar + m_bar + sum (n_a + m_a) equals the cell dimension."""
    rs = build_root_system(type_label, rank)
    for phi in diagram_automorphisms(rs):
        od = orbit_data(rs, TwistData.twisted(phi, 2))
        for w in rs.weyl_elements():
            word = ReducedWord.from_letters(rs, w.canonical_word)
            for gamma in enumerate_distinguished(word):
                inv = cell_invariants(gamma, od)
                assert inv.total_dimension() == gamma.cell_shape().dimension


@pytest.mark.parametrize("type_label,rank", [("A", 2), ("B", 2), ("G", 2)])
def test_all_skip_shift_is_length(type_label, rank):
    rs = build_root_system(type_label, rank)
    for phi in diagram_automorphisms(rs):
        od = orbit_data(rs, TwistData.twisted(phi, 2))
        for w in rs.weyl_elements():
            word = ReducedWord.from_letters(rs, w.canonical_word)
            gamma = subexpression(word, (0,) * word.r)
            inv = cell_invariants(gamma, od)
            assert sum(inv.m.values()) == w.length
            assert all(c == 0 for c in inv.n.values())
            assert inv.n_bar == inv.m_bar == 0
