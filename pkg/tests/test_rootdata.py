"""Root system and Weyl group arithmetic, checked against exhaustive oracles."""

import pytest
from hypothesis import given, strategies as st

from deodhar.errors import ConfigError
from deodhar.rootdata import (
    build_root_system,
    bruhat_leq,
    reduced_words,
)

ALL_TYPES = [
    ("A", 1),
    ("A", 2),
    ("A", 3),
    ("A", 4),
    ("B", 2),
    ("B", 3),
    ("C", 2),
    ("C", 3),
    ("D", 4),
    ("G", 2),
]
SMALL_TYPES = [("A", 1), ("A", 2), ("B", 2), ("G", 2), ("A", 3)]
RANK3_TYPES = [("A", 1), ("A", 2), ("A", 3), ("B", 2), ("B", 3), ("C", 2), ("C", 3), ("G", 2)]

ROOT_COUNTS = {
    ("A", 1): 2,
    ("A", 2): 6,
    ("A", 3): 12,
    ("A", 4): 20,
    ("B", 2): 8,
    ("B", 3): 18,
    ("C", 2): 8,
    ("C", 3): 18,
    ("D", 4): 24,
    ("G", 2): 12,
}


@pytest.mark.parametrize("type_label,rank", ALL_TYPES)
def test_root_counts(type_label, rank):
    rs = build_root_system(type_label, rank)
    assert len(rs.roots) == ROOT_COUNTS[(type_label, rank)]
    assert len(rs.positive_roots) == len(rs.roots) // 2


@pytest.mark.parametrize("type_label,rank", ALL_TYPES)
def test_root_sign_invariants(type_label, rank):
    rs = build_root_system(type_label, rank)
    for r in rs.roots:
        assert all(c >= 0 for c in r) or all(c <= 0 for c in r)
        assert tuple(-c for c in r) in set(rs.roots)


@pytest.mark.parametrize("type_label,rank", ALL_TYPES)
def test_simple_reflection_permutes_other_positives(type_label, rank):
    rs = build_root_system(type_label, rank)
    for i in range(rs.rank):
        s = rs.simple_reflection(i)
        others = set(rs.positive_roots) - {rs.simple_roots[i]}
        assert {s.act(r) for r in others} == others
        assert s.act(rs.simple_roots[i]) == tuple(-c for c in rs.simple_roots[i])


def test_unsupported_configurations():
    with pytest.raises(ConfigError):
        build_root_system("A", 5)
    with pytest.raises(ConfigError):
        build_root_system("E", 6)
    with pytest.raises(ConfigError):
        build_root_system("D", 3)


def test_simple_reflection_examples():
    rs = build_root_system("A", 2)
    s, t = rs.simple_reflection(0), rs.simple_reflection(1)
    assert (s * s).is_identity
    # apply the Cartan row: s(alpha_t) = alpha_t + alpha_s
    assert s.act(rs.simple_roots[1]) == (1, 1)


def test_group_laws():
    rs = build_root_system("A", 2)
    e = rs.identity()
    s, t = rs.simple_reflection(0), rs.simple_reflection(1)
    w = s * t
    assert e * w == w
    assert (s * t).inverse() == t * s
    sts = s * t * s
    assert sts.length == 3 == len(rs.positive_roots)
    for u in rs.weyl_elements():
        assert (u * u.inverse()).is_identity


def test_lengths():
    rs = build_root_system("A", 2)
    s, t = rs.simple_reflection(0), rs.simple_reflection(1)
    assert rs.identity().length == 0
    assert (s * t).length == 2
    assert rs.longest_element().length == 3
    # count inversions directly as an independent check
    st_ = s * t
    inv = sum(1 for r in rs.positive_roots if not rs.is_positive(st_.act(r)))
    assert inv == 2


@pytest.mark.parametrize("type_label,rank", SMALL_TYPES)
def test_length_symmetries(type_label, rank):
    rs = build_root_system(type_label, rank)
    w0 = rs.longest_element()
    for w in rs.weyl_elements():
        assert w.length == w.inverse().length
        assert (w0 * w).length == w0.length - w.length


def test_longest_element():
    a1 = build_root_system("A", 1)
    assert a1.longest_element() == a1.simple_reflection(0)
    rs = build_root_system("A", 2)
    s, t = rs.simple_reflection(0), rs.simple_reflection(1)
    w0 = rs.longest_element()
    assert w0 == s * t * s == t * s * t
    assert (w0 * w0).is_identity
    # needed downstream: w0 swaps the two simple roots up to sign
    assert w0.act(rs.simple_roots[0]) == (0, -1)
    assert {w0.act(r) for r in rs.positive_roots} == {
        tuple(-c for c in r) for r in rs.positive_roots
    }


def test_reduced_words_of_longest_element():
    rs = build_root_system("A", 2)
    assert reduced_words(rs.longest_element()) == ((0, 1, 0), (1, 0, 1))


def test_canonical_word_is_least_reduced_word():
    for type_label, rank in SMALL_TYPES:
        rs = build_root_system(type_label, rank)
        for w in rs.weyl_elements():
            words = reduced_words(w)
            assert w.canonical_word == min(words)


def test_descents_nonempty_iff_nonidentity():
    rs = build_root_system("B", 2)
    for w in rs.weyl_elements():
        assert bool(w.left_descents()) == (not w.is_identity)
        assert bool(w.right_descents()) == (not w.is_identity)


def test_bruhat_basics():
    rs = build_root_system("A", 2)
    e = rs.identity()
    s, t = rs.simple_reflection(0), rs.simple_reflection(1)
    for w in rs.weyl_elements():
        assert bruhat_leq(e, w)
    assert not bruhat_leq(s * t * s, s * t)
    assert bruhat_leq(s, s * t)
    assert not bruhat_leq(s, t)


def _subword_products(rs, letters):
    """Elements obtained as reduced subwords of `letters`, by prefix-sharing DFS.

    Unreduced prefixes are pruned: a subword that stops tracking its own
    letter count can never recover minimal length.
    """
    out = set()

    def rec(i, element, used):
        if element.length != used:
            return
        if i == len(letters):
            out.add(element)
            return
        rec(i + 1, element, used)
        rec(i + 1, element * rs.simple_reflection(letters[i]), used + 1)

    rec(0, rs.identity(), 0)
    return out


@pytest.mark.parametrize("type_label,rank", RANK3_TYPES)
def test_bruhat_subword_property_word_independent(type_label, rank):
    """v <= w iff ANY reduced word of w has a reduced subword multiplying to v."""
    rs = build_root_system(type_label, rank)
    elements = rs.weyl_elements()
    for w in elements:
        expected = {v for v in elements if bruhat_leq(v, w)}
        for letters in reduced_words(w):
            assert _subword_products(rs, letters) == expected


def test_poincare_counts_a2():
    rs = build_root_system("A", 2)
    hist = {}
    for w in rs.weyl_elements():
        hist[w.length] = hist.get(w.length, 0) + 1
    assert [hist.get(i, 0) for i in range(4)] == [1, 2, 2, 1]


def test_mismatched_systems_rejected():
    a2 = build_root_system("A", 2)
    b2 = build_root_system("B", 2)
    with pytest.raises(ConfigError):
        a2.simple_reflection(0) * b2.simple_reflection(0)


@given(
    st.sampled_from(SMALL_TYPES),
    st.lists(st.integers(0, 3), max_size=8),
)
def test_element_roundtrip_properties(type_rank, letters):
    rs = build_root_system(*type_rank)
    letters = [i % rs.rank for i in letters]
    w = rs.element_from_word(letters)
    assert w.length <= len(letters)
    assert (w * w.inverse()).is_identity
    assert rs.element_from_word(w.canonical_word) == w
    # the action permutes the root set
    assert {w.act(r) for r in rs.roots} == set(rs.roots)
