import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from forestcubes.forests import (
    ChildRange,
    ForestError,
    TreeGroup,
    canonicalize,
    delete_edge,
    edge_type,
    enumerate_forests,
    flip,
    insert_edge,
    insertion_sites,
    internal_edges,
    leaf_order,
    parse_forest,
    restrict_to_edge,
    serialize_forest,
)


def edges_of(text):
    f = parse_forest(text)
    return f, internal_edges(f)


def all_forest_edges(ns=(2, 3, 4)):
    out = []
    for n in ns:
        for k in range(1, n):
            for f in enumerate_forests(n, k):
                for e in internal_edges(f):
                    out.append((f, e))
    return out


FOREST_EDGES = all_forest_edges()
FOREST_EDGE_PAIRS = [
    (f, e, g)
    for n in (3, 4)
    for k in range(2, n)
    for f in enumerate_forests(n, k)
    for e, g in itertools.permutations(internal_edges(f), 2)
]


# ---------------------------------------------------------------------------
# text form

def test_parse_single_tree():
    f, edges = edges_of("((1 2) 3)")
    assert serialize_forest(f) == "((1 2) 3)"
    assert len(edges) == 2


def test_parse_keeps_written_order_and_canonicalize_sorts():
    f = parse_forest("3,(1 2)")
    assert serialize_forest(f) == "3,(1 2)"
    assert serialize_forest(canonicalize(f)) == "(1 2),3"


def test_canonicalize_idempotent_and_stable():
    f = parse_forest("(2 1),3")
    assert serialize_forest(canonicalize(f)) == "(2 1),3"
    g = parse_forest("2,(3 4),1")
    assert serialize_forest(canonicalize(g)) == "1,2,(3 4)"
    assert canonicalize(canonicalize(g)) == canonicalize(g)


@pytest.mark.parametrize(
    "bad",
    ["((1) 2)", "(1)", "", "(1 2", "1 2", "(1 2)),3", "(1 1)", "(1 3)", "0,(1 2)"],
)
def test_parse_rejects(bad):
    with pytest.raises(ForestError):
        parse_forest(bad)


def test_round_trip_on_all_canonical_forests():
    for n in (2, 3, 4):
        for k in range(n):
            for f in enumerate_forests(n, k):
                text = serialize_forest(f)
                assert serialize_forest(canonicalize(parse_forest(text))) == text


# ---------------------------------------------------------------------------
# enumeration

def test_enumeration_counts_small():
    assert len(enumerate_forests(3, 0)) == 1
    assert [f.serialize() for f in enumerate_forests(3, 0)] == ["1,2,3"]
    assert len(enumerate_forests(3, 2)) == 12  # twelve 2-subcubes
    assert len(enumerate_forests(3, 1)) == 12


def test_enumeration_oracle_brute_force_n3_k1():
    # independent oracle: write out every one-edge forest text directly
    texts = set()
    for a, b in itertools.permutations((1, 2, 3), 2):
        (c,) = set((1, 2, 3)) - {a, b}
        texts.add(serialize_forest(canonicalize(parse_forest(f"({a} {b}),{c}"))))
    for order in itertools.permutations((1, 2, 3)):
        texts.add("(" + " ".join(map(str, order)) + ")")
    assert len(texts) == 12
    assert texts == {f.serialize() for f in enumerate_forests(3, 1)}


def test_one_edge_count_formula():
    # one-edge forests correspond to ordered subsets of size >= 2
    for n in (2, 3, 4, 5):
        expected = sum(
            len(list(itertools.permutations(range(m)))) * _choose(n, m)
            for m in range(2, n + 1)
        )
        assert len(enumerate_forests(n, 1)) == expected


def _choose(n, m):
    out = 1
    for i in range(m):
        out = out * (n - i) // (i + 1)
    return out


def test_enumeration_oracle_insert_closure():
    # independent oracle: k-edge forests are exactly the edge insertions
    # into (k-1)-edge forests
    for n in (2, 3, 4):
        for k in range(1, n):
            got = set()
            for f in enumerate_forests(n, k - 1):
                for site in insertion_sites(f):
                    sigma, _ = insert_edge(f, site)
                    got.add(sigma.serialize())
            assert got == {f.serialize() for f in enumerate_forests(n, k)}


def test_enumeration_deterministic_order():
    serials = [f.serialize() for f in enumerate_forests(4, 2)]
    assert serials == sorted(serials)
    assert len(serials) == len(set(serials)) == 180
    assert len(enumerate_forests(4, 3)) == 120


# ---------------------------------------------------------------------------
# flip

def test_flip_examples():
    f, (outer, inner) = edges_of("((1 2) 3)")
    assert flip(f, inner).serialize() == "((2 1) 3)"
    assert flip(f, outer).serialize() == "(3 (2 1))"


def test_flip_unknown_edge():
    f, edges = edges_of("(1 2),3")
    with pytest.raises(ForestError):
        flip(f, max(edges) + 5)


@settings(deadline=None, max_examples=200)
@given(st.sampled_from(FOREST_EDGES))
def test_flip_involution(fe):
    f, e = fe
    assert flip(flip(f, e), e) == f


@settings(deadline=None, max_examples=200)
@given(st.sampled_from(FOREST_EDGE_PAIRS))
def test_flip_commutation(feg):
    f, e, g = feg
    assert flip(flip(f, e), g) == flip(flip(f, g), e)


@settings(deadline=None, max_examples=200)
@given(st.sampled_from(FOREST_EDGES))
def test_flip_reverses_leaf_order(fe):
    f, e = fe
    assert leaf_order(flip(f, e), e) == tuple(reversed(leaf_order(f, e)))


@settings(deadline=None, max_examples=200)
@given(st.sampled_from(FOREST_EDGES))
def test_type_stable_under_any_flip(fe):
    f, e = fe
    for g in internal_edges(f):
        assert edge_type(flip(f, g), e) == edge_type(f, e)


def test_flip_orbit_sizes():
    for n in (2, 3, 4):
        for k in range(n):
            for f in enumerate_forests(n, k):
                orbit = set()
                for subset in itertools.product((0, 1), repeat=k):
                    g = f
                    for bit, e in zip(subset, internal_edges(f)):
                        if bit:
                            g = flip(g, e)
                    orbit.add(g.serialize())
                assert len(orbit) == 2**k


# ---------------------------------------------------------------------------
# delete

def test_delete_examples():
    f, (outer, inner) = edges_of("((1 2) 3)")
    assert delete_edge(f, inner).serialize() == "(1 2 3)"
    assert delete_edge(f, outer).serialize() == "(1 2),3"
    g, edges = edges_of("(1 2),(3 4)")
    pair_12 = next(e for e in edges if edge_type(g, e) == frozenset({1, 2}))
    assert delete_edge(g, pair_12).serialize() == "1,2,(3 4)"


@settings(deadline=None, max_examples=200)
@given(st.sampled_from(FOREST_EDGE_PAIRS))
def test_delete_flip_exchange(feg):
    f, e, g = feg
    assert delete_edge(flip(f, g), e) == flip(delete_edge(f, e), g)


def test_enumeration_closed_under_flip_and_delete():
    for n in (2, 3, 4):
        for k in range(1, n):
            level = {f.serialize() for f in enumerate_forests(n, k)}
            below = {f.serialize() for f in enumerate_forests(n, k - 1)}
            for f in enumerate_forests(n, k):
                for e in internal_edges(f):
                    assert flip(f, e).serialize() in level
                    assert delete_edge(f, e).serialize() in below


# ---------------------------------------------------------------------------
# leaf order and type

def test_leaf_order_examples():
    f, (outer, inner) = edges_of("((1 2) 3)")
    assert leaf_order(f, outer) == (1, 2, 3)
    assert leaf_order(f, inner) == (1, 2)
    flipped = flip(f, outer)
    assert leaf_order(flipped, outer) == (3, 2, 1)
    assert edge_type(f, outer) == frozenset({1, 2, 3})
    assert edge_type(flip(f, inner), inner) == frozenset({1, 2})


# ---------------------------------------------------------------------------
# insert

def test_insert_examples():
    f, (e,) = edges_of("(1 2 3)")
    sigma, new = insert_edge(f, ChildRange(e, 0, 2))
    assert sigma.serialize() == "((1 2) 3)"
    assert delete_edge(sigma, new) == canonicalize(f)

    g = parse_forest("1,2,3")
    sigma2, new2 = insert_edge(g, TreeGroup((2, 1)))
    assert sigma2.serialize() == "(2 1),3"
    assert delete_edge(sigma2, new2) == canonicalize(g)


def test_insert_rejects_bad_sites():
    f, (e,) = edges_of("(1 2)")
    with pytest.raises(ForestError):
        insert_edge(f, ChildRange(e, 0, 1))  # too short
    with pytest.raises(ForestError):
        insert_edge(f, ChildRange(e, 0, 2))  # parent would become unary
    g = parse_forest("1,2,3")
    with pytest.raises(ForestError):
        insert_edge(g, TreeGroup((1,)))
    with pytest.raises(ForestError):
        insert_edge(g, TreeGroup((1, 7)))


def test_insert_then_delete_identity_everywhere():
    for n in (2, 3, 4):
        for k in range(n - 1):
            for f in enumerate_forests(n, k):
                for site in insertion_sites(f):
                    sigma, e = insert_edge(f, site)
                    assert delete_edge(sigma, e) == f
                    assert sigma.k == k + 1


def test_insert_leaf_order_is_concatenation():
    f = parse_forest("1,2,3")
    sigma, e = insert_edge(f, TreeGroup((3, 1)))
    assert leaf_order(sigma, e) == (3, 1)


# ---------------------------------------------------------------------------
# restrict

def test_restrict_examples():
    f, (outer, inner) = edges_of("((1 2) 3)")
    assert restrict_to_edge(f, inner).serialize() == "(1 2),3"
    assert restrict_to_edge(f, outer).serialize() == "(1 2 3)"
    g, (e,) = edges_of("(1 2),3")
    assert restrict_to_edge(g, e) == canonicalize(g)


def test_restrict_agrees_with_random_delete_orders():
    rng = random.Random(7)
    for f, e in FOREST_EDGES:
        for _ in range(3):
            g = f
            others = [x for x in internal_edges(g) if x != e]
            rng.shuffle(others)
            for other in others:
                g = delete_edge(g, other)
            assert g.serialize() == restrict_to_edge(f, e).serialize()
            assert leaf_order(g, e) == leaf_order(f, e)
