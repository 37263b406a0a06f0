import itertools
import random

import pytest

from forestcubes.complexes import OrientedEdge
from forestcubes.cover import (
    LiftResult,
    covering_image,
    cyclic_class,
    lift_word,
    parse_word,
    perm_image,
    presentation,
    square_boundary_word,
    verify_covering,
    verify_relators,
    word_image,
    word_text,
)
from forestcubes.params import type_index


# ---------------------------------------------------------------------------
# covering map

def test_covering_image():
    assert covering_image(5) == 0
    assert covering_image(OrientedEdge(3, 9)) == OrientedEdge(3, 0)
    assert covering_image((2, 7)) == (2, 0)


@pytest.mark.parametrize("n,degree", [(2, 2), (3, 16)])
def test_verify_covering(n, degree):
    report = verify_covering(n)
    assert report.passed
    assert report.degree_actual == report.degree_expected == degree
    assert report.links_checked == degree
    assert report.cells_ok and report.links_ok


def test_verify_covering_degree_n4():
    report = verify_covering(4)
    assert report.passed
    assert report.degree_actual == 2048
    assert report.links_checked == 2048


# ---------------------------------------------------------------------------
# words

def test_parse_and_render_word():
    w = parse_word("s(2,1)·s(3,1,2)")
    assert w == [(2, 1), (3, 1, 2)]
    assert word_text(w) == "s(2,1)·s(3,1,2)"
    assert parse_word("s(1,2).s(2,1)") == [(1, 2), (2, 1)]
    assert parse_word("") == []
    with pytest.raises(ValueError):
        parse_word("t(1,2)")
    with pytest.raises(ValueError):
        parse_word("s(1)")
    with pytest.raises(ValueError):
        parse_word("s(1,1)")


def test_word_image_examples():
    ti = type_index(3)
    assert word_image(3, [(1, 2), (2, 1)]) == 0
    assert word_image(3, [(1, 2)]) == ti.mask({1, 2})
    assert word_image(3, [(1, 2), (1, 3, 2)]) == ti.mask({1, 2}) ^ ti.mask({1, 2, 3})


def test_lift_examples():
    r = lift_word(3, [(1, 2)], 0)
    assert r.end == type_index(3).mask({1, 2}) and not r.closed
    r2 = lift_word(3, parse_word("s(2,1)·s(3,1,2)·s(1,2,3)·s(2,1)"), 0)
    assert r2.closed and len(r2.path) == 4
    # doubling any single letter closes
    for a in [(1, 2), (3, 1), (1, 2, 3), (2, 3, 1)]:
        assert lift_word(3, [a, a], 0).closed


def test_lift_path_exists_in_model():
    from forestcubes.cover import _cover_model

    model = _cover_model(3)
    r = lift_word(3, [(1, 2), (1, 3, 2)], 5)
    assert r.start == 5
    param = 5
    for edge in r.path:
        assert model.initial(edge) == param
        param = model.terminal(edge)
    assert param == r.end


def test_lift_deck_invariance():
    word = [(1, 2), (1, 3, 2), (2, 3)]
    deltas = {lift_word(3, word, s).end ^ s for s in range(16)}
    assert deltas == {word_image(3, word)}


def test_lift_rejects():
    with pytest.raises(ValueError):
        lift_word(3, [(1, 5)], 0)
    with pytest.raises(ValueError):
        lift_word(3, [(1, 2)], 1 << 10)


# ---------------------------------------------------------------------------
# presentations

def test_cactus3_presentation_exact():
    p = presentation("cactus", 3)
    assert p.generators == ["s12", "s13", "s23"]
    words = ["·".join(w) for w in p.relators]
    assert words[:3] == ["s12·s12", "s13·s13", "s23·s23"]
    assert set(words[3:]) == {"s13·s12·s13·s23", "s13·s23·s13·s12"}


def test_pvcn2_presentation():
    p = presentation("pvcn", 2)
    assert p.generators == ["s(1,2)", "s(2,1)"]
    assert ["·".join(w) for w in p.relators] == ["s(1,2)·s(2,1)"]


def test_virtual_cactus2_presentation():
    p = presentation("virtual_cactus", 2)
    assert p.generators == ["s12", "p[2,1]"]
    words = {"·".join(w) for w in p.relators}
    assert words == {"s12·s12", "p[2,1]·p[2,1]"}


def test_presentation_text_format():
    text = presentation("pvcn", 2).text()
    assert text == "gen s(1,2)\ngen s(2,1)\nrel s(1,2)·s(2,1)\n"


def test_presentation_rejects():
    with pytest.raises(ValueError):
        presentation("coxeter", 3)
    with pytest.raises(ValueError):
        presentation("cactus", 1)


def test_virtual_cactus_conjugation_instances():
    # every emitted conjugation relator and every cactus relator maps to
    # the identity permutation
    for n in (3, 4):
        p = presentation("virtual_cactus", n)
        for word in p.relators:
            letters = []
            for name in word:
                if name.startswith("s"):
                    letters.append(("s", int(name[1]), int(name[2])))
                else:
                    letters.append(("p", tuple(int(x) for x in name[2:-1].split(","))))
            assert perm_image(n, letters) == tuple(range(1, n + 1))


def test_virtual_cactus3_has_nontrivial_shift():
    # the 3-cycle shifting [1,2] to [2,3] satisfies the interval condition
    p = presentation("virtual_cactus", 3)
    words = {"·".join(w) for w in p.relators}
    assert "p[2,3,1]·s12·p[3,1,2]·s23" in words


# ---------------------------------------------------------------------------
# permutation images

def test_perm_image_examples():
    assert perm_image(3, [("s", 1, 2)]) == (2, 1, 3)
    assert perm_image(3, [("s", 1, 3)]) == (3, 2, 1)
    assert perm_image(3, [("s", 1, 2), ("s", 1, 2)]) == (1, 2, 3)


def test_perm_image_letters_validated():
    with pytest.raises(ValueError):
        perm_image(3, [("s", 2, 2)])
    with pytest.raises(ValueError):
        perm_image(3, [("p", (1, 1, 2))])
    with pytest.raises(ValueError):
        perm_image(3, [("q", 1, 2)])


def test_perm_image_respects_interval_shift_conjugation():
    # w s_ij w^{-1} = s_{w(i)w(j)} whenever w shifts the interval
    for n in (3, 4):
        perms = list(itertools.permutations(range(1, n + 1)))
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                for w in perms:
                    if not all(w[i - 1 + k] == w[i - 1] + k for k in range(j - i + 1)):
                        continue
                    winv = tuple(sorted(range(1, n + 1), key=lambda x: w[x - 1]))
                    lhs = perm_image(n, [("p", w), ("s", i, j), ("p", winv)])
                    rhs = perm_image(n, [("s", w[i - 1], w[j - 1])])
                    assert lhs == rhs


# ---------------------------------------------------------------------------
# relators

@pytest.mark.parametrize("n", [2, 3, 4])
def test_verify_relators(n):
    report = verify_relators(n)
    assert report.passed, report.witness
    assert report.all_zero_image and report.all_closed
    assert report.all_realized and report.squares_are_relators


def test_relators_n3_exactly_three_square_classes(models):
    report = verify_relators(3)
    assert report.four_letter_count == 3
    assert report.square_class_count == 3


def test_square_boundary_words_are_relators(models):
    # each square realizes a relator pattern; spot-check the word itself
    model = models[(3, "base")]
    words = {
        cyclic_class(square_boundary_word(model, oid))
        for oid in range(len(model.tables.square_info))
    }
    expected = cyclic_class(((2, 1), (1, 2, 3), (2, 1), (3, 1, 2)))
    assert expected in words


def test_cyclic_class_invariance():
    word = ((2, 1), (1, 2, 3), (2, 1), (3, 1, 2))
    rotations = [word[i:] + word[:i] for i in range(4)]
    inverse = tuple(tuple(reversed(x)) for x in reversed(word))
    for w in rotations + [inverse]:
        assert cyclic_class(w) == cyclic_class(word)
