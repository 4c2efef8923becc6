from __future__ import annotations

import random

import pytest
from hypothesis import given

from ftau.elements import IDENTITY, Element, boundary_slopes
from ftau.homs import (
    AbelianImage,
    SpineNotNormalized,
    abelianise,
    census,
    census_image,
    commutator_conditions,
    in_commutator,
    tree_census,
)
from ftau.trees import parse_tree
from ftau.words import check_presentation, parse_word, spine_normalize, word_to_element

from conftest import random_tree, random_word, words


def test_abelianise_examples():
    assert abelianise("x1 y1^-1") == AbelianImage(0, 0, 1)
    assert abelianise("x1 y1^-1 x1 y1^-1").is_zero()
    assert abelianise("y0") == AbelianImage(0, 1, 0)
    assert str(abelianise("x1 y1^-1")) == "(0, 0, 1)"


@given(words, words)
def test_abelianise_is_a_homomorphism(u, v):
    assert abelianise(u + v) == abelianise(u) + abelianise(v)


def test_relators_vanish():
    for r in check_presentation(6):
        rel = parse_word(r.lhs) + tuple(g.inverse() for g in reversed(parse_word(r.rhs)))
        assert abelianise(rel).is_zero()


def test_census_examples():
    c = census(IDENTITY)
    assert c.source.total == 0 and c.target.total == 0
    c = census(word_to_element("x0"))
    assert (c.source.r, c.source.n, c.target.r, c.target.n) == (1, 0, 0, 0)
    c = census(word_to_element("y0"))
    assert c.source.s == 1 and (c.source.r, c.source.n, c.source.m) == (0, 0, 0)


def test_census_needs_x_spine():
    with pytest.raises(SpineNotNormalized):
        tree_census(parse_tree("x(.,y(.,.))"))


def test_census_matches_abelianisation_and_slopes():
    rng = random.Random(3)
    for _ in range(300):
        w = random_word(rng, rng.randint(0, 7))
        g = spine_normalize(word_to_element(w))
        c = census(g)
        assert census_image(c) == abelianise(w)
        left, right, _ = commutator_conditions(c)
        s0, s1 = boundary_slopes(g)
        assert left == (s0 == 0) and right == (s1 == 0)


def test_in_commutator_examples():
    assert in_commutator(IDENTITY)
    assert not in_commutator(word_to_element("x0"))
    assert in_commutator(word_to_element("x0 y0 x0^-1 y0^-1"))
    assert not in_commutator(word_to_element("x1 y1^-1"))
    assert in_commutator(word_to_element("x1 y1^-1 x1 y1^-1"))


def test_in_commutator_on_random_diagrams():
    rng = random.Random(6)
    for _ in range(200):
        n = rng.randint(0, 8)
        g = Element(random_tree(rng, n), random_tree(rng, n))
        h = spine_normalize(g)
        assert in_commutator(g) == in_commutator(h)
