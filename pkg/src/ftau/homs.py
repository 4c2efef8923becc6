"""Abelianisation of F_tau onto Z^2 + Z/2 and the commutator subgroup test.

Coordinates are taken in the basis ``x1, y0, z`` with ``z = x1 y1^-1`` of
order two; ``x0`` is eliminated through ``2 y0 = x0 + x1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .elements import Element
from .trees import X, Tree
from .words import Generator, parse_word, spine_normalize


class SpineNotNormalized(ValueError):
    pass


class AbelianImage(NamedTuple):
    c_x1: int
    c_y0: int
    c_z: int

    def __add__(self, other: AbelianImage) -> AbelianImage:  # type: ignore[override]
        return AbelianImage(
            self.c_x1 + other.c_x1, self.c_y0 + other.c_y0, (self.c_z + other.c_z) % 2
        )

    def is_zero(self) -> bool:
        return self == (0, 0, 0)

    def __str__(self) -> str:
        return f"({self.c_x1}, {self.c_y0}, {self.c_z})"


def exponent_sums(w: Sequence[Generator]) -> tuple[int, int, int, int]:
    """Exponent sums of x0, x_i (i >= 1), y0, y_i (i >= 1)."""
    a0 = a1 = b0 = b1 = 0
    for g in w:
        if g.family == X:
            if g.index == 0:
                a0 += g.exponent
            else:
                a1 += g.exponent
        elif g.index == 0:
            b0 += g.exponent
        else:
            b1 += g.exponent
    return a0, a1, b0, b1


def abelianise(w: Sequence[Generator] | str) -> AbelianImage:
    if isinstance(w, str):
        w = parse_word(w)
    a0, a1, b0, b1 = exponent_sums(w)
    return AbelianImage(-a0 + a1 + b1, 2 * a0 + b0, b1 % 2)


@dataclass(frozen=True)
class TreeCensus:
    n: int  # interior x-carets
    m: int  # interior y-carets
    r: int  # left x-carets
    s: int  # left y-carets
    right: int

    @property
    def total(self) -> int:
        return self.n + self.m + self.r + self.s + self.right


@dataclass(frozen=True)
class CaretCensus:
    source: TreeCensus
    target: TreeCensus


def tree_census(t: Tree) -> TreeCensus:
    """Classify the carets of a tree with an all-x right spine.

    The root sits on both the left and the right chain; it is counted as a
    right caret, so ``right`` is the level of the rightmost leaf and the
    leftmost leaf sits at level ``2 + 2r + s``.
    """
    node = t
    while node is not None:
        if node.kind != X:
            raise SpineNotNormalized("right spine contains a y-caret")
        node = node.right
    if t is None:
        return TreeCensus(0, 0, 0, 0, 0)

    counts = {"n": 0, "m": 0, "r": 0, "s": 0, "right": 0}

    def interior(sub: Tree) -> None:
        if sub is None:
            return
        counts["n" if sub.kind == X else "m"] += 1
        interior(sub.left)
        interior(sub.right)

    node = t.left
    while node is not None:
        counts["r" if node.kind == X else "s"] += 1
        interior(node.right)
        node = node.left
    node = t
    while node is not None:
        counts["right"] += 1
        if node is not t:
            interior(node.left)
        node = node.right
    return TreeCensus(**counts)


def census(g: Element) -> CaretCensus:
    return CaretCensus(tree_census(g.source), tree_census(g.target))


def census_image(c: CaretCensus) -> AbelianImage:
    """Abelianisation read off a census of an x-spined diagram."""
    s, t = c.source, c.target
    mdiff = s.m - t.m
    c_x1 = (s.n - s.r - t.n + t.r) + mdiff
    c_y0 = 2 * (s.r - t.r) + (s.s - t.s)
    return AbelianImage(c_x1, c_y0, mdiff % 2)


def commutator_conditions(c: CaretCensus) -> tuple[bool, bool, bool]:
    """The three caret-census conditions for membership in F_tau'."""
    s, t = c.source, c.target
    left = 2 * s.r + s.s == 2 * t.r + t.s
    right = s.right == t.right
    parity = (s.n + s.r + t.n + t.r) % 2 == 0 and (s.m + t.m) % 2 == 0
    return left, right, parity


def in_commutator(g: Element) -> bool:
    """Membership in the commutator subgroup, decided from the caret census
    of an x-spined diagram for ``g``."""
    return all(commutator_conditions(census(spine_normalize(g))))
