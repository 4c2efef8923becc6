"""Elements of F_tau as tree-pair diagrams.

``Element(source, target)`` is the piecewise-linear homeomorphism sending the
j-th interval of the source subdivision affinely onto the j-th interval of
the target subdivision.  Products compose left to right: ``multiply(g, h)``
applies ``g`` first.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .trees import (
    Caret,
    Tree,
    TreeParseError,
    caret_count,
    common_refinement,
    format_tree,
    graft,
    leaf_count,
    leftmost_level,
    parse_tree,
    rightmost_level,
    tree_partition,
)
from .ztau import ONE, ZERO, ZTau, zt_mul, zt_sign, zt_tau_pow


class OutOfRange(ValueError):
    pass


@dataclass(frozen=True)
class Element:
    source: Tree
    target: Tree

    def __post_init__(self):
        if leaf_count(self.source) != leaf_count(self.target):
            raise ValueError("source and target need the same number of leaves")

    @cached_property
    def _source_partition(self):
        return tree_partition(self.source)

    @cached_property
    def _target_partition(self):
        return tree_partition(self.target)

    def __str__(self) -> str:
        return f"({format_tree(self.source)} | {format_tree(self.target)})"

    def __mul__(self, other: Element) -> Element:
        return multiply(self, other)

    @property
    def carets(self) -> int:
        return caret_count(self.source)

    @classmethod
    def parse(cls, text: str) -> Element:
        body = text.strip()
        if not (body.startswith("(") and body.endswith(")")) or body.count("|") != 1:
            raise TreeParseError(text, 0, "'(TREE | TREE)'")
        left, right = body[1:-1].split("|")
        return cls(parse_tree(left), parse_tree(right))


IDENTITY = Element(None, None)


def _locate(points: tuple[ZTau, ...], p: ZTau) -> int:
    """Index of the rightmost breakpoint ``<= p`` (exact binary search)."""
    lo, hi = 0, len(points) - 1
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if zt_sign(p - points[mid]) >= 0:
            lo = mid
        else:
            hi = mid - 1
    return lo


def multiply(g: Element, h: Element) -> Element:
    """The composite map ``g`` then ``h`` as an (unreduced) tree pair."""
    ref = common_refinement(g.target, h.source)
    return Element(graft(g.source, ref.grafts1), graft(h.target, ref.grafts2))


def invert(g: Element) -> Element:
    return Element(g.target, g.source)


def evaluate(g: Element, p: ZTau) -> ZTau:
    """Exact image of ``p`` under ``g``."""
    if zt_sign(p) < 0 or zt_sign(ONE - p) < 0:
        raise OutOfRange(f"{p} is outside [0, 1]")
    src = g._source_partition
    tgt = g._target_partition
    j = _locate(src.breakpoints, p)
    if j == len(src.breakpoints) - 1:
        return ONE
    if not src.levels:
        return p
    slope = zt_tau_pow(tgt.levels[j] - src.levels[j])
    return tgt.breakpoints[j] + zt_mul(slope, p - src.breakpoints[j])


def slopes(g: Element) -> list[int]:
    """Exponent of tau for the slope on each source interval."""
    src = g._source_partition.levels
    tgt = g._target_partition.levels
    if not src:
        return [0]
    return [t - s for s, t in zip(src, tgt)]


def equals(g: Element, h: Element) -> bool:
    """Whether ``g`` and ``h`` are the same map.

    Both maps are affine between consecutive points of the union of their
    source breakpoints, so agreeing at every such point settles it.
    """
    pts = set(g._source_partition.breakpoints) | set(h._source_partition.breakpoints)
    return all(evaluate(g, p) == evaluate(h, p) for p in pts)


def pl_key(g: Element) -> tuple[tuple[ZTau, ZTau], ...]:
    """Canonical description of the map: its genuine breakpoints and their
    images.  Equal maps give equal keys whatever diagrams represent them."""
    pts = g._source_partition.breakpoints
    imgs = g._target_partition.breakpoints
    sl = slopes(g)
    return tuple((pts[j], imgs[j]) for j in range(1, len(sl)) if sl[j] != sl[j - 1])


def boundary_slopes(g: Element) -> tuple[int, int]:
    s0 = leftmost_level(g.target) - leftmost_level(g.source)
    s1 = rightmost_level(g.target) - rightmost_level(g.source)
    return s0, s1


def _exposed(t: Tree) -> dict[int, str]:
    # leaf index -> kind of a caret whose two children are leaves i, i+1
    out: dict[int, str] = {}

    def walk(node: Tree, off: int) -> int:
        if node is None:
            return 1
        if node.left is None and node.right is None:
            out[off] = node.kind
            return 2
        n = walk(node.left, off)
        return n + walk(node.right, off + n)

    walk(t, 0)
    return out


def _collapse(t: Tree, starts: set[int]) -> Tree:
    def walk(node: Tree, off: int) -> tuple[Tree, int]:
        if node is None:
            return None, 1
        if node.left is None and node.right is None and off in starts:
            return None, 2
        left, n = walk(node.left, off)
        right, m = walk(node.right, off + n)
        return Caret(node.kind, left, right), n + m

    return walk(t, 0)[0]


def reduce(g: Element) -> Element:
    """Cancel exposed carets of the same type sitting on the same leaves of
    both trees.  Cancellations that need basic moves first are left alone."""
    src, tgt = g.source, g.target
    while True:
        a, b = _exposed(src), _exposed(tgt)
        starts = {i for i, k in a.items() if b.get(i) == k}
        if not starts:
            return Element(src, tgt)
        src, tgt = _collapse(src, starts), _collapse(tgt, starts)


def source_breakpoints(g: Element) -> tuple[ZTau, ...]:
    return g._source_partition.breakpoints


