"""Binary trees with x- and y-carets and the subdivisions of [0, 1] they encode.

A tree is either ``LEAF`` (``None``) or a :class:`Caret`.  A node at level
``k`` spans an interval of length ``tau**k``; an x-caret sends its left child
to level ``k + 2`` and its right child to ``k + 1``, a y-caret does the
opposite.  Nodes are addressed by strings over ``{"L", "R"}`` from the root.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from typing import Iterator, NamedTuple, Optional

from .ztau import ONE, ZERO, ZTau, zt_tau_pow

sys.setrecursionlimit(max(sys.getrecursionlimit(), 20000))

X = "x"
Y = "y"
LEAF = None


class Caret(NamedTuple):
    kind: str
    left: Tree
    right: Tree

    def __str__(self) -> str:
        return format_tree(self)


Tree = Optional[Caret]


class InvalidMove(ValueError):
    pass


class TreeParseError(ValueError):
    def __init__(self, text: str, pos: int, expected: str):
        self.text = text
        self.pos = pos
        self.expected = expected
        super().__init__(f"position {pos}: expected {expected} in {text!r}")


def caret(kind: str, left: Tree = LEAF, right: Tree = LEAF) -> Caret:
    return Caret(kind, left, right)


# -- text form ---------------------------------------------------------------


def format_tree(t: Tree) -> str:
    if t is None:
        return "."
    return f"{t.kind}({format_tree(t.left)},{format_tree(t.right)})"


def parse_tree(text: str) -> Tree:
    s = "".join(text.split())
    pos = 0

    def node() -> Tree:
        nonlocal pos
        if pos >= len(s):
            raise TreeParseError(text, pos, "'.', 'x(' or 'y('")
        ch = s[pos]
        if ch == ".":
            pos += 1
            return LEAF
        if ch not in (X, Y):
            raise TreeParseError(text, pos, "'.', 'x(' or 'y('")
        pos += 1
        expect("(")
        left = node()
        expect(",")
        right = node()
        expect(")")
        return Caret(ch, left, right)

    def expect(ch: str) -> None:
        nonlocal pos
        if pos >= len(s) or s[pos] != ch:
            raise TreeParseError(text, pos, repr(ch))
        pos += 1

    t = node()
    if pos != len(s):
        raise TreeParseError(text, pos, "end of input")
    return t


# -- counting and traversal ----------------------------------------------------


def caret_count(t: Tree) -> int:
    n = 0
    stack = [t]
    while stack:
        node = stack.pop()
        if node is not None:
            n += 1
            stack.append(node.left)
            stack.append(node.right)
    return n


def leaf_count(t: Tree) -> int:
    return caret_count(t) + 1


def carets(t: Tree, path: str = "") -> Iterator[tuple[str, Caret]]:
    """Yield ``(path, caret)`` in pre-order."""
    if t is None:
        return
    yield path, t
    yield from carets(t.left, path + "L")
    yield from carets(t.right, path + "R")


def subtree_at(t: Tree, path: str) -> Tree:
    for step in path:
        if t is None:
            raise InvalidMove(f"path {path!r} runs past a leaf")
        t = t.left if step == "L" else t.right
    return t


def replace_at(t: Tree, path: str, new: Tree) -> Tree:
    if not path:
        return new
    if t is None:
        raise InvalidMove(f"path {path!r} runs past a leaf")
    if path[0] == "L":
        return t._replace(left=replace_at(t.left, path[1:], new))
    if path[0] == "R":
        return t._replace(right=replace_at(t.right, path[1:], new))
    raise InvalidMove(f"bad path step {path[0]!r}")


def leaf_offset(t: Tree, path: str) -> int:
    """Index of the leftmost leaf below ``path``."""
    off = 0
    for step in path:
        if t is None:
            raise InvalidMove(f"path {path!r} runs past a leaf")
        if step == "R":
            off += leaf_count(t.left)
            t = t.right
        else:
            t = t.left
    return off


def add_caret_at_leaf(t: Tree, index: int, kind: str) -> Caret:
    if t is None:
        if index != 0:
            raise IndexError(index)
        return Caret(kind, LEAF, LEAF)
    nl = leaf_count(t.left)
    if index < nl:
        return t._replace(left=add_caret_at_leaf(t.left, index, kind))
    return t._replace(right=add_caret_at_leaf(t.right, index - nl, kind))


def leaf_grafts(base: Tree, extended: Tree) -> list[Tree]:
    """Subtrees of ``extended`` hanging where ``base`` has its leaves."""
    out: list[Tree] = []

    def walk(b: Tree, e: Tree) -> None:
        if b is None:
            out.append(e)
            return
        if e is None or e.kind != b.kind:
            raise ValueError("tree does not extend the base tree")
        walk(b.left, e.left)
        walk(b.right, e.right)

    walk(base, extended)
    return out


def graft(t: Tree, subtrees: list[Tree]) -> Tree:
    """Hang ``subtrees[i]`` on leaf ``i`` of ``t``."""
    it = iter(subtrees)

    def walk(node: Tree) -> Tree:
        if node is None:
            return next(it)
        return Caret(node.kind, walk(node.left), walk(node.right))

    out = walk(t)
    if next(it, it) is not it:
        raise ValueError("more subtrees than leaves")
    return out


# -- levels and partitions -----------------------------------------------------


def leaf_levels(t: Tree, level: int = 0) -> list[int]:
    out: list[int] = []
    stack = [(t, level)]
    while stack:
        node, k = stack.pop()
        if node is None:
            out.append(k)
        elif node.kind == X:
            stack.append((node.right, k + 1))
            stack.append((node.left, k + 2))
        else:
            stack.append((node.right, k + 2))
            stack.append((node.left, k + 1))
    return out


def leftmost_level(t: Tree) -> int:
    k = 0
    while t is not None:
        k += 2 if t.kind == X else 1
        t = t.left
    return k


def rightmost_level(t: Tree) -> int:
    k = 0
    while t is not None:
        k += 1 if t.kind == X else 2
        t = t.right
    return k


@dataclass(frozen=True)
class Partition:
    breakpoints: tuple[ZTau, ...]
    levels: tuple[int, ...]

    @classmethod
    def from_levels(cls, levels: list[int] | tuple[int, ...]) -> Partition:
        pts = [ZERO]
        for k in levels:
            pts.append(pts[-1] + zt_tau_pow(k))
        return cls(tuple(pts), tuple(levels))

    def __str__(self) -> str:
        return ",".join(f"({p})" for p in self.breakpoints)

    def refines(self, other: Partition) -> bool:
        return set(other.breakpoints) <= set(self.breakpoints)


def tree_partition(t: Tree) -> Partition:
    """Breakpoints and leaf levels of the subdivision encoded by ``t``.

    A bare leaf is the trivial subdivision ``[0, 1]``; it has no levels to
    report since no caret was used.
    """
    if t is None:
        return Partition((ZERO, ONE), ())
    return Partition.from_levels(leaf_levels(t))


# -- basic moves and caret switching -----------------------------------------


def _move(t: Caret) -> Caret:
    if t.kind == X:
        r = t.right
        if r is None or r.kind != X:
            raise InvalidMove("x-caret needs an x-caret right child")
        return Caret(Y, Caret(Y, t.left, r.left), r.right)
    lft = t.left
    if lft is None or lft.kind != Y:
        raise InvalidMove("y-caret needs a y-caret left child")
    return Caret(X, lft.left, Caret(X, lft.right, t.right))


def apply_basic_move(t: Tree, path: str) -> Tree:
    """Swap ``x(A, x(B, C))`` and ``y(y(A, B), C)`` at ``path``."""
    node = subtree_at(t, path)
    if node is None:
        raise InvalidMove(f"no caret at {path!r}")
    return replace_at(t, path, _move(node))


def basic_move_paths(t: Tree) -> list[str]:
    out = []
    for path, node in carets(t):
        if node.kind == X and node.right is not None and node.right.kind == X:
            out.append(path)
        elif node.kind == Y and node.left is not None and node.left.kind == Y:
            out.append(path)
    return out


def _switch(t: Caret, offset: int, adds: list[tuple[int, str]], fill_y: bool = True) -> Caret:
    # The short edge of an x-caret is on the right, of a y-caret on the left.
    kind = t.kind
    if kind == X:
        short, short_off = t.right, offset + leaf_count(t.left)
    else:
        short, short_off = t.left, offset
    if short is None:
        if kind == Y and not fill_y:
            adds.append((short_off, X))
            short = _switch(Caret(X, LEAF, LEAF), short_off, adds, fill_y)
        else:
            adds.append((short_off, kind))
            short = Caret(kind, LEAF, LEAF)
    elif short.kind != kind:
        short = _switch(short, short_off, adds, fill_y)
    t = t._replace(right=short) if kind == X else t._replace(left=short)
    return _move(t)


def switch_caret(
    t: Tree, path: str, fill_y: bool = True
) -> tuple[Tree, list[tuple[int, str]]]:
    """Flip the type of the caret at ``path``.

    Walks down short edges until a basic move applies, adding one caret at
    the bottom when it runs into a leaf, then moves back up.  Returns the new
    tree and the carets added as ``(leaf index, kind)`` in the order they were
    added.  With ``fill_y=False`` no y-caret is ever added: a missing y-caret
    is replaced by two x-carets and one extra move.
    """
    node = subtree_at(t, path)
    if node is None:
        raise InvalidMove(f"no caret at {path!r}")
    adds: list[tuple[int, str]] = []
    new = _switch(node, leaf_offset(t, path), adds, fill_y)
    return replace_at(t, path, new), adds


def switch_caret_type(t: Tree, path: str) -> Tree:
    return switch_caret(t, path)[0]


# -- common refinement ---------------------------------------------------------


@dataclass(frozen=True)
class Refinement:
    r1: Tree
    r2: Tree
    grafts1: list[Tree]
    grafts2: list[Tree]


def _refine(a: Tree, b: Tree, off_a: int, off_b: int, adds_a: list, adds_b: list) -> tuple[Tree, Tree]:
    # a and b span the same interval
    if a is None and b is None:
        return a, b
    if a is None:
        adds_a.append((off_a, b.kind))
        a = Caret(b.kind, LEAF, LEAF)
    elif b is None:
        adds_b.append((off_b, a.kind))
        b = Caret(a.kind, LEAF, LEAF)
    elif a.kind != b.kind:
        if a.kind == Y:
            a = _switch(a, off_a, adds_a)
        else:
            b = _switch(b, off_b, adds_b)
    la, lb = _refine(a.left, b.left, off_a, off_b, adds_a, adds_b)
    ra, rb = _refine(
        a.right, b.right, off_a + leaf_count(la), off_b + leaf_count(lb), adds_a, adds_b
    )
    return Caret(a.kind, la, ra), Caret(b.kind, lb, rb)


def apply_adds(t: Tree, adds: list[tuple[int, str]]) -> Tree:
    for index, kind in adds:
        t = add_caret_at_leaf(t, index, kind)
    return t


def common_refinement(t1: Tree, t2: Tree) -> Refinement:
    """Extend both trees by grafting subtrees on their leaves until they
    encode the same subdivision.

    The two trees are walked top-down together; where caret types disagree
    the y-caret is switched to an x-caret by basic moves, and every caret
    added along the way is replayed on the original tree at the same leaf
    index.  Basic moves do not change a subdivision, so the replayed trees
    are genuine extensions of ``t1`` and ``t2`` with equal partitions.
    """
    adds1: list[tuple[int, str]] = []
    adds2: list[tuple[int, str]] = []
    _refine(t1, t2, 0, 0, adds1, adds2)
    r1 = apply_adds(t1, adds1)
    r2 = apply_adds(t2, adds2)
    return Refinement(r1, r2, leaf_grafts(t1, r1), leaf_grafts(t2, r2))


# -- canonical form under basic moves -----------------------------------------


def canonical_x_form(t: Tree) -> Tree:
    """Rewrite every ``y(y(A, B), C)`` into ``x(A, x(B, C))``, innermost first."""
    if t is None:
        return t
    left = canonical_x_form(t.left)
    right = canonical_x_form(t.right)
    if t.kind == Y and left is not None and left.kind == Y:
        return Caret(X, left.left, Caret(X, left.right, right))
    return Caret(t.kind, left, right)


def basic_move_component(t: Tree, limit: int | None = None) -> set[Tree]:
    """All trees reachable from ``t`` by basic moves (breadth first)."""
    seen = {t}
    frontier = [t]
    while frontier:
        nxt = []
        for s in frontier:
            for path in basic_move_paths(s):
                u = apply_basic_move(s, path)
                if u not in seen:
                    seen.add(u)
                    nxt.append(u)
                    if limit is not None and len(seen) > limit:
                        raise RuntimeError("basic-move component exceeds limit")
        frontier = nxt
    return seen


# -- enumeration and reconstruction --------------------------------------------


def all_trees(n: int) -> Iterator[Tree]:
    """Every tree with exactly ``n`` carets (both caret types)."""
    if n == 0:
        yield LEAF
        return
    for i in range(n):
        for kind in (X, Y):
            for left in all_trees(i):
                for right in all_trees(n - 1 - i):
                    yield Caret(kind, left, right)


def tree_for_partition(part: Partition, max_depth: int = 64) -> Tree:
    """Search for a tree encoding ``part``.

    Not a total operation: raises ``LookupError`` when no tree within the
    depth budget is found.
    """
    pts = part.breakpoints

    def build(lo: int, hi: int, level: int, depth: int) -> Tree:
        # build a tree for the interval pts[lo]..pts[hi] of length tau**level
        if hi == lo + 1:
            return LEAF
        if depth > max_depth:
            raise LookupError("depth budget exhausted")
        start = pts[lo]
        for kind, cut in ((X, zt_tau_pow(level + 2)), (Y, zt_tau_pow(level + 1))):
            target = start + cut
            try:
                mid = pts.index(target, lo + 1, hi)
            except ValueError:
                continue
            try:
                if kind == X:
                    return Caret(X, build(lo, mid, level + 2, depth + 1), build(mid, hi, level + 1, depth + 1))
                return Caret(Y, build(lo, mid, level + 1, depth + 1), build(mid, hi, level + 2, depth + 1))
            except LookupError:
                continue
        raise LookupError("no caret reproduces the required breakpoints")

    if len(pts) < 2 or pts[0] != ZERO or pts[-1] != ONE:
        raise LookupError("partition must run from 0 to 1")
    return build(0, len(pts) - 1, 0, 0)


@dataclass
class ConnectivityReport:
    max_carets: int
    trees: int
    classes: int
    canonical_splits: int
    disconnected: list[tuple[int, ...]]

    @property
    def connected(self) -> bool:
        return not self.disconnected


def move_connectivity(max_carets: int) -> ConnectivityReport:
    """Check that trees encoding the same subdivision are joined by basic moves.

    Every tree with at most ``max_carets`` carets is enumerated and grouped by
    its leaf-level sequence, which fixes the subdivision.  Each tree is joined
    to its canonical x-form by basic moves, so a class whose members share one
    canonical form is connected.  When a class has several canonical forms,
    they are merged with union-find along single basic moves.
    """
    # hash-consed canonical forms: id -> (kind, left id, right id); 0 is a leaf
    nodes: list[tuple[str, int, int] | None] = [None]
    index: dict[tuple[str, int, int], int] = {}

    def intern(kind: str, lid: int, rid: int) -> int:
        key = (kind, lid, rid)
        cid = index.get(key)
        if cid is None:
            cid = index[key] = len(nodes)
            nodes.append(key)
        return cid

    def canon(kind: str, lid: int, rid: int) -> int:
        ln = nodes[lid]
        if kind == Y and ln is not None and ln[0] == Y:
            return intern(X, ln[1], intern(X, ln[2], rid))
        return intern(kind, lid, rid)

    def canon_of(t: Tree) -> int:
        if t is None:
            return 0
        return canon(t.kind, canon_of(t.left), canon_of(t.right))

    def build(cid: int) -> Tree:
        node = nodes[cid]
        if node is None:
            return LEAF
        return Caret(node[0], build(node[1]), build(node[2]))

    # per caret count: (tree, levels, canonical id) for every tree
    table: list[list[tuple[Tree, tuple[int, ...], int]]] = [[(LEAF, (0,), 0)]]
    total = classes = 0
    splits: dict[tuple[int, ...], set[int]] = {}

    for n in range(1, max_carets + 1):
        keep = n < max_carets
        first: dict[tuple[int, ...], int] = {}
        rows = []
        for i in range(n):
            for kind, dl, dr in ((X, 2, 1), (Y, 1, 2)):
                for lt, ll, lc in table[i]:
                    lshift = tuple(v + dl for v in ll)
                    for rt, rl, rc in table[n - 1 - i]:
                        levels = lshift + tuple(v + dr for v in rl)
                        cid = canon(kind, lc, rc)
                        total += 1
                        f = first.setdefault(levels, cid)
                        if f != cid:
                            splits.setdefault(levels, {f}).add(cid)
                        if keep:
                            rows.append((Caret(kind, lt, rt), levels, cid))
        classes += len(first)
        table.append(rows)
    del table

    disconnected = []
    for levels, ids in splits.items():
        parent = {i: i for i in ids}

        def find(i: int) -> int:
            while parent[i] != i:
                parent[i] = parent[parent[i]]
                i = parent[i]
            return i

        for cid in ids:
            t = build(cid)
            for path in basic_move_paths(t):
                other = canon_of(apply_basic_move(t, path))
                if other not in parent:
                    # a canonical form outside the enumerated set means the
                    # class was not grouped correctly
                    raise AssertionError("basic move left the subdivision class")
                parent[find(cid)] = find(other)
        if len({find(i) for i in ids}) > 1:
            disconnected.append(levels)
    return ConnectivityReport(max_carets, total, classes, len(splits), disconnected)
