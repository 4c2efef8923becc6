"""Words in the generators x_i, y_i and their normal forms.

Words are read left to right as maps: ``"y0 x1"`` applies ``y0`` first.  A
diagram whose trees have all-x right spines is read back into a word through
leaf exponents: the carets reached from leaf ``i`` by climbing left edges
(stopping at the right spine) spell the letters of index ``i``, top caret
first.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

from .elements import IDENTITY, Element, equals, invert, multiply, reduce
from .trees import (
    LEAF,
    X,
    Y,
    Caret,
    Tree,
    add_caret_at_leaf,
    apply_adds,
    caret_count,
    carets,
    leaf_count,
    leaf_offset,
    switch_caret,
)


class WordParseError(ValueError):
    def __init__(self, text: str, pos: int, expected: str):
        self.text = text
        self.pos = pos
        self.expected = expected
        super().__init__(f"position {pos}: expected {expected} in {text!r}")


class Generator(NamedTuple):
    family: str
    index: int
    exponent: int = 1

    def __str__(self) -> str:
        return f"{self.family}{self.index}" + ("^-1" if self.exponent < 0 else "")

    def inverse(self) -> Generator:
        return self._replace(exponent=-self.exponent)


Word = tuple[Generator, ...]

_TOKEN = re.compile(r"([xy])(\d+)(\^-1|\^1)?$")


def parse_word(text: str) -> Word:
    letters = []
    stripped = text.strip()
    if stripped in ("", "e"):
        return ()
    for m in re.finditer(r"\S+", text):
        tok = _TOKEN.match(m.group())
        if tok is None:
            raise WordParseError(text, m.start(), "generator like 'x0', 'y3' or 'x1^-1'")
        exp = -1 if tok.group(3) == "^-1" else 1
        letters.append(Generator(tok.group(1), int(tok.group(2)), exp))
    return tuple(letters)


def format_word(w: Iterable[Generator]) -> str:
    s = " ".join(str(g) for g in w)
    return s or "e"


def inverse_word(w: Sequence[Generator]) -> Word:
    return tuple(g.inverse() for g in reversed(w))


def spine(n: int) -> Tree:
    """Right comb of ``n`` x-carets."""
    t: Tree = LEAF
    for _ in range(n):
        t = Caret(X, LEAF, t)
    return t


def generator_element(g: Generator) -> Element:
    n = g.index
    source = spine(n + 1)
    source = add_caret_at_leaf(source, n, g.family)
    e = Element(source, spine(n + 2))
    return invert(e) if g.exponent < 0 else e


def word_to_element(w: Sequence[Generator] | str, reduced: bool = True) -> Element:
    """Multiply out the generators of ``w`` left to right.

    Intermediate products are reduced by default; this only removes
    cancelling caret pairs and keeps diagrams small.
    """
    if isinstance(w, str):
        w = parse_word(w)
    e = IDENTITY
    for g in w:
        e = multiply(e, generator_element(g))
        if reduced:
            e = reduce(e)
    return e


# -- leaf exponents ------------------------------------------------------------


def positive_diagram(letters: Iterable[tuple[str, int]]) -> tuple[Tree, Tree]:
    """Tree pair ``(T, spine)`` of a positive word, built one caret at a time.

    Right-multiplying by ``x_i`` or ``y_i`` hangs a caret of that type on leaf
    ``i`` of ``T`` while the spine grows by one caret.
    """
    t: Tree = LEAF
    leaves = 1
    for kind, i in letters:
        while leaves < i + 2:
            t = add_caret_at_leaf(t, leaves - 1, X)
            leaves += 1
        t = add_caret_at_leaf(t, i, kind)
        leaves += 1
    return t, spine(leaves - 1)


def leaf_chains(t: Tree) -> list[list[str]]:
    """Caret types above each leaf along left edges, top first, ignoring the
    right spine.  The last leaf always has an empty chain."""
    chains: list[list[str]] = []

    def walk(node: Tree, chain: list[str]) -> None:
        if node is None:
            chains.append(chain)
            return
        walk(node.left, chain + [node.kind])
        walk(node.right, [])

    node = t
    while node is not None:
        walk(node.left, [])
        node = node.right
    chains.append([])
    return chains


def read_positive(t: Tree) -> list[tuple[str, int]]:
    return [(kind, i) for i, chain in enumerate(leaf_chains(t)) for kind in chain]


def right_spine_is_x(t: Tree) -> bool:
    while t is not None:
        if t.kind != X:
            return False
        t = t.right
    return True


def diagram_word(g: Element) -> Word:
    """Leaf-exponent word of a diagram whose right spines are all x."""
    if not (right_spine_is_x(g.source) and right_spine_is_x(g.target)):
        raise ValueError("right spines must consist of x-carets")
    pos = [Generator(k, i, 1) for k, i in read_positive(g.source)]
    neg = [Generator(k, i, -1) for k, i in reversed(read_positive(g.target))]
    return tuple(pos + neg)


# -- seminormal form -----------------------------------------------------------


def _mirror(other: Tree, adds: list[tuple[int, str]]) -> Tree:
    # an added caret splits leaf i in the same proportion on both sides
    return apply_adds(other, adds)


def spine_normalize(g: Element) -> Element:
    """Make both right spines all-x by switching carets."""
    src, tgt = g.source, g.target
    for side in (0, 1):
        path = ""
        while True:
            t = src if side == 0 else tgt
            node = t
            for step in path:
                node = node.right
            if node is None:
                break
            if node.kind == Y:
                t, adds = switch_caret(t, path)
                if side == 0:
                    src, tgt = t, _mirror(tgt, adds)
                else:
                    tgt, src = t, _mirror(src, adds)
            path += "R"
    return Element(src, tgt)


def _next_y(t: Tree, need_left_caret: bool) -> str | None:
    """Path of the y-caret to move next: rightmost by leftmost leaf, deepest
    on ties."""
    best = None
    best_key = None
    for path, node in carets(t):
        if node.kind != Y:
            continue
        if need_left_caret and node.left is None:
            continue
        key = (leaf_offset(t, path), len(path))
        if best_key is None or key > best_key:
            best, best_key = path, key
    return best


def _push(t: Tree, other: Tree, fill_y: bool) -> tuple[Tree, Tree]:
    while (path := _next_y(t, True)) is not None:
        t, adds = switch_caret(t, path, fill_y)
        other = _mirror(other, adds)
    return t, other


def seminormal_diagram(g: Element) -> Element:
    """Diagram for ``g`` with a y-free target whose source y-carets have leaf
    left children, and both right spines all-x."""
    g = spine_normalize(g)
    src, tgt = g.source, g.target
    tgt, src = _push(tgt, src, True)
    while (path := _next_y(tgt, False)) is not None:
        tgt, adds = switch_caret(tgt, path)
        src = _mirror(src, adds)
    src, tgt = _push(src, tgt, False)
    return Element(src, tgt)


def to_seminormal(g: Element) -> Word:
    return diagram_word(seminormal_diagram(g))


# -- normal form ---------------------------------------------------------------


@dataclass
class NormalForm:
    """Exponent table ``x_0^a0 y_0^e0 ... x_n^an y_n^en x_m^-bm ... x_0^-b0``."""

    a: list[int] = field(default_factory=list)
    eps: list[int] = field(default_factory=list)
    b: list[int] = field(default_factory=list)

    def __post_init__(self):
        size = max(len(self.a), len(self.eps), len(self.b))
        for lst in (self.a, self.eps, self.b):
            lst.extend([0] * (size - len(lst)))
        self._trim()

    def _trim(self) -> None:
        while self.a and self.a[-1] == 0 and self.eps[-1] == 0 and self.b[-1] == 0:
            self.a.pop()
            self.eps.pop()
            self.b.pop()

    @classmethod
    def from_word(cls, w: Sequence[Generator]) -> NormalForm:
        """Exponent table of a word already in seminormal shape."""
        size = max((g.index for g in w), default=-1) + 1
        a, eps, b = [0] * size, [0] * size, [0] * size
        for g in w:
            if g.exponent > 0:
                (a if g.family == X else eps)[g.index] += 1
            elif g.family == X:
                b[g.index] += 1
            else:
                raise ValueError("negative part must consist of x-letters")
        return cls(a, eps, b)

    def word(self) -> Word:
        out = []
        for i in range(len(self.a)):
            out += [Generator(X, i, 1)] * self.a[i]
            out += [Generator(Y, i, 1)] * self.eps[i]
        for i in reversed(range(len(self.b))):
            out += [Generator(X, i, -1)] * self.b[i]
        return tuple(out)

    def __str__(self) -> str:
        return format_word(self.word())

    def __len__(self) -> int:
        return sum(self.a) + sum(self.eps) + sum(self.b)

    @property
    def n(self) -> int | None:
        idx = [i for i in range(len(self.a)) if self.a[i] + self.eps[i] > 0]
        return idx[-1] if idx else None

    @property
    def m(self) -> int | None:
        idx = [i for i in range(len(self.b)) if self.b[i] > 0]
        return idx[-1] if idx else None

    def table(self) -> list[tuple[int, int, int, int]]:
        """Rows ``(i, a_i, eps_i, b_i)``."""
        return [(i, self.a[i], self.eps[i], self.b[i]) for i in range(len(self.a))]

    def _get(self, lst: list[int], i: int) -> int:
        return lst[i] if i < len(lst) else 0

    def _drop(self, i: int, count: int) -> None:
        for lst in (self.a, self.eps, self.b):
            del lst[i : i + count]

    def find_cancellation(self) -> int | None:
        """Lowest ``i`` with ``a_i, b_i > 0`` and nothing of index ``i+1``
        nor a ``y_i`` separating the pair."""
        a, e, b, get = self.a, self.eps, self.b, self._get
        for i in range(len(a)):
            if a[i] and b[i] and not e[i] and not (get(a, i + 1) or get(b, i + 1) or get(e, i + 1)):
                return i
        return None

    def find_hidden_cancellation(self) -> int | None:
        """Lowest ``i`` with a subword ``x_i y_i x_{i+2} u x_{i+1}^-1 x_i^-1``
        where ``u`` avoids indices ``i+1`` and ``i+2``."""
        a, e, b, get = self.a, self.eps, self.b, self._get
        for i in range(len(a)):
            if not (a[i] and e[i] and b[i]):
                continue
            if get(a, i + 1) or get(e, i + 1) or get(b, i + 1) != 1:
                continue
            if get(a, i + 2) != 1 or get(e, i + 2) or get(b, i + 2):
                continue
            return i
        return None

    def is_normal(self) -> bool:
        return self.find_cancellation() is None and self.find_hidden_cancellation() is None

    def reduce_step(self) -> bool:
        i = self.find_cancellation()
        j = self.find_hidden_cancellation()
        if i is not None and (j is None or i <= j):
            self.a[i] -= 1
            self.b[i] -= 1
            self._drop(i + 1, 1)
        elif j is not None:
            # x_j y_j x_{j+2} u x_{j+1}^-1 x_j^-1 = y_j u' with u' two indices lower
            self.a[j] -= 1
            self.b[j] -= 1
            self.a[j + 2] -= 1
            self.b[j + 1] -= 1
            self._drop(j + 1, 2)
        else:
            return False
        self._trim()
        return True

    def copy(self) -> NormalForm:
        return NormalForm(list(self.a), list(self.eps), list(self.b))


def normal_form(g: Element) -> NormalForm:
    nf = NormalForm.from_word(to_seminormal(g))
    while nf.reduce_step():
        pass
    return nf


def normalize(w: Sequence[Generator] | str) -> NormalForm:
    return normal_form(word_to_element(w))


def nf_diagram(nf: NormalForm) -> Element:
    """The diagram read off a normal form by leaf exponents."""
    pos = [(g.family, g.index) for g in nf.word() if g.exponent > 0]
    neg = [(X, i) for i in range(len(nf.b)) for _ in range(nf.b[i])]
    t1, s1 = positive_diagram(pos)
    t2, s2 = positive_diagram(neg)
    n1, n2 = leaf_count(t1), leaf_count(t2)
    for _ in range(n2 - n1):
        t1 = add_caret_at_leaf(t1, leaf_count(t1) - 1, X)
    for _ in range(n1 - n2):
        t2 = add_caret_at_leaf(t2, leaf_count(t2) - 1, X)
    return Element(t1, t2)


# -- presentation ------------------------------------------------------------


@dataclass(frozen=True)
class RelationCheck:
    name: str
    lhs: str
    rhs: str
    holds: bool


FINITE_RELATIONS = [
    ("x2 x1", "x1 x3"),
    ("x3 x1", "x1 x4"),
    ("x2 y1", "y1 x3"),
    ("x3 y1", "y1 x4"),
    ("y2 x1", "x1 y3"),
    ("y3 x1", "x1 y4"),
    ("y2 y1", "y1 y3"),
    ("y3 y1", "y1 y4"),
    ("y0 y0", "x0 x1"),
    ("y1 y1", "x1 x2"),
]


def check_relation(lhs: str, rhs: str) -> bool:
    return equals(word_to_element(lhs), word_to_element(rhs))


def infinite_relations(max_index: int) -> list[tuple[str, str, str]]:
    out = []
    for j in range(max_index + 1):
        for i in range(j):
            out.append(("x-x", f"x{j} x{i}", f"x{i} x{j + 1}"))
            out.append(("x-y", f"x{j} y{i}", f"y{i} x{j + 1}"))
            out.append(("y-x", f"y{j} x{i}", f"x{i} y{j + 1}"))
            out.append(("y-y", f"y{j} y{i}", f"y{i} y{j + 1}"))
    for i in range(max_index + 1):
        out.append(("square", f"y{i} y{i}", f"x{i} x{i + 1}"))
    return out


def check_presentation(max_index: int) -> list[RelationCheck]:
    if max_index < 2:
        raise ValueError("max_index must be at least 2")
    report = [
        RelationCheck(name, lhs, rhs, check_relation(lhs, rhs))
        for name, lhs, rhs in infinite_relations(max_index)
    ]
    report += [
        RelationCheck("finite", lhs, rhs, check_relation(lhs, rhs)) for lhs, rhs in FINITE_RELATIONS
    ]
    return report
