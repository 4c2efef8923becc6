"""Word-metric estimates, an exact breadth-first word-length oracle, and the
distortion experiments for the copies of F generated by x-, y- and z-letters.
"""

from __future__ import annotations

import csv
import io
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .elements import IDENTITY, Element, equals, multiply, pl_key, reduce
from .trees import caret_count
from .words import (
    Generator,
    NormalForm,
    generator_element,
    inverse_word,
    nf_diagram,
    normal_form,
    parse_word,
    word_to_element,
)

log = logging.getLogger(__name__)

DEFAULT_CAP = 7


class CapExceeded(ValueError):
    pass


class DedupMismatch(AssertionError):
    """Normal forms and map equality disagree about two ball states."""


Word = tuple[Generator, ...]

AMBIENT_GENERATORS = tuple(
    (Generator(f, i, e),) for f in "xy" for i in (0, 1) for e in (1, -1)
)

SUBGROUPS: dict[str, dict[str, str]] = {
    "fx": {"x0": "x0", "x1": "x1"},
    "fy": {"y0": "y0", "y1": "y1"},
    "fz": {"z0": "y0 y2", "z1": "y2 y4"},
}


def metric_D(nf: NormalForm) -> int:
    n = nf.n or 0
    m = nf.m or 0
    return sum(nf.a) + sum(nf.eps) + sum(nf.b) + n + m


def metric_N(g: Element | NormalForm) -> int:
    nf = g if isinstance(g, NormalForm) else normal_form(g)
    return caret_count(nf_diagram(nf).source)


@dataclass(frozen=True)
class MetricReport:
    D: int
    N: int
    exact_length: int | None = None

    def chain_holds(self) -> bool:
        """``D/48 <= N/12 <= |g| <= 2D <= 8N`` and ``D <= 4N``."""
        D, N, L = self.D, self.N, self.exact_length
        if L is None:
            return D <= 4 * N
        return (
            Fraction(D, 48) <= Fraction(N, 12) <= L <= 2 * D <= 8 * N and D <= 4 * N
        )


@dataclass
class BallEntry:
    word: str
    length: int
    element: Element
    nf: NormalForm
    witness: Word


@dataclass
class BfsBall:
    radius: int
    entries: dict[str, BallEntry] = field(default_factory=dict)

    def length(self, nf_word: str) -> int | None:
        e = self.entries.get(nf_word)
        return None if e is None else e.length

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries.values())

    def sphere_sizes(self) -> list[int]:
        sizes = [0] * (self.radius + 1)
        for e in self.entries.values():
            sizes[e.length] += 1
        return sizes


def _bfs(
    generators: Sequence[tuple[Word, Element]], radius: int
) -> list[tuple[int, Word, Element, NormalForm, tuple]]:
    """Breadth-first closure from the identity.

    States are keyed by normal form; the map-equality key (kinks and their
    images) is tracked alongside and any disagreement between the two aborts.
    """
    nf0 = NormalForm()
    states = {str(nf0): (0, (), IDENTITY, nf0, pl_key(IDENTITY))}
    seen_maps = {pl_key(IDENTITY): str(nf0)}
    frontier = [str(nf0)]
    for dist in range(1, radius + 1):
        nxt = []
        for key in frontier:
            _, word, elem, _, _ = states[key]
            for gword, gelem in generators:
                e = reduce(multiply(elem, gelem))
                nf = normal_form(e)
                k = str(nf)
                mk = pl_key(e)
                if k in states:
                    if states[k][4] != mk:
                        raise DedupMismatch(f"{k} reached by two different maps")
                    continue
                if mk in seen_maps:
                    raise DedupMismatch(f"{k} and {seen_maps[mk]} are the same map")
                seen_maps[mk] = k
                states[k] = (dist, word + gword, e, nf, mk)
                nxt.append(k)
        log.debug("radius %d: %d new states", dist, len(nxt))
        frontier = nxt
    return list(states.values())


def bfs_ball(radius: int, cap: int = DEFAULT_CAP) -> BfsBall:
    """Exact word lengths over ``x0, x1, y0, y1`` and inverses up to ``radius``."""
    if radius > cap:
        raise CapExceeded(f"radius {radius} exceeds cap {cap}")
    gens = [(w, generator_element(w[0])) for w in AMBIENT_GENERATORS]
    ball = BfsBall(radius)
    for dist, word, elem, nf, _ in _bfs(gens, radius):
        s = str(nf)
        ball.entries[s] = BallEntry(s, dist, elem, nf, word)
    return ball


def metric_report(g: Element, ball: BfsBall | None = None) -> MetricReport:
    nf = normal_form(g)
    exact = ball.length(str(nf)) if ball is not None else None
    return MetricReport(metric_D(nf), metric_N(nf), exact)


def ball_rows(ball: BfsBall) -> list[dict]:
    rows = []
    for e in sorted(ball, key=lambda e: (e.length, e.word)):
        D, N = metric_D(e.nf), metric_N(e.nf)
        rows.append(
            {
                "word": e.word,
                "length": e.length,
                "D": D,
                "N": N,
                "D_over_length": _ratio(D, e.length),
                "N_over_length": _ratio(N, e.length),
            }
        )
    return rows


def _ratio(a: int, b: int | None) -> str:
    if not b:
        return ""
    return f"{a / b:.6f}"


def rows_to_csv(rows: list[dict]) -> str:
    if not rows:
        return ""
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


def read_ball_csv(text: str) -> dict[str, int]:
    """``word -> length`` from a CSV written by :func:`rows_to_csv`."""
    return {row["word"]: int(row["length"]) for row in csv.DictReader(io.StringIO(text))}


# -- distortion ----------------------------------------------------------------


def subgroup_generators(sub: str) -> list[tuple[str, Word, Element]]:
    if sub not in SUBGROUPS:
        raise KeyError(f"unknown subgroup {sub!r}; choose from {sorted(SUBGROUPS)}")
    out = []
    for name, text in SUBGROUPS[sub].items():
        w = parse_word(text)
        for label, ww in ((name, w), (name + "^-1", inverse_word(w))):
            out.append((label, ww, word_to_element(ww)))
    return out


@dataclass
class DistortionRow:
    word: str
    subgroup_length: int
    D: int
    N: int
    ambient_length: int | None
    witness: str

    def ratios(self) -> dict[str, float | None]:
        L = self.subgroup_length
        if not L:
            return {"D": None, "N": None, "ambient": None}
        return {
            "D": self.D / L,
            "N": self.N / L,
            "ambient": None if self.ambient_length is None else self.ambient_length / L,
        }


@dataclass
class DistortionReport:
    subgroup: str
    radius: int
    rows: list[DistortionRow]

    def summary(self) -> dict[str, tuple[float, float] | None]:
        out: dict[str, tuple[float, float] | None] = {}
        for key in ("D", "N", "ambient"):
            vals = [r.ratios()[key] for r in self.rows]
            vals = [v for v in vals if v is not None]
            out[key] = (min(vals), max(vals)) if vals else None
        return out

    def csv(self) -> str:
        rows = []
        for r in self.rows:
            rat = r.ratios()
            rows.append(
                {
                    "word": r.word,
                    "length": r.subgroup_length,
                    "D": r.D,
                    "N": r.N,
                    "ambient_length": "" if r.ambient_length is None else r.ambient_length,
                    "D_over_length": "" if rat["D"] is None else f"{rat['D']:.6f}",
                    "N_over_length": "" if rat["N"] is None else f"{rat['N']:.6f}",
                    "ambient_over_length": ""
                    if rat["ambient"] is None
                    else f"{rat['ambient']:.6f}",
                }
            )
        return rows_to_csv(rows)

    def summary_text(self) -> str:
        lines = [f"subgroup {self.subgroup} radius {self.radius}: {len(self.rows)} elements"]
        for key, rng in self.summary().items():
            if rng is None:
                lines.append(f"{key}/length: n/a")
            else:
                lines.append(f"{key}/length: min {rng[0]:.4f} max {rng[1]:.4f}")
        return "\n".join(lines)


def subgroup_ball(sub: str, radius: int) -> list[tuple[int, str, Element]]:
    """Elements of the subgroup within ``radius`` in its own generators.

    Keyed by the map itself (kinks and images), so no normal form is
    consulted for the subgroup lengths.
    """
    gens = subgroup_generators(sub)
    start = pl_key(IDENTITY)
    seen = {start: (0, "", IDENTITY)}
    frontier = [start]
    for dist in range(1, radius + 1):
        nxt = []
        for key in frontier:
            _, label, elem = seen[key]
            for glabel, _, gelem in gens:
                e = reduce(multiply(elem, gelem))
                k = pl_key(e)
                if k not in seen:
                    seen[k] = (dist, (label + " " + glabel).strip(), e)
                    nxt.append(k)
        frontier = nxt
    return list(seen.values())


def distortion_report(
    sub: str, radius: int, ambient: BfsBall | None = None, cap: int = 8
) -> DistortionReport:
    if radius > cap:
        raise CapExceeded(f"radius {radius} exceeds cap {cap}")
    rows = []
    for dist, label, elem in subgroup_ball(sub, radius):
        nf = normal_form(elem)
        s = str(nf)
        rows.append(
            DistortionRow(
                s,
                dist,
                metric_D(nf),
                metric_N(nf),
                ambient.length(s) if ambient is not None else None,
                label or "e",
            )
        )
    rows.sort(key=lambda r: (r.subgroup_length, r.word))
    return DistortionReport(sub, radius, rows)


def commutator_word(u: Sequence[Generator], v: Sequence[Generator]) -> Word:
    return tuple(u) + tuple(v) + inverse_word(u) + inverse_word(v)


def f_relators(a: Sequence[Generator], b: Sequence[Generator]) -> list[Word]:
    """Thompson's two relators ``[a b^-1, a^-1 b a]`` and ``[a b^-1, a^-2 b a^2]``."""
    a, b = tuple(a), tuple(b)
    ai = inverse_word(a)
    u = a + inverse_word(b)
    return [commutator_word(u, ai + b + a), commutator_word(u, ai + ai + b + a + a)]


def relators_hold(sub: str) -> bool:
    names = list(SUBGROUPS[sub].values())
    a, b = parse_word(names[0]), parse_word(names[1])
    return all(equals(word_to_element(r), IDENTITY) for r in f_relators(a, b))
