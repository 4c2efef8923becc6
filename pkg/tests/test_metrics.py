from __future__ import annotations

import random

import pytest

from ftau.elements import IDENTITY, equals, multiply, reduce
from ftau.metrics import (
    AMBIENT_GENERATORS,
    CapExceeded,
    MetricReport,
    ball_rows,
    bfs_ball,
    distortion_report,
    metric_D,
    metric_N,
    metric_report,
    read_ball_csv,
    relators_hold,
    rows_to_csv,
)
from ftau.words import NormalForm, generator_element, normal_form, normalize, word_to_element


def test_metric_D_examples():
    assert metric_D(NormalForm()) == 0
    assert metric_D(normalize("y0 x1 y1")) == 4
    assert metric_D(normalize("x0 x1")) == 3


def test_metric_N_examples():
    assert metric_N(IDENTITY) == 0
    assert metric_N(word_to_element("x0")) == 2
    # normal-form diagram: three leaf carets plus padding on the last leaf
    assert metric_N(word_to_element("y0 x1 y1")) == 4


def test_radius_one_ball():
    ball = bfs_ball(1)
    assert len(ball) == 9
    assert ball.sphere_sizes() == [1, 8]
    elems = [e.element for e in ball]
    assert not any(equals(a, b) for i, a in enumerate(elems) for b in elems[i + 1 :])


def test_small_ball_lengths():
    ball = bfs_ball(3)
    assert ball.length("e") == 0
    assert ball.length(str(normalize("y0 y0"))) == 2
    assert ball.length(str(normalize("x0 x1"))) == 2
    assert ball.sphere_sizes() == [1, 8, 52, 312]


def test_ball_lengths_are_lipschitz():
    ball = bfs_ball(3)
    gens = [generator_element(w[0]) for w in AMBIENT_GENERATORS]
    rng = random.Random(0)

    for e in rng.sample(list(ball), 100):
        if e.length == 3:
            continue
        for g in gens:
            other = ball.length(str(normal_form(reduce(multiply(e.element, g)))))
            assert other is not None and abs(other - e.length) <= 1


def test_cap():
    with pytest.raises(CapExceeded):
        bfs_ball(8)
    with pytest.raises(CapExceeded):
        distortion_report("fx", 9)


def test_report_chain():
    assert MetricReport(0, 0, 0).chain_holds()
    assert not MetricReport(10, 1, 1).chain_holds()
    ball = bfs_ball(2)
    for e in ball:
        assert metric_report(e.element, ball).chain_holds()


def test_csv_roundtrip():
    ball = bfs_ball(2)
    text = rows_to_csv(ball_rows(ball))
    assert text.splitlines()[0] == "word,length,D,N,D_over_length,N_over_length"
    assert read_ball_csv(text) == {e.word: e.length for e in ball}


def test_distortion_small():
    rep = distortion_report("fx", 3)
    assert len(rep.rows) == 1 + 4 + 12 + 36
    assert rep.rows[0].word == "e"
    assert rep.csv().splitlines()[0].startswith("word,length,D,N,ambient_length")
    assert "elements" in rep.summary_text()
    amb = bfs_ball(3)
    rep = distortion_report("fy", 2, ambient=amb)
    assert all(r.ambient_length is not None for r in rep.rows)


@pytest.mark.parametrize("sub", ["fx", "fy", "fz"])
def test_subgroup_relators(sub):
    assert relators_hold(sub)
