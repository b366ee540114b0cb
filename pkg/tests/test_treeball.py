import random

import pytest

from freegog.graph import PathWord, random_loop, translation_length
from freegog.treeball import RADIUS_CAP, build_tree_ball


@pytest.fixture(scope="module")
def ball():
    from .conftest import _s4
    return build_tree_ball(_s4("a*b").gog, "v", 6)


def test_radius_zero(s4):
    b = build_tree_ball(s4.gog, "v", 0)
    assert len(b) == 1 and b.is_tree


def test_radius_one(s4):
    # two edges at v, each meeting the cosets 1, gamma, gamma^-1 of <g> (or of <gamma>: 1, g, g^-1)
    b = build_tree_ball(s4.gog, "v", 1)
    assert len(b) == 7 and b.is_tree
    assert sorted(b.label[1:]) == sorted([("~e_u", b.label[1][1])] * 3 + [("~e_w", b.label[4][1])] * 3)


def test_radius_cap(s4):
    with pytest.raises(ValueError):
        build_tree_ball(s4.gog, "v", RADIUS_CAP + 1)


def test_ball_is_tree(ball):
    assert ball.is_tree and max(ball.depth) == 6


def test_metric_matches_parent_pointers(ball):
    rng = random.Random(3)
    for _ in range(100):
        i, j = rng.randrange(len(ball)), rng.randrange(len(ball))
        assert ball.distance(ball.vertices[i], ball.vertices[j]) == ball.tree_distance(i, j)


def test_hyperbolic_example(ball, s4):
    p = PathWord.parse(s4.gog, "~e_u * `a` * e_u * ~e_w * `alpha` * e_w")
    assert ball.fits(p)
    assert ball.min_displacement(p) == translation_length(p) == 4


def test_elliptic_example(ball, s4):
    p = PathWord.parse(s4.gog, "~e_u * `a` * e_u")
    assert ball.min_displacement(p) == 0


def test_oracle_agreement(ball, s4):
    rng = random.Random(0)
    checked, hyperbolic = 0, 0
    while checked < 50:
        p = random_loop(s4.gog, "v", 6, 1, rng)
        if not ball.fits(p):
            continue
        n = translation_length(p)
        assert ball.min_displacement(p) == n, str(p)
        checked += 1
        hyperbolic += n > 0
    assert hyperbolic > 0


def test_loop_required(ball, s4):
    with pytest.raises(ValueError):
        ball.min_displacement(PathWord.parse(s4.gog, "~e_u"))
