"""The three small reference games used across tests and docs."""

from __future__ import annotations

from fractions import Fraction

from .game import Measure, WeightedGame


def _mk(vertices, owners, edges, measure1, measure2, discount=None):
    weights = {(u, v): (Fraction(a), Fraction(b)) for (u, v, a, b) in edges}
    return WeightedGame(
        vertices,
        dict(zip(vertices, owners)),
        [(u, v) for (u, v, _, _) in edges],
        weights,
        measure1,
        measure2,
        discount,
    )


def game_g1(measure: Measure = Measure.MPINF, discount=None) -> WeightedGame:
    """Five-vertex game: player 1 picks a branch, player 2 picks a sub-branch."""
    return _mk(
        ["v0", "v1", "v2", "v3", "v4"],
        [1, 1, 2, 1, 1],
        [
            ("v0", "v1", 0, 0),
            ("v0", "v2", 0, 0),
            ("v1", "v1", 4, 4),
            ("v2", "v3", 0, 0),
            ("v2", "v4", 0, 0),
            ("v3", "v3", 4, 3),
            ("v4", "v4", 3, 2),
        ],
        measure,
        measure,
        discount,
    )


def game_g2(measure: Measure = Measure.MPINF) -> WeightedGame:
    """Two mutually reachable loops with complementary rewards."""
    return _mk(
        ["v0", "v1"],
        [2, 1],
        [
            ("v0", "v0", 2, 0),
            ("v0", "v1", 0, 0),
            ("v1", "v1", 0, 2),
            ("v1", "v0", 0, 0),
        ],
        measure,
        measure,
    )


def game_g3(measure: Measure = Measure.INF) -> WeightedGame:
    """Four-vertex game whose min-payoff values need per-vertex strategies."""
    return _mk(
        ["v0", "v2", "v3", "v4"],
        [1, 2, 1, 1],
        [
            ("v0", "v2", 2, 1),
            ("v2", "v3", 2, 0),
            ("v2", "v4", 3, 1),
            ("v4", "v3", 2, 0),
            ("v4", "v4", 3, 1),
            ("v3", "v3", 2, 0),
        ],
        measure,
        measure,
    )
