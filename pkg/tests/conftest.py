import pytest

from secgames.fixtures import game_g1, game_g2, game_g3
from secgames.game import Measure


@pytest.fixture(scope="session")
def g1():
    return game_g1()


@pytest.fixture(scope="session")
def g2():
    return game_g2()


@pytest.fixture(scope="session")
def g3():
    return game_g3()


CORPUS_SEED = 271828
CORPUS_SIZE = 500


@pytest.fixture(scope="session")
def small_corpus():
    """A quick sample for per-module differential tests."""
    from secgames.oracle import corpus

    return corpus(CORPUS_SEED, 60)


def measures_all():
    return [
        Measure.INF,
        Measure.SUP,
        Measure.LIMINF,
        Measure.LIMSUP,
        Measure.MPINF,
        Measure.MPSUP,
        Measure.DISC,
    ]


def with_measure(game, measure, discount=None):
    from secgames.game import WeightedGame

    return WeightedGame(
        game.vertices,
        game.owner,
        game.edges,
        game.weights,
        measure,
        measure,
        discount if measure is Measure.DISC else None,
    )
