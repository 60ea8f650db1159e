import random

import pytest

from bookram.colouring import Colouring
from bookram.constructions import pentagon_colouring


@pytest.fixture
def pentagon() -> Colouring:
    return pentagon_colouring()


def all_one_colour(n: int, colour: int = 0, q: int = 2) -> Colouring:
    return Colouring.from_edge_colours(n, q, lambda u, v: colour)


def random_small(n: int, seed: int, q: int = 2) -> Colouring:
    """Tiny stdlib-RNG colouring, independent of the numpy generator used by
    the production random_colouring."""
    rng = random.Random(seed)
    return Colouring.from_edge_colours(n, q, lambda u, v: rng.randrange(q))
