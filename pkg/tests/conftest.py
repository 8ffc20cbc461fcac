import math

import pytest

from courantsharp.geometry import Disc, summarize

UNIT_DISC_RADIUS = 1 / math.sqrt(math.pi)


@pytest.fixture(scope="session")
def unit_disc_summary():
    return summarize(Disc.unit_area())
