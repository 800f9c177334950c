import math
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from charlier_lab import EuclidParams2

#: The three non-degenerate parameter sets every grid check runs on.
PARAM_SETS = (
    EuclidParams2(math.pi / 6, 1.0, 1.0),
    EuclidParams2(math.pi / 4, 0.7, 1.3),
    EuclidParams2(1.1, 0.8, 1.7),
)


@pytest.fixture(params=PARAM_SETS, ids=("pi6-1-1", "pi4-07-13", "11-08-17"))
def motion(request) -> EuclidParams2:
    return request.param
