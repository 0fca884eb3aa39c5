import numpy as np
import pytest

from matchgames import generate_instance
from matchgames.fixtures import (
    cycling_instance,
    cycling_misreport_profile,
    mutual_top_instance,
    poa_bound_instance,
    poa_misreport_profile,
    single_step_woman_instance,
)


@pytest.fixture
def cycling5():
    return cycling_instance()


@pytest.fixture
def cycling5_misreport():
    return cycling_misreport_profile()


@pytest.fixture
def poa5():
    return poa_bound_instance()


@pytest.fixture
def poa5_misreport():
    return poa_misreport_profile()


@pytest.fixture
def woman3():
    return single_step_woman_instance()


def random_instances(seed: int, count: int, n):
    """Deterministic stream of impartial-culture instances; n may be an int
    or a sequence to cycle through."""
    rng = np.random.default_rng(seed)
    sizes = [n] * count if isinstance(n, int) else [n[i % len(n)] for i in range(count)]
    return [generate_instance(size, rng=rng) for size in sizes]


@pytest.fixture
def mutual_top():
    return mutual_top_instance
