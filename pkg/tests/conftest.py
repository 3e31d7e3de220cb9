"""Shared fixtures: ring contexts, polynomial parsing, seeded randomness.

Every randomized test draws from a per-test random.Random stream derived
from a base seed and the test's own id, so a run is reproducible with
``pytest --seed N`` and shuffling test order cannot change the draws.
"""

import random

import pytest

from singulens.polyring import Polynomial, RingContext
from singulens.polyring import parse as parse_poly

DEFAULT_SEED = 20250822


def pytest_addoption(parser):
    parser.addoption(
        "--seed",
        action="store",
        type=int,
        default=DEFAULT_SEED,
        help="base seed for randomized property tests",
    )


@pytest.fixture(scope="session")
def base_seed(request):
    return request.config.getoption("--seed")


@pytest.fixture
def rng(base_seed, request):
    return random.Random(f"{base_seed}:{request.node.nodeid}")


@pytest.fixture(scope="session")
def ring():
    return RingContext(("x", "y", "z"))


@pytest.fixture(scope="session")
def ring2():
    return RingContext(("x", "y"))


@pytest.fixture(scope="session")
def P(ring):
    def _parse(text, target_ring=None):
        return parse_poly(text, target_ring if target_ring is not None else ring)

    return _parse


def random_polynomial(
    rnd,
    target_ring,
    max_terms=4,
    max_degree=3,
    coeff_bound=9,
    allow_zero=True,
):
    """Small random polynomial with integer coefficients."""
    total = Polynomial.zero(target_ring)
    lower = 0 if allow_zero else 1
    for _ in range(rnd.randint(lower, max_terms)):
        exponent = tuple(
            rnd.randint(0, max_degree) for _ in range(target_ring.arity)
        )
        coeff = rnd.randint(-coeff_bound, coeff_bound)
        total = total + Polynomial.monomial(target_ring, exponent) * coeff
    if not allow_zero and total.is_zero():
        return Polynomial.constant(target_ring, 1)
    return total


@pytest.fixture(scope="session")
def random_poly():
    return random_polynomial
