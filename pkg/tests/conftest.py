import random
from pathlib import Path

import pytest

from rydberg_hubo.poly import PolyBuilder, Polynomial

INSTANCES = Path(__file__).resolve().parent.parent / "instances"

FIG1_TEXT = (INSTANCES / "fig1.hubo").read_text(encoding="utf-8")


def random_polynomial(seed: int) -> Polynomial:
    """Seeded random canonical polynomial: N<=5, order<=4, coeffs in [-5,5]\\{0}.

    All variables are declared up front, so instances with free (unused)
    variables occur and exercise the degenerate-projection paths.
    """
    rng = random.Random(seed)
    n = rng.randint(2, 5)
    names = [f"v{i}" for i in range(n)]
    b = PolyBuilder()
    for name in names:
        b.declare(name)
    for _ in range(rng.randint(1, 6)):
        order = rng.randint(1, min(4, n))
        variables = rng.sample(names, order)
        coeff = rng.choice([-5, -4, -3, -2, -1, 1, 2, 3, 4, 5])
        b.add_term(variables, coeff)
    b.add_constant(rng.randint(-3, 3))
    return b.build()


@pytest.fixture(scope="session")
def instances_dir() -> Path:
    return INSTANCES
