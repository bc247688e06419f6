import random

import pytest
from hypothesis import HealthCheck, settings

from csst.gf2 import BitMatrix
from csst.pauli import PauliOperator, StabilizerCode, commutes

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


def random_stabilizer(n: int, rng: random.Random, z_bias: float = 0.6, even_x: bool = True,
                      max_gens: int | None = None) -> StabilizerCode:
    """A random stabilizer code skewed toward the structures transversal T cares about."""
    gens: list[PauliOperator] = []
    limit = n - 1 if max_gens is None else max_gens
    for _ in range(200):
        if len(gens) >= limit:
            break
        if rng.random() < z_bias:
            a, b = 0, rng.getrandbits(n)
        else:
            a = rng.getrandbits(n)
            if even_x and a.bit_count() % 2:
                a ^= 1 << rng.randrange(n)
            b = rng.getrandbits(n) if rng.random() < 0.4 else 0
        kappa = (a & b).bit_count() % 2 + 2 * rng.getrandbits(1)
        P = PauliOperator.from_bits(n, a, b, kappa)
        if not all(commutes(P, Q) for Q in gens):
            continue
        try:
            StabilizerCode(n, tuple(gens + [P]))
        except ValueError:
            continue
        gens.append(P)
        if rng.random() < 0.15:
            break
    return StabilizerCode(n, tuple(gens))


@pytest.fixture
def rng():
    return random.Random(20191016)
