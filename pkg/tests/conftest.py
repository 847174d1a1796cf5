"""Shared fixtures: small fields and seeded random generators.

Expected values in the test suite are frozen constants: either checked by
hand, produced by an independent brute-force oracle, or copied from the
worked examples that the package documents.  Property tests use seeded
random.Random so every failure is replayable.
"""

from __future__ import annotations

import random

import pytest

from aspw.gf import FieldCtx, make_field
from aspw.upoly import Poly, RatFunc


@pytest.fixture(scope="session")
def F2() -> FieldCtx:
    return make_field(2, 1)


@pytest.fixture(scope="session")
def F3() -> FieldCtx:
    return make_field(3, 1)


@pytest.fixture(scope="session")
def F4() -> FieldCtx:
    return make_field(2, 2)


@pytest.fixture(scope="session")
def F8() -> FieldCtx:
    return make_field(2, 3)


@pytest.fixture(scope="session")
def F9() -> FieldCtx:
    return make_field(3, 2)


@pytest.fixture(scope="session")
def F16() -> FieldCtx:
    return make_field(2, 4)


@pytest.fixture(scope="session")
def F27() -> FieldCtx:
    # modulus fixed explicitly: w^3 = w + 2
    return make_field(3, 3, modulus=(1, 2, 0, 1))


@pytest.fixture(scope="session")
def F81() -> FieldCtx:
    return make_field(3, 4)


def rand_elem(rng: random.Random, ctx: FieldCtx):
    return ctx.from_int(rng.randrange(ctx.order()))


def rand_poly(rng: random.Random, ctx: FieldCtx, max_deg: int, monic: bool = False) -> Poly:
    deg = rng.randrange(max_deg + 1)
    coeffs = [rand_elem(rng, ctx) for _ in range(deg)]
    coeffs.append(ctx.one() if monic else ctx.from_int(rng.randrange(1, ctx.order())))
    return Poly(ctx, coeffs)


def rand_ratfunc(rng: random.Random, ctx: FieldCtx, max_deg: int) -> RatFunc:
    num = rand_poly(rng, ctx, max_deg)
    den = rand_poly(rng, ctx, max_deg, monic=True)
    return RatFunc(num, den)
