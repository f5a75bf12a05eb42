"""Seeded random element generators for tests and the self-test suite."""

from __future__ import annotations

import random

from .field import FieldCtx, MonoElem


def random_poly(ctx: FieldCtx, rng: random.Random, terms: int,
                abound: int = 2, bbound: int = 1) -> dict:
    out: dict = {}
    bb = bbound if ctx.rank == 2 else 0
    while len(out) < terms:
        key = (rng.randint(-abound, abound), rng.randint(-bb, bb))
        out[key] = rng.randint(1, ctx.q - 1)
    return out


def random_element(ctx: FieldCtx, rng: random.Random,
                   max_terms: int = 2, abound: int = 2, bbound: int = 1) -> MonoElem:
    """A small random field element; denominators stay tiny so expansion
    orders around 12 remain fast."""
    num = random_poly(ctx, rng, rng.randint(1, max_terms), abound, bbound)
    roll = rng.random()
    if roll < 0.45:
        den = None
    elif roll < 0.7:
        den = random_poly(ctx, rng, 1, abound, bbound)
    else:
        den = random_poly(ctx, rng, 2, abound, bbound)
    return ctx.element(num, den)


def random_nonzero(ctx: FieldCtx, rng: random.Random, **kw) -> MonoElem:
    while True:
        e = random_element(ctx, rng, **kw)
        if not e.is_zero():
            return e
