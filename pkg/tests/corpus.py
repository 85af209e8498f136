"""Seeded random polynomial corpora shared by the property and acceptance tests."""

import random

from cyclominors.cyclotomic import CycElem, field
from cyclominors.spectral import SparsePoly


def random_integer_poly(rng: random.Random, n: int, lo: int = -3, hi: int = 3) -> SparsePoly:
    w = rng.randint(1, n)
    values = [v for v in range(lo, hi + 1) if v]
    return SparsePoly.from_terms(n, {e: rng.choice(values) for e in rng.sample(range(n), w)})


def random_cyclotomic_integer(rng: random.Random, n: int, bound: int = 2) -> CycElem:
    phi = field(n).phi
    while True:
        c = CycElem(n, [rng.randint(-bound, bound) for _ in range(phi)])
        if c:
            return c


def random_cyclotomic_poly(rng: random.Random, n: int, bound: int = 2) -> SparsePoly:
    w = rng.randint(1, n)
    return SparsePoly.from_terms(
        n, {e: random_cyclotomic_integer(rng, n, bound) for e in rng.sample(range(n), w)})


def integer_corpus(n: int, count: int, seed: int):
    rng = random.Random(f"integer-{seed}-{n}")
    return [random_integer_poly(rng, n) for _ in range(count)]


def cyclotomic_corpus(n: int, count: int, seed: int):
    rng = random.Random(f"cyclotomic-{seed}-{n}")
    return [random_cyclotomic_poly(rng, n) for _ in range(count)]
