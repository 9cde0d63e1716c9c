"""Seeded random elements for the comparison harness and the test suites."""

from __future__ import annotations

import random

from .covectors import CoMonomial, CoVector, vp
from .kfield import KElem, KField, LaurentK
from .witt import WittVector


def random_k(rng: random.Random, K: KField, terms: int = 2, degree: int = 2, nonzero: bool = False) -> KElem:
    while True:
        num = {}
        for _ in range(rng.randint(1, terms)):
            e = tuple(rng.randint(0, degree) for _ in range(K.r))
            num[e] = rng.randrange(1, K.q)
        a = K.poly(num) if num else K.zero()
        if a or not nonzero:
            return a


def random_witt(rng: random.Random, K: KField, m: int, **kw) -> WittVector:
    return WittVector([random_k(rng, K, **kw) for _ in range(m + 1)], K.p, K.zero())


def random_pure_witt(rng: random.Random, K: KField, m: int, **kw) -> WittVector:
    """A random vector of W_m(k) outside pW."""
    while True:
        lam = random_witt(rng, K, m, **kw)
        if lam and not lam.in_pW():
            return lam


def random_index(rng: random.Random, p: int, max_n: int) -> int:
    return rng.choice([n for n in range(1, max_n + 1) if n % p])


def random_comonomial(rng, K, max_m, max_n, pure=True, **kw) -> CoMonomial:
    m = rng.randint(0, max_m)
    n = random_index(rng, K.p, max_n)
    lam = random_pure_witt(rng, K, m, **kw) if pure else random_witt(rng, K, m, **kw)
    if not lam:
        lam = WittVector([K.one()] + [K.zero()] * m, K.p, K.zero())
    return CoMonomial(n, m, lam)


def random_covector(rng: random.Random, K: KField, max_m: int, max_n: int,
                    max_terms: int = 3, noise: bool = True) -> CoVector:
    """A sum of up to ``max_terms`` co-monomials (not necessarily pure),
    optionally disguised by adding (F̄ - 1)g for a random covector g."""
    out = CoVector(K, [LaurentK.zero(K)])
    for _ in range(rng.randint(1, max_terms)):
        out = out + random_comonomial(rng, K, max_m, max_n, pure=rng.random() < 0.8).covector()
    if noise and rng.random() < 0.5:
        g = random_comonomial(rng, K, max(0, out.m - 1), max(1, max_n // K.p), pure=False,
                              terms=1, degree=1).covector()
        out = out + g.frobenius_bar() - g
    return out


def random_field(rng: random.Random, primes=(2, 3, 5), max_r: int = 2) -> KField:
    return KField(rng.choice(primes), 1, rng.randint(1, max_r))


__all__ = ["random_k", "random_witt", "random_pure_witt", "random_index",
           "random_comonomial", "random_covector", "random_field", "vp"]
