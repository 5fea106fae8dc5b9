"""Deterministic instance families for experiments and corpus runs."""

from __future__ import annotations

import random

from .ring import Ring, DEFAULT_PRIME
from .modules import (
    FreeElement,
    FreeModule,
    PresentedModule,
    Submodule,
    submodule_from_polys,
)


def power_of_m(n, r, p=DEFAULT_PRIME):
    """R/m^{r+1} over GF(p)[x1..xn]."""
    ring = Ring(n, p)
    gens = [ring.monomial(e) for e in ring.monomials(r + 1)]
    return PresentedModule.quotient_by_ideal(submodule_from_polys(ring, gens))


def rm_ord_example(p=DEFAULT_PRIME):
    """The order-dependence example: I = m*x1 + m^3 = (x1^2, x1 x2, x2^3)
    in two variables."""
    ring = Ring(2, p)
    x, y = ring.variable(0), ring.variable(1)
    ideal = submodule_from_polys(ring, [x * x, x * y, y * y * y])
    return PresentedModule.quotient_by_ideal(ideal), ideal


def random_ideal(n, rng, max_gens=4, max_degree=4, p=DEFAULT_PRIME):
    """Random homogeneous ideal with 1..max_gens dense generators of degrees
    in 1..max_degree."""
    ring = Ring(n, p)
    count = rng.randint(1, max_gens)
    gens = [ring.random_polynomial(rng.randint(1, max_degree), rng)
            for _ in range(count)]
    return submodule_from_polys(ring, gens)


def random_module(n, rng, max_rank=3, max_rels=4, max_degree=4, p=DEFAULT_PRIME):
    """Random non-cyclic presented module: free module of rank 2..max_rank
    with small twists and random homogeneous relations."""
    ring = Ring(n, p)
    rank = rng.randint(2, max_rank)
    twists = sorted(rng.randint(0, 1) for _ in range(rank))
    F = FreeModule(ring, twists)
    rels = []
    for _ in range(rng.randint(1, max_rels)):
        d = rng.randint(max(twists) + 1, max(twists) + max_degree - 1)
        terms = {}
        for pos in range(rank):
            f = ring.random_polynomial(d - twists[pos], rng)
            if rng.random() < 0.25:
                continue
            for e, c in f.terms.items():
                terms[(pos, e)] = c
        elem = FreeElement(F, terms)
        if not elem.is_zero():
            rels.append(elem)
    if not rels:
        rels = [F.gen(0).mul_poly(ring.random_polynomial(1, rng))]
    return PresentedModule(F, Submodule(F, rels))


def corpus(kind, count, n, seed, **kwargs):
    """Deterministic instance list; per-instance seeds are seed XOR index so
    the corpus is independent of evaluation order."""
    out = []
    for index in range(count):
        rng = random.Random(seed ^ (index * 0x9E3779B1 + 1))
        if kind == "random-ideal":
            out.append(random_ideal(n, rng, **kwargs))
        elif kind == "random-module":
            out.append(random_module(n, rng, **kwargs))
        else:
            raise ValueError(f"unknown corpus kind: {kind}")
    return out
