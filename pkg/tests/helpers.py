"""Shared generators for randomised tests."""

from __future__ import annotations

import random

from intervalcat import FinitePoset, Interval, IntervalSet, universe_size


def random_interval(rng: random.Random, n: int) -> Interval:
    b = rng.randint(1, n)
    return Interval(rng.randint(1, b), b)


def random_set(rng: random.Random, n: int) -> IntervalSet:
    return IntervalSet(n, rng.getrandbits(universe_size(n)))


def random_poset(rng: random.Random, size: int, edge_prob: float = 0.3) -> FinitePoset:
    """Random DAG on `size` labelled points, closed to a partial order."""
    labels = [f"p{i}" for i in range(size)]
    relations = [
        (labels[i], labels[j])
        for i in range(size)
        for j in range(i + 1, size)
        if rng.random() < edge_prob
    ]
    return FinitePoset.from_relations(labels, relations)


def random_sum_members(rng: random.Random, pool: list[Interval], max_count: int) -> list[Interval]:
    k = rng.randint(1, max_count)
    return [rng.choice(pool) for _ in range(k)]


def random_morphism_coeffs(rng: random.Random, sources, targets):
    from intervalcat import hom_dim

    coeffs = {}
    for i, s in enumerate(sources):
        for j, t in enumerate(targets):
            if hom_dim(s, t) and rng.random() < 0.6:
                coeffs[(i, j)] = 1
    return coeffs
