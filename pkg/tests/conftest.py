import itertools
import random

import pytest

from abelbasis.groups import make_product_group, make_table_group, table_of
from abelbasis.verifykit import abelian_groups_of_order

KLEIN = [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]]


def s3_table():
    perms = list(itertools.permutations(range(3)))
    pos = {p: i for i, p in enumerate(perms)}
    return [[pos[tuple(a[b[i]] for i in range(3))] for b in perms] for a in perms]


def permuted_table_group(G, rng):
    """Table copy of an enumerable group with elements relabelled at random."""
    perm = list(range(G.order))
    rng.shuffle(perm)
    return make_table_group(table_of(G, perm), G.factorization)


def corpus(max_order):
    """(elementary divisors, ProductGroup) for every abelian group of order <= max_order."""
    for n in range(2, max_order + 1):
        for ords in abelian_groups_of_order(n):
            yield ords, make_product_group(ords)


def brute_multiple(a, x, G):
    acc = G.identity
    for _ in range(a):
        acc = G._add(acc, x)
    return acc


@pytest.fixture
def klein():
    return make_table_group(KLEIN)


@pytest.fixture
def rng():
    return random.Random(20240917)
