import itertools
from math import prod

import pytest

from abelbasis.divisors import element_order, enumerate_divisors, primary_split
from abelbasis.factorization import Factorization
from abelbasis.groups import enumerate_elements, make_product_group
from abelbasis.verifykit import brute_force_order, closure

from conftest import corpus


def _divisors_by_brute_force(f):
    primes = f.primes
    out = []
    for bs in itertools.product(*(range(a + 1) for _, a in f.factors)):
        out.append((prod(p**b for p, b in zip(primes, bs)), bs))
    return sorted(out)


def test_divisors_of_12():
    D = enumerate_divisors(Factorization.of(12))
    assert list(D) == [(1, (0, 0)), (2, (1, 0)), (3, (0, 1)), (4, (2, 0)), (6, (1, 1)), (12, (2, 1))]
    assert D.tau == 6


def test_divisors_trivial_and_prime():
    assert list(enumerate_divisors(Factorization.of(1))) == [(1, ())]
    assert list(enumerate_divisors(Factorization.of(13))) == [(1, (0,)), (13, (1,))]


@pytest.mark.parametrize("n", [2, 36, 360, 1024, 9699690, 2**5 * 3**3 * 7])
def test_divisor_table_properties(n):
    f = Factorization.of(n)
    D = enumerate_divisors(f)
    ds = D.divisors
    assert D.tau == prod(a + 1 for _, a in f.factors)
    assert all(a < b for a, b in zip(ds, ds[1:]))
    assert D.entries[0] == (1, (0,) * f.k)
    assert D.entries[-1] == (n, tuple(a for _, a in f.factors))
    assert all(n % d == 0 for d in ds)
    assert list(D) == _divisors_by_brute_force(f)


def test_order_examples():
    Z12 = make_product_group([12])
    D = enumerate_divisors(Z12.factorization)
    r = element_order((0,), D, Z12)
    assert (r.m, r.cofactors) == (1, (1, 1))
    r = element_order((2,), D, Z12)
    assert brute_force_order((2,), Z12) == 6
    assert (r.m, r.exponents, r.cofactors) == (6, (1, 1), (3, 2))

    G = make_product_group([4, 2])
    r = element_order((1, 1), enumerate_divisors(G.factorization), G)
    assert brute_force_order((1, 1), G) == 4
    assert (r.m, r.cofactors) == (4, (1,))


def test_split_examples():
    Z12 = make_product_group([12])
    D = enumerate_divisors(Z12.factorization)
    x = (2,)
    parts = primary_split(x, element_order(x, D, Z12), Z12, D)
    assert [(p, y, o) for p, y, o in parts] == [(2, (6,), 2), (3, (4,), 3)]
    assert [brute_force_order(y, Z12) for _, y, _ in parts] == [2, 3]
    assert primary_split((0,), element_order((0,), D, Z12), Z12, D) == []
    y = (3,)
    assert primary_split(y, element_order(y, D, Z12), Z12, D) == [(2, (3,), 4)]


def test_order_matches_brute_force_on_corpus():
    for _, G in corpus(200):
        D = enumerate_divisors(G.factorization)
        for x in enumerate_elements(G):
            r = element_order(x, D, G)
            assert r.m == brute_force_order(x, G)
            for p, b, c in zip(G.factorization.primes, r.exponents, r.cofactors):
                assert c * p**b == r.m


def test_split_components_form_direct_sum():
    for _, G in corpus(120):
        D = enumerate_divisors(G.factorization)
        for x in enumerate_elements(G):
            r = element_order(x, D, G)
            parts = primary_split(x, r, G, D)
            for _, y, o in parts:
                assert brute_force_order(y, G) == o
            gens = [y for _, y, _ in parts]
            assert len(closure(gens, G)) == prod(o for _, _, o in parts) == r.m
            # the sum of the components generates <x>
            s = G.identity
            for y in gens:
                s = G._add(s, y)
            assert closure([s], G) == closure([x], G)


def test_order_cost_bound():
    for moduli in ([2**10], [3**4, 5], [2, 2, 2, 3, 5, 7], [2**4, 3**2, 5]):
        G = make_product_group(moduli)
        f = G.factorization
        D = enumerate_divisors(f)
        bound = D.tau * (2 * f.n.bit_length() + 1)
        for x in list(enumerate_elements(G))[:200]:
            G.reset_counter()
            element_order(x, D, G)
            assert G.op_count <= bound
