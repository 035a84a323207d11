import random
from math import prod

import pytest

from abelbasis.edlp import IndependentBasis
from abelbasis.errors import TooLarge
from abelbasis.groups import make_product_group, make_table_group
from abelbasis.opcount import OpReport
from abelbasis.structure import CanonicalInvariants, basis_from_table
from abelbasis.verifykit import (
    abelian_groups_of_order,
    brute_force_edlp,
    brute_force_structure,
    check_direct_sum,
)

from conftest import KLEIN


def test_brute_force_structure_examples():
    assert brute_force_structure(make_table_group(KLEIN)).as_dict() == {2: [2, 2]}
    assert brute_force_structure(make_product_group([4])).as_dict() == {2: [4]}
    assert brute_force_structure(make_product_group([4, 2, 9])).as_dict() == {2: [4, 2], 3: [9]}


def test_brute_force_structure_self_consistency():
    rng = random.Random(7)
    prime_powers = [2, 4, 8, 3, 9, 5, 25, 7, 11]
    specs = set()
    while len(specs) < 60:
        k = rng.randint(1, 4)
        spec = tuple(sorted(rng.choice(prime_powers) for _ in range(k)))
        if prod(spec) <= 3000:
            specs.add(spec)
    for spec in specs:
        G = make_product_group(list(spec))
        assert brute_force_structure(G) == CanonicalInvariants.from_orders(spec)


def test_brute_force_structure_on_invariant_factor_form():
    # Z12 x Z6 = Z4 x Z3 x Z2 x Z3
    assert brute_force_structure(make_product_group([12, 6])).as_dict() == {2: [4, 2], 3: [3, 3]}


def test_too_large():
    with pytest.raises(TooLarge):
        brute_force_structure(make_product_group([5000]))
    with pytest.raises(TooLarge):
        brute_force_structure(make_product_group([64]), bound=32)


def test_brute_force_edlp_trivial_cases():
    G = make_product_group([4, 2])
    B = IndependentBasis(2, [(2, 0), (0, 1)], [2, 2])
    sol = brute_force_edlp((0, 0), B, G)
    assert (sol.z, sol.coefficients) == (1, (0, 0))
    sol = brute_force_edlp((0, 1), B, G)
    assert (sol.z, sol.coefficients) == (1, (0, 1))


def test_check_direct_sum():
    G = make_product_group([2, 2])
    assert check_direct_sum([(1, 0), (0, 1)], G)
    assert not check_direct_sum([(1, 0), (1, 0)], G)
    assert check_direct_sum([(1, 1)], G)
    assert not check_direct_sum([(1, 0), (0, 1), (1, 1)], G)


def test_groups_of_order():
    assert abelian_groups_of_order(1) == [[]]
    assert sorted(map(sorted, abelian_groups_of_order(8))) == [[2, 2, 2], [2, 4], [8]]
    assert len(abelian_groups_of_order(72)) == 6
    # number of abelian groups of order p^5 is the partition number p(5) = 7
    assert len(abelian_groups_of_order(3**5)) == 7


def test_op_report_phases_and_csv():
    G = make_product_group([8, 4, 3])
    G.reset_counter()
    basis_from_table(G)
    rep = G.counter
    d = rep.as_dict()
    for kind in ("add", "negate", "eq", "hash_insert", "hash_lookup"):
        assert d["total"][kind] == sum(v[kind] for k, v in d.items() if k != "total")
    assert {"order", "edlp", "marking"} <= set(rep.phases())
    csv_text = rep.to_csv()
    lines = csv_text.splitlines()
    assert lines[0] == "phase,counter,value"
    assert f"total,add,{rep.get('add')}" in lines


def test_op_report_nesting():
    r = OpReport()
    r.tick("add")
    with r.phase("edlp"):
        r.tick("add", 2)
        with r.phase("extend"):
            r.tick("negate")
    assert r.get("add", "other") == 1
    assert r.get("add", "edlp") == 2
    assert r.get("negate", "extend") == 1
    assert r.group_ops == 4
