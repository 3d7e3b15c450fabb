import json

import pytest

from pibase.finite_space import discrete_space, enumerate_topologies
from pibase.invariants import is_free_sequence, min_order_table
from pibase.lemma24 import Cover, hull_family, lemma24_bruteforce, lemma24_extract
from pibase.shapirovskii import def21_check, shapirovskii_build
from pibase.space_oracles import FiniteSpaceOracle, RationalLineOracle


@pytest.mark.slow
@pytest.mark.parametrize("bound", (0, 1, 2, 3))
def test_lemma24_extract_on_every_topology_on_4_points(bound):
    spaces = list(enumerate_topologies(4))

    for space in spaces:
        family = hull_family(space, space.full, bound)
        outcome = lemma24_extract(space, space.full, family, bound)

        if isinstance(outcome, Cover):
            assert len(outcome.members) <= bound
            assert set(outcome.members) <= set(family)
        else:
            assert len(outcome.points) == bound
            assert is_free_sequence(space, outcome.names(space))
    assert len(spaces) == 355


def test_lemma24_bruteforce_on_3_points():
    table = lemma24_bruteforce(3, n_jobs=2)
    extracted_free = table[table["extract_on_X"] == "free_sequence"]

    assert len(table) == 29 * 4
    assert table["topology"].nunique() == 29
    assert (extracted_free["F"] >= extracted_free["L"]).all()
    assert table.equals(lemma24_bruteforce(3, n_jobs=1))


@pytest.mark.parametrize("n", range(1, 7))
def test_shapirovskii_build_on_discrete_spaces(n):
    oracle = FiniteSpaceOracle(discrete_space(n))

    prefix = shapirovskii_build(oracle)
    report = def21_check(prefix, oracle)

    assert prefix.complete
    assert prefix.points == tuple(range(n))
    assert prefix.families == tuple((1 << index,) for index in range(n))
    assert report.passed
    assert report["b"].checked == n * (n + 1) // 2


@pytest.mark.parametrize("n", (3, 6))
def test_shapirovskii_build_documents_are_reproducible(n):
    oracle = FiniteSpaceOracle(discrete_space(n))

    documents = [
        json.dumps(shapirovskii_build(oracle).to_dict(oracle), sort_keys=True)
        for _ in range(2)
    ]

    assert documents[0] == documents[1]


@pytest.mark.slow
def test_shapirovskii_build_on_100_rationals():
    oracle = RationalLineOracle()

    prefix = shapirovskii_build(oracle, max_steps=100)
    report = def21_check(prefix, oracle)
    again = shapirovskii_build(oracle, max_steps=100)

    assert prefix.n_stages == 100
    assert len(set(prefix.points)) == 100
    assert not prefix.complete
    assert report.passed
    assert report["a"].method == "probes"
    assert json.dumps(prefix.to_dict(oracle), sort_keys=True) == json.dumps(
        again.to_dict(oracle), sort_keys=True
    )


@pytest.mark.slow
def test_min_order_table_up_to_4_points():
    spaces = [space for n in range(5) for space in enumerate_topologies(n)]

    table = min_order_table(spaces, n_jobs=2)

    assert len(table) == 1 + 1 + 4 + 29 + 355
    assert table["witness_is_pibase"].all()
    assert (table["m"] >= 1).sum() == len(table) - 1
    assert (~table["d<=m*s"] | table["d<=(m+1)*s"]).all()
