import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sfcat.modzoo import intertwiner_space, is_intertwiner
from sfcat.suites import (PATTERNS4, category_suite, make_category, naturality_records,
                          pentagon_records, random_morphism)


def _failures(recs):
    return [(r.check, r.inputs) for r in recs if not r.verdict]


def test_full_suite_single_pair():
    recs = category_suite(1, seed=0)
    assert _failures(recs) == []
    names = {r.check for r in recs}
    assert {f"pentagon-{p}" for p in PATTERNS4} <= names


def test_reduced_suite_two_pairs():
    assert _failures(category_suite(2, seed=0)) == []


def test_threaded_run_matches_serial():
    a = [r.to_json() for r in category_suite(1, seed=3)]
    b = [r.to_json() for r in category_suite(1, seed=3, jobs=4)]
    assert a == b


def test_corrupted_phi_is_caught_with_witness():
    cat, zoo = make_category(1, corrupt_phi=True)
    recs = pentagon_records(cat, zoo, ("1111",))
    assert not recs[0].verdict
    assert "witness_entry" in recs[0].detail


def test_every_pentagon_object_appears(zoo1):
    cat, zoo = make_category(1)
    seen = set()
    for r in pentagon_records(cat, zoo):
        seen.update(r.inputs["objects"])
    assert seen == {o.name for o in zoo.values()}


@given(st.integers(0, 10_000))
def test_naturality_for_random_morphisms(seed):
    cat, zoo = make_category(1)
    recs = naturality_records(cat, zoo, random.Random(seed), trials=1)
    assert recs and all(r.verdict for r in recs)


@given(st.integers(0, 10_000), st.sampled_from(["U", "xi110", "eta11", "1", "Pi1"]),
       st.sampled_from(["U", "xi110", "eta11", "1", "Pi1"]))
def test_sampled_morphisms_are_intertwiners(seed, a, b):
    cat, zoo = make_category(1)
    f = random_morphism(cat, zoo[a], zoo[b], random.Random(seed))
    if f is not None:
        assert is_intertwiner(f, cat.as_module(zoo[a]), cat.as_module(zoo[b]))


def test_intertwiner_space_of_U_has_expected_size(cat1, zoo1):
    mod = cat1.as_module(zoo1["U"])
    # even endomorphisms are right multiplications by the even part span{1, chi+ chi-}
    assert len(intertwiner_space(mod, mod)) == 2


def test_twist_on_T(cat1):
    from sfcat.suites import twist_value_records
    assert all(r.verdict for r in twist_value_records(cat1))


def test_custom_module_joins_the_zoo():
    spec = {"name": "line", "carrier": {"labels": ["a"], "parities": [0]},
            "generators": [[], []]}
    cat, zoo = make_category(1, modules=[spec])
    assert "line" in zoo
    recs = category_suite(1, seed=1, modules=[spec])
    assert _failures(recs) == []
