import json

import numpy as np
import pytest

from arcalc.krull_schmidt import is_isomorphic
from arcalc.modules import Algebra, LMap, hom_stack, uniserial_module
from arcalc.morphisms import HObject, SObject, named_object, random_conjugate, uniserial_pair
from arcalc.serialize import DocumentError, dump_object, dumps, load_object, read_object


@pytest.mark.parametrize("name", ["k_in_Lambda", "0_in_m", "m_eq_m", "0_in_Lambda", "Lambda_eq_Lambda"])
def test_named_files_match_shorthand(name):
    x = read_object(f"objects/{name}_n3.json")
    assert isinstance(x, SObject)
    assert is_isomorphic(x, named_object(name, Algebra(3)))[0]


def test_round_trip_conjugated(rng):
    x = random_conjugate(named_object("m_in_Lambda", Algebra(4)), rng)
    y = load_object(json.loads(dumps(x)))
    assert np.array_equal(y.f.M, x.f.M) or is_isomorphic(x, y)[0]
    assert dumps(load_object(dump_object(y))) == dumps(y)


def test_round_trip_graded():
    g = Algebra(4, backend="graded-line")
    x = uniserial_pair(g, 2, 4, top=3)
    y = load_object(dump_object(x))
    assert y.target.partition == x.target.partition and is_isomorphic(x, y)[0]


def test_map_document():
    x = read_object("objects/mu_m_n2.json")
    assert type(x) is HObject and x.f.rank() == 1
    assert load_object(dump_object(x)).f.M.tolist() == x.f.M.tolist()


def test_general_map_round_trip():
    a = Algebra(3)
    L = uniserial_module(a, 3)
    x = HObject(LMap(L, L, hom_stack(L, L)[2]))
    assert dumps(load_object(dump_object(x))) == dumps(x)


@pytest.mark.parametrize(
    "doc",
    [
        {"version": 2, "algebra": {"n": 3}, "ambient": {"partition": [3]}},
        {"algebra": {"n": 3}},
        {"algebra": {"n": 3}, "ambient": {"partition": [3]}, "sub": [[1, 0, 0], [2, 0, 0]]},
        {"algebra": {"n": 3}, "ambient": {"partition": [3]}, "sub": [[1, 0, 0]]},  # not a submodule
        {"algebra": {"n": 3}, "ambient": {}},
        {"ambient": {"partition": [3]}},
    ],
)
def test_bad_documents(doc):
    with pytest.raises((DocumentError, ValueError)):
        load_object(doc)


def test_missing_file():
    with pytest.raises(DocumentError):
        read_object("no/such/file.json")
