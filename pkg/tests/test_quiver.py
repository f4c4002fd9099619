import json

import pytest

from arcalc.ar import orbit
from arcalc.krull_schmidt import is_isomorphic
from arcalc.modules import Algebra
from arcalc.morphisms import named_object
from arcalc.quiver import (
    _entry_key,
    brute_force_catalog,
    brute_force_containment,
    export_quiver,
    knit,
    parse_quiver,
    quiver_invariants,
)
from arcalc.verify import catalog

# vertex and arrow counts recorded from this package's own knit, cross-checked
# against the brute-force catalog for n <= 3
VERTEX_COUNTS = {1: 2, 2: 5, 3: 10, 4: 20, 5: 50}


def test_n1_quiver():
    q = knit(Algebra(1)).quiver
    assert len(q.vertices) == 2
    assert all(q.projective(i) and q.injective(i) for i in range(2))
    assert q.translation == {}
    assert sum(q.arrows.values()) == 1  # the sink map (0 ⊆ k) -> (k = k)


@pytest.mark.parametrize("n", sorted(VERTEX_COUNTS))
def test_vertex_counts_and_mesh(n):
    r = catalog(n, 0, 32003)
    assert r.closed and not r.budget_exceeded
    q = r.quiver
    assert len(q.vertices) == VERTEX_COUNTS[n]
    assert q.mesh_ok()
    proj = [i for i in range(len(q.vertices)) if q.projective(i)]
    assert len(proj) == 2
    assert set(q.translation) == set(range(len(q.vertices))) - set(proj)


def test_orbit_periods_divide_six():
    q = catalog(4, 0, 32003).quiver
    for i, x in enumerate(q.vertices):
        if not q.projective(i):
            assert 6 % orbit(x).period == 0


def test_orbit_objects_are_vertices():
    a = Algebra(3)
    q = catalog(3, 0, 32003).quiver
    for name in ("k_in_Lambda", "0_in_m", "m_eq_m", "m_in_Lambda", "0_in_k", "k_eq_k"):
        x = named_object(name, a)
        assert any(is_isomorphic(x, v)[0] for v in q.vertices)


def test_cutoff_reports_budget():
    r = knit(Algebra(4), cutoff=5)
    assert r.budget_exceeded and r.stopped == "cutoff"
    assert len(r.quiver.vertices) > 5


def test_graded_rejected():
    with pytest.raises(ValueError):
        knit(Algebra(3, backend="graded-line"))


def test_json_round_trip():
    q = catalog(3, 0, 32003).quiver
    text = export_quiver(q, "json")
    q2 = parse_quiver(text)
    assert export_quiver(q2, "json") == text
    doc = json.loads(text)
    assert sorted(doc) == ["algebra", "arrows", "translation", "vertices"]


def test_dot_export_n1():
    dot = export_quiver(knit(Algebra(1)).quiver, "dot")
    assert dot.count("[shape=") == 2
    solid = [l for l in dot.splitlines() if "->" in l and "dashed" not in l]
    assert len(solid) == 1


def test_dot_has_dashed_translation():
    dot = export_quiver(catalog(2, 0, 32003).quiver, "dot")
    assert dot.count("style=dashed") == 3


def test_export_deterministic():
    a = export_quiver(knit(Algebra(3), seed=1).quiver, "json")
    b = export_quiver(knit(Algebra(3), seed=1).quiver, "json")
    assert a == b


def test_unknown_format():
    with pytest.raises(ValueError):
        export_quiver(knit(Algebra(1)).quiver, "svg")


def test_brute_force_n1():
    assert len(brute_force_catalog(1, 3)) == 2


def test_brute_force_n2_equals_knit():
    entries = brute_force_catalog(2, 4)
    q = catalog(2, 0, 32003).quiver
    assert sorted(_entry_key(e) for e in entries) == sorted(
        quiver_invariants(q)
    )


def test_brute_force_n3_contained():
    entries = brute_force_catalog(3, 6)
    assert len(entries) == 10
    assert brute_force_containment(catalog(3, 0, 32003).quiver, entries) == []
