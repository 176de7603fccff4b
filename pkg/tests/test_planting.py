import math

import pytest

from conftest import planted_invariant_problems
from shortcycle import build_graph
from shortcycle.generators import named
from shortcycle.oracles import exact_girth
from shortcycle.planting import (
    AccessOracle,
    PlantingError,
    load_instance,
    plant,
    replant_edge,
    run_access_experiment,
    save_instance,
)


@pytest.fixture(scope="module")
def petersen_inst():
    return plant(named("petersen"), 0.1)


def test_petersen_arithmetic(petersen_inst):
    inst = petersen_inst
    # d_avg = 3, so every star checks in with exactly two replacements
    assert inst.g0 == 5.0
    assert all(len(reps) == 2 for _, reps in inst.star_map.values())
    assert inst.graph.n == 30 and len(inst.S) == 20
    assert len(inst.plantable) == 10
    # one epsilon edge per replacement, one chain edge per star
    assert inst.graph.m == 15 + 20 + 10
    hub, reps = inst.star_map[0]
    assert inst.graph.degree(hub) == len(reps)


def test_petersen_invariants(petersen_inst):
    assert planted_invariant_problems(petersen_inst) == []


def test_replant_identities(petersen_inst):
    inst = petersen_inst
    before = exact_girth(inst.graph)
    assert before >= inst.g0
    eid = inst.plantable[3]
    assert exact_girth(replant_edge(inst, eid, 1.0)) == pytest.approx(1.2, rel=1e-12)
    # relabeling to the same or a larger length changes nothing
    assert exact_girth(replant_edge(inst, eid, inst.g0)) == before
    assert exact_girth(replant_edge(inst, eid, 10 * inst.g0)) == before
    with pytest.raises(PlantingError):
        replant_edge(inst, eid, 0.5)
    non_plantable = next(e for e in range(inst.graph.m) if e not in set(inst.plantable))
    with pytest.raises(PlantingError):
        replant_edge(inst, non_plantable, 1.0)


def test_cycle_base_is_tight():
    inst = plant(named("cycle", 8), 0.1)
    assert inst.graph.n == 3 * 8  # every n_v lands on the minimum 2
    assert len(inst.S) == 16
    assert planted_invariant_problems(inst) == []


def test_plant_rejects_bad_input():
    tri = build_graph(3, [(0, 1, 1.0), (0, 2, 1.0), (1, 2, 1.0)])
    with pytest.raises(PlantingError):
        plant(tri, 1.0)
    with pytest.raises(PlantingError):
        plant(tri, -0.1)
    with pytest.raises(PlantingError):
        plant(build_graph(3, [(0, 1, 2.0), (1, 2, 1.0), (0, 2, 1.0)]), 0.1)
    with pytest.raises(PlantingError, match="no cycle"):
        plant(build_graph(3, [(0, 1, 1.0), (1, 2, 1.0)]), 0.1)


def test_epsilon_zero_analysis_mode():
    tri = build_graph(3, [(0, 1, 1.0), (0, 2, 1.0), (1, 2, 1.0)])
    with pytest.raises(PlantingError, match="analysis_mode"):
        plant(tri, 0.0)
    inst = plant(tri, 0.0, analysis_mode=True)
    assert inst.analysis_only
    assert any(length == 0.0 for _, _, length in inst.graph.edges)
    with pytest.raises(PlantingError):
        replant_edge(inst, inst.plantable[0], 1.0)
    # the oracle side still works on it
    rep = run_access_experiment(inst, 4, "round-robin")
    assert rep.queries_used <= 4


def test_oracle_sequential_discipline(petersen_inst):
    g = petersen_inst.graph
    oracle = AccessOracle(g)
    j = sorted(petersen_inst.S)[0]
    deg = oracle.degree(j)
    assert deg == g.degree(j)
    seen = []
    for _ in range(deg):
        e = oracle.next_edge(j)
        assert e.u == j
        seen.append(e)
    # exhausted vertices keep answering None, still counting the query
    q = oracle.total_queries
    assert oracle.next_edge(j) is None
    assert oracle.total_queries == q + 1
    # non-decreasing length, no repeats, matches the adjacency order
    assert [(e.v, e.length, e.eid) for e in seen] == g.adjacency[j]
    assert all(a.length <= b.length for a, b in zip(seen, seen[1:]))
    with pytest.raises(IndexError):
        oracle.degree(g.n)


def test_experiment_budgets(petersen_inst):
    inst = petersen_inst
    m, n = inst.graph.m, inst.graph.n
    full = run_access_experiment(inst, 2 * m + n, "exhaustive")
    assert full.plantable_revealed == full.plantable_total == len(inst.plantable)
    assert full.fraction_unseen == 0.0
    empty = run_access_experiment(inst, 0, "round-robin")
    assert empty.plantable_revealed == 0 and empty.fraction_unseen == 1.0
    assert empty.queries_used == 0
    # a sublinear budget cannot touch every chain edge
    small = run_access_experiment(inst, n // 2, "round-robin")
    assert small.queries_used <= n // 2
    assert small.plantable_revealed < small.plantable_total
    with pytest.raises(ValueError):
        run_access_experiment(inst, -1, "round-robin")


def test_budget_monotone(petersen_inst):
    revealed = [
        run_access_experiment(petersen_inst, b, "round-robin").plantable_revealed
        for b in (0, 10, 40, 90, 200)
    ]
    assert revealed == sorted(revealed)


def test_save_load_round_trip(tmp_path, petersen_inst):
    inst = petersen_inst
    path = tmp_path / "inst.edges"
    save_instance(inst, path)
    assert path.exists() and (tmp_path / "inst.edges.json").exists()
    loaded = load_instance(path)
    assert loaded.S == inst.S
    assert loaded.epsilon == inst.epsilon and loaded.g0 == inst.g0
    assert len(loaded.plantable) == len(inst.plantable)
    assert sorted(loaded.graph.edges) == sorted(inst.graph.edges)
    # plantable ids were remapped to the serialized edge order: replanting
    # through the loaded instance behaves exactly like the original
    for eid in loaded.plantable:
        u, v, length = loaded.graph.edges[eid]
        assert length == inst.g0
    got = exact_girth(replant_edge(loaded, loaded.plantable[0], 1.0))
    assert got == pytest.approx(1.2, rel=1e-12)
