import random

import pytest

from rydberg_hubo import search
from rydberg_hubo.compiler import compile_polynomial
from rydberg_hubo.gadgets import Atom, AtomGraph, ROLE_DATA, ROLE_WIRE
from rydberg_hubo.mwis import (
    ground_manifold,
    max_weight_independent_sets,
    verify_equivalence,
)
from rydberg_hubo.poly import PolyBuilder, parse_hubo

from conftest import FIG1_TEXT, random_polynomial


def make_graph(weights, edges):
    atoms = tuple(
        Atom(i, ROLE_WIRE if w > 0 else ROLE_DATA, w, var=None if w else f"z{i}")
        for i, w in enumerate(weights)
    )
    return AtomGraph(atoms, frozenset((min(a, b), max(a, b)) for a, b in edges))


def brute_mwis(graph):
    n = graph.n_atoms
    adj = graph.neighbor_masks()
    weights = graph.weights()
    best = 0
    fams = [()]
    for mask in range(1 << n):
        ok = True
        for v in search.bits_of(mask):
            if adj[v] & mask & ~(1 << v):
                ok = False
                break
        if not ok:
            continue
        w = sum(weights[v] for v in search.bits_of(mask))
        if w > best:
            best, fams = w, [search.bits_of(mask)]
        elif w == best:
            fams.append(search.bits_of(mask))
    return best, sorted(fams)


def random_graph(rng, n):
    weights = [rng.randint(0, 5) for _ in range(n)]
    edges = [
        (i, j)
        for i in range(n)
        for j in range(i + 1, n)
        if rng.random() < 0.35
    ]
    return make_graph(weights, edges)


class TestSolver:
    def test_unit_triangle(self):
        g = make_graph([1, 1, 1], [(0, 1), (1, 2), (0, 2)])
        res = max_weight_independent_sets(g)
        assert res.weight == 1
        assert res.maximizers == ((0,), (1,), (2,))

    def test_weighted_path(self):
        # path 0-1-2-3 with weights (1,3,3,1): optimum 4, two maximizer families
        g = make_graph([1, 3, 3, 1], [(0, 1), (1, 2), (2, 3)])
        res = max_weight_independent_sets(g)
        assert res.weight == 4
        assert res.maximizers == ((0, 2), (1, 3))
        assert brute_mwis(g) == (4, [(0, 2), (1, 3)])

    def test_zero_weight_atom_keeps_both_states(self):
        g = make_graph([0, 1], [])
        res = max_weight_independent_sets(g)
        assert res.weight == 1
        assert res.maximizers == ((0, 1), (1,))

    def test_empty_graph(self):
        g = make_graph([], [])
        res = max_weight_independent_sets(g)
        assert res.weight == 0 and res.maximizers == ((),)

    @pytest.mark.parametrize("seed", range(25))
    def test_branch_and_bound_matches_exhaustive(self, seed):
        rng = random.Random(seed)
        g = random_graph(rng, rng.randint(4, 14))
        via_bb = max_weight_independent_sets(g, exhaustive_cap=0)
        via_dp = max_weight_independent_sets(g, exhaustive_cap=20)
        assert via_bb.weight == via_dp.weight
        assert via_bb.maximizers == via_dp.maximizers
        assert (via_dp.weight, list(via_dp.maximizers)) == brute_mwis(g)

    def test_monotonicity_isolated_unit_atom(self):
        rng = random.Random(7)
        for _ in range(5):
            g = random_graph(rng, 8)
            base = max_weight_independent_sets(g)
            extended = make_graph(
                [a.weight for a in g.atoms] + [1], list(g.edges)
            )
            grown = max_weight_independent_sets(extended)
            assert grown.weight == base.weight + 1
            assert len(grown.maximizers) == len(base.maximizers)

    def test_node_budget_error(self):
        rng = random.Random(1)
        g = random_graph(rng, 12)
        with pytest.raises(search.NodeBudgetExceeded):
            max_weight_independent_sets(g, exhaustive_cap=0, node_budget=3)


class TestGroundManifold:
    def test_fig1_projections(self):
        p = parse_hubo(FIG1_TEXT)
        cg = compile_polynomial(p)
        report = ground_manifold(cg)
        expected = {
            p.assignment_from({"x1": 1, "x2": 0, "x3": 1, "x4": 0}),
            p.assignment_from({"x1": 1, "x2": 1, "x3": 0, "x4": 1}),
        }
        assert set(report.data_projections) == expected
        assert report.mwis_weight == 5
        assert report.projected_degeneracy == 2
        assert report.free_variables == ()

    def test_fig1_matches_generic_solver(self):
        p = parse_hubo(FIG1_TEXT)
        cg = compile_polynomial(p)
        report = ground_manifold(cg)
        generic = max_weight_independent_sets(cg.graph)
        assert generic.weight == report.mwis_weight
        assert sorted(generic.maximizers) == sorted(report.ground_configs)
        projections = set()
        for config in generic.maximizers:
            chosen = set(config)
            projections.add(
                tuple(int(a in chosen) for a in cg.data_atom_ids)
            )
        assert projections == set(report.data_projections)

    def test_empty_polynomial_all_free(self):
        b = PolyBuilder()
        for name in ("a", "b", "c"):
            b.declare(name)
        cg = compile_polynomial(b.build())
        report = ground_manifold(cg)
        assert report.mwis_weight == 0
        assert len(report.data_projections) == 8
        assert report.free_variables == ("a", "b", "c")
        assert report.degeneracy == 8

    def test_raw_vs_projected_degeneracy(self):
        # f = a*b: three minimizing assignments; the 00 clamp leaves the
        # even wire free to excite either member -> 4 raw configs over 3.
        p = parse_hubo("+1 a b\n")
        cg = compile_polynomial(p)
        report = ground_manifold(cg)
        assert set(report.data_projections) == {(0, 0), (0, 1), (1, 0)}
        assert report.projected_degeneracy == 3
        assert report.degeneracy == 4

    def test_config_cap_keeps_exact_count(self):
        b = PolyBuilder()
        for name in ("a", "b", "c"):
            b.declare(name)
        cg = compile_polynomial(b.build())
        report = ground_manifold(cg, config_cap=3)
        assert report.ground_configs is None
        assert report.degeneracy == 8

    def test_factorization_unique(self):
        from rydberg_hubo.models import build_factorization_hubo

        p = build_factorization_hubo(6, 2, 2, {"P0": 1})
        cg = compile_polynomial(p)
        report = ground_manifold(cg)
        assert report.data_projections == (
            p.assignment_from({"P1": 1, "Q1": 1, "Q0": 0}),
        )


class TestVerifyEquivalence:
    def test_fig1_equivalent(self):
        p = parse_hubo(FIG1_TEXT)
        cg = compile_polynomial(p)
        cert = verify_equivalence(p, cg)
        assert cert.equivalent
        assert cert.witnesses == ()
        assert cert.energy_identity_ok
        assert set(cert.graph_projections) == set(cert.hubo_minima)

    def test_corrupted_graph_detected(self):
        p = parse_hubo(FIG1_TEXT)
        cg = compile_polynomial(p)
        # drop one clique edge from the order-3 superatom
        aux = [
            a.id
            for a in cg.graph.atoms
            if a.gadget == 0 and a.role == ROLE_WIRE
        ]
        assert len(aux) == 3
        victim = (min(aux[0], aux[1]), max(aux[0], aux[1]))
        assert victim in cg.graph.edges
        broken_graph = AtomGraph(cg.graph.atoms, cg.graph.edges - {victim})
        broken = type(cg)(
            graph=broken_graph,
            variables=cg.variables,
            var_to_atom=cg.var_to_atom,
            mode=cg.mode,
            constant_shift=cg.constant_shift,
            plan=cg.plan,
        )
        cert = verify_equivalence(p, broken)
        assert not cert.equivalent
        assert len(cert.witnesses) > 0

    def test_variable_mismatch_rejected(self):
        p = parse_hubo(FIG1_TEXT)
        cg = compile_polynomial(parse_hubo("+1 a b\n"))
        with pytest.raises(ValueError):
            verify_equivalence(p, cg)

    @pytest.mark.parametrize("seed", range(12))
    def test_random_instances_energy_identity(self, seed):
        p = random_polynomial(seed)
        cg = compile_polynomial(p)
        cert = verify_equivalence(p, cg)
        assert cert.equivalent
        assert cert.energy_identity_ok
