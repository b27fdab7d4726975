"""Exact maximum-weight independent set solving over compiled graphs, ground
manifold extraction and equivalence certification.

The verifier treats blockade edges as hard independence constraints (the
infinite-interaction limit): a ground configuration is an independent set of
maximum total weight. Everything here is exact integer arithmetic; the full
optimal family is enumerated, never sampled, because the solution concept is
the complete ground manifold.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import search
from .compiler import CompiledGraph, conditional_energies
from .gadgets import AtomGraph
from .poly import Assignment, Polynomial, brute_force_minima, index_to_assignment


@dataclass(frozen=True)
class MwisResult:
    weight: int
    maximizers: tuple[tuple[int, ...], ...]  # sorted tuples of chosen atom ids


def max_weight_independent_sets(
    graph: AtomGraph,
    *,
    exhaustive_cap: int = search.EXHAUSTIVE_CAP,
    node_budget: int = search.DEFAULT_NODE_BUDGET,
    max_family: int = 1_000_000,
) -> MwisResult:
    """Exact optimum and the complete family of maximizers, in canonical order.

    Connected components are solved independently (exhaustive subset sweep up
    to `exhaustive_cap` vertices, branch-and-bound beyond) and recombined.
    A node-budget overrun raises; results are never silently truncated.
    """
    vertices = list(range(graph.n_atoms))
    adj = graph.neighbor_masks()
    weights = graph.weights()
    parts = search.component_optima(
        vertices, adj, weights, exhaustive_cap=exhaustive_cap, node_budget=node_budget
    )
    combined = search.combine_optima(parts, limit=max_family)
    return MwisResult(
        weight=combined.weight,
        maximizers=tuple(sorted(search.bits_of(m) for m in combined.masks)),
    )


@dataclass(frozen=True)
class GroundReport:
    """Complete ground manifold of a compiled graph, projected onto data atoms."""

    mwis_weight: int
    variables: tuple[str, ...]
    data_projections: tuple[Assignment, ...]
    degeneracy: int               # raw optimal configurations, exact count
    projected_degeneracy: int     # distinct data projections
    free_variables: tuple[str, ...]
    ground_configs: tuple[tuple[int, ...], ...] | None  # excited-atom id sets

    def to_json_dict(self) -> dict:
        return {
            "mwis_weight": self.mwis_weight,
            "variables": list(self.variables),
            "data_projections": [list(p) for p in self.data_projections],
            "degeneracy": self.degeneracy,
            "projected_degeneracy": self.projected_degeneracy,
            "free_variables": list(self.free_variables),
            "ground_configs": (
                None
                if self.ground_configs is None
                else [list(c) for c in self.ground_configs]
            ),
        }


def ground_manifold(
    cg: CompiledGraph,
    *,
    max_vars: int = 20,
    config_cap: int = 100_000,
) -> GroundReport:
    """Solve the compiled graph exactly and project onto the data atoms.

    Data atoms are mutually non-adjacent by construction, so the optimum
    decomposes over data clamps: iterate all 2^N clamps, add each auxiliary
    component's precomputed conditional optimum, and keep the argmax set.
    Raw degeneracy is the product-sum of per-component tie counts (exact even
    when configurations are not materialized); configurations themselves are
    listed unless they exceed `config_cap`.
    """
    energies, tables = conditional_energies(cg, max_vars=max_vars)
    n = len(cg.variables)
    data_ids = cg.data_atom_ids
    atom_to_var = {a: j for j, a in enumerate(data_ids)}
    best_energy = int(energies.min())
    optimal_x = [int(i) for i in np.nonzero(energies == best_energy)[0]]
    projections = tuple(index_to_assignment(x, n) for x in optimal_x)

    degeneracy = 0
    configs: list[tuple[int, ...]] | None = []
    for x in optimal_x:
        count = 1
        comp_masks: list[tuple[int, ...]] = []
        for t in tables:
            sub = 0
            for i, port in enumerate(t.port_ids):
                sub |= ((x >> atom_to_var[port]) & 1) << i
            entry = t.entries[sub]
            count *= entry.count
            if configs is not None:
                comp_masks.append(entry.masks())
        degeneracy += count
        if configs is not None:
            if degeneracy > config_cap:
                configs = None
                continue
            data_mask = 0
            for j, a in enumerate(data_ids):
                if (x >> j) & 1:
                    data_mask |= 1 << a
            combos = [data_mask]
            for masks in comp_masks:
                combos = [c | m for c in combos for m in masks]
            configs.extend(search.bits_of(m) for m in combos)

    graph = cg.graph
    free = tuple(
        v
        for v in cg.variables
        if graph.atoms[cg.var_to_atom[v]].weight == 0
        and graph.degree(cg.var_to_atom[v]) == 0
    )
    return GroundReport(
        mwis_weight=-best_energy,
        variables=cg.variables,
        data_projections=projections,
        degeneracy=degeneracy,
        projected_degeneracy=len(projections),
        free_variables=free,
        ground_configs=None if configs is None else tuple(sorted(configs)),
    )


@dataclass(frozen=True)
class EquivalenceCertificate:
    """Outcome of comparing HUBO minima against graph ground projections."""

    equivalent: bool
    variables: tuple[str, ...]
    hubo_minimum: int
    hubo_constant: int
    hubo_minima: tuple[Assignment, ...]
    graph_projections: tuple[Assignment, ...]
    witnesses: tuple[Assignment, ...]  # symmetric difference
    mwis_weight: int
    constant_shift: int
    free_variables: tuple[str, ...] = ()

    @property
    def energy_identity_ok(self) -> bool:
        # Optimal set weight = -(min of the compiled terms + shift); the
        # input constant is carried but never compiled.
        return self.mwis_weight == -(
            self.hubo_minimum - self.hubo_constant + self.constant_shift
        )

    def to_json_dict(self, *, witness_limit: int | None = None) -> dict:
        witnesses = self.witnesses
        if witness_limit is not None:
            witnesses = witnesses[:witness_limit]
        return {
            "equivalent": self.equivalent,
            "variables": list(self.variables),
            "hubo_minimum": self.hubo_minimum,
            "hubo_constant": self.hubo_constant,
            "hubo_minima": [list(a) for a in self.hubo_minima],
            "graph_projections": [list(a) for a in self.graph_projections],
            "witnesses": [list(a) for a in witnesses],
            "witnesses_total": len(self.witnesses),
            "mwis_weight": self.mwis_weight,
            "constant_shift": self.constant_shift,
            "free_variables": list(self.free_variables),
            "energy_identity_ok": self.energy_identity_ok,
        }


def verify_equivalence(
    p: Polynomial,
    cg: CompiledGraph,
    *,
    max_vars: int = 24,
) -> EquivalenceCertificate:
    """Certify that the graph's ground projections equal the polynomial's
    argmin set. Both sides run independently: an exhaustive scan of the
    polynomial against an exact graph solve. Mismatch witnesses are the
    symmetric difference, canonically sorted.
    """
    if tuple(p.names) != tuple(cg.variables):
        raise ValueError(
            "polynomial and compiled graph disagree on variables: "
            f"{p.names} vs {cg.variables}"
        )
    minimum, minima = brute_force_minima(p, max_vars=max_vars)
    report = ground_manifold(cg, max_vars=min(max_vars, 20))
    hubo_set = set(minima)
    graph_set = set(report.data_projections)
    witnesses = tuple(sorted(hubo_set.symmetric_difference(graph_set)))
    return EquivalenceCertificate(
        equivalent=not witnesses,
        variables=p.names,
        hubo_minimum=minimum,
        hubo_constant=p.constant,
        hubo_minima=tuple(sorted(hubo_set)),
        graph_projections=tuple(sorted(graph_set)),
        witnesses=witnesses,
        mwis_weight=report.mwis_weight,
        constant_shift=cg.constant_shift,
        free_variables=report.free_variables,
    )
