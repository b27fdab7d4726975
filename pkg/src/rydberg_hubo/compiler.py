"""Lower canonical polynomials onto weighted Rydberg atom graphs.

The lowering walks monomial orders from highest down to 2. A positive
coefficient c emits a positive hyperedge of weight c. A negative coefficient
emits a negative hyperedge of weight |c|, which physically realizes its
K-th order term *plus* two unwanted positive (K-1)-order companions; the
compiler therefore debits |c| from those two companion monomials in the
working polynomial before the next order is processed, so later gadgets
compensate exactly. Companion debits can cancel terms or flip their signs;
the cascade terminates because order strictly decreases.

After order 2, each variable's remaining linear coefficient is realized on
its own atom: a non-positive remainder becomes the data atom's detuning
weight, a positive remainder becomes a pendant offset gadget. The compiled
graph's conditional ground energy then equals the input polynomial plus
`constant_shift = -(sum of gadget weights + offset weights)`, exactly.

Weights are realized either by per-atom detuning multipliers (local
addressing) or by replicating unit-weight gadget instances (duplication);
both modes yield the same effective polynomial.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping

import numpy as np

from . import expand as _expand
from .gadgets import (
    KIND_NEG,
    KIND_OFFSET,
    KIND_POS,
    ROLE_DATA,
    ROLE_OFFSET,
    Atom,
    AtomGraph,
    GraphAssembler,
    clamp_tables,
    emit_superatom,
    hyperedge_attachments,
)
from .poly import Polynomial, PolyBuilder

MODE_ADDRESSING = "addressing"
MODE_DUPLICATION = "duplication"
MODES = (MODE_ADDRESSING, MODE_DUPLICATION)

PAIR_RULE_LAST = "last-two"
PAIR_RULE_FIRST = "first-two"
PAIR_RULES = (PAIR_RULE_LAST, PAIR_RULE_FIRST)


class CompileError(ValueError):
    """Lowering or assembly cannot proceed on this input."""


@dataclass(frozen=True)
class GadgetSpec:
    """One planned interaction unit. For negative hyperedges the last two
    ports are the pair; the rest are the prefix."""

    kind: str
    ports: tuple[str, ...]
    weight: int

    @property
    def order(self) -> int:
        return len(self.ports)

    @property
    def clique_size(self) -> int:
        return len(hyperedge_attachments(self.kind, self.order))


@dataclass(frozen=True)
class GadgetPlan:
    variables: tuple[str, ...]
    gadgets: tuple[GadgetSpec, ...]
    data_weights: Mapping[str, int]
    offset_weights: Mapping[str, int]
    constant_shift: int

    def gadget_weight_sum(self) -> int:
        return sum(g.weight for g in self.gadgets)


@dataclass(frozen=True)
class CompiledGraph:
    graph: AtomGraph
    variables: tuple[str, ...]
    var_to_atom: Mapping[str, int]
    mode: str
    constant_shift: int
    plan: GadgetPlan | None = None

    @property
    def data_atom_ids(self) -> tuple[int, ...]:
        return tuple(self.var_to_atom[v] for v in self.variables)


def _select_pair(key: tuple[int, ...], pair_rule: str) -> tuple[tuple[int, ...], tuple[int, ...]]:
    if pair_rule == PAIR_RULE_LAST:
        return key[:-2], key[-2:]
    if pair_rule == PAIR_RULE_FIRST:
        return key[2:], key[:2]
    raise CompileError(f"unknown pair rule {pair_rule!r}; expected one of {PAIR_RULES}")


def lower(p: Polynomial, *, pair_rule: str = PAIR_RULE_LAST) -> GadgetPlan:
    """Synthesize the weighted gadget set realizing `p` (constant excluded).

    Deterministic: orders are processed high to low, monomials in canonical
    index order, and the pair of a negative hyperedge is chosen by
    `pair_rule` over the monomial's canonical variable order.
    """
    if pair_rule not in PAIR_RULES:
        raise CompileError(f"unknown pair rule {pair_rule!r}; expected one of {PAIR_RULES}")
    working: dict[tuple[int, ...], int] = {
        tuple(sorted(key)): coeff for key, coeff in p.terms.items()
    }
    gadgets: list[GadgetSpec] = []
    for order in range(p.max_order(), 1, -1):
        for key in sorted(k for k in working if len(k) == order):
            coeff = working[key]
            if coeff == 0:
                continue
            ports = tuple(p.names[i] for i in key)
            if coeff > 0:
                gadgets.append(GadgetSpec(KIND_POS, ports, coeff))
                continue
            prefix, pair = _select_pair(key, pair_rule)
            weight = -coeff
            gadgets.append(
                GadgetSpec(
                    KIND_NEG,
                    tuple(p.names[i] for i in prefix) + tuple(p.names[i] for i in pair),
                    weight,
                )
            )
            for a in pair:
                companion = tuple(sorted(prefix + (a,)))
                working[companion] = working.get(companion, 0) - weight

    data_weights: dict[str, int] = {}
    offset_weights: dict[str, int] = {}
    for j, name in enumerate(p.names):
        remainder = working.get((j,), 0)
        if remainder <= 0:
            data_weights[name] = -remainder
            offset_weights[name] = 0
        else:
            data_weights[name] = 0
            offset_weights[name] = remainder
    shift = -(sum(g.weight for g in gadgets) + sum(offset_weights.values()))
    return GadgetPlan(
        variables=p.names,
        gadgets=tuple(gadgets),
        data_weights=data_weights,
        offset_weights=offset_weights,
        constant_shift=shift,
    )


def assemble(
    plan: GadgetPlan,
    *,
    mode: str = MODE_ADDRESSING,
    max_clique: int | None = None,
) -> CompiledGraph:
    """Realize a plan as a concrete atom graph.

    Local addressing keeps one instance per gadget with the gadget's weight
    on every auxiliary atom. Duplication replaces each weight-w gadget by w
    unit-weight instances attached to the same ports with no edges between
    instances; data atoms keep their integer weights either way. Passing
    `max_clique` replaces every superatom larger than the bound by its
    wired bounded-clique expansion.
    """
    if mode not in MODES:
        raise CompileError(f"unknown mode {mode!r}; expected one of {MODES}")
    asm = GraphAssembler()
    var_to_atom = {
        name: asm.add_atom(ROLE_DATA, plan.data_weights.get(name, 0), var=name)
        for name in plan.variables
    }
    # Wired expansions add a clamp-independent background (one payout per
    # wire); fold it into the shift so the energy identity stays exact.
    expansion_background = 0
    for gidx, g in enumerate(plan.gadgets):
        port_ids = [var_to_atom[v] for v in g.ports]
        attachments = hyperedge_attachments(g.kind, g.order)
        expandable = max_clique is not None and len(attachments) > max_clique
        if expandable and max_clique < 2:
            raise CompileError(
                f"max_clique={max_clique} is below the smallest achievable clique (2)"
            )
        if mode == MODE_ADDRESSING:
            instances, aux_weight = 1, g.weight
        else:
            instances, aux_weight = g.weight, 1
        for _ in range(instances):
            if expandable:
                _expand.emit_wired_superatom(
                    asm,
                    port_ids,
                    attachments,
                    aux_weight,
                    gidx,
                    unit=(mode == MODE_DUPLICATION),
                )
                m = len(attachments)
                pairs = m * (m - 1) // 2
                expansion_background += pairs * (
                    2 if mode == MODE_DUPLICATION else aux_weight + 1
                )
            else:
                emit_superatom(asm, port_ids, attachments, aux_weight, gidx)
    next_gadget = len(plan.gadgets)
    for name in plan.variables:
        w = plan.offset_weights.get(name, 0)
        if w == 0:
            continue
        if mode == MODE_ADDRESSING:
            instances, aux_weight = 1, w
        else:
            instances, aux_weight = w, 1
        for _ in range(instances):
            aux = asm.add_atom(ROLE_OFFSET, aux_weight, var=name, gadget=next_gadget)
            asm.add_edge(aux, var_to_atom[name])
        next_gadget += 1
    return CompiledGraph(
        graph=asm.build(),
        variables=plan.variables,
        var_to_atom=var_to_atom,
        mode=mode,
        constant_shift=plan.constant_shift - expansion_background,
        plan=plan,
    )


def compile_polynomial(
    p: Polynomial,
    *,
    mode: str = MODE_ADDRESSING,
    pair_rule: str = PAIR_RULE_LAST,
    max_clique: int | None = None,
) -> CompiledGraph:
    return assemble(lower(p, pair_rule=pair_rule), mode=mode, max_clique=max_clique)


def expected_atom_count(plan: GadgetPlan, mode: str) -> int:
    """Closed-form atom count of assemble() without expansion."""
    total = len(plan.variables)
    for g in plan.gadgets:
        aux = len(hyperedge_attachments(g.kind, g.order))
        total += aux if mode == MODE_ADDRESSING else aux * g.weight
    for w in plan.offset_weights.values():
        total += (1 if w else 0) if mode == MODE_ADDRESSING else w
    return total


def conditional_energies(
    cg: CompiledGraph, *, max_vars: int = 20
) -> tuple[np.ndarray, list]:
    """Ground energy (units of detuning) for every data clamp, exactly.

    Returns the 2^N energy array (index bit j = variable j) and the
    per-component clamp tables used to build it.
    """
    n = len(cg.variables)
    if n > max_vars:
        raise CompileError(
            f"{n} data variables exceed the clamp enumeration bound {max_vars}"
        )
    data_ids = cg.data_atom_ids
    tables = clamp_tables(cg.graph, data_ids)
    idx = np.arange(1 << n, dtype=np.int64)
    value = np.zeros(1 << n, dtype=np.int64)
    for j, name in enumerate(cg.variables):
        w = cg.graph.atoms[cg.var_to_atom[name]].weight
        if w:
            value += w * ((idx >> j) & 1)
    atom_to_var = {a: j for j, a in enumerate(data_ids)}
    for t in tables:
        sub = np.zeros(1 << n, dtype=np.int64)
        for i, port in enumerate(t.port_ids):
            sub |= ((idx >> atom_to_var[port]) & 1) << i
        entry_values = np.array([e.value for e in t.entries], dtype=np.int64)
        value += entry_values[sub]
    # Clamps exciting two blockaded data atoms are not independent sets.
    adj = cg.graph.neighbor_masks()
    invalid = np.zeros(1 << n, dtype=bool)
    for j, a in enumerate(data_ids):
        for k, b in enumerate(data_ids):
            if k > j and (adj[a] >> b) & 1:
                invalid |= (((idx >> j) & 1) & ((idx >> k) & 1)).astype(bool)
    energies = -value
    energies[invalid] = np.iinfo(np.int64).max
    return energies, tables


def effective_polynomial(cg: CompiledGraph, *, max_vars: int = 20) -> Polynomial:
    """The unique multilinear polynomial matching the graph's conditional
    ground energies, recovered by a Moebius transform over the subset lattice.

    For a sound compile this equals the source polynomial plus
    `constant_shift`, term for term. Serves as an independent oracle: it
    sees only atoms, weights and blockade edges.
    """
    energies, _ = conditional_energies(cg, max_vars=max_vars)
    if (energies == np.iinfo(np.int64).max).any():
        raise CompileError(
            "data atoms share a blockade edge; the effective polynomial "
            "is undefined on such graphs"
        )
    n = len(cg.variables)
    coeffs = energies.astype(np.int64).copy()
    if n:
        cube = coeffs.reshape([2] * n)
        for axis in range(n):
            hi = [slice(None)] * n
            lo = [slice(None)] * n
            hi[axis] = 1
            lo[axis] = 0
            cube[tuple(hi)] -= cube[tuple(lo)]
        coeffs = cube.reshape(-1)
    b = PolyBuilder()
    for name in cg.variables:
        b.declare(name)
    b.add_constant(int(coeffs[0]))
    for flat in np.nonzero(coeffs)[0]:
        if flat == 0:
            continue
        names = [cg.variables[j] for j in range(n) if (int(flat) >> j) & 1]
        b.add_term(names, int(coeffs[flat]))
    return b.build()


# -- serialization ----------------------------------------------------------

def graph_to_json_dict(cg: CompiledGraph) -> dict:
    atoms = []
    for a in cg.graph.atoms:
        row: dict = {"id": a.id, "role": a.role, "weight": a.weight}
        if a.var is not None:
            row["var"] = a.var
        if a.gadget is not None:
            row["gadget"] = a.gadget
        atoms.append(row)
    return {
        "atoms": atoms,
        "edges": sorted([a, b] for a, b in cg.graph.edges),
        "mode": cg.mode,
        "constant_shift": cg.constant_shift,
    }


def graph_from_json_dict(d: Mapping) -> CompiledGraph:
    atoms = tuple(
        Atom(
            id=int(row["id"]),
            role=str(row["role"]),
            weight=int(row["weight"]),
            var=row.get("var"),
            gadget=row.get("gadget"),
        )
        for row in sorted(d["atoms"], key=lambda r: r["id"])
    )
    edges = frozenset((min(a, b), max(a, b)) for a, b in d["edges"])
    graph = AtomGraph(atoms, edges)
    data = [(a.var, a.id) for a in atoms if a.role == ROLE_DATA]
    variables = tuple(v for v, _ in data)
    if len(set(variables)) != len(variables):
        raise CompileError("duplicate data variables in graph JSON")
    return CompiledGraph(
        graph=graph,
        variables=variables,
        var_to_atom={v: i for v, i in data},
        mode=str(d.get("mode", MODE_ADDRESSING)),
        constant_shift=int(d.get("constant_shift", 0)),
        plan=None,
    )


def dump_graph_json(cg: CompiledGraph) -> str:
    return json.dumps(graph_to_json_dict(cg), indent=2, sort_keys=True) + "\n"


def load_graph_json(path: str | Path) -> CompiledGraph:
    with open(path, "r", encoding="utf-8") as fh:
        return graph_from_json_dict(json.load(fh))


_DOT_COLORS = (
    "#66c2a5", "#fc8d62", "#8da0cb", "#e78ac3", "#a6d854",
    "#ffd92f", "#e5c494", "#b3b3b3",
)


def to_dot(cg: CompiledGraph) -> str:
    """Graphviz rendering: data atoms as boxes, auxiliaries as circles
    colored by owning gadget."""
    lines = ["graph rydberg_hubo {", "  node [fontsize=10];"]
    for a in cg.graph.atoms:
        if a.role == ROLE_DATA:
            lines.append(
                f'  a{a.id} [shape=box, label="{a.var} w={a.weight}"];'
            )
        else:
            color = _DOT_COLORS[(a.gadget or 0) % len(_DOT_COLORS)]
            tag = f"g{a.gadget}" if a.gadget is not None else a.role
            lines.append(
                f'  a{a.id} [shape=circle, style=filled, fillcolor="{color}", '
                f'label="{tag} w={a.weight}"];'
            )
    for a, b in sorted(cg.graph.edges):
        lines.append(f"  a{a} -- a{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def plan_resource_entries(plan: GadgetPlan) -> list[tuple[str, int, int, int]]:
    """(kind, order, weight, count) rows for the resource estimator."""
    rows = [(g.kind, g.order, g.weight, 1) for g in plan.gadgets]
    rows.extend(
        (KIND_OFFSET, 1, w, 1) for w in plan.offset_weights.values() if w
    )
    return rows
