"""Bounded-clique superatom expansion and atom-resource estimation.

A native hyperedge gadget is a clique of m mutually blockaded atoms, which
gets physically awkward as m grows. The expansion replaces the clique by a
graph of maximum clique 2 with an identical conditional energy profile up
to one additive constant:

* keep the m member atoms, now pairwise non-adjacent, each rewarded with
  the gadget weight w (so exciting one still pays out w);
* join every pair of members by an even-parity wire — a blockaded atom
  dimer attached to both members — carrying weight w+1. A wire pays w+1
  unless both of its endpoints are excited, so double excitation of members
  forfeits more than it gains and single excitation stays optimal.

Port attachments are unchanged. Member count m plus m*(m-1) wire atoms
gives exactly m^2 atoms (c = 1 in the c*K^2 bound). The unit-weight variant
used by duplication mode replaces each weight-2 wire by two parallel unit
wires: 2*m^2 - m atoms (c = 2).

The profile-equality contract is enforced, not assumed: every expansion is
certified by `verify_expansion` (exact enumeration over all port clamps)
before it is returned.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Iterable, Sequence

from . import search
from .gadgets import (
    KIND_NEG,
    KIND_OFFSET,
    KIND_POS,
    ROLE_DATA,
    GadgetFragment,
    GraphAssembler,
    ROLE_WIRE,
    hyperedge_attachments,
)


class ExpansionError(ValueError):
    """The requested expansion cannot be built or certified."""


@dataclass(frozen=True)
class ExpansionSpec:
    """Expansion request: largest tolerated mutual-blockade clique."""

    max_clique: int = 3
    unit_weights: bool = False

    def __post_init__(self) -> None:
        if self.max_clique < 2:
            raise ExpansionError(
                f"max_clique={self.max_clique} unachievable; wires are atom "
                "dimers, so the smallest achievable clique is 2"
            )


def emit_wired_superatom(
    asm: GraphAssembler,
    port_atom_ids: Sequence[int],
    attachments: Sequence[Sequence[int]],
    weight: int,
    gadget_idx: int | None = None,
    *,
    unit: bool = False,
) -> list[int]:
    """Clique-free superatom replacement; profile equals `emit_superatom`'s
    up to a constant (certified in tests and by expand_superatom)."""
    m = len(attachments)
    members = [
        asm.add_atom(ROLE_WIRE, weight, gadget=gadget_idx)
        for i in range(m)
    ]
    copies = 2 if unit else 1
    wire_weight = 2 * weight if unit else weight + 1
    per_atom = wire_weight // copies
    for i in range(m):
        for j in range(i + 1, m):
            for _ in range(copies):
                a = asm.add_atom(ROLE_WIRE, per_atom, gadget=gadget_idx)
                b = asm.add_atom(ROLE_WIRE, per_atom, gadget=gadget_idx + 1)
                asm.add_edge(a, b)
                asm.add_edge(members[i], a)
                asm.add_edge(b, members[j])
    for i, ports in enumerate(attachments):
        for p in ports:
            asm.add_edge(members[i], port_atom_ids[p])
    return members


def expanded_atom_count(clique_size: int, *, unit: bool = False) -> int:
    m = clique_size
    return 2 * m * m - m if unit else m * m


@dataclass(frozen=True)
class ExpansionCertificate:
    """Outcome of an exact profile comparison between two fragments."""

    equivalent: bool
    constant: int | None
    diffs: tuple[tuple[tuple[int, ...], int, int], ...]  # (clamp, e_orig, e_exp)


def _clamp_energies(frag: GadgetFragment, node_budget: int) -> list[int]:
    adj = frag.graph.neighbor_masks()
    weights = frag.graph.weights()
    aux = [a.id for a in frag.graph.atoms if a.id not in frag.port_atoms]
    k = len(frag.ports)
    out = []
    for key in range(1 << k):
        blocked = 0
        for i, pid in enumerate(frag.port_atoms):
            if key >> i & 1:
                blocked |= adj[pid]
        allowed = [v for v in aux if not (blocked >> v & 1)]
        value = search.max_weight_value(allowed, adj, weights, node_budget=node_budget)
        out.append(-value)
    return out


def verify_expansion(
    original: GadgetFragment,
    expanded: GadgetFragment,
    *,
    node_budget: int = search.DEFAULT_NODE_BUDGET,
) -> ExpansionCertificate:
    """Exact check that two fragments have identical conditional energy
    profiles up to a single additive constant, over all 2^K port clamps."""
    if original.ports != expanded.ports:
        raise ExpansionError(
            f"port mismatch: {original.ports} vs {expanded.ports}"
        )
    e_orig = _clamp_energies(original, node_budget)
    e_exp = _clamp_energies(expanded, node_budget)
    offsets = {b - a for a, b in zip(e_orig, e_exp)}
    if len(offsets) == 1:
        return ExpansionCertificate(True, offsets.pop(), ())
    # Inequivalent: report the full side-by-side profile.
    k = len(original.ports)
    diffs = tuple(
        (tuple((key >> i) & 1 for i in range(k)), e_orig[key], e_exp[key])
        for key in range(1 << k)
    )
    return ExpansionCertificate(False, None, diffs)


def expand_superatom(frag: GadgetFragment, spec: ExpansionSpec) -> GadgetFragment:
    """Expanded equivalent of a hyperedge fragment, certified before return.

    Fragments whose native clique already satisfies the bound are returned
    unchanged. Certification failure raises rather than returning a silently
    wrong construction.
    """
    if frag.kind == KIND_OFFSET:
        raise ExpansionError("offset gadgets have no superatom to expand")
    if frag.clique_size <= spec.max_clique:
        return frag
    if spec.unit_weights and frag.weight != 1:
        raise ExpansionError(
            "unit-weight expansion applies to weight-1 instances; duplicate "
            "the gadget first"
        )
    asm = GraphAssembler()
    port_ids = [asm.add_atom(ROLE_DATA, 0, var=v) for v in frag.ports]
    aux = emit_wired_superatom(
        asm,
        port_ids,
        hyperedge_attachments(frag.kind, frag.order),
        frag.weight,
        0,
        unit=spec.unit_weights,
    )
    out = GadgetFragment(
        kind=frag.kind,
        ports=frag.ports,
        weight=frag.weight,
        graph=asm.build(),
        port_atoms=tuple(port_ids),
        aux_atoms=tuple(aux),
    )
    cert = verify_expansion(frag, out)
    if not cert.equivalent:
        raise ExpansionError(
            f"expansion failed certification on {len(cert.diffs)} clamp(s)"
        )
    return out


# -- resource estimation -----------------------------------------------------

_AUX_PER_GADGET = {KIND_POS: lambda k: k, KIND_NEG: lambda k: k - 1, KIND_OFFSET: lambda k: 1}


@dataclass(frozen=True)
class ResourceEstimate:
    """Exact atom counts for one mode, plus the asymptotic class tag."""

    mode: str
    data_atoms: int
    offset_atoms: int
    gadget_atoms: int
    asymptotic: str

    @property
    def total(self) -> int:
        return self.data_atoms + self.offset_atoms + self.gadget_atoms


def estimate_atoms(
    n_vars: int,
    entries: Iterable[tuple[str, int, int, int]],
    mode: str = "addressing",
) -> ResourceEstimate:
    """Exact atom count of the abstract pipeline for a gadget census.

    `entries` rows are (kind, order, weight, count): `count` gadgets of the
    given kind/order, each of weight `weight`. Local addressing charges the
    auxiliary size once per gadget; duplication charges it `weight` times.
    Matches `assemble()` exactly (without clique expansion). The asymptotic
    tag states the wired complete-hypergraph class rather than a fabricated
    constant.
    """
    offset_atoms = 0
    gadget_atoms = 0
    max_order = 1
    weighted = False
    for kind, order, weight, count in entries:
        if order < 1:
            raise ValueError(f"gadget order must be >= 1, got {order}")
        if kind not in _AUX_PER_GADGET:
            raise ValueError(f"unknown gadget kind {kind!r}")
        aux = _AUX_PER_GADGET[kind](order)
        multiplier = 1 if mode == "addressing" else weight
        atoms = aux * multiplier * count
        if kind == KIND_OFFSET:
            offset_atoms += atoms
        else:
            gadget_atoms += atoms
            max_order = max(max_order, order)
        if weight != 1:
            weighted = True
    if weighted and mode != "addressing":
        asymptotic = f"O(sum_K w_K * N^K), K<={max_order}"
    else:
        asymptotic = f"O(N^{max_order})"
    return ResourceEstimate(
        mode=mode,
        data_atoms=n_vars,
        offset_atoms=offset_atoms,
        gadget_atoms=gadget_atoms,
        asymptotic=asymptotic,
    )


def complete_hypergraph_entries(
    n_vars: int, order: int, *, weight: int = 1
) -> list[tuple[str, int, int, int]]:
    """Census of the complete order-K hypergraph on N vertices."""
    return [(KIND_POS, order, weight, comb(n_vars, order))]
