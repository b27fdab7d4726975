"""Atom-level gadget constructions and their exact conditional energy profiles.

Atoms live on a blockade graph: an edge means the two atoms can never be
simultaneously excited. A *superatom* is a clique of auxiliary atoms, so at
most one member can excite. Attaching each member to a data atom turns the
clique into a hyperedge gadget:

* positive hyperedge, order K: a K-atom superatom, member i blockaded by
  data atom i. Some member can excite (energy -w per unit detuning) unless
  every port is 1 — realizing +w * prod(n_i) up to the constant -w.
* negative hyperedge, order K: a (K-1)-atom superatom; members 1..K-2 are
  blockaded by the prefix ports, the last member by BOTH pair ports. The
  superatom is fully blocked iff all prefix ports are 1 and at least one
  pair port is 1 — realizing w * prod(prefix) * (a + b - ab) - w.
* offset, order 1: a single pendant atom blockaded by its port — w*n - w.

Profiles are computed by exact enumeration of independent auxiliary sets,
conditioned on clamped ports; energies are integers in units of the base
detuning (non-positive by construction).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from . import search
from .poly import Assignment

ROLE_DATA = "data"
ROLE_OFFSET = "offset"
ROLE_WIRE = "wire"

KIND_POS = "pos"
KIND_NEG = "neg"
KIND_OFFSET = "offset"


@dataclass(frozen=True)
class Atom:
    id: int
    role: str
    weight: int
    var: str | None = None
    gadget: int | None = None


@dataclass(frozen=True)
class AtomGraph:
    """Weighted blockade graph: atoms plus unordered adjacency pairs."""

    atoms: tuple[Atom, ...]
    edges: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        ids = [a.id for a in self.atoms]
        if ids != list(range(len(ids))):
            raise ValueError("atom ids must be dense and ordered from 0")
        for a, b in self.edges:
            if a == b:
                raise ValueError(f"self-loop on atom {a}")
            if not (0 <= a < len(ids)) or not (0 <= b < len(ids)):
                raise ValueError(f"edge ({a},{b}) references a missing atom")
            if a > b:
                raise ValueError("edges must be stored as (low, high) pairs")

    @property
    def n_atoms(self) -> int:
        return len(self.atoms)

    def weights(self) -> list[int]:
        return [a.weight for a in self.atoms]

    def neighbor_masks(self) -> list[int]:
        return search.neighbor_masks(self.n_atoms, self.edges)

    def degree(self, atom_id: int) -> int:
        return sum(1 for e in self.edges if atom_id in e)


class GraphAssembler:
    """Mutable builder for AtomGraph; ids are allocated densely."""

    def __init__(self) -> None:
        self._atoms: list[Atom] = []
        self._edges: set[tuple[int, int]] = set()

    def add_atom(
        self,
        role: str,
        weight: int,
        *,
        var: str | None = None,
        gadget: int | None = None,
    ) -> int:
        if weight < 0:
            raise ValueError("atom weights must be non-negative")
        if role != ROLE_DATA and weight < 1:
            raise ValueError("auxiliary atoms must carry weight >= 1")
        atom = Atom(len(self._atoms), role, weight, var=var, gadget=gadget)
        self._atoms.append(atom)
        return atom.id

    def add_edge(self, a: int, b: int) -> None:
        if a == b:
            raise ValueError("self-loop")
        self._edges.add((min(a, b), max(a, b)))

    def build(self) -> AtomGraph:
        return AtomGraph(tuple(self._atoms), frozenset(self._edges))


def emit_superatom(
    asm: GraphAssembler,
    port_atom_ids: Sequence[int],
    attachments: Sequence[Sequence[int]],
    weight: int,
    gadget_idx: int | None = None,
) -> list[int]:
    """Clique of len(attachments) aux atoms; member i blockades ports attachments[i]."""
    aux = [
        asm.add_atom(ROLE_WIRE, weight, gadget=gadget_idx)
        for i in range(len(attachments))
    ]
    for i in range(len(aux)):
        for j in range(i + 1, len(aux)):
            asm.add_edge(aux[i], aux[j])
    for i, ports in enumerate(attachments):
        for p in ports:
            asm.add_edge(aux[i], port_atom_ids[p])
    return aux


def hyperedge_attachments(kind: str, order: int) -> list[list[int]]:
    """Port-attachment pattern of a native hyperedge gadget of given order."""
    if order < 2:
        raise ValueError("hyperedge gadgets require order >= 2")
    if kind == KIND_POS:
        return [[i] for i in range(order)]
    if kind == KIND_NEG:
        return [[i] for i in range(order - 2)] + [[order - 2, order - 1]]
    raise ValueError(f"unknown hyperedge kind {kind!r}")


@dataclass(frozen=True)
class GadgetFragment:
    """A single gadget together with its (weight-0) port data atoms."""

    kind: str
    ports: tuple[str, ...]
    weight: int
    graph: AtomGraph
    port_atoms: tuple[int, ...]
    aux_atoms: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.ports)

    @property
    def prefix(self) -> tuple[str, ...]:
        if self.kind != KIND_NEG:
            raise ValueError("prefix is defined for negative hyperedges only")
        return self.ports[:-2]

    @property
    def pair(self) -> tuple[str, str]:
        if self.kind != KIND_NEG:
            raise ValueError("pair is defined for negative hyperedges only")
        return (self.ports[-2], self.ports[-1])

    @property
    def clique_size(self) -> int:
        return len(self.aux_atoms)


def _fragment(kind: str, ports: Sequence[str], weight: int) -> GadgetFragment:
    asm = GraphAssembler()
    port_ids = [asm.add_atom(ROLE_DATA, 0, var=v) for v in ports]
    if kind == KIND_OFFSET:
        aux = [asm.add_atom(ROLE_OFFSET, weight, var=ports[0], gadget=0)]
        asm.add_edge(aux[0], port_ids[0])
    else:
        aux = emit_superatom(asm, port_ids, hyperedge_attachments(kind, len(ports)), weight, 0)
    return GadgetFragment(
        kind=kind,
        ports=tuple(ports),
        weight=weight,
        graph=asm.build(),
        port_atoms=tuple(port_ids),
        aux_atoms=tuple(aux),
    )


def _check_ports(ports: Sequence[str], minimum: int) -> None:
    if len(ports) < minimum:
        raise ValueError(f"need at least {minimum} ports, got {len(ports)}")
    if len(set(ports)) != len(ports):
        raise ValueError(f"duplicate ports in {tuple(ports)!r}")


def positive_hyperedge(ports: Sequence[str], weight: int) -> GadgetFragment:
    """K-atom superatom realizing +weight * prod(ports), constant -weight."""
    _check_ports(ports, 2)
    if weight < 1:
        raise ValueError("gadget weight must be >= 1")
    return _fragment(KIND_POS, ports, weight)


def negative_hyperedge(prefix: Sequence[str], pair: Sequence[str], weight: int) -> GadgetFragment:
    """(K-1)-atom superatom realizing -weight * prod(all ports) plus the two
    (K-1)-order companions weight*prod(prefix+{a}) and weight*prod(prefix+{b})."""
    if len(pair) != 2:
        raise ValueError("negative hyperedge needs exactly two pair ports")
    ports = tuple(prefix) + tuple(pair)
    _check_ports(ports, 2)
    if weight < 1:
        raise ValueError("gadget weight must be >= 1")
    return _fragment(KIND_NEG, ports, weight)


def offset_gadget(port: str, weight: int) -> GadgetFragment:
    """Pendant atom realizing +weight * n_port - weight."""
    if weight < 1:
        raise ValueError("offset weight must be >= 1")
    return _fragment(KIND_OFFSET, [port], weight)


@dataclass(frozen=True)
class ClampOptima:
    """Conditional optimum of one auxiliary component under one port clamp."""

    value: int
    parts: tuple[search.OptimaSet, ...]

    @property
    def count(self) -> int:
        return search.optima_count(self.parts)

    def masks(self, *, limit: int | None = None) -> tuple[int, ...]:
        return search.combine_optima(self.parts, limit=limit).masks


@dataclass(frozen=True)
class ComponentTable:
    """All 2^p conditional optima of one auxiliary component, indexed by the
    excitation pattern of its adjacent clamp atoms (bit i = port_ids[i])."""

    aux_ids: tuple[int, ...]
    port_ids: tuple[int, ...]
    entries: tuple[ClampOptima, ...]


def clamp_tables(
    graph: AtomGraph,
    clamp_atom_ids: Sequence[int],
    *,
    exhaustive_cap: int = search.EXHAUSTIVE_CAP,
    node_budget: int = search.DEFAULT_NODE_BUDGET,
) -> list[ComponentTable]:
    """Exact conditional optima of every auxiliary component for every clamp.

    Atoms in `clamp_atom_ids` are treated as externally fixed; the remaining
    atoms split into connected components, each of which interacts with the
    clamp only through its adjacent clamp atoms (its ports). Entry k of a
    component's table is the optimal independent-set family of the component
    when exactly the ports flagged in k are excited (excited ports blockade
    their auxiliary neighbors).
    """
    clamp_set = set(clamp_atom_ids)
    adj = graph.neighbor_masks()
    weights = graph.weights()
    aux = [a.id for a in graph.atoms if a.id not in clamp_set]
    tables = []
    for comp in search.connected_components(aux, adj):
        comp_mask = search.mask_of(comp)
        ports = sorted(
            c for c in clamp_set if adj[c] & comp_mask
        )
        entries = []
        for key in range(1 << len(ports)):
            excited = [p for i, p in enumerate(ports) if key >> i & 1]
            blocked = 0
            for p in excited:
                blocked |= adj[p]
            allowed = [v for v in comp if not (blocked >> v & 1)]
            parts = tuple(
                search.component_optima(
                    allowed,
                    adj,
                    weights,
                    exhaustive_cap=exhaustive_cap,
                    node_budget=node_budget,
                )
            )
            value = sum(p.weight for p in parts)
            entries.append(ClampOptima(value, parts))
        tables.append(ComponentTable(tuple(comp), tuple(ports), tuple(entries)))
    return tables


@dataclass(frozen=True)
class ProfileEntry:
    """Conditional ground energy (units of the base detuning, <= 0) and the
    complete set of optimal auxiliary configurations for one port clamp."""

    energy: int
    aux_configs: tuple[frozenset[int], ...]


def profile_entry(frag: GadgetFragment, clamp: Assignment) -> ProfileEntry:
    if len(clamp) != len(frag.ports):
        raise ValueError(
            f"clamp length {len(clamp)} != port count {len(frag.ports)}"
        )
    return energy_profile(frag)[tuple(clamp)]


def energy_profile(frag: GadgetFragment) -> dict[Assignment, ProfileEntry]:
    """Exact conditional profile over all 2^K port clamps.

    The energy at clamp x is minus the optimal total weight of independent
    auxiliary sets compatible with x; every optimal configuration is listed
    (these are the superposition supports of the degenerate ground manifold).
    """
    tables = clamp_tables(frag.graph, frag.port_atoms)
    k = len(frag.ports)
    out: dict[Assignment, ProfileEntry] = {}
    for key in range(1 << k):
        clamp = tuple((key >> i) & 1 for i in range(k))
        value = 0
        mask_parts = []
        for t in tables:
            sub = 0
            for i, p in enumerate(t.port_ids):
                pos = frag.port_atoms.index(p)
                sub |= ((key >> pos) & 1) << i
            entry = t.entries[sub]
            value += entry.value
            mask_parts.append(entry.masks())
        combos = [0]
        for masks in mask_parts:
            combos = [c | m for c in combos for m in masks]
        configs = tuple(
            frozenset(search.bits_of(m)) for m in sorted(combos)
        )
        out[clamp] = ProfileEntry(energy=-value, aux_configs=configs)
    return out
