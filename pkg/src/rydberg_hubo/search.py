"""Exact maximum-weight independent set search over bitmask-encoded graphs.

Vertices are integers; adjacency is a list of neighbor bitmasks indexed by
vertex id. All routines are pure and return canonically sorted results, so
callers can rely on byte-identical output for identical input.

Two engines are provided: an exhaustive subset-lattice sweep for small
vertex sets, and a branch-and-bound search (greedy-degeneracy branching
order, weight-sum upper bound) for larger ones. Both enumerate the complete
family of optimal sets; ties are never discarded.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from typing import Iterable, Sequence


class NodeBudgetExceeded(RuntimeError):
    """Branch-and-bound exceeded its node budget; result would be partial."""


EXHAUSTIVE_CAP = 20          # max component size for the subset-lattice sweep
DEFAULT_NODE_BUDGET = 5_000_000


def neighbor_masks(n_vertices: int, edges: Iterable[tuple[int, int]]) -> list[int]:
    """Adjacency bitmasks from an edge list; ignores nothing, rejects self-loops."""
    adj = [0] * n_vertices
    for a, b in edges:
        if a == b:
            raise ValueError(f"self-loop on vertex {a}")
        adj[a] |= 1 << b
        adj[b] |= 1 << a
    return adj


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def bits_of(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return tuple(out)


def connected_components(vertices: Sequence[int], adj: Sequence[int]) -> list[list[int]]:
    """Components of the induced subgraph on `vertices`, each sorted, in id order."""
    allowed = mask_of(vertices)
    seen = 0
    comps = []
    for v in sorted(vertices):
        if seen >> v & 1:
            continue
        frontier = 1 << v
        comp = 0
        while frontier:
            comp |= frontier
            nxt = 0
            m = frontier
            while m:
                low = m & -m
                nxt |= adj[low.bit_length() - 1]
                m ^= low
            frontier = nxt & allowed & ~comp
        seen |= comp
        comps.append(list(bits_of(comp)))
    return comps


@dataclass(frozen=True)
class OptimaSet:
    """Optimal weight plus every independent set (as a bitmask) achieving it."""

    weight: int
    masks: tuple[int, ...]

    @property
    def count(self) -> int:
        return len(self.masks)


def _local_adjacency(verts: Sequence[int], adj: Sequence[int]) -> list[int]:
    pos = {v: i for i, v in enumerate(verts)}
    local = []
    for v in verts:
        m = 0
        nb = adj[v]
        while nb:
            low = nb & -nb
            u = low.bit_length() - 1
            nb ^= low
            if u in pos:
                m |= 1 << pos[u]
        local.append(m)
    return local


def _exhaustive(verts: Sequence[int], adj: Sequence[int], weights: Sequence[int]) -> OptimaSet:
    # DP over the subset lattice: indep[m] extends indep[m \ lowbit].
    k = len(verts)
    ladj = _local_adjacency(verts, adj)
    w = [weights[v] for v in verts]
    size = 1 << k
    indep = bytearray(size)
    indep[0] = 1
    total = [0] * size
    best = 0
    best_masks = [0]
    for m in range(1, size):
        low = m & -m
        i = low.bit_length() - 1
        rest = m ^ low
        if indep[rest] and not (ladj[i] & rest):
            indep[m] = 1
            t = total[rest] + w[i]
            total[m] = t
            if t > best:
                best = t
                best_masks = [m]
            elif t == best:
                best_masks.append(m)
    globalized = []
    for m in best_masks:
        g = 0
        while m:
            low = m & -m
            g |= 1 << verts[low.bit_length() - 1]
            m ^= low
        globalized.append(g)
    return OptimaSet(best, tuple(sorted(globalized)))


def _degeneracy_order(verts: Sequence[int], adj: Sequence[int]) -> list[int]:
    # Repeated min-degree removal; branching processes the dense core first.
    remaining = set(verts)
    removal = []
    while remaining:
        rem_mask = mask_of(remaining)
        v = min(remaining, key=lambda u: ((adj[u] & rem_mask).bit_count(), u))
        removal.append(v)
        remaining.remove(v)
    return removal[::-1]


def _branch_and_bound(
    verts: Sequence[int],
    adj: Sequence[int],
    weights: Sequence[int],
    node_budget: int,
    collect_all: bool,
) -> OptimaSet:
    order = _degeneracy_order(verts, adj)
    full = mask_of(verts)

    # Greedy seed sharpens the bound; with collect_all the seed set itself is
    # revisited as a leaf, so ties are still collected completely.
    greedy_w = 0
    used = 0
    for v in order:
        if not (used >> v & 1):
            greedy_w += weights[v]
            used |= adj[v] | (1 << v)

    best = greedy_w if not collect_all else -1
    found: list[int] = []
    nodes = 0
    total_w = sum(weights[v] for v in verts)
    if len(verts) * 2 + 200 > sys.getrecursionlimit():
        sys.setrecursionlimit(len(verts) * 2 + 500)

    def rec(remaining: int, cur_w: int, cur_set: int, rem_w: int) -> None:
        nonlocal best, found, nodes
        nodes += 1
        if nodes > node_budget:
            raise NodeBudgetExceeded(
                f"independent-set search exceeded {node_budget} nodes; "
                "raise node_budget for an exact answer"
            )
        if cur_w + rem_w < best:
            return
        if not collect_all and cur_w + rem_w == best and remaining:
            # Equality cannot improve a weight-only search.
            return
        if not remaining:
            if cur_w > best:
                best = cur_w
                found = [cur_set]
            elif cur_w == best and collect_all:
                found.append(cur_set)
            return
        v = next(u for u in order if remaining >> u & 1)
        vbit = 1 << v
        # Include v.
        removed = (adj[v] | vbit) & remaining
        removed_w = sum(weights[u] for u in bits_of(removed))
        rec(remaining & ~removed, cur_w + weights[v], cur_set | vbit, rem_w - removed_w)
        # Exclude v — pointless when v is isolated with positive weight, since
        # adding it then strictly improves any set.
        if weights[v] == 0 or (adj[v] & remaining & ~vbit):
            rec(remaining & ~vbit, cur_w, cur_set, rem_w - weights[v])

    rec(full, 0, 0, total_w)
    # Weight-only searches may finish with no recorded leaf (the greedy seed
    # was already optimal); `best` is exact either way and masks are unused.
    return OptimaSet(best, tuple(sorted(found)))


def component_optima(
    vertices: Sequence[int],
    adj: Sequence[int],
    weights: Sequence[int],
    *,
    exhaustive_cap: int = EXHAUSTIVE_CAP,
    node_budget: int = DEFAULT_NODE_BUDGET,
    collect_all: bool = True,
) -> list[OptimaSet]:
    """Solve MWIS exactly on each connected component of the induced subgraph.

    Returns one OptimaSet per component, in component id order. The global
    optimum is the sum of weights; the global family is the cartesian product
    of the per-component families (see `combine_optima`).
    """
    out = []
    for comp in connected_components(vertices, adj):
        if len(comp) <= exhaustive_cap:
            out.append(_exhaustive(comp, adj, weights))
        else:
            out.append(_branch_and_bound(comp, adj, weights, node_budget, collect_all))
    return out


def combine_optima(parts: Sequence[OptimaSet], *, limit: int | None = None) -> OptimaSet:
    """Cartesian product of per-component optima into one global family."""
    weight = sum(p.weight for p in parts)
    count = 1
    for p in parts:
        count *= p.count
    if limit is not None and count > limit:
        raise ValueError(
            f"{count} optimal configurations exceed the materialization limit {limit}"
        )
    masks = [0]
    for p in parts:
        masks = [m | pm for m in masks for pm in p.masks]
    return OptimaSet(weight, tuple(sorted(masks)))


def optima_count(parts: Sequence[OptimaSet]) -> int:
    count = 1
    for p in parts:
        count *= p.count
    return count


def max_weight_value(
    vertices: Sequence[int],
    adj: Sequence[int],
    weights: Sequence[int],
    *,
    exhaustive_cap: int = EXHAUSTIVE_CAP,
    node_budget: int = DEFAULT_NODE_BUDGET,
) -> int:
    """Optimal weight only; skips tie collection for speed on larger fragments."""
    total = 0
    for comp in connected_components(vertices, adj):
        if len(comp) <= exhaustive_cap:
            total += _exhaustive(comp, adj, weights).weight
        else:
            total += _branch_and_bound(comp, adj, weights, node_budget, False).weight
    return total
