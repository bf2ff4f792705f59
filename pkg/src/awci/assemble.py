"""From enumerated interval pairs to maximal closed interval sets.

Pairs become an undirected graph (vertices are intervals, edges are reported
pairs). Vertices that cannot reach the quorum are dropped, dominated
representatives may be pruned, maximal cliques are enumerated per connected
component, and each clique is tested for closedness; non-closed cliques are
probed for closed sub-cliques within a bounded descent. Reported sets are
those closed sets not contained in another reported closed set.
"""
from __future__ import annotations

import logging
from itertools import combinations
from typing import Iterable, Sequence

from .model import AnchoredInterval, Dataset, ResourceLimitError, SearchParams
from .oracle import AwciPair, AwciSet, is_closed_set

log = logging.getLogger(__name__)


class AwciGraph:
    """Deduplicated interval vertices plus pair edges, string-partitioned."""

    def __init__(self, dataset: Dataset, vertices: Sequence[AnchoredInterval],
                 edges: Iterable[tuple[int, int]]) -> None:
        self.dataset = dataset
        self.vertices = list(vertices)
        self.adj: list[set[int]] = [set() for _ in self.vertices]
        for u, v in edges:
            self.adj[u].add(v)
            self.adj[v].add(u)

    def string_of(self, v: int) -> int:
        return self.dataset.index_of(self.vertices[v].string_id)

    def neighbor_strings(self, v: int) -> set[int]:
        return {self.string_of(u) for u in self.adj[v]}

    def subgraph(self, keep: set[int]) -> "AwciGraph":
        kept = sorted(keep)
        remap = {v: k for k, v in enumerate(kept)}
        edges = [(remap[u], remap[v]) for u in kept for v in self.adj[u]
                 if v in keep and u < v]
        return AwciGraph(self.dataset, [self.vertices[v] for v in kept], edges)

    def __len__(self) -> int:
        return len(self.vertices)


def build_graph(pairs: Iterable[AwciPair], dataset: Dataset,
                params: SearchParams) -> AwciGraph:
    """Build the pair graph, iteratively dropping quorum-infeasible vertices.

    A vertex whose neighbors span fewer than quorum-1 other strings cannot be
    in any reported set; removal repeats until a fixpoint.
    """
    vertex_ids: dict[AnchoredInterval, int] = {}
    vertices: list[AnchoredInterval] = []
    edges: list[tuple[int, int]] = []
    for p in pairs:
        uv = []
        for iv in (p.left, p.right):
            idx = vertex_ids.get(iv)
            if idx is None:
                idx = len(vertices)
                vertex_ids[iv] = idx
                vertices.append(iv)
            uv.append(idx)
        edges.append((uv[0], uv[1]))

    graph = AwciGraph(dataset, vertices, edges)
    keep = set(range(len(graph)))
    changed = True
    while changed:
        changed = False
        for v in sorted(keep):
            spans = {graph.string_of(u) for u in graph.adj[v] if u in keep}
            if len(spans) < params.quorum - 1:
                keep.discard(v)
                changed = True
    if len(keep) != len(graph):
        graph = graph.subgraph(keep)
    return graph


def _extension_positions_sharing(graph: AwciGraph, v: int, side: range) -> int:
    """Count positions in `side` intersecting every neighbor's character set."""
    s = graph.dataset.string_of(graph.vertices[v])
    neighbor_sets = [graph.dataset.string_of(graph.vertices[u]).char_set(
        graph.vertices[u].i, graph.vertices[u].j) for u in sorted(graph.adj[v])]
    count = 0
    for p in side:
        pset = s.at(p)
        if neighbor_sets and all(pset & cs for cs in neighbor_sets):
            count += 1
    return count


def prune_dominated_vertices(graph: AwciGraph) -> AwciGraph:
    """Drop vertices dominated by a strict superinterval on the same string.

    A vertex v is discardable when some vertex u on the same string strictly
    contains its interval, u is adjacent to every neighbor of v, at most one
    extension position per side shares characters with all of v's neighbors,
    and a position immediately adjacent to v's interval does so (which makes
    any set containing v non-closed, so dropping v cannot change the output).
    """
    by_string: dict[str, list[int]] = {}
    for v, iv in enumerate(graph.vertices):
        by_string.setdefault(iv.string_id, []).append(v)

    discard: set[int] = set()
    for v, iv in enumerate(graph.vertices):
        if not graph.adj[v]:
            continue
        s = graph.dataset.string_of(iv)
        neighbor_sets = [graph.dataset.string_of(graph.vertices[u]).char_set(
            graph.vertices[u].i, graph.vertices[u].j)
            for u in sorted(graph.adj[v])]

        def shares_all(p: int) -> bool:
            pset = s.at(p)
            return all(pset & cs for cs in neighbor_sets)

        for u in by_string[iv.string_id]:
            ju = graph.vertices[u]
            if (ju.i, ju.j) == (iv.i, iv.j) or not (ju.i <= iv.i and iv.j <= ju.j):
                continue
            if not graph.adj[v] <= graph.adj[u]:
                continue
            left_ext = [p for p in range(ju.i, iv.i) if shares_all(p)]
            right_ext = [p for p in range(iv.j + 1, ju.j + 1) if shares_all(p)]
            if len(left_ext) > 1 or len(right_ext) > 1:
                continue
            if (iv.i - 1 in left_ext) or (iv.j + 1 in right_ext):
                discard.add(v)
                break
    if not discard:
        return graph
    return graph.subgraph(set(range(len(graph))) - discard)


def _maximal_cliques(graph: AwciGraph, guard: int) -> list[tuple[int, ...]]:
    """Pivoted Bron-Kerbosch in deterministic vertex order."""
    out: list[tuple[int, ...]] = []
    steps = 0

    def expand(r: list[int], p: set[int], x: set[int]) -> None:
        nonlocal steps
        steps += 1
        if steps > guard:
            raise ResourceLimitError(
                f"maximal clique enumeration exceeded {guard} steps "
                f"(component of {graph.vertices[r[0]] if r else '?'})")
        if not p and not x:
            if r:
                out.append(tuple(sorted(r)))
            return
        pivot = max(p | x, key=lambda v: (len(graph.adj[v] & p), -v))
        for v in sorted(p - graph.adj[pivot]):
            expand(r + [v], p & graph.adj[v], x & graph.adj[v])
            p.discard(v)
            x.add(v)

    expand([], set(range(len(graph))), set())
    return out


def maximal_closed_sets(graph: AwciGraph, params: SearchParams, *,
                        descent_budget: int = 2,
                        clique_guard: int = 2_000_000) -> list[AwciSet]:
    """Enumerate closed interval sets that are maximal among closed sets.

    Each maximal clique spanning at least `quorum` strings is tested for
    closedness; non-closed cliques are probed for closed sub-cliques missing
    at most `descent_budget` members. Finally any closed set contained in a
    larger collected closed set is dropped.
    """
    dataset = graph.dataset
    delta = params.delta
    candidates: set[tuple[int, ...]] = set()
    for clique in _maximal_cliques(graph, clique_guard):
        if len(clique) < params.quorum:
            continue
        members = [graph.vertices[v] for v in clique]
        if is_closed_set(dataset, members, delta):
            candidates.add(clique)
            continue
        if len(clique) - params.quorum > descent_budget:
            log.warning(
                "non-closed clique of size %d exceeds descent budget %d; "
                "closed sub-cliques missing more than %d members are not probed",
                len(clique), descent_budget, descent_budget)
        max_drop = min(descent_budget, len(clique) - params.quorum)
        for drop in range(1, max_drop + 1):
            for sub in combinations(clique, len(clique) - drop):
                if is_closed_set(dataset, [graph.vertices[v] for v in sub], delta):
                    candidates.add(sub)

    ordered = sorted(candidates)
    closed_sets = [frozenset(c) for c in ordered]
    results = []
    for c, cset in zip(ordered, closed_sets):
        if any(cset < other for other in closed_sets):
            continue
        members = tuple(sorted((graph.vertices[v] for v in c),
                               key=dataset.sort_key))
        results.append(AwciSet(members=members, closed=True))
    results.sort(key=lambda s: tuple(dataset.sort_key(m) for m in s.members))
    return results


def assemble(pairs: Iterable[AwciPair], dataset: Dataset, params: SearchParams, *,
             prune: bool = True, descent_budget: int = 2,
             verify: bool = False) -> list[AwciSet]:
    """Full pipeline from a pair stream to reported maximal closed sets."""
    graph = build_graph(pairs, dataset, params)
    if prune:
        graph = prune_dominated_vertices(graph)
    sets = maximal_closed_sets(graph, params, descent_budget=descent_budget)
    if verify:
        from .oracle import is_awci_set
        for s in sets:
            assert is_awci_set(dataset, s.members, params.delta)
            assert is_closed_set(dataset, s.members, params.delta)
    return sets
