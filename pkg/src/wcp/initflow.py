"""Feasible initial flows via shortest-path routing.

Eight strategies: {unit metric (BFS) | length metric (Dijkstra)} x
{nearest substation (Any) | farthest substation (Last)} x {collecting or
not}. Turbines are processed in ascending id order for reproducibility.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from fractions import Fraction

from .model import Flow, VertexId, WindFarm, vertex_key


class InitializationError(RuntimeError):
    """No feasible initial flow of finite cost exists (or was found)."""


@dataclass(frozen=True)
class InitStrategy:
    metric: str  # "unit" (BFS) or "length" (Dijkstra)
    target: str  # "any" (nearest) or "last" (farthest)
    collecting: bool

    @property
    def name(self) -> str:
        base = "bfs" if self.metric == "unit" else "dijkstra"
        name = f"{base}-{self.target}"
        return f"collecting-{name}" if self.collecting else name


INIT_STRATEGIES: dict[str, InitStrategy] = {
    s.name: s
    for s in (
        InitStrategy(metric, target, collecting)
        for metric in ("unit", "length")
        for target in ("any", "last")
        for collecting in (False, True)
    )
}


def _edge_usable(farm: WindFarm, flow: Flow, edge_idx: int, tail: VertexId) -> bool:
    """Whether one more unit can be routed over the edge starting at tail."""
    e = farm.edges[edge_idx]
    f = flow.edge_flow[edge_idx]
    if e.u == tail:
        return f + 1 <= farm.catalog.max_capacity
    return f - 1 >= -farm.catalog.max_capacity


def _substation_free(farm: WindFarm, flow: Flow, s: VertexId) -> bool:
    return flow.sub_inflow[s] + 1 <= farm.substation_capacity[s]


def shortest_path_to_substation(
    farm: WindFarm,
    flow: Flow,
    source: VertexId,
    metric: str,
    target: str,
) -> list[VertexId] | None:
    """Shortest uncongested path from a turbine to a free substation.

    target="any" picks the nearest free substation; target="last" the free
    substation whose shortest-path distance is maximal, with the path itself
    shortest to that substation. Interior vertices are turbines only.
    Returns the vertex sequence, or None when no free substation is
    reachable. Ties break lexicographically by vertex id.
    """
    dist: dict[VertexId, Fraction | int] = {source: 0}
    parent: dict[VertexId, VertexId] = {}
    heap = [(0, vertex_key(source), source)]
    done: set[VertexId] = set()
    sub_dist: dict[VertexId, Fraction | int] = {}

    while heap:
        d, _, u = heapq.heappop(heap)
        if u in done:
            continue
        done.add(u)
        if farm.is_substation(u):
            sub_dist[u] = d
            if target == "any":
                break
            continue  # never route through a substation
        for i in farm.incident[u]:
            e = farm.edges[i]
            w = e.v if e.u == u else e.u
            if w in done or not _edge_usable(farm, flow, i, u):
                continue
            if farm.is_substation(w) and not _substation_free(farm, flow, w):
                continue
            step = 1 if metric == "unit" else e.length
            nd = d + step
            if w not in dist or nd < dist[w]:
                dist[w] = nd
                parent[w] = u
                heapq.heappush(heap, (nd, vertex_key(w), w))

    if not sub_dist:
        return None
    if target == "any":
        best = min(sub_dist.items(), key=lambda kv: (kv[1], vertex_key(kv[0])))[0]
    else:
        best = min(sub_dist.items(), key=lambda kv: (-kv[1], vertex_key(kv[0])))[0]
    path = [best]
    while path[-1] != source:
        path.append(parent[path[-1]])
    path.reverse()
    return path


def _route_path(
    farm: WindFarm,
    flow: Flow,
    path: list[VertexId],
    unrouted: set[VertexId],
    collecting: bool,
) -> None:
    """Route production along path; collecting picks up on-path turbines."""
    sub = path[-1]
    n_edges = len(path) - 1
    edge_ids = []
    forward = []  # True when the path follows the stored orientation
    for a, b in zip(path, path[1:]):
        if (a, b) in farm.edge_index:
            edge_ids.append(farm.edge_index[(a, b)])
            forward.append(True)
        else:
            edge_ids.append(farm.edge_index[(b, a)])
            forward.append(False)

    add = [0] * n_edges  # units added on each path edge
    carried_into_sub = 0
    maxcap = farm.catalog.max_capacity
    for pos, v in enumerate(path[:-1]):
        if v not in unrouted:
            continue
        if not collecting and pos > 0:
            continue
        # The unit must fit on every remaining edge and in the substation.
        ok = carried_into_sub + 1 + flow.sub_inflow[sub] <= farm.substation_capacity[sub]
        if ok:
            for j in range(pos, n_edges):
                f = flow.edge_flow[edge_ids[j]]
                signed = add[j] + 1 if forward[j] else -(add[j] + 1)
                if abs(f + signed) > maxcap:
                    ok = False
                    break
        if not ok:
            if pos == 0:
                raise InitializationError(
                    f"path from {path[0]!r} cannot carry its own unit (internal)"
                )
            continue
        for j in range(pos, n_edges):
            add[j] += 1
        carried_into_sub += 1
        unrouted.discard(v)

    for j in range(n_edges):
        if forward[j]:
            flow.edge_flow[edge_ids[j]] += add[j]
        else:
            flow.edge_flow[edge_ids[j]] -= add[j]
    flow.sub_inflow[sub] += carried_into_sub


def initialize(farm: WindFarm, strategy: InitStrategy) -> Flow:
    """Compute a feasible integral initial flow.

    Raises InitializationError when some turbine cannot reach a substation
    with free capacity over uncongested edges.
    """
    flow = Flow.zero(farm)
    unrouted = set(farm.turbines)
    for t in sorted(farm.turbines, key=vertex_key):
        if t not in unrouted:
            continue
        path = shortest_path_to_substation(farm, flow, t, strategy.metric, strategy.target)
        if path is None:
            raise InitializationError(
                f"no feasible initial flow: turbine {t!r} cannot reach a free substation"
            )
        _route_path(farm, flow, path, unrouted, strategy.collecting)
    return flow
