"""Residual graph with super substation and residual costs.

Residual edges come in four kinds: the two directions of every original
edge, and the two virtual arcs between each substation and the super
substation. Residual costs are kept as integers scaled by
farm.gamma_scale so that negativity tests are exact and fast.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .model import INF, SUPER, Flow, InstanceError, VertexId, WindFarm, vertex_key

FORWARD = "fwd"
REVERSE = "rev"
TO_SUPER = "to_super"
FROM_SUPER = "from_super"


class ResidualEdge(NamedTuple):
    tail: VertexId
    head: VertexId
    kind: str
    index: int | None  # original edge index for fwd/rev, None for super arcs

    def reversed(self) -> "ResidualEdge":
        opposite = {FORWARD: REVERSE, REVERSE: FORWARD, TO_SUPER: FROM_SUPER, FROM_SUPER: TO_SUPER}
        return ResidualEdge(self.head, self.tail, opposite[self.kind], self.index)


def residual_edges(farm: WindFarm) -> list[ResidualEdge]:
    """All residual edges, sorted by (tail, head) for reproducibility."""
    out: list[ResidualEdge] = []
    for i, e in enumerate(farm.edges):
        out.append(ResidualEdge(e.u, e.v, FORWARD, i))
        out.append(ResidualEdge(e.v, e.u, REVERSE, i))
    for s in farm.substations:
        out.append(ResidualEdge(s, SUPER, TO_SUPER, None))
        out.append(ResidualEdge(SUPER, s, FROM_SUPER, None))
    out.sort(key=lambda r: (vertex_key(r.tail), vertex_key(r.head)))
    return out


def _flow_on(flow: Flow, e: ResidualEdge) -> int:
    """Signed flow on a residual edge, with f(reverse(e)) = -f(e)."""
    if e.kind == FORWARD:
        return flow.edge_flow[e.index]
    if e.kind == REVERSE:
        return -flow.edge_flow[e.index]
    if e.kind == TO_SUPER:
        return flow.sub_inflow[e.tail]
    return -flow.sub_inflow[e.head]


def residual_cost_scaled(farm: WindFarm, flow: Flow, delta: int, e: ResidualEdge) -> int | float:
    """Residual cost gamma(e) times farm.gamma_scale, or INF."""
    if delta < 1:
        raise InstanceError(f"delta must be a positive integer, got {delta!r}")
    if e.kind == TO_SUPER:
        u = e.tail
        return 0 if flow.sub_inflow[u] + delta <= farm.substation_capacity[u] else INF
    if e.kind == FROM_SUPER:
        return 0 if flow.sub_inflow[e.head] >= delta else INF
    f = _flow_on(flow, e)
    if e.tail in farm.substations and e.head in farm.turbines:
        # Sending delta from the substation must only cancel existing inflow.
        if -f < delta:
            return INF
    catalog = farm.catalog
    after = catalog.evaluate_scaled(abs(f + delta))
    if after is INF:
        return INF
    return (after - catalog.evaluate_scaled(abs(f))) * farm.scaled_length[e.index]


def residual_cost(farm: WindFarm, flow: Flow, delta: int, e: ResidualEdge) -> Fraction | float:
    g = residual_cost_scaled(farm, flow, delta, e)
    return g if g is INF else Fraction(g, farm.gamma_scale)


@dataclass
class ResidualView:
    """Residual edge set with gamma for a fixed (flow, delta) pair.

    Immutable once built; vertices include the super substation whenever the
    farm has at least one substation.
    """

    farm: WindFarm
    delta: int
    vertices: list[VertexId]
    edges: list[ResidualEdge]
    gamma_scaled: list[int | float]

    def gamma(self, idx: int) -> Fraction | float:
        g = self.gamma_scaled[idx]
        return g if g is INF else Fraction(g, self.farm.gamma_scale)


def build_residual(farm: WindFarm, flow: Flow, delta: int) -> ResidualView:
    edges = residual_edges(farm)
    gamma = [residual_cost_scaled(farm, flow, delta, e) for e in edges]
    vertices = sorted(farm.vertices + [SUPER], key=vertex_key)
    return ResidualView(farm, delta, vertices, edges, gamma)


def apply_residual_edge(flow: Flow, e: ResidualEdge, delta: int) -> None:
    """Add delta units of flow along a residual edge, in place."""
    if e.kind == FORWARD:
        flow.edge_flow[e.index] += delta
    elif e.kind == REVERSE:
        flow.edge_flow[e.index] -= delta
    elif e.kind == TO_SUPER:
        flow.sub_inflow[e.tail] += delta
    else:
        flow.sub_inflow[e.head] -= delta


def dump_residual_csv(view: ResidualView, path) -> None:
    import csv

    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["u", "v", "gamma"])
        for i, e in enumerate(view.edges):
            g = view.gamma(i)
            writer.writerow([e.tail, e.head, "inf" if g is INF else str(g)])
