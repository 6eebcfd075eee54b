"""Exact optimum for tiny instances by pruned exhaustive enumeration.

Enumerates integral edge flows, keeps the feasible ones, and prices each
by the cheapest adequate cable per edge. This is a deliberately separate
code path from the solver's cost bookkeeping so the two can cross-check
each other.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .model import Flow, InstanceError, VertexId, WindFarm, net_flow, vertex_key


class OracleCapError(InstanceError):
    """Instance exceeds the configured enumeration caps."""


@dataclass
class OracleResult:
    feasible: bool
    cost: Fraction | None
    flow: Flow | None
    selection: list[int | None] | None  # cable index per edge, None = no cable
    proved_optimal: bool = True


def oracle_cost_of(farm: WindFarm, flow: Flow) -> Fraction | float:
    """Independent total-cost evaluator: cheapest adequate cable per edge.

    Scans the catalog linearly instead of reusing CostFunction.evaluate.
    """
    total = Fraction(0)
    for i, e in enumerate(farm.edges):
        mag = abs(flow.edge_flow[i])
        if mag == 0:
            continue
        chosen = None
        for cable in farm.catalog.steps:
            if cable.capacity >= mag:
                if chosen is None or cable.cost_per_length < chosen.cost_per_length:
                    chosen = cable
        if chosen is None:
            return float("inf")
        total += chosen.cost_per_length * e.length
    return total


def _edge_order(farm: WindFarm) -> list[int]:
    """Order edges so vertices close early, tightening conservation bounds."""
    order: list[int] = []
    placed: set[int] = set()
    for v in sorted(farm.vertices, key=vertex_key):
        for i in sorted(farm.incident[v]):
            if i not in placed:
                placed.add(i)
                order.append(i)
    return order


def oracle_optimum(
    farm: WindFarm, max_turbines: int = 7, max_edges: int = 12
) -> OracleResult:
    """Globally minimal feasible flow, or an infeasible verdict.

    Refuses instances over the caps rather than silently truncating.
    """
    if farm.n_turbines > max_turbines:
        raise OracleCapError(
            f"{farm.n_turbines} turbines exceeds oracle cap of {max_turbines}"
        )
    if len(farm.edges) > max_edges:
        raise OracleCapError(f"{len(farm.edges)} edges exceeds oracle cap of {max_edges}")

    maxcap = farm.catalog.max_capacity
    order = _edge_order(farm)
    m = len(order)

    # remaining[v]: incident edges not yet assigned, following `order`
    remaining = {v: len(farm.incident[v]) for v in farm.vertices}
    net = {v: 0 for v in farm.vertices}
    edge_cost = {}  # (edge order pos, value) -> exact cost contribution
    for pos, i in enumerate(order):
        for val in range(-maxcap, maxcap + 1):
            mag = abs(val)
            c = farm.catalog.evaluate(mag)
            edge_cost[(pos, val)] = None if c == float("inf") else c * farm.edges[i].length

    best_cost: Fraction | None = None
    best_vector: list[int] | None = None
    values = list(range(-maxcap, maxcap + 1))
    assignment = [0] * m

    def vertex_ok(v: VertexId) -> bool:
        r = remaining[v]
        if v in farm.turbines:
            need = -1 - net[v]
            return abs(need) <= r * maxcap
        # substation: net must land in [0, cap]
        lo, hi = net[v] - r * maxcap, net[v] + r * maxcap
        return hi >= 0 and lo <= farm.substation_capacity[v]

    def dfs(pos: int, cost: Fraction) -> None:
        nonlocal best_cost, best_vector
        if best_cost is not None and cost >= best_cost:
            return
        if pos == m:
            best_cost = cost
            best_vector = list(assignment)
            return
        i = order[pos]
        e = farm.edges[i]
        u_sub = e.u in farm.substations
        v_sub = e.v in farm.substations
        for val in values:
            if u_sub and val > 0:
                continue  # no outflow from a substation
            if v_sub and val < 0:
                continue
            c = edge_cost[(pos, val)]
            if c is None:
                continue
            net[e.u] -= val
            net[e.v] += val
            remaining[e.u] -= 1
            remaining[e.v] -= 1
            if vertex_ok(e.u) and vertex_ok(e.v):
                assignment[pos] = val
                dfs(pos + 1, cost + c)
            net[e.u] += val
            net[e.v] -= val
            remaining[e.u] += 1
            remaining[e.v] += 1

    dfs(0, Fraction(0))

    if best_vector is None:
        return OracleResult(False, None, None, None)

    flow = Flow.zero(farm)
    for pos, i in enumerate(order):
        flow.edge_flow[i] = best_vector[pos]
    for s in farm.substations:
        flow.sub_inflow[s] = net_flow(farm, flow, s)
    selection = [
        farm.catalog.cheapest_cable_index(abs(f)) for f in flow.edge_flow
    ]
    return OracleResult(True, best_cost, flow, selection)
