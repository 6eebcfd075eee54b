"""Main negative cycle canceling loop.

One solve run is strictly single-threaded; the algorithm is inherently
sequential. Cycles surviving walk decomposition are re-priced against the
current flow before canceling, so every cancellation strictly decreases
the total cost by exactly the cycle's residual cost.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

from .delta import DeltaStrategy
from .initflow import InitStrategy, initialize
from .model import (
    INF,
    Flow,
    InvariantError,
    WindFarm,
    cable_assignment,
    flow_cost,
    solution_to_dict,
)
from .residual import (
    ResidualEdge,
    apply_residual_edge,
    build_residual,
    residual_cost_scaled,
)
from .search import (
    bellman_ford_two_labels,
    decompose_walk,
    extract_negative_closed_walk,
)


@dataclass(frozen=True)
class SolveLimits:
    time_ms: float | None = None
    iterations: int | None = None


@dataclass
class TraceEntry:
    iteration: int
    delta: int
    cycle_length: int
    gamma: Fraction  # residual cost of the canceled cycle, always < 0
    cost_after: Fraction


@dataclass
class Solution:
    farm: WindFarm
    flow: Flow
    cost: Fraction
    assignment: list[int | None]
    trace: list[TraceEntry]
    exhausted: bool
    iterations: int
    cancellations: int
    wall_time_ms: float
    seed: int

    def to_dict(self) -> dict:
        return solution_to_dict(self.farm, self.flow)


def cycle_gamma_scaled(
    farm: WindFarm, flow: Flow, delta: int, cycle: list[ResidualEdge]
) -> int | float:
    """Total residual cost of a cycle priced against the current flow."""
    total = 0
    for e in cycle:
        g = residual_cost_scaled(farm, flow, delta, e)
        if g is INF:
            return INF
        total += g
    return total


def cancel_cycle(
    farm: WindFarm, flow: Flow, cycle: list[ResidualEdge], delta: int
) -> Flow:
    """Add delta units of flow along every edge of a long negative cycle.

    Preconditions are re-verified against the current flow; a violation is
    an internal error, never a silent cancel.
    """
    if len(cycle) < 3:
        raise InvariantError(f"refusing to cancel short cycle of length {len(cycle)}")
    g = cycle_gamma_scaled(farm, flow, delta, cycle)
    if g is INF:
        raise InvariantError("cycle has an infinite residual cost against the current flow")
    if g >= 0:
        raise InvariantError(f"cycle is not negative against the current flow (gamma={g})")
    _apply_cycle(flow, cycle, delta)
    return flow


def _apply_cycle(flow: Flow, cycle: list[ResidualEdge], delta: int) -> None:
    for e in cycle:
        apply_residual_edge(flow, e, delta)


def anti_cancel_cycle(flow: Flow, cycle: list[ResidualEdge], delta: int) -> Flow:
    """Exact inverse of a cancellation; used for rollback and testing."""
    for e in cycle:
        apply_residual_edge(flow, e, -delta)
    return flow


def solve(
    farm: WindFarm,
    init_strategy: InitStrategy,
    delta_strategy: str,
    limits: SolveLimits | None = None,
    seed: int = 0,
    observer=None,
) -> Solution:
    """Run the negative cycle canceling algorithm to exhaustion or a limit."""
    limits = limits or SolveLimits()
    start = time.perf_counter()
    flow = initialize(farm, init_strategy)

    delta_max = 2 * farm.catalog.max_capacity
    schedule = DeltaStrategy(delta_strategy, delta_max, seed=seed)
    delta: int | None = schedule.current

    trace: list[TraceEntry] = []
    iterations = 0
    cancellations = 0
    exhausted = False

    while True:
        if delta is None:
            exhausted = True
            break
        if limits.iterations is not None and iterations >= limits.iterations:
            break
        if limits.time_ms is not None and (time.perf_counter() - start) * 1000 >= limits.time_ms:
            break

        view = build_residual(farm, flow, delta)
        labels = bellman_ford_two_labels(view)
        found = False
        for idx in range(len(view.edges)):
            walk = extract_negative_closed_walk(labels, view, idx)
            if walk is None:
                continue
            for cycle in decompose_walk(walk):
                if len(cycle) < 3:
                    continue
                # Re-price against the flow as updated by sibling cycles.
                g = cycle_gamma_scaled(farm, flow, delta, cycle)
                if g is INF or g >= 0:
                    continue
                cancel_cycle(farm, flow, cycle, delta)
                cancellations += 1
                found = True
                trace.append(
                    TraceEntry(
                        iterations,
                        delta,
                        len(cycle),
                        Fraction(g, farm.gamma_scale),
                        flow_cost(farm, flow),
                    )
                )
                if observer is not None:
                    observer(farm, flow, cycle, delta, Fraction(g, farm.gamma_scale))
            if found:
                break
        delta = schedule.next(found)
        iterations += 1

    cost = flow_cost(farm, flow)
    return Solution(
        farm=farm,
        flow=flow,
        cost=cost,
        assignment=cable_assignment(farm, flow),
        trace=trace,
        exhausted=exhausted,
        iterations=iterations,
        cancellations=cancellations,
        wall_time_ms=(time.perf_counter() - start) * 1000,
        seed=seed,
    )
