"""Problem instance data model: cable catalog, wind farm graph, flows.

All monetary values are exact rationals so that later negativity tests on
residual costs are exact, never within-epsilon. Decimal inputs are scaled
to integer numerator/denominator at load time; lengths derived from
coordinates keep the exact binary value of the computed float.
"""

from __future__ import annotations

import json
import math
from bisect import bisect_left
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Union

VertexId = Union[str, int]

#: Reserved id of the virtual super substation in residual graphs.
SUPER = "__super__"

#: Saturating sentinel for infinite cost. Never a large finite number.
INF = math.inf


class InstanceError(ValueError):
    """Raised when an instance file or in-memory instance is invalid."""


class InvariantError(RuntimeError):
    """An internal invariant was violated; indicates a bug, not bad input."""


def vertex_key(v: VertexId):
    """Deterministic sort key for mixed int/str vertex ids."""
    if isinstance(v, bool):
        raise InstanceError(f"invalid vertex id {v!r}")
    if isinstance(v, int):
        return (0, v, "")
    return (1, 0, str(v))


def to_fraction(x) -> Fraction:
    """Convert a JSON number to an exact rational.

    Floats go through their decimal repr so that e.g. 0.1 becomes 1/10.
    """
    if isinstance(x, bool):
        raise InstanceError(f"expected a number, got {x!r}")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        if not math.isfinite(x):
            raise InstanceError(f"non-finite number {x!r}")
        return Fraction(str(x))
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x)
    raise InstanceError(f"expected a number, got {x!r}")


@dataclass(frozen=True)
class CableType:
    capacity: int
    cost_per_length: Fraction

    def __post_init__(self):
        if not isinstance(self.capacity, int) or self.capacity < 1:
            raise InstanceError(f"cable capacity must be a positive integer, got {self.capacity!r}")
        if self.cost_per_length < 0:
            raise InstanceError("cable cost_per_length must be non-negative")


class CostFunction:
    """Non-decreasing, left-continuous step function induced by cable types.

    evaluate(x) is the cost per unit length of the cheapest cable whose
    capacity covers ceil(x); 0 at 0 and infinite beyond the largest cable.
    """

    def __init__(self, steps: Iterable[CableType]):
        steps = list(steps)
        if not steps:
            raise InstanceError("cable catalog must not be empty")
        steps.sort(key=lambda c: c.capacity)
        for a, b in zip(steps, steps[1:]):
            if b.capacity <= a.capacity:
                raise InstanceError(
                    f"duplicate cable capacity {b.capacity}: one of the cables is dominated"
                )
            if b.cost_per_length <= a.cost_per_length:
                raise InstanceError(
                    f"cable (capacity {b.capacity}, cost {b.cost_per_length}) is dominated by "
                    f"(capacity {a.capacity}, cost {a.cost_per_length}); it can never be selected"
                )
        self.steps: list[CableType] = steps
        self.max_capacity: int = steps[-1].capacity
        self._capacities = [c.capacity for c in steps]
        # Common denominator so the solver can compare costs as integers.
        self.cost_scale: int = math.lcm(*(c.cost_per_length.denominator for c in steps))
        self._scaled = [int(c.cost_per_length * self.cost_scale) for c in steps]

    def evaluate(self, x) -> Fraction | float:
        if x < 0:
            raise ValueError("cost function is defined for non-negative flow magnitudes")
        n = math.ceil(x)
        if n == 0:
            return Fraction(0)
        if n > self.max_capacity:
            return INF
        return self.steps[bisect_left(self._capacities, n)].cost_per_length

    def evaluate_scaled(self, n: int) -> int | float:
        """evaluate(n) * cost_scale for integral n; used by the solver."""
        if n == 0:
            return 0
        if n > self.max_capacity:
            return INF
        return self._scaled[bisect_left(self._capacities, n)]

    def cheapest_cable_index(self, magnitude: int) -> int | None:
        """Index of the cheapest adequate cable, or None for zero flow."""
        if magnitude == 0:
            return None
        if magnitude > self.max_capacity:
            raise ValueError(f"no cable can carry {magnitude} units")
        return bisect_left(self._capacities, magnitude)


@dataclass(frozen=True)
class Edge:
    u: VertexId
    v: VertexId
    length: Fraction


class WindFarm:
    """Immutable problem instance. Safe to share across threads."""

    def __init__(
        self,
        turbines: dict[VertexId, tuple[Fraction, Fraction]],
        substations: dict[VertexId, tuple[Fraction, Fraction]],
        substation_capacity: dict[VertexId, int],
        edges: list[Edge],
        catalog: CostFunction,
    ):
        self.turbines = turbines
        self.substations = substations
        self.substation_capacity = substation_capacity
        self.edges = edges
        self.catalog = catalog

        overlap = set(turbines) & set(substations)
        if overlap:
            raise InstanceError(f"ids used as both turbine and substation: {sorted(map(str, overlap))}")
        if SUPER in turbines or SUPER in substations:
            raise InstanceError(f"vertex id {SUPER!r} is reserved")
        for v, cap in substation_capacity.items():
            if not isinstance(cap, int) or cap < 1:
                raise InstanceError(f"substation {v!r} capacity must be a positive integer")

        self.vertices: list[VertexId] = sorted(
            list(turbines) + list(substations), key=vertex_key
        )
        seen: dict[tuple, int] = {}
        for i, e in enumerate(self.edges):
            for w in (e.u, e.v):
                if w not in turbines and w not in substations:
                    raise InstanceError(f"edge ({e.u!r}, {e.v!r}) references unknown vertex {w!r}")
            if e.u in substations and e.v in substations:
                raise InstanceError(f"edge ({e.u!r}, {e.v!r}) connects two substations")
            if e.u == e.v:
                raise InstanceError(f"self-loop at {e.u!r}")
            if e.length < 0:
                raise InstanceError(f"edge ({e.u!r}, {e.v!r}) has negative length")
            key = (vertex_key(e.u), vertex_key(e.v))
            rkey = (key[1], key[0])
            if key in seen or rkey in seen:
                raise InstanceError(f"edge ({e.u!r}, {e.v!r}) duplicates an existing edge")
            seen[key] = i

        self.edge_index: dict[tuple[VertexId, VertexId], int] = {
            (e.u, e.v): i for i, e in enumerate(self.edges)
        }
        self.incident: dict[VertexId, list[int]] = {v: [] for v in self.vertices}
        for i, e in enumerate(self.edges):
            self.incident[e.u].append(i)
            self.incident[e.v].append(i)

        # Integer scaling for lengths, shared with the cost scaling so that
        # every residual cost is an exact integer multiple of 1/gamma_scale.
        self.length_scale: int = math.lcm(1, *(e.length.denominator for e in self.edges))
        self.scaled_length: list[int] = [int(e.length * self.length_scale) for e in self.edges]
        self.gamma_scale: int = self.length_scale * catalog.cost_scale

    @property
    def n_turbines(self) -> int:
        return len(self.turbines)

    def is_substation(self, v: VertexId) -> bool:
        return v in self.substations

    def position(self, v: VertexId) -> tuple[Fraction, Fraction]:
        return self.turbines[v] if v in self.turbines else self.substations[v]


@dataclass
class Flow:
    """Signed integral flow per edge plus per-substation virtual inflow.

    A positive edge_flow[i] means flow travels in the stored direction of
    edges[i]. sub_inflow[v] is the flow on the virtual edge (v, super).
    """

    edge_flow: list[int]
    sub_inflow: dict[VertexId, int]

    def copy(self) -> "Flow":
        return Flow(list(self.edge_flow), dict(self.sub_inflow))

    @staticmethod
    def zero(farm: WindFarm) -> "Flow":
        return Flow([0] * len(farm.edges), {v: 0 for v in farm.substations})


@dataclass(frozen=True)
class Violation:
    rule: str  # turbine-conservation | substation-capacity | substation-outflow | inflow-accounting
    subject: Any
    detail: str

    def __str__(self):
        return f"{self.rule} at {self.subject!r}: {self.detail}"


def _check_dimensions(farm: WindFarm, flow: Flow) -> None:
    if len(flow.edge_flow) != len(farm.edges):
        raise InstanceError(
            f"flow has {len(flow.edge_flow)} edge values, farm has {len(farm.edges)} edges"
        )
    if set(flow.sub_inflow) != set(farm.substations):
        raise InstanceError("flow sub_inflow keys do not match farm substations")


def net_flow(farm: WindFarm, flow: Flow, v: VertexId) -> int:
    """Net flow into v over original edges: sum of inflow minus outflow."""
    if v not in farm.incident:
        raise InstanceError(f"unknown vertex id {v!r}")
    total = 0
    for i in farm.incident[v]:
        e = farm.edges[i]
        total += flow.edge_flow[i] if e.v == v else -flow.edge_flow[i]
    return total


def check_feasible(farm: WindFarm, flow: Flow) -> list[Violation]:
    """Check the flow-conservation conditions; empty list means feasible."""
    _check_dimensions(farm, flow)
    violations: list[Violation] = []
    for t in sorted(farm.turbines, key=vertex_key):
        nf = net_flow(farm, flow, t)
        if nf != -1:
            violations.append(Violation("turbine-conservation", t, f"net flow {nf}, expected -1"))
    for s in sorted(farm.substations, key=vertex_key):
        nf = net_flow(farm, flow, s)
        cap = farm.substation_capacity[s]
        if nf > cap:
            violations.append(Violation("substation-capacity", s, f"net inflow {nf} exceeds capacity {cap}"))
        if flow.sub_inflow[s] != nf:
            violations.append(
                Violation("inflow-accounting", s, f"sub_inflow {flow.sub_inflow[s]} != net inflow {nf}")
            )
    for i, e in enumerate(farm.edges):
        f = flow.edge_flow[i]
        if e.v in farm.substations and f < 0:
            violations.append(Violation("substation-outflow", (e.u, e.v), f"flow {f} leaves substation {e.v!r}"))
        if e.u in farm.substations and f > 0:
            violations.append(Violation("substation-outflow", (e.u, e.v), f"flow {f} leaves substation {e.u!r}"))
    return violations


def flow_cost(farm: WindFarm, flow: Flow) -> Fraction | float:
    """Total cable cost: sum over edges of c(|f(e)|) * len(e)."""
    _check_dimensions(farm, flow)
    total = Fraction(0)
    for i, e in enumerate(farm.edges):
        c = farm.catalog.evaluate(abs(flow.edge_flow[i]))
        if c is INF:
            return INF
        total += c * e.length
    return total


# ---------------------------------------------------------------------------
# Instance / solution files


def _euclidean(p: tuple[Fraction, Fraction], q: tuple[Fraction, Fraction]) -> Fraction:
    d = math.hypot(float(p[0] - q[0]), float(p[1] - q[1]))
    # Exact binary value of the computed distance; keeps arithmetic exact.
    return Fraction(d)


def farm_from_dict(data: dict) -> WindFarm:
    try:
        turbines = {t["id"]: (to_fraction(t["x"]), to_fraction(t["y"])) for t in data["turbines"]}
        substations = {}
        caps = {}
        for s in data["substations"]:
            substations[s["id"]] = (to_fraction(s["x"]), to_fraction(s["y"]))
            caps[s["id"]] = s["capacity"]
        cables = [
            CableType(c["capacity"], to_fraction(c["cost_per_length"])) for c in data["cables"]
        ]
        raw_edges = data["edges"]
    except (KeyError, TypeError) as exc:
        raise InstanceError(f"malformed instance: {exc}") from exc
    if len(turbines) != len(data["turbines"]):
        raise InstanceError("duplicate turbine ids")
    if len(substations) != len(data["substations"]):
        raise InstanceError("duplicate substation ids")

    catalog = CostFunction(cables)
    positions = {**turbines, **substations}
    edges = []
    for e in raw_edges:
        try:
            u, v = e["u"], e["v"]
        except (KeyError, TypeError) as exc:
            raise InstanceError(f"malformed edge entry {e!r}") from exc
        if u not in positions or v not in positions:
            raise InstanceError(f"edge ({u!r}, {v!r}) references unknown vertex")
        if "length" in e and e["length"] is not None:
            length = to_fraction(e["length"])
        else:
            length = _euclidean(positions[u], positions[v])
        edges.append(Edge(u, v, length))
    return WindFarm(turbines, substations, caps, edges, catalog)


def farm_to_dict(farm: WindFarm) -> dict:
    def num(x: Fraction):
        return int(x) if x.denominator == 1 else float(x)

    return {
        "turbines": [
            {"id": t, "x": num(p[0]), "y": num(p[1])}
            for t, p in sorted(farm.turbines.items(), key=lambda kv: vertex_key(kv[0]))
        ],
        "substations": [
            {"id": s, "x": num(p[0]), "y": num(p[1]), "capacity": farm.substation_capacity[s]}
            for s, p in sorted(farm.substations.items(), key=lambda kv: vertex_key(kv[0]))
        ],
        "edges": [
            {"u": e.u, "v": e.v, "length": num(e.length)} for e in farm.edges
        ],
        "cables": [
            {"capacity": c.capacity, "cost_per_length": num(c.cost_per_length)}
            for c in farm.catalog.steps
        ],
    }


def load_farm(path) -> WindFarm:
    with open(path) as fh:
        return farm_from_dict(json.load(fh))


def save_farm(farm: WindFarm, path) -> None:
    with open(path, "w") as fh:
        json.dump(farm_to_dict(farm), fh, indent=2)
        fh.write("\n")


def cable_assignment(farm: WindFarm, flow: Flow) -> list[int | None]:
    """Per edge, the cheapest adequate cable index; None where flow is zero."""
    return [
        farm.catalog.cheapest_cable_index(abs(flow.edge_flow[i]))
        for i in range(len(farm.edges))
    ]


def solution_to_dict(farm: WindFarm, flow: Flow) -> dict:
    cost = flow_cost(farm, flow)
    return {
        "edge_flows": [
            {"u": e.u, "v": e.v, "flow": flow.edge_flow[i]} for i, e in enumerate(farm.edges)
        ],
        "cable_assignment": [
            {"u": e.u, "v": e.v, "cable_index": ci}
            for (e, ci) in zip(farm.edges, cable_assignment(farm, flow))
        ],
        "total_cost": float(cost),
    }


def flow_from_solution_dict(farm: WindFarm, data: dict) -> Flow:
    flow = Flow.zero(farm)
    for entry in data["edge_flows"]:
        u, v, f = entry["u"], entry["v"], entry["flow"]
        if (u, v) in farm.edge_index:
            flow.edge_flow[farm.edge_index[(u, v)]] = f
        elif (v, u) in farm.edge_index:
            flow.edge_flow[farm.edge_index[(v, u)]] = -f
        else:
            raise InstanceError(f"solution references unknown edge ({u!r}, {v!r})")
    for s in farm.substations:
        flow.sub_inflow[s] = net_flow(farm, flow, s)
    return flow
