import random

import pytest

from wcp.model import Flow, WindFarm, farm_from_dict, net_flow


@pytest.fixture
def worked_farm() -> WindFarm:
    """Three turbines around one substation; catalog {(1, 2), (3, 3)}.

    Small enough to reason about by hand: the suboptimal flow sending
    v1 through v2 costs 19, the optimum is 17.
    """
    return farm_from_dict(
        {
            "turbines": [
                {"id": "v1", "x": 0, "y": 0},
                {"id": "v2", "x": 0, "y": 0},
                {"id": "v3", "x": 0, "y": 0},
            ],
            "substations": [{"id": "u", "x": 0, "y": 0, "capacity": 3}],
            "edges": [
                {"u": "v1", "v": "v2", "length": 2},
                {"u": "v2", "v": "v3", "length": 2},
                {"u": "v1", "v": "u", "length": 3},
                {"u": "v2", "v": "u", "length": 3},
                {"u": "v3", "v": "u", "length": 3},
            ],
            "cables": [
                {"capacity": 1, "cost_per_length": 2},
                {"capacity": 3, "cost_per_length": 3},
            ],
        }
    )


@pytest.fixture
def worked_flow(worked_farm) -> Flow:
    """The hand-checked suboptimal flow of cost 19 on worked_farm."""
    flow = Flow.zero(worked_farm)
    flow.edge_flow[worked_farm.edge_index[("v1", "v2")]] = 1
    flow.edge_flow[worked_farm.edge_index[("v2", "u")]] = 2
    flow.edge_flow[worked_farm.edge_index[("v3", "u")]] = 1
    flow.sub_inflow["u"] = 3
    return flow


def make_tiny_farm(rng: random.Random) -> WindFarm:
    """Random benign instance: <= 6 turbines, <= 2 substations, <= 10 edges.

    Generous capacities everywhere so that every initialization strategy
    succeeds and the exact oracle stays within its enumeration caps.
    """
    n_t = rng.randint(2, 6)
    n_s = rng.randint(1, 2)
    turbines = [
        {"id": f"t{i}", "x": rng.randint(0, 100), "y": rng.randint(0, 100)}
        for i in range(n_t)
    ]
    substations = [
        {"id": f"s{j}", "x": rng.randint(0, 100), "y": rng.randint(0, 100), "capacity": n_t}
        for j in range(n_s)
    ]
    ids = [t["id"] for t in turbines] + [s["id"] for s in substations]
    subs = {s["id"] for s in substations}

    # A random spanning tree keeps every turbine reachable.
    order = ids[:]
    rng.shuffle(order)
    pairs = set()
    for i, v in enumerate(order[1:], start=1):
        choices = [w for w in order[:i] if not (v in subs and w in subs)]
        if not choices:
            choices = [w for w in ids if w not in subs and w != v]
        w = rng.choice(choices)
        pairs.add((min(v, w), max(v, w)))
    target = rng.randint(len(pairs), 10)
    for _ in range(30):
        if len(pairs) >= target:
            break
        v, w = rng.sample(ids, 2)
        if not (v in subs and w in subs):
            pairs.add((min(v, w), max(v, w)))

    cables = [{"capacity": 1, "cost_per_length": 1}]
    if n_t > 1:
        cables.append({"capacity": n_t, "cost_per_length": rng.randint(2, 3)})
    return farm_from_dict(
        {
            "turbines": turbines,
            "substations": substations,
            "edges": [{"u": a, "v": b, "length": rng.randint(1, 20)} for a, b in sorted(pairs)],
            "cables": cables,
        }
    )


def make_random_flow(farm: WindFarm, rng: random.Random) -> Flow:
    """Arbitrary (not necessarily feasible) integral flow on a farm."""
    maxcap = farm.catalog.max_capacity
    flow = Flow.zero(farm)
    for i, e in enumerate(farm.edges):
        f = rng.randint(-maxcap, maxcap)
        if e.u in farm.substations and f > 0:
            f = -f
        if e.v in farm.substations and f < 0:
            f = -f
        flow.edge_flow[i] = f
    for s in farm.substations:
        flow.sub_inflow[s] = max(0, net_flow(farm, flow, s))
    return flow


def assert_cycle_well_formed(cycle) -> None:
    """Canceled cycles must be simple, length >= 3, closed, U-turn-free."""
    assert len(cycle) >= 3
    tails = [e.tail for e in cycle]
    assert len(set(tails)) == len(tails), f"cycle revisits a vertex: {cycle}"
    for a, b in zip(cycle, cycle[1:] + [cycle[0]]):
        assert a.head == b.tail, f"cycle edges not consecutive: {a} -> {b}"
        assert b != a.reversed(), f"cycle contains a U-turn at {a}"
