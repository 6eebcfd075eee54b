"""Random instance generation over the usual benchmark size classes.

The published benchmark sets are not bundled; the generator only mirrors
their size/topology classes ("-like"), optionally scaled down by a
divisor for desk runs. Deterministic per seed.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .model import InstanceError, WindFarm, farm_from_dict

#: (turbine range, substation count, connectivity)
SIZE_CLASSES = {
    "n1-like": ((10, 79), 1, "k-nearest"),
    "n2-like": ((20, 79), 2, "k-nearest"),
    "n3-like": ((80, 180), 3, "k-nearest"),
    "n4-like": ((200, 499), 4, "k-nearest"),
    "n5-like": ((80, 180), 3, "complete"),
}

DEFAULT_CABLES = [
    {"capacity": 1, "cost_per_length": 1},
    {"capacity": 3, "cost_per_length": 2},
    {"capacity": 8, "cost_per_length": 4},
]


@dataclass
class GeneratorSpec:
    size_class: str = "n1-like"
    seed: int = 0
    turbine_range: tuple[int, int] | None = None
    substations: int | None = None
    connectivity: str | None = None  # "k-nearest" | "complete"
    k: int = 8
    divisor: int = 1
    cables: list[dict] = field(default_factory=lambda: [dict(c) for c in DEFAULT_CABLES])
    area: float = 1000.0

    def resolve(self) -> tuple[tuple[int, int], int, str]:
        if self.size_class not in SIZE_CLASSES:
            raise InstanceError(f"unknown size class {self.size_class!r}")
        trange, subs, conn = SIZE_CLASSES[self.size_class]
        trange = self.turbine_range or (
            max(1, trange[0] // self.divisor),
            max(1, trange[1] // self.divisor),
        )
        return trange, self.substations or subs, self.connectivity or conn


def generate(spec: GeneratorSpec) -> WindFarm:
    (lo, hi), n_subs, connectivity = spec.resolve()
    if lo < 1 or hi < lo:
        raise InstanceError(f"degenerate turbine range ({lo}, {hi})")
    rng = random.Random(spec.seed)
    n = rng.randint(lo, hi)

    turbines = [
        {
            "id": f"t{i}",
            "x": round(rng.uniform(0, spec.area), 3),
            "y": round(rng.uniform(0, spec.area), 3),
        }
        for i in range(n)
    ]
    # Substations evenly spread on the boundary, with a little jitter.
    cap = math.ceil(n / n_subs) + 1
    substations = []
    for j in range(n_subs):
        t = (j + rng.uniform(0.1, 0.9)) / n_subs
        perimeter = 4 * spec.area
        d = t * perimeter
        if d < spec.area:
            x, y = d, 0.0
        elif d < 2 * spec.area:
            x, y = spec.area, d - spec.area
        elif d < 3 * spec.area:
            x, y = 3 * spec.area - d, spec.area
        else:
            x, y = 0.0, 4 * spec.area - d
        substations.append(
            {"id": f"s{j}", "x": round(x, 3), "y": round(y, 3), "capacity": cap}
        )

    pos = {v["id"]: (v["x"], v["y"]) for v in turbines + substations}
    sub_ids = {s["id"] for s in substations}
    ids = sorted(pos)

    def dist(a, b):
        return math.hypot(pos[a][0] - pos[b][0], pos[a][1] - pos[b][1])

    pairs: set[tuple[str, str]] = set()

    def add_pair(a, b):
        if a == b or (a in sub_ids and b in sub_ids):
            return
        key = (a, b) if a < b else (b, a)
        pairs.add(key)

    if connectivity == "complete":
        for i, a in enumerate(ids):
            for b in ids[i + 1 :]:
                add_pair(a, b)
    elif connectivity == "k-nearest":
        for a in ids:
            nearest = sorted((b for b in ids if b != a), key=lambda b: (dist(a, b), b))
            for b in nearest[: spec.k]:
                add_pair(a, b)
        # Every substation needs enough incident capacity for its share.
        max_cable = max(c["capacity"] for c in spec.cables)
        need = math.ceil(cap / max_cable) + 2
        for s in sorted(sub_ids):
            have = sum(1 for p in pairs if s in p)
            if have < need:
                others = sorted(
                    (b for b in ids if b not in sub_ids), key=lambda b: (dist(s, b), b)
                )
                for b in others:
                    if have >= need:
                        break
                    before = len(pairs)
                    add_pair(s, b)
                    have += len(pairs) - before
        _connect_components(ids, sub_ids, pairs, dist)
    else:
        raise InstanceError(f"unknown connectivity {connectivity!r}")

    edges = [{"u": a, "v": b} for a, b in sorted(pairs)]
    return farm_from_dict(
        {
            "turbines": turbines,
            "substations": substations,
            "edges": edges,
            "cables": spec.cables,
        }
    )


def _connect_components(ids, sub_ids, pairs, dist):
    """Join disconnected components by their closest vertex pairs."""
    adj: dict[str, set[str]] = {v: set() for v in ids}
    for a, b in pairs:
        adj[a].add(b)
        adj[b].add(a)
    comp: dict[str, int] = {}
    for v in ids:
        if v in comp:
            continue
        stack, cid = [v], len(comp)
        comp[v] = cid
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in comp:
                    comp[y] = comp[v]
                    stack.append(y)
    groups: dict[int, list[str]] = {}
    for v, c in comp.items():
        groups.setdefault(c, []).append(v)
    group_list = sorted(groups.values(), key=lambda g: sorted(g)[0])
    base = group_list[0]
    for other in group_list[1:]:
        best = min(
            ((a, b) for a in base for b in other if not (a in sub_ids and b in sub_ids)),
            key=lambda ab: (dist(*ab), ab),
        )
        a, b = best
        pairs.add((a, b) if a < b else (b, a))
        base = base + other
