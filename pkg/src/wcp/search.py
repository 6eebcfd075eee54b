"""Negative cycle search on the U-turn-free line graph, run directly on R.

Instead of materializing the line graph, each residual vertex keeps only
the two smallest labels of its incoming edges plus their parent pointers.
Relaxing (u, v) uses the first label at u unless its parent edge comes
from v (which would be a U-turn), in which case the second label is used.
Ties are broken in favor of older labels via a global update counter.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .model import INF, InstanceError
from .residual import ResidualEdge, ResidualView


@dataclass
class LabelTable:
    """Two smallest incoming-edge labels and parent pointers per vertex.

    Labels are scaled integers (see farm.gamma_scale). parent pointers are
    indices into view.edges, -1 when unset. Ages are global-counter values
    at the label's last update; smaller age means older.
    """

    view: ResidualView
    l1: list
    l2: list
    p1: list[int]
    p2: list[int]
    a1: list[int]
    a2: list[int]
    vindex: dict
    converged: bool = False
    rounds: int = 0
    _age: int = 0

    def label_of_edge(self, edge_idx: int, head: int):
        if self.p1[head] == edge_idx:
            return self.l1[head]
        if self.p2[head] == edge_idx:
            return self.l2[head]
        return INF


def _new_table(view: ResidualView) -> LabelTable:
    n = len(view.vertices)
    return LabelTable(
        view=view,
        l1=[INF] * n,
        l2=[INF] * n,
        p1=[-1] * n,
        p2=[-1] * n,
        a1=[0] * n,
        a2=[0] * n,
        vindex={v: i for i, v in enumerate(view.vertices)},
    )


def _offer(lt: LabelTable, v: int, edge_idx: int, value) -> bool:
    """Offer `value` as the label of incoming edge edge_idx at vertex v.

    Returns True when a relevant label changed. Strict improvement only:
    on ties the incumbent (older) label wins.
    """
    if lt.p1[v] == edge_idx:
        if value < lt.l1[v]:
            lt._age += 1
            lt.l1[v] = value
            lt.a1[v] = lt._age
            return True
        return False
    if lt.p2[v] == edge_idx:
        if value >= lt.l2[v]:
            return False
        lt._age += 1
        lt.l2[v] = value
        lt.a2[v] = lt._age
        if (lt.l2[v], lt.a2[v]) < (lt.l1[v], lt.a1[v]):
            lt.l1[v], lt.l2[v] = lt.l2[v], lt.l1[v]
            lt.p1[v], lt.p2[v] = lt.p2[v], lt.p1[v]
            lt.a1[v], lt.a2[v] = lt.a2[v], lt.a1[v]
        return True
    # edge_idx is not currently relevant at v; it may evict the second slot
    if value >= lt.l2[v]:
        return False
    lt._age += 1
    lt.l2[v] = value
    lt.p2[v] = edge_idx
    lt.a2[v] = lt._age
    if (lt.l2[v], lt.a2[v]) < (lt.l1[v], lt.a1[v]):
        lt.l1[v], lt.l2[v] = lt.l2[v], lt.l1[v]
        lt.p1[v], lt.p2[v] = lt.p2[v], lt.p1[v]
        lt.a1[v], lt.a2[v] = lt.a2[v], lt.a1[v]
    return True


def _would_update(lt: LabelTable, e_idx: int, tail: int, head: int, gamma) -> bool:
    """Whether relaxing edge e would still reduce a relevant label."""
    if gamma is INF:
        return False
    src = _source_label(lt, tail, head)
    if src is INF:
        return False
    cand = src + gamma
    if lt.p1[head] == e_idx:
        return cand < lt.l1[head]
    if lt.p2[head] == e_idx:
        return cand < lt.l2[head]
    return cand < lt.l2[head]


def _source_label(lt: LabelTable, tail: int, head: int):
    """Best label at `tail` usable to relax an edge towards `head`."""
    p = lt.p1[tail]
    if p >= 0 and lt.view.edges[p].tail != lt.view.vertices[head]:
        return lt.l1[tail]
    return lt.l2[tail]


def bellman_ford_two_labels(view: ResidualView) -> LabelTable:
    """Run the modified Bellman-Ford algorithm to its round cap.

    Initialization treats every residual edge as a one-edge walk: edge e
    offers gamma(e) at its head. At most 2*|V(R)| relaxation rounds follow,
    with early exit when a round changes nothing and skipping of out-edges
    of vertices whose labels did not change since their last scan.
    """
    lt = _new_table(view)
    n = len(view.vertices)
    edges = view.edges
    gammas = view.gamma_scaled
    tails = [lt.vindex[e.tail] for e in edges]
    heads = [lt.vindex[e.head] for e in edges]

    dirty = [False] * n
    for i in range(len(edges)):
        if gammas[i] is not INF:
            if _offer(lt, heads[i], i, gammas[i]):
                dirty[heads[i]] = True

    # Group edge positions by tail; edges are already sorted by tail id.
    out_edges: list[list[int]] = [[] for _ in range(n)]
    for i, t in enumerate(tails):
        out_edges[t].append(i)
    # Tail vertex index of each edge's parent candidate, for U-turn checks.
    edge_tail_vertex = [view.vertices[t] for t in tails]

    # The relaxation loop is the solver's hot spot; work on local bindings
    # and inline the _offer/_source_label logic (same semantics).
    l1, l2, p1, p2, a1, a2 = lt.l1, lt.l2, lt.p1, lt.p2, lt.a1, lt.a2
    vertices = view.vertices
    age = lt._age
    for rnd in range(2 * n):
        changed = False
        for u in range(n):
            if not dirty[u]:
                continue
            dirty[u] = False
            src1 = l1[u]
            src2 = l2[u]
            pu = p1[u]
            avoid = edge_tail_vertex[pu] if pu >= 0 else None
            for i in out_edges[u]:
                g = gammas[i]
                if g is INF:
                    continue
                v = heads[i]
                src = src2 if avoid is not None and avoid == vertices[v] else src1
                if src is INF:
                    continue
                value = src + g
                # Inlined _offer(lt, v, i, value)
                if p1[v] == i:
                    if value < l1[v]:
                        age += 1
                        l1[v] = value
                        a1[v] = age
                        dirty[v] = True
                        changed = True
                    continue
                if value >= l2[v]:
                    continue
                age += 1
                l2[v] = value
                a2[v] = age
                if p2[v] != i:
                    p2[v] = i
                # The fresh label carries the newest age, so on a value tie
                # the incumbent l1 stays in front; swap on strict improvement.
                if value < l1[v]:
                    l1[v], l2[v] = l2[v], l1[v]
                    p1[v], p2[v] = p2[v], p1[v]
                    a1[v], a2[v] = a2[v], a1[v]
                    if v == u:
                        # Self-offer changed u's own slots mid-scan.
                        src1, src2, pu = l1[u], l2[u], p1[u]
                        avoid = edge_tail_vertex[pu] if pu >= 0 else None
                dirty[v] = True
                changed = True
        lt.rounds = rnd + 1
        if not changed:
            lt.converged = True
            break
    lt._age = age
    return lt


def edge_is_relaxable(lt: LabelTable, edge_idx: int) -> bool:
    """Whether the edge still allows reducing a label after the run."""
    if lt.converged:
        return False
    view = lt.view
    e = view.edges[edge_idx]
    return _would_update(
        lt, edge_idx, lt.vindex[e.tail], lt.vindex[e.head], view.gamma_scaled[edge_idx]
    )


def extract_negative_closed_walk(
    lt: LabelTable, view: ResidualView, edge_idx: int
) -> list[ResidualEdge] | None:
    """Follow parent pointers backwards from a still-relaxable edge.

    At edge (v, w) the predecessor is the incoming edge of v other than
    (w, v) with the smallest (oldest on ties) label. Stops when an edge
    repeats and returns the enclosed closed subwalk, or None when the edge
    is not relaxable or the chain cannot be extended.
    """
    if not edge_is_relaxable(lt, edge_idx):
        return None
    edges = view.edges
    backward = [edge_idx]
    pos = {edge_idx: 0}
    cap = 4 * len(view.vertices) + 4
    current = edge_idx
    for _ in range(cap):
        e = edges[current]
        v = lt.vindex[e.tail]
        # incoming edge of v avoiding the U-turn back to e.head
        p = lt.p1[v]
        if p >= 0 and edges[p].tail == e.head:
            p = lt.p2[v]
        if p < 0 or lt.label_of_edge(p, v) is INF:
            return None
        if p in pos:
            j = pos[p]
            return [edges[i] for i in reversed(backward[j:])]
        pos[p] = len(backward)
        backward.append(p)
        current = p
    return None


def walk_gamma_scaled(view: ResidualView, walk: list[ResidualEdge]):
    index = {e: i for i, e in enumerate(view.edges)}
    return sum(view.gamma_scaled[index[e]] for e in walk)


def validate_closed_walk(walk: list[ResidualEdge]) -> None:
    if not walk:
        raise InstanceError("empty walk")
    for a, b in zip(walk, walk[1:] + [walk[0]]):
        if a.head != b.tail:
            raise InstanceError(f"walk edges not consecutive: {a} -> {b}")
    for a, b in zip(walk, walk[1:] + [walk[0]]):
        if b == a.reversed():
            raise InstanceError(f"walk contains a U-turn at {a}")


def decompose_walk(walk: list[ResidualEdge]) -> list[list[ResidualEdge]]:
    """Split a closed walk into simple cycles via a stack-based scan.

    Vertices are pushed along the walk; when a vertex repeats, the enclosed
    edges are popped as one cycle. The union of the returned cycles' edge
    multisets equals the walk's.
    """
    if not walk:
        raise InstanceError("empty walk")
    for a, b in zip(walk, walk[1:]):
        if a.head != b.tail:
            raise InstanceError(f"walk edges not consecutive: {a} -> {b}")
    if walk[-1].head != walk[0].tail:
        raise InstanceError("walk is not closed")

    cycles: list[list[ResidualEdge]] = []
    vstack = [walk[0].tail]
    estack: list[ResidualEdge] = []
    depth = {walk[0].tail: 0}
    for e in walk:
        estack.append(e)
        h = e.head
        if h in depth:
            j = depth[h]
            cycle = estack[j:]
            del estack[j:]
            for v in vstack[j + 1 :]:
                del depth[v]
            del vstack[j + 1 :]
            cycles.append(cycle)
        else:
            vstack.append(h)
            depth[h] = len(vstack) - 1
    if estack:
        raise InstanceError("walk is not closed")
    return cycles
