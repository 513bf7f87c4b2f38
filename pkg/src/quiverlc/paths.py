"""Path counting on the translation quiver.

Oriented paths never decrease the slice, so every path between two ZQ
vertices lives inside the slab spanned by their slices and counting is a
topological DP there, weighted by arrow multiplicities.  Oriented cycles
in ZQ stay inside a single slice (they mirror cycles of the base quiver);
a cycle that is both reachable from the source and co-reachable to the
target certifies an infinite count.

A path A_1, A_2, ... is sectional when no vertex is the translate of its
second successor: A_{i+2} != tau^{-1}(A_i).  Counting those is a DP on
states (previous vertex, current vertex); a cycle among live states again
certifies infinity, and in-slice cycles are automatically sectional since
a translate lives one slice up.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable

from .core import LazyQuiver, Quiver
from .zq import (
    Window,
    ZVertex,
    format_zvertex,
    slab,
    slab_ancestors,
    slab_descendants,
    translate,
    zvertex_sort_key,
)


@dataclass(frozen=True)
class PathCount:
    """An exact count, a certified infinity, or a window-relative lower bound.

    Counts are plain ints (arbitrary precision).  witness_cycle, present
    for infinite counts, is a vertex cycle lying on a source-to-target
    route, first entry repeated last.
    """

    status: str  # "finite" | "infinite" | "lower_bound"
    count: int | None = None
    witness_cycle: tuple[ZVertex, ...] | None = None

    @classmethod
    def finite(cls, count: int) -> "PathCount":
        return cls("finite", count=count)

    @classmethod
    def infinite(cls, witness: Iterable[ZVertex] | None = None) -> "PathCount":
        return cls("infinite", witness_cycle=tuple(witness) if witness else None)

    @classmethod
    def lower_bound(cls, count: int) -> "PathCount":
        return cls("lower_bound", count=count)

    def to_json(self) -> dict:
        doc: dict = {"status": self.status}
        if self.count is not None:
            doc["count"] = str(self.count)
        if self.witness_cycle is not None:
            doc["witness_cycle"] = [format_zvertex(v) for v in self.witness_cycle]
        return doc

    def __str__(self) -> str:
        if self.status == "finite":
            return str(self.count)
        if self.status == "lower_bound":
            return f">={self.count}"
        return "inf"


def _require_finite(q) -> None:
    if isinstance(q, LazyQuiver):
        raise TypeError(
            "path counting needs a finite quiver; materialize a window scope first"
        )


def _find_cycle(
    nodes: Iterable[Hashable], succ: Callable[[Hashable], Iterable[Hashable]]
) -> list | None:
    """First cycle in a finite digraph, as a node list closed at both ends."""
    WHITE, GRAY, BLACK = 0, 1, 2
    color = {v: WHITE for v in nodes}
    parent: dict = {}
    for root in color:
        if color[root] != WHITE:
            continue
        color[root] = GRAY
        stack = [(root, iter(succ(root)))]
        while stack:
            v, it = stack[-1]
            entered = False
            for w in it:
                if w not in color:
                    continue
                if color[w] == WHITE:
                    color[w] = GRAY
                    parent[w] = v
                    stack.append((w, iter(succ(w))))
                    entered = True
                    break
                if color[w] == GRAY:
                    seq = [v]
                    u = v
                    while u != w:
                        u = parent[u]
                        seq.append(u)
                    seq.reverse()
                    return seq + [seq[0]]
            if not entered:
                color[v] = BLACK
                stack.pop()
    return None


def _topo_order(nodes: set, succ: Callable, pred_count: dict) -> list:
    order = []
    ready = deque(sorted((v for v in nodes if pred_count[v] == 0), key=_node_key))
    remaining = dict(pred_count)
    while ready:
        v = ready.popleft()
        order.append(v)
        for w in succ(v):
            if w in remaining:
                remaining[w] -= 1
                if remaining[w] == 0:
                    ready.append(w)
    return order


def _node_key(v):
    # nodes are ZVertex or (ZVertex, ZVertex) states or a sentinel string
    if isinstance(v, ZVertex):
        return (0, zvertex_sort_key(v), ())
    if isinstance(v, tuple):
        return (1, zvertex_sort_key(v[0]), zvertex_sort_key(v[1]))
    return (2, (), ())


def _base_cycle_through(q: Quiver, x) -> list | None:
    """An oriented cycle of the base quiver through x, or None."""
    parent = {}
    dq = deque()
    for w, _m in q.out_arrows(x):
        if w == x:
            return [x, x]
        if w not in parent:
            parent[w] = x
            dq.append(w)
    while dq:
        v = dq.popleft()
        for w, _m in q.out_arrows(v):
            if w == x:
                seq = [x, v]
                u = v
                while parent[u] != x:
                    u = parent[u]
                    seq.append(u)
                seq.append(x)
                seq.reverse()
                return seq
            if w not in parent:
                parent[w] = v
                dq.append(w)
    return None


def count_paths_zq(
    q: Quiver, a: ZVertex, b: ZVertex, include_trivial: bool = True
) -> PathCount:
    """Number of oriented paths a -> b in ZQ, multiplicities multiplying
    along each path.  The empty path counts once when a == b and
    include_trivial is set."""
    _require_finite(q)
    q.require_vertex(a.base)
    q.require_vertex(b.base)
    if a == b:
        cyc = _base_cycle_through(q, a.base)
        if cyc is not None:
            return PathCount.infinite(ZVertex(a.slice, v) for v in cyc)
        return PathCount.finite(1 if include_trivial else 0)
    if b.slice < a.slice:
        return PathCount.finite(0)
    s = slab(q, Window(a.slice, b.slice))
    desc = slab_descendants(s, a)
    if b not in desc:
        return PathCount.finite(0)
    live = desc & slab_ancestors(s, b)

    def succ(v):
        return [w for w, _m in s.out_arrows(v) if w in live]

    cyc = _find_cycle(sorted(live, key=zvertex_sort_key), succ)
    if cyc is not None:
        return PathCount.infinite(cyc)
    pred_count = {v: 0 for v in live}
    for v in live:
        for w in succ(v):
            pred_count[w] += 1
    ways = {v: 0 for v in live}
    ways[a] = 1
    for v in _topo_order(live, succ, pred_count):
        for w, m in s.out_arrows(v):
            if w in live:
                ways[w] += ways[v] * m
    return PathCount.finite(ways[b])


def count_sectional_paths_zq(
    q: Quiver, a: ZVertex, b: ZVertex, include_trivial: bool = True
) -> PathCount:
    """Number of sectional paths a -> b in ZQ.

    States are slab arrows (previous, current); stepping to a neighbor that
    is the inverse translate of the previous vertex is forbidden.  Paths of
    length < 2 have no constrained triple and are always sectional.
    """
    _require_finite(q)
    q.require_vertex(a.base)
    q.require_vertex(b.base)
    if a == b:
        cyc = _base_cycle_through(q, a.base)
        if cyc is not None:
            # in-slice cycles never trip the sectional condition
            return PathCount.infinite(ZVertex(a.slice, v) for v in cyc)
        return PathCount.finite(1 if include_trivial else 0)
    if b.slice < a.slice:
        return PathCount.finite(0)
    s = slab(q, Window(a.slice, b.slice))

    start = "start"

    def state_succ(node):
        if node == start:
            return [(a, w) for w, _m in s.out_arrows(a)]
        u, v = node
        blocked = translate(u, -1)
        return [(v, w) for w, _m in s.out_arrows(v) if w != blocked]

    def state_succ_weighted(node):
        if node == start:
            return [((a, w), m) for w, m in s.out_arrows(a)]
        u, v = node
        blocked = translate(u, -1)
        return [((v, w), m) for w, m in s.out_arrows(v) if w != blocked]

    reach = {start}
    dq = deque([start])
    while dq:
        node = dq.popleft()
        for nxt in state_succ(node):
            if nxt not in reach:
                reach.add(nxt)
                dq.append(nxt)

    accept = {node for node in reach if node != start and node[1] == b}
    if not accept:
        return PathCount.finite(0)

    # co-reachability to an accept state, over the reachable state graph
    preds: dict = {node: [] for node in reach}
    for node in reach:
        for nxt in state_succ(node):
            if nxt in reach:
                preds[nxt].append(node)
    co = set(accept)
    dq = deque(accept)
    while dq:
        node = dq.popleft()
        for p in preds[node]:
            if p not in co:
                co.add(p)
                dq.append(p)
    live = reach & co
    if not live:
        return PathCount.finite(0)

    def live_succ(node):
        return [nxt for nxt in state_succ(node) if nxt in live]

    cyc = _find_cycle(sorted(live, key=_node_key), live_succ)
    if cyc is not None:
        # consecutive states chain head to tail, so projecting each state to
        # its head vertex closes up into a vertex cycle
        arrows = cyc[:-1]
        verts = [arrows[0][0]] + [node[1] for node in arrows]
        return PathCount.infinite(verts)

    pred_count = {v: 0 for v in live}
    for v in live:
        for w in live_succ(v):
            pred_count[w] += 1
    ways = {v: 0 for v in live}
    if start in live:
        ways[start] = 1
    total = 0
    for node in _topo_order(live, live_succ, pred_count):
        w = ways[node]
        if w == 0:
            continue
        for nxt, m in state_succ_weighted(node):
            if nxt in live:
                ways[nxt] += w * m
        if node != start and node[1] == b:
            total += w
    return PathCount.finite(total)


def count_paths_to_shift(q: Quiver, a: ZVertex, n: int) -> PathCount:
    """Paths from a to its n-th inverse translate (n slices up)."""
    if n < 0:
        raise ValueError("the shift must be nonnegative")
    return count_paths_zq(q, a, translate(a, -n))


def enumerate_paths_zq(
    q: Quiver,
    a: ZVertex,
    b: ZVertex,
    limit: int | None = None,
    max_length: int | None = None,
    include_trivial: bool = True,
    window: Window | None = None,
    step_budget: int | None = 200_000,
) -> tuple[list[tuple[tuple[ZVertex, ...], tuple[int, ...]]], bool]:
    """List oriented paths a -> b explicitly, in lexicographic visit order.

    Each path is (vertex sequence, parallel-arrow choices); the k-th choice
    picks one of the parallel arrows for the k-th step, so multiplicities
    show up as distinct paths.  Exploration runs in the slab between the
    two slices (or the given wider window; counts do not change, since
    paths cannot leave their slice range) and only descends into vertices
    that can still reach b.  Returns (paths, truncated); truncated is set
    when the path limit, the length cap, or the step budget cut anything
    off, which only happens in the presence of cycles.
    """
    _require_finite(q)
    q.require_vertex(a.base)
    q.require_vertex(b.base)
    if b.slice < a.slice:
        return [], False
    w = window if window is not None else Window(a.slice, b.slice)
    s = slab(q, w)
    s.require_vertex(a)
    s.require_vertex(b)
    live = slab_ancestors(s, b)
    if a not in live:
        return [], False
    cap = max_length if max_length is not None else len(s.vertices)
    paths: list[tuple[tuple[ZVertex, ...], tuple[int, ...]]] = []
    truncated = False
    seq: list[ZVertex] = [a]
    choice: list[int] = []
    steps = 0

    def walk(v: ZVertex) -> bool:
        nonlocal truncated, steps
        if v == b and (choice or include_trivial):
            if limit is not None and len(paths) >= limit:
                truncated = True
                return False
            paths.append((tuple(seq), tuple(choice)))
        if len(choice) >= cap:
            if any(w2 in live for w2, _m in s.out_arrows(v)):
                truncated = True
            return True
        for w2, m in s.out_arrows(v):
            if w2 not in live:
                continue
            for k in range(m):
                steps += 1
                if step_budget is not None and steps > step_budget:
                    truncated = True
                    return False
                seq.append(w2)
                choice.append(k)
                alive = walk(w2)
                seq.pop()
                choice.pop()
                if not alive:
                    return False
        return True

    walk(a)
    return paths, truncated
