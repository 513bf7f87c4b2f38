"""Light cone and round trip distances, spheres, and light cones.

The right light cone distance d(x, y) on the base quiver is the minimal
number of arrows traversed against their direction over all unoriented
walks from x to y.  Dropping a closed detour from a walk never adds
backward steps, so the minimum over walks equals the minimum over simple
paths and is computed here by 0-1 breadth-first search on the doubled
digraph: each arrow contributes a forward step of cost 0 and a backward
step of cost 1.

On the translation quiver the distance reduces to the base quiver:

    d((i, x), (j, y)) = d(x, y) + (i - j)

because shifting the target by one slice costs exactly one extra backward
crossing.  All distances ignore arrow multiplicity; only existence counts.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .core import (
    AnyQuiver,
    LazyQuiver,
    Quiver,
    UnknownVertexError,
    VertexId,
    induced_subquiver,
    vertex_sort_key,
)
from .zq import (
    Window,
    WindowTooSmallError,
    ZVertex,
    slab,
    slab_ancestors,
    slab_descendants,
    translate,
    zvertex_sort_key,
)

DEFAULT_BUDGET = 1_000_000


class BudgetExhaustedError(RuntimeError):
    """Raised when an exhaustive computation hits its expansion budget."""


@dataclass(frozen=True)
class ExtDistance:
    """A distance value extended with infinity and budget-capped bounds.

    status is one of "finite", "infinite", "at_least".  Finite values may
    be negative.  "at_least" carries a sound lower bound and is returned
    when a search was cut off (by budget or window) before it could settle
    the target; "infinite" is only returned when the search space was
    exhausted.  expansions counts settled vertices and does not take part
    in equality.
    """

    status: str
    value: int | None = None
    bound: int | None = None
    expansions: int = field(default=0, compare=False)

    @classmethod
    def finite(cls, value: int, expansions: int = 0) -> "ExtDistance":
        return cls("finite", value=value, expansions=expansions)

    @classmethod
    def infinite(cls, expansions: int = 0) -> "ExtDistance":
        return cls("infinite", expansions=expansions)

    @classmethod
    def at_least(cls, bound: int, expansions: int = 0) -> "ExtDistance":
        return cls("at_least", bound=bound, expansions=expansions)

    def is_finite(self) -> bool:
        return self.status == "finite"

    def is_infinite(self) -> bool:
        return self.status == "infinite"

    def shifted(self, delta: int) -> "ExtDistance":
        if self.status == "finite":
            return ExtDistance("finite", value=self.value + delta, expansions=self.expansions)
        if self.status == "at_least":
            return ExtDistance("at_least", bound=self.bound + delta, expansions=self.expansions)
        return self

    def plus(self, other: "ExtDistance") -> "ExtDistance":
        """Sum with infinity absorbing; lower bounds add as lower bounds."""
        exp = self.expansions + other.expansions
        if self.status == "infinite" or other.status == "infinite":
            return ExtDistance.infinite(exp)
        if self.status == "finite" and other.status == "finite":
            return ExtDistance.finite(self.value + other.value, exp)
        a = self.value if self.status == "finite" else self.bound
        b = other.value if other.status == "finite" else other.bound
        return ExtDistance.at_least(a + b, exp)

    def to_json(self) -> dict:
        doc: dict = {"status": self.status}
        if self.status == "finite":
            doc["value"] = self.value
        elif self.status == "at_least":
            doc["bound"] = self.bound
        doc["expansions"] = self.expansions
        return doc

    def __str__(self) -> str:
        if self.status == "finite":
            return str(self.value)
        if self.status == "at_least":
            return f">={self.bound}"
        return "inf"


class _SearchSpace:
    """Doubled-digraph neighborhoods, window-scoped for lazy quivers."""

    def __init__(self, q: AnyQuiver, window: Window | None):
        self.q = q
        self.scope: set[VertexId] | None = None
        if isinstance(q, LazyQuiver):
            if window is None:
                raise ValueError("lazy quiver distance queries require a window")
            self.scope = set(window.base_scope(q))

    def require(self, v: VertexId) -> None:
        self.q.require_vertex(v)
        if self.scope is not None and v not in self.scope:
            raise UnknownVertexError(f"vertex {v!r} is outside the window's base scope")

    def steps(self, v: VertexId, reverse: bool) -> list[tuple[VertexId, int]]:
        out = self.q.out_arrows(v)
        inn = self.q.in_arrows(v)
        fwd, bwd = (inn, out) if reverse else (out, inn)
        found = [(w, 0) for w, _m in fwd] + [(w, 1) for w, _m in bwd]
        if self.scope is not None:
            found = [(w, c) for w, c in found if w in self.scope]
        return found

    def touches_boundary(self, v: VertexId) -> bool:
        if self.scope is None:
            return False
        for w, _m in self.q.out_arrows(v):
            if w not in self.scope:
                return True
        for w, _m in self.q.in_arrows(v):
            if w not in self.scope:
                return True
        return False


def _zero_one_search(
    start: VertexId,
    steps: Callable[[VertexId], list[tuple[VertexId, int]]],
    target: VertexId | None = None,
    budget: int | None = None,
) -> tuple[dict[VertexId, int], str, int | None, int]:
    """Deque-based 0-1 shortest path search.

    Returns (settled, outcome, frontier_cost, expansions) where outcome is
    "target", "exhausted" or "capped".  Pop order is nondecreasing in cost,
    so settled costs are final and frontier_cost (the cost of the entry
    about to be settled when the budget ran out) lower-bounds every
    unsettled vertex.
    """
    settled: dict[VertexId, int] = {}
    best = {start: 0}
    dq: deque[tuple[int, VertexId]] = deque([(0, start)])
    expansions = 0
    while dq:
        d, v = dq.popleft()
        if v in settled:
            continue
        if budget is not None and expansions >= budget:
            return settled, "capped", d, expansions
        settled[v] = d
        expansions += 1
        if target is not None and v == target:
            return settled, "target", None, expansions
        for w, c in steps(v):
            nd = d + c
            if w not in settled and nd < best.get(w, nd + 1):
                best[w] = nd
                if c:
                    dq.append((nd, w))
                else:
                    dq.appendleft((nd, w))
    return settled, "exhausted", None, expansions


def _directed_distance(
    q: AnyQuiver,
    src: VertexId,
    dst: VertexId,
    reverse: bool,
    budget: int | None,
    window: Window | None,
) -> ExtDistance:
    space = _SearchSpace(q, window)
    space.require(src)
    space.require(dst)
    settled, outcome, frontier, exp = _zero_one_search(
        src, lambda v: space.steps(v, reverse), target=dst, budget=budget
    )
    if dst in settled:
        return ExtDistance.finite(settled[dst], exp)
    if outcome == "capped":
        return ExtDistance.at_least(frontier if frontier is not None else 0, exp)
    if space.scope is None:
        return ExtDistance.infinite(exp)
    # the window was exhausted: every walk out of it passes a settled vertex
    # adjacent to the boundary and already costs that vertex's distance
    exit_costs = [d for v, d in settled.items() if space.touches_boundary(v)]
    if exit_costs:
        return ExtDistance.at_least(min(exit_costs), exp)
    return ExtDistance.infinite(exp)


def lightcone_distance_q(
    q: AnyQuiver,
    x: VertexId,
    y: VertexId,
    budget: int | None = None,
    window: Window | None = None,
) -> ExtDistance:
    """Right light cone distance d(x, y) on the base quiver.

    For lazy quivers the search runs inside the window's base scope and a
    finite answer is exact for that scope; "infinite" is only claimed when
    the explored region is sealed off from the rest of the family.
    """
    return _directed_distance(q, x, y, reverse=False, budget=budget, window=window)


def left_lightcone_distance_q(
    q: AnyQuiver,
    x: VertexId,
    y: VertexId,
    budget: int | None = None,
    window: Window | None = None,
) -> ExtDistance:
    """Left light cone distance of y seen from x, i.e. d(y, x)."""
    return _directed_distance(q, y, x, reverse=False, budget=budget, window=window)


def lightcone_distance_zq(
    q: AnyQuiver,
    a: ZVertex,
    b: ZVertex,
    budget: int | None = None,
    window: Window | None = None,
) -> ExtDistance:
    """Right light cone distance on ZQ via the slice-shift reduction."""
    base = lightcone_distance_q(q, a.base, b.base, budget=budget, window=window)
    return base.shifted(a.slice - b.slice)


def left_lightcone_distance_zq(
    q: AnyQuiver,
    a: ZVertex,
    b: ZVertex,
    budget: int | None = None,
    window: Window | None = None,
) -> ExtDistance:
    return lightcone_distance_zq(q, b, a, budget=budget, window=window)


def roundtrip_distance_q(
    q: AnyQuiver,
    x: VertexId,
    y: VertexId,
    budget: int | None = None,
    window: Window | None = None,
) -> ExtDistance:
    """Round trip distance d(x, y) + d(y, x); symmetric and nonnegative."""
    there = lightcone_distance_q(q, x, y, budget=budget, window=window)
    back = lightcone_distance_q(q, y, x, budget=budget, window=window)
    return there.plus(back)


def roundtrip_distance_zq(
    q: AnyQuiver,
    a: ZVertex,
    b: ZVertex,
    budget: int | None = None,
    window: Window | None = None,
) -> ExtDistance:
    """Round trip distance on ZQ; the slice shifts cancel, so this only
    depends on the two base vertices."""
    there = lightcone_distance_zq(q, a, b, budget=budget, window=window)
    back = lightcone_distance_zq(q, b, a, budget=budget, window=window)
    return there.plus(back)


def right_distances(
    q: AnyQuiver,
    x: VertexId,
    window: Window | None = None,
    budget: int | None = None,
) -> dict[VertexId, int]:
    """d(x, v) for every v reachable in the (scoped) doubled digraph."""
    space = _SearchSpace(q, window)
    space.require(x)
    settled, outcome, _f, _e = _zero_one_search(
        x, lambda v: space.steps(v, reverse=False), budget=budget
    )
    if outcome == "capped":
        raise BudgetExhaustedError(f"distance sweep from {x!r} exceeded its budget")
    return settled

def left_distances(
    q: AnyQuiver,
    x: VertexId,
    window: Window | None = None,
    budget: int | None = None,
) -> dict[VertexId, int]:
    """d(v, x) for every v that can reach x in the (scoped) doubled digraph."""
    space = _SearchSpace(q, window)
    space.require(x)
    settled, outcome, _f, _e = _zero_one_search(
        x, lambda v: space.steps(v, reverse=True), budget=budget
    )
    if outcome == "capped":
        raise BudgetExhaustedError(f"distance sweep to {x!r} exceeded its budget")
    return settled


def lightcone_distance_zq_oracle(
    q: AnyQuiver, a: ZVertex, b: ZVertex, window: Window
) -> ExtDistance:
    """Definitional right light cone distance on ZQ by per-slice reachability.

    R_j collects the bases whose slice-j copy is reachable from a inside
    the windowed slab.  Paths never decrease the slice, and within the
    slab's base scope the sets R_j only grow with j, so the answer is the
    first slice whose set contains b's base, shifted by b's slice.  If the
    sets stabilize first, no slice ever works and the distance is infinite
    relative to the slab.  The window counts as too small only when the
    slice range ends while the frontier is still moving.  This shares
    nothing with the slice-shift reduction, which makes it a useful
    cross-check.
    """
    bases = window.base_scope(q)
    base_set = set(bases)
    if a.base not in base_set:
        raise UnknownVertexError(f"vertex {a.base!r} is outside the window's base scope")
    if b.base not in base_set:
        raise UnknownVertexError(f"vertex {b.base!r} is outside the window's base scope")
    if a.slice > window.slice_hi:
        raise WindowTooSmallError("the start slice lies beyond the window")
    qr = induced_subquiver(q, bases)

    def forward_closure(seed: set[VertexId]) -> set[VertexId]:
        seen = set(seed)
        dq = deque(seed)
        while dq:
            v = dq.popleft()
            for w, _m in qr.out_arrows(v):
                if w not in seen:
                    seen.add(w)
                    dq.append(w)
        return seen

    reach = forward_closure({a.base})
    j = a.slice
    while True:
        if b.base in reach:
            return ExtDistance.finite(j - b.slice)
        # crossing into slice j+1: (j, x) -> (j+1, y) needs an arrow y -> x
        seed = {w for x in reach for w, _m in qr.in_arrows(x)}
        nxt = forward_closure(seed)
        if nxt == reach:
            return ExtDistance.infinite()
        if j == window.slice_hi:
            raise WindowTooSmallError(
                "slice range exhausted while the reachable set was still growing"
            )
        j += 1
        reach = nxt


@dataclass(frozen=True)
class SphereReport:
    """A sphere around a base vertex with a completeness verdict.

    kind is "roundtrip", "right" or "left".  complete means the member
    list is provably the whole sphere; windowed computations report
    truncated (complete=False) when the supporting ball reaches vertices
    whose neighborhoods extend past the window.
    """

    kind: str
    center: VertexId
    radius: int
    members: tuple[VertexId, ...]
    complete: bool
    explored: int = field(default=0, compare=False)

    @property
    def size(self) -> int:
        return len(self.members)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "center": self.center,
            "radius": self.radius,
            "members": list(self.members),
            "complete": self.complete,
            "explored": self.explored,
        }


class _SphereSpace:
    """Adjacency plus a frontier test for the ball-closure computation."""

    def __init__(
        self,
        out_n: Callable[[VertexId], list[VertexId]],
        in_n: Callable[[VertexId], list[VertexId]],
        frontier: Callable[[VertexId], bool],
    ):
        self.out_n = out_n
        self.in_n = in_n
        self.frontier = frontier


def _space_for_lazy(q: LazyQuiver, scope: set[VertexId]) -> _SphereSpace:
    def out_n(v):
        return [w for w, _m in q.out_arrows(v) if w in scope]

    def in_n(v):
        return [w for w, _m in q.in_arrows(v) if w in scope]

    def frontier(v):
        return any(w not in scope for w, _m in q.out_arrows(v)) or any(
            w not in scope for w, _m in q.in_arrows(v)
        )

    return _SphereSpace(out_n, in_n, frontier)


def _space_for_marked_quiver(q: Quiver, boundary: frozenset) -> _SphereSpace:
    return _SphereSpace(
        lambda v: [w for w, _m in q.out_arrows(v)],
        lambda v: [w for w, _m in q.in_arrows(v)],
        lambda v: v in boundary,
    )


def _closure_costs(
    space: _SphereSpace, x: VertexId, explored: set[VertexId], kind: str
) -> dict[VertexId, int]:
    def steps_fwd(v):
        return [(w, 0) for w in space.out_n(v) if w in explored] + [
            (w, 1) for w in space.in_n(v) if w in explored
        ]

    def steps_bwd(v):
        return [(w, 0) for w in space.in_n(v) if w in explored] + [
            (w, 1) for w in space.out_n(v) if w in explored
        ]

    if kind == "right":
        settled, _o, _f, _e = _zero_one_search(x, steps_fwd)
        return settled
    if kind == "left":
        settled, _o, _f, _e = _zero_one_search(x, steps_bwd)
        return settled
    r, _o, _f, _e = _zero_one_search(x, steps_fwd)
    l, _o2, _f2, _e2 = _zero_one_search(x, steps_bwd)
    return {v: r[v] + l[v] for v in r if v in l}


def _sphere_by_closure(
    space: _SphereSpace, x: VertexId, n: int, kind: str
) -> tuple[tuple[VertexId, ...], bool, int]:
    """Grow a region around x until the radius-n ball closes up.

    Cost estimates inside the explored region only overestimate, and they
    drop as the region grows, so the estimated ball grows monotonically.
    At the fixpoint the ball is closed under taking neighbors, which pins
    the estimates on it to the true distances; the result is complete
    unless some ball member sits on the frontier, where unexplorable
    neighbors could shrink costs further out.
    """
    explored = {x}
    while True:
        cost = _closure_costs(space, x, explored, kind)
        ball = [v for v in explored if v in cost and cost[v] <= n]
        grow: set[VertexId] = set()
        truncated = False
        for v in ball:
            if space.frontier(v):
                truncated = True
            for w in space.out_n(v):
                if w not in explored:
                    grow.add(w)
            for w in space.in_n(v):
                if w not in explored:
                    grow.add(w)
        if grow:
            explored |= grow
            continue
        members = tuple(
            sorted((v for v in explored if cost.get(v) == n), key=vertex_sort_key)
        )
        return members, not truncated, len(explored)


def _sphere(
    q: AnyQuiver, x: VertexId, n: int, kind: str, window: Window | None
) -> SphereReport:
    if isinstance(q, Quiver):
        q.require_vertex(x)
        if n < 0:
            return SphereReport(kind, x, n, (), True, 0)
        if kind == "right":
            cost = right_distances(q, x)
        elif kind == "left":
            cost = left_distances(q, x)
        else:
            r = right_distances(q, x)
            l = left_distances(q, x)
            cost = {v: r[v] + l[v] for v in r if v in l}
        members = tuple(
            sorted((v for v in q.vertices if cost.get(v) == n), key=vertex_sort_key)
        )
        return SphereReport(kind, x, n, members, True, len(q.vertices))
    if window is None:
        raise ValueError("lazy quiver sphere queries require a window")
    scope = set(window.base_scope(q))
    if x not in scope:
        raise UnknownVertexError(f"vertex {x!r} is outside the window's base scope")
    if n < 0:
        return SphereReport(kind, x, n, (), True, 0)
    members, complete, explored = _sphere_by_closure(_space_for_lazy(q, scope), x, n, kind)
    return SphereReport(kind, x, n, members, complete, explored)


def roundtrip_sphere(
    q: AnyQuiver, x: VertexId, n: int, window: Window | None = None
) -> SphereReport:
    """S(x, n) = vertices at round trip distance exactly n from x."""
    return _sphere(q, x, n, "roundtrip", window)


def right_sphere(
    q: AnyQuiver, x: VertexId, n: int, window: Window | None = None
) -> SphereReport:
    """Vertices y with d(x, y) = n."""
    return _sphere(q, x, n, "right", window)


def left_sphere(
    q: AnyQuiver, x: VertexId, n: int, window: Window | None = None
) -> SphereReport:
    """Vertices y with d(y, x) = n."""
    return _sphere(q, x, n, "left", window)


def bounded_sphere(
    q: Quiver, x: VertexId, n: int, kind: str, boundary: Iterable[VertexId]
) -> SphereReport:
    """Sphere on a finite quiver whose neighborhoods are only trusted away
    from `boundary` vertices; reports truncated when the supporting ball
    touches one.  Used to probe windowed materializations honestly."""
    q.require_vertex(x)
    if n < 0:
        return SphereReport(kind, x, n, (), True, 0)
    space = _space_for_marked_quiver(q, frozenset(boundary))
    members, complete, explored = _sphere_by_closure(space, x, n, kind)
    return SphereReport(kind, x, n, members, complete, explored)


def right_lightcone_zq(q: AnyQuiver, a: ZVertex, window: Window) -> tuple[ZVertex, ...]:
    """Slab vertices y reachable from a with tau(y) unreachable.

    Exact for finite base quivers because oriented paths never decrease
    the slice; for lazy quivers the answer is relative to the slab.
    """
    s = slab(q, window)
    s.require_vertex(a)
    desc = slab_descendants(s, a)
    return tuple(
        sorted((y for y in desc if translate(y, 1) not in desc), key=zvertex_sort_key)
    )


def left_lightcone_zq(q: AnyQuiver, a: ZVertex, window: Window) -> tuple[ZVertex, ...]:
    """Slab vertices y that reach a but not tau(a)."""
    s = slab(q, window)
    s.require_vertex(a)
    anc = slab_ancestors(s, a)
    shifted = translate(a, 1)
    anc_shift = slab_ancestors(s, shifted) if s.has_vertex(shifted) else set()
    return tuple(sorted((y for y in anc if y not in anc_shift), key=zvertex_sort_key))
