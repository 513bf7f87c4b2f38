"""The translation quiver ZQ over a base quiver Q.

Vertices are pairs (slice, base).  Inside one slice the arrows copy Q;
between consecutive slices they reverse:

    #arrows((i, x) -> (j, y)) = #(x -> y in Q)  if j == i
                              = #(y -> x in Q)  if j == i + 1
                              = 0               otherwise

The translation tau shifts a vertex one slice down: tau(n, x) = (n - 1, x).
A window cuts a finite slab out of ZQ for inspection and rendering.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .core import (
    AnyQuiver,
    LazyQuiver,
    Quiver,
    UnknownVertexError,
    VertexId,
    vertex_sort_key,
    vertex_token,
)


class WindowTooSmallError(ValueError):
    """Raised when a windowed computation cannot reach a decision."""


@dataclass(frozen=True)
class ZVertex:
    slice: int
    base: VertexId


def zvertex_sort_key(v: ZVertex) -> tuple:
    return (v.slice,) + vertex_sort_key(v.base)


def format_zvertex(v: ZVertex) -> str:
    return f"{v.slice}:{v.base}"


def parse_zvertex(text: str) -> ZVertex:
    """Parse the ``slice:base`` form, e.g. ``-1:2`` or ``0:x``.

    The base is decoded like a vertex name in a quiver file, so numeric
    bases come back as ints.
    """
    head, sep, tail = text.partition(":")
    if not sep or not tail:
        raise ValueError(f"expected 'slice:base', got {text!r}")
    try:
        n = int(head)
    except ValueError:
        raise ValueError(f"slice {head!r} is not an integer in {text!r}") from None
    return ZVertex(n, vertex_token(tail))


def translate(a: ZVertex, k: int = 1) -> ZVertex:
    """The k-th power of the translation: (n, x) -> (n - k, x)."""
    return ZVertex(a.slice - k, a.base)


def embed(q: AnyQuiver, x: VertexId) -> ZVertex:
    """Place a base vertex in slice 0."""
    q.require_vertex(x)
    return ZVertex(0, x)


def arrow_multiplicity(q: AnyQuiver, a: ZVertex, b: ZVertex) -> int:
    """Number of arrows a -> b in ZQ, by the slice rule above."""
    q.require_vertex(a.base)
    q.require_vertex(b.base)
    if b.slice == a.slice:
        return q.arrow_multiplicity(a.base, b.base)
    if b.slice == a.slice + 1:
        return q.arrow_multiplicity(b.base, a.base)
    return 0


def out_neighbors(q: AnyQuiver, a: ZVertex) -> list[tuple[ZVertex, int]]:
    """Arrow targets of a in ZQ with multiplicities.

    Same-slice targets come from out-arrows of the base; next-slice targets
    come from in-arrows (sources y of y -> base give a -> (slice+1, y)).
    """
    q.require_vertex(a.base)
    found = [(ZVertex(a.slice, w), m) for w, m in q.out_arrows(a.base)]
    found += [(ZVertex(a.slice + 1, w), m) for w, m in q.in_arrows(a.base)]
    found.sort(key=lambda vm: zvertex_sort_key(vm[0]))
    return found


def in_neighbors(q: AnyQuiver, a: ZVertex) -> list[tuple[ZVertex, int]]:
    """Arrow sources of a in ZQ with multiplicities."""
    q.require_vertex(a.base)
    found = [(ZVertex(a.slice, w), m) for w, m in q.in_arrows(a.base)]
    found += [(ZVertex(a.slice - 1, w), m) for w, m in q.out_arrows(a.base)]
    found.sort(key=lambda vm: zvertex_sort_key(vm[0]))
    return found


@dataclass(frozen=True)
class Window:
    """A slice interval plus, for integer-indexed families, a base interval.

    An empty slice range (lo > hi) is allowed and yields an empty slab.
    """

    slice_lo: int
    slice_hi: int
    base_lo: int | None = None
    base_hi: int | None = None

    @classmethod
    def radius(cls, r: int) -> "Window":
        return cls(-r, r, -r, r)

    def base_scope(self, q: AnyQuiver) -> tuple[VertexId, ...]:
        """The base vertices this window keeps, in deterministic order."""
        if isinstance(q, Quiver):
            return q.vertices
        if q.vertices is not None:
            return tuple(sorted(q.vertices, key=vertex_sort_key))
        if not q.integer_indexed:
            raise ValueError(f"family {q.name!r} has no finite base enumeration")
        if self.base_lo is None or self.base_hi is None:
            raise ValueError("a base interval is required for integer-indexed families")
        return tuple(
            i for i in range(self.base_lo, self.base_hi + 1) if q.has_vertex(i)
        )

    def contains_slice(self, n: int) -> bool:
        return self.slice_lo <= n <= self.slice_hi


class Slab:
    """A finite piece of ZQ: the vertices (n, x) with n in the window's slice
    range and x in its base scope, and all arrows among them."""

    def __init__(
        self,
        window: Window,
        vertices: Iterable[ZVertex],
        arrows: dict[tuple[ZVertex, ZVertex], int],
    ):
        self.window = window
        self._vertices = tuple(sorted(vertices, key=zvertex_sort_key))
        self._vertex_set = frozenset(self._vertices)
        self._arrows = dict(arrows)
        out: dict[ZVertex, dict[ZVertex, int]] = {v: {} for v in self._vertices}
        inc: dict[ZVertex, dict[ZVertex, int]] = {v: {} for v in self._vertices}
        for (src, dst), m in arrows.items():
            out[src][dst] = m
            inc[dst][src] = m
        self._out = out
        self._in = inc

    @property
    def vertices(self) -> tuple[ZVertex, ...]:
        return self._vertices

    def has_vertex(self, v: ZVertex) -> bool:
        return v in self._vertex_set

    def require_vertex(self, v: ZVertex) -> None:
        if v not in self._vertex_set:
            raise UnknownVertexError(f"{format_zvertex(v)} is outside the slab")

    def arrow_multiplicity(self, a: ZVertex, b: ZVertex) -> int:
        return self._arrows.get((a, b), 0)

    def arrow_items(self) -> list[tuple[tuple[ZVertex, ZVertex], int]]:
        return sorted(
            self._arrows.items(),
            key=lambda kv: (zvertex_sort_key(kv[0][0]), zvertex_sort_key(kv[0][1])),
        )

    def out_arrows(self, v: ZVertex) -> list[tuple[ZVertex, int]]:
        self.require_vertex(v)
        return sorted(self._out[v].items(), key=lambda wm: zvertex_sort_key(wm[0]))

    def in_arrows(self, v: ZVertex) -> list[tuple[ZVertex, int]]:
        self.require_vertex(v)
        return sorted(self._in[v].items(), key=lambda wm: zvertex_sort_key(wm[0]))

    def tau(self, a: ZVertex) -> ZVertex | None:
        """Window-restricted translation: None when the image leaves the slab."""
        img = translate(a, 1)
        return img if img in self._vertex_set else None

    def tau_inv(self, a: ZVertex) -> ZVertex | None:
        img = translate(a, -1)
        return img if img in self._vertex_set else None

    def as_quiver(self) -> Quiver:
        """Flatten to a finite quiver with 'slice:base' vertex names."""
        names = {v: format_zvertex(v) for v in self._vertices}
        return Quiver(
            names.values(),
            {(names[s], names[t]): m for (s, t), m in self._arrows.items()},
        )

    def __repr__(self) -> str:
        return (
            f"Slab(slices [{self.window.slice_lo}, {self.window.slice_hi}], "
            f"{len(self._vertices)} vertices)"
        )


def slab(q: AnyQuiver, window: Window) -> Slab:
    """Materialize the windowed slab of ZQ."""
    bases = window.base_scope(q)
    verts = [
        ZVertex(n, x)
        for n in range(window.slice_lo, window.slice_hi + 1)
        for x in bases
    ]
    vset = set(verts)
    arrows: dict[tuple[ZVertex, ZVertex], int] = {}
    for v in verts:
        for w, m in out_neighbors(q, v):
            if w in vset:
                arrows[(v, w)] = m
    return Slab(window, verts, arrows)


def slab_descendants(s: Slab, start: ZVertex) -> set[ZVertex]:
    """Vertices reachable from start by oriented paths inside the slab."""
    s.require_vertex(start)
    seen = {start}
    dq = deque([start])
    while dq:
        v = dq.popleft()
        for w, _m in s.out_arrows(v):
            if w not in seen:
                seen.add(w)
                dq.append(w)
    return seen


def slab_ancestors(s: Slab, target: ZVertex) -> set[ZVertex]:
    """Vertices from which target is reachable by oriented paths in the slab."""
    s.require_vertex(target)
    seen = {target}
    dq = deque([target])
    while dq:
        v = dq.popleft()
        for w, _m in s.in_arrows(v):
            if w not in seen:
                seen.add(w)
                dq.append(w)
    return seen
