"""Finite quivers and lazily enumerated quiver families.

A quiver is a directed multigraph.  Finite quivers store arrows as a
multiplicity map ``(src, dst) -> count``; lazy quivers describe a possibly
infinite vertex set through membership and neighbor-enumeration callbacks
and are always queried through an explicit finite scope.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Mapping

VertexId = str | int

_INT_TOKEN = re.compile(r"-?\d+")


def vertex_token(token: str) -> VertexId:
    """Decode a vertex name from file text: integer-looking tokens become ints.

    Only an optional minus sign followed by digits counts; anything else
    (including forms like ``+3`` or ``1_0``) stays a plain string.
    """
    if _INT_TOKEN.fullmatch(token):
        return int(token)
    return token


class QuiverParseError(ValueError):
    """Raised for malformed quiver file text."""

    def __init__(self, message: str, line_no: int):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class UnknownVertexError(ValueError):
    """Raised when an operation names a vertex outside the quiver or scope."""


def vertex_sort_key(v: VertexId) -> tuple:
    # ints sort before strings so mixed collections still order deterministically
    if isinstance(v, int):
        return (0, v, "")
    return (1, 0, v)


@dataclass(frozen=True)
class Diagnostic:
    severity: str  # "error" or "warning"
    message: str
    witness: tuple = ()


class Quiver:
    """A finite directed multigraph with parallel arrows counted, not listed."""

    def __init__(
        self,
        vertices: Iterable[VertexId],
        arrows: Mapping[tuple[VertexId, VertexId], int]
        | Iterable[tuple[VertexId, VertexId]] = (),
    ):
        vs = set(vertices)
        mult: dict[tuple[VertexId, VertexId], int] = {}
        if isinstance(arrows, Mapping):
            items: Iterable = arrows.items()
        else:
            items = ((pair, 1) for pair in arrows)
        for (src, dst), m in items:
            if not isinstance(m, int) or m < 1:
                raise ValueError(f"arrow {src}->{dst} has multiplicity {m!r}")
            mult[(src, dst)] = mult.get((src, dst), 0) + m
        for src, dst in mult:
            for v in (src, dst):
                if v not in vs:
                    raise UnknownVertexError(f"arrow endpoint {v!r} is not a vertex")
        self._vertices: tuple[VertexId, ...] = tuple(sorted(vs, key=vertex_sort_key))
        self._vertex_set = frozenset(vs)
        self._arrows = mult
        out: dict[VertexId, dict[VertexId, int]] = {v: {} for v in self._vertices}
        inc: dict[VertexId, dict[VertexId, int]] = {v: {} for v in self._vertices}
        for (src, dst), m in mult.items():
            out[src][dst] = m
            inc[dst][src] = m
        self._out = out
        self._in = inc

    @property
    def vertices(self) -> tuple[VertexId, ...]:
        return self._vertices

    def has_vertex(self, v: VertexId) -> bool:
        return v in self._vertex_set

    def require_vertex(self, v: VertexId) -> None:
        if v not in self._vertex_set:
            raise UnknownVertexError(f"unknown vertex {v!r}")

    def arrow_multiplicity(self, src: VertexId, dst: VertexId) -> int:
        return self._arrows.get((src, dst), 0)

    def arrow_items(self) -> list[tuple[tuple[VertexId, VertexId], int]]:
        return sorted(
            self._arrows.items(),
            key=lambda kv: (vertex_sort_key(kv[0][0]), vertex_sort_key(kv[0][1])),
        )

    def out_arrows(self, v: VertexId) -> list[tuple[VertexId, int]]:
        """Pairs (target, multiplicity), deterministically ordered."""
        self.require_vertex(v)
        return sorted(self._out[v].items(), key=lambda wm: vertex_sort_key(wm[0]))

    def in_arrows(self, v: VertexId) -> list[tuple[VertexId, int]]:
        """Pairs (source, multiplicity), deterministically ordered."""
        self.require_vertex(v)
        return sorted(self._in[v].items(), key=lambda wm: vertex_sort_key(wm[0]))

    def arrow_count(self) -> int:
        return sum(self._arrows.values())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Quiver):
            return NotImplemented
        return self._vertex_set == other._vertex_set and self._arrows == other._arrows

    def __hash__(self) -> int:
        return hash((self._vertex_set, frozenset(self._arrows.items())))

    def __repr__(self) -> str:
        return f"Quiver({len(self._vertices)} vertices, {self.arrow_count()} arrows)"


class LazyQuiver:
    """A quiver given by callbacks instead of tables.

    ``out_arrows`` and ``in_arrows`` must agree: ``(w, m)`` appears in
    ``out_arrows(v)`` exactly when ``(v, m)`` appears in ``in_arrows(w)``.
    ``vertices`` is set for families whose vertex set happens to be finite;
    ``integer_indexed`` marks families living on a range of integers, which
    is what window base intervals slice into.
    """

    def __init__(
        self,
        name: str,
        contains: Callable[[VertexId], bool],
        out_arrows: Callable[[VertexId], list[tuple[VertexId, int]]],
        in_arrows: Callable[[VertexId], list[tuple[VertexId, int]]],
        vertices: tuple[VertexId, ...] | None = None,
        integer_indexed: bool = True,
    ):
        self.name = name
        self._contains = contains
        self._out = out_arrows
        self._in = in_arrows
        self.vertices = vertices
        self.integer_indexed = integer_indexed

    def has_vertex(self, v: VertexId) -> bool:
        return self._contains(v)

    def require_vertex(self, v: VertexId) -> None:
        if not self._contains(v):
            raise UnknownVertexError(f"vertex {v!r} is not in family {self.name!r}")

    def out_arrows(self, v: VertexId) -> list[tuple[VertexId, int]]:
        self.require_vertex(v)
        return sorted(self._out(v), key=lambda wm: vertex_sort_key(wm[0]))

    def in_arrows(self, v: VertexId) -> list[tuple[VertexId, int]]:
        self.require_vertex(v)
        return sorted(self._in(v), key=lambda wm: vertex_sort_key(wm[0]))

    def arrow_multiplicity(self, src: VertexId, dst: VertexId) -> int:
        for w, m in self._out(src):
            if w == dst:
                return m
        return 0

    def __repr__(self) -> str:
        return f"LazyQuiver({self.name!r})"


AnyQuiver = Quiver | LazyQuiver


def check_lazy_consistency(q: LazyQuiver, sample: Iterable[VertexId]) -> list[Diagnostic]:
    """Probe that the two arrow enumerations of a lazy quiver mirror each other."""
    problems: list[Diagnostic] = []
    sample = [v for v in sample if q.has_vertex(v)]
    for v in sample:
        for w, m in q.out_arrows(v):
            back = dict(q.in_arrows(w))
            if back.get(v) != m:
                problems.append(
                    Diagnostic("error", "out_arrows not mirrored by in_arrows", (v, w, m))
                )
        for w, m in q.in_arrows(v):
            fwd = dict(q.out_arrows(w))
            if fwd.get(v) != m:
                problems.append(
                    Diagnostic("error", "in_arrows not mirrored by out_arrows", (w, v, m))
                )
    return problems


def parse_quiver(
    text: str, strict: bool = False, diagnostics: list[Diagnostic] | None = None
) -> Quiver:
    """Parse the line-oriented quiver format.

    Directives are ``vertex <id>`` and ``arrow <src> <dst> [multiplicity]``;
    ``#`` starts a comment.  Vertex declarations may appear anywhere, so
    endpoint checks run after the whole text is read.  In lenient mode
    undeclared endpoints are added implicitly (and noted in ``diagnostics``
    when a list is passed); in strict mode they are errors.
    """
    declared: set[VertexId] = set()
    arrow_lines: list[tuple[int, VertexId, VertexId, int]] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "vertex":
            if len(parts) != 2:
                raise QuiverParseError("expected 'vertex <id>'", line_no)
            declared.add(vertex_token(parts[1]))
        elif parts[0] == "arrow":
            if len(parts) not in (3, 4):
                raise QuiverParseError(
                    "expected 'arrow <src> <dst> [multiplicity]'", line_no
                )
            m = 1
            if len(parts) == 4:
                try:
                    m = int(parts[3])
                except ValueError:
                    raise QuiverParseError(
                        f"multiplicity {parts[3]!r} is not an integer", line_no
                    ) from None
                if m < 1:
                    raise QuiverParseError("multiplicity must be positive", line_no)
            arrow_lines.append((line_no, vertex_token(parts[1]), vertex_token(parts[2]), m))
        else:
            raise QuiverParseError(f"unknown directive {parts[0]!r}", line_no)
    vertices = set(declared)
    arrows: dict[tuple[VertexId, VertexId], int] = {}
    for line_no, src, dst, m in arrow_lines:
        for v in (src, dst):
            if v not in declared:
                if strict:
                    raise QuiverParseError(f"undeclared endpoint {v!r}", line_no)
                if v not in vertices and diagnostics is not None:
                    diagnostics.append(
                        Diagnostic(
                            "warning",
                            f"vertex {v!r} declared implicitly by an arrow",
                            (line_no,),
                        )
                    )
                vertices.add(v)
        arrows[(src, dst)] = arrows.get((src, dst), 0) + m
    return Quiver(vertices, arrows)


def serialize_quiver(q: Quiver) -> str:
    """Inverse of parse_quiver up to ordering: vertices first, then arrows, sorted."""
    lines = [f"vertex {v}" for v in q.vertices]
    for (src, dst), m in q.arrow_items():
        if m == 1:
            lines.append(f"arrow {src} {dst}")
        else:
            lines.append(f"arrow {src} {dst} {m}")
    return "\n".join(lines) + "\n"


def load_quiver(path: str, strict: bool = False) -> Quiver:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_quiver(fh.read(), strict=strict)


def is_acyclic(q: Quiver) -> tuple[bool, list[VertexId] | None]:
    """Decide acyclicity; on failure return a cycle as a vertex sequence.

    The witness starts and ends at the same vertex and every consecutive
    pair is an arrow.  A loop comes back as ``[v, v]``.
    """
    WHITE, GRAY, BLACK = 0, 1, 2
    color = {v: WHITE for v in q.vertices}
    parent: dict[VertexId, VertexId] = {}
    for root in q.vertices:
        if color[root] != WHITE:
            continue
        color[root] = GRAY
        stack: list[tuple[VertexId, Iterator[tuple[VertexId, int]]]] = [
            (root, iter(q.out_arrows(root)))
        ]
        while stack:
            v, it = stack[-1]
            entered = False
            for w, _m in it:
                if color[w] == WHITE:
                    color[w] = GRAY
                    parent[w] = v
                    stack.append((w, iter(q.out_arrows(w))))
                    entered = True
                    break
                if color[w] == GRAY:
                    # back edge v -> w closes the cycle w ... v w
                    seq = [v]
                    u = v
                    while u != w:
                        u = parent[u]
                        seq.append(u)
                    seq.reverse()
                    return False, seq + [seq[0]]
            if not entered:
                color[v] = BLACK
                stack.pop()
    return True, None


def is_path_finite(q: Quiver) -> bool:
    """A finite quiver admits arbitrarily long paths exactly when it has a cycle."""
    if isinstance(q, LazyQuiver):
        raise TypeError("path finiteness is only decidable for finite quivers")
    return is_acyclic(q)[0]


def connected_components(q: Quiver) -> list[tuple[VertexId, ...]]:
    """Components of the underlying undirected graph, each sorted, then sorted."""
    seen: set[VertexId] = set()
    comps: list[tuple[VertexId, ...]] = []
    for v in q.vertices:
        if v in seen:
            continue
        comp = []
        dq = deque([v])
        seen.add(v)
        while dq:
            u = dq.popleft()
            comp.append(u)
            for w, _m in q.out_arrows(u):
                if w not in seen:
                    seen.add(w)
                    dq.append(w)
            for w, _m in q.in_arrows(u):
                if w not in seen:
                    seen.add(w)
                    dq.append(w)
        comps.append(tuple(sorted(comp, key=vertex_sort_key)))
    comps.sort(key=lambda c: vertex_sort_key(c[0]))
    return comps


def is_connected(q: Quiver) -> bool:
    return len(connected_components(q)) <= 1


@dataclass(frozen=True)
class LocalFinitenessReport:
    """Verdict of a local finiteness check.

    ``exact`` is True only for finite quivers, where the answer is trivially
    yes; for lazy quivers the check is a probe over the supplied vertices
    and never a universal claim.  Neighbor counts are over distinct
    neighboring vertices, ignoring multiplicity and direction.
    """

    ok: bool
    exact: bool
    neighbor_counts: tuple[tuple[VertexId, int], ...] = ()


def is_locally_finite(
    q: AnyQuiver, probe: Iterable[VertexId] | None = None
) -> LocalFinitenessReport:
    if isinstance(q, Quiver):
        counts = tuple(
            (v, len({w for w, _ in q.out_arrows(v)} | {w for w, _ in q.in_arrows(v)}))
            for v in q.vertices
        )
        return LocalFinitenessReport(True, True, counts)
    sample = list(probe or ())
    if not sample:
        raise ValueError("a non-empty probe is required for lazy quivers")
    counts = []
    for v in sample:
        q.require_vertex(v)
        nbrs = {w for w, _ in q.out_arrows(v)} | {w for w, _ in q.in_arrows(v)}
        counts.append((v, len(nbrs)))
    return LocalFinitenessReport(True, False, tuple(counts))


def opposite(q: Quiver) -> Quiver:
    """The same vertices with every arrow reversed."""
    return Quiver(q.vertices, {(dst, src): m for (src, dst), m in q.arrow_items()})


def induced_subquiver(q: AnyQuiver, bases: Iterable[VertexId]) -> Quiver:
    """Materialize the full subquiver on the given vertices.

    Works for lazy quivers too, which makes it the standard way to turn a
    windowed scope into something the finite algorithms can chew on.
    """
    keep = set(bases)
    for v in keep:
        q.require_vertex(v)
    arrows: dict[tuple[VertexId, VertexId], int] = {}
    for v in keep:
        for w, m in q.out_arrows(v):
            if w in keep:
                arrows[(v, w)] = m
    return Quiver(keep, arrows)
