"""Sections of the translation quiver: construction, verification, probes.

A section picks one vertex out of every tau-orbit of ZQ, recorded as a map
base vertex -> slice.  The operative criterion is that the chosen vertices
pairwise keep nonnegative right light cone distances; an equivalent local
form is the arrow condition: for every arrow x -> z out of a chosen x,
z or tau(z) is chosen, and for every arrow z -> x into it, z or
tau^{-1}(z) is chosen.

Given a connected acyclic base quiver and a center c = (i, x), choosing

    slice(z) = i + d(x, z) - floor((d(x, z) + d(z, x)) / 2)

splits every round trip distance from the center as evenly as possible
(d(c, y) = floor(d/2) and d(y, c) = ceil(d/2) for chosen y) and the result
is a section.  Placing each orbit at i + d(x, z) instead picks out the
right light cone of the center, which is also a section; i - d(z, x) gives
the left one.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Mapping

from .core import (
    AnyQuiver,
    LazyQuiver,
    Quiver,
    UnknownVertexError,
    VertexId,
    connected_components,
    induced_subquiver,
    is_acyclic,
    is_connected,
    vertex_sort_key,
    vertex_token,
)
from .distances import (
    SphereReport,
    bounded_sphere,
    left_distances,
    right_distances,
    roundtrip_sphere,
)
from .zq import Window, ZVertex, in_neighbors, out_neighbors, zvertex_sort_key


class CyclicQuiverError(ValueError):
    """Raised when a construction requires an acyclic (scope of a) quiver."""


class DisconnectedScopeError(ValueError):
    """Raised when a construction requires a connected (scope of a) quiver."""


class InvalidSectionError(ValueError):
    """Raised when an operation requires a valid section."""


def _decode_base(raw) -> VertexId:
    """JSON keeps int bases as ints; decode string bases like file tokens."""
    return raw if isinstance(raw, int) else vertex_token(raw)


class Section:
    """A choice of one slice per base vertex: one vertex per tau-orbit."""

    def __init__(self, selection: Mapping[VertexId, int], center: ZVertex | None = None):
        self.selection: dict[VertexId, int] = dict(selection)
        self.center = center

    def bases(self) -> tuple[VertexId, ...]:
        return tuple(sorted(self.selection, key=vertex_sort_key))

    def chosen(self, base: VertexId) -> ZVertex:
        if base not in self.selection:
            raise UnknownVertexError(f"no slice chosen for base {base!r}")
        return ZVertex(self.selection[base], base)

    def vertices(self) -> tuple[ZVertex, ...]:
        return tuple(
            sorted((ZVertex(n, b) for b, n in self.selection.items()), key=zvertex_sort_key)
        )

    def to_json(self) -> dict:
        doc: dict = {
            "selection": [
                {"base": b, "slice": n}
                for b, n in sorted(self.selection.items(), key=lambda kv: vertex_sort_key(kv[0]))
            ]
        }
        doc["center"] = (
            {"slice": self.center.slice, "base": self.center.base} if self.center else None
        )
        return doc

    @classmethod
    def from_json(cls, doc: dict) -> "Section":
        sel = {}
        for row in doc["selection"]:
            sel[_decode_base(row["base"])] = int(row["slice"])
        center = None
        if doc.get("center"):
            center = ZVertex(int(doc["center"]["slice"]), _decode_base(doc["center"]["base"]))
        return cls(sel, center=center)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Section):
            return NotImplemented
        return self.selection == other.selection

    def __repr__(self) -> str:
        return f"Section({len(self.selection)} orbits)"


def _scope_bases(q: AnyQuiver, scope: Window | None) -> tuple[VertexId, ...]:
    if isinstance(q, Quiver):
        return q.vertices
    if scope is None:
        raise ValueError("lazy quivers require a window scope")
    return scope.base_scope(q)


def _prepared_scope(q: AnyQuiver, scope: Window | None) -> Quiver:
    """Materialize and vet the working subquiver for section construction."""
    bases = _scope_bases(q, scope)
    qr = induced_subquiver(q, bases)
    ok, cycle = is_acyclic(qr)
    if not ok:
        raise CyclicQuiverError(f"cycle {'->'.join(str(v) for v in cycle)}")
    if not is_connected(qr):
        sizes = [len(c) for c in connected_components(qr)]
        raise DisconnectedScopeError(f"scope splits into components of sizes {sizes}")
    return qr


def build_section(
    q: AnyQuiver,
    center: ZVertex,
    scope: Window | None = None,
    budget: int | None = None,
) -> Section:
    """The balanced section through the center: round trips from the center
    split as floor(d/2) out and ceil(d/2) back."""
    qr = _prepared_scope(q, scope)
    qr.require_vertex(center.base)
    r = right_distances(qr, center.base, budget=budget)
    l = left_distances(qr, center.base, budget=budget)
    sel = {}
    for z in qr.vertices:
        rt = r[z] + l[z]
        sel[z] = center.slice + r[z] - rt // 2
    return Section(sel, center=center)


def lightcone_section(
    q: AnyQuiver,
    center: ZVertex,
    scope: Window | None = None,
    side: str = "right",
    budget: int | None = None,
) -> Section:
    """The right (or left) light cone of the center as a section."""
    if side not in ("right", "left"):
        raise ValueError(f"side must be 'right' or 'left', got {side!r}")
    qr = _prepared_scope(q, scope)
    qr.require_vertex(center.base)
    if side == "right":
        r = right_distances(qr, center.base, budget=budget)
        sel = {z: center.slice + r[z] for z in qr.vertices}
    else:
        l = left_distances(qr, center.base, budget=budget)
        sel = {z: center.slice - l[z] for z in qr.vertices}
    return Section(sel, center=center)


@dataclass(frozen=True)
class SectionReport:
    """Outcome of checking a selection against the section criteria.

    negative_pairs witnesses violations of the pairwise criterion as
    (chosen a, chosen b, d(a, b)); arrow_violations witnesses the local
    arrow condition as (chosen vertex, offending neighbor, direction).
    Out-of-scope selection entries are skipped, not judged.
    """

    valid: bool
    negative_pairs: tuple[tuple[ZVertex, ZVertex, int], ...]
    arrow_violations: tuple[tuple[ZVertex, ZVertex, str], ...]
    coverage_gaps: tuple[VertexId, ...]
    checked_pairs: int
    sampled: bool
    out_of_scope: int = 0

    def to_json(self) -> dict:
        return {
            "valid": self.valid,
            "negative_pairs": [
                {
                    "from": {"slice": a.slice, "base": a.base},
                    "to": {"slice": b.slice, "base": b.base},
                    "distance": d,
                }
                for a, b, d in self.negative_pairs
            ],
            "arrow_violations": [
                {
                    "chosen": {"slice": a.slice, "base": a.base},
                    "neighbor": {"slice": z.slice, "base": z.base},
                    "direction": side,
                }
                for a, z, side in self.arrow_violations
            ],
            "coverage_gaps": list(self.coverage_gaps),
            "checked_pairs": self.checked_pairs,
            "sampled": self.sampled,
            "out_of_scope": self.out_of_scope,
        }


def verify_section(
    q: AnyQuiver,
    section: Section,
    scope: Window | None = None,
    pair_budget: int | None = None,
    first_witness_only: bool = False,
    seed: int = 0,
) -> SectionReport:
    """Check both section criteria over the (scoped) selection.

    The pairwise criterion is exhaustive unless the count of ordered pairs
    exceeds pair_budget, in which case a seeded sample is drawn and the
    report is marked sampled.  For lazy quivers all distances are relative
    to the window scope.
    """
    scope_bases = _scope_bases(q, scope)
    scope_set = set(scope_bases)
    sel = {b: n for b, n in section.selection.items() if b in scope_set}
    out_of_scope = len(section.selection) - len(sel)
    gaps = tuple(b for b in scope_bases if b not in sel)
    qr = induced_subquiver(q, scope_bases)

    bases = sorted(sel, key=vertex_sort_key)
    pairs = [(u, v) for u in bases for v in bases if u != v]
    sampled = False
    if pair_budget is not None and len(pairs) > pair_budget:
        rng = random.Random(seed)
        pairs = sorted(
            rng.sample(pairs, pair_budget),
            key=lambda uv: (vertex_sort_key(uv[0]), vertex_sort_key(uv[1])),
        )
        sampled = True
    rmaps: dict[VertexId, dict[VertexId, int]] = {}
    negative: list[tuple[ZVertex, ZVertex, int]] = []
    checked = 0
    for u, v in pairs:
        if u not in rmaps:
            rmaps[u] = right_distances(qr, u)
        base_d = rmaps[u].get(v)
        checked += 1
        if base_d is None:
            continue
        d = base_d + sel[u] - sel[v]
        if d < 0:
            negative.append((ZVertex(sel[u], u), ZVertex(sel[v], v), d))
            if first_witness_only:
                break

    violations: list[tuple[ZVertex, ZVertex, str]] = []
    for b in bases:
        x = ZVertex(sel[b], b)
        for z, _m in out_neighbors(qr, x):
            jz = sel.get(z.base)
            if jz is None:
                continue
            if jz not in (z.slice, z.slice - 1):
                violations.append((x, z, "out"))
                if first_witness_only:
                    break
        if violations and first_witness_only:
            break
        for z, _m in in_neighbors(qr, x):
            jz = sel.get(z.base)
            if jz is None:
                continue
            if jz not in (z.slice, z.slice + 1):
                violations.append((x, z, "in"))
                if first_witness_only:
                    break
        if violations and first_witness_only:
            break

    valid = not negative and not violations and not gaps
    return SectionReport(
        valid=valid,
        negative_pairs=tuple(negative),
        arrow_violations=tuple(violations),
        coverage_gaps=gaps,
        checked_pairs=checked,
        sampled=sampled,
        out_of_scope=out_of_scope,
    )


def section_quiver(
    q: AnyQuiver, section: Section, scope: Window | None = None, check: bool = True
) -> Quiver:
    """The full subquiver of ZQ on the chosen vertices, flattened to the
    base vertex names.  Arrows within a slice copy the base quiver; arrows
    to the next slice reverse it."""
    if check:
        report = verify_section(q, section, scope=scope)
        if not report.valid:
            raise InvalidSectionError(
                f"selection fails the section criteria: "
                f"{len(report.negative_pairs)} negative pairs, "
                f"{len(report.arrow_violations)} arrow violations, "
                f"{len(report.coverage_gaps)} coverage gaps"
            )
    scope_set = set(_scope_bases(q, scope))
    sel = {b: n for b, n in section.selection.items() if b in scope_set}
    arrows: dict[tuple[VertexId, VertexId], int] = {}
    for b, j in sel.items():
        for z, m in out_neighbors(q, ZVertex(j, b)):
            if sel.get(z.base) == z.slice:
                arrows[(b, z.base)] = m
    return Quiver(sel.keys(), arrows)


@dataclass(frozen=True)
class SLFReport:
    """Strong local finiteness verdict.

    Exact verdicts ("pass"/"fail") come from finite quivers or from a
    definitive cycle inside a window.  Windowed probes report the certified
    sphere radii per side; a window cannot certify a sphere-infiniteness
    failure, only stop early, and window_limited_at records where (-1 when
    the sweep finished inside the window).  "probe-fail" means some side
    could not even certify radius 0: the ball of the immediate cone trace
    outgrew the window, which is how an infinite sphere looks from inside
    any window.  "probe-pass" means every sphere the window could decide
    was complete.
    """

    verdict: str
    exact: bool
    connected: bool
    acyclic: bool
    cycle_witness: tuple | None = None
    sphere_probes: tuple[SphereReport, ...] = ()
    certified_radius: tuple[tuple[str, int], ...] = ()
    window_limited_at: tuple[tuple[str, int], ...] = ()

    def ok(self) -> bool:
        return self.verdict in ("pass", "probe-pass")

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "exact": self.exact,
            "connected": self.connected,
            "acyclic": self.acyclic,
            "cycle_witness": list(self.cycle_witness) if self.cycle_witness else None,
            "sphere_probes": [p.to_json() for p in self.sphere_probes],
            "certified_radius": [list(kv) for kv in self.certified_radius],
            "window_limited_at": [list(kv) for kv in self.window_limited_at],
        }


def is_strongly_locally_finite(q: Quiver) -> SLFReport:
    """Exact check for finite quivers: local finiteness is immediate and
    arbitrarily long paths exist exactly when there is a cycle."""
    if isinstance(q, LazyQuiver):
        raise TypeError("use probe_strongly_locally_finite with a window materialization")
    ok, cycle = is_acyclic(q)
    return SLFReport(
        verdict="pass" if ok else "fail",
        exact=True,
        connected=is_connected(q),
        acyclic=ok,
        cycle_witness=tuple(cycle) if cycle else None,
    )


def probe_strongly_locally_finite(
    qp: Quiver,
    base: VertexId,
    boundary: Iterable[VertexId],
    max_radius: int | None = None,
) -> SLFReport:
    """Probe a window materialization whose neighborhoods are only trusted
    away from `boundary`.

    A cycle is definitive and fails exactly.  Otherwise right and left
    spheres around `base` are swept radius by radius; each sphere that
    closes up away from the boundary is certified complete, and the sweep
    for a side stops either cleanly (an empty certified sphere: realized
    radii on a component form an interval, so nothing larger exists) or at
    the first window-limited radius.  Failing to certify even radius 0 on
    some side downgrades the verdict to probe-fail.
    """
    qp.require_vertex(base)
    boundary = frozenset(boundary)
    ok, cycle = is_acyclic(qp)
    if not ok:
        return SLFReport(
            verdict="fail",
            exact=True,
            connected=is_connected(qp),
            acyclic=False,
            cycle_witness=tuple(cycle),
        )
    cap = max_radius if max_radius is not None else len(qp.vertices) + 1
    probes: list[SphereReport] = []
    certified: list[tuple[str, int]] = []
    limited: list[tuple[str, int]] = []
    for kind in ("right", "left"):
        certified_to = -1
        limit_hit = -1
        for n in range(cap + 1):
            rep = bounded_sphere(qp, base, n, kind, boundary)
            probes.append(rep)
            if not rep.complete:
                limit_hit = n
                break
            certified_to = n
            if rep.size == 0:
                break
        certified.append((kind, certified_to))
        limited.append((kind, limit_hit))
    failed = any(r < 0 for _k, r in certified)
    return SLFReport(
        verdict="probe-fail" if failed else "probe-pass",
        exact=False,
        connected=is_connected(qp),
        acyclic=True,
        cycle_witness=None,
        sphere_probes=tuple(probes),
        certified_radius=tuple(certified),
        window_limited_at=tuple(limited),
    )


def scope_boundary(q: LazyQuiver, scope: Window) -> frozenset:
    """Scope bases with at least one neighbor outside the scope."""
    bases = scope.base_scope(q)
    inside = set(bases)
    out = set()
    for v in bases:
        nbrs = {w for w, _m in q.out_arrows(v)} | {w for w, _m in q.in_arrows(v)}
        if any(w not in inside for w in nbrs):
            out.add(v)
    return frozenset(out)


def section_slf_probe(
    q: AnyQuiver,
    section: Section,
    scope: Window | None = None,
    base: VertexId | None = None,
) -> SLFReport:
    """Strong local finiteness probe of the quiver a section spans.

    For finite base quivers the materialization is the whole story and the
    verdict is exact; for lazy ones the bases at the scope edge are marked
    as untrusted boundary.
    """
    qp = section_quiver(q, section, scope=scope, check=False)
    if base is None:
        if section.center is not None and qp.has_vertex(section.center.base):
            base = section.center.base
        else:
            base = qp.vertices[0]
    if isinstance(q, Quiver):
        report = is_strongly_locally_finite(qp)
        return report
    boundary = scope_boundary(q, scope) & set(qp.vertices)
    return probe_strongly_locally_finite(qp, base, boundary)


@dataclass(frozen=True)
class ClassificationReport:
    """Verdict on the equivalent finiteness conditions.

    For finite quivers the conditions hold exactly when the quiver is
    acyclic, and the verdict is exact.  For lazy quivers only a window is
    inspected: a cycle inside it fails definitively, otherwise round trip
    sphere probes are reported per radius.  A sphere left incomplete
    strictly inside the probing range is counter-evidence (the supporting
    ball outgrew a window sized to hold it); incompleteness at the last
    probed radius is the expected window exhaustion.
    """

    verdict: str  # "satisfied" | "failed" | "probe-consistent" | "probe-counterevidence"
    exact: bool
    acyclic: bool
    cycle_witness: tuple | None
    sphere_probes: tuple[SphereReport, ...]
    counter_evidence: tuple[str, ...]
    base: VertexId | None = None

    def ok(self) -> bool:
        return self.verdict in ("satisfied", "probe-consistent")

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "exact": self.exact,
            "acyclic": self.acyclic,
            "cycle_witness": list(self.cycle_witness) if self.cycle_witness else None,
            "sphere_probes": [p.to_json() for p in self.sphere_probes],
            "counter_evidence": list(self.counter_evidence),
            "base": self.base,
        }


def _default_base(q: AnyQuiver, scope_bases: tuple[VertexId, ...]) -> VertexId:
    if isinstance(q, LazyQuiver) and q.integer_indexed and q.has_vertex(0):
        return 0
    return scope_bases[0]


def classify(
    q: AnyQuiver, base: VertexId | None = None, window: Window | None = None
) -> ClassificationReport:
    """Test the equivalent finiteness conditions (no arbitrarily long paths,
    finite light cones, finite spheres) exactly for finite quivers and
    probe-grade for lazy families."""
    if isinstance(q, Quiver):
        ok, cycle = is_acyclic(q)
        if base is None:
            base = q.vertices[0]
        q.require_vertex(base)
        probes: tuple[SphereReport, ...] = ()
        if ok:
            r = right_distances(q, base)
            l = left_distances(q, base)
            rt = {v: r[v] + l[v] for v in r if v in l}
            radii = sorted(set(rt.values()))
            probes = tuple(
                SphereReport(
                    "roundtrip",
                    base,
                    n,
                    tuple(sorted((v for v, d in rt.items() if d == n), key=vertex_sort_key)),
                    True,
                    len(q.vertices),
                )
                for n in radii
            )
        evidence = ()
        if not ok:
            evidence = ("cycle " + "->".join(str(v) for v in cycle),)
        return ClassificationReport(
            verdict="satisfied" if ok else "failed",
            exact=True,
            acyclic=ok,
            cycle_witness=tuple(cycle) if cycle else None,
            sphere_probes=probes,
            counter_evidence=evidence,
            base=base,
        )
    if window is None:
        raise ValueError("classification of a lazy quiver requires a window")
    scope_bases = window.base_scope(q)
    qr = induced_subquiver(q, scope_bases)
    ok, cycle = is_acyclic(qr)
    if not ok:
        return ClassificationReport(
            verdict="failed",
            exact=True,
            acyclic=False,
            cycle_witness=tuple(cycle),
            sphere_probes=(),
            counter_evidence=("cycle " + "->".join(str(v) for v in cycle),),
            base=base,
        )
    if base is None:
        base = _default_base(q, scope_bases)
    radius = max(window.slice_hi, -window.slice_lo, 0)
    probes = []
    evidence = []
    for n in range(radius + 1):
        rep = roundtrip_sphere(q, base, n, window=window)
        probes.append(rep)
        if not rep.complete and n < radius:
            evidence.append(
                f"roundtrip sphere radius {n} truncated inside the probed range"
            )
    return ClassificationReport(
        verdict="probe-counterevidence" if evidence else "probe-consistent",
        exact=False,
        acyclic=True,
        cycle_witness=None,
        sphere_probes=tuple(probes),
        counter_evidence=tuple(evidence),
        base=base,
    )
