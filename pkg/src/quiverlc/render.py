"""Rendering of ZQ slabs as DOT, JSON, or plain text.

Vertices print as "slice:base".  Modes add annotations: "lightcones"
colors the right and left light cones of a center, "roundtrip" labels each
vertex with its round trip distance to the center (an orbit invariant),
and "section" fills the vertices a section selects.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .core import AnyQuiver
from .distances import (
    left_lightcone_zq,
    right_lightcone_zq,
    roundtrip_distance_q,
)
from .sections import Section
from .zq import Window, ZVertex, format_zvertex, slab

MODES = ("plain", "lightcones", "roundtrip", "section")
FORMATS = ("dot", "json", "text")


@dataclass(frozen=True)
class RenderSpec:
    window: Window
    mode: str = "plain"
    center: ZVertex | None = None
    section: Section | None = None
    fmt: str = "dot"

    def validate(self) -> None:
        if self.mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.fmt not in FORMATS:
            raise ValueError(f"format must be one of {FORMATS}, got {self.fmt!r}")
        if self.mode in ("lightcones", "roundtrip") and self.center is None:
            raise ValueError(f"mode {self.mode!r} needs a center")
        if self.mode == "section" and self.section is None:
            raise ValueError("mode 'section' needs a section")


def _annotations(q: AnyQuiver, spec: RenderSpec, vertices) -> dict[ZVertex, dict]:
    notes: dict[ZVertex, dict] = {v: {} for v in vertices}
    if spec.mode == "lightcones":
        right = set(right_lightcone_zq(q, spec.center, spec.window))
        left = set(left_lightcone_zq(q, spec.center, spec.window))
        for v in vertices:
            if v in right and v in left:
                notes[v]["cone"] = "both"
            elif v in right:
                notes[v]["cone"] = "right"
            elif v in left:
                notes[v]["cone"] = "left"
    elif spec.mode == "roundtrip":
        cache: dict = {}
        for v in vertices:
            if v.base not in cache:
                cache[v.base] = str(
                    roundtrip_distance_q(q, spec.center.base, v.base, window=spec.window)
                )
            notes[v]["roundtrip"] = cache[v.base]
    elif spec.mode == "section":
        sel = spec.section.selection
        for v in vertices:
            if sel.get(v.base) == v.slice:
                notes[v]["selected"] = True
    return notes


_CONE_COLORS = {"right": "firebrick", "left": "royalblue", "both": "purple"}


def render(q: AnyQuiver, spec: RenderSpec) -> str:
    """Render the windowed slab of ZQ in the requested format."""
    spec.validate()
    s = slab(q, spec.window)
    notes = _annotations(q, spec, s.vertices)
    if spec.fmt == "dot":
        return _to_dot(s, notes)
    if spec.fmt == "json":
        return _to_json(s, notes)
    return _to_text(s, notes)


def emit_dot(q: AnyQuiver, spec: RenderSpec) -> str:
    spec.validate()
    if spec.fmt != "dot":
        spec = RenderSpec(spec.window, spec.mode, spec.center, spec.section, "dot")
    return render(q, spec)


def _node_attrs(name: str, note: dict) -> str:
    attrs = {"label": name}
    cone = note.get("cone")
    if cone:
        attrs["color"] = _CONE_COLORS[cone]
        attrs["style"] = "bold"
        if cone == "both":
            attrs["peripheries"] = "2"
    if "roundtrip" in note:
        attrs["label"] = f"{name}\\nd={note['roundtrip']}"
    if note.get("selected"):
        attrs["style"] = "filled"
        attrs["fillcolor"] = "lightgrey"
    body = ", ".join(f'{k}="{attrs[k]}"' for k in sorted(attrs))
    return f'  "{name}" [{body}];'


def _to_dot(s, notes) -> str:
    lines = ["digraph zq {", "  rankdir=LR;"]
    for v in s.vertices:
        lines.append(_node_attrs(format_zvertex(v), notes[v]))
    for (src, dst), m in s.arrow_items():
        for _ in range(m):
            lines.append(f'  "{format_zvertex(src)}" -> "{format_zvertex(dst)}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _to_json(s, notes) -> str:
    doc = {
        "window": {
            "slice_lo": s.window.slice_lo,
            "slice_hi": s.window.slice_hi,
            "base_lo": s.window.base_lo,
            "base_hi": s.window.base_hi,
        },
        "vertices": [
            {
                "slice": v.slice,
                "base": v.base,
                **({"annotations": notes[v]} if notes[v] else {}),
            }
            for v in s.vertices
        ],
        "arrows": [
            {
                "src": format_zvertex(src),
                "dst": format_zvertex(dst),
                "multiplicity": m,
            }
            for (src, dst), m in s.arrow_items()
        ],
    }
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _to_text(s, notes) -> str:
    lines = []
    for v in s.vertices:
        note = notes[v]
        extra = ""
        if note.get("cone"):
            extra = f"  [{note['cone']} cone]"
        elif "roundtrip" in note:
            extra = f"  [d={note['roundtrip']}]"
        elif note.get("selected"):
            extra = "  [selected]"
        lines.append(f"{format_zvertex(v)}{extra}")
    for (src, dst), m in s.arrow_items():
        suffix = f"  x{m}" if m > 1 else ""
        lines.append(f"{format_zvertex(src)} -> {format_zvertex(dst)}{suffix}")
    return "\n".join(lines) + "\n"
