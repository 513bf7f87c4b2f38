"""Built-in lazily enumerated quiver families.

a-inf-inf-linear   the doubly infinite chain: vertices Z, arrows i -> i+1
a-inf-ray          the one-sided ray: vertices 0, 1, 2, ..., arrows i -> i+1
figure1-right      the chain on Z plus one arc -k -> k for every k >= 1;
                   vertex 0 has plain chain neighbors only
a1-tilde-cyclic    two vertices a, b with arrows both ways (a 2-cycle)
"""

from __future__ import annotations

from .core import LazyQuiver, VertexId


def _is_int(v: VertexId) -> bool:
    return type(v) is int


def _linear() -> LazyQuiver:
    return LazyQuiver(
        "a-inf-inf-linear",
        contains=_is_int,
        out_arrows=lambda i: [(i + 1, 1)],
        in_arrows=lambda i: [(i - 1, 1)],
    )


def _ray() -> LazyQuiver:
    return LazyQuiver(
        "a-inf-ray",
        contains=lambda v: _is_int(v) and v >= 0,
        out_arrows=lambda i: [(i + 1, 1)],
        in_arrows=lambda i: [(i - 1, 1)] if i >= 1 else [],
    )


def _figure1_right() -> LazyQuiver:
    def out_arrows(i: int):
        found = [(i + 1, 1)]
        if i <= -1:
            found.append((-i, 1))
        return found

    def in_arrows(i: int):
        found = [(i - 1, 1)]
        if i >= 1:
            found.append((-i, 1))
        return found

    return LazyQuiver("figure1-right", _is_int, out_arrows, in_arrows)


def _a1_tilde() -> LazyQuiver:
    pair = ("a", "b")
    return LazyQuiver(
        "a1-tilde-cyclic",
        contains=lambda v: v in pair,
        out_arrows=lambda v: [("b" if v == "a" else "a", 1)],
        in_arrows=lambda v: [("b" if v == "a" else "a", 1)],
        vertices=pair,
        integer_indexed=False,
    )


_REGISTRY = {
    "a-inf-inf-linear": _linear,
    "a-inf-ray": _ray,
    "figure1-right": _figure1_right,
    "a1-tilde-cyclic": _a1_tilde,
}

FAMILY_NAMES: tuple[str, ...] = tuple(sorted(_REGISTRY))


def family(name: str) -> LazyQuiver:
    if name not in _REGISTRY:
        known = ", ".join(FAMILY_NAMES)
        raise ValueError(f"unknown family {name!r}; available: {known}")
    return _REGISTRY[name]()
