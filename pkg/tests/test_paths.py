"""Path counting and enumeration in windows of the translation quiver."""

from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import a1_tilde, a2, kronecker, path3, random_quiver
from oracles import is_sectional

from quiverlc import (
    PathCount,
    Quiver,
    Window,
    ZVertex,
    count_paths_to_shift,
    count_paths_zq,
    count_sectional_paths_zq,
    enumerate_paths_zq,
)
from quiverlc.families import family


def test_pathcount_str_and_json():
    assert str(PathCount.finite(4)) == "4"
    assert str(PathCount.infinite()) == "inf"
    assert str(PathCount.lower_bound(5)) == ">=5"
    assert PathCount.finite(4).to_json() == {"status": "finite", "count": "4"}


def test_single_arrow_gives_one_path():
    assert count_paths_zq(a2(), ZVertex(0, "x"), ZVertex(0, "y")) == PathCount.finite(1)


def test_path_through_the_next_slice():
    assert count_paths_zq(a2(), ZVertex(0, "x"), ZVertex(1, "x")) == PathCount.finite(1)


def test_that_path_is_not_sectional():
    # the only route hops onto the translate of the start
    got = count_sectional_paths_zq(a2(), ZVertex(0, "x"), ZVertex(1, "x"))
    assert got == PathCount.finite(0)


def test_single_arrows_are_always_sectional():
    got = count_sectional_paths_zq(a2(), ZVertex(0, "x"), ZVertex(0, "y"))
    assert got == PathCount.finite(1)


def test_trivial_path_toggle():
    a = ZVertex(0, "x")
    assert count_paths_zq(a2(), a, a) == PathCount.finite(1)
    assert count_paths_zq(a2(), a, a, include_trivial=False) == PathCount.finite(0)


def test_no_paths_into_earlier_slices():
    assert count_paths_zq(a2(), ZVertex(1, "x"), ZVertex(0, "x")) == PathCount.finite(0)


def test_parallel_arrows_multiply():
    k = kronecker()
    assert count_paths_zq(k, ZVertex(0, "x"), ZVertex(1, "x")) == PathCount.finite(4)
    assert count_paths_to_shift(k, ZVertex(0, "x"), 1) == PathCount.finite(4)


def test_cyclic_base_has_infinitely_many_loop_paths():
    t = a1_tilde()
    got = count_paths_zq(t, ZVertex(0, "a"), ZVertex(0, "a"))
    assert got.status == "infinite"
    w = got.witness_cycle
    assert w[0] == w[-1]
    for u, v in zip(w, w[1:]):
        assert u.slice == v.slice and t.arrow_multiplicity(u.base, v.base) == 1


def test_shift_counts_stay_infinite_on_a_cycle():
    t = a1_tilde()
    for n in range(3):
        assert count_paths_to_shift(t, ZVertex(0, "a"), n).status == "infinite"


def test_shift_count_requires_nonnegative_n():
    with pytest.raises(ValueError):
        count_paths_to_shift(a2(), ZVertex(0, "x"), -1)


def test_counting_rejects_lazy_quivers():
    with pytest.raises(TypeError):
        count_paths_zq(family("a-inf-ray"), ZVertex(0, 0), ZVertex(0, 1))


def test_sectional_merge_at_a_sink():
    bi = Quiver(["a", "b", "c"], {("a", "b"): 1, ("c", "b"): 1})
    got = count_sectional_paths_zq(bi, ZVertex(0, "a"), ZVertex(1, "c"))
    assert got == PathCount.finite(1)


def test_enumeration_lists_parallel_arrow_choices():
    k = kronecker()
    paths, truncated = enumerate_paths_zq(k, ZVertex(0, "x"), ZVertex(1, "x"), limit=10)
    assert len(paths) == 4 and not truncated
    verts, choices = paths[0]
    assert verts == (ZVertex(0, "x"), ZVertex(0, "y"), ZVertex(1, "x"))
    assert len(choices) == 2
    assert len({c for _, c in paths}) == 4


def test_enumeration_limit_sets_the_truncation_flag():
    k = kronecker()
    paths, truncated = enumerate_paths_zq(k, ZVertex(0, "x"), ZVertex(1, "x"), limit=2)
    assert len(paths) == 2 and truncated


def test_enumeration_is_window_invariant_on_acyclic_bases():
    p = path3()
    a, b = ZVertex(0, "x"), ZVertex(1, "x")
    narrow, t1 = enumerate_paths_zq(p, a, b)
    wide, t2 = enumerate_paths_zq(p, a, b, window=Window(-3, 5))
    assert not t1 and not t2
    assert {v for v, _ in narrow} == {v for v, _ in wide}
    assert count_paths_zq(p, a, b) == PathCount.finite(len(narrow))


@st.composite
def acyclic_quiver(draw):
    seed = draw(st.integers(min_value=0, max_value=10**9))
    rng = random.Random(seed)
    return random_quiver(
        rng, max_vertices=5, max_extra_arrows=5, acyclic=True, connected=True
    )


@settings(max_examples=30, deadline=None)
@given(acyclic_quiver(), st.integers(0, 2))
def test_counts_match_enumeration_on_random_acyclic_bases(q, gap):
    a = ZVertex(0, q.vertices[0])
    b = ZVertex(gap, q.vertices[-1])
    paths, truncated = enumerate_paths_zq(q, a, b, limit=5000)
    counted = count_paths_zq(q, a, b)
    if truncated:
        # parallel arrows can blow the enumeration budget; the count itself
        # must still be finite and at least as large as what was listed
        assert counted.status == "finite" and counted.count >= len(paths)
        return
    assert counted == PathCount.finite(len(paths))
    sect_total = sum(1 for p, _ in paths if is_sectional(p))
    assert count_sectional_paths_zq(q, a, b) == PathCount.finite(sect_total)


def test_enumerated_paths_walk_real_arrows():
    from quiverlc.zq import arrow_multiplicity

    p = path3()
    paths, _ = enumerate_paths_zq(p, ZVertex(0, "x"), ZVertex(1, "y"), limit=100)
    assert paths
    for verts, choices in paths:
        assert len(choices) == len(verts) - 1
        for (u, v), c in zip(zip(verts, verts[1:]), choices):
            m = arrow_multiplicity(p, u, v)
            assert 0 <= c < m
