"""Section construction, verification, and the finiteness classifier."""

from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from corpus import a1_tilde, a2, path3, random_quiver
from oracles import brute_lightcone

from quiverlc import (
    CyclicQuiverError,
    DisconnectedScopeError,
    InvalidSectionError,
    Quiver,
    Section,
    Window,
    ZVertex,
    build_section,
    classify,
    is_strongly_locally_finite,
    lightcone_section,
    probe_strongly_locally_finite,
    scope_boundary,
    section_quiver,
    section_slf_probe,
    verify_section,
)
from quiverlc.families import family


# -- the section container ---------------------------------------------------


def test_section_accessors():
    sec = Section({"x": 0, "y": -1}, center=ZVertex(0, "x"))
    assert sec.bases() == ("x", "y")
    assert sec.chosen("y") == ZVertex(-1, "y")
    assert sec.vertices() == (ZVertex(-1, "y"), ZVertex(0, "x"))


def test_section_json_round_trip_preserves_center():
    sec = Section({"x": 0, "y": -1}, center=ZVertex(0, "x"))
    back = Section.from_json(sec.to_json())
    assert back == sec and back.center == ZVertex(0, "x")


def test_section_json_round_trip_with_integer_bases():
    sec = Section({-2: 1, -1: 1, 0: 0, 1: 0}, center=ZVertex(0, 0))
    back = Section.from_json(sec.to_json())
    assert back == sec
    assert back.bases() == (-2, -1, 0, 1)


def test_section_equality_ignores_center():
    assert Section({"x": 0}) == Section({"x": 0}, center=ZVertex(0, "x"))
    assert Section({"x": 0}) != Section({"x": 1})


# -- construction ------------------------------------------------------------


def test_balanced_section_on_a_short_path():
    sec = build_section(path3(), ZVertex(0, "x"))
    assert sec.selection == {"x": 0, "y": 0, "z": -1}


def test_right_lightcone_section_follows_descendants():
    sec = lightcone_section(path3(), ZVertex(0, "x"), side="right")
    assert sec.selection == {"x": 0, "y": 0, "z": 0}


def test_left_lightcone_section_follows_ancestors():
    sec = lightcone_section(path3(), ZVertex(0, "x"), side="left")
    assert sec.selection == {"x": 0, "y": -1, "z": -2}


def test_section_construction_rejects_cycles():
    with pytest.raises(CyclicQuiverError):
        build_section(a1_tilde(), ZVertex(0, "a"))


def test_section_construction_rejects_disconnected_scopes():
    disc = Quiver(["a", "b", "c", "d"], {("a", "b"): 1, ("c", "d"): 1})
    with pytest.raises(DisconnectedScopeError):
        build_section(disc, ZVertex(0, "a"))


def test_zigzag_slices_on_the_linear_family():
    lin = family("a-inf-inf-linear")
    sec = build_section(lin, ZVertex(0, 0), scope=Window.radius(8))
    for k in range(0, 9):
        assert sec.selection[k] == -(k // 2)
    for m in range(1, 9):
        assert sec.selection[-m] == (m + 1) // 2


def test_lazy_section_requires_a_window():
    lin = family("a-inf-inf-linear")
    with pytest.raises(ValueError):
        build_section(lin, ZVertex(0, 0))


@st.composite
def acyclic_connected(draw):
    seed = draw(st.integers(min_value=0, max_value=10**9))
    rng = random.Random(seed)
    return random_quiver(
        rng, max_vertices=7, max_extra_arrows=6, acyclic=True, connected=True
    )


@settings(max_examples=40, deadline=None)
@given(acyclic_connected())
def test_built_sections_always_verify(q):
    center = ZVertex(0, q.vertices[0])
    sec = build_section(q, center)
    rep = verify_section(q, sec)
    assert rep.valid, (rep.negative_pairs, rep.arrow_violations)


@settings(max_examples=30, deadline=None)
@given(acyclic_connected())
def test_balanced_sections_split_the_roundtrip(q):
    c = q.vertices[0]
    sec = build_section(q, ZVertex(0, c))
    for y in q.vertices:
        there = brute_lightcone(q, c, y)
        back = brute_lightcone(q, y, c)
        if there is None or back is None:
            continue
        rt = there + back
        chosen = sec.chosen(y)
        # slice = there - floor(rt / 2): the chosen copy sees the center at
        # ceil(rt / 2) on the left and floor(rt / 2) on the right
        assert chosen.slice == there - rt // 2


# -- verification ------------------------------------------------------------


def test_verifier_accepts_the_balanced_section():
    rep = verify_section(path3(), build_section(path3(), ZVertex(0, "x")))
    assert rep.valid and rep.checked_pairs == 6 and not rep.sampled


def test_verifier_flags_a_shifted_orbit():
    bad = Section({"x": 0, "y": 5, "z": -1})
    rep = verify_section(path3(), bad)
    assert not rep.valid
    assert any(d < 0 for _, _, d in rep.negative_pairs)
    assert rep.arrow_violations


def test_verifier_reports_missing_orbits():
    rep = verify_section(path3(), Section({"x": 0, "y": 0}))
    assert not rep.valid and rep.coverage_gaps == ("z",)


def test_verifier_counts_out_of_scope_entries():
    sec = Section({"x": 0, "y": 0, "z": -1, "w": 3})
    rep = verify_section(path3(), sec)
    assert rep.valid and rep.out_of_scope == 1


def test_verifier_sampling_under_a_pair_budget():
    sec = build_section(path3(), ZVertex(0, "x"))
    rep = verify_section(path3(), sec, pair_budget=2)
    assert rep.sampled and rep.checked_pairs == 2 and rep.valid


def test_verifier_sampling_is_seeded():
    bad = Section({"x": 0, "y": 5, "z": -1})
    one = verify_section(path3(), bad, pair_budget=3, seed=7)
    two = verify_section(path3(), bad, pair_budget=3, seed=7)
    assert one.negative_pairs == two.negative_pairs


def test_verifier_first_witness_mode_stops_early():
    bad = Section({"x": 0, "y": 5, "z": -1})
    rep = verify_section(path3(), bad, first_witness_only=True)
    assert not rep.valid
    assert len(rep.negative_pairs) <= 1


# -- the induced quiver ------------------------------------------------------


def test_section_quiver_reproduces_the_base_orientation():
    sq = section_quiver(a2(), Section({"x": 0, "y": 0}))
    assert sq == a2()


def test_section_quiver_rejects_invalid_sections():
    with pytest.raises(InvalidSectionError):
        section_quiver(path3(), Section({"x": 0, "y": 5, "z": -1}))


def test_zigzag_section_quiver_alternates_orientation():
    lin = family("a-inf-inf-linear")
    zig = build_section(lin, ZVertex(0, 0), scope=Window.radius(4))
    sq = section_quiver(lin, zig, scope=Window.radius(4))
    assert sq.arrow_multiplicity(0, 1) == 1
    assert sq.arrow_multiplicity(2, 1) == 1
    assert sq.arrow_multiplicity(2, 3) == 1
    assert sq.arrow_multiplicity(0, -1) == 1
    assert sq.arrow_multiplicity(-2, -1) == 1


# -- strong local finiteness -------------------------------------------------


def test_exact_check_passes_on_finite_acyclic_quivers():
    rep = is_strongly_locally_finite(a2())
    assert rep.verdict == "pass" and rep.exact and rep.ok()


def test_exact_check_fails_on_cycles_with_a_witness():
    rep = is_strongly_locally_finite(a1_tilde())
    assert rep.verdict == "fail" and rep.exact and not rep.ok()
    assert rep.cycle_witness == ("a", "b", "a")


def test_exact_check_accepts_disconnected_quivers():
    disc = Quiver(["a", "b", "c", "d"], {("a", "b"): 1, ("c", "d"): 1})
    rep = is_strongly_locally_finite(disc)
    assert rep.verdict == "pass" and not rep.connected


def test_exact_check_rejects_lazy_quivers():
    with pytest.raises(TypeError):
        is_strongly_locally_finite(family("a-inf-ray"))


def test_probe_without_boundary_sweeps_until_spheres_empty():
    rep = probe_strongly_locally_finite(path3(), "x", boundary=())
    assert rep.verdict == "probe-pass" and not rep.exact
    assert dict(rep.certified_radius) == {"right": 1, "left": 3}
    assert dict(rep.window_limited_at) == {"right": -1, "left": -1}


def test_probe_with_boundary_reports_truncation():
    rep = probe_strongly_locally_finite(path3(), "x", boundary=("z",))
    assert rep.verdict == "probe-fail"
    assert dict(rep.certified_radius) == {"right": -1, "left": 1}
    assert dict(rep.window_limited_at) == {"right": 0, "left": 2}


def test_scope_boundary_of_the_linear_family():
    lin = family("a-inf-inf-linear")
    assert sorted(scope_boundary(lin, Window.radius(2))) == [-2, 2]


def test_zigzag_section_probe_certifies_interior_radii():
    lin = family("a-inf-inf-linear")
    zig = build_section(lin, ZVertex(0, 0), scope=Window.radius(8))
    rep = section_slf_probe(lin, zig, scope=Window.radius(8))
    assert rep.verdict == "probe-pass" and rep.ok()
    assert dict(rep.certified_radius) == {"right": 3, "left": 3}
    assert dict(rep.window_limited_at) == {"right": 4, "left": 4}


def test_fanout_section_probe_fails_on_the_open_side():
    lin = family("a-inf-inf-linear")
    fan = lightcone_section(lin, ZVertex(0, 0), side="right", scope=Window.radius(8))
    rep = section_slf_probe(lin, fan, scope=Window.radius(8))
    assert rep.verdict == "probe-fail" and not rep.ok()
    assert dict(rep.certified_radius)["right"] == -1
    assert dict(rep.certified_radius)["left"] == 7


def test_slf_report_json_shape():
    rep = is_strongly_locally_finite(a2())
    doc = rep.to_json()
    assert doc["verdict"] == "pass" and doc["exact"] is True


# -- classification ----------------------------------------------------------


def test_classify_finite_acyclic_quiver_is_satisfied():
    rep = classify(a2())
    assert rep.verdict == "satisfied" and rep.exact and rep.ok()


def test_classify_cycle_is_failed_with_witness():
    rep = classify(a1_tilde())
    assert rep.verdict == "failed" and rep.exact and not rep.ok()
    assert rep.cycle_witness == ("a", "b", "a")


def test_classify_linear_family_is_probe_consistent():
    rep = classify(family("a-inf-inf-linear"), window=Window.radius(6))
    assert rep.verdict == "probe-consistent" and rep.ok()
    assert rep.counter_evidence == ()
    probes = {s.radius: (s.size, s.complete) for s in rep.sphere_probes}
    assert probes[1] == (2, True) and probes[3] == (2, True)


def test_classify_arc_family_collects_counter_evidence():
    rep = classify(family("figure1-right"), window=Window.radius(4))
    assert rep.verdict == "probe-counterevidence" and not rep.ok()
    assert rep.counter_evidence


def test_classify_cyclic_lazy_family_fails_exactly():
    rep = classify(family("a1-tilde-cyclic"), window=Window(0, 2))
    assert rep.verdict == "failed" and rep.exact
    assert rep.cycle_witness is not None


def test_classify_json_shape():
    doc = classify(a2()).to_json()
    assert doc["verdict"] == "satisfied" and "sphere_probes" in doc
