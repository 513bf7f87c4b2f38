"""End-to-end acceptance suite.

Each test covers one acceptance criterion and prints a single PASS or FAIL
line (run with ``pytest -s`` to see them).  All comparisons are exact; the
only tolerance anywhere is the 60 second runtime ceiling on the metric
axiom sweep.
"""

from __future__ import annotations

import json
import random
import time
from contextlib import contextmanager

import pytest

from corpus import acyclic_corpus, metric_corpus, small_corpus
from oracles import brute_lightcone, is_sectional

from quiverlc import (
    ExtDistance,
    PathCount,
    Window,
    ZVertex,
    build_section,
    classify,
    count_paths_to_shift,
    count_paths_zq,
    count_sectional_paths_zq,
    embed,
    enumerate_paths_zq,
    induced_subquiver,
    is_acyclic,
    left_distances,
    lightcone_distance_q,
    lightcone_distance_zq,
    lightcone_distance_zq_oracle,
    right_distances,
    roundtrip_distance_zq,
    roundtrip_sphere,
    section_quiver,
    slab,
    translate,
    verify_section,
)
from quiverlc.cli import main
from quiverlc.families import family


@contextmanager
def criterion(num: int, label: str):
    try:
        yield
    except BaseException:
        print(f"criterion {num}: FAIL - {label}")
        raise
    print(f"criterion {num}: PASS - {label}")


def _finite(d: ExtDistance) -> int:
    assert d.status == "finite", d
    return d.value


def test_criterion_1_metric_axioms():
    with criterion(1, "metric axioms on 200 random connected quivers"):
        started = time.monotonic()
        for idx, q in enumerate(metric_corpus(200)):
            rng = random.Random(9100 + idx)
            verts = q.vertices
            n = len(verts)
            acyclic, _ = is_acyclic(q)
            right = {x: right_distances(q, x) for x in verts}

            # hemimetric axioms for the one-sided distance
            for x in verts:
                assert right[x][x] == 0
                for y in verts:
                    assert right[x][y] >= 0
                    if acyclic and x != y:
                        assert right[x][y] > 0 or right[y][x] > 0
            triples = rng.sample(range(n**3), min(500, n**3))
            for t in triples:
                x = verts[t % n]
                y = verts[(t // n) % n]
                z = verts[t // (n * n)]
                assert right[x][z] <= right[x][y] + right[y][z]
                rt_xz = right[x][z] + right[z][x]
                rt_xy = right[x][y] + right[y][x]
                rt_yz = right[y][z] + right[z][y]
                assert rt_xz <= rt_xy + rt_yz

            # shift law across the translation
            pair_ids = rng.sample(range(n * n), min(30, n * n))
            for pid in pair_ids:
                x, y = verts[pid % n], verts[pid // n]
                base = right[x][y]
                b0 = ZVertex(0, y)
                for k in range(-3, 4):
                    got = lightcone_distance_zq(q, ZVertex(0, x), translate(b0, k))
                    assert got == ExtDistance.finite(base + k)

            # round trip axioms, symmetry, and orbit invariance
            for pid in pair_ids[:20]:
                x, y = verts[pid % n], verts[pid // n]
                rt = right[x][y] + right[y][x]
                assert rt == right[y][x] + right[x][y]
                assert rt >= 0
                if acyclic:
                    assert (rt == 0) == (x == y)
                i, j = rng.randint(-3, 3), rng.randint(-3, 3)
                got = roundtrip_distance_zq(q, ZVertex(i, x), ZVertex(j, y))
                assert got == ExtDistance.finite(rt)

            # every slab arrow sits at distance 0 or -1, all 0 iff acyclic
            saw_negative = False
            for (u, v), _m in slab(q, Window(0, 1)).arrow_items():
                d = _finite(lightcone_distance_zq(q, u, v))
                assert d in (0, -1)
                saw_negative = saw_negative or d == -1
            assert saw_negative == (not acyclic)
        elapsed = time.monotonic() - started
        assert elapsed < 60.0, f"metric sweep took {elapsed:.1f}s"


def test_criterion_2_oracle_equivalence():
    with criterion(2, "search distances equal brute force and the slab oracle"):
        for q in small_corpus():
            verts = q.vertices
            for x in verts:
                for y in verts:
                    want = brute_lightcone(q, x, y)
                    got = lightcone_distance_q(q, x, y)
                    if want is None:
                        assert got == ExtDistance.infinite()
                    else:
                        assert got == ExtDistance.finite(want)
                    assert lightcone_distance_zq(q, embed(q, x), embed(q, y)) == got
            pad = len(verts) + 2
            for i in range(2):
                for j in range(4):
                    for x in verts:
                        for y in verts:
                            a, b = ZVertex(i, x), ZVertex(j, y)
                            w = Window(min(i, j), max(i, j) + pad)
                            want = lightcone_distance_zq_oracle(q, a, b, w)
                            assert lightcone_distance_zq(q, a, b) == want


def _section_cases():
    for idx, q in enumerate(acyclic_corpus(100)):
        rng = random.Random(7200 + idx)
        centers = rng.sample(q.vertices, min(3, len(q.vertices)))
        for c in centers:
            yield q, c


def test_criterion_3_section_construction():
    with criterion(3, "built sections verify and split round trips in half"):
        for q, c in _section_cases():
            sec = build_section(q, ZVertex(0, c))
            rep = verify_section(q, sec)
            assert rep.valid, (rep.negative_pairs, rep.arrow_violations)
            assert not rep.coverage_gaps and not rep.sampled
            for y in q.vertices:
                there = brute_lightcone(q, c, y)
                back = brute_lightcone(q, y, c)
                rt = there + back
                j = sec.chosen(y).slice
                assert there - j == rt // 2
                assert back + j == (rt + 1) // 2


def test_criterion_4_sphere_identities():
    with criterion(4, "sphere cardinalities transfer onto built sections"):
        for q, c in _section_cases():
            sec = build_section(q, ZVertex(0, c))
            assert sec.chosen(c) == ZVertex(0, c)
            sq = section_quiver(q, sec, check=False)

            def hist(dists):
                out: dict[int, int] = {}
                for v in dists.values():
                    out[v] = out.get(v, 0) + 1
                return out

            r_q, l_q = right_distances(q, c), left_distances(q, c)
            rt_q = hist({v: r_q[v] + l_q[v] for v in q.vertices})
            r_s, l_s = right_distances(sq, c), left_distances(sq, c)
            rt_s = hist({v: r_s[v] + l_s[v] for v in sq.vertices})
            right_hist, left_hist = hist(r_s), hist(l_s)
            top = max(rt_q) + 2
            for n in range(top + 1):
                assert right_hist.get(n, 0) == rt_q.get(2 * n, 0) + rt_q.get(2 * n + 1, 0)
                assert left_hist.get(n, 0) == rt_q.get(2 * n - 1, 0) + rt_q.get(2 * n, 0)
                assert rt_q.get(n, 0) == rt_s.get(n, 0)


def test_criterion_5_zigzag_reproduction():
    with criterion(5, "linear family section is the zig-zag with halved slices"):
        lin = family("a-inf-inf-linear")
        scope = Window.radius(16)
        sec = build_section(lin, ZVertex(0, 0), scope=scope)
        for k in range(0, 17):
            assert sec.selection[k] == -(k // 2)
        for m in range(1, 17):
            assert sec.selection[-m] == (m + 1) // 2

        # the selected slices against the definitional oracle
        wide = Window(-20, 40, -40, 40)
        for k in range(-16, 17):
            j = sec.selection[k]
            want = abs(k) // 2
            got = lightcone_distance_zq_oracle(lin, ZVertex(0, 0), ZVertex(j, k), wide)
            assert got == ExtDistance.finite(want)

        # alternating orientation at every interior vertex
        sq = section_quiver(lin, sec, scope=scope, check=False)
        for k in range(-15, 16):
            outs = len(sq.out_arrows(k))
            ins = len(sq.in_arrows(k))
            assert outs + ins == 2
            assert (outs, ins) in ((2, 0), (0, 2))
            if k % 2 == 0:
                assert outs == 2
            else:
                assert ins == 2


def test_criterion_6_sphere_dichotomy():
    with criterion(6, "bounded spheres on the line, unbounded via the arcs"):
        lin = family("a-inf-inf-linear")
        w16 = Window.radius(16)
        for n in range(1, 13):
            s = roundtrip_sphere(lin, 0, n, window=w16)
            assert s.complete and s.members == (-n, n)
        f1 = family("figure1-right")
        for radius in (4, 8, 16):
            s = roundtrip_sphere(f1, 0, 1, window=Window.radius(radius))
            assert not s.complete
            assert s.size >= radius - 1


def test_criterion_7_cyclic_failure_modes():
    with criterion(7, "the cyclic family fails with witnesses everywhere"):
        fam = family("a1-tilde-cyclic")
        rep = classify(fam, window=Window(0, 2))
        assert rep.verdict == "failed" and rep.cycle_witness is not None

        tq = induced_subquiver(fam, fam.vertices)
        negatives = 0
        for (u, v), _m in slab(tq, Window(0, 1)).arrow_items():
            d = _finite(lightcone_distance_zq(tq, u, v))
            assert d in (0, -1)
            negatives += d == -1
        assert negatives > 0

        for n in range(3):
            got = count_paths_to_shift(tq, ZVertex(0, "a"), n)
            assert got.status == "infinite"
            w = got.witness_cycle
            assert w is not None and w[0] == w[-1]


def test_criterion_8_path_count_oracle():
    with criterion(8, "path counts match exhaustive enumeration"):
        for q in small_corpus():
            acyclic, _ = is_acyclic(q)
            for gap in range(4):
                for x in q.vertices:
                    for y in q.vertices:
                        a, b = ZVertex(0, x), ZVertex(gap, y)
                        total = count_paths_zq(q, a, b)
                        sect = count_sectional_paths_zq(q, a, b)
                        if sect.status == "infinite":
                            assert total.status == "infinite"
                        if total.status == "finite":
                            if sect.status == "finite":
                                assert sect.count <= total.count
                            paths, truncated = enumerate_paths_zq(
                                q, a, b, step_budget=None
                            )
                            assert not truncated
                            assert total == PathCount.finite(len(paths))
                            wanted = sum(1 for p, _ in paths if is_sectional(p))
                            assert sect == PathCount.finite(wanted)
                        else:
                            assert not acyclic
                            _, truncated = enumerate_paths_zq(q, a, b, limit=120)
                            assert truncated


def test_criterion_9_cli_determinism(tmp_path, capsys):
    a2 = tmp_path / "a2.quiver"
    a2.write_text("vertex x\nvertex y\narrow x y\n")
    p3 = tmp_path / "p3.quiver"
    p3.write_text("vertex x\nvertex y\nvertex z\narrow x y\narrow y z\n")
    a1t = tmp_path / "a1t.quiver"
    a1t.write_text("vertex a\nvertex b\narrow a b\narrow b a\n")
    secfile = tmp_path / "sec.json"
    secfile.write_text(
        json.dumps(
            {
                "selection": [
                    {"base": "x", "slice": 0},
                    {"base": "y", "slice": 0},
                    {"base": "z", "slice": -1},
                ],
                "center": {"slice": 0, "base": "x"},
            }
        )
    )
    matrix = [
        ["dist", "--file", str(a2), "x", "y"],
        ["dist", "--file", str(a2), "--left", "x", "y"],
        ["dist", "--file", str(a2), "--json", "0:y", "1:x"],
        ["dist", "--file", str(p3), "--oracle", "0:z", "0:x"],
        ["dist", "--family", "a-inf-inf-linear", "--window", "8", "--", "0", "-3"],
        ["rtdist", "--file", str(a1t), "a", "b", "--json"],
        ["rtdist", "--file", str(p3), "x", "z"],
        ["sphere", "--file", str(p3), "--kind", "roundtrip", "x", "2"],
        ["sphere", "--file", str(a2), "--kind", "right", "--json", "x", "0"],
        ["sphere", "--family", "figure1-right", "--window", "4", "0", "1"],
        ["lightcone", "--file", str(a2), "--window", "2", "0:x"],
        ["lightcone", "--file", str(a2), "--side", "left", "--window", "2", "0:x"],
        ["classify", "--file", str(a2)],
        ["classify", "--file", str(a1t), "--json"],
        ["classify", "--family", "a-inf-inf-linear", "--window", "6"],
        ["classify", "--family", "figure1-right", "--window", "4"],
        ["section", "--file", str(p3), "--center", "0:x"],
        ["section", "--file", str(p3), "--center", "0:x", "--side", "right", "--json"],
        ["section", "--file", str(p3), "--center", "0:x", "--side", "left"],
        ["verify-section", "--file", str(p3), "--section", str(secfile)],
        ["verify-section", "--file", str(p3), "--section", str(secfile), "--json"],
        ["count-paths", "--file", str(a2), "0:x", "1:x"],
        ["count-paths", "--file", str(a2), "--sectional", "0:x", "1:x"],
        ["count-paths", "--file", str(a1t), "0:a", "0:a"],
        ["count-paths", "--file", str(a2), "--enumerate", "0:x", "1:y"],
        ["count-paths", "--file", str(a1t), "--json", "0:a", "1:a"],
        ["emit-dot", "--file", str(a2), "--window", "1"],
        ["emit-dot", "--file", str(a2), "--mode", "lightcones", "--center", "0:x", "--window", "1"],
        ["emit-dot", "--file", str(p3), "--mode", "roundtrip", "--center", "0:x", "--window", "1"],
        ["emit-dot", "--file", str(p3), "--mode", "section", "--section", str(secfile), "--window", "1"],
        ["emit-dot", "--file", str(a2), "--format", "json", "--window", "1"],
        ["emit-dot", "--file", str(a2), "--format", "text", "--window", "1"],
    ]

    def run_all():
        results = []
        for argv in matrix:
            code = main(list(argv))
            captured = capsys.readouterr()
            results.append((code, captured.out))
        return results

    with criterion(9, "every CLI command is byte-deterministic"):
        first = run_all()
        second = run_all()
        for argv, one, two in zip(matrix, first, second):
            assert one == two, argv
        codes = {tuple(argv[:1])[0] for argv, (code, _) in zip(matrix, first) if code == 2}
        assert not codes, f"commands errored: {codes}"
