"""Acceptance criteria, one pass/fail line each.

Run with pytest (lines are repeated in the terminal summary) or directly:

    python tests/test_acceptance.py
"""

from __future__ import annotations

import json
import random
import sys
import time
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

import oracles  # noqa: E402
from helpers import fmt, report  # noqa: E402
from coxnef import intmat, preset, square  # noqa: E402
from coxnef.cli import load_config  # noqa: E402
from coxnef.cohomology import cohomology, h0  # noqa: E402
from coxnef.cones import cone_from_generators, dual_cone, hilbert_basis, monoid_member  # noqa: E402
from coxnef.coxdeg import (  # noqa: E402
    ANTICANONICAL,
    CONIC_BUNDLE,
    NECESSARY,
    NOT_NECESSARY,
    TWISTED_CUBIC,
    analyze,
    koszul_stage,
    verify_witness,
)
from coxnef.lattice import pairing, riemann_roch  # noqa: E402
from coxnef.surface import (  # noqa: E402
    SurfaceModel,
    blow_down,
    connected_components,
    enumerate_minus_one,
    named_class,
    negative_curves,
)

DATA = Path(__file__).parent / "data"
RESULTS: list[str] = []


def record(number: int, title: str, ok: bool, detail: str = "") -> None:
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {title}"
    if detail:
        line += f" ({detail})"
    RESULTS.append(line)
    print(line)
    assert ok, line


def classes(model, *texts):
    return sorted(model.lattice.format(named_class(model, t)) for t in texts)


def _tally(s):
    return f"{s['necessary']} necessary: {s['negative']} curves, {s['conic_bundles']} conic bundles, {s['twisted_cubics']} twisted cubics"


def nef_necessary(name):
    m = preset(name)
    return fmt(m, report(name).nef_necessary())


def tag_of(name, cls):
    for c in report(name).candidates:
        if c.cls == cls:
            return c.classification.tag if c.classification else None
    return None


# ---------------------------------------------------------------- 1-7: worked examples


def test_criterion_1_e8_m2():
    name = "halphen-e8-m2"
    base = preset(name)
    fresh = SurfaceModel(base.lattice, base.kind, base.index, base.minus_two, (), name)
    t0 = time.perf_counter()
    rep = analyze(fresh)
    elapsed = time.perf_counter() - t0
    m = base
    ones = fmt(m, enumerate_minus_one(fresh))
    nef = fmt(m, rep.nef_necessary())
    want_nef = sorted(classes(m, "5H-E1-E2-E3-E4-E5-E6-E7-E8-4Eq", "H-Eq") + [m.lattice.format(-m.K)])
    s = rep.summary
    ok = (
        ones == classes(m, "E1", "Eq", "H-E8-Eq")
        and len(negative_curves(fresh)) == 12
        and nef == want_nef
        and (s["necessary"], s["negative"], s["conic_bundles"], s["twisted_cubics"], s["anticanonical"]) == (15, 12, 1, 1, 1)
        and elapsed < 60
    )
    record(1, "halphen-e8-m2 curves, nef necessary set, 15 = 12+1+1+1", ok, f"{s['necessary']} necessary, {elapsed:.2f} s")


def test_criterion_2_e8_m1():
    name = "halphen-e8-m1"
    m = preset(name)
    s = report(name).summary
    ok = len(negative_curves(m)) == 10 and (s["necessary"], s["conic_bundles"], s["twisted_cubics"], s["anticanonical"]) == (13, 1, 1, 1)
    record(2, "halphen-e8-m1 10 negatives, 13 necessary (1 conic bundle, 1 twisted cubic, -K)", ok, _tally(s))


def test_criterion_3_e8_m3():
    name = "halphen-e8-m3"
    m = preset(name)
    s = report(name).summary
    want = sorted(
        [m.lattice.format(-m.K)]
        + classes(
            m,
            "H-F4",
        "2H-F1-F2-F3-F4",
            "7H-3E2-3E3-3E4-3E5-F1-2F2-2F3-2F4",
        )
    )
    ok = (
        len(negative_curves(m)) == 14
        and nef_necessary(name) == want
        and (s["necessary"], s["conic_bundles"], s["twisted_cubics"]) == (18, 3, 0)
    )
    record(3, "halphen-e8-m3 14 negatives, four nef necessary classes, 18 total", ok, _tally(s))


def test_criterion_4_d8_m2():
    name = "halphen-d8-m2"
    m = preset(name)
    cb = ["4H-2E2-2E3-F1-F2-F3-2G2-J", "2H-F1-F2-F3-J"]
    want = sorted(classes(m, *cb) + [m.lattice.format(-m.K)])
    rules = {}
    for c in report(name).candidates:
        if m.lattice.format(c.cls) in classes(m, *cb):
            rules[m.lattice.format(c.cls)] = (c.classification.tag, c.verdict.rule)
    ok = nef_necessary(name) == want and all(v == (CONIC_BUNDLE, "conic-bundle-unique-reducible-fiber") for v in rules.values()) and len(rules) == 2
    record(4, "halphen-d8-m2 nef necessary {-K, two conic bundles with one reducible fiber}", ok)


def test_criterion_5_e7a1_m2():
    name = "halphen-e7a1-m2"
    m = preset(name)
    ok = nef_necessary(name) == [m.lattice.format(-m.K)]
    record(5, "halphen-e7a1-m2 nef necessary = {-K}", ok)


A8 = {
    1: None,
    2: "19H-6E1-6E2-2F1-8F2-7G1-7G2-9H1-4I1-5J1",
    3: "9H-3E1-3E2-2F1-2F2-2G1-3G2-5H1-I1-4J1",
    4: "10H-3E1-3E2-F1-4F2-4G1-4G2-5H1-2I1-2J1",
    5: "11H-4E1-4E2-2F1-2F2-3G1-3G2-H1-6I1-5J1",
    6: "7H-E1-E2-2F1-2F2-G1-2G2-3H1-3I1-4J1",
    7: "6H-2E1-2E2-3F1-3F2-2G1-2G2-I1-J1",
    8: "13H-2E1-2E2-4F1-4F2-3G1-3G2-5H1-6I1-7J1",
    9: "9H-E1-4E2-3F1-3F2-4G1-4G2-3H1-2I1-J1",
    10: "17H-2E1-8E2-6F1-6F2-7G1-7G2-5H1-4I1-3J1",
    11: "5H-2E1-2E2-F1-F2-G1-G2-3I1-2J1",
    12: "13H-4E1-4E2-6F1-6F2-5G1-5G2-H1-2I1-3J1",
    13: "17H-6E1-6E2-4F1-4F2-5G1-5G2-9H1-2I1-7J1",
}


def test_criterion_6_a8_m2():
    name = "halphen-a8-m2"
    m = preset(name)
    lat = m.lattice
    cs = {i: (-m.K if t is None else named_class(m, t)) for i, t in A8.items()}
    nec = set(report(name).nef_necessary())
    tags = {i: tag_of(name, c) for i, c in cs.items()}
    cb = {i for i, t in tags.items() if t == CONIC_BUNDLE}
    tc = {i for i, t in tags.items() if t == TWISTED_CUBIC}
    curves = negative_curves(m)
    tc_ok = True
    for i in tc:
        orth = [c for c in curves if m.pair(cs[i], c) == 0]
        # contracted curves: one connected configuration spanning the complement of N
        span = intmat.rank([list(c.coeffs) for c in orth])
        tc_ok &= len(connected_components(lat, orth)) == 1 and span == lat.rank - 1
    ok = nec == set(cs.values()) and tags[1] == ANTICANONICAL and cb == {3, 4, 6, 7, 9, 11} and tc == {2, 5, 8, 10, 12, 13} and tc_ok
    record(6, "halphen-a8-m2 nef necessary = C1..C13 (1 -K, 6 conic bundles, 6 twisted cubics)", ok, f"{len(nec)} nef necessary")


def test_criterion_7_e6_cubic():
    name = "wdp-e6-cubic"
    m = preset(name)
    rep = report(name)
    a1, a2, a3 = (m.lattice.cls(v) for v in [(0, 1, 1, 2, 2, 2, 2), (1, 1, 2, 3, 3, 3, 3), (2, 3, 4, 4, 5, 6, 3)])
    nec = set(rep.necessary())
    status = {c.cls: c.verdict.status for c in rep.candidates}
    ok = (
        nec == set(negative_curves(m)) | {a1, a2, a3}
        and len(negative_curves(m)) == 7
        and tag_of(name, a1) == CONIC_BUNDLE
        and tag_of(name, a2) == TWISTED_CUBIC
        and a3 == -m.K
        and status[a3] == NECESSARY
        and koszul_stage(m, a3) is None
    )
    record(7, "wdp-e6-cubic necessary = 7 curves + A1 (conic bundle), A2 (twisted cubic), A3=-K; no Koszul witness for A3", ok)


# ---------------------------------------------------------------- 8: property suites


def _random_cone(rng, n, lo, hi):
    while True:
        k = rng.randint(n, n + 2)
        gens = list({tuple([rng.randint(1, 2)] + [rng.randint(lo, hi) for _ in range(n - 1)]) for _ in range(k)})
        if oracles._rank(gens) == n:
            return gens


def test_criterion_8_property_suites():
    rng = random.Random(20261015)
    t0 = time.perf_counter()
    counts = {}
    names = ["halphen-e8-m1", "halphen-e8-m2", "halphen-e8-m3", "halphen-d8-m2", "halphen-e7a1-m2", "halphen-a8-m2", "wdp-e6-cubic"]

    # cohomology identities
    ok_coh = True
    for _ in range(200):
        m = preset(rng.choice(names))
        lat = m.lattice
        d = lat.cls([rng.randint(-3, 3) for _ in range(lat.rank)])
        v = cohomology(m, d)
        chi = riemann_roch(lat, d).chi
        ok_coh &= chi == riemann_roch(lat, m.K - d).chi
        ok_coh &= v.h0 - v.h1 + v.h2 == chi
        ok_coh &= v.h2 == h0(m, m.K - d)
    counts["cohomology"] = 200

    # dual cone involution, rank <= 5
    ok_dual = True
    for _ in range(200):
        n = rng.randint(2, 5)
        cone = cone_from_generators(_random_cone(rng, n, -2, 2), n)
        ok_dual &= dual_cone(dual_cone(cone)).generators == cone.generators
    counts["dual"] = 200

    # Hilbert basis vs brute force, rank <= 4
    ok_hb = True
    for _ in range(200):
        n = rng.randint(2, 4)
        gens = _random_cone(rng, n, -1 if n == 4 else -2, 1 if n == 4 else 2)
        hb = list(hilbert_basis(cone_from_generators(gens, n)).elements)
        ok_hb &= hb == oracles.brute_hilbert_basis(gens, n)
    counts["hilbert"] = 200

    # monoid membership vs exhaustive search
    ok_mon = True
    for _ in range(200):
        gens = [(rng.randint(1, 3), rng.randint(0, 2), rng.randint(-1, 2)) for _ in range(rng.randint(1, 4))]
        v = (rng.randint(0, 6), rng.randint(-2, 6), rng.randint(-3, 6))
        ok_mon &= monoid_member(gens, v, grading=(1, 0, 0)).member == oracles.brute_monoid_member(gens, v, (1, 0, 0))
    counts["monoid"] = 200

    # contraction pairing identity
    ok_con = True
    for _ in range(200):
        m = preset(rng.choice(names))
        lat = m.lattice
        ones = [c for c in negative_curves(m) if square(lat, c) == -1]
        e = rng.choice(ones)
        bd = blow_down(m, e)
        a = lat.cls([rng.randint(-4, 4) for _ in range(lat.rank)])
        b = lat.cls([rng.randint(-4, 4) for _ in range(lat.rank)])
        lhs = pairing(bd.model.lattice, bd.push(a, lat), bd.push(b, lat))
        ok_con &= lhs == pairing(lat, a, b) + pairing(lat, a, e) * pairing(lat, b, e)
    counts["contract"] = 200

    # every NotNecessary witness re-verifies
    ok_wit = True
    checked = 0
    for name in names:
        m = preset(name)
        for c in report(name).candidates:
            if c.verdict.status == NOT_NECESSARY:
                ok_wit &= verify_witness(m, c.cls, c.verdict)
                checked += 1
    counts["witnesses"] = checked

    elapsed = time.perf_counter() - t0
    ok = ok_coh and ok_dual and ok_hb and ok_mon and ok_con and ok_wit and checked >= 200 and elapsed < 300
    flags = {"cohomology": ok_coh, "dual": ok_dual, "hilbert": ok_hb, "monoid": ok_mon, "contract": ok_con, "witnesses": ok_wit}
    detail = ", ".join(f"{k} {counts[k]}{'' if flags[k] else ' FAILED'}" for k in counts) + f"; {elapsed:.1f} s"
    record(8, "property suites (>= 200 instances each, < 5 min)", ok, detail)


# ---------------------------------------------------------------- 9: externally supplied configurations

TABLE = {4: (19, 23, 2), 5: (24, 31, 5)}


@pytest.mark.parametrize("m", sorted(TABLE))
def test_criterion_9_table_rows(m):
    path = DATA / f"halphen-e8-m{m}.json"
    if not path.exists():
        line = f"SKIP criterion 9: halphen-e8-m{m} configuration not supplied ({path.name} absent)"
        RESULTS.append(line)
        print(line)
        pytest.skip(line)
    model = load_config(path)
    rep = analyze(model)
    s = rep.summary
    got = (len(rep.negative_curves), s["necessary"], s["conic_bundles"])
    record(9, f"halphen-e8-m{m} (negatives, necessary, conic bundles) = {TABLE[m]}", got == TABLE[m], f"got {got}")


def _main() -> int:
    failed = 0
    for fn in [
        test_criterion_1_e8_m2,
        test_criterion_2_e8_m1,
        test_criterion_3_e8_m3,
        test_criterion_4_d8_m2,
        test_criterion_5_e7a1_m2,
        test_criterion_6_a8_m2,
        test_criterion_7_e6_cubic,
        test_criterion_8_property_suites,
    ]:
        try:
            fn()
        except AssertionError:
            failed += 1
    for m in sorted(TABLE):
        try:
            test_criterion_9_table_rows(m)
        except AssertionError:
            failed += 1
        except pytest.skip.Exception:
            pass
    return 1 if failed else 0


if __name__ == "__main__":
    raise SystemExit(_main())
