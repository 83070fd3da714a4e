"""Acceptance criteria, one test per criterion.

Each test prints a single ``PASS`` or ``FAIL`` line. Run standalone with
``python3 tests/test_acceptance.py``; under ``pytest`` the lines are
repeated in the terminal summary.
"""

from __future__ import annotations

import random
import sys
import time
from fractions import Fraction
from math import comb, factorial, gcd

from cffcover.bounds import EXACT, LOWER, UPPER, best_bounds, density_lower, fractional_lower
from cffcover.combinatorics import (
    ballot_count,
    ballot_count_enumerated,
    bizley_count,
    enumerate_lattice_paths,
    spencer_R,
)
from cffcover.constructions import cff_to_cover, cover_to_cff, hadamard_cover, hadamard_matrix, orbit_cover
from cffcover.cover import bc_star_formula, exact_bcd, max_biclique_edge_count, validate_cover
from cffcover.graphs import bi_intersection, kminus, max_induced_matching
from cffcover.setsystem import SetSystem, is_cff


RESULTS: list[str] = []


def report(number: int, title: str, failures: list[str], detail: str = "") -> None:
    status = "PASS" if not failures else "FAIL"
    line = f"{status} criterion {number:>2}: {title}"
    if detail:
        line += f" ({detail})"
    if failures:
        line += " -- " + "; ".join(failures[:5])
    RESULTS.append(line)
    print(line)
    assert not failures, line


def test_criterion_01_exact_small_values():
    failures, slowest = [], 0.0
    for r, w, t in [(1, 1, 2), (1, 1, 3), (2, 1, 3), (2, 1, 4), (2, 2, 4), (2, 2, 5), (3, 1, 4), (3, 1, 5)]:
        start = time.perf_counter()
        g = bi_intersection(t, r, w)
        # once through the C4-free shortcut and once through the full search
        for shortcut in (True, False):
            res = exact_bcd(g, 1, use_vertex_cover=shortcut)
            took = time.perf_counter() - start
            slowest = max(slowest, took)
            if not res.exact or res.value != comb(t, w) or took >= 30:
                failures.append(f"I_{t}({r},{w}): got {res.value} in {took:.1f}s, want {comb(t, w)}")
    report(1, "bc(I_t(r,w)) = C(t,w) on the small catalogue", failures, f"slowest {slowest:.2f}s")


def test_criterion_02_spencer_agreement():
    failures = []
    for t, want in zip((2, 3, 4, 5), (2, 3, 4, 4)):
        got = exact_bcd(kminus(t), 1).value
        if got != want or spencer_R(t) != want:
            failures.append(f"t={t}: bc={got}, R={spencer_R(t)}, want {want}")
    report(2, "bc(K-_{t,t}) = R(t) for t = 2..5", failures)


def test_criterion_03_hadamard():
    failures = []
    for d in (1, 2, 3):
        c = hadamard_cover(hadamard_matrix(4 * d))
        check = validate_cover(c)
        if not check.ok or set(check.coverage.values()) != {d} or len(c) != 4 * d - 1:
            failures.append(f"d={d}: cover invalid or not exact")
        if c.host.family != f"kminus:{4 * d - 1}":
            failures.append(f"d={d}: wrong host {c.host.family}")
        if fractional_lower(1, 1, d, 4 * d - 1) != 4 * d - 1:
            failures.append(f"d={d}: fractional lower {fractional_lower(1, 1, d, 4 * d - 1)}")
    report(3, "Hadamard covers meet the fractional lower bound 4d-1", failures)


def test_criterion_04_orbit():
    failures = []
    for (t, r, w), want_d in zip([(3, 1, 1), (4, 2, 1), (4, 1, 1)], (2, 6, 8)):
        c = orbit_cover(t, r, w)
        check = validate_cover(c)
        if len(c) != factorial(t) or c.d != want_d or set(check.coverage.values()) != {want_d} or not check.ok:
            failures.append(f"({t},{r},{w}): parts {len(c)}, d {c.d}")
        if fractional_lower(r, w, want_d, t) != factorial(t):
            failures.append(f"({t},{r},{w}): fractional lower {fractional_lower(r, w, want_d, t)}")
    report(4, "orbit covers have t! parts, uniform coverage, and meet the lower bound", failures)


def test_criterion_05_fractional_formula():
    failures, count = [], 0
    for t in range(2, 8):
        for r in range(1, t):
            for w in range(1, r + 1):
                if r + w > t:
                    continue
                count += 1
                want = Fraction(comb(t, r) * comb(t - r, w), max_biclique_edge_count(bi_intersection(t, r, w)))
                got, _ = bc_star_formula(t, r, w)
                if got != want:
                    failures.append(f"I_{t}({r},{w}): {got} != {want}")
    report(5, "closed-form bc* equals |E|/B on I_t(r,w), t <= 7", failures, f"{count} instances")


def test_criterion_06_bollobas():
    failures, count = [], 0
    for t in range(2, 8):
        for r in range(1, 5):
            for w in range(1, r + 1):
                if r + w > min(5, t):
                    continue
                count += 1
                got = max_induced_matching(bi_intersection(t, r, w))
                if got != comb(r + w, r):
                    failures.append(f"I_{t}({r},{w}): {got}")
    report(6, "max induced matching of I_t(r,w) is C(r+w,r)", failures, f"{count} instances")


def random_cff(rng: random.Random, r: int, w: int, d: int, t: int) -> SetSystem:
    """Add random points until the system is an (r,w;d)-CFF, then drop
    redundant points in random order."""
    p = r / (r + w)
    cols: list[frozenset[int]] = []

    def system(columns):
        blocks = [frozenset(j for j, col in enumerate(columns, 1) if i in col) for i in range(1, t + 1)]
        return SetSystem(len(columns), tuple(blocks))

    while not cols or not is_cff(system(cols), r, w, d)[0]:
        cols.append(frozenset(i for i in range(1, t + 1) if rng.random() < p))
    order = list(range(len(cols)))
    rng.shuffle(order)
    for idx in order:
        trial = [c for k, c in enumerate(cols) if k != idx and c is not None]
        if trial and is_cff(system(trial), r, w, d)[0]:
            cols[idx] = None
    return system([c for c in cols if c is not None])


def test_criterion_07_round_trip():
    rng = random.Random(20240607)
    params = [(r, w) for r in range(1, 4) for w in range(1, r + 1) if r + w <= 4]
    failures, total = [], 0
    while total < 120:
        r, w = rng.choice(params)
        t = rng.randint(r + w, 8)
        d = rng.choice((1, 2))
        sys_ = random_cff(rng, r, w, d, t)
        if not is_cff(sys_, r, w, d)[0]:
            failures.append("generator produced a non-CFF")
            continue
        total += 1
        c = cff_to_cover(sys_, r, w, d)
        if not validate_cover(c).ok:
            failures.append(f"cover of ({r},{w};{d})-CFF({sys_.n_points},{t}) invalid")
            continue
        back = cover_to_cff(c)
        if back.n_points != sys_.n_points or not is_cff(back, r, w, d)[0]:
            failures.append(f"({r},{w};{d}) t={t}: round trip failed")
    report(7, "CFF -> cover -> CFF round trip on random verified CFFs", failures, f"{total} systems")


def test_criterion_08_counting():
    failures = []
    for i in range(1, 10):
        for j in range(1, 11 - i):
            paths = len(enumerate_lattice_paths(i, j))
            if gcd(i, j) == 1 and paths != bizley_count(i, j):
                failures.append(f"L({i},{j}): {paths} != Bizley")
            if ballot_count(i, j - 1, Fraction(i, j)) != paths:
                failures.append(f"B({i},{j - 1};{i}/{j}) != |L({i},{j})|")
    for r in range(0, 11):
        for w in range(0, 11 - r):
            for k in range(1, 11):
                if ballot_count(r, w, k) != ballot_count_enumerated(r, w, k):
                    failures.append(f"ballot({r},{w};{k})")
    report(8, "lattice paths, Bizley and ballot numbers agree", failures)


def test_criterion_09_bound_soundness():
    failures, solved, skipped = [], 0, 0
    for r in range(1, 4):
        for w in range(1, r + 1):
            if r + w > 4:
                continue
            for t in range(r + w, 7):
                for d in (1, 2):
                    res = exact_bcd(bi_intersection(t, r, w), d, budget=200_000)
                    if not res.exact:
                        skipped += 1
                        continue
                    solved += 1
                    exact = res.value
                    rep = best_bounds(r, w, d, t)
                    if not rep.best_certified_lower <= exact <= rep.best_upper:
                        failures.append(f"({r},{w};{d}),{t}: [{rep.best_certified_lower},{rep.best_upper}] vs {exact}")
                    for e in rep.entries:
                        if not e.applicable:
                            continue
                        if e.tier in (EXACT, LOWER) and e.value > exact:
                            failures.append(f"({r},{w};{d}),{t}: {e.name} = {e.value} > {exact}")
                        if e.tier in (EXACT, UPPER) and e.value < exact:
                            failures.append(f"({r},{w};{d}),{t}: {e.name} = {e.value} < {exact}")
    report(9, "certified bounds bracket every exact value", failures, f"{solved} solved, {skipped} over budget")


def test_criterion_10_reduction():
    failures = []
    for r in range(2, 51):
        for t in (r + 1, 3 * r, 1000):
            for c in (0.125, 0.25, 0.5):
                a = density_lower(r, 1, t, c, "estimate").value
                b = density_lower(r, 1, t, c, "rcff").value
                if a != b:
                    failures.append(f"r={r}, t={t}, c={c}: {a!r} != {b!r}")
    report(10, "estimate with w = 1 equals the r-cover-free density bound exactly", failures)


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
