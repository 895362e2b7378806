"""One-shot re-verification of every numeric table and explicit identity.

Each item is a named exact check; the report is deterministic and the run
fails as a whole if any item fails.  The conic-count item keeps 146 as the
r=7 expectation because the classical summary row states it, but the
detailed multiplicity patterns it summarizes add up to 126 and the honest
enumeration returns 126, so that single item is expected to stay red.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable

from .corpus import load_bundled_corpus, run_corpus
from .jonq import (
    build_root_odd,
    det_class,
    fourth_root_example,
    is_twisting,
    order_j,
    ramification_data,
)
from .lattice import (
    BlowupLattice,
    arcond_search,
    arithmetic_genus,
    cauchy_inequality_holds,
    enumerate_conic_classes,
    enumerate_exceptional,
    intersect,
    neighbor_profile,
)
from .maps import ProjMap, P2, order_of_map, commute, group_closure, verify_dp4_embedding
from .multipoly import MultiPoly
from .poly import RatFunc, UniPoly
from .weyl import (
    act_on_exceptional,
    eigenvalue_multiplicities,
    fixed_rank,
    fixes_class,
    make_bertini,
    make_dp4_cubic,
    make_dp4_quadratic,
    make_geiser,
    order,
    orbit_divisibility,
    permutation_cycles,
)

EXPECTED_EXCEPTIONAL = [1, 3, 6, 10, 16, 27, 56, 240]
# Classical summary row; its r=7 entry disagrees with the multiplicity
# patterns it summarizes (7+35+42+35+7 = 126), so the enumeration is
# expected to mismatch it there and nowhere else.
EXPECTED_CONIC_SUMMARY = [1, 2, 3, 5, 10, 27, 146, 2160]
COMPUTED_CONIC = [1, 2, 3, 5, 10, 27, 126, 2160]


@dataclass
class TableItem:
    name: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0


def _item(name: str, fn: Callable[[], tuple[bool, str]]) -> TableItem:
    t0 = time.time()
    try:
        ok, detail = fn()
    except Exception as e:  # a crash is a failure with the exception recorded
        return TableItem(name, False, f"error: {e}", time.time() - t0)
    return TableItem(name, ok, detail, time.time() - t0)


def _exceptional_counts() -> tuple[bool, str]:
    counts = [len(enumerate_exceptional(r)) for r in range(1, 9)]
    return counts == EXPECTED_EXCEPTIONAL, f"{counts}"


def _conic_counts() -> tuple[bool, str]:
    counts = [len(enumerate_conic_classes(r)) for r in range(1, 9)]
    ok = counts == EXPECTED_CONIC_SUMMARY
    detail = f"{counts}; summary-row expectation {EXPECTED_CONIC_SUMMARY}"
    if counts == COMPUTED_CONIC:
        detail += " (r=7 differs: the multiplicity patterns sum to 126)"
    return ok, detail


def _neighbor_profiles() -> tuple[bool, str]:
    expected = {6: {1: 10}, 7: {1: 27, 2: 1}, 8: {1: 126, 2: 56, 3: 1}}
    got = {r: neighbor_profile(r) for r in (6, 7, 8)}
    return got == expected, f"{got}"


def _class_invariants() -> tuple[bool, str]:
    for r in range(1, 9):
        k = BlowupLattice(r).canonical()
        for c in enumerate_exceptional(r):
            if intersect(c, c) != -1 or intersect(c, k) != -1 or arithmetic_genus(c) != 0:
                return False, f"bad exceptional class {c} at r={r}"
        for f in enumerate_conic_classes(r):
            if intersect(f, f) != 0 or intersect(f, k) != -2:
                return False, f"bad fiber class {f} at r={r}"
    return True, "self-intersection, canonical degree and genus all match"


def _r8_involutions() -> tuple[bool, str]:
    k = BlowupLattice(8).canonical()
    exc = set(enumerate_exceptional(8))
    con = set(enumerate_conic_classes(8))
    ok1 = all(k.scale(-2) - d in exc for d in exc)
    ok2 = all(k.scale(-4) - f in con for f in con)
    return ok1 and ok2, "D -> -2K-D and f -> -4K-f are involutions of the lists"


def _hexagon() -> tuple[bool, str]:
    classes = enumerate_exceptional(3)
    adj = {c: [d for d in classes if d != c and intersect(c, d) == 1] for c in classes}
    if not all(len(v) == 2 for v in adj.values()):
        return False, "not 2-regular"
    start = classes[0]
    prev, cur, steps = None, start, 0
    while True:
        nxt = [d for d in adj[cur] if d != prev][0]
        prev, cur, steps = cur, nxt, steps + 1
        if cur == start:
            break
    return steps == 6, f"cycle length {steps}"


def _geiser_suite() -> tuple[bool, str]:
    g = make_geiser()
    checks = [
        g.is_weyl(),
        order(g) == 2,
        eigenvalue_multiplicities(g) == {1: 1, 2: 7},
        fixed_rank([g]) == 1,
    ]
    perm = act_on_exceptional(g)
    classes = enumerate_exceptional(7)
    k = BlowupLattice(7).canonical()
    checks.append(all(classes[perm[i]] == k.scale(-1) - c for i, c in enumerate(classes)))
    checks.append(sorted(len(c) for c in permutation_cycles(perm)) == [2] * 28)
    rep = orbit_divisibility([g])
    checks.append(rep.divisibility_holds is True and rep.orbit_sizes == [2] * 28)
    return all(checks), f"checks={checks}"


def _bertini_suite() -> tuple[bool, str]:
    b = make_bertini()
    checks = [
        b.is_weyl(),
        order(b) == 2,
        eigenvalue_multiplicities(b) == {1: 1, 2: 8},
        fixed_rank([b]) == 1,
    ]
    perm = act_on_exceptional(b)
    classes = enumerate_exceptional(8)
    k = BlowupLattice(8).canonical()
    checks.append(all(classes[perm[i]] == k.scale(-2) - c for i, c in enumerate(classes)))
    checks.append(sorted(len(c) for c in permutation_cycles(perm)) == [2] * 120)
    return all(checks), f"checks={checks}"


def _dp4_involutions() -> tuple[bool, str]:
    q = make_dp4_quadratic()
    cub = make_dp4_cubic()
    lat = BlowupLattice(5)
    checks = [
        order(q) == 2,
        eigenvalue_multiplicities(q) == {1: 4, 2: 2},
        order(cub) == 2,
        fixed_rank([cub]) == 2,
        fixes_class(cub, lat.canonical()),
        fixes_class(cub, lat.line() - lat.e(1)),
        orbit_divisibility([cub]).orbit_sizes == [2] * 8,
    ]
    return all(checks), f"checks={checks}"


def _cs24_suite() -> tuple[bool, str]:
    x, y, z = (MultiPoly.variable(P2.vars, n) for n in P2.vars)
    g1 = ProjMap(P2, [y * z, x * y, -(x * z)])
    g2 = ProjMap(P2, [y * z * (y - z), x * z * (y + z), x * y * (y + z)])
    minus = ProjMap(P2, [-x, y, z])
    g3 = ProjMap(P2, [x * (y + z), z * (y - z), -(y * (y - z))])
    checks = [
        g1.compose(g1) == minus,
        g2.compose(g2) == minus,
        order_of_map(g1) == 4,
        order_of_map(g2) == 4,
        commute(g1, g2),
        g1.compose(g2) == g3,
    ]
    closure = group_closure([g1, g2])
    checks.append(len(closure) == 8)
    from .maps import abelian_structure_matches

    checks.append(abelian_structure_matches(closure, (2, 4)))
    return all(checks), f"checks={checks}"


def _fourth_root_suite() -> tuple[bool, str]:
    ex = fourth_root_example()
    a = ex["alpha"]
    a2 = a.compose(a)
    a4 = a2.compose(a2)
    x = UniPoly.x()
    checks = [
        a2 == ex["alpha2"],
        a4 == ex["alpha4"],
        order_j(a) == 8,
        det_class(a4).radical == x**4 - 1,
        is_twisting(a4).absolute,
        ramification_data(a4).branch_points == 4,
        ramification_data(a4).genus == 1,
    ]
    return all(checks), f"checks={checks}"


def _odd_roots() -> tuple[bool, str]:
    x = UniPoly.x()
    details = []
    ok = True
    for n, g in ((1, RatFunc(x)), (3, RatFunc(x + 1)), (5, RatFunc(x**2 + 2))):
        res = build_root_odd(n, g)
        if res.degenerate:
            details.append(f"n={n}: degenerate (even g), closed forms consistent")
            ok = ok and res.final_verified
        else:
            details.append(f"n={n}: alpha verified")
            ok = ok and res.square_verified and res.final_verified
            ok = ok and order_j(res.alpha, cap=4 * n + 1) == 4 * n
    return ok, "; ".join(details)


def _embedding() -> tuple[bool, str]:
    rep = verify_dp4_embedding()
    zero = rep.residuals[0].is_zero() and rep.residuals[1].is_zero()
    return rep.passed and zero, f"residuals zero: {zero}, spot checks: {rep.spot_checks}"


def _arcond() -> tuple[bool, str]:
    sols = arcond_search(100)
    ok = sols == [(1, (0, 0, 0, 0))]
    import random

    rng = random.Random(12345)
    for _ in range(1000):
        k = rng.randint(1, 5)
        vals = [rng.randint(-40, 40) for _ in range(k)]
        holds, equality = cauchy_inequality_holds(vals)
        if not holds:
            return False, f"inequality failed on {vals}"
        if equality != (len(set(vals)) == 1):
            return False, f"equality condition failed on {vals}"
    return ok, f"unique solution up to m=100: {ok}; 1000 random tuples checked"


def _corpus() -> tuple[bool, str]:
    reports = run_corpus(load_bundled_corpus())
    bad = [r.name for r in reports if not r.passed]
    return not bad, f"{len(reports) - len(bad)}/{len(reports)} rows pass" + (
        f"; failing: {bad}" if bad else ""
    )


def run_verify_tables(include_corpus: bool = True) -> list[TableItem]:
    items = [
        _item("exceptional-counts", _exceptional_counts),
        _item("conic-counts", _conic_counts),
        _item("neighbor-profiles", _neighbor_profiles),
        _item("class-invariants", _class_invariants),
        _item("r8-involutions", _r8_involutions),
        _item("hexagon-r3", _hexagon),
        _item("geiser", _geiser_suite),
        _item("bertini", _bertini_suite),
        _item("dp4-involutions", _dp4_involutions),
        _item("cs24", _cs24_suite),
        _item("fourth-root", _fourth_root_suite),
        _item("odd-roots", _odd_roots),
        _item("dp4-embedding", _embedding),
        _item("sum-lemmas", _arcond),
    ]
    if include_corpus:
        items.append(_item("corpus", _corpus))
    return items
