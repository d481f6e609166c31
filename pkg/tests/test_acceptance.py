"""Acceptance suite: one PASS/FAIL line per criterion.

Run under pytest, or directly with ``python3 tests/test_acceptance.py`` for the
summary lines alone.
"""

import random
import subprocess
import sys
import time
from math import comb
from pathlib import Path

from splitnet import io
from splitnet.categories import (
    functor_curve_of_tree,
    functor_divisors_network,
    functor_network_divisors,
    make_object,
    project_topology,
    sample,
    shrink_set,
    subset_hom,
    tree_objects,
    verify_category_laws,
    verify_equivalence,
    verify_functor_laws,
)
from splitnet.compat import (
    canonical_orders,
    count_all_splits,
    count_all_splits_piecewise,
    count_bhv_orthants,
    count_circular_orders,
    pairwise_compatible,
    splits_of_order,
)
from splitnet.complexes import (
    cells_of_m0n_real,
    complexes_isomorphic,
    csn_orthants,
    dual_intersection_complex,
    pbhv_complex,
    root_to_label,
)
from splitnet.curves import (
    arithmetic_genus,
    dual_from_network,
    is_stable,
    remains_stable_after_removal,
    stratum_dimension,
)
from splitnet.model import (
    CyclicOrder,
    TreeTopology,
    WeightedSplitSystem,
    collapse_zero_weights,
    is_binary,
    make_split,
)
from splitnet.network import add_split, build_network, n_star, verify_realization

DATA = Path(__file__).parent / "data"


def report(number, title, ok, elapsed, limit, detail=""):
    within = elapsed < limit
    verdict = "PASS" if ok and within else "FAIL"
    line = f"{verdict} criterion {number}: {title} ({elapsed:.2f}s, limit {limit}s)"
    if detail:
        line += f" :: {detail}"
    print(line)
    assert ok, line
    assert within, line


def crossing_count(splits):
    return sum(1 for i, a in enumerate(splits) for b in splits[i + 1:]
               if not pairwise_compatible(a, b))


def network_is_sound(net, splits):
    dual = dual_from_network(net)
    return (verify_realization(net).ok and is_stable(dual)
            and arithmetic_genus(dual) == crossing_count(list(splits)))


def test_criterion_1_counting():
    t0 = time.perf_counter()
    problems = []
    for n in range(4, 13):
        closed = 2 ** (n - 1) - n - 1
        if count_all_splits(n) != closed or count_all_splits_piecewise(n) != closed:
            problems.append(f"split count n={n}")
        side = list(range(1, n + 1))
        if len(splits_of_order(CyclicOrder(tuple(side)))) != n * (n - 3) // 2:
            problems.append(f"per-order count n={n}")
    if count_circular_orders(6) != 60:
        problems.append("orders(6)")
    if count_bhv_orthants(4) != 15:
        problems.append("bhv(4)")
    report(1, "counting identities n=4..12", not problems, time.perf_counter() - t0, 1,
           ", ".join(problems))


def test_criterion_2_cells():
    t0 = time.perf_counter()
    five, six = cells_of_m0n_real(5), cells_of_m0n_real(6)
    i = five.cells.index(CyclicOrder((1, 2, 3, 4, 5)))
    j = five.cells.index(CyclicOrder((1, 4, 3, 2, 5)))
    shared = [s for a, b, s in five.adjacency if {a, b} == {i, j}]
    ok = len(five.cells) == 12 and len(six.cells) == 60 and shared == [make_split([2, 3, 4], 5)]
    report(2, "real moduli cells", ok, time.perf_counter() - t0, 1,
           f"cells {len(five.cells)}/{len(six.cells)}, shared face {[str(s) for s in shared]}")


def test_criterion_3_square_network():
    t0 = time.perf_counter()
    system = WeightedSplitSystem(4, ((make_split([1, 2], 4), 1.0), (make_split([1, 4], 4), 1.0)))
    net = build_network(system)
    dual = dual_from_network(net)
    nodes, edges = len(net.internal_nodes()), len(net.internal_edges())
    genus = arithmetic_genus(dual)
    ok = nodes == 4 and edges == 4 and is_stable(dual) and genus == 1
    report(3, "square network and its genus 1 dual", ok, time.perf_counter() - t0, 1,
           f"internal nodes {nodes}, internal edges {edges}, genus {genus}")


def test_criterion_4_pentagon():
    t0 = time.perf_counter()
    expected = [0, 1, 2, 3, 5]
    net = n_star(5)
    genera = [arithmetic_genus(dual_from_network(net))]
    for side in ([1, 2], [2, 3], [3, 4], [4, 5], [5, 1]):
        net = add_split(net, make_split(side, 5), 1.0)
        genera.append(arithmetic_genus(dual_from_network(net)))
    after_insertions = genera[1:]
    from_star = genera[:5]
    ok = after_insertions == expected

    def reading(name, seq):
        return f"indexed from {name}: {seq} ({'matches' if seq == expected else 'differs'})"

    detail = reading("the first insertion", after_insertions) + "; " + reading("the star", from_star)
    report(4, "pentagon genus sequence", ok, time.perf_counter() - t0, 1, detail)


def test_criterion_5_duality_complex():
    t0 = time.perf_counter()
    iso = {n: complexes_isomorphic(pbhv_complex(n - 1), dual_intersection_complex(n),
                                   root_to_label(n - 1)) for n in (5, 6)}
    fv = dual_intersection_complex(5).f_vector()
    ok = all(iso.values()) and fv == [10, comb(5, 2) + 5] and fv[0] == count_all_splits(5)
    report(5, "boundary complex = projective tree space", ok, time.perf_counter() - t0, 5,
           f"isomorphic {iso}, f-vector n=5 {fv}")


def _sweep_orthant(n, order, splits, seen):
    """Depth-first over subsets, extending the parent network by one split."""
    failures = []
    count = 0

    def visit(net, chosen, start):
        nonlocal count
        key = frozenset(chosen)
        if key not in seen:
            seen.add(key)
            count += 1
            if not network_is_sound(net, chosen):
                failures.append(chosen)
        for i in range(start, len(splits)):
            visit(add_split(net, splits[i], 1.0), chosen + [splits[i]], i + 1)

    visit(n_star(n, order), [], 0)
    return count, failures


def test_criterion_6_stability():
    t0 = time.perf_counter()
    failures = []
    systems = 0
    for n in (4, 5, 6):
        seen = set()
        for order, splits in csn_orthants(n):
            count, bad = _sweep_orthant(n, order, sorted(splits), seen)
            systems += count
            failures += bad
    rng = random.Random(20240601)
    for _ in range(200):
        n = rng.randint(4, 8)
        order = rng.choice(list(canonical_orders(n)))
        pool = sorted(splits_of_order(order))
        chosen = rng.sample(pool, rng.randint(1, len(pool)))
        system = WeightedSplitSystem(n, tuple((s, rng.uniform(0.05, 3.0)) for s in chosen))
        if not network_is_sound(build_network(system, order), chosen):
            failures.append(chosen)
    ok = not failures
    detail = f"{systems} exhaustive systems (n<=6) + 200 random (n<=8), {len(failures)} failures"
    if failures:
        detail += f"; first {[str(s) for s in failures[0]]}"
    report(6, "realization, stability and crossing-genus law", ok, time.perf_counter() - t0, 30,
           detail)


def test_criterion_7_tree_duality():
    t0 = time.perf_counter()
    bad = []
    total = 0
    for n in (5, 6):
        for obj in tree_objects(n):
            total += 1
            topo = TreeTopology(n, obj.splits)
            if stratum_dimension(topo) + len(topo.splits) != n - 3:
                bad.append(("dimension", obj.splits))
            if remains_stable_after_removal(topo) != (not is_binary(topo)):
                bad.append(("stability", obj.splits))
    report(7, "tree strata and stability after removal", not bad, time.perf_counter() - t0, 1,
           f"{total} topologies, {len(bad)} failures")


def test_criterion_8_categories():
    t0 = time.perf_counter()
    notes = []
    ok = True
    for kind, n in (("tree", 5), ("topology", 4), ("topology", 5),
                    ("divisorset", 4), ("divisorset", 5)):
        r = verify_category_laws(sample(kind, n))
        ok &= r.ok
        notes.append(f"{kind} n={n}: {r.objects}")
    for pair in ("trees", "networks"):
        for n in (4, 5):
            r = verify_equivalence(pair, n)
            ok &= r.ok
            notes.append(f"{pair} n={n}: {r.left_count}<->{r.right_count}")
    functors = [
        verify_functor_laws(sample("tree", 5), functor_curve_of_tree,
                            lambda x, y: y.partitions() <= x.partitions()),
        verify_functor_laws(sample("topology", 5), functor_network_divisors,
                            subset_hom("divisorset")),
        verify_functor_laws(sample("divisorset", 5), functor_divisors_network,
                            subset_hom("topology")),
    ]
    ok &= all(f.ok for f in functors)
    rng = random.Random(7)
    trees = [t for t in tree_objects(6) if t.splits]
    retract_bad = 0
    for _ in range(100):
        t = rng.choice(trees)
        x = make_object("tree", t.splits, 6, [rng.uniform(0.1, 2.0) for _ in t.splits])
        drop = rng.sample(range(1, len(x.splits) + 1), rng.randint(0, len(x.splits)))
        end = collapse_zero_weights(zip(x.splits, shrink_set(x.weights, drop, 1.0)), 6)
        if set(end.splits) != set(project_topology(x, drop).splits):
            retract_bad += 1
    ok &= retract_bad == 0
    notes.append(f"functor composable pairs {sum(f.composable_pairs for f in functors)}")
    notes.append(f"retraction mismatches {retract_bad}/100")
    report(8, "category laws, functors and equivalences", ok, time.perf_counter() - t0, 60,
           "; ".join(notes))


def test_criterion_9_io():
    t0 = time.perf_counter()
    splits_files = sorted(DATA.glob("*.splits"))
    newick_files = sorted(DATA.glob("*.nwk"))
    unstable = [p.name for p in splits_files
                if io.emit_splits(io.parse_splits(p.read_text())) != p.read_text()]
    unstable += [p.name for p in newick_files
                 if io.emit_newick(io.parse_newick(p.read_text())) + "\n" != p.read_text()]
    dots = set()
    for _ in range(3):
        doc = io.parse_splits((DATA / "pentagon.splits").read_text())
        dots.add(io.emit_dot(build_network(doc.system())))
    elapsed_core = time.perf_counter() - t0
    corpus = len(splits_files) + len(newick_files)

    # exit codes through the real entry point; process start-up is not counted
    codes = [
        subprocess.run([sys.executable, "-m", "splitnet", *args], capture_output=True).returncode
        for args in (["counts", "--n", "5"],
                     ["netbuild", "--splits", str(DATA / "random0.splits")],
                     ["newick", "parse", str(DATA / "missing.nwk")],
                     ["counts"])
    ]
    ok = corpus == 20 and not unstable and len(dots) == 1 and codes == [0, 0, 1, 2]
    report(9, "byte-stable round trips, DOT determinism, exit codes", ok, elapsed_core, 1,
           f"{corpus} files, unstable {unstable}, exit codes {codes}")


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
