"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with `pytest tests/test_acceptance.py -v -s` to see the per-criterion
report. Known red: criterion 1 demands a UNIQUE ground projection for the
four-variable demo instance, but that polynomial provably has two degenerate
minima (1010 and 1101 both evaluate to -2), so the uniqueness clause cannot
hold for any sound compiler. The criterion is asserted as stated and fails
honestly; see tests/test_mwis.py for the exact two-solution behavior.
"""

import time

from rydberg_hubo import sim
from rydberg_hubo.compiler import (
    MODE_ADDRESSING,
    MODE_DUPLICATION,
    PAIR_RULE_FIRST,
    PAIR_RULE_LAST,
    compile_polynomial,
    effective_polynomial,
)
from rydberg_hubo.expand import (
    ExpansionSpec,
    complete_hypergraph_entries,
    estimate_atoms,
    expand_superatom,
    verify_expansion,
)
from rydberg_hubo.gadgets import negative_hyperedge, positive_hyperedge
from rydberg_hubo.mwis import ground_manifold, verify_equivalence
from rydberg_hubo.poly import parse_hubo

from conftest import INSTANCES, random_polynomial


def report(cid: str, description: str, ok: bool, detail: str = "") -> None:
    status = "PASS" if ok else "FAIL"
    suffix = f"  [{detail}]" if detail else ""
    print(f"ACCEPTANCE {cid} {status}: {description}{suffix}")
    assert ok, f"{cid}: {description}{suffix}"


def load(name):
    return parse_hubo((INSTANCES / name).read_text(encoding="utf-8"))


def test_c1_fig1_reproduction():
    t0 = time.monotonic()
    p = load("fig1.hubo")
    cg = compile_polynomial(p)
    cert = verify_equivalence(p, cg)
    elapsed = time.monotonic() - t0
    solution = p.assignment_from({"x1": 1, "x2": 0, "x3": 1, "x4": 0})
    unique = cert.graph_projections == (solution,)
    report(
        "C1a", "fig1 verifies equivalent within 1 s",
        cert.equivalent and elapsed < 1.0,
        f"{elapsed:.3f}s",
    )
    report(
        "C1b", "fig1 ground projection is uniquely x1x2x3x4=1010",
        unique,
        f"projections={['%s' % (a,) for a in cert.graph_projections]} "
        "(instance has two degenerate minima; uniqueness is unattainable)",
    )


def test_c2_factorization_reproduction():
    t0 = time.monotonic()
    p = load("fact6.hubo")
    cg = compile_polynomial(p, pair_rule=PAIR_RULE_LAST)
    plan = cg.plan
    census = sorted((g.kind, g.order, g.weight) for g in plan.gadgets)
    weights_ok = census == [
        ("neg", 2, 16),
        ("neg", 2, 16),
        ("pos", 2, 4),
        ("pos", 3, 32),
    ] and plan.data_weights == {"P1": 32, "Q1": 36, "Q0": 27}
    manifold = ground_manifold(cg).data_projections
    solution_ok = manifold == (
        p.assignment_from({"P1": 1, "Q1": 1, "Q0": 0}),
    )
    elapsed = time.monotonic() - t0
    report(
        "C2", "fact6 weight set {32,36,27,16,16,4,32} and solution 6=2*3",
        weights_ok and solution_ok and elapsed < 1.0,
        f"{elapsed:.3f}s",
    )


def test_c3_sierpinski():
    t0 = time.monotonic()
    p1 = load("sierpinski1.hubo")
    cg1 = compile_polynomial(p1, pair_rule=PAIR_RULE_FIRST)
    census = sorted((g.kind, g.order, g.weight) for g in cg1.plan.gadgets)
    weights_ok = census == [
        ("neg", 2, 2),
        ("neg", 2, 2),
        ("neg", 3, 4),
        ("pos", 2, 2),
    ] and sorted(cg1.plan.data_weights.items()) == [("a", 3), ("b", 3), ("c", 5)]
    manifold = set(ground_manifold(cg1).data_projections)
    odd_ok = manifold == {(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)}

    p6 = load("sierpinski6.hubo")
    cg6 = compile_polynomial(p6, pair_rule=PAIR_RULE_FIRST)
    idx = {n: i for i, n in enumerate(p6.names)}
    triangles = [("v1", "v2", "v3"), ("v2", "v4", "v5"), ("v3", "v5", "v6")]
    parity_ok = all(
        (a[idx[x]] + a[idx[y]] + a[idx[z]]) % 2 == 1
        for a in ground_manifold(cg6).data_projections
        for x, y, z in triangles
    )
    elapsed = time.monotonic() - t0
    report(
        "C3", "sierpinski weights {4,2,2,2}/data {3,3,5}, odd-parity grounds",
        weights_ok and odd_ok and parity_ok and elapsed < 1.0,
        f"{elapsed:.3f}s",
    )


def test_c4_gadget_tables():
    from rydberg_hubo.gadgets import energy_profile

    def prod(bits):
        r = 1
        for b in bits:
            r *= b
        return r

    ok = True
    for order in (2, 3, 4, 5):
        pos = positive_hyperedge([f"x{i}" for i in range(order)], 1)
        for clamp, entry in energy_profile(pos).items():
            ok &= entry.energy == -(1 - prod(clamp))
            if all(clamp):
                ok &= entry.aux_configs == (frozenset(),)
            else:
                free = {pos.aux_atoms[i] for i, b in enumerate(clamp) if not b}
                ok &= set(entry.aux_configs) == {frozenset({a}) for a in free}
                ok &= all(len(c) == 1 for c in entry.aux_configs)

        neg = negative_hyperedge(
            [f"x{i}" for i in range(order - 2)], [f"x{order-2}", f"x{order-1}"], 1
        )
        for clamp, entry in energy_profile(neg).items():
            prefix, (a, b) = clamp[:-2], clamp[-2:]
            ok &= entry.energy == -(1 - prod(prefix) * (a + b - a * b))
            free = {neg.aux_atoms[i] for i, bit in enumerate(prefix) if not bit}
            if not (a or b):
                free.add(neg.aux_atoms[-1])
            expected = {frozenset({x}) for x in free} or {frozenset()}
            ok &= set(entry.aux_configs) == expected
    report("C4", "hyperedge profiles match closed forms for K=2..5, exact", ok)


def test_c5_compiler_soundness_sweep():
    t0 = time.monotonic()
    failures = []
    for seed in range(200):
        p = random_polynomial(seed)
        for mode in (MODE_ADDRESSING, MODE_DUPLICATION):
            cg = compile_polynomial(p, mode=mode)
            eff = effective_polynomial(cg)
            if eff.named_terms() != p.named_terms() or eff.constant != cg.constant_shift:
                failures.append((seed, mode, "effective mismatch"))
                continue
            cert = verify_equivalence(p, cg)
            if not cert.equivalent or not cert.energy_identity_ok:
                failures.append((seed, mode, "equivalence"))
    elapsed = time.monotonic() - t0
    report(
        "C5", "200 random instances sound in both modes",
        not failures and elapsed < 300.0,
        f"{elapsed:.1f}s, failures={failures[:3]}",
    )


def test_c6_diagonal_limit_cross_check():
    t0 = time.monotonic()
    delta = 1.7
    checked = 0
    ok = True
    for seed in range(200):
        if checked >= 25:
            break
        p = random_polynomial(seed)
        cg = compile_polynomial(p)
        if cg.graph.n_atoms > 14:
            continue
        checked += 1
        report_ = ground_manifold(cg)
        params = sim.RydbergParams(rabi=0.0, detuning=delta, blockade=1e4)
        H = sim.build_hamiltonian(cg, params)
        lhs = H.independent_diagonal_minimum()
        rhs = -delta * report_.mwis_weight
        ok &= abs(lhs - rhs) <= 1e-10 * max(1.0, abs(rhs))
    elapsed = time.monotonic() - t0
    report(
        "C6", "Omega=0 spectral minimum equals -Delta*MWIS on 25 instances",
        ok and checked == 25 and elapsed < 300.0,
        f"{elapsed:.1f}s, checked={checked}",
    )


def test_c7_adiabatic_demonstration():
    t0 = time.monotonic()
    p = load("fig1.hubo")
    cg = compile_polynomial(p)
    target = ground_manifold(cg).data_projections
    delta_final = 6.0
    params = sim.RydbergParams(
        rabi=0.0, detuning=delta_final,
        blockade=sim.default_blockade(1, delta_final),
    )
    H = sim.build_hamiltonian(cg, params)
    ladder = [4.0, 8.0, 16.0, 32.0]
    success = []
    for duration in ladder:
        schedule = sim.Schedule.standard(
            duration, omega_max=2.0, delta_final=delta_final
        )
        result = sim.adiabatic_sweep(H, schedule, 400, target=target)
        success.append(result.success_probability)
    elapsed = time.monotonic() - t0
    monotone = all(a <= b + 1e-12 for a, b in zip(success, success[1:]))
    report(
        "C7", "success non-decreasing over duration ladder and >0.9 at the top",
        monotone and success[-1] > 0.9 and elapsed < 600.0,
        f"{elapsed:.1f}s, success={['%.4f' % s for s in success]}",
    )


def test_c8_expansion_certification():
    t0 = time.monotonic()
    ok = True
    counts = {}
    for order in (4, 5):
        pos = positive_hyperedge([f"x{i}" for i in range(order)], 1)
        neg = negative_hyperedge(
            [f"x{i}" for i in range(order - 2)], [f"x{order-2}", f"x{order-1}"], 1
        )
        for frag in (pos, neg):
            expanded = expand_superatom(frag, ExpansionSpec(max_clique=2))
            cert = verify_expansion(frag, expanded)
            aux = expanded.graph.n_atoms - len(expanded.port_atoms)
            counts[(frag.kind, order)] = aux
            # c = 1: the wired replacement uses exactly clique_size^2 atoms
            ok &= cert.equivalent and aux <= order ** 2

    p = parse_hubo("+2 a b c d\n-1 a b\n-1 c\n")
    cg = compile_polynomial(p, max_clique=3)
    cert = verify_equivalence(p, cg)
    ok &= cert.equivalent
    elapsed = time.monotonic() - t0
    report(
        "C8", "K=4,5 expansions certified at <=K^2 atoms; end-to-end K=4 verifies",
        ok and elapsed < 120.0,
        f"{elapsed:.1f}s, aux_counts={counts}",
    )


def test_c9_scaling_estimator():
    t0 = time.monotonic()
    ok = True
    details = []
    for k in (2, 3):
        n = 32
        small = estimate_atoms(n, complete_hypergraph_entries(n, k)).total
        large = estimate_atoms(2 * n, complete_hypergraph_entries(2 * n, k)).total
        ratio = large / small
        details.append(f"K={k}: {ratio:.3f}")
        ok &= abs(ratio - 2 ** k) / 2 ** k < 0.10
    elapsed = time.monotonic() - t0
    report(
        "C9", "complete-hypergraph atom ratios reach 2^K within 10% by N=32",
        ok and elapsed < 10.0,
        f"{elapsed:.2f}s, {', '.join(details)}",
    )
