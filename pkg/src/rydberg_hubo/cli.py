"""Command-line front door: compile | verify | simulate | expand | estimate.

Exit codes: 0 success, 1 verification mismatch, 2 parse error, 3 compile
error, 4 verifier bound exceeded, 5 simulation cap exceeded. Outputs are
deterministic for identical inputs and flags; wall-clock timings go to
stderr only so artifacts stay byte-identical across runs.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import sys
import time
from pathlib import Path

from . import expand as expand_mod
from . import mwis, sim
from .compiler import (
    MODE_ADDRESSING,
    MODES,
    PAIR_RULE_LAST,
    PAIR_RULES,
    CompileError,
    CompiledGraph,
    compile_polynomial,
    dump_graph_json,
    load_graph_json,
    to_dot,
)
from .gadgets import GadgetFragment, negative_hyperedge, positive_hyperedge
from .poly import EnumerationBoundError, HuboParseError, parse_hubo
from .search import NodeBudgetExceeded

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_PARSE = 2
EXIT_COMPILE = 3
EXIT_BOUND = 4
EXIT_SIM_CAP = 5


def _common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--mode", choices=MODES, default=MODE_ADDRESSING,
        help="weight realization: per-atom detuning or gadget duplication",
    )
    parser.add_argument(
        "--pair-rule", choices=PAIR_RULES, default=PAIR_RULE_LAST,
        help="which two monomial variables form a negative hyperedge's pair",
    )
    parser.add_argument("--seed", type=int, default=0, help="recorded in reports")
    parser.add_argument("--json", action="store_true", help="machine-readable summary on stdout")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="rydhubo",
        description="Compile binary cost functions onto weighted Rydberg atom graphs.",
    )
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compile", help="lower a HUBO file to an atom graph")
    c.add_argument("input", help="HUBO source file")
    c.add_argument("--out", help="write graph JSON here")
    c.add_argument("--dot", help="write Graphviz DOT here")
    c.add_argument("--max-clique", type=int, help="expand superatoms above this clique size")
    _common_flags(c)

    v = sub.add_parser("verify", help="certify ground-state equivalence of a HUBO file")
    v.add_argument("input", help="HUBO source file")
    v.add_argument("--cert", help="write the certificate JSON here")
    v.add_argument("--witness-limit", type=int, default=32,
                   help="cap on discrepancy witnesses emitted in the certificate")
    v.add_argument("--max-clique", type=int, help="expand superatoms above this clique size")
    v.add_argument("--inject-fault", choices=["drop-edge"],
                   help="corrupt the compiled graph (negative control)")
    _common_flags(v)

    s = sub.add_parser("simulate", help="adiabatic sweep on a compiled graph")
    s.add_argument("graph", help="compiled graph JSON")
    s.add_argument("schedule", help='schedule JSON {"T":..,"omega":[[t,v]..],"delta":[[t,v]..]}')
    s.add_argument("--steps", type=int, default=400)
    s.add_argument("--out", help="write per-assignment probabilities CSV here")
    s.add_argument("--plot", help="render the sweep figure (PNG) here")
    s.add_argument("--blockade", type=float,
                   help="interaction strength U (default 4*max_weight*delta_final)")
    s.add_argument("--cap", type=int, default=sim.DEFAULT_ATOM_CAP,
                   help=f"atom cap (hard limit {sim.HARD_ATOM_CAP})")
    _common_flags(s)

    e = sub.add_parser("expand", help="bounded-clique expansion of one hyperedge gadget")
    e.add_argument("--kind", choices=["pos", "neg"], default="pos")
    e.add_argument("--order", type=int, required=True)
    e.add_argument("--weight", type=int, default=1)
    e.add_argument("--max-clique", type=int, default=3)
    e.add_argument("--out", help="write the expanded fragment graph JSON here")
    _common_flags(e)

    t = sub.add_parser("estimate", help="atom-count scaling for complete hypergraphs")
    t.add_argument("--order", type=int, action="append", required=True,
                   help="hyperedge order K (repeatable)")
    t.add_argument("--n-min", type=int, default=4)
    t.add_argument("--n-max", type=int, default=64)
    t.add_argument("--n-step", type=int, default=4)
    t.add_argument("--weight", type=int, default=1)
    t.add_argument("--out", help="write (n,k,mode,atoms) CSV here")
    t.add_argument("--plot", help="render the scaling figure (PNG) here")
    _common_flags(t)
    return p


def _sha256(path: str) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def _plan_summary(cg: CompiledGraph) -> dict:
    plan = cg.plan
    gadgets = []
    if plan is not None:
        gadgets = [
            {"kind": g.kind, "ports": list(g.ports), "weight": g.weight}
            for g in plan.gadgets
        ]
    roles: dict[str, int] = {}
    for a in cg.graph.atoms:
        roles[a.role] = roles.get(a.role, 0) + 1
    return {
        "variables": list(cg.variables),
        "mode": cg.mode,
        "constant_shift": cg.constant_shift,
        "atoms": cg.graph.n_atoms,
        "atoms_by_role": roles,
        "edges": len(cg.graph.edges),
        "gadgets": gadgets,
        "data_weights": (
            {v: plan.data_weights[v] for v in cg.variables} if plan else None
        ),
        "offset_weights": (
            {v: w for v, w in plan.offset_weights.items() if w} if plan else None
        ),
    }


def _print_summary(cg: CompiledGraph, out) -> None:
    plan = cg.plan
    print(f"variables: {' '.join(cg.variables)}", file=out)
    print(f"mode: {cg.mode}   atoms: {cg.graph.n_atoms}   edges: {len(cg.graph.edges)}",
          file=out)
    print(f"constant shift: {cg.constant_shift}", file=out)
    if plan is None:
        return
    for g in plan.gadgets:
        print(f"  {g.kind}({g.order}) on {' '.join(g.ports)}  weight {g.weight}", file=out)
    data = " ".join(f"{v}:{plan.data_weights[v]}" for v in cg.variables)
    print(f"  data weights: {data}", file=out)
    offsets = {v: w for v, w in plan.offset_weights.items() if w}
    if offsets:
        off = " ".join(f"{v}:{w}" for v, w in offsets.items())
        print(f"  offset weights: {off}", file=out)


def cmd_compile(args) -> int:
    source = Path(args.input).read_text(encoding="utf-8")
    p = parse_hubo(source)
    if not p.terms and not p.names:
        print("warning: input has no terms; compiling an empty graph", file=sys.stderr)
    cg = compile_polynomial(
        p, mode=args.mode, pair_rule=args.pair_rule, max_clique=args.max_clique
    )
    artifacts = {}
    if args.out:
        artifacts[args.out] = dump_graph_json(cg)
    if args.dot:
        artifacts[args.dot] = to_dot(cg)
    for path, text in artifacts.items():
        Path(path).write_text(text, encoding="utf-8")
    if args.json:
        report = {"input_sha256": _sha256(args.input), "seed": args.seed,
                  "pair_rule": args.pair_rule} | _plan_summary(cg)
        print(json.dumps(report, indent=2, sort_keys=True))
    else:
        _print_summary(cg, sys.stdout)
    return EXIT_OK


def _drop_one_clique_edge(cg: CompiledGraph) -> CompiledGraph:
    # First aux-aux edge in canonical order; breaking a superatom clique
    # changes the effective polynomial, which the verifier must catch.
    data_ids = set(cg.data_atom_ids)
    for edge in sorted(cg.graph.edges):
        if edge[0] not in data_ids and edge[1] not in data_ids:
            broken = type(cg.graph)(cg.graph.atoms, cg.graph.edges - {edge})
            return CompiledGraph(
                graph=broken,
                variables=cg.variables,
                var_to_atom=cg.var_to_atom,
                mode=cg.mode,
                constant_shift=cg.constant_shift,
                plan=cg.plan,
            )
    raise CompileError("graph has no auxiliary edge to drop")


def cmd_verify(args) -> int:
    source = Path(args.input).read_text(encoding="utf-8")
    p = parse_hubo(source)
    cg = compile_polynomial(
        p, mode=args.mode, pair_rule=args.pair_rule, max_clique=args.max_clique
    )
    if args.inject_fault == "drop-edge":
        cg = _drop_one_clique_edge(cg)
    cert = mwis.verify_equivalence(p, cg)
    payload = cert.to_json_dict(witness_limit=args.witness_limit)
    payload["input_sha256"] = _sha256(args.input)
    payload["seed"] = args.seed
    payload["mode"] = args.mode
    if args.cert:
        Path(args.cert).write_text(
            json.dumps(payload, indent=2, sort_keys=True) + "\n", encoding="utf-8"
        )
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        verdict = "equivalent" if cert.equivalent else "MISMATCH"
        print(f"{verdict}: {len(cert.graph_projections)} ground projection(s), "
              f"optimal set weight {cert.mwis_weight}")
        for a in cert.graph_projections:
            print("  " + "".join(map(str, a)) + "  (" +
                  ", ".join(f"{v}={b}" for v, b in zip(cert.variables, a)) + ")")
        if cert.witnesses:
            shown = cert.witnesses[: args.witness_limit]
            print(f"  witnesses ({len(cert.witnesses)} total):")
            for a in shown:
                print("    " + "".join(map(str, a)))
    return EXIT_OK if cert.equivalent else EXIT_MISMATCH


def cmd_simulate(args) -> int:
    cg = load_graph_json(args.graph)
    with open(args.schedule, "r", encoding="utf-8") as fh:
        schedule = sim.Schedule.from_json_dict(json.load(fh))
    max_w = max((a.weight for a in cg.graph.atoms), default=1)
    delta_final = max(abs(v) for _, v in schedule.delta) or 1.0
    blockade = args.blockade if args.blockade else sim.default_blockade(max_w, delta_final)
    params = sim.RydbergParams(rabi=0.0, detuning=delta_final, blockade=blockade)
    H = sim.build_hamiltonian(cg, params, cap=args.cap)
    target = mwis.ground_manifold(cg).data_projections
    result = sim.adiabatic_sweep(H, schedule, args.steps, target=target)

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["assignment", "probability"])
    for a, prob in sorted(result.probabilities.items()):
        writer.writerow(["".join(map(str, a)), f"{prob:.12g}"])
    if args.out:
        Path(args.out).write_text(buf.getvalue(), encoding="utf-8")
    if args.plot:
        from . import plots

        plots.save_simulation_figure(args.plot, schedule, result.probabilities, target)
    if args.json:
        print(json.dumps({
            "graph_sha256": _sha256(args.graph),
            "seed": args.seed,
            "steps": result.steps,
            "blockade": blockade,
            "success_probability": result.success_probability,
            "target": ["".join(map(str, t)) for t in target],
            "norm_drift": result.norm_drift,
        }, indent=2, sort_keys=True))
    else:
        if not args.out:
            sys.stdout.write(buf.getvalue())
        print(f"success probability on {len(target)} verified projection(s): "
              f"{result.success_probability:.6f}")
    return EXIT_OK


def _fragment_for(args) -> GadgetFragment:
    names = [f"x{i}" for i in range(args.order)]
    if args.kind == "pos":
        return positive_hyperedge(names, args.weight)
    return negative_hyperedge(names[:-2], names[-2:], args.weight)


def cmd_expand(args) -> int:
    frag = _fragment_for(args)
    spec = expand_mod.ExpansionSpec(max_clique=args.max_clique)
    expanded = expand_mod.expand_superatom(frag, spec)
    cert = expand_mod.verify_expansion(frag, expanded)
    summary = {
        "kind": args.kind,
        "order": args.order,
        "weight": args.weight,
        "max_clique": args.max_clique,
        "expanded": expanded is not frag,
        "aux_atoms_native": len(frag.aux_atoms),
        "aux_atoms_expanded": expanded.graph.n_atoms - len(expanded.port_atoms),
        "certified": cert.equivalent,
        "energy_offset": cert.constant,
        "seed": args.seed,
    }
    if args.out:
        out_cg = CompiledGraph(
            graph=expanded.graph,
            variables=expanded.ports,
            var_to_atom={v: i for v, i in zip(expanded.ports, expanded.port_atoms)},
            mode=args.mode,
            constant_shift=0,
            plan=None,
        )
        Path(args.out).write_text(dump_graph_json(out_cg), encoding="utf-8")
    if args.json:
        print(json.dumps(summary, indent=2, sort_keys=True))
    else:
        state = "expanded" if summary["expanded"] else "kept native"
        print(f"{args.kind}({args.order}) weight {args.weight}: {state}, "
              f"{summary['aux_atoms_expanded']} aux atoms, certified={cert.equivalent}")
    return EXIT_OK


def cmd_estimate(args) -> int:
    rows = []
    for k in args.order:
        for n in range(args.n_min, args.n_max + 1, args.n_step):
            if n < k:
                continue
            entries = expand_mod.complete_hypergraph_entries(n, k, weight=args.weight)
            est = expand_mod.estimate_atoms(n, entries, mode=args.mode)
            rows.append((n, k, args.mode, est.total))
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["n", "k", "mode", "atoms"])
    for row in rows:
        writer.writerow(row)
    if args.out:
        Path(args.out).write_text(buf.getvalue(), encoding="utf-8")
    if args.plot:
        from . import plots

        plots.save_scaling_figure(args.plot, rows)
    if args.json:
        print(json.dumps({
            "rows": [list(r) for r in rows],
            "seed": args.seed,
        }, indent=2, sort_keys=True))
    elif not args.out:
        sys.stdout.write(buf.getvalue())
    return EXIT_OK


_HANDLERS = {
    "compile": cmd_compile,
    "verify": cmd_verify,
    "simulate": cmd_simulate,
    "expand": cmd_expand,
    "estimate": cmd_estimate,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    started = time.monotonic()
    try:
        code = _HANDLERS[args.command](args)
    except HuboParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (CompileError, expand_mod.ExpansionError) as exc:
        print(f"compile error: {exc}", file=sys.stderr)
        return EXIT_COMPILE
    except (EnumerationBoundError, NodeBudgetExceeded) as exc:
        print(f"bound exceeded: {exc}", file=sys.stderr)
        return EXIT_BOUND
    except sim.SimulationCapError as exc:
        print(f"simulation cap: {exc}", file=sys.stderr)
        return EXIT_SIM_CAP
    finally:
        elapsed = time.monotonic() - started
        print(f"[{getattr(args, 'command', '?')}] {elapsed:.3f}s", file=sys.stderr)
    return code


def entrypoint() -> None:
    sys.exit(main())
