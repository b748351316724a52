"""Command-line interface.

Exit codes: 0 success, 1 a crisp verifier disagreed, 2 usage or input
error, 3 a search budget ran out. Reports go to stdout, diagnostics to
stderr.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .corpus import full_corpus, groups, subgroup_choices
from .errors import BudgetExceeded, LoopError
from .holomorph import build_holomorph, left_combined_holomorph, right_combined_holomorph
from .io import format_holomorph, format_loop, format_perms, read_loop, read_perms, write_loop
from .isostrophe import TRANSFORMS
from .perm import (PermutationGroup, automorphism_group, closure, middle_regular_maps, mult_groups,
                   trivial_group)
from .search import CONSTRAINTS, SearchSpec, search
from .table import PREDICATES, all_predicates, predicate, validate_loop
from .theorems import (AMBIGUOUS, CRISP, THEOREMS, TheoremReport, golden_report, open_problem_scan,
                       sweep_ambiguous, verify)
from .topism import enumerate_atp

OK, DISAGREE, USAGE, BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _emit(args, data, text: str) -> None:
    if args.format == "json":
        print(json.dumps(data, sort_keys=True))
    else:
        print(text, end="" if text.endswith("\n") else "\n")


def _load(args):
    if not args.loop:
        raise UsageError("--loop FILE is required")
    return read_loop(args.loop)


def _group(args, loop) -> PermutationGroup:
    choice = args.subgroup or "full"
    if choice == "trivial":
        return trivial_group(loop.n)
    if choice == "full":
        return automorphism_group(loop)
    if choice == "all":
        raise UsageError("--subgroup all is only accepted by verify")
    gens = read_perms(choice)
    return closure(gens, degree=loop.n) if gens else trivial_group(loop.n)


def _groups(args, loop) -> list[PermutationGroup]:
    if (args.subgroup or "full") == "all":
        return subgroup_choices(loop)
    return [_group(args, loop)]


def _bool(v) -> str:
    return "n/a" if v is None else str(v).lower()


# ---------------------------------------------------------------------------

def cmd_check(args) -> int:
    loop = _load(args)
    names = args.constraint or list(PREDICATES)
    for c in names:
        if c not in PREDICATES:
            raise UsageError(f"unknown predicate {c!r}")
    preds = all_predicates(loop) if not args.constraint else {c: predicate(loop, c) for c in names}
    data = {"loop": loop.digest(), "order": loop.n, "predicates": preds}
    text = f"loop {loop.digest()} of order {loop.n}\n" + "".join(f"{k}: {_bool(v)}\n" for k, v in preds.items())
    _emit(args, data, text)
    return OK


def cmd_aut(args) -> int:
    loop = _load(args)
    aut = automorphism_group(loop)
    data = {"loop": loop.digest(), "order": len(aut), "elements": [list(p) for p in aut.sorted()]}
    _emit(args, data, f"# automorphism group of order {len(aut)}\n" + format_perms(aut.sorted()))
    return OK


def cmd_mulgrp(args) -> int:
    loop = _load(args)
    m_rho, m_all = mult_groups(loop)
    mr = middle_regular_maps(loop)
    data = {"loop": loop.digest(), "M_rho": len(m_rho), "M": len(m_all), "Phi": len(mr.phi), "Psi": len(mr.psi),
            "middle_regular_pairs": [[list(u), list(v)] for u, v in mr.pairs]}
    text = (f"M_rho: order {len(m_rho)}\nM: order {len(m_all)}\n"
            f"Phi: order {len(mr.phi)}\nPsi: order {len(mr.psi)}\n")
    _emit(args, data, text)
    return OK


def cmd_topisms(args) -> int:
    loop = _load(args)
    atp = enumerate_atp(loop, args.limit)
    data = {"loop": loop.digest(), "count": len(atp), "topisms": [json.loads(t.to_json()) for t in atp]}
    text = f"# {len(atp)} autotopisms\n" + "".join(
        f"{' '.join(map(str, t.u))} | {' '.join(map(str, t.v))} | {' '.join(map(str, t.w))}\n" for t in atp)
    _emit(args, data, text)
    return OK


def cmd_holomorph(args) -> int:
    loop = _load(args)
    H = build_holomorph(loop, _group(args, loop))
    text = format_holomorph(H)
    if args.out:
        Path(args.out).mkdir(parents=True, exist_ok=True)
        (Path(args.out) / "holomorph.loop").write_text(text)
    data = {"loop": loop.digest(), "group_order": len(H.elements), "order": H.order,
            "elements": [list(p) for p in H.elements], "table": H.flat.rows()}
    _emit(args, data, text)
    return OK


def cmd_combined(args) -> int:
    loop = _load(args)
    side = args.side
    kind = "right_bol" if side == "right" else "left_bol"
    if not predicate(loop, kind):
        raise UsageError(f"the {side} combined holomorph needs a {kind.replace('_', ' ')} loop")
    star = TRANSFORMS[(kind.replace("_", "-"), "middle")](loop)
    group = _group(args, loop)
    build = right_combined_holomorph if side == "right" else left_combined_holomorph
    comb = build(loop, star, group)
    equal = bool((comb.table == build_holomorph(star, group).flat.table).all())
    data = {"loop": loop.digest(), "side": side, "group_order": len(group), "is_loop": comb.is_loop,
            "closed_form_agrees": comb.closed_form_agrees, "equals_middle_holomorph": equal,
            "table": comb.table.tolist()}
    text = (f"{side} combined holomorph of order {comb.table.shape[0]}\n"
            f"is_loop: {_bool(comb.is_loop)}\nclosed_form_agrees: {_bool(comb.closed_form_agrees)}\n"
            f"equals_middle_holomorph: {_bool(equal)}\n")
    _emit(args, data, text)
    return OK if comb.closed_form_agrees else DISAGREE


def cmd_isostrophe(args) -> int:
    loop = _load(args)
    key = (args.source, args.target)
    if key not in TRANSFORMS:
        raise UsageError(f"no transform from {args.source} to {args.target}")
    src_pred = {"right-bol": "right_bol", "left-bol": "left_bol", "middle": "middle_bol"}[args.source]
    if not predicate(loop, src_pred):
        raise UsageError(f"input loop is not {src_pred.replace('_', ' ')}")
    out = TRANSFORMS[key](loop)
    if args.out:
        Path(args.out).mkdir(parents=True, exist_ok=True)
        write_loop(Path(args.out) / "isostrophe.loop", out, [f"{args.target} image of {loop.digest()}"])
    _emit(args, {"loop": out.digest(), "order": out.n, "table": out.rows()}, format_loop(out))
    return OK


def _report_text(r: TheoremReport) -> str:
    lines = [f"{r.theorem} on {r.instance.get('name') or r.instance['loop']} |A|={r.instance.get('group_order')}"]
    if r.crisp:
        lines.append(f"  lhs={_bool(r.lhs)} rhs={_bool(r.rhs)} agree={_bool(r.agree)}")
        for k, v in sorted(r.details.items()):
            lines.append(f"  {k}: {_bool(v)}")
        for w in r.witnesses:
            lines.append(f"  witness: {w}")
    else:
        for row in r.matrix:
            lines.append(f"  [{'ok' if row.consistent else 'XX'}] {row.reading}: premise={_bool(row.premise)} "
                         f"lhs={_bool(row.lhs)} rhs={_bool(row.rhs)}")
    return "\n".join(lines) + "\n"


def cmd_verify(args) -> int:
    if not args.theorem:
        raise UsageError("--theorem is required")
    if args.theorem not in THEOREMS:
        raise UsageError(f"unknown theorem {args.theorem!r}; choose from {', '.join(THEOREMS)}")
    if not args.loop:
        return _verify_corpus(args)
    loop = _load(args)
    reports = [verify(args.theorem, loop, g, witnesses=True, name=Path(args.loop).stem)
               for g in _groups(args, loop)]
    if args.format == "json":
        data = reports[0].to_dict() if len(reports) == 1 else [r.to_dict() for r in reports]
        print(json.dumps(data, sort_keys=True))
    else:
        for r in reports:
            print(_report_text(r), end="")
    crisp_fail = any(r.crisp and not r.agree for r in reports)
    return DISAGREE if crisp_fail else OK


def _verify_corpus(args) -> int:
    if args.theorem in CRISP:
        raise UsageError("crisp statements need --loop; corpus sweeps cover the ambiguous ones")
    sweep = sweep_ambiguous(full_corpus())
    entry = sweep[args.theorem]
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "ambiguous.json").write_text(golden_report())
        for name, rows in entry["counterexample_loops"].items():
            write_loop(out / f"counterexample_{args.theorem}_{name}.loop", validate_loop(rows),
                       [f"no reading of {args.theorem} survives on this loop"])
    text = [f"{args.theorem}: {entry['instances']} instances"]
    for k, s in entry["readings"].items():
        text.append(f"  {k}: consistent on {s['consistent']}/{s['instances']} (premise on {s['premise_holds']})")
    text.append("consistent readings: " + (", ".join(entry["consistent_readings"]) or "none"))
    if entry["counterexample_loops"]:
        text.append("counterexample loops: " + ", ".join(entry["counterexample_loops"]))
    _emit(args, entry, "\n".join(text))
    return OK


def cmd_enumerate(args) -> int:
    if args.order is None:
        raise UsageError("--order is required")
    spec = SearchSpec(args.order, tuple(args.constraint or ()), args.limit, args.budget_nodes,
                      args.timeout_secs, args.iso_reduce)
    res = search(spec, jobs=args.jobs, seed=args.seed)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        files = []
        for k, loop in enumerate(res.loops, 1):
            fname = f"loop_{k:04d}.loop"
            write_loop(out / fname, loop)
            files.append({"file": fname, "digest": loop.digest()})
        manifest = {"order": args.order, "constraints": list(spec.constraints), "iso_reduce": args.iso_reduce,
                    "count": len(res.loops), "nodes": res.nodes, "complete": res.complete, "loops": files}
        (out / "manifest.json").write_text(json.dumps(manifest, sort_keys=True, indent=1) + "\n")
    data = {"order": args.order, "constraints": list(spec.constraints), "count": len(res.loops),
            "nodes": res.nodes, "complete": res.complete, "loops": [loop.rows() for loop in res.loops]}
    text = f"{len(res.loops)} loops, {res.nodes} nodes, complete: {_bool(res.complete)}\n"
    if not args.out:
        text += "".join(format_loop(loop) + "\n" for loop in res.loops)
    _emit(args, data, text)
    if not res.complete:
        print("search budget exhausted; output is partial", file=sys.stderr)
        return BUDGET
    return OK


def cmd_scan(args) -> int:
    top = args.order or 5
    if top > 6:
        raise UsageError("exhaustive scans stop at order 6")
    rep = open_problem_scan(range(1, top + 1))
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for s in rep["separating"]:
            write_loop(out / f"separating_{s['name']}.loop", validate_loop(s["table"]))
    c = rep["contingency"]
    text = (f"{rep['loops']} loops of order 1..{top}\n"
            f"middle_bol & syrbu: {c['mb&syrbu']}\nmiddle_bol only: {c['mb&!syrbu']}\n"
            f"syrbu only: {c['!mb&syrbu']}\nneither: {c['!mb&!syrbu']}\n")
    _emit(args, rep, text)
    return OK


def cmd_info(args) -> int:
    data = {"version": __version__, "theorems": {"crisp": list(CRISP), "ambiguous": list(AMBIGUOUS)},
            "predicates": list(PREDICATES), "constraints": list(CONSTRAINTS),
            "bundled_groups": list(groups())}
    text = (f"midbol {__version__}\ncrisp theorems: {', '.join(CRISP)}\n"
            f"ambiguous theorems: {', '.join(AMBIGUOUS)}\npredicates: {', '.join(PREDICATES)}\n"
            f"search constraints: {', '.join(CONSTRAINTS)}\n")
    _emit(args, data, text)
    return OK


COMMANDS = {
    "check": cmd_check, "aut": cmd_aut, "mulgrp": cmd_mulgrp, "topisms": cmd_topisms,
    "holomorph": cmd_holomorph, "combined": cmd_combined, "isostrophe": cmd_isostrophe,
    "verify": cmd_verify, "enumerate": cmd_enumerate, "scan-open-problem": cmd_scan, "info": cmd_info,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--loop", metavar="FILE")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--out", metavar="DIR")

    p = _Parser(prog="midbol", description="Middle Bol loops, their holomorphs and isostrophes.")
    p.add_argument("--version", action="version", version=f"midbol {__version__}")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True
    sp = {name: sub.add_parser(name, parents=[common]) for name in COMMANDS}
    sp["check"].add_argument("--all", action="store_true", help="every predicate (the default)")
    sp["check"].add_argument("--constraint", action="append", metavar="NAME")
    sp["topisms"].add_argument("--limit", type=int)
    for name in ("holomorph", "combined", "verify"):
        sp[name].add_argument("--subgroup", metavar="all|trivial|full|FILE")
    sp["combined"].add_argument("--side", choices=("right", "left"), default="right")
    sp["isostrophe"].add_argument("--from", dest="source", required=True,
                                  choices=("right-bol", "left-bol", "middle"))
    sp["isostrophe"].add_argument("--to", dest="target", required=True,
                                  choices=("right-bol", "left-bol", "middle"))
    sp["verify"].add_argument("--theorem", metavar="ID")
    e = sp["enumerate"]
    e.add_argument("--order", type=int)
    e.add_argument("--constraint", action="append", metavar="NAME")
    e.add_argument("--iso-reduce", action="store_true")
    e.add_argument("--limit", type=int)
    e.add_argument("--budget-nodes", type=int)
    e.add_argument("--timeout-secs", type=float)
    e.add_argument("--jobs", type=int, default=1)
    e.add_argument("--seed", type=int, help="shuffle parallel job submission (stress testing only)")
    sp["scan-open-problem"].add_argument("--order", type=int, help="largest order scanned (default 5)")
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "all", False) and getattr(args, "constraint", None):
            raise UsageError("--all and --constraint are mutually exclusive")
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"midbol: usage error: {exc}", file=sys.stderr)
        return USAGE
    except BudgetExceeded as exc:
        print(f"midbol: {exc}", file=sys.stderr)
        return BUDGET
    except (LoopError, ValueError, OSError) as exc:
        print(f"midbol: {type(exc).__name__}: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
