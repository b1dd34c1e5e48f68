"""``endocalc`` command line.

Exit status: 0 on success, 1 when a checked predicate fails, a suite reports
failures or a field reconstruction fails, 2 on usage, parse or precondition
errors.
"""

from __future__ import annotations

import argparse
import ast
import json
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from .config import default_caps
from .errors import EndocalcError, ParseError
from .invariance import CheckKind, Mode, commutes, invariance
from .prering import RingKind, RingPresentation, global_domain, global_katakernel
from .structure import FieldTable, decompose_lines, find_lines, zilber_field
from .suites import available_suites, emit_report, run_suite, ser
from .workspace import Workspace, parse_workspace

PREDICATES = ("sharp", "flat", "invariant:strict", "invariant:weak", "invariant:almost")


class UsageError(Exception):
    pass


def _global_flags(p: argparse.ArgumentParser, top: bool) -> None:
    d = (lambda v: v) if top else (lambda v: argparse.SUPPRESS)
    p.add_argument("--workspace", metavar="PATH", default=d(None), help="workspace file")
    p.add_argument("--seed", type=int, default=d(1))
    p.add_argument("--trials", type=int, default=d(None), help="suite trials (default: per suite)")
    p.add_argument("--bound", type=int, default=d(4), help="word bound for slices (default 4)")
    p.add_argument("--json", action="store_true", default=d(False), help="print JSON")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="endocalc", description="Endogeny calculus on finitely generated abelian groups.")
    _global_flags(p, True)
    sub = p.add_subparsers(dest="command", required=True)

    def cmd(name: str, help_: str) -> argparse.ArgumentParser:
        s = sub.add_parser(name, help=help_)
        _global_flags(s, False)
        return s

    s = cmd("check", "sharp/flat commutation or invariance of a subgroup")
    s.add_argument("--predicate", choices=PREDICATES, required=True)
    s.add_argument("args", nargs="+", help="two relations, or a subgroup [[...], ...] then relations or rings")
    s = cmd("katakernel", "global katakernel of a ring")
    s.add_argument("ring")
    s = cmd("domain", "global domain of a near-ring")
    s.add_argument("ring")
    s = cmd("lines", "lines of a ring")
    s.add_argument("ring")
    s = cmd("decompose", "almost direct sum of lines for Gamma with commuting Delta")
    s.add_argument("gamma")
    s.add_argument("delta")
    s = cmd("zilber", "finite field from a G-minimal module")
    s.add_argument("group")
    s.add_argument("generators", nargs="+")
    s = cmd("lemmas", "run seeded lemma suites")
    s.add_argument("suites", nargs="*", help="suite names (default: all)")
    s.add_argument("--list", action="store_true", help="list suites and exit")
    s.add_argument("--timing", action="store_true", help="include elapsed time in reports")
    return p


# ---------------------------------------------------------------------------


def _load(args) -> Workspace:
    if not args.workspace:
        raise UsageError("this command needs --workspace PATH")
    path = Path(args.workspace)
    return parse_workspace(path.read_text(encoding="utf-8"), str(path))


def _lookup(table: dict, name: str, what: str):
    if name not in table:
        known = ", ".join(sorted(table)) or "none"
        raise UsageError(f"unknown {what} {name!r} (known: {known})")
    return table[name]


def _gens(sub) -> List[List[int]]:
    return [list(g) for g in sub.generators()]


def _emit(obj, as_json: bool, text: str) -> None:
    print(json.dumps(obj, indent=2) if as_json else text)


def _cmd_check(args, ws: Workspace) -> int:
    pred = args.predicate
    if pred in ("sharp", "flat"):
        if len(args.args) != 2:
            raise UsageError(f"{pred} takes two relation names")
        x, y = (_lookup(ws.relations, n, "relation") for n in args.args)
        v = commutes(x, y, CheckKind.SHARP if pred == "sharp" else CheckKind.FLAT)
        out = {"predicate": pred, "relations": args.args, "holds": v.holds, "clause": v.clause, "witness": ser(v.witness)}
        text = f"{pred}({args.args[0]}, {args.args[1]}): {'holds' if v.holds else 'fails'}"
        if not v.holds:
            text += f" (clause {v.clause}, witness {ser(v.witness)})"
        _emit(out, args.json, text)
        return 0 if v.holds else 1
    try:
        gens_b = ast.literal_eval(args.args[0])
    except (ValueError, SyntaxError):
        raise UsageError("invariance needs a subgroup literal like [[0, 1]] first")
    rels = []
    for n in args.args[1:]:
        if n in ws.rings:
            rels.extend(ws.rings[n].generators)
        else:
            rels.append(_lookup(ws.relations, n, "relation or ring"))
    if not rels:
        raise UsageError("invariance needs at least one relation")
    b = rels[0].ambient.subgroup([tuple(g) for g in gens_b])
    mode = {"strict": Mode.INVARIANT, "weak": Mode.WEAK, "almost": Mode.ALMOST}[pred.split(":")[1]]
    rep = invariance(b, rels, mode)
    out = {
        "predicate": pred,
        "subgroup": _gens(b),
        "relations": args.args[1:],
        "holds": rep.holds,
        "failing": rep.failing,
        "witnesses": [ser(v.witness) for v in rep.verdicts if not v.holds],
    }
    text = f"{pred}: {'holds' if rep.holds else 'fails for generators ' + str(rep.failing)}"
    _emit(out, args.json, text)
    return 0 if rep.holds else 1


def _cmd_katakernel(args, ws: Workspace) -> int:
    ring = _lookup(ws.rings, args.ring, "ring")
    k = global_katakernel(ring, default_caps())
    out = {"ring": args.ring, "katakernel": _gens(k), "order": k.order}
    _emit(out, args.json, f"Kat({args.ring}) = <{_gens(k)}>, order {k.order}")
    return 0


def _cmd_domain(args, ws: Workspace) -> int:
    ring = _lookup(ws.rings, args.ring, "ring")
    d, exact = global_domain(ring, args.bound, default_caps())
    out = {"ring": args.ring, "bound": args.bound, "domain": _gens(d), "index": _num(d.index), "exact": exact}
    _emit(out, args.json, f"Dom({args.ring}) = <{_gens(d)}>, index {d.index}, {'exact' if exact else 'slice approximation'}")
    return 0


def _num(x):
    return x if isinstance(x, int) else str(x)


def _cmd_lines(args, ws: Workspace) -> int:
    ring = _lookup(ws.rings, args.ring, "ring")
    certs = find_lines(ring, args.bound, default_caps())
    out = {
        "ring": args.ring,
        "bound": args.bound,
        "lines": [
            {
                "line": _gens(c.line),
                "rank": c.line.rank,
                "witness": ser(c.witness)["pairs"],
                "slice_bound": c.slice_bound,
                "contained_images_checked": c.contained_images_checked,
            }
            for c in certs
        ],
    }
    text = "\n".join(f"line {i}: <{_gens(c.line)}> rank {c.line.rank}" for i, c in enumerate(certs)) or "no lines"
    _emit(out, args.json, text)
    return 0


def _cmd_decompose(args, ws: Workspace) -> int:
    g = _lookup(ws.rings, args.gamma, "ring")
    d = _lookup(ws.rings, args.delta, "ring")
    rep = decompose_lines(g, d, args.bound, default_caps())
    out = {
        "gamma": args.gamma,
        "delta": args.delta,
        "bound": rep.word_bound,
        "complete": rep.complete,
        "blocking": rep.blocking,
        "lines": [_gens(x) for x in rep.lines],
        "line_zeros": [_gens(x) for x in rep.line_zeros],
        "projections": [ser(p)["pairs"] for p in rep.projections],
        "residual": _gens(rep.residual),
        "bikatakernel": _gens(rep.bikatakernel_bound),
        "checks": rep.checks,
    }
    lines = [f"{'complete' if rep.complete else 'incomplete'}: {len(rep.lines)} lines"]
    lines += [f"  L{i} = <{_gens(x)}>" for i, x in enumerate(rep.lines)]
    lines += [f"  {k}: {v}" for k, v in rep.checks.items()]
    if rep.blocking:
        lines.append(f"  blocked: {rep.blocking}")
    _emit(out, args.json, "\n".join(lines))
    return 0


def _cmd_zilber(args, ws: Workspace) -> int:
    a = _lookup(ws.groups, args.group, "group")
    gens = [_lookup(ws.relations, n, "relation") for n in args.generators]
    t = zilber_field(a, gens, default_caps())
    if isinstance(t, FieldTable):
        out = {
            "field": True,
            "order": t.order,
            "elements": [ser(e)["pairs"] for e in t.elements],
            "add_table": t.add_table,
            "mul_table": t.mul_table,
            "module_iso": [[i, list(v)] for i, v in t.module_iso],
            "base_point": list(t.base_point),
            "generators": t.generator_indices,
            "note": t.note,
        }
        _emit(out, args.json, f"field of order {t.order}")
        return 0
    out = {"field": False, "reason": t.reason, "detail": t.detail, "witness": ser(t.witness)}
    _emit(out, args.json, f"no field: {t.reason}" + (f" ({t.detail})" if t.detail else ""))
    return 1


def _cmd_lemmas(args) -> int:
    if args.list:
        print("\n".join(available_suites()))
        return 0
    names = args.suites or available_suites()
    reports = [run_suite(n, args.seed, args.trials) for n in names]
    if args.json:
        if len(reports) == 1:
            print(emit_report(reports[0], args.timing))
        else:
            print("[\n" + ",\n".join(emit_report(r, args.timing) for r in reports) + "\n]")
    else:
        for r in reports:
            status = "PASS" if r.ok else "FAIL"
            extra = f", {len(r.expected_failures)} expected" if r.expected_failures else ""
            t = f" in {r.elapsed:.1f}s" if args.timing else ""
            print(f"{status} {r.suite_name}: {r.trials} trials, {r.checks} checks, {len(r.failures)} failures{extra}{t}")
            for f in r.failures[:5]:
                print(f"    trial {f['trial']}: {f['claim']}")
    return 0 if all(r.ok for r in reports) else 1


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "lemmas":
            return _cmd_lemmas(args)
        ws = _load(args)
        return {
            "check": _cmd_check,
            "katakernel": _cmd_katakernel,
            "domain": _cmd_domain,
            "lines": _cmd_lines,
            "decompose": _cmd_decompose,
            "zilber": _cmd_zilber,
        }[args.command](args, ws)
    except ParseError as e:
        for ln, msg in e.diagnostics:
            print(f"{args.workspace}:{ln}: {msg}", file=sys.stderr)
        return 2
    except (UsageError, EndocalcError, OSError) as e:
        print(f"endocalc: {e}", file=sys.stderr)
        return 2
