"""Command-line entry point: ``explosion <command> ...``.

Exit codes: 0 ok, 1 input error, 2 budget exhausted.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import __version__
from .companions import MODES, entails_companion
from .core import BudgetExceeded, DomainError, FiniteStructure, RuleStructure, consequence
from .formula import ParseError, parse, parse_list, to_text
from .gallery import builtin_names, load_builtin
from .matrix import Matrix, entails
from .principles import check_many, quasi_negations
from .principles.verdict import Budget, parse_principles
from .serialize import (
    canonical_dumps, check_entry, finite_to_json, load_logic_doc, make_report, read_logic, validate,
)

EXIT_OK, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2


class InputError(Exception):
    pass


def _budget(a) -> Budget:
    return Budget(pool_vars=a.pool_vars, pool_depth=a.pool_depth, max_size=a.max_size, seed=a.seed)


def _budget_json(b: Budget) -> dict:
    return {"pool_vars": b.pool_vars, "pool_depth": b.pool_depth, "max_size": b.max_size, "seed": b.seed}


def _emit(doc: dict, text_lines: list[str], fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(doc, ensure_ascii=False, indent=2) + "\n")
    else:
        out.write("\n".join(text_lines) + "\n")


def check_line(c: dict) -> str:
    s = f"{c['principle']}: {c['verdict']} scope={canonical_dumps(c['scope'])} witness={canonical_dumps(c['witness'])}"
    if c.get("note"):
        s += f" note={c['note']}"
    return s


def parse_check_line(line: str) -> dict:
    """Inverse of :func:`check_line` (timing is not part of the text form)."""
    head, _, rest = line.partition(" scope=")
    principle, _, verdict = head.rpartition(": ")
    scope, _, rest = rest.partition(" witness=")
    witness, _, note = rest.partition(" note=")
    d = {"principle": principle, "verdict": verdict, "scope": json.loads(scope), "witness": json.loads(witness)}
    if note:
        d["note"] = note
    return d


# commands

def cmd_check(a, out) -> int:
    if a.from_report:
        rep = json.loads(Path(a.from_report).read_text("utf-8"))
        validate(rep, "report")
        inp = rep["input"]
        logic = load_logic_doc(inp["logic"])
        doc = inp["logic"]
        principles = parse_principles(",".join(inp["principles"]))
        b = inp["budget"]
        budget = Budget(b["pool_vars"], b["pool_depth"], b["max_size"], seed=b["seed"])
    else:
        if not a.logic or not a.principle:
            raise InputError("check needs --logic and --principle (or --from-report)")
        logic, doc = read_logic(a.logic)
        principles = parse_principles(a.principle)
        budget = _budget(a)
    checks = []
    exhausted = False
    for p in principles:
        t0 = time.perf_counter()
        [v] = check_many(logic, [p], budget)
        checks.append(check_entry(v, time.perf_counter() - t0))
        exhausted |= v.note == "budget exceeded"
    inputs = {"logic": doc, "principles": [str(p) for p in principles], "budget": _budget_json(budget)}
    rep = make_report("check", inputs, _budget_json(budget), checks)
    lines = [f"explosion {__version__} check input={rep['input_digest']}"] + [check_line(c) for c in checks]
    _emit(rep, lines, a.format, out)
    return EXIT_BUDGET if exhausted else EXIT_OK


def _element_or_formula(logic, text):
    if isinstance(logic, FiniteStructure):
        return logic.index(text.strip())
    if isinstance(logic, Matrix):
        return parse(text, logic.sig)
    raise InputError(f"{type(logic).__name__} logics are not supported by this command")


def _premises(logic, text):
    if not text.strip():
        return []
    if isinstance(logic, FiniteStructure):
        return [logic.index(x.strip()) for x in text.split(",") if x.strip()]
    return parse_list(text, logic.sig)


def cmd_qn(a, out) -> int:
    logic, doc = read_logic(a.logic)
    alpha = _element_or_formula(logic, a.formula)
    if isinstance(logic, FiniteStructure):
        qn = [logic.names[i] for i in quasi_negations(logic, alpha)]
        scope = {"kind": "exact"}
        shown = logic.names[alpha]
    else:
        qn = [to_text(f) for f in quasi_negations(logic, alpha, _budget(a))]
        scope = {"kind": "bounded", "pool_vars": a.pool_vars, "pool_depth": a.pool_depth}
        shown = to_text(alpha)
    res = {"command": "qn", "alpha": shown, "scope": scope, "qn": qn}
    _emit(res, [f"QN({shown}) [{len(qn)} in scope {canonical_dumps(scope)}]"] + qn, a.format, out)
    return EXIT_OK


def cmd_entail(a, out) -> int:
    logic, doc = read_logic(a.logic)
    gamma = _premises(logic, a.premises)
    alpha = _element_or_formula(logic, a.conclusion)
    if isinstance(logic, FiniteStructure):
        ok = alpha in consequence(logic, gamma)
    else:
        ok = entails(logic, gamma, alpha)
    res = {"command": "entail", "premises": a.premises, "conclusion": a.conclusion, "entails": ok}
    _emit(res, ["true" if ok else "false"], a.format, out)
    return EXIT_OK


def cmd_companion(a, out) -> int:
    base, doc = read_logic(a.base)
    if not isinstance(base, Matrix):
        raise InputError("companions are built over matrices")
    gamma = _premises(base, a.premises)
    alpha = parse(a.conclusion, base.sig)
    ok = entails_companion(base, a.mode, gamma, alpha, strict=a.strict)
    res = {"command": "companion", "base": base.name, "mode": a.mode, "strict": a.strict,
           "premises": [to_text(g) for g in gamma], "conclusion": to_text(alpha), "entails": ok}
    _emit(res, ["true" if ok else "false"], a.format, out)
    return EXIT_OK


def _query(a):
    from .miner import SeparationQuery
    from .principles.verdict import PrincipleId, Status

    if a.query:
        doc = json.loads(Path(a.query).read_text("utf-8"))
        validate(doc, "separation_query")
        req = tuple((PrincipleId.parse(k), Status(v)) for k, v in doc["require"].items())
        kw = {k: doc[k] for k in ("max_carrier", "min_carrier", "samples", "seed") if k in doc}
        return SeparationQuery(req, frozenset(doc.get("structural_filters", ())), **kw)
    if not a.require:
        raise InputError("mine needs --require or --query")
    filters = frozenset(x.strip() for x in a.filters.split(",") if x.strip()) if a.filters else frozenset()
    return SeparationQuery.parse(a.require, structural_filters=filters, max_carrier=a.max_carrier,
                                 min_carrier=a.min_carrier, seed=a.seed)


def cmd_mine(a, out) -> int:
    from .miner import find_separation

    q = _query(a)
    r = find_separation(q)
    res = {"command": "mine", "query": q.to_json(), **r.to_json()}
    parts = [f"n={n} ({sc}): " + ("found" if f else "none") for n, sc, f in r.searched]
    lines = ["searched " + ", ".join(parts)]
    if r.structure is not None:
        s = r.structure
        fam = [s.show(m) for m in range(1 << s.size) if s.trivial[m]]
        lines.append(f"found n={r.n}; trivial sets: {' '.join(fam)}")
        for name, f in s.unary_ops.items():
            lines.append(f"{name}: " + " ".join(f"{s.names[i]}↦{s.names[j]}" for i, j in enumerate(f)))
        lines.append(canonical_dumps(finite_to_json(s)))
    else:
        lines.append("NONE")
    _emit(res, lines, a.format, out)
    return EXIT_OK


def cmd_gallery_list(a, out) -> int:
    rows = []
    for name in builtin_names():
        try:
            obj = load_builtin(name)
            kind = "matrix" if isinstance(obj, Matrix) else "rule" if isinstance(obj, RuleStructure) else "finite"
        except DomainError:
            kind = "finite (parameters required)"
        rows.append({"name": name, "kind": kind})
    _emit({"command": "gallery-list", "builtins": rows}, [f"{r['name']}\t{r['kind']}" for r in rows], a.format, out)
    return EXIT_OK


def cmd_battery(a, out) -> int:
    from .miner import run_battery

    rep = run_battery(a.n, jobs=a.jobs, sample=a.sample, op_sample=a.op_sample, seed=a.seed)
    res = {"command": "battery", "n": rep.n, "tables": rep.tables, "scope": rep.scope, "ok": rep.ok,
           "laws": [{"law": r.law, "scope": r.scope, "checked": r.checked, "violations": r.violations,
                     "example": r.example} for r in rep.results]}
    _emit(res, [f"n={rep.n} tables={rep.tables} scope={rep.scope}"] + rep.lines(), a.format, out)
    return EXIT_OK


# parser

class _Parser(argparse.ArgumentParser):
    # usage errors are input errors, not budget exhaustion
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _pool_flags(p):
    p.add_argument("--pool-vars", type=int, default=2, metavar="N", help="variables in the formula pool (default 2)")
    p.add_argument("--pool-depth", type=int, default=3, metavar="D", help="maximum pool depth (default 3)")
    p.add_argument("--max-size", type=int, default=3, metavar="K", help="largest premise set searched (default 3)")
    p.add_argument("--seed", type=int, default=0, metavar="S", help="seed for sampled searches (default 0)")


def _fmt(p):
    p.add_argument("--format", choices=("json", "text"), default="text", help="output format (default text)")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="explosion", description="Check explosion principles on concrete logics.")
    ap.add_argument("--version", action="version", version=f"explosion {__version__}")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("check", help="decide principles on a logic")
    p.add_argument("--logic", metavar="PATH|builtin:NAME", help="logic spec file or builtin name")
    p.add_argument("--principle", metavar="ID[,...]", help="comma-separated principle ids")
    p.add_argument("--from-report", metavar="PATH", help="re-run the inputs embedded in a JSON report")
    p.add_argument("--jobs", type=int, default=1, metavar="N", help="worker processes (default 1)")
    _pool_flags(p)
    _fmt(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("qn", help="quasi-negations of a formula or element")
    p.add_argument("--logic", required=True, metavar="PATH|builtin:NAME")
    p.add_argument("--formula", required=True, metavar="F")
    _pool_flags(p)
    _fmt(p)
    p.set_defaults(func=cmd_qn)

    p = sub.add_parser("entail", help="decide Γ ⊢ α")
    p.add_argument("--logic", required=True, metavar="PATH|builtin:NAME")
    p.add_argument("--premises", default="", metavar="F[,...]")
    p.add_argument("--conclusion", required=True, metavar="F")
    _fmt(p)
    p.set_defaults(func=cmd_entail)

    p = sub.add_parser("companion", help="entailment in a companion of a matrix")
    p.add_argument("--base", required=True, metavar="PATH|builtin:NAME")
    p.add_argument("--mode", required=True, choices=MODES)
    p.add_argument("--premises", default="", metavar="F[,...]")
    p.add_argument("--conclusion", required=True, metavar="F")
    p.add_argument("--strict", action="store_true", help="strict right companion")
    _fmt(p)
    p.set_defaults(func=cmd_companion)

    p = sub.add_parser("mine", help="search for a smallest separating structure")
    p.add_argument("--require", metavar="ID=proven|refuted[,...]")
    p.add_argument("--query", metavar="PATH", help="separation query as JSON")
    p.add_argument("--filters", metavar="F[,...]", help="reflexive, monotone, transitive")
    p.add_argument("--max-carrier", type=int, default=4, metavar="N")
    p.add_argument("--min-carrier", type=int, default=1, metavar="N")
    p.add_argument("--seed", type=int, default=0, metavar="S")
    p.add_argument("--jobs", type=int, default=1, metavar="N")
    _fmt(p)
    p.set_defaults(func=cmd_mine)

    p = sub.add_parser("gallery-list", help="list builtin logics")
    _fmt(p)
    p.set_defaults(func=cmd_gallery_list)

    p = sub.add_parser("battery", help="check the implication laws on every table of a carrier")
    p.add_argument("--n", type=int, default=3)
    p.add_argument("--jobs", type=int, default=1, metavar="N")
    p.add_argument("--sample", type=int, default=None, metavar="K", help="sample K tables instead of all")
    p.add_argument("--op-sample", type=int, default=1_000_000, metavar="K")
    p.add_argument("--seed", type=int, default=0, metavar="S")
    _fmt(p)
    p.set_defaults(func=cmd_battery)
    return ap


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except BudgetExceeded as e:
        print(f"explosion: budget exhausted: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except (InputError, DomainError, ParseError, KeyError, ValueError, OSError, json.JSONDecodeError) as e:
        print(f"explosion: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
