"""The ``homcat`` command line.

Exit status: 0 when every requested check passes, 1 when a check fails,
2 for unusable input (schema errors, window overflow, inapplicable bounds).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from .combcat import BudgetError, WindowError, category_from_json
from .exactla import GF, QQ
from .homology import (KoszulPreconditionError, degree_json, genetic_check, homology_dims, koszul_check,
                       resolution)
from .repmod import ExprError, ModuleError, evaluate, expr_from_json, max_object, validate_module
from .verify import (BOUND_IDS, RECIPES, BoundConfigError, CasePlan, CorpusPlan, Verdict, check_bound_suite,
                     default_corpus, run_corpus)

COMMANDS = ("validate", "homology", "degrees", "resolve", "check-bounds", "check-koszul", "check-genetic", "corpus")


class InputError(Exception):
    """Unusable input; the message names where the problem is."""


# ---------------------------------------------------------------------------
# parsing helpers
# ---------------------------------------------------------------------------


def parse_field(text):
    if text in (None, "Q", "QQ"):
        return QQ
    if isinstance(text, dict) and "Fp" in text:
        return GF(int(text["Fp"]))
    if isinstance(text, str) and text.startswith("Fp:"):
        return GF(int(text[3:]))
    raise InputError(f"field {text!r}: expected Q or Fp:p")


def parse_group(text: str | None):
    if text is None:
        return None
    if text == "s3" or text == "trivial":
        return text
    if text.startswith("cyclic:"):
        return {"cyclic": int(text.split(":", 1)[1])}
    if text.startswith("table:"):
        path = text.split(":", 1)[1]
        try:
            obj = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"--group {path}: {exc}") from None
        if isinstance(obj, list):
            obj = {"table": obj}
        return obj
    raise InputError(f"--group {text!r}: expected cyclic:n, s3 or table:file")


def category_from_flags(args, base=None):
    obj = dict(base) if isinstance(base, dict) else ({"kind": base} if base else {})
    if args.cat:
        obj = {"kind": args.cat}
    if args.group is not None:
        obj["group"] = parse_group(args.group)
    if args.d is not None:
        obj["d"] = args.d
    if args.q is not None:
        obj["q"] = args.q
    if not obj:
        raise InputError("no category: pass --cat or a spec file with a 'category' entry")
    try:
        return category_from_json(obj)
    except (ValueError, KeyError) as exc:
        raise InputError(f"category {json.dumps(obj, sort_keys=True)}: {exc}") from None


def load_spec(path: str) -> dict:
    try:
        obj = json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
    if not isinstance(obj, dict):
        raise InputError(f"{path}: top level must be a JSON object")
    return obj


def build_module(args, need_module: bool = True):
    """(cat, field, window, expr, module) from --spec plus overriding flags."""
    spec = load_spec(args.spec) if args.spec else {}
    where = args.spec or "flags"
    cat = category_from_flags(args, spec.get("category"))
    field = parse_field(args.field if args.field else spec.get("field", "Q"))
    window = args.window if args.window is not None else spec.get("window")
    if window is None:
        raise InputError(f"{where}: no window (set 'window' or pass --window)")
    if not isinstance(window, int) or window < 0:
        raise InputError(f"{where}: window must be a nonnegative integer, got {window!r}")
    if not need_module:
        return cat, field, window, None, None, spec
    if "module" not in spec:
        raise InputError(f"{where}: missing 'module' expression")
    try:
        expr = expr_from_json(spec["module"], cat, "module")
        top = max_object(expr)
    except ExprError as exc:
        raise InputError(f"{where}: {exc}") from None
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"{where}: module: {exc}") from None
    if top > window:
        raise InputError(f"{where}: module mentions object {top}, beyond window {window}")
    try:
        V = evaluate(expr, cat, field, window)
    except (ExprError, ModuleError, WindowError, ValueError) as exc:
        raise InputError(f"{where}: module: {exc}") from None
    return cat, field, window, expr, V, spec


def smax_of(args, spec, default=3):
    return args.smax if args.smax is not None else int(spec.get("s_max", default))


# ---------------------------------------------------------------------------
# output
# ---------------------------------------------------------------------------


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def rows_csv(header, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def verdicts_csv(verdicts) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=Verdict.CSV_FIELDS, lineterminator="\n")
    w.writeheader()
    for v in verdicts:
        w.writerow(v.to_json())
    return buf.getvalue()


def emit(args, text: str):
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_validate(args) -> int:
    _, _, _, _, V, _ = build_module(args)
    r = validate_module(V)
    report = {"ok": r.ok, "message": r.message, "witness": r.witness, "dims": list(V.dims),
              "fingerprint": V.fingerprint()}
    if args.format == "csv":
        emit(args, rows_csv(["ok", "fingerprint", "message"], [[r.ok, V.fingerprint(), r.message]]))
    else:
        emit(args, dumps(report))
    if not r.ok:
        print(f"homcat: {args.spec or 'module'}: not a functor: {r.message}", file=sys.stderr)
    return 0 if r.ok else 1


def cmd_homology(args) -> int:
    _, _, _, _, V, spec = build_module(args)
    t = homology_dims(V, smax_of(args, spec))
    emit(args, t.to_csv() if args.format == "csv" else dumps(t.to_json()))
    return 0


def cmd_degrees(args) -> int:
    _, _, _, _, V, spec = build_module(args)
    t = homology_dims(V, smax_of(args, spec))
    obj = {"td": degree_json(t.td), "gd": degree_json(t.gd), "hd": [degree_json(h) for h in t.hd],
           "window": t.window, "trusted_ranges": t.trusted_ranges}
    if args.format == "csv":
        rows = [["td", obj["td"]], ["gd", obj["gd"]]] + [[f"hd_{s}", h] for s, h in enumerate(obj["hd"])]
        emit(args, rows_csv(["statistic", "value"], rows))
    else:
        emit(args, dumps(obj))
    return 0


def cmd_resolve(args) -> int:
    _, _, _, _, V, spec = build_module(args)
    res = resolution(V, smax_of(args, spec))
    steps = [{"s": st.s, "generators": {str(j): m for j, m in sorted(st.generators.items())},
              "dims": list(st.module.dims), "h0": list(st.h0)} for st in res.steps]
    if args.format == "csv":
        rows = [[st["s"], j, m] for st in steps for j, m in st["generators"].items()]
        emit(args, rows_csv(["s", "object", "generators"], rows))
    else:
        emit(args, dumps({"mode": res.mode, "window": res.window, "s_max": res.s_max, "steps": steps}))
    return 0


def cmd_check_bounds(args) -> int:
    if args.spec:
        cat, field, window, expr, V, spec = build_module(args)
        plan = CasePlan(cat, window, smax_of(args, spec), "fixed", args.seed, field,
                        _bounds(args) or tuple(spec.get("bounds", ())) or None, expr,
                        spec.get("id", f"{Path(args.spec).stem}"))
    else:
        cat, field, window, _, _, _ = build_module(args, need_module=False)
        plan = CasePlan(cat, window, args.smax if args.smax is not None else 3, args.recipe, args.seed, field,
                        _bounds(args))
        V = None
    verdicts = sorted(check_bound_suite(plan, V), key=Verdict.sort_key)
    ok = all(v.passed for v in verdicts)
    if args.format == "csv":
        emit(args, verdicts_csv(verdicts))
    else:
        emit(args, dumps({"case": plan.case_id, "ok": ok, "verdicts": [v.to_json() for v in verdicts]}))
    return 0 if ok else 1


def _bounds(args):
    if not args.bounds:
        return None
    out = tuple(b.strip() for b in args.bounds.split(",") if b.strip())
    bad = [b for b in out if b not in BOUND_IDS]
    if bad:
        raise InputError(f"--bounds: unknown bound {bad[0]!r}; expected some of {', '.join(BOUND_IDS)}")
    return out


def cmd_check_koszul(args) -> int:
    _, _, _, _, V, spec = build_module(args)
    d = args.d_koszul if args.d_koszul is not None else spec.get("d")
    if d is None:
        raise InputError(f"{args.spec or 'flags'}: no generating degree (pass --degree or set 'd')")
    v = koszul_check(V, int(d), smax_of(args, spec))
    if args.format == "csv":
        emit(args, rows_csv(["s", "support"], [[s, " ".join(map(str, sup))] for s, sup in enumerate(v.supports)]))
    else:
        emit(args, dumps(v.to_json()))
    return 0 if v.ok else 1


def cmd_check_genetic(args) -> int:
    cat = category_from_flags(args, load_spec(args.spec).get("category") if args.spec else None)
    N = args.window if args.window is not None else 7
    s_top = args.smax if args.smax is not None else 3
    if s_top >= N:
        raise InputError(f"--smax {s_top} must be below --window {N}")
    out = [genetic_check(cat, s, N, linear_window=args.linear_window) for s in range(s_top + 1)]
    ok = all(v.ok for v in out)
    if args.format == "csv":
        emit(args, rows_csv(["s", "ok", "gd", "free", "message"],
                            [[v.s, v.ok, degree_json(v.gd), v.free, v.message] for v in out]))
    else:
        emit(args, dumps({"category": cat.to_json(), "window": N, "ok": ok, "checks": [v.to_json() for v in out]}))
    return 0 if ok else 1


def cmd_corpus(args) -> int:
    if args.spec:
        try:
            plan = CorpusPlan.from_json(load_spec(args.spec))
        except (KeyError, ValueError, ExprError) as exc:
            raise InputError(f"{args.spec}: {exc}") from None
    else:
        plan = default_corpus(seeds=args.seeds)
    if args.no_oracle:
        plan.oracle = False
    rep = run_corpus(plan, workers=args.workers)
    emit(args, rep.to_csv() if args.format == "csv" else dumps(rep.to_json()))
    for r in rep.failures():
        print(f"homcat: case {r.case_id} failed {r.error or r.oracle_message}".rstrip(), file=sys.stderr)
    return 0 if rep.ok else 1


HANDLERS = {
    "validate": cmd_validate, "homology": cmd_homology, "degrees": cmd_degrees, "resolve": cmd_resolve,
    "check-bounds": cmd_check_bounds, "check-koszul": cmd_check_koszul, "check-genetic": cmd_check_genetic,
    "corpus": cmd_corpus,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="homcat", description="Homological degrees of representations of "
                                "combinatorial categories, computed exactly on a finite window.")
    sub = p.add_subparsers(dest="command", required=True, metavar="{" + ",".join(COMMANDS) + "}")
    for name in COMMANDS:
        c = sub.add_parser(name)
        c.add_argument("--spec", help="JSON spec file (category, field, window, module)")
        c.add_argument("--cat", help="category kind: FI, OI, FI_G, OI_G, FI_d, OI_d, VI, FS_op, OS_op, STAR")
        c.add_argument("--group", help="cyclic:n, s3 or table:file")
        c.add_argument("--d", type=int, help="color count for FI_d / OI_d")
        c.add_argument("--q", type=int, help="field size for VI")
        c.add_argument("--field", help="Q or Fp:p")
        c.add_argument("--window", type=int)
        c.add_argument("--smax", type=int)
        c.add_argument("--seed", type=int, default=0)
        c.add_argument("--out", help="write the report here instead of stdout")
        c.add_argument("--format", choices=("json", "csv"), default="json")
        if name == "check-bounds":
            c.add_argument("--recipe", choices=RECIPES, default="torsionless")
            c.add_argument("--bounds", help="comma-separated bound ids")
        if name == "check-koszul":
            c.add_argument("--degree", dest="d_koszul", type=int, help="generating degree d")
        if name == "check-genetic":
            c.add_argument("--linear-window", type=int, help="also recompute with linear algebra on this window")
        if name == "corpus":
            c.add_argument("--seeds", type=int, default=20)
            c.add_argument("--workers", type=int, default=1)
            c.add_argument("--no-oracle", action="store_true")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return HANDLERS[args.command](args)
    except (InputError, BoundConfigError, KoszulPreconditionError, BudgetError, WindowError) as exc:
        print(f"homcat {args.command}: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
