"""Command line entry point: ``apollonian <subcommand> ...``.

Exit codes: 0 success, 2 bad input, 3 a ``--assert`` check or internal
consistency check failed.  Output bytes depend only on the arguments.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from typing import Any, Dict, List, Optional, Sequence, Tuple

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_ASSERT = 3

RATIO_TARGET = 5 / 3


class InputError(Exception):
    pass


def _f6(x: float) -> str:
    return f"{x:.6f}"


def _r6(x: float) -> float:
    return float(f"{x:.6f}")


def _fmt_q(q: Sequence[int]) -> str:
    return "(" + ",".join(str(v) for v in q) + ")"


def parse_quadruple(text: str) -> Tuple[int, int, int, int]:
    parts = [p for p in text.replace("(", "").replace(")", "").replace(",", " ").split()]
    if len(parts) != 4:
        raise InputError(f"expected four integers, got {text!r}")
    try:
        return tuple(int(p) for p in parts)  # type: ignore[return-value]
    except ValueError:
        raise InputError(f"expected four integers, got {text!r}") from None


def parse_range(text: str) -> List[int]:
    """'5' -> [5]; '1..30' -> [1, ..., 30]; '1,4,9' -> [1, 4, 9]."""
    try:
        if ".." in text:
            lo, hi = text.split("..")
            return list(range(int(lo), int(hi) + 1))
        return [int(p) for p in text.split(",") if p.strip()]
    except ValueError:
        raise InputError(f"bad range {text!r}") from None


def thread_count(flag: Optional[int]) -> int:
    if flag is not None:
        return max(1, flag)
    env = os.environ.get("APOLLONIAN_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise InputError(f"APOLLONIAN_THREADS must be an integer, got {env!r}") from None
    return os.cpu_count() or 1


def _level(k: Optional[int], required: bool = True) -> int:
    from .core_forms import is_descartes_level

    if k is None:
        if required:
            raise InputError("a level -k is required")
        return 0
    if not is_descartes_level(k):
        raise InputError(f"level {k} is not 0 or 1 mod 4, so it has no integral quadruples")
    return k


def _csv(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _json(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


# -- subcommands -----------------------------------------------------------


def cmd_reduce(args) -> Tuple[str, bool]:
    from .reduction import reduce

    q = parse_quadruple(" ".join(args.quadruple))
    if not any(q):
        raise InputError("the zero quadruple cannot be reduced")
    tr = reduce(q)
    res = tr.result
    ok = True
    if args.format == "json":
        return _json({
            "start": list(tr.start),
            "steps": [{"generator": i, "quadruple": list(v)} for i, v in tr.steps],
            "result": list(res.quadruple),
            "kind": res.kind.value,
            "orientation": res.orientation,
            "word": list(tr.word),
        }), ok
    if args.format == "csv":
        rows = [[n, i, _fmt_q(v)] for n, (i, v) in enumerate(tr.steps, 1)]
        return _csv(["step", "generator", "quadruple"], rows), ok
    out = [f"start {_fmt_q(tr.start)}"]
    for n, (i, v) in enumerate(tr.steps, 1):
        out.append(f"step {n}: S{i} -> {_fmt_q(v)}")
    out.append(f"{_fmt_q(res.quadruple)} {res.kind.value}")
    return "\n".join(out) + "\n", ok


def _root_rows(k: int, ns: Sequence[int]) -> List[Dict[str, Any]]:
    from .binary_forms import n_root_via_class_number
    from .reduction import InfiniteFamily, root_quadruples_with_min

    rows = []
    for n in ns:
        if n <= 0:
            raise InputError(f"n must be positive, got {n}")
        res = root_quadruples_with_min(k, n)
        row: Dict[str, Any] = {"n": n}
        if isinstance(res, InfiniteFamily):
            row.update(direct=None, infinite=True, family=str(res), quadruples=[])
        else:
            row.update(direct=len(res), infinite=False, family=None, quadruples=[list(q) for q in res])
        if k % 4 == 0 and n * n > k // 4 and not row["infinite"]:
            row["class_number"] = n_root_via_class_number(k // 4, n)
            row["agree"] = row["class_number"] == row["direct"]
        else:
            row["class_number"] = None
            row["agree"] = None
        rows.append(row)
    return rows


def cmd_roots(args) -> Tuple[str, bool]:
    k = _level(args.level)
    ns = parse_range(args.n)
    rows = _root_rows(k, ns)
    ok = all(r["agree"] is not False for r in rows)
    if args.format == "json":
        return _json({"level": k, "rows": rows}), ok
    if args.format == "csv":
        table = [[r["n"], "inf" if r["infinite"] else r["direct"],
                  "" if r["class_number"] is None else r["class_number"],
                  "" if r["agree"] is None else int(r["agree"])] for r in rows]
        return _csv(["n", "direct", "class_number", "agree"], table), ok
    out = [f"root quadruples of level {k} with smallest entry -n"]
    for r in rows:
        if r["infinite"]:
            out.append(f"n={r['n']}: infinite family {r['family']}")
            continue
        cn = "" if r["class_number"] is None else f", class number {r['class_number']}"
        out.append(f"n={r['n']}: {r['direct']}{cn}")
        if args.verbose:
            out.extend("  " + _fmt_q(q) for q in r["quadruples"])
    return "\n".join(out) + "\n", ok


def cmd_exceptional(args) -> Tuple[str, bool]:
    from .reduction import exceptional_orbit_representatives, find_exceptional

    k = _level(args.level)
    found = find_exceptional(k)
    groups = exceptional_orbit_representatives(k)
    ok = True
    if args.format == "json":
        return _json({
            "level": k,
            "quadruples": [list(r.quadruple) for r in found],
            "orbits": [[list(q) for q in g] for g in groups],
        }), ok
    if args.format == "csv":
        rows = [[i, _fmt_q(q)] for i, g in enumerate(groups, 1) for q in g]
        return _csv(["orbit", "quadruple"], rows), ok
    out = [f"{len(found)} exceptional quadruples of level {k} in {len(groups)} orbits"]
    for i, g in enumerate(groups, 1):
        out.append(f"orbit {i}: " + " ".join(_fmt_q(q) for q in g))
    return "\n".join(out) + "\n", ok


def cmd_congruence(args) -> Tuple[str, bool]:
    from .congruence import congruence_pipeline, omitted_residues

    k = _level(args.level)
    bound = args.bound if args.bound is not None else 10_000
    rep = congruence_pipeline(k, search_bound=bound)
    surv = rep.surviving
    ok = all(o.fully_witnessed for o in surv)
    if args.format == "json":
        return _json({
            "level": k,
            "modulus": 12,
            "solutions": rep.solutions,
            "orbits": [{
                "name": o.name,
                "size": len(o.members),
                "status": o.status.value,
                "members": [list(r) for r in sorted(o.members)],
                "omitted": omitted_residues(o),
                "witnesses": [{"residues": list(r), "quadruple": None if w is None else list(w)}
                              for r, w in o.witnesses],
            } for o in rep.orbits],
            "stages": [{"modulus": s.modulus, "eliminated_classes": s.eliminated_classes,
                        "eliminated_orbits": list(s.eliminated_orbits),
                        "remaining_classes": s.remaining_classes} for s in rep.stages],
            "surviving_orbits": len(surv),
            "surviving_classes": rep.surviving_classes,
        }), ok
    if args.format == "csv":
        rows = [[o.name, len(o.members), o.status.value, " ".join(map(str, omitted_residues(o))),
                 int(o.fully_witnessed) if o in surv else ""] for o in rep.orbits]
        return _csv(["orbit", "size", "status", "omitted", "witnessed"], rows), ok
    out = [f"{rep.solutions} solutions mod 12 in {len(rep.orbits)} orbits"]
    if not rep.stages:
        out.append("no lifting sieve for this level")
    for s in rep.stages:
        out.append(f"mod {s.modulus}: eliminated {s.eliminated_classes} classes in "
                   f"{len(s.eliminated_orbits)} orbits ({', '.join(s.eliminated_orbits)}), "
                   f"{s.remaining_classes} remain")
    out.append(f"{rep.surviving_classes} surviving classes in {len(surv)} surviving orbits")
    for o in surv:
        omitted = "{" + ",".join(map(str, omitted_residues(o))) + "}"
        wit = "all witnessed" if o.fully_witnessed else "witnesses missing"
        out.append(f"  {o.name}: {len(o.members)} classes, omits {omitted}, {wit}")
    return "\n".join(out) + "\n", ok


def _auto_root(k: int) -> Tuple[int, int, int, int]:
    from .reduction import InfiniteFamily, root_quadruples_nonnegative_min, root_quadruples_with_min

    found = root_quadruples_nonnegative_min(k)
    if found:
        return found[0]
    for n in range(1, 1000):
        res = root_quadruples_with_min(k, n)
        if isinstance(res, InfiniteFamily):
            return res.member(max(n, 1))
        if res:
            return res[0]
    raise InputError(f"no root quadruple of level {k} found")


def cmd_census(args) -> Tuple[str, bool]:
    from .census import curvature_census, curvature_census_exceptional, missing_report
    from .reduction import Kind, exceptional_orbit_representatives, is_reduced, make_reduced

    if args.root:
        root = tuple(sorted(parse_quadruple(args.root)))
    else:
        root = _auto_root(_level(args.level))
    if not any(root) or not is_reduced(root):  # type: ignore[arg-type]
        raise InputError(f"{_fmt_q(root)} is not reduced; run 'apollonian reduce' first")
    if args.bound is None:
        raise InputError("--bound is required")
    if args.bound < max(abs(v) for v in root):
        raise InputError(f"bound {args.bound} is below the entries of {_fmt_q(root)}")
    rq = make_reduced(root)  # type: ignore[arg-type]
    if rq.kind is Kind.ROOT and rq.orientation >= 0:
        census = curvature_census(root, args.bound, max_depth=args.max_depth)
    else:
        from .core_forms import descartes_form

        k = descartes_form(root)  # type: ignore[arg-type]
        bases = [root]
        for g in exceptional_orbit_representatives(k):
            if root in g:
                bases = g
        census = curvature_census_exceptional(bases, args.bound)
    m = args.mod or 24
    report = missing_report(census, m)
    wanted = parse_range(args.residues) if args.residues else [r for r in range(m) if report[r]]
    ok = True
    if args.format == "json":
        return _json({
            "root": list(root),
            "bound": args.bound,
            "modulus": m,
            "max_depth": args.max_depth,
            "nodes": census.nodes,
            "missing": {str(r): report[r % m] for r in wanted},
        }), ok
    if args.format == "csv":
        rows = [[r, n] for r in wanted for n in report[r % m]]
        return _csv(["residue", "missing"], rows), ok
    out = [f"missing curvatures <= {args.bound} in the packing {_fmt_q(root)}"]
    for r in wanted:
        vals = report[r % m]
        out.append(f"n = {r} (mod {m}): {len(vals)}")
        for i in range(0, len(vals), 10):
            out.append("  " + " ".join(str(v) for v in vals[i:i + 10]))
    return "\n".join(out) + "\n", ok


def cmd_count(args) -> Tuple[str, bool]:
    from .counting import EXPECTED_COEFFICIENTS, count_descartes

    Ts = parse_range(args.T) if args.T else []
    if not Ts or any(T < 1 for T in Ts):
        raise InputError("-T must list positive integers")
    ok = True
    if args.ratio:
        rows = []
        for T in Ts:
            hi, lo = count_descartes(4, T), count_descartes(-4, T)
            ratio = hi / lo if lo else math.nan
            rows.append({"T": T, "count_4": hi, "count_minus_4": lo, "ratio": _r6(ratio),
                         "target": _r6(RATIO_TARGET)})
            if args.check and not abs(ratio / RATIO_TARGET - 1) <= 0.12:
                ok = False
        if args.format == "json":
            return _json({"ratio": rows}), ok
        if args.format == "csv":
            return _csv(["T", "count_4", "count_minus_4", "ratio"],
                        [[r["T"], r["count_4"], r["count_minus_4"], _f6(r["ratio"])] for r in rows]), ok
        out = [f"T={r['T']}: N(4)={r['count_4']} N(-4)={r['count_minus_4']} ratio={_f6(r['ratio'])} "
               f"(target {_f6(RATIO_TARGET)})" for r in rows]
        return "\n".join(out) + "\n", ok

    k = args.level if args.level is not None else -4
    if k % 4:
        raise InputError(f"counts are supported for levels divisible by 4, got {k}")
    expected = EXPECTED_COEFFICIENTS.get(k)
    rows = []
    for T in Ts:
        n = count_descartes(k, T)
        row = {"T": T, "count": n, "normalized": _r6(n / (T * T))}
        if expected is not None:
            row["expected"] = _r6(expected)
            row["relative_error"] = _r6(n / (T * T) / expected - 1)
            if args.check and abs(n / (T * T) / expected - 1) > 0.10:
                ok = False
        rows.append(row)
    if args.format == "json":
        return _json({"level": k, "rows": rows}), ok
    if args.format == "csv":
        return _csv(["T", "count", "normalized"],
                    [[r["T"], r["count"], _f6(r["normalized"])] for r in rows]), ok
    out = []
    for r in rows:
        line = f"T={r['T']}: N_D({k}, T)={r['count']} N/T^2={_f6(r['normalized'])}"
        if expected is not None:
            line += f" expected {_f6(expected)}"
        out.append(line)
    return "\n".join(out) + "\n", ok


def cmd_render(args) -> Tuple[str, bool]:
    from .render import render_svg

    if not args.root:
        raise InputError("--root is required")
    root = parse_quadruple(args.root)
    return render_svg(root, args.depth), True


COMMANDS = {
    "reduce": cmd_reduce,
    "roots": cmd_roots,
    "exceptional": cmd_exceptional,
    "congruence": cmd_congruence,
    "census": cmd_census,
    "count": cmd_count,
    "render": cmd_render,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json", "csv"), default="text")
    common.add_argument("-o", "--output", help="write to this file instead of stdout")
    common.add_argument("--threads", type=int, default=None,
                        help="worker count (default: APOLLONIAN_THREADS or CPU count)")
    common.add_argument("--assert", dest="check", action="store_true",
                        help="exit 3 unless the report's own consistency checks pass")

    ap = argparse.ArgumentParser(prog="apollonian",
                                 description="Integral Apollonian packings: reduction, roots, congruences, censuses.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reduce", parents=[common], help="reduce a quadruple to its root or exceptional form")
    p.add_argument("quadruple", nargs="+", help="four integers (use -- before negatives)")

    p = sub.add_parser("roots", parents=[common], help="root quadruples with smallest entry -n")
    p.add_argument("-k", "--level", type=int, required=True)
    p.add_argument("-n", default="1..10", help="n, list 'a,b' or range 'a..b'")
    p.add_argument("-v", "--verbose", action="store_true", help="list the quadruples")

    p = sub.add_parser("exceptional", parents=[common], help="exceptional quadruples and their orbits")
    p.add_argument("-k", "--level", type=int, required=True)

    p = sub.add_parser("congruence", parents=[common], help="orbits mod 12 and lifting sieve")
    p.add_argument("-k", "--level", type=int, required=True)
    p.add_argument("--bound", type=int, default=None, help="witness search bound (default 10000)")

    p = sub.add_parser("census", parents=[common], help="missing curvatures in a packing")
    p.add_argument("--root", help="root quadruple, e.g. 0,1,1,2")
    p.add_argument("-k", "--level", type=int, help="pick a root of this level when --root is absent")
    p.add_argument("--bound", type=int)
    p.add_argument("--mod", type=int, default=24)
    p.add_argument("--residues", help="residue classes to report, e.g. 0,1,2,5")
    p.add_argument("--max-depth", type=int, default=None, help="limit group word length")

    p = sub.add_parser("count", parents=[common], help="lattice point counts N_D(k, T)")
    p.add_argument("-k", "--level", type=int, default=None)
    p.add_argument("-T", help="height bound(s): T, list or range")
    p.add_argument("--ratio", action="store_true", help="report N_D(4,T)/N_D(-4,T)")

    p = sub.add_parser("render", parents=[common], help="SVG of a level-0 packing")
    p.add_argument("--root", help="root quadruple with a negative entry, e.g. -1,2,2,3")
    p.add_argument("--depth", type=int, default=3)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        thread_count(args.threads)
        text, ok = COMMANDS[args.command](args)
    except (InputError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except AssertionError as exc:
        print(f"internal check failed: {exc}", file=sys.stderr)
        return EXIT_ASSERT
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.check and not ok:
        print("assertion failed", file=sys.stderr)
        return EXIT_ASSERT
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
