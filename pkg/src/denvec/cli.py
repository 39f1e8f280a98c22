"""Command-line harness: mutate, dvec, check, fuzz, dist.

Exit codes: 0 success / all checks pass, 1 property violation or route
mismatch, 2 bad input, 3 resource-exceeded. JSON output is byte-stable for
fixed inputs and seeds; timings are only embedded when --timings is given.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .dvector import dvec_along_walk, dvec_from_expansion
from .errors import (
    InputError,
    NonReducedWalkError,
    NotDivisibleError,
    ResourceExceededError,
)
from .explorer import (
    bfs_distance,
    build_report,
    exhaustive_campaign,
    fuzz_campaign,
    report_exit_code,
)
from .laurent import DEFAULT_TERM_CAP
from .seed import apply_walk, matrix_from_json, root_seed, validate_walk

TERM_CAP_ENV = "DENVEC_TERM_CAP"


def _default_term_cap() -> int:
    raw = os.environ.get(TERM_CAP_ENV)
    if raw is None:
        return DEFAULT_TERM_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise InputError(f"{TERM_CAP_ENV} must be an integer, got {raw!r}") from None
    if cap < 1:
        raise InputError(f"{TERM_CAP_ENV} must be positive, got {cap}")
    return cap


def parse_walk(text: str) -> tuple[int, ...]:
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise InputError(f"walk must be comma-separated integers, got {text!r}") from None


def load_matrix(path: str):
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise InputError(f"cannot read matrix file {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"matrix file {path} is not valid JSON: {exc}") from None
    return matrix_from_json(data)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def render_json(doc) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def _preset_label(matrix) -> str:
    if matrix.m == 0:
        return "trivial"
    n = matrix.n
    if matrix.m == n and all(
        matrix.rows[n + i][j] == (1 if i == j else 0) for i in range(n) for j in range(n)
    ):
        return "principal"
    return "custom"


# -- subcommands -----------------------------------------------------------


def cmd_mutate(args) -> int:
    matrix = load_matrix(args.matrix)
    walk = validate_walk(parse_walk(args.path), matrix.n)
    seed = apply_walk(root_seed(matrix), walk, args.term_cap)
    y = [list(t.exps) for t in seed.matrix.y_elements()]
    if args.format == "json":
        doc = {
            "walk": list(walk),
            "matrix": seed.matrix.to_json_dict(),
            "y": y,
            "vars": [v.text() for v in seed.vars],
        }
        _emit(render_json(doc), args.out)
    elif args.format == "tsv":
        lines = [f"{l + 1}\t{v.text()}" for l, v in enumerate(seed.vars)]
        _emit("\n".join(lines) + "\n", args.out)
    else:
        lines = [f"walk: {','.join(map(str, walk)) or '(empty)'}"]
        lines.append("matrix rows (exchange block, then coefficient rows):")
        for row in seed.matrix.rows:
            lines.append("  " + " ".join(f"{v:3d}" for v in row))
        if y and y[0]:
            lines.append("y (frozen exponents per direction):")
            for j, exps in enumerate(y, 1):
                lines.append(f"  y{j} = {exps}")
        lines.append("cluster variables (expansions in the root cluster):")
        for l, v in enumerate(seed.vars, 1):
            lines.append(f"  x[{l}] = {v.text()}")
        _emit("\n".join(lines) + "\n", args.out)
    return 0


def cmd_dvec(args) -> int:
    matrix = load_matrix(args.matrix)
    walk = validate_walk(parse_walk(args.path), matrix.n)
    n = matrix.n
    rows: list[dict] = [{"position": l + 1} for l in range(n)]
    if args.method in ("recurrence", "both"):
        rec = dvec_along_walk(matrix, walk)
        for l in range(n):
            rows[l]["recurrence"] = list(rec[l])
    if args.method in ("expansion", "both"):
        seed = apply_walk(root_seed(matrix), walk, args.term_cap)
        for l in range(n):
            rows[l]["expansion"] = list(dvec_from_expansion(seed.vars[l], n))
    matched = True
    if args.method == "both":
        for row in rows:
            row["match"] = row["expansion"] == row["recurrence"]
            matched = matched and row["match"]
    if args.format == "json":
        _emit(render_json({"walk": list(walk), "dvectors": rows}), args.out)
    elif args.format == "tsv":
        lines = []
        for row in rows:
            cells = [str(row["position"])]
            for key in ("expansion", "recurrence", "match"):
                if key in row:
                    value = row[key]
                    cells.append(
                        ",".join(map(str, value)) if isinstance(value, list) else str(value)
                    )
            lines.append("\t".join(cells))
        _emit("\n".join(lines) + "\n", args.out)
    else:
        lines = []
        for row in rows:
            bits = [f"position {row['position']}:"]
            if "expansion" in row:
                bits.append(f"expansion={tuple(row['expansion'])}")
            if "recurrence" in row:
                bits.append(f"recurrence={tuple(row['recurrence'])}")
            if "match" in row:
                bits.append(f"match={row['match']}")
            lines.append(" ".join(bits))
        _emit("\n".join(lines) + "\n", args.out)
    return 0 if matched else 1


def _finish_report(report: dict, args) -> int:
    payload = render_json(report)
    if args.out:
        Path(args.out).write_text(payload)
        s = report["summary"]
        sys.stdout.write(
            f"pass={s['pass']} violations={s['violations']} "
            f"resource_exceeded={s['resource_exceeded']} findings={s['findings']}\n"
        )
    else:
        sys.stdout.write(payload)
    code = report_exit_code(report)
    if code == 1:
        for trial in report["trials"]:
            if trial["status"] == "violation":
                sys.stderr.write("violation witness:\n")
                sys.stderr.write(render_json(trial["witness"]))
                break
    return code


def cmd_check(args) -> int:
    matrix = load_matrix(args.matrix)
    if not matrix.is_skew_symmetric and not args.allow_symmetrizable:
        raise InputError(
            "matrix is not skew-symmetric; pass --allow-symmetrizable to proceed"
        )
    report = exhaustive_campaign(
        matrix,
        args.depth,
        cap=args.term_cap,
        preset=_preset_label(matrix),
        with_timings=args.timings,
    )
    return _finish_report(report, args)


def cmd_fuzz(args) -> int:
    report = fuzz_campaign(
        args.rank,
        args.bmax,
        args.depth,
        args.trials,
        args.seed,
        mode=args.mode,
        preset=args.preset,
        cap=args.term_cap,
        with_timings=args.timings,
    )
    return _finish_report(report, args)


def cmd_dist(args) -> int:
    matrix = load_matrix(args.matrix)
    root = root_seed(matrix)
    z_walk = validate_walk(parse_walk(args.z_path), matrix.n)
    if not 1 <= args.z_pos <= matrix.n:
        raise InputError(f"--z-pos {args.z_pos} out of range 1..{matrix.n}")
    z = apply_walk(root, z_walk, args.term_cap).vars[args.z_pos - 1]
    at_walk = validate_walk(parse_walk(args.at_path), matrix.n)
    result = bfs_distance(root, z, at_walk, args.bound, cap=args.term_cap)
    text = str(result) if result is not None else f"unknown(bound={args.bound})"
    if args.format == "json":
        _emit(
            render_json(
                {
                    "distance": result,
                    "bound": args.bound,
                    "z_path": list(z_walk),
                    "z_pos": args.z_pos,
                    "at_path": list(at_walk),
                }
            ),
            args.out,
        )
    else:
        _emit(text + "\n", args.out)
    return 0


# -- parser ------------------------------------------------------------------


def build_parser(default_cap: int) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="denvec",
        description=(
            "Exact cluster-algebra mutation engine: Laurent expansions, "
            "denominator vectors, and property-checking campaigns."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", default=None, help="write output to this path")
    common.add_argument(
        "--format", choices=("json", "tsv", "pretty"), default="pretty"
    )
    common.add_argument(
        "--term-cap",
        type=int,
        default=default_cap,
        help=f"resource guard on polynomial term work (env {TERM_CAP_ENV})",
    )

    p = sub.add_parser("mutate", parents=[common], help="apply a mutation walk")
    p.add_argument("--matrix", required=True, help="matrix JSON file")
    p.add_argument("--path", default="", help="comma-separated directions, 1-based")
    p.set_defaults(func=cmd_mutate)

    p = sub.add_parser("dvec", parents=[common], help="denominator vectors at a walk endpoint")
    p.add_argument("--matrix", required=True)
    p.add_argument("--path", default="")
    p.add_argument(
        "--method", choices=("expansion", "recurrence", "both"), default="both"
    )
    p.set_defaults(func=cmd_dvec)

    p = sub.add_parser("check", parents=[common], help="exhaustive walk sweep with the invariant suite")
    p.add_argument("--matrix", required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--allow-symmetrizable", action="store_true")
    p.add_argument("--timings", action="store_true", help="embed wall times in the report")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("fuzz", parents=[common], help="randomized campaign with fixed seed")
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--bmax", type=int, required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument(
        "--mode",
        choices=("skew-symmetric", "symmetrizable"),
        default="skew-symmetric",
    )
    p.add_argument("--preset", choices=("trivial", "principal"), default="trivial")
    p.add_argument("--timings", action="store_true")
    p.set_defaults(func=cmd_fuzz)

    p = sub.add_parser("dist", parents=[common], help="bounded BFS distance to a cluster containing z")
    p.add_argument("--matrix", required=True)
    p.add_argument("--z-path", default="", help="walk defining the variable z")
    p.add_argument("--z-pos", type=int, required=True, help="position of z at the walk endpoint, 1-based")
    p.add_argument("--at-path", default="", help="walk to the reference vertex")
    p.add_argument("--bound", type=int, required=True)
    p.set_defaults(func=cmd_dist)

    return parser


def main(argv=None) -> int:
    try:
        default_cap = _default_term_cap()
    except InputError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    parser = build_parser(default_cap)
    args = parser.parse_args(argv)
    if args.term_cap < 1:
        sys.stderr.write("error: --term-cap must be positive\n")
        return 2
    for attr in ("depth", "trials", "rank", "bmax", "bound"):
        value = getattr(args, attr, None)
        if value is not None and value < 0:
            sys.stderr.write(f"error: --{attr} must be nonnegative\n")
            return 2
    try:
        return args.func(args)
    except (InputError, NonReducedWalkError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except NotDivisibleError as exc:
        sys.stderr.write(f"exact division failed (hard failure witness): {exc}\n")
        return 1
    except ResourceExceededError as exc:
        sys.stderr.write(f"resource-exceeded: {exc}\n")
        return 3


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
