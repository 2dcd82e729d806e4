"""Command-line surface.

Machine output is a single JSON document on stdout; human-readable
summaries go to stderr so pipelines stay composable.  Exit codes:
0 affirmative, 1 negative-but-valid, 2 usage or malformed input,
3 budget exhausted under --require-exact, 4 magnitude overflow.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional

from . import constructions
from .cache import ResultCache, resolve_cache_dir
from .checker import has_large_homogeneous, is_witness
from .colorfile import decode_coloring, encode_coloring, rle_string
from .core import Coloring, GrowthFn, gap_size, parse_growth_spec
from .errors import (BrownlabError, ColoringFileError, GrowthSpecError,
                     InvalidArgumentError, MagnitudeError, PreconditionError)
from .progressions import ap_partition_check
from .search import (SearchBudget, SearchOutcome, brown_number,
                     brown_number_bruteforce, confirm_no_witness, vdw_number,
                     vdw_number_bruteforce)

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3
EXIT_MAGNITUDE = 4

DEFAULT_NODE_BUDGET = 1_000_000
ORACLE_VALUE_CAP = 18
ARG_BIT_CAP = 1 << 25


class CLIError(Exception):
    def __init__(self, message: str, exit_code: int = EXIT_USAGE):
        super().__init__(message)
        self.exit_code = exit_code


def _emit(payload: dict) -> None:
    print(json.dumps(payload, sort_keys=True, separators=(",", ":")))


def _note(message: str) -> None:
    print(message, file=sys.stderr)


def _sci(n: int) -> str:
    """Decimal below a million, scientific notation above."""
    if n < 10 ** 6:
        return str(n)
    s = constructions.decimal_str(n)
    return f"{s[0]}.{s[1:5]}e+{len(s) - 1}"


def _parse_growth(text: str) -> GrowthFn:
    try:
        return parse_growth_spec(text)
    except GrowthSpecError as exc:
        raise CLIError(f"bad growth spec: {exc}") from exc


def _budget(args) -> SearchBudget:
    nodes = args.budget_nodes
    if nodes == 0:
        nodes = None
    return SearchBudget(max_nodes=nodes, max_seconds=args.budget_seconds)


def _read_coloring(path: str) -> Coloring:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CLIError(f"cannot read {path}: {exc}") from exc
    try:
        return decode_coloring(text)
    except ColoringFileError as exc:
        raise CLIError(f"malformed coloring file {path}: {exc}") from exc


def _outcome_payload(outcome: SearchOutcome) -> dict:
    payload = {
        "kind": outcome.kind,
        "value": outcome.value,
        "lower": outcome.lower,
        "upper": outcome.upper,
        "nodes": outcome.nodes_explored,
        "wall_time": round(outcome.wall_time, 6),
        "witness_length": outcome.witness.length,
        "used_closure": outcome.used_closure,
    }
    if outcome.certificate is not None:
        payload["certificate"] = json.loads(outcome.certificate.to_json())
    else:
        payload["witness_rle"] = rle_string(outcome.witness.values)
    return payload


def _guard_blowup(f: GrowthFn, n: int) -> None:
    """Refuse growth evaluations whose result cannot fit in memory."""
    if f.kind == "exp2" and n > ARG_BIT_CAP:
        raise MagnitudeError(f"2**{_sci(n)} exceeds the {ARG_BIT_CAP}-bit cap", depth=1, base=n)
    if f.kind == "closure":
        _guard_blowup(f.inner, n)


def _bounded_recursion(f: GrowthFn, r: int) -> int:
    """upper bound recursion with a magnitude guard for the CLI table."""
    from .core import monotone_closure

    if not f.nondecreasing:
        f = monotone_closure(f)
    _guard_blowup(f, 1)
    n = f(1) + 2
    for k in range(2, r + 1):
        _guard_blowup(f, n)
        n = k * f(n) + 1
    return n


# ---------------------------------------------------------------------------
# brown / vdw
# ---------------------------------------------------------------------------


def _search_command(args, op: str) -> int:
    cache = None
    if not args.no_cache:
        cache = ResultCache(resolve_cache_dir(args.cache_dir))
    if op == "brown":
        f = _parse_growth(args.f)
        if args.r < 1:
            raise CLIError("--r must be >= 1")
        key = {"op": "brown", "growth": f.spec_string(), "r": args.r}
    else:
        if args.r < 1 or args.l < 1:
            raise CLIError("--r and --l must be >= 1")
        key = {"op": "vdw", "r": args.r, "l": args.l}

    cached = cache.get(key) if cache is not None else None
    if cached is not None:
        result = cached
        cache_state = "hit"
    else:
        budget = _budget(args)
        if op == "brown":
            outcome = brown_number(f, args.r, n_cap=args.max_n, budget=budget,
                                   jobs=args.jobs)
            result = _outcome_payload(outcome)
            result["growth"] = f.spec_string()
            result["r"] = args.r
            result["bounds"] = _brown_bounds(f, args.r)
        else:
            outcome = vdw_number(args.r, args.l, n_cap=args.max_n, budget=budget,
                                 jobs=args.jobs)
            result = _outcome_payload(outcome)
            result["r"] = args.r
            result["l"] = args.l
        cache_state = "off" if cache is None else "miss"
        if cache is not None and result["kind"] == "exact" and args.max_n is None:
            cache.put(key, result)

    payload = dict(result)
    payload["command"] = op
    payload["cache"] = cache_state

    exit_code = EXIT_OK
    if args.oracle:
        agreed = _run_oracle(op, args, result, payload)
        if not agreed:
            exit_code = EXIT_NEGATIVE
    if args.certificate and "certificate" in payload:
        cert_text = json.dumps(payload["certificate"], sort_keys=True,
                               separators=(",", ":"))
        Path(args.certificate).write_text(cert_text + "\n")
        payload["certificate_path"] = args.certificate
    if result["kind"] == "bracketed" and args.require_exact:
        exit_code = EXIT_BUDGET

    _emit(payload)
    if op == "brown":
        label = f"brown({key['growth']}, r={args.r})"
    else:
        label = f"vdw(r={args.r}, l={args.l})"
    if result["kind"] == "exact":
        _note(f"{label} = {result['value']} exact "
              f"(nodes={result['nodes']}, {result['wall_time']}s, cache {cache_state})")
    else:
        upper = result["upper"]
        upper_text = _sci(upper) if upper is not None else "?"
        _note(f"{label} in [{result['lower']}, {upper_text}] "
              f"(budget exhausted after {result['nodes']} nodes)")
    return exit_code


def _brown_bounds(f: GrowthFn, r: int) -> dict:
    bounds: dict[str, Optional[str]] = {"ardal": None}
    try:
        bounds["recursion"] = constructions.decimal_str(_bounded_recursion(f, r))
    except MagnitudeError:
        bounds["recursion"] = None
    if f.kind in ("id", "linear"):
        m = 1 if f.kind == "id" else f.slope
        bounds["ardal"] = constructions.decimal_str(constructions.ardal_bound(m, r))
    return bounds


def _run_oracle(op: str, args, result: dict, payload: dict) -> bool:
    if result["kind"] != "exact":
        raise CLIError("--oracle needs an exact outcome; raise the budget or drop --max-n")
    value = result["value"]
    if value > ORACLE_VALUE_CAP or args.r > 3:
        raise CLIError(f"--oracle is for small instances only "
                       f"(value <= {ORACLE_VALUE_CAP}, r <= 3)")
    if op == "brown":
        oracle_value = brown_number_bruteforce(_parse_growth(args.f), args.r,
                                               n_limit=value + 1)
    else:
        oracle_value = vdw_number_bruteforce(args.r, args.l, n_limit=value + 1)
    payload["oracle_value"] = oracle_value
    payload["oracle_agreed"] = oracle_value == value
    if oracle_value != value:
        _note(f"ORACLE DISAGREEMENT: search says {value}, "
              f"full enumeration says {oracle_value}")
        return False
    return True


def _cmd_brown(args) -> int:
    return _search_command(args, "brown")


def _cmd_vdw(args) -> int:
    return _search_command(args, "vdw")


def _cmd_confirm(args) -> int:
    f = _parse_growth(args.f)
    if not f.nondecreasing:
        raise CLIError("confirm needs a nondecreasing growth spec (try closure:<spec>)")
    outcome = confirm_no_witness(args.n, f, args.r, budget=_budget(args), jobs=args.jobs)
    payload = {"command": "confirm", "n": args.n, "growth": f.spec_string(),
               "r": args.r, "no_witness": outcome.result, "nodes": outcome.nodes}
    _emit(payload)
    if outcome.result is None:
        _note(f"indeterminate after {outcome.nodes} nodes")
        return EXIT_BUDGET if args.require_exact else EXIT_NEGATIVE
    _note(f"no witness of length {args.n}: {outcome.result} ({outcome.nodes} nodes)")
    return EXIT_OK if outcome.result else EXIT_NEGATIVE


# ---------------------------------------------------------------------------
# check
# ---------------------------------------------------------------------------


def _cmd_check(args) -> int:
    coloring = _read_coloring(args.input)
    f = _parse_growth(args.f)
    if not f.nondecreasing:
        raise CLIError("check needs a nondecreasing growth spec (try closure:<spec>)")
    cert = is_witness(coloring, f)
    if cert is not None:
        payload = {"command": "check", "witness": True,
                   "certificate": json.loads(cert.to_json())}
        _emit(payload)
        _note(f"witness: every class fits {f.spec_string()}; "
              f"proves the threshold exceeds {coloring.length}")
        return EXIT_OK
    hit = has_large_homogeneous(coloring, f)
    color, window = hit
    payload = {"command": "check", "witness": False,
               "violation": {"color": color, "start": window[0], "end": window[-1],
                             "gap_size": gap_size(window), "length": len(window)}}
    _emit(payload)
    _note(f"not a witness: class {color} window {window[0]}..{window[-1]} "
          f"has {len(window)} elements")
    return EXIT_NEGATIVE


# ---------------------------------------------------------------------------
# ladder
# ---------------------------------------------------------------------------


def _cmd_ladder(args) -> int:
    if args.s < 0:
        raise CLIError("--s must be a natural")
    try:
        stage = constructions.ladder(args.s)
    except MagnitudeError as exc:
        _note(f"stage {args.s} out of range: {exc}")
        raise CLIError(str(exc), EXIT_MAGNITUDE) from exc
    exit_code = EXIT_OK
    if args.out or args.verify:
        if not stage.materialized:
            _note(f"stage {args.s} has length {_sci(stage.length)} and exceeds the "
                  f"materialization cap; only the length and the positional "
                  f"evaluator are available")
            raise CLIError(f"stage {args.s} cannot be materialized", EXIT_MAGNITUDE)
    payload = {"command": "ladder", "s": args.s,
               "length": constructions.decimal_str(stage.length),
               "palette": stage.palette, "materialized": stage.materialized}
    if args.out:
        Path(args.out).write_text(encode_coloring(stage.coloring))
        payload["out"] = args.out
    if args.verify:
        report = constructions.ladder_verify(args.s)
        payload["verify"] = {
            "all_ok": report.all_ok,
            "failures": list(report.failures),
            "claims": [{"color": c.color, "size_ok": c.size_ok,
                        "star_ok": c.star_ok, "span_ok": c.span_ok}
                       for c in report.claims],
        }
        if not report.all_ok:
            exit_code = EXIT_NEGATIVE
    _emit(payload)
    _note(f"ladder stage {args.s}: length {_sci(stage.length)}, palette {stage.palette}"
          + (", all claims hold" if args.verify and exit_code == EXIT_OK else ""))
    return exit_code


# ---------------------------------------------------------------------------
# bounds
# ---------------------------------------------------------------------------

_BOUNDS_CSV_HEADER = "r,ardal,recursion,cached_kind,cached_value"


def _cmd_bounds(args) -> int:
    if (args.f is None) == (args.m is None):
        raise CLIError("give exactly one of --f or --m")
    if args.r_max < 1:
        raise CLIError("--r-max must be >= 1")
    if args.m is not None:
        if args.m < 1:
            raise CLIError("--m must be >= 1")
        f = GrowthFn.linear(args.m)
    else:
        f = _parse_growth(args.f)
    slope = None
    if f.kind == "linear":
        slope = f.slope
    elif f.kind == "id":
        slope = 1
    cache = ResultCache(resolve_cache_dir(args.cache_dir))
    rows = []
    for r in range(1, args.r_max + 1):
        try:
            recursion = constructions.decimal_str(_bounded_recursion(f, r))
        except MagnitudeError as exc:
            raise CLIError(f"recursion bound for r={r} overflows: {exc}",
                           EXIT_MAGNITUDE) from exc
        ardal = (constructions.decimal_str(constructions.ardal_bound(slope, r))
                 if slope is not None else None)
        cached = cache.get({"op": "brown", "growth": f.spec_string(), "r": r})
        rows.append({"r": r, "ardal": ardal, "recursion": recursion,
                     "cached": None if cached is None else
                     {"kind": cached.get("kind"), "value": cached.get("value")}})
    if args.format == "csv":
        lines = [_BOUNDS_CSV_HEADER]
        for row in rows:
            cached = row["cached"] or {}
            lines.append(",".join([
                str(row["r"]),
                row["ardal"] or "",
                row["recursion"],
                str(cached.get("kind") or ""),
                str(cached.get("value") if cached.get("value") is not None else ""),
            ]))
        print("\n".join(lines))
    else:
        _emit({"command": "bounds", "growth": f.spec_string(),
               "used_closure": not f.nondecreasing, "rows": rows})
    _note(f"bounds for {f.spec_string()}, r = 1..{args.r_max}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------


def _cmd_diag(args) -> int:
    if args.d < 1:
        raise CLIError("--d must be >= 1")
    if args.n < 0:
        raise CLIError("--n must be a natural")
    coloring = constructions.diag_prefix(args.d, args.n)
    payload = {"command": "diag", "d": args.d, "n": args.n,
               "coloring_rle": rle_string(coloring.values)}
    if args.out:
        Path(args.out).write_text(encode_coloring(coloring))
        payload["out"] = args.out
    _emit(payload)
    return EXIT_OK


def _cmd_psgen(args) -> int:
    if (args.gaps is None) == (args.input is None):
        raise CLIError("give exactly one of --gaps or --input")
    if args.input is not None:
        gaps = _read_coloring(args.input)
        blocks = args.blocks if args.blocks is not None else gaps.length - 1
    else:
        try:
            values = [int(tok) for tok in args.gaps.split(",")]
        except ValueError as exc:
            raise CLIError(f"bad --gaps list: {exc}") from exc
        # inline values feed blocks 2, 3, ...; positions 0 and 1 are unused
        palette = max(values + [1]) + 1
        gaps = Coloring(palette=palette, values=tuple([1, 1] + values))
        blocks = args.blocks if args.blocks is not None else len(values) + 1
    try:
        prefix = constructions.ps_generate(gaps, blocks)
    except InvalidArgumentError as exc:
        raise CLIError(str(exc)) from exc
    problems = constructions.ps_problems(prefix, gaps)
    payload = {"command": "psgen", "blocks": blocks,
               "elements": list(prefix.elements),
               "block_bounds": [list(b) for b in prefix.bounds],
               "problems": problems}
    _emit(payload)
    _note(f"generated {len(prefix.elements)} elements in {blocks} blocks"
          + ("" if not problems else f"; PROBLEMS: {problems}"))
    return EXIT_OK if not problems else EXIT_NEGATIVE


def _cmd_decompose(args) -> int:
    try:
        xs = [int(tok) for tok in args.x.split(",")] if args.x else []
    except ValueError as exc:
        raise CLIError(f"bad --x list: {exc}") from exc
    if args.d < 1:
        raise CLIError("--d must be >= 1")
    try:
        y, z = constructions.decompose_ps(tuple(sorted(set(xs))), args.d, args.horizon)
    except InvalidArgumentError as exc:
        raise CLIError(str(exc)) from exc
    cut = args.horizon - args.d
    xset = {v for v in xs if v < cut}
    identity_ok = xset == {v for v in set(y) & set(z) if v < cut}
    payload = {"command": "decompose", "d": args.d, "horizon": args.horizon,
               "y": list(y), "z": list(z), "identity_ok": identity_ok}
    _emit(payload)
    return EXIT_OK if identity_ok else EXIT_NEGATIVE


def _cmd_ap(args) -> int:
    coloring = _read_coloring(args.input)
    if args.l < 1:
        raise CLIError("--l must be >= 1")
    hit = ap_partition_check(coloring, args.l)
    if hit is None:
        _emit({"command": "ap", "l": args.l, "found": False})
        _note(f"no monochromatic {args.l}-term progression in {coloring.length} positions")
        return EXIT_NEGATIVE
    color, witness = hit
    _emit({"command": "ap", "l": args.l, "found": True, "color": color,
           "start": witness.start, "difference": witness.difference,
           "length": witness.length})
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser and entry
# ---------------------------------------------------------------------------


def _add_search_flags(parser) -> None:
    parser.add_argument("--max-n", type=int, default=None,
                        help="cap the searched coloring length (forces bracketing if hit)")
    parser.add_argument("--oracle", action="store_true",
                        help="cross-check the exact value against full enumeration")
    parser.add_argument("--jobs", type=int, default=1,
                        help="worker processes for the subtree split (default 1)")
    parser.add_argument("--require-exact", action="store_true",
                        help="exit 3 instead of reporting a bracket")
    parser.add_argument("--budget-nodes", type=int, default=DEFAULT_NODE_BUDGET,
                        help=f"node budget, 0 = unlimited (default {DEFAULT_NODE_BUDGET})")
    parser.add_argument("--budget-seconds", type=float, default=None,
                        help="wall-clock budget in seconds")
    parser.add_argument("--certificate", default=None,
                        help="write the witness certificate JSON to this path")
    parser.add_argument("--cache-dir", default=None, help="result cache directory")
    parser.add_argument("--no-cache", action="store_true", help="bypass the result cache")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="brownlab",
        description="Thresholds, witnesses and bounds for gap-bounded colorings.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("brown", help="compute or bracket a Brown number")
    p.add_argument("--f", required=True, help="growth spec, e.g. linear:2 or exp2")
    p.add_argument("--r", type=int, required=True, help="number of colors")
    _add_search_flags(p)
    p.set_defaults(handler=_cmd_brown)

    p = sub.add_parser("vdw", help="compute or bracket a van der Waerden number")
    p.add_argument("--r", type=int, required=True, help="number of colors")
    p.add_argument("--l", type=int, required=True, help="progression length")
    _add_search_flags(p)
    p.set_defaults(handler=_cmd_vdw)

    p = sub.add_parser("confirm", help="audit that no witness of length n exists")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--f", required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--require-exact", action="store_true")
    p.add_argument("--budget-nodes", type=int, default=DEFAULT_NODE_BUDGET)
    p.add_argument("--budget-seconds", type=float, default=None)
    p.set_defaults(handler=_cmd_confirm)

    p = sub.add_parser("check", help="check a coloring file against a growth spec")
    p.add_argument("--input", required=True, help="coloring file path")
    p.add_argument("--f", required=True, help="growth spec")
    p.set_defaults(handler=_cmd_check)

    p = sub.add_parser("ladder", help="generate or verify a witness ladder stage")
    p.add_argument("--s", type=int, required=True, help="stage index")
    p.add_argument("--verify", action="store_true", help="check the stage claims")
    p.add_argument("--out", default=None, help="write the stage coloring to this file")
    p.set_defaults(handler=_cmd_ladder)

    p = sub.add_parser("bounds", help="tabulate closed-form bounds")
    p.add_argument("--f", default=None, help="growth spec")
    p.add_argument("--m", type=int, default=None, help="linear slope shortcut")
    p.add_argument("--r-max", type=int, required=True)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--cache-dir", default=None)
    p.set_defaults(handler=_cmd_bounds)

    p = sub.add_parser("diag", help="emit an alternating-block coloring prefix")
    p.add_argument("--d", type=int, required=True, help="block width")
    p.add_argument("--n", type=int, required=True, help="prefix length")
    p.add_argument("--out", default=None)
    p.set_defaults(handler=_cmd_diag)

    p = sub.add_parser("psgen", help="generate a piecewise-syndetic block prefix")
    p.add_argument("--gaps", default=None, help="comma list of gaps for blocks 2,3,...")
    p.add_argument("--input", default=None, help="coloring file supplying the gaps")
    p.add_argument("--blocks", type=int, default=None)
    p.set_defaults(handler=_cmd_psgen)

    p = sub.add_parser("decompose", help="split a prefix into syndetic and thick parts")
    p.add_argument("--x", required=True, help="comma list of elements")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--horizon", type=int, required=True)
    p.set_defaults(handler=_cmd_decompose)

    p = sub.add_parser("ap", help="find a monochromatic progression in a coloring file")
    p.add_argument("--input", required=True)
    p.add_argument("--l", type=int, required=True)
    p.set_defaults(handler=_cmd_ap)

    return parser


def run_cli(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except CLIError as exc:
        _note(f"error: {exc}")
        return exc.exit_code
    except MagnitudeError as exc:
        _note(f"magnitude overflow: {exc}")
        return EXIT_MAGNITUDE
    except (InvalidArgumentError, PreconditionError, ColoringFileError,
            GrowthSpecError) as exc:
        _note(f"error: {exc}")
        return EXIT_USAGE
    except BrownlabError as exc:
        _note(f"error: {exc}")
        return EXIT_USAGE


def main(argv=None) -> int:
    return run_cli(argv)


if __name__ == "__main__":
    sys.exit(main())
