"""Command-line scenario runner.

    photonbox run FILE [--out PATH] [--format json|csv]
    photonbox sweep FILE [--param NAME --range A:B:STEP] [--out PATH]

Common options: ``--units natural|si``, ``--seed N``, ``--quiet``.

Exit status is 0 when every check passes, 2 when any check fails and 1 on
errors (bad scenario file, numerical failure).
"""

from __future__ import annotations

import argparse
import copy
import json
import math
import sys
from pathlib import Path

from . import report as rpt
from .errors import PhotonBoxError, ScenarioError
from .scenario import execute, scenario_from_dict, parse_scenario

EXIT_OK, EXIT_ERROR, EXIT_FAILED = 0, 1, 2


def parse_range(text) -> list[float]:
    """Inclusive grid A, A+STEP, ... <= B from "A:B:STEP" or [A, B, STEP]."""
    if isinstance(text, str):
        parts = text.split(":")
        if len(parts) != 3:
            raise ScenarioError(f"range must look like A:B:STEP, got {text!r}")
        try:
            a, b, step = (float(x) for x in parts)
        except ValueError:
            raise ScenarioError(f"range must look like A:B:STEP, got {text!r}") from None
    elif isinstance(text, list) and len(text) == 3:
        a, b, step = (float(x) for x in text)
    else:
        raise ScenarioError(f"range must be 'A:B:STEP' or [A, B, STEP], got {text!r}")
    if not (math.isfinite(a) and math.isfinite(b) and math.isfinite(step)):
        raise ScenarioError("range bounds must be finite")
    if step <= 0 or b < a:
        raise ScenarioError(f"empty range {a:g}:{b:g}:{step:g}")
    n = math.floor((b - a) / step + 1e-9) + 1
    # rounding keeps 0.1-steps from printing as 0.30000000000000004
    return [round(a + i * step, 12) for i in range(n)]


def _sweep_values(spec) -> list:
    if not isinstance(spec, dict) or len(spec) != 1 or not ({"range", "values"} & set(spec)):
        raise ScenarioError(f'ranged parameter must be {{"range": ...}} or {{"values": [...]}}, got {spec!r}')
    if "range" in spec:
        return parse_range(spec["range"])
    values = spec["values"]
    if not isinstance(values, list) or not values:
        raise ScenarioError("empty 'values' list")
    return values


def run_file(path, out=None, fmt=None, units=None, seed=None, quiet=False,
             stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        text = Path(path).read_text(encoding="utf-8")
        scenario = parse_scenario(text, units=units, seed=seed, source=str(path))
        results, checks, rows = execute(scenario)
        report = rpt.build_report(scenario, results, checks)
        fmt = fmt or scenario.output["format"]
        body = rpt.dumps(report) if fmt == "json" else rpt.to_csv(rpt.jsonable(rows))
        _emit(body, out, scenario.output.get("path"), path, stdout)
    except OSError as exc:
        print(f"[cli] {exc}", file=stderr)
        return EXIT_ERROR
    except PhotonBoxError as exc:
        print(str(exc), file=stderr)
        return EXIT_ERROR
    except (ValueError, ZeroDivisionError) as exc:
        print(f"[{_module_of(exc)}] {exc}", file=stderr)
        return EXIT_ERROR
    if not quiet:
        for c in checks:
            print(f"{'PASS' if c.passed else 'FAIL'}  {c.name}  measured={rpt.jsonable(c.measured)!r} "
                  f"threshold={rpt.jsonable(c.threshold)!r}", file=stderr)
    return EXIT_OK if all(c.passed for c in checks) else EXIT_FAILED


def sweep_file(path, param=None, range_text=None, out=None, units=None, seed=None,
               quiet=False, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        text = Path(path).read_text(encoding="utf-8")
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ScenarioError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
        if (param is None) != (range_text is None):
            raise ScenarioError("--param and --range must be given together")
        if param is not None:
            if not isinstance(raw, dict) or not isinstance(raw.get("params"), dict):
                raise ScenarioError(f"{path}: scenario needs a params object")
            raw["params"][param] = {"range": range_text}
        # validates keys and kinds, leaves ranged entries untouched
        scenario_from_dict(raw, units=units, seed=seed, text=text, source=str(path),
                           allow_ranges=True)
        ranged = [k for k, v in raw["params"].items() if isinstance(v, dict) and k != "state"]
        if len(ranged) != 1:
            raise ScenarioError(
                f"sweep needs exactly one ranged parameter, found {len(ranged)}"
                + (f" ({', '.join(ranged)})" if ranged else "")
            )
        name = ranged[0]
        values = _sweep_values(raw["params"][name])
        rows, all_checks = [], []
        for value in values:
            point = copy.deepcopy(raw)
            point["params"][name] = value
            scenario = scenario_from_dict(point, units=units, seed=seed, source=str(path))
            _, checks, point_rows = execute(scenario)
            all_checks.extend(checks)
            for r in point_rows:
                rows.append({name: value, **{k: v for k, v in r.items() if k != name}})
        body = rpt.to_csv(rpt.jsonable(rows))
        _emit(body, out, raw.get("output", {}).get("path"), path, stdout)
    except OSError as exc:
        print(f"[cli] {exc}", file=stderr)
        return EXIT_ERROR
    except PhotonBoxError as exc:
        print(str(exc), file=stderr)
        return EXIT_ERROR
    except (ValueError, ZeroDivisionError) as exc:
        print(f"[{_module_of(exc)}] {exc}", file=stderr)
        return EXIT_ERROR
    failed = [c for c in all_checks if not c.passed]
    if not quiet:
        print(f"{len(rows)} rows, {len(all_checks) - len(failed)}/{len(all_checks)} checks passed",
              file=stderr)
        for c in failed:
            print(f"FAIL  {c.name}  measured={rpt.jsonable(c.measured)!r} threshold={rpt.jsonable(c.threshold)!r}", file=stderr)
    return EXIT_FAILED if failed else EXIT_OK


def _module_of(exc) -> str:
    tb = exc.__traceback__
    mod = "cli"
    while tb is not None:
        name = tb.tb_frame.f_globals.get("__name__", "")
        if name.startswith("photonbox."):
            mod = name.split(".", 1)[1]
        tb = tb.tb_next
    return mod


def _emit(body: str, out, scenario_path, source, stdout):
    target = out
    if target is None and scenario_path:
        target = Path(source).parent / scenario_path
    if target is None:
        stdout.write(body)
        return
    target = Path(target)
    target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(body, encoding="utf-8")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--units", choices=("natural", "si"), default=None,
                        help="unit system for constants not given in the file (default: file, else natural)")
    common.add_argument("--seed", type=int, default=None, help="seed for randomized scenarios")
    common.add_argument("--quiet", action="store_true", help="suppress the check summary")

    parser = argparse.ArgumentParser(prog="photonbox", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", parents=[common], help="run one scenario and write its report")
    run.add_argument("file")
    run.add_argument("--out", default=None, help="write here instead of the scenario's output path")
    run.add_argument("--format", choices=("json", "csv"), default=None)

    sweep = sub.add_parser("sweep", parents=[common], help="sweep one ranged parameter to CSV")
    sweep.add_argument("file")
    sweep.add_argument("--param", default=None)
    sweep.add_argument("--range", dest="range_text", default=None, metavar="A:B:STEP")
    sweep.add_argument("--out", default=None)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "run":
        return run_file(args.file, args.out, args.format, args.units, args.seed, args.quiet)
    return sweep_file(args.file, args.param, args.range_text, args.out, args.units, args.seed,
                      args.quiet)


if __name__ == "__main__":
    sys.exit(main())
