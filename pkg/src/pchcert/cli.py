"""Command-line front end.

    pchcert fibre stats --k1 5 --k2 5
    pchcert pch dim --k1 5 --k2 5 --json
    pchcert surjectivity --k1 10 --k2 10 --a 2 --s 3 --json --out cert.json
    pchcert pch dim --sweep k1=3..8,k2=3..8

Exit status: 0 when every assertion passes, 1 when a mathematical check
fails, 2 on usage or precondition errors.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import __version__
from .boundary import BoundaryError, surjectivity_certificate
from .chowcx import verify_complex
from .fibre import FibreError, ProductFibre
from .linalg import LinalgError, format_rational
from .pch import GENERATOR_NAMES, equivalence_report, pch_space
from .polygon import TorsionError, antiisometry_check, dual_composite_check, frey_kani_kernel_check
from .surface import SurfaceError, closed_form_check

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

COMMANDS = {
    "fibre": ("stats",),
    "complex": ("verify",),
    "pch": ("dim", "generators"),
    "genus2": ("solve",),
    "torsion": ("check",),
    "surjectivity": (),
}


class UsageError(Exception):
    pass


def jsonable(obj):
    if isinstance(obj, Fraction):
        return format_rational(obj)
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    return obj


@dataclass
class RunReport:
    command: str
    parameters: dict
    outcome: str = "pass"
    payload: object = None
    elapsed: float = 0.0
    version: str = __version__
    multiplicity_profile: str = "default"
    messages: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "command": self.command,
            "parameters": self.parameters,
            "outcome": self.outcome,
            "payload": jsonable(self.payload),
            "elapsed_seconds": round(self.elapsed, 3),
            "version": self.version,
            "multiplicity_profile": self.multiplicity_profile,
            "messages": self.messages,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


# -- individual commands: each returns (payload, passed) ----------------------------


def _fibre(args) -> ProductFibre:
    return ProductFibre(_req(args, "k1"), _req(args, "k2"), args.multiplicity_profile)


def _req(args, name):
    val = getattr(args, name)
    if val is None:
        raise UsageError(f"--{name} is required")
    return val


def cmd_fibre_stats(args):
    return _fibre(args).summary(), True


def cmd_complex_verify(args):
    report = verify_complex(_fibre(args))
    return report, report["pass"]


def cmd_pch_dim(args):
    space = pch_space(_fibre(args))
    summary = space.summary()
    return {"dim": summary["dim"], **summary}, summary["dim"] == 3


def cmd_pch_generators(args):
    space = pch_space(_fibre(args))
    annihilated = {name: space.in_kernel(space.generators[name]) for name in GENERATOR_NAMES}
    rank = space.generator_rank()
    payload = {
        "generators": list(GENERATOR_NAMES),
        "in_kernel": annihilated,
        "quotient_images": {name: list(space.generator_images[name]) for name in GENERATOR_NAMES},
        "generator_rank": rank,
        "dim": space.quotient_dim,
        "equivalences": equivalence_report(space),
    }
    return payload, all(annihilated.values()) and rank == 3 == space.quotient_dim


def cmd_genus2_solve(args):
    r, s, t = _req(args, "r"), _req(args, "s"), _req(args, "t")
    res = closed_form_check(r, s, t)
    g, sol = res["graph"], res["solution"]
    payload = {
        "matrix": {"vertices": g.names, "rows": g.intersection_matrix()},
        "horizontal": g.horizontal,
        "solution": sol.coefficients,
        "matches_closed_form": res["matches"],
        "a1": res["a1"],
        "row_sums_zero": res["row_sums_zero"],
        "notes": g.notes,
    }
    ok = res["matches"] and res["a1_positive"] and res["row_sums_zero"] and res["residual_zero"]
    return payload, ok


def cmd_torsion_check(args):
    a = _req(args, "a")
    n = a * a + 1
    k1 = args.k1 if args.k1 is not None else n
    k2 = args.k2 if args.k2 is not None else n
    anti = antiisometry_check(a, k1, k2, n)
    dual = dual_composite_check(a, k1, k2, n)
    payload = {"n": n, "antiisometry": anti.to_json(), "dual_composite": dual.to_json()}
    ok = anti.holds and dual.is_mult_by_n_minus_1
    if k1 == k2:
        fk = frey_kani_kernel_check(a, n)
        payload["frey_kani"] = fk.to_json()
        ok = ok and fk.equals_graph and fk.kernel_size_squared_is_n4
    return payload, ok


def cmd_surjectivity(args):
    a = args.a if args.a is not None else 2
    s = args.s if args.s is not None else 0
    cert = surjectivity_certificate(_req(args, "k1"), _req(args, "k2"), a, s)
    return cert.to_json(), cert.passed


HANDLERS = {
    ("fibre", "stats"): cmd_fibre_stats,
    ("complex", "verify"): cmd_complex_verify,
    ("pch", "dim"): cmd_pch_dim,
    ("pch", "generators"): cmd_pch_generators,
    ("genus2", "solve"): cmd_genus2_solve,
    ("torsion", "check"): cmd_torsion_check,
    ("surjectivity", None): cmd_surjectivity,
}


# -- parsing --------------------------------------------------------------------


def parse_sweep(text: str) -> list[dict[str, int]]:
    """``k1=3..5,k2=4`` -> the product of the ranges, in the order given."""
    names, ranges = [], []
    for part in text.split(","):
        if "=" not in part:
            raise UsageError(f"bad sweep term {part!r}")
        name, rng = part.split("=", 1)
        name = name.strip().replace("-", "_")
        if name not in ("k1", "k2", "a", "s", "r", "t"):
            raise UsageError(f"cannot sweep {name!r}")
        try:
            if ".." in rng:
                lo, hi = (int(x) for x in rng.split(".."))
                values = list(range(lo, hi + 1))
            else:
                values = [int(rng)]
        except ValueError as exc:
            raise UsageError(f"bad sweep range {rng!r}") from exc
        if not values:
            raise UsageError(f"empty sweep range {rng!r}")
        names.append(name)
        ranges.append(values)
    return [dict(zip(names, combo)) for combo in itertools.product(*ranges)]


def _add_common(p: argparse.ArgumentParser) -> None:
    for name in ("k1", "k2", "a", "s", "r", "t"):
        p.add_argument(f"--{name}", type=int)
    p.add_argument("--json", action="store_true", help="emit the JSON report")
    p.add_argument("--out", metavar="PATH", help="write the report to PATH instead of stdout")
    p.add_argument("--multiplicity-profile", choices=("default", "all-ones"), default="default")
    p.add_argument("--sweep", help="e.g. k1=3..8,k2=3..8")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pchcert", description="Exact PCH^1 certificates for E1 x E2.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for cmd, actions in COMMANDS.items():
        p = sub.add_parser(cmd)
        if actions:
            inner = p.add_subparsers(dest="action", required=True)
            for act in actions:
                _add_common(inner.add_parser(act))
        else:
            _add_common(p)
    return parser


PARAM_KEYS = ("k1", "k2", "a", "s", "r", "t")


def _params(args) -> dict:
    return {k: getattr(args, k) for k in PARAM_KEYS if getattr(args, k) is not None}


def _text(report: RunReport) -> str:
    lines = [f"{report.command}: {report.outcome}"]
    if report.parameters:
        lines.append("  parameters: " + ", ".join(f"{k}={v}" for k, v in report.parameters.items()))
    payload = jsonable(report.payload)
    if isinstance(payload, list):
        for item in payload:
            point = " ".join(f"{k}={v}" for k, v in item["parameters"].items())
            lines.append(f"  {point}: {'pass' if item['pass'] else 'FAIL'}")
    elif isinstance(payload, dict):
        for key, val in payload.items():
            if isinstance(val, (dict, list)) and len(json.dumps(val)) > 100:
                val = "..."
            lines.append(f"  {key}: {val}")
    lines.extend(f"  note: {m}" for m in report.messages)
    lines.append(f"  elapsed: {report.elapsed:.2f}s")
    return "\n".join(lines)


def run(argv: list[str] | None = None) -> tuple[int, RunReport | None]:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0), None
    action = getattr(args, "action", None)
    name = args.command + (f" {action}" if action else "")
    handler = HANDLERS[(args.command, action)]
    report = RunReport(name, _params(args), multiplicity_profile=args.multiplicity_profile)
    start = time.perf_counter()
    code = EXIT_PASS
    try:
        if args.sweep:
            grid = parse_sweep(args.sweep)
            payload, ok = [], True
            for point in grid:
                for k, v in point.items():
                    setattr(args, k, v)
                item, passed = handler(args)
                payload.append({"parameters": point, "pass": passed, "result": item})
                ok = ok and passed
            report.parameters = {**report.parameters, "sweep": args.sweep}
        else:
            payload, ok = handler(args)
        report.payload = payload
        if not ok:
            report.outcome, code = "fail", EXIT_FAIL
    except (UsageError, BoundaryError, TorsionError, SurfaceError, FibreError) as exc:
        report.outcome, code = "error", EXIT_USAGE
        report.messages.append(str(exc))
    except LinalgError as exc:
        report.outcome, code = "fail", EXIT_FAIL
        report.messages.append(f"{type(exc).__name__}: {exc}")
    report.elapsed = time.perf_counter() - start

    text = report.dumps() if args.json else _text(report)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    if code == EXIT_USAGE and not args.json:
        print(f"error: {'; '.join(report.messages)}", file=sys.stderr)
    return code, report


def main(argv: list[str] | None = None) -> int:
    code, _ = run(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
