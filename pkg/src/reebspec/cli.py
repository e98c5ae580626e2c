"""Command-line front end.

Exit codes: 0 success / consistent, 1 inconsistent verdict or failed check
(still a valid run), 2 usage or input error, 3 a search or precision horizon
was exhausted.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from . import jumps as J
from . import spectrum as S
from . import torus as T
from .errors import NotFound, PrecisionExhausted, ReebError
from .exactreal import QuadExt, parse_scalar
from .orbit import Elliptic, EvenHyperbolic, OddHyperbolic, SimpleOrbit

log = logging.getLogger("reebspec")

EXIT_OK, EXIT_INCONSISTENT, EXIT_USAGE, EXIT_HORIZON = 0, 1, 2, 3
FORMATS = ("json", "csv", "table")


class UsageError(Exception):
    pass


@dataclass
class Report:
    command: list[str]
    inputs: dict
    results: dict
    horizons: dict = field(default_factory=dict)
    table: str | None = None  # key of a list-of-rows entry in results
    exit_code: int = EXIT_OK
    timing: float | None = None

    def to_json(self) -> dict:
        out = {
            "command": self.command,
            "inputs": self.inputs,
            "results": self.results,
            "horizons": self.horizons,
        }
        if self.timing is not None:
            out["timing_seconds"] = round(self.timing, 6)
        return out


# ---------------------------------------------------------------------------
# rendering
# ---------------------------------------------------------------------------


def _flatten(prefix: str, value: Any, out: list[tuple[str, str]]) -> None:
    if isinstance(value, dict):
        for k in sorted(value):
            _flatten(f"{prefix}.{k}" if prefix else k, value[k], out)
    elif isinstance(value, list):
        for i, v in enumerate(value):
            _flatten(f"{prefix}[{i}]", v, out)
    else:
        out.append((prefix, _text(value)))


def _text(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return ""
    return str(value)


def _with_decimal(value: Any, digits: int) -> str:
    s = _text(value)
    if isinstance(value, str) and "sqrt" in value:
        try:
            return f"{s} ~ {parse_scalar(value).decimal(digits)}"
        except ReebError:
            return s
    return s


def render(report: Report, fmt: str, digits: int = 12) -> str:
    if fmt == "json":
        return json.dumps(report.to_json(), sort_keys=True, indent=2) + "\n"
    rows = report.results.get(report.table) if report.table else None
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if isinstance(rows, list):
            header = sorted({k for r in rows for k in r}) if rows else []
            w.writerow(header)
            for r in rows:
                w.writerow([_text(r.get(h)) for h in header])
        else:
            pairs: list[tuple[str, str]] = []
            _flatten("", report.results, pairs)
            w.writerow(["key", "value"])
            w.writerows(pairs)
        return buf.getvalue()
    # table
    lines = []
    scalars: list[tuple[str, str]] = []
    rest = {k: v for k, v in report.results.items() if k != report.table}
    _flatten("", rest, scalars)
    if scalars:
        width = max(len(k) for k, _ in scalars)
        lines += [f"{k.ljust(width)}  {_with_decimal(v, digits) if 'sqrt' in v else v}" for k, v in scalars]
    if isinstance(rows, list) and rows:
        header = list(rows[0])
        cells = [[_with_decimal(r.get(h), digits) for h in header] for r in rows]
        widths = [max(len(h), *(len(c[i]) for c in cells)) for i, h in enumerate(header)]
        if lines:
            lines.append("")
        lines.append("  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip())
        lines.append("  ".join("-" * w for w in widths))
        lines += ["  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip() for row in cells]
    return "\n".join(lines) + "\n"


def emit_report(report: Report, fmt: str, destination: str | None, digits: int = 12) -> None:
    """Write the rendered report to ``destination`` (a path) or stdout."""
    if fmt not in FORMATS:
        raise UsageError(f"unknown format {fmt!r}")
    text = render(report, fmt, digits)
    if destination in (None, "-"):
        sys.stdout.write(text)
        return
    try:
        Path(destination).write_text(text)
    except OSError as exc:
        raise OSError(f"cannot write report to {destination}: {exc.strerror}") from exc


# ---------------------------------------------------------------------------
# argument helpers
# ---------------------------------------------------------------------------


def scalar(text: str) -> QuadExt:
    try:
        return parse_scalar(text)
    except ReebError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def positive_int(text: str) -> int:
    try:
        v = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from exc
    if v < 1:
        raise argparse.ArgumentTypeError(f"{text!r} must be positive")
    return v


def rational(text: str) -> Fraction:
    try:
        v = Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"{text!r} is not a rational number") from exc
    if v <= 0:
        raise argparse.ArgumentTypeError(f"{text!r} must be positive")
    return v


def _load_json(path: str) -> Any:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from exc


def _load_spectrum(path: str) -> S.Spectrum:
    return S.Spectrum.from_json(_load_json(path))


def _pair(a, b) -> list[dict]:
    return [a.to_json(), b.to_json()]


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_cz(a: argparse.Namespace) -> Report:
    if a.kind == "elliptic":
        if a.alpha is None:
            raise UsageError("--alpha is required for an elliptic orbit")
        kind = Elliptic(a.r, a.alpha)
    elif a.kind == "even_hyperbolic":
        kind = EvenHyperbolic(a.r)
    else:
        kind = OddHyperbolic(a.r)
    o = SimpleOrbit("g", a.action, kind)
    ks = [a.k] if a.k_max is None else range(1, a.k_max + 1)
    rows = [{"k": it.k, "cz": it.cz, "degree": it.degree, "good": it.good} for it in map(o.iterate, ks)]
    res: dict = {"orbit": o.to_json(), "iterates": rows}
    if len(rows) == 1:
        res.update(cz=rows[0]["cz"], degree=rows[0]["degree"], good=rows[0]["good"])
    return Report([], {"orbit": o.to_json()}, res, table="iterates")


_JUMP_ARGS = {
    "sequence": ("xi",),
    "is-jump": ("xi", "k"),
    "subsequence": ("xi1", "xi2"),
    "relation": ("xi1", "xi2"),
    "common-jump": ("xi2", "xi3"),
    "kotschick": ("xi1", "xi2"),
    "defect": ("xi1", "xi2"),
}


def cmd_jumps(a: argparse.Namespace) -> Report:
    mode = a.mode
    missing = [f"--{n}" for n in _JUMP_ARGS[mode] if getattr(a, n) is None]
    if missing:
        raise UsageError(f"jumps {mode} needs {', '.join(missing)}")
    horizons = {}
    code = EXIT_OK
    if mode == "sequence":
        seq = J.jump_sequence(a.xi, a.horizon)
        res = {"terms": list(seq.terms)}
        inputs = {"xi": str(seq.xi)}
        horizons["N"] = a.horizon
    elif mode == "is-jump":
        res = {"is_jump": J.is_jump(a.xi, a.k)}
        inputs = {"xi": str(a.xi), "k": a.k}
    elif mode == "subsequence":
        chk = J.is_jump_subsequence(a.xi2, a.xi1, a.horizon)
        res = {"subsequence": chk.holds, "witness": chk.witness}
        inputs = {"xi1": str(a.xi1), "xi2": str(a.xi2)}
        horizons["N"] = a.horizon
        code = EXIT_OK if chk.holds else EXIT_INCONSISTENT
    elif mode == "relation":
        rel = J.find_affine_relation(a.xi1, a.xi2)
        res = {"relation": None if rel is None else {
            "slope": str(rel.slope), "offset": str(rel.offset), "sign": rel.sign, "degenerate": rel.degenerate}}
        inputs = {"xi1": str(a.xi1), "xi2": str(a.xi2)}
    elif mode == "common-jump":
        k = J.find_common_jump(a.xi2, a.xi3, a.bound)
        res = {"common_jump": k}
        inputs = {"xi2": str(a.xi2), "xi3": str(a.xi3)}
        horizons["bound"] = a.bound
        code = EXIT_OK if k is not None else EXIT_HORIZON
    elif mode == "kotschick":
        chk = J.kotschick_factor(a.xi1, a.xi2, a.horizon)
        res = {"factor": chk.factor, "subsequence": chk.subsequence.holds, "witness": chk.subsequence.witness}
        inputs = {"xi1": str(a.xi1), "xi2": str(a.xi2)}
        horizons["N"] = a.horizon
    else:  # defect
        rep = J.quasimorphism_defect(a.xi1, a.xi2, a.horizon)
        res = {"defect": rep.defect, "bound": rep.bound}
        inputs = {"xi1": str(a.xi1), "xi2": str(a.xi2)}
        horizons["N"] = a.horizon
    return Report([], inputs, res, horizons, exit_code=code)


def _translation(a: argparse.Namespace) -> T.TorusTranslation:
    if a.translation is not None:
        return T.TorusTranslation.from_json(_load_json(a.translation))
    if not a.xi:
        raise UsageError("give --xi (repeatable) or --translation FILE")
    return T.TorusTranslation.from_scalars(a.xi)


def cmd_torus(a: argparse.Namespace) -> Report:
    mode = a.mode
    if mode == "rotation":
        if a.step is None:
            raise UsageError("torus rotation needs --step")
        hit = T.rotation_hit(a.v, a.step, a.target, a.tol, a.k_max)
        inputs = {"v": a.v, "step": str(a.step), "target": str(a.target), "tol": str(a.tol)}
        return Report([], inputs, {"k": hit.k, "distance": str(hit.distance)}, {"k_max": a.k_max})
    t = _translation(a)
    inputs = t.to_json()
    if mode == "span":
        dim = T.rational_span_dim(t)
        return Report([], inputs, {"span_dim": dim, "l": dim - 1})
    if mode == "lattice":
        return Report([], inputs, {"relations": T.relation_lattice(t)})
    if mode == "closure":
        return Report([], inputs, T.closure_description(t).to_json())
    if mode == "orbit":
        pts = T.orbit_points(t, a.M)
        rows = [{"m": m, **{f"x{i + 1}": str(x) for i, x in enumerate(p)}} for m, p in enumerate(pts)]
        return Report([], inputs, {"points": rows}, {"M": a.M}, table="points")
    rep = T.density_check(t, a.eps, a.M)
    res = {
        "dense": rep.dense,
        "worst_gap": f"{rep.worst_gap:.12g}",
        "net_size": rep.net_size,
        "relations_exact": rep.relations_exact,
    }
    return Report([], inputs, res, {"M": a.M, "eps": str(rep.eps)},
                  exit_code=EXIT_OK if rep.dense else EXIT_INCONSISTENT)


def _iterate_rows(its) -> list[dict]:
    return [it.to_json() for it in its]


def cmd_ellipsoid(a: argparse.Namespace) -> Report:
    e = S.EllipsoidParams(a.a1, a.a2)
    sp = S.ellipsoid_spectrum(e)
    if a.action_cap is not None:
        its = S.enumerate_iterates(sp, action_cap=a.action_cap)
        horizons = {"action_cap": str(a.action_cap)}
    else:
        its = S.enumerate_iterates(sp, degree_cap=a.degree_cap)
        horizons = {"degree_cap": a.degree_cap}
    res = {"spectrum": sp.to_json(), "iterates": _iterate_rows(its)}
    return Report([], e.to_json(), res, horizons, table="iterates")


def cmd_iterates(a: argparse.Namespace) -> Report:
    sp = _load_spectrum(a.spectrum)
    if a.action_cap is not None:
        its = S.enumerate_iterates(sp, action_cap=a.action_cap)
        horizons = {"action_cap": str(a.action_cap)}
    else:
        its = S.enumerate_iterates(sp, degree_cap=a.degree_cap)
        horizons = {"degree_cap": a.degree_cap}
    return Report([], {"spectrum": sp.to_json()}, {"iterates": _iterate_rows(its)}, horizons, table="iterates")


def cmd_realize(a: argparse.Namespace) -> Report:
    real = S.realize_from_ratio(a.ratio)
    sp = S.ellipsoid_spectrum(real.ellipsoid)
    res = real.to_json()
    res["spectrum"] = sp.to_json()
    return Report([], {"ratio": str(a.ratio)}, res)


def cmd_classify(a: argparse.Namespace) -> Report:
    sp = _load_spectrum(a.spectrum)
    result = S.classify(sp, a.degree_cap, check_convexity=not a.no_convexity, escalate_to=a.escalate_to)
    code = {
        S.Verdict.CONSISTENT_TWO_ORBIT: EXIT_OK,
        S.Verdict.UNDECIDED: EXIT_HORIZON,
    }.get(result.verdict, EXIT_INCONSISTENT)
    return Report([], {"spectrum": sp.to_json()}, result.to_json(), {"degree_cap": result.degree_cap},
                  exit_code=code)


def cmd_collide(a: argparse.Namespace) -> Report:
    sp = _load_spectrum(a.spectrum)
    pair = S.find_degree_collision(sp, a.degree_cap)
    res = {"collision": None if pair is None else {"degree": pair[0].degree, "iterates": _pair(*pair)}}
    return Report([], {"spectrum": sp.to_json()}, res, {"degree_cap": a.degree_cap},
                  exit_code=EXIT_OK if pair is None else EXIT_INCONSISTENT)


def cmd_verify(a: argparse.Namespace) -> Report:
    from .acceptance import run_all

    results = run_all(a.only)
    for r in results:
        print(r.line(), file=sys.stderr)
    rows = [r.to_json() for r in results]
    ok = all(r.passed for r in results)
    return Report([], {"only": a.only or []}, {"criteria": rows, "all_passed": ok}, table="criteria",
                  exit_code=EXIT_OK if ok else EXIT_INCONSISTENT)


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=FORMATS, default="json")
    p.add_argument("--output", default=None, help="output path (default: stdout)")
    p.add_argument("--digits", type=positive_int, default=12, help="decimal digits shown in table format")
    p.add_argument("--timing", action="store_true", help="include wall time in the JSON report")
    p.add_argument("--config", default=None, help="JSON file of option defaults for this subcommand")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="reebspec", description="Reeb orbit spectra on the tight 3-sphere")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("cz", help="Conley-Zehnder index and degree of iterates")
    p.add_argument("--kind", choices=("elliptic", "even_hyperbolic", "odd_hyperbolic"), required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--alpha", type=scalar)
    p.add_argument("--action", type=scalar, default=QuadExt(1))
    g = p.add_mutually_exclusive_group()
    g.add_argument("--k", type=positive_int, default=1)
    g.add_argument("--k-max", type=positive_int)
    p.set_defaults(func=cmd_cz)

    p = sub.add_parser("jumps", help="jump sequences and affine relations")
    p.add_argument("mode", choices=("sequence", "is-jump", "subsequence", "relation", "common-jump", "kotschick", "defect"))
    for name in ("xi", "xi1", "xi2", "xi3"):
        p.add_argument(f"--{name}", type=scalar)
    p.add_argument("--horizon", type=positive_int, default=10_000)
    p.add_argument("--k", type=positive_int)
    p.add_argument("--bound", type=positive_int, default=10_000)
    p.set_defaults(func=cmd_jumps)

    p = sub.add_parser("torus", help="torus translations and circle rotations")
    p.add_argument("mode", choices=("span", "lattice", "closure", "orbit", "density", "rotation"))
    p.add_argument("--xi", type=scalar, action="append", help="coordinate (repeatable)")
    p.add_argument("--translation", help="JSON file {\"xi\": [LinComb, ...]}")
    p.add_argument("--M", type=int, default=1000)
    p.add_argument("--eps", type=rational, default=Fraction(1, 50))
    p.add_argument("--v", type=positive_int, default=1)
    p.add_argument("--step", type=scalar)
    p.add_argument("--target", type=scalar, default=QuadExt(0))
    p.add_argument("--tol", type=rational, default=Fraction(1, 10**6))
    p.add_argument("--k-max", type=positive_int, default=10**7)
    p.set_defaults(func=cmd_torus)

    p = sub.add_parser("ellipsoid", help="spectrum table of an irrational ellipsoid")
    p.add_argument("--a1", type=scalar, required=True)
    p.add_argument("--a2", type=scalar, required=True)
    p.add_argument("--degree-cap", type=positive_int, default=S.DEFAULT_DEGREE_CAP)
    p.add_argument("--action-cap", type=scalar)
    p.set_defaults(func=cmd_ellipsoid)

    p = sub.add_parser("iterates", help="iterates of a spectrum file sorted by action")
    p.add_argument("--spectrum", required=True)
    p.add_argument("--degree-cap", type=positive_int, default=S.DEFAULT_DEGREE_CAP)
    p.add_argument("--action-cap", type=scalar)
    p.set_defaults(func=cmd_iterates)

    p = sub.add_parser("realize", help="rotation data forced by an action ratio")
    p.add_argument("--ratio", type=scalar, required=True)
    p.set_defaults(func=cmd_realize)

    p = sub.add_parser("classify", help="consistency with vanishing differential")
    p.add_argument("--spectrum", required=True)
    p.add_argument("--degree-cap", type=positive_int, default=S.DEFAULT_DEGREE_CAP)
    p.add_argument("--escalate-to", type=positive_int)
    p.add_argument("--no-convexity", action="store_true", help="skip the dynamical convexity check")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("collide", help="smallest-degree collision of good iterates")
    p.add_argument("--spectrum", required=True)
    p.add_argument("--degree-cap", type=positive_int, default=S.DEFAULT_DEGREE_CAP)
    p.set_defaults(func=cmd_collide)

    p = sub.add_parser("verify", help="run the acceptance criteria")
    p.add_argument("--only", type=positive_int, action="append", help="criterion number (repeatable)")
    p.set_defaults(func=cmd_verify)

    for sp in sub.choices.values():
        _common(sp)
    return parser


def _apply_config(parser: argparse.ArgumentParser, argv: Sequence[str], ns: argparse.Namespace) -> argparse.Namespace:
    """Re-parse with defaults from ``--config``; unknown keys are rejected."""
    cfg = _load_json(ns.config)
    if not isinstance(cfg, dict):
        raise UsageError(f"config {ns.config} must be a JSON object")
    subparser = parser._subparsers._group_actions[0].choices[ns.command]  # type: ignore[union-attr]
    actions = {a.dest: a for a in subparser._actions if a.dest not in ("help", "config", "func")}
    defaults = {}
    for key, value in cfg.items():
        dest = key.replace("-", "_")
        if dest not in actions:
            raise UsageError(f"unknown config key {key!r} for subcommand {ns.command!r}")
        act = actions[dest]
        if act.type is not None and value is not None and not isinstance(value, bool):
            try:
                value = [act.type(str(v)) for v in value] if isinstance(value, list) else act.type(str(value))
            except argparse.ArgumentTypeError as exc:
                raise UsageError(f"config key {key!r}: {exc}") from exc
        defaults[dest] = value
    subparser.set_defaults(**defaults)
    return parser.parse_args(argv)


def run(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if ns.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        if ns.config is not None:
            ns = _apply_config(parser, argv, ns)
        start = time.perf_counter()
        report = ns.func(ns)
        report.command = argv
        if ns.timing:
            report.timing = time.perf_counter() - start
        emit_report(report, ns.format, ns.output, ns.digits)
        return report.exit_code
    except (NotFound, PrecisionExhausted) as exc:
        print(f"reebspec: horizon exhausted: {exc}", file=sys.stderr)
        return EXIT_HORIZON
    except (ReebError, UsageError, ValueError, OSError) as exc:
        print(f"reebspec: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
