"""Command-line front end: ``claims-dilation <allocate|sweep|axioms|characterize>``."""

from __future__ import annotations

import argparse
import io
import json
import sys
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .axioms import (
    HOLDS,
    SampleSpec,
    characterization_suite,
    compare_table1,
    preservation_matrix,
)
from .core import (
    DEFAULT_TOL,
    ClaimsError,
    ClaimsProblem,
    ExclusionThresholds,
    ExtendedProblem,
    ValidationError,
    check_allocation,
    validate_extended,
)
from .operator import extend, extended_breakpoints, extended_trace
from .rules import CLASSIC, get_rule

EXIT_OK, EXIT_VALIDATION, EXIT_IO, EXIT_MISMATCH = 0, 2, 3, 4
COMMANDS = ("allocate", "sweep", "axioms", "characterize")
FORMATS = ("csv", "svg", "json")


class ConfigError(ValidationError):
    pass


def fmt(v: float) -> str:
    # 12 significant digits, '.' separator, no negative zero
    return format(float(v) + 0.0, ".12g")


@dataclass
class RunConfig:
    command: str
    rule: str = "p"
    claims: tuple[float, float] | None = None
    endowment: float | None = None
    lower: tuple[float, float] = (0.0, 0.0)
    upper: tuple[float, float] = (1.0, 1.0)
    sweep: tuple[float, float, int] | None = None
    seed: int = 0
    samples: int = 500
    out: str | None = None
    format: str = "csv"
    expect_table1: bool = False
    rules: list[str] = field(default_factory=list)

    @property
    def thresholds(self) -> ExclusionThresholds:
        return ExclusionThresholds(*self.lower, *self.upper)

    def extended_problem(self, E: float) -> ExtendedProblem:
        return ExtendedProblem(ClaimsProblem(*self.claims, E), self.thresholds)

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        if self.format not in FORMATS:
            raise ConfigError(f"unknown format {self.format!r}; expected one of {FORMATS}")
        for rid in self.rules or [self.rule]:
            get_rule(rid)
        if self.command in ("allocate", "sweep"):
            if self.claims is None:
                raise ConfigError("--claims is required")
            E = self.endowment if self.command == "allocate" else 0.0
            if E is None:
                raise ConfigError("--endowment is required")
            validate_extended(self.extended_problem(E))
        if self.command == "sweep":
            if self.sweep is None:
                raise ConfigError("--sweep min,max,steps is required")
            lo, hi, steps = self.sweep
            C = self.claims[0] + self.claims[1]
            if steps < 2:
                raise ConfigError(f"sweep needs at least 2 steps, got {steps}")
            if not 0 <= lo < hi <= C:
                raise ConfigError(f"sweep range needs 0 <= E_min < E_max <= C = {C!r}, got [{lo!r}, {hi!r}]")
        if self.samples < 1:
            raise ConfigError(f"--samples must be positive, got {self.samples}")


# ---------------------------------------------------------------- parsing


def _floats(text, n: int, what: str) -> tuple[float, ...]:
    if isinstance(text, (list, tuple)):
        parts = list(text)
    else:
        parts = str(text).split(",")
    try:
        vals = tuple(float(p) for p in parts)
    except (TypeError, ValueError):
        raise ConfigError(f"{what} must be {n} comma-separated numbers, got {text!r}") from None
    if len(vals) != n:
        raise ConfigError(f"{what} must be {n} comma-separated numbers, got {text!r}")
    return vals


def _sweep(value) -> tuple[float, float, int]:
    if isinstance(value, dict):
        try:
            value = (value["E_min"], value["E_max"], value["steps"])
        except KeyError as e:
            raise ConfigError(f"sweep object is missing {e.args[0]!r}") from None
    lo, hi, steps = _floats(value, 3, "--sweep")
    if steps != int(steps):
        raise ConfigError(f"sweep steps must be an integer, got {steps!r}")
    return lo, hi, int(steps)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="claims-dilation", description=__doc__)
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", help="JSON file with any of the options below; flags override it")
    parser.add_argument("--rule", help="rule id (p, cea, cel, cd, rt, v, sd); comma list for axioms")
    parser.add_argument("--claims", help="c1,c2")
    parser.add_argument("--lower", help="l1,l2 as decimal proportions")
    parser.add_argument("--upper", help="u1,u2 as decimal proportions")
    parser.add_argument("--endowment", type=float)
    parser.add_argument("--sweep", help="E_min,E_max,steps")
    parser.add_argument("--seed", type=int)
    parser.add_argument("--samples", type=int, help="instances per check (default 500)")
    parser.add_argument("--out", help="output path (default stdout)")
    parser.add_argument("--format", choices=FORMATS)
    parser.add_argument("--expect-table1", action="store_true", default=None)
    return parser


def load_config(args: argparse.Namespace) -> RunConfig:
    raw: dict[str, Any] = {}
    if args.config:
        with open(args.config, encoding="utf-8") as fh:
            text = fh.read()
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as e:
            raise ConfigError(f"config is not valid JSON: {e}") from None
        if not isinstance(raw, dict):
            raise ConfigError("config must be a JSON object")
        thresholds = raw.pop("thresholds", None)
        if thresholds is not None:
            raw.setdefault("lower", thresholds.get("lower"))
            raw.setdefault("upper", thresholds.get("upper"))
        if "output" in raw:
            output = raw.pop("output")
            raw.setdefault("out", output.get("path") if isinstance(output, dict) else output)
            if isinstance(output, dict) and "format" in output:
                raw.setdefault("format", output["format"])
        raw = {k.replace("-", "_"): v for k, v in raw.items()}
        raw.pop("command", None)
        known = {"rule", "claims", "lower", "upper", "endowment", "sweep", "seed", "samples", "out", "format", "expect_table1"}
        unknown = set(raw) - known
        if unknown:
            raise ConfigError(f"unknown config keys: {sorted(unknown)}")

    for key in ("rule", "claims", "lower", "upper", "endowment", "sweep", "seed", "samples", "out", "format", "expect_table1"):
        value = getattr(args, key)
        if value is not None:
            raw[key] = value

    cfg = RunConfig(args.command)
    if "rule" in raw:
        rules = [r.strip() for r in raw["rule"]] if isinstance(raw["rule"], list) else [r.strip() for r in str(raw["rule"]).split(",")]
        if args.command == "axioms":
            cfg.rules = rules
        else:
            if len(rules) != 1:
                raise ConfigError(f"{args.command} takes a single rule, got {raw['rule']!r}")
            cfg.rule = rules[0]
    if raw.get("claims") is not None:
        cfg.claims = _floats(raw["claims"], 2, "--claims")
    if raw.get("lower") is not None:
        cfg.lower = _floats(raw["lower"], 2, "--lower")
    if raw.get("upper") is not None:
        cfg.upper = _floats(raw["upper"], 2, "--upper")
    if raw.get("endowment") is not None:
        cfg.endowment = _floats([raw["endowment"]], 1, "--endowment")[0]
    if raw.get("sweep") is not None:
        cfg.sweep = _sweep(raw["sweep"])
    for key, kind in (("seed", int), ("samples", int)):
        if raw.get(key) is not None:
            if not isinstance(raw[key], int) or isinstance(raw[key], bool):
                raise ConfigError(f"{key} must be an integer, got {raw[key]!r}")
            setattr(cfg, key, kind(raw[key]))
    if raw.get("out") is not None:
        cfg.out = str(raw["out"])
    if raw.get("format") is not None:
        cfg.format = str(raw["format"])
    cfg.expect_table1 = bool(raw.get("expect_table1", False))
    if args.command in ("axioms", "characterize") and args.format is None and "format" not in raw:
        cfg.format = "json"
    cfg.validate()
    return cfg


# ---------------------------------------------------------------- commands


def cmd_allocate(cfg: RunConfig) -> str:
    base = get_rule(cfg.rule)
    ep = cfg.extended_problem(cfg.endowment)
    x, trace = extended_trace(base, ep)
    line = f"x = ({fmt(x[0])}, {fmt(x[1])}), stage = {trace.stage}"
    if trace.inner_solution is not None:
        y = trace.inner_solution
        line += f", y = ({fmt(y[0])}, {fmt(y[1])})"
    return line + "\n"


def sweep_grid(cfg: RunConfig) -> list[float]:
    """Evenly spaced endowments plus L, U and the path's corner points inside the range."""
    lo, hi, steps = cfg.sweep
    base = get_rule(cfg.rule)
    ep = cfg.extended_problem(0.0)
    grid = {float(e) for e in np.linspace(lo, hi, steps)}
    extra = {ep.L, ep.U, *extended_breakpoints(base, ep)}
    grid |= {e for e in extra if lo <= e <= hi}
    return sorted(grid)


def sweep_rows(cfg: RunConfig) -> list[tuple[float, float, float]]:
    rule = extend(get_rule(cfg.rule))
    rows = []
    for E in sweep_grid(cfg):
        ep = cfg.extended_problem(E)
        x = rule.allocate(ep)
        check_allocation(ep.problem, x, DEFAULT_TOL)
        rows.append((E, x[0], x[1]))
    return rows


def rows_to_csv(rows) -> str:
    buf = io.StringIO(newline="")
    buf.write("E,x1,x2\n")
    for E, x1, x2 in rows:
        buf.write(f"{fmt(E)},{fmt(x1)},{fmt(x2)}\n")
    return buf.getvalue()


def rows_to_svg(rows, cfg: RunConfig) -> str:
    """Static 600x600 chart of the path of awards: claims box solid, exclusion space dashed."""
    c1, c2 = cfg.claims
    t = cfg.thresholds
    size, margin = 600, 50
    scale = (size - 2 * margin) / max(c1, c2, 1e-300)

    def pt(x1, x2):
        return f"{fmt(margin + x1 * scale)},{fmt(size - margin - x2 * scale)}"

    def rect(x1a, x2a, x1b, x2b, style):
        X, Y = margin + x1a * scale, size - margin - x2b * scale
        return (
            f'<rect x="{fmt(X)}" y="{fmt(Y)}" width="{fmt((x1b - x1a) * scale)}" '
            f'height="{fmt((x2b - x2a) * scale)}" fill="none" stroke="black" {style}/>'
        )

    path = " ".join(pt(x1, x2) for _, x1, x2 in rows)
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {size} {size}" width="{size}" height="{size}">',
        f'<line x1="{margin}" y1="{size - margin}" x2="{size - margin // 2}" y2="{size - margin}" stroke="gray"/>',
        f'<line x1="{margin}" y1="{size - margin}" x2="{margin}" y2="{margin // 2}" stroke="gray"/>',
        f'<text x="{size - margin // 2}" y="{size - margin + 20}" font-size="14">x1</text>',
        f'<text x="{margin - 30}" y="{margin // 2 + 5}" font-size="14">x2</text>',
        rect(0.0, 0.0, c1, c2, 'stroke-width="1.5"'),
        rect(t.l1 * c1, t.l2 * c2, t.u1 * c1, t.u2 * c2, 'stroke-dasharray="6,4"'),
        f'<polyline points="{path}" fill="none" stroke="crimson" stroke-width="2"/>',
        f'<text x="{margin}" y="{margin // 2}" font-size="14">{cfg.rule} c=({fmt(c1)}, {fmt(c2)})</text>',
        "</svg>",
    ]
    return "\n".join(parts) + "\n"


def cmd_sweep(cfg: RunConfig) -> str:
    rows = sweep_rows(cfg)
    if cfg.format == "svg":
        return rows_to_svg(rows, cfg)
    if cfg.format == "json":
        return json.dumps([{"E": E, "x1": x1, "x2": x2} for E, x1, x2 in rows], indent=2) + "\n"
    return rows_to_csv(rows)


def cmd_axioms(cfg: RunConfig) -> tuple[str, int, str]:
    bases = [get_rule(r) for r in cfg.rules] if cfg.rules else list(CLASSIC)
    matrix = preservation_matrix(bases, SampleSpec(cfg.seed, cfg.samples))
    code, msg = EXIT_OK, ""
    if cfg.expect_table1:
        diff = compare_table1(matrix)
        matrix["table1_match"] = diff is None
        if diff is not None:
            code = EXIT_MISMATCH
            msg = f"preservation table mismatch at {diff[0]}: expected {diff[1]!r}, got {diff[2]!r}"
    return json.dumps(matrix, indent=2, ensure_ascii=False) + "\n", code, msg


def cmd_characterize(cfg: RunConfig) -> tuple[str, int, str]:
    report = characterization_suite(get_rule(cfg.rule), SampleSpec(cfg.seed, cfg.samples))
    code, msg = EXIT_OK, ""
    if not report["pattern_ok"]:
        code = EXIT_MISMATCH
        bad = [f"{k}:{a}={v}" for k, row in report["matrix"].items() for a, v in row.items()]
        failing = [a for a, r in report["operator"].items() if r["verdict"] != HOLDS]
        msg = f"independence pattern mismatch; operator failures {failing}; matrix {bad}"
    return json.dumps(report, indent=2) + "\n", code, msg


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args)
        code, msg = EXIT_OK, ""
        if cfg.command == "allocate":
            text = cmd_allocate(cfg)
        elif cfg.command == "sweep":
            text = cmd_sweep(cfg)
        elif cfg.command == "axioms":
            text, code, msg = cmd_axioms(cfg)
        else:
            text, code, msg = cmd_characterize(cfg)
        _emit(text, cfg.out)
    except ClaimsError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_IO
    if msg:
        print(msg, file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
