"""Command-line front end.

Subcommands: derivation-coefficient tables (``ajcoeffs``), coordinate-change
expansions (``delta-apply``), graded dimensions (``char``), truncated twisted
modules (``twist-build``), and the verification suite (``verify``).  Every
output is a pure function of the run configuration: exact fractions, stable
row order, no timestamps — rerunning a command reproduces its output byte
for byte.  A ``--decimal`` flag renders floating approximations, each marked
with a leading ``~``.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from .scalars import QQ, ONE, rational_ceil, scalar_str
from .formal import Window
from .fermion import OMEGA, PSI, VACUUM, State
from .ramond import format_ramond_word
from .deltak import FORWARD, INVERSE, DeltaOp, apply_delta, solve_aj
from .twist import TwistedModuleView, require_even_order
from .verify import SuiteConfig, run_suite, suite_json, suite_table

FORMATS = ("json", "csv", "table")


@dataclass(frozen=True)
class RunConfig:
    """Everything a subcommand run depends on.

    ``fmt`` is the output format (each subcommand has its own default),
    ``out`` an optional output path (stdout otherwise), and the rational
    knobs (``radius``, ``domain_level``, ``weight``) bound the verification
    windows.  Invariants: k >= 1 and cutoff >= 0; commands that build the
    twisted module additionally require an even k.
    """

    command: str
    k: int = 2
    cutoff: int = 4
    depth: int = 4
    fmt: str = ""
    out: str | None = None
    expect_obstruction: bool = False
    decimal: bool = False
    state: str = "psi"
    inverse: bool = False
    jacobi: bool = True
    radius: QQ = QQ(3, 2)
    domain_level: QQ = QQ(2)
    weight: QQ = QQ(2)
    lo: QQ | None = None
    hi: QQ | None = None

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"k must be a positive integer, got {self.k}")
        if self.cutoff < 0:
            raise ValueError(f"cutoff must be >= 0, got {self.cutoff}")
        if self.depth < 1:
            raise ValueError(f"depth must be >= 1, got {self.depth}")
        if self.fmt and self.fmt not in FORMATS:
            raise ValueError(
                f"format must be one of {', '.join(FORMATS)}, got {self.fmt!r}"
            )


# ---------------------------------------------------------------------------
# configuration plumbing
# ---------------------------------------------------------------------------


def _parse_rational(raw: str) -> QQ:
    raw = raw.strip()
    if "/" in raw:
        num, _, den = raw.partition("/")
        return QQ(int(num), int(den))
    return QQ(int(raw))


def _parse_bool(raw) -> bool:
    if isinstance(raw, bool):
        return raw
    value = str(raw).strip().lower()
    if value in ("1", "true", "yes", "on"):
        return True
    if value in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {raw!r}")


_COERCERS = {
    "k": int,
    "cutoff": int,
    "depth": int,
    "format": str,
    "out": str,
    "state": str,
    "expect_obstruction": _parse_bool,
    "decimal": _parse_bool,
    "inverse": _parse_bool,
    "jacobi": _parse_bool,
    "radius": _parse_rational,
    "domain_level": _parse_rational,
    "weight": _parse_rational,
    "lo": _parse_rational,
    "hi": _parse_rational,
}


def parse_config_file(text: str) -> dict:
    """Parse the simple key=value format: one pair per line, blank lines and
    ``#`` comments skipped, values kept as strings."""
    mapping = {}
    for ln, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ValueError(f"config line {ln} is not key=value: {line!r}")
        key, _, raw = stripped.partition("=")
        mapping[key.strip()] = raw.strip()
    return mapping


def _apply_overrides(namespace: argparse.Namespace, mapping: dict) -> None:
    """Config-file entries override flag values (and flag defaults)."""
    for key, raw in mapping.items():
        attr = "fmt" if key == "format" else key
        if not hasattr(namespace, attr):
            raise ValueError(
                f"config key {key!r} does not apply to this subcommand"
            )
        setattr(namespace, attr, _COERCERS[key](raw))


def _config_from_namespace(args: argparse.Namespace) -> RunConfig:
    fields = (
        "k",
        "cutoff",
        "depth",
        "fmt",
        "out",
        "expect_obstruction",
        "decimal",
        "state",
        "inverse",
        "jacobi",
        "radius",
        "domain_level",
        "weight",
        "lo",
        "hi",
    )
    kwargs = {"command": args.command}
    for field in fields:
        if hasattr(args, field):
            kwargs[field] = getattr(args, field)
    return RunConfig(**kwargs)


# ---------------------------------------------------------------------------
# value and table rendering
# ---------------------------------------------------------------------------


def _value(x, decimal: bool) -> str:
    """Exact fraction by default; ``~``-marked float with --decimal."""
    if decimal:
        return f"~{float(QQ(x))!r}"
    return scalar_str(x)


def _render_table(header, rows) -> str:
    widths = [len(h) for h in header]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    def line(cells):
        return "  ".join(cell.ljust(widths[i]) for i, cell in enumerate(cells)).rstrip()
    out = [line(header), line(tuple("-" * w for w in widths))]
    out.extend(line(row) for row in rows)
    return "\n".join(out) + "\n"


def _render_rows(fmt: str, header, rows, json_payload) -> str:
    if fmt == "json":
        return json.dumps(json_payload, indent=2, sort_keys=True) + "\n"
    if fmt == "csv":
        lines = [",".join(header)]
        lines.extend(",".join(row) for row in rows)
        return "\n".join(lines) + "\n"
    return _render_table(header, rows)


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# state descriptions
# ---------------------------------------------------------------------------

_NAMED_STATES = {
    "vacuum": VACUUM,
    "1": VACUUM,
    "psi": PSI,
    "omega": OMEGA,
}


def parse_state(text: str) -> State:
    """A named generator (vacuum/1/psi/omega) or a comma-separated strictly
    increasing list of negative half-odd mode indices, e.g. ``-3/2,-1/2``."""
    name = text.strip().lower()
    if name in _NAMED_STATES:
        return _NAMED_STATES[name]
    indices = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            raise ValueError(f"empty mode index in state {text!r}")
        try:
            index = _parse_rational(part)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"bad mode index {part!r} in state") from exc
        if index >= 0 or (2 * index).denominator != 1 or index.denominator != 2:
            raise ValueError(
                f"mode index {part} must be a negative half-odd integer "
                "(the untwisted generator lattice)"
            )
        indices.append(index)
    word = tuple(indices)
    if tuple(sorted(set(word))) != word:
        raise ValueError(
            f"mode indices must be strictly increasing, got {text!r}"
        )
    return State({word: ONE})


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_ajcoeffs(cfg: RunConfig) -> int:
    table = solve_aj(cfg.k, cfg.depth)
    rows = [
        (str(j), _value(value, cfg.decimal)) for j, value in table.rows()
    ]
    payload = {
        "k": cfg.k,
        "depth": cfg.depth,
        "rows": [{"j": int(j), "a": a} for j, a in rows],
    }
    fmt = cfg.fmt or "csv"
    _emit(_render_rows(fmt, ("j", "a_j"), rows, payload), cfg.out)
    return 0


def cmd_delta_apply(cfg: RunConfig) -> int:
    state = parse_state(cfg.state)
    weight = state.homogeneous_level()
    direction = INVERSE if cfg.inverse else FORWARD
    depth = max(cfg.depth, int(rational_ceil(weight)) * cfg.k + 2)
    window = None
    if cfg.lo is not None or cfg.hi is not None:
        window = Window({"x": (cfg.lo, cfg.hi)})
    expansion = apply_delta(DeltaOp(cfg.k, depth, direction), state, window)
    rows = []
    json_pieces = []
    for exponent, piece in expansion.pieces:
        if direction == FORWARD:
            j = (weight / cfg.k - weight - exponent) * cfg.k
        else:
            j = weight - weight / cfg.k - exponent
        rendered = piece.render()
        rows.append((scalar_str(QQ(j)), _value(exponent, cfg.decimal), rendered))
        json_pieces.append(
            {
                "j": scalar_str(QQ(j)),
                "exponent": _value(exponent, cfg.decimal),
                "state": rendered,
            }
        )
    payload = {
        "k": cfg.k,
        "direction": direction,
        "input": state.render(),
        "weight": scalar_str(QQ(weight)),
        "prefactor": scalar_str(expansion.prefactor),
        "pieces": json_pieces,
    }
    fmt = cfg.fmt or "json"
    _emit(_render_rows(fmt, ("j", "exponent", "state"), rows, payload), cfg.out)
    return 0


def cmd_char(cfg: RunConfig) -> int:
    require_even_order(cfg.k)
    view = TwistedModuleView(cfg.k, cfg.cutoff)
    series = view.graded_dimension()
    rows = []
    for n, coeff in enumerate(series.coeffs):
        exponent = series.offset + n * series.step
        rows.append((_value(exponent, cfg.decimal), str(int(coeff))))
    payload = {
        "k": cfg.k,
        "cutoff": cfg.cutoff,
        "offset": _value(series.offset, cfg.decimal),
        "step": _value(series.step, cfg.decimal),
        "terms": [{"exponent": e, "dim": int(d)} for e, d in rows],
    }
    fmt = cfg.fmt or "csv"
    _emit(_render_rows(fmt, ("exponent", "dimension"), rows, payload), cfg.out)
    return 0


def cmd_twist_build(cfg: RunConfig) -> int:
    require_even_order(cfg.k)
    view = TwistedModuleView(cfg.k, cfg.cutoff)
    rows = []
    for word in view.basis():
        rows.append(
            (
                format_ramond_word(word),
                _value(view.sigma_weight(word), cfg.decimal),
                _value(view.t_grade(word), cfg.decimal),
                _value(view.expected_twisted_weight(word), cfg.decimal),
            )
        )
    payload = {
        "k": cfg.k,
        "cutoff": cfg.cutoff,
        "weight_constant": _value(view.weight_constant(), cfg.decimal),
        "basis": [
            {
                "word": w,
                "sigma_weight": sw,
                "grade": g,
                "twisted_weight": tw,
            }
            for w, sw, g, tw in rows
        ],
    }
    fmt = cfg.fmt or "csv"
    header = ("word", "sigma_weight", "grade", "twisted_weight")
    _emit(_render_rows(fmt, header, rows, payload), cfg.out)
    return 0


def cmd_verify(cfg: RunConfig) -> int:
    suite_cfg = SuiteConfig(
        k=cfg.k,
        cutoff=cfg.cutoff,
        radius=cfg.radius,
        domain_level=cfg.domain_level,
        weight=cfg.weight,
        depth=cfg.depth,
        jacobi=cfg.jacobi,
    )
    reports = run_suite(suite_cfg)
    fmt = cfg.fmt or "table"
    if fmt == "json":
        text = suite_json(reports)
    elif fmt == "csv":
        header = (
            "check",
            "k",
            "window",
            "compared",
            "mismatches",
            "verdict",
            "expected",
            "as_expected",
        )
        rows = [
            (
                r.name,
                str(int(r.k)),
                r.window,
                str(int(r.compared)),
                str(len(r.mismatches)),
                r.verdict,
                r.expected_verdict,
                str(r.as_expected).lower(),
            )
            for r in reports
        ]
        lines = [",".join(header)]
        lines.extend(",".join(f'"{c}"' if "," in c else c for c in row) for row in rows)
        text = "\n".join(lines) + "\n"
    else:
        text = suite_table(reports)
    _emit(text, cfg.out)
    if cfg.expect_obstruction:
        ok = all(r.as_expected for r in reports)
    else:
        ok = all(r.verdict == "pass" and r.as_expected for r in reports)
    return 0 if ok else 1


_COMMANDS = {
    "ajcoeffs": cmd_ajcoeffs,
    "delta-apply": cmd_delta_apply,
    "char": cmd_char,
    "twist-build": cmd_twist_build,
    "verify": cmd_verify,
}


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------


def _add_common(parser: argparse.ArgumentParser, *, default_format: str) -> None:
    parser.add_argument("--k", type=int, default=2, help="tensor order (>= 1)")
    parser.add_argument(
        "--format",
        dest="fmt",
        choices=FORMATS,
        default="",
        help=f"output format (default: {default_format})",
    )
    parser.add_argument("--out", default=None, help="output path (default: stdout)")
    parser.add_argument(
        "--config",
        default=None,
        help="key=value file whose entries override the flags",
    )
    parser.add_argument(
        "--decimal",
        action="store_true",
        help="render ~-marked floating approximations instead of fractions",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="twistfock",
        description=(
            "Exact computations in the cyclic-twist correspondence for the "
            "free-fermion tensor power: derivation coefficients, "
            "coordinate-change expansions, twisted modules, characters, and "
            "the verification suite."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "ajcoeffs", help="derivation coefficient table a_1..a_depth"
    )
    _add_common(p, default_format="csv")
    p.add_argument(
        "--depth", type=int, default=4, help="number of coefficients"
    )

    p = sub.add_parser(
        "delta-apply", help="apply the coordinate-change operator to a state"
    )
    _add_common(p, default_format="json")
    p.add_argument(
        "--state",
        default="psi",
        help="vacuum|1|psi|omega or mode indices like -3/2,-1/2",
    )
    p.add_argument(
        "--inverse", action="store_true", help="apply the inverse direction"
    )
    p.add_argument(
        "--depth", type=int, default=4, help="minimum operator table depth"
    )
    p.add_argument("--lo", type=_parse_rational, default=None,
                   help="keep exponents >= lo")
    p.add_argument("--hi", type=_parse_rational, default=None,
                   help="keep exponents <= hi")

    p = sub.add_parser(
        "char", help="graded dimension of the truncated twisted module"
    )
    _add_common(p, default_format="csv")
    p.add_argument(
        "--cutoff", type=int, default=7, help="number of graded pieces - 1"
    )

    p = sub.add_parser(
        "twist-build", help="basis and weights of the truncated twisted module"
    )
    _add_common(p, default_format="csv")
    p.add_argument(
        "--cutoff", type=int, default=4, help="largest included integer level"
    )

    p = sub.add_parser("verify", help="run the verification suite")
    _add_common(p, default_format="table")
    p.add_argument(
        "--cutoff", type=int, default=4, help="character graded pieces"
    )
    p.add_argument(
        "--depth", type=int, default=4, help="conjugation expansion depth"
    )
    p.add_argument(
        "--radius",
        type=_parse_rational,
        default=QQ(3, 2),
        help="exponent window radius (rational, e.g. 3/2)",
    )
    p.add_argument(
        "--domain-level",
        dest="domain_level",
        type=_parse_rational,
        default=QQ(2),
        help="largest twisted-module level acted on (rational)",
    )
    p.add_argument(
        "--weight",
        type=_parse_rational,
        default=QQ(2),
        help="largest untwisted weight fed to coordinate-change checks",
    )
    p.add_argument(
        "--jacobi",
        type=_parse_bool,
        default=True,
        metavar="BOOL",
        help="include the three-variable kernel identity (default: true)",
    )
    p.add_argument(
        "--expect-obstruction",
        dest="expect_obstruction",
        action="store_true",
        help=(
            "succeed when every check matches its expected verdict, "
            "counting the odd-order obstruction's expected failure as success"
        ),
    )
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.config:
            with open(args.config, "r", encoding="utf-8") as handle:
                _apply_overrides(args, parse_config_file(handle.read()))
        cfg = _config_from_namespace(args)
        return _COMMANDS[cfg.command](cfg)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
