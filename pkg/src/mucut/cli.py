"""Command-line entry point: verification commands and experiment runners.

Exit codes: 0 success, 1 malformed input (bad argv, unreadable or invalid
JSON), 2 domain errors (reported as a machine-readable object), 3 selftest
failure. Reports are deterministic: identical argv and seed produce
byte-identical output.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys

import numpy as np

from .cones import (FULL_PLANE, Cone2, cut_cone, cut_plan,
                    equivalence_witness, lens_cone, normal_form, sphere_cone)
from .cutspace import Jet, extends_smoothly, odd_monomials, pullback_jet, \
    pushforward_symbol
from .errors import DomainError
from .operators import (CanonicalOperator, Parity, commutant_factorize,
                        shift_divisor, szego_commutator_entries,
                        szego_commutes, verify_pk_identity)
from .selftest import DEFAULT_SEED, run_selftest
from .spectral import SCHEMA, projected_spectrum, residue_contour, \
    residue_log_fit, weyl_compare
from .symbols import LaurentSymbol, SymbolVariant


class MalformedInput(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """Argparse that reports usage problems with exit code 1, not 2."""

    def error(self, message):
        self.exit(1, f"{self.prog}: error: {message}\n")


def _load_payload(text: str):
    """Inline JSON (starts with a brace or bracket), '-' for stdin, or a
    file path."""
    if text == "-":
        raw = sys.stdin.read()
    elif text.lstrip().startswith(("{", "[")):
        raw = text
    else:
        try:
            with open(text, "r", encoding="utf-8") as handle:
                raw = handle.read()
        except OSError as exc:
            raise MalformedInput(f"cannot read input file {text}: {exc}")
    try:
        return json.loads(raw)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"invalid JSON input: {exc}")


def _parse_operator(data) -> CanonicalOperator:
    try:
        return CanonicalOperator.from_json(data)
    except (ValueError, TypeError, KeyError) as exc:
        raise MalformedInput(f"invalid operator object: {exc}")


def _parse_symbol(data) -> LaurentSymbol:
    try:
        return LaurentSymbol.from_json(data)
    except (ValueError, TypeError, KeyError) as exc:
        raise MalformedInput(f"invalid symbol object: {exc}")


def _parse_jet(data) -> Jet:
    try:
        return Jet.from_json(data)
    except (ValueError, TypeError, KeyError) as exc:
        raise MalformedInput(f"invalid jet object: {exc}")


def _parse_cone(data) -> Cone2:
    """Cone payloads: {"generators": ...}, {"lens": [p, q]}, {"sphere": true}."""
    if isinstance(data, dict) and data.get("sphere"):
        return sphere_cone()
    if isinstance(data, dict) and "lens" in data:
        p, q = data["lens"]
        return lens_cone(int(p), int(q))
    try:
        return Cone2.from_json(data)
    except (ValueError, TypeError, KeyError) as exc:
        raise MalformedInput(f"invalid cone object: {exc}")


def _scalar_str(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _flatten(prefix, value, rows):
    if isinstance(value, dict):
        for key in sorted(value):
            path = f"{prefix}.{key}" if prefix else str(key)
            _flatten(path, value[key], rows)
    elif isinstance(value, (list, tuple)):
        for i, item in enumerate(value):
            _flatten(f"{prefix}[{i}]", item, rows)
    else:
        rows.append((prefix, _scalar_str(value)))


def _generic_csv(payload: dict) -> str:
    rows = []
    _flatten("", payload, rows)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(["key", "value"])
    writer.writerows(rows)
    return buffer.getvalue()


def _emit(args, payload: dict, csv_text: str | None = None) -> int:
    if args.format == "csv":
        text = csv_text if csv_text is not None else _generic_csv(payload)
    else:
        text = json.dumps(payload, sort_keys=True, indent=2) + "\n"
    _write_output(args, text)
    return 0


def _write_output(args, text: str) -> None:
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _resolve_seed(value):
    if value is not None:
        return value
    env = os.environ.get("MUCUT_SEED")
    if env:
        try:
            return int(env)
        except ValueError:
            raise MalformedInput(f"MUCUT_SEED is not an integer: {env!r}")
    return DEFAULT_SEED


def _cmd_commutant_check(args) -> int:
    op = _parse_operator(_load_payload(args.input))
    parity = Parity(args.parity)
    entries = szego_commutator_entries(op, parity, window=args.window)
    payload = {
        "schema": SCHEMA,
        "parity": parity.value,
        "commutes": szego_commutes(op, parity),
        "violations": [{"row": r, "col": c, "value": v.to_json()}
                       for r, c, v in entries],
    }
    return _emit(args, payload)


def _cmd_factorize(args) -> int:
    op = _parse_operator(_load_payload(args.input))
    parity = Parity(args.parity)
    factors = commutant_factorize(op, parity)
    payload = {
        "schema": SCHEMA,
        "parity": parity.value,
        "factors": [{"k": k,
                     "cofactor": factors[k].to_json(),
                     "divisor": shift_divisor(k, parity).to_json()}
                    for k in sorted(factors)],
    }
    return _emit(args, payload)


def _cmd_identity_pk(args) -> int:
    if args.max_k < 1:
        raise MalformedInput("--max-k must be at least 1")
    failures = [k for k in range(1, args.max_k + 1)
                if not verify_pk_identity(k)]
    payload = {
        "schema": SCHEMA,
        "max_k": args.max_k,
        "all_hold": not failures,
        "failures": failures,
    }
    return _emit(args, payload)


def _cmd_spectrum(args) -> int:
    op = _parse_operator(_load_payload(args.input))
    parity = Parity(args.parity)
    spectrum = projected_spectrum(op, args.window, parity)
    payload = {
        "schema": SCHEMA,
        "window": args.window,
        "parity": parity.value,
        "values": [float(v) for v in spectrum.values],
        "reliable": [bool(b) for b in spectrum.reliable],
    }
    return _emit(args, payload, csv_text=spectrum.to_csv())


def _cmd_weyl(args) -> int:
    op = _parse_operator(_load_payload(args.input))
    parity = Parity(args.parity)
    grid = None
    if args.grid_max is not None:
        if args.grid_max <= 0:
            raise MalformedInput("--grid-max must be positive")
        grid = np.linspace(args.grid_max / args.grid_points, args.grid_max,
                           args.grid_points)
    report = weyl_compare(op, args.window, grid=grid, parity=parity,
                          grid_points=args.grid_points)
    return _emit(args, report.to_json(), csv_text=report.to_csv())


def _load_diagonal(text: str):
    data = _load_payload(text) if text.lstrip().startswith("[") else None
    if data is None:
        try:
            with open(text, "r", encoding="utf-8") as handle:
                raw = handle.read()
        except OSError as exc:
            raise MalformedInput(f"cannot read diagonal file {text}: {exc}")
        raw = raw.strip()
        if raw.startswith("["):
            try:
                data = json.loads(raw)
            except json.JSONDecodeError as exc:
                raise MalformedInput(f"invalid diagonal JSON: {exc}")
        else:
            try:
                data = [float(line) for line in raw.splitlines() if line.strip()]
            except ValueError as exc:
                raise MalformedInput(f"invalid diagonal data: {exc}")
    if not isinstance(data, list) or not all(
            isinstance(x, (int, float)) for x in data):
        raise MalformedInput("diagonal must be a list of numbers")
    return [float(x) for x in data]


def _cmd_residue(args) -> int:
    sources = [s for s in (args.input, args.diagonal,
                           args.harmonic is not None) if s]
    if len(sources) != 1:
        raise MalformedInput(
            "give exactly one of: a symbol payload, --diagonal, --harmonic")
    if args.input:
        sigma = _parse_symbol(_load_payload(args.input))
        value = residue_contour(sigma)
        if isinstance(value, complex):
            reported = {"re": value.real, "im": value.imag}
        else:
            reported = value
        payload = {"schema": SCHEMA, "contour_residue": reported}
        return _emit(args, payload)
    if args.harmonic is not None:
        if args.harmonic < 8:
            raise MalformedInput("--harmonic needs at least 8 terms")
        diagonal = [1.0 / n for n in range(1, args.harmonic + 1)]
    else:
        diagonal = _load_diagonal(args.diagonal)
    report = residue_log_fit(diagonal, fit_range=(args.fit_lo, args.fit_hi))
    return _emit(args, report.to_json(), csv_text=report.to_csv())


def _cmd_jet_extend(args) -> int:
    jet = _parse_jet(_load_payload(args.input))
    payload = {
        "schema": SCHEMA,
        "extends": extends_smoothly(jet),
        "odd_monomials": [[k, l] for k, l in odd_monomials(jet)],
    }
    return _emit(args, payload)


def _cmd_pullback(args) -> int:
    jet = _parse_jet(_load_payload(args.input))
    sigma = pullback_jet(jet, SymbolVariant(args.variant))
    payload = {
        "schema": SCHEMA,
        "variant": args.variant,
        "symbol": sigma.to_json(),
    }
    return _emit(args, payload)


def _cmd_pushforward(args) -> int:
    sigma = _parse_symbol(_load_payload(args.input))
    jet = pushforward_symbol(sigma, SymbolVariant(args.variant))
    payload = {
        "schema": SCHEMA,
        "variant": args.variant,
        "jet": jet.to_json(),
    }
    return _emit(args, payload)


def _cmd_cone_lens(args) -> int:
    cone = lens_cone(args.p, args.q)
    payload = {
        "schema": SCHEMA,
        "cone": cone.to_json(),
        "normal_form": normal_form(cone).to_json(),
    }
    return _emit(args, payload)


def _cmd_cone_cut(args) -> int:
    cone = _parse_cone(_load_payload(args.input))
    result = cut_cone(cone, tuple(args.normal))
    payload = {
        "schema": SCHEMA,
        "normal": list(args.normal),
        "cone": result.to_json(),
    }
    return _emit(args, payload)


def _cmd_cone_equiv(args) -> int:
    data = _load_payload(args.input)
    if not isinstance(data, dict) or "first" not in data or "second" not in data:
        raise MalformedInput(
            'cone-equiv expects {"first": <cone>, "second": <cone>}')
    first = _parse_cone(data["first"])
    second = _parse_cone(data["second"])
    form_first = normal_form(first)
    form_second = normal_form(second)
    witness = equivalence_witness(first, second)
    payload = {
        "schema": SCHEMA,
        "equivalent": form_first == form_second,
        "normal_form": form_first.to_json(),
        "second_normal_form": form_second.to_json(),
        "witness": witness.to_json() if witness is not None else None,
    }
    return _emit(args, payload)


def _cmd_cone_plan(args) -> int:
    cone = _parse_cone(_load_payload(args.input))
    n_u, n_v = cut_plan(cone)
    rebuilt = cut_cone(cut_cone(FULL_PLANE, n_u), n_v)
    payload = {
        "schema": SCHEMA,
        "normals": [list(n_u), list(n_v)],
        "round_trip": rebuilt == cone,
    }
    return _emit(args, payload)


def _selftest_table(report: dict) -> str:
    lines = [f"selftest  seed={report['seed']}  schema={report['schema']}"]
    width = max(len(r["id"]) for r in report["rows"])
    for row in report["rows"]:
        status = "PASS" if row["passed"] else "FAIL"
        lines.append(f"{status}  {row['id']:<{width}}  {row['detail']}")
    failed = sum(1 for r in report["rows"] if not r["passed"])
    total = len(report["rows"])
    if failed:
        lines.append(f"{failed} of {total} rows failed")
    else:
        lines.append(f"all {total} rows passed")
    return "\n".join(lines) + "\n"


def _cmd_selftest(args) -> int:
    seed = _resolve_seed(args.seed)
    report = run_selftest(
        seed, include_uniform_range_diagnostic=args.uniform_negative_range)
    if args.format == "json":
        text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    elif args.format == "csv":
        text = _generic_csv(report)
    else:
        text = _selftest_table(report)
    _write_output(args, text)
    return 0 if report["passed"] else 3


def _add_io_options(parser, *, formats=("json", "csv")) -> None:
    parser.add_argument("--format", choices=formats, default=formats[0],
                        help="report format (default %(default)s)")
    parser.add_argument("--output", metavar="PATH",
                        help="write the report to a file instead of stdout")


def _add_parity_option(parser) -> None:
    parser.add_argument("--parity", choices=("full", "even"), default="full",
                        help="projector variant (default %(default)s)")


def build_parser() -> _Parser:
    parser = _Parser(prog="mucut",
                     description="Verification commands for the mode-cut "
                                 "operator calculus.")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("commutant-check",
                       help="test commutation with the projector")
    p.add_argument("input", help="operator JSON (inline, path, or -)")
    _add_parity_option(p)
    p.add_argument("--window", type=int, default=None,
                   help="truncate witness entries to this mode window")
    _add_io_options(p)
    p.set_defaults(handler=_cmd_commutant_check)

    p = sub.add_parser("factorize",
                       help="factor a commutant member through its divisors")
    p.add_argument("input", help="operator JSON (inline, path, or -)")
    _add_parity_option(p)
    _add_io_options(p)
    p.set_defaults(handler=_cmd_factorize)

    p = sub.add_parser("identity-pk",
                       help="check the raising-power product identity")
    p.add_argument("--max-k", type=int, default=10,
                   help="largest power to check (default %(default)s)")
    _add_io_options(p)
    p.set_defaults(handler=_cmd_identity_pk)

    p = sub.add_parser("spectrum",
                       help="eigenvalues of the projected compression")
    p.add_argument("input", help="operator JSON (inline, path, or -)")
    p.add_argument("--window", type=int, required=True,
                   help="mode window for the compression")
    _add_parity_option(p)
    _add_io_options(p)
    p.set_defaults(handler=_cmd_spectrum)

    p = sub.add_parser("weyl",
                       help="eigenvalue counting against sublevel measure")
    p.add_argument("input", help="operator JSON (inline, path, or -)")
    p.add_argument("--window", type=int, default=4096,
                   help="mode window (default %(default)s)")
    p.add_argument("--grid-max", type=float, default=None,
                   help="top of the threshold grid (default: symbol value "
                        "at half the window)")
    p.add_argument("--grid-points", type=int, default=64,
                   help="number of grid thresholds (default %(default)s)")
    _add_parity_option(p)
    _add_io_options(p)
    p.set_defaults(handler=_cmd_weyl)

    p = sub.add_parser("residue",
                       help="residue trace: contour value or log-divergence fit")
    p.add_argument("input", nargs="?", default=None,
                   help="degree -1 symbol JSON for the contour route")
    p.add_argument("--diagonal", metavar="PATH",
                   help="diagonal values for the log fit (JSON array or "
                        "one number per line)")
    p.add_argument("--harmonic", type=int, default=None, metavar="N",
                   help="fit the harmonic diagonal 1/n with N terms")
    p.add_argument("--fit-lo", type=int, default=1000,
                   help="lower end of the fit range (default %(default)s)")
    p.add_argument("--fit-hi", type=int, default=100000,
                   help="upper end of the fit range (default %(default)s)")
    _add_io_options(p)
    p.set_defaults(handler=_cmd_residue)

    p = sub.add_parser("jet-extend",
                       help="decide smooth extension to the cut cones")
    p.add_argument("input", help="jet JSON (inline, path, or -)")
    _add_io_options(p)
    p.set_defaults(handler=_cmd_jet_extend)

    p = sub.add_parser("pullback", help="jet to cut-cone symbol")
    p.add_argument("input", help="jet JSON (inline, path, or -)")
    p.add_argument("--variant", choices=[v.value for v in SymbolVariant],
                   default=SymbolVariant.M_PLUS_EVEN.value,
                   help="cut cone variant (default %(default)s)")
    _add_io_options(p)
    p.set_defaults(handler=_cmd_pullback)

    p = sub.add_parser("pushforward", help="cut-cone symbol to jet")
    p.add_argument("input", help="symbol JSON (inline, path, or -)")
    p.add_argument("--variant", choices=[v.value for v in SymbolVariant],
                   default=SymbolVariant.M_PLUS_EVEN.value,
                   help="cut cone variant (default %(default)s)")
    _add_io_options(p)
    p.set_defaults(handler=_cmd_pushforward)

    p = sub.add_parser("cone-lens", help="standard lens cone and its invariant")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    _add_io_options(p)
    p.set_defaults(handler=_cmd_cone_lens)

    p = sub.add_parser("cone-cut", help="intersect a cone with a half-plane")
    p.add_argument("input", help="cone JSON (inline, path, or -)")
    p.add_argument("--normal", type=int, nargs=2, required=True,
                   metavar=("A", "B"), help="inward normal of the cut")
    _add_io_options(p)
    p.set_defaults(handler=_cmd_cone_cut)

    p = sub.add_parser("cone-equiv",
                       help="decide unimodular equivalence of two cones")
    p.add_argument("input",
                   help='JSON {"first": <cone>, "second": <cone>}')
    _add_io_options(p)
    p.set_defaults(handler=_cmd_cone_equiv)

    p = sub.add_parser("cone-plan",
                       help="facet normals whose cuts rebuild the cone")
    p.add_argument("input", help="cone JSON (inline, path, or -)")
    _add_io_options(p)
    p.set_defaults(handler=_cmd_cone_plan)

    p = sub.add_parser("selftest", help="run the full invariant suite")
    p.add_argument("--seed", type=int, default=None,
                   help="override the fixed seed (or set MUCUT_SEED)")
    p.add_argument("--uniform-negative-range", action="store_true",
                   help="include the diagnostic row running the mirrored "
                        "negative-shift ranges (expected to fail)")
    _add_io_options(p, formats=("table", "json", "csv"))
    p.set_defaults(handler=_cmd_selftest)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse help/usage paths; keep main() an ordinary function
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except MalformedInput as exc:
        sys.stderr.write(f"mucut: {exc}\n")
        return 1
    except DomainError as exc:
        payload = {"schema": SCHEMA, **exc.payload()}
        sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
