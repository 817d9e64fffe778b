"""Command-line interface.

Subcommands: analyze, catalog, verify, example, jordan.  Exit codes:

    0  success
    1  malformed input / usage error
    2  analysis undetermined (a valuation exceeded its truncation order)
    3  braid loop failed (too coarse or crossing a degeneracy)
    4  numerical rank ambiguity in Jordan detection
    5  a catalog family disagreed with its stored expectation

Output is deterministic byte-for-byte for fixed input, seed, and version.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .charpoly import charpoly_direct
from .jordan import (DEFAULT_SEED, WeyrAmbiguityError, catalog_families,
                     validate_partition, weyr_structure)
from .models import build_example, example_names
from .numeric import (DEFAULT_GRID, LoopDegeneracyError, SampleGrid, braid_loop,
                      fit_exponents)
from .plots import polygon_svg, tropical_csv, tropical_svg
from .serialize import (ParseError, braid_to_json, charpoly_from_json,
                        charpoly_to_json, dumps, family_to_json,
                        jordan_structure_to_json, polygon_to_json,
                        polymatrix_from_json, polymatrix_to_json,
                        report_to_json, tropical_to_json, verification_to_json)
from .tropical import newton_polygon, tropical_roots, tropicalize

OK, USAGE, UNDETERMINED, LOOP_FAILED, RANK_AMBIGUOUS, MISMATCH = 0, 1, 2, 3, 4, 5


def _emit(text: str, output):
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


def _load_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise ParseError(path, "file not found")
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}:{exc.lineno}:{exc.colno}", exc.msg)


def _provenance(seed=None, **tolerances):
    out = {"tool": "tropeig", "version": __version__}
    if seed is not None:
        out["seed"] = seed
    if tolerances:
        out["tolerances"] = tolerances
    return out


def _parse_param(item: str):
    if "=" not in item:
        raise ParseError("--param", f"expected key=value, got {item!r}")
    key, raw = item.split("=", 1)
    for conv in (int, Fraction, float):
        try:
            return key, conv(raw)
        except (ValueError, ZeroDivisionError):
            continue
    return key, raw


# ---------------------------------------------------------------------------

def cmd_analyze(args) -> int:
    if bool(args.matrix) == bool(args.charpoly):
        print("analyze: exactly one of --matrix / --charpoly is required",
              file=sys.stderr)
        return USAGE
    if args.matrix:
        cp = charpoly_direct(polymatrix_from_json(_load_json(args.matrix)))
    else:
        cp = charpoly_from_json(_load_json(args.charpoly))
    poly = tropicalize(cp)
    polygon = newton_polygon(cp)
    report = tropical_roots(polygon)
    body = {"splitting": report_to_json(report),
            "tropical": tropical_to_json(poly),
            "polygon": polygon_to_json(polygon),
            "provenance": _provenance()}
    _emit(dumps(body), args.output)
    if args.emit_tropical_plot:
        Path(args.emit_tropical_plot).write_text(tropical_csv(poly))
    if args.emit_svg:
        Path(args.emit_svg).write_text(tropical_svg(poly))
    if args.emit_polygon_svg:
        Path(args.emit_polygon_svg).write_text(polygon_svg(polygon))
    return UNDETERMINED if report.undetermined else OK


def cmd_catalog(args) -> int:
    families = []
    for n in ([args.n] if args.n else (2, 3, 4)):
        families.extend(catalog_families(n, seed=args.seed))
    rows = []
    mismatch = False
    for fam in families:
        computed = tropical_roots(fam.charpoly)
        agree = computed == fam.expected
        mismatch |= not agree
        rows.append((fam, computed, agree))
    if args.format == "json":
        body = [dict(family_to_json(f), computed=report_to_json(c), agrees=a)
                for f, c, a in rows]
        _emit(dumps({"catalog": body, "provenance": _provenance(seed=args.seed)}),
              args.output)
    else:
        lines = [f"{'partition':<12}{'constraint':<18}{'roots (omega x mult)':<34}"
                 f"{'zero':<6}{'check':<6}"]
        for fam, computed, agree in rows:
            label = ("* " if fam.generic else "  ") + ",".join(map(str, fam.partition))
            roots = " ".join(f"[{r.omega},{r.multiplicity}]" for r in computed.roots) or "-"
            lines.append(f"{label:<12}{fam.constraint_name:<18}{roots:<34}"
                         f"{computed.zero_root_count:<6}{'ok' if agree else 'MISMATCH':<6}")
        lines.append("(* marks the generic direction of each structure)")
        _emit("\n".join(lines) + "\n", args.output)
    return MISMATCH if mismatch else OK


def _resolve_family(args):
    if args.example:
        params = dict(_parse_param(p) for p in args.param or [])
        return build_example(args.example, **params)
    if args.jordan:
        partition = validate_partition(int(x) for x in args.jordan.split(","))
        for fam in catalog_families(sum(partition), seed=args.seed):
            if fam.partition == partition and fam.constraint_name == args.constraint:
                return fam
        raise ParseError("--constraint",
                         f"no family '{args.constraint}' for partition {partition}")
    if args.file:
        obj = _load_json(args.file)
        from .serialize import report_from_json

        class FileFamily:
            pass

        fam = FileFamily()
        if "matrix" in obj:
            fam.realization = polymatrix_from_json(obj["matrix"], "$.matrix")
        elif "charpoly" in obj:
            fam.realization = charpoly_from_json(obj["charpoly"], "$.charpoly")
        else:
            raise ParseError("$", "family file needs 'matrix' or 'charpoly'")
        fam.expected = (report_from_json(obj["expected"], "$.expected")
                        if "expected" in obj else None)
        fam.name = obj.get("name", args.file)
        return fam
    raise ParseError("verify", "one of --example / --jordan / --file is required")


def cmd_verify(args) -> int:
    family = _resolve_family(args)
    if getattr(family, "expected", None) is None:
        # file families may omit the expectation; derive it from the input
        realization = family.realization
        cp = realization if hasattr(realization, "coeffs") else charpoly_direct(realization)
        family.expected = tropical_roots(cp)
    grid = SampleGrid(t0=args.t0, ratio=args.ratio, count=args.count, phase=args.phase)
    result = fit_exponents(family, grid, match_tol=args.tol)
    body = {"family": getattr(family, "name", "<file>"),
            "expected": report_to_json(family.expected),
            "verification": verification_to_json(result),
            "provenance": _provenance(seed=args.seed, match_tol=args.tol,
                                      t0=args.t0, ratio=args.ratio)}
    status = OK if result.passed else USAGE
    if args.braid:
        try:
            braid = braid_loop(family, eps0=args.eps0, steps=args.steps)
            body["braid"] = braid_to_json(braid)
            predicted = family.expected.predicted_cycle_lengths()
            if predicted is not None:
                body["braid"]["predicted_cycle_lengths"] = list(predicted)
                if tuple(predicted) != braid.cycle_lengths:
                    status = max(status, USAGE)
        except LoopDegeneracyError as exc:
            body["braid"] = {"error": str(exc)}
            _emit(dumps(body), args.output)
            return LOOP_FAILED
    _emit(dumps(body), args.output)
    return status


def cmd_example(args) -> int:
    params = dict(_parse_param(p) for p in args.param or [])
    family = build_example(args.name, **params)
    realization = family.realization
    if hasattr(realization, "coeffs"):
        real_json = {"charpoly": charpoly_to_json(realization)}
    else:
        real_json = {"matrix": polymatrix_to_json(realization)}
    body = {"name": family.name,
            "parameters": {k: str(v) for k, v in family.parameters.items()},
            **real_json,
            "expected": report_to_json(family.expected) if family.expected else None,
            "annotations": list(family.annotations),
            "provenance": _provenance()}
    _emit(dumps(body), args.output)
    return OK


def _parse_numeric_matrix(obj, path="$"):
    entries = obj.get("entries", obj) if isinstance(obj, dict) else obj
    if not isinstance(entries, list) or not entries:
        raise ParseError(path, "expected a non-empty numeric matrix")
    rows = []
    for i, row in enumerate(entries):
        if not isinstance(row, list) or len(row) != len(entries):
            raise ParseError(f"{path}[{i}]", "matrix must be square")
        out = []
        for j, x in enumerate(row):
            if isinstance(x, (int, float)):
                out.append(complex(x))
            elif isinstance(x, list) and len(x) == 2:
                out.append(complex(x[0], x[1]))
            else:
                raise ParseError(f"{path}[{i}][{j}]",
                                 "entries are numbers or [re, im] pairs")
        rows.append(out)
    return rows


def _parse_complex(s: str) -> complex:
    if "," in s:
        re, im = s.split(",", 1)
        return complex(float(re), float(im))
    return complex(s)


def cmd_jordan(args) -> int:
    matrix = _parse_numeric_matrix(_load_json(args.matrix))
    lam = _parse_complex(args.eigenvalue)
    try:
        structure = weyr_structure(matrix, lam, tol=args.tol)
    except WeyrAmbiguityError as exc:
        _emit(dumps({"error": str(exc), "singular_value_gaps": list(exc.gaps)}),
              args.output)
        return RANK_AMBIGUOUS
    _emit(dumps({**jordan_structure_to_json(structure),
                 "provenance": _provenance(tol=args.tol)}), args.output)
    return OK


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tropeig",
        description="Exact Newton-polygon / tropical classification of "
                    "eigenvalue splitting at non-Hermitian degeneracies")
    parser.add_argument("--version", action="version", version=f"tropeig {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="splitting report for a matrix or charpoly")
    p.add_argument("--matrix", help="PolyMatrix JSON file")
    p.add_argument("--charpoly", help="CharPoly JSON file")
    p.add_argument("--output", "-o")
    p.add_argument("--emit-tropical-plot", metavar="CSV")
    p.add_argument("--emit-svg", metavar="SVG")
    p.add_argument("--emit-polygon-svg", metavar="SVG")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("catalog", help="perturbation families of Jordan structures")
    p.add_argument("n", nargs="?", type=int, choices=(2, 3, 4))
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("verify", help="numerically verify predicted exponents")
    p.add_argument("--example", choices=example_names())
    p.add_argument("--jordan", metavar="PARTITION", help="e.g. '4' or '2,1'")
    p.add_argument("--constraint", default="generic")
    p.add_argument("--file", help="family JSON with matrix/charpoly and expected")
    p.add_argument("--param", action="append", metavar="K=V")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--t0", type=float, default=DEFAULT_GRID.t0)
    p.add_argument("--ratio", type=float, default=DEFAULT_GRID.ratio)
    p.add_argument("--count", type=int, default=DEFAULT_GRID.count)
    p.add_argument("--phase", type=float, default=0.0)
    p.add_argument("--tol", type=float, default=0.05, help="exponent match tolerance")
    p.add_argument("--braid", action="store_true")
    p.add_argument("--eps0", type=float, default=1e-6, help="braid loop radius")
    p.add_argument("--steps", type=int, default=96, help="braid loop resolution")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("example", help="dump a built-in model family as JSON")
    p.add_argument("name", choices=example_names())
    p.add_argument("--param", action="append", metavar="K=V")
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_example)

    p = sub.add_parser("jordan", help="numerical Jordan structure via rank decay")
    p.add_argument("--matrix", required=True, help="numeric matrix JSON")
    p.add_argument("--eigenvalue", required=True, metavar="RE[,IM]")
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--output", "-o")
    p.set_defaults(func=cmd_jordan)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except (ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
