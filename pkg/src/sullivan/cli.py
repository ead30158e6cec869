"""Command-line front end.

Subcommands cover the whole toolkit: validating and measuring models
written in the surface syntax, enumerating elliptic rank vectors,
solving fiber-rank and Wang systems, and running the full submersion
obstruction analysis.  Structured output goes to stdout, diagnostics to
stderr.

Exit codes: 0 on success, 1 when a requested check finds a mathematical
failure (invalid model, undecided enumeration, fully obstructed
analysis, fixture drift), 2 on usage or parse errors.

Environment: SULLIVAN_COEFFS overrides the default differential
coefficient set (e.g. "-1,0,1"); SULLIVAN_MAX_DEGREE supplies a default
for --max-degree where it is optional.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from .algebra import validate_model
from .cohomology import betti_table
from .dsl import ParseError, parse_document
from .ellipticity import (
    RankVector,
    enumerate_candidates,
    formal_dimension,
    rank_vector_of_model,
    realizable,
)
from .exactseq import fiber_rank_vectors, wang_fiber_betti
from .pipeline import (
    SpaceCatalogEntry,
    analyze,
    audit_table,
    find_entry,
    reproduce,
)

ENV_COEFFS = "SULLIVAN_COEFFS"
ENV_MAX_DEGREE = "SULLIVAN_MAX_DEGREE"


class CommandError(Exception):
    """Bad input discovered after argument parsing; maps to exit 2."""


def _coeffs_from(text: str) -> tuple[Fraction, ...]:
    try:
        parts = tuple(Fraction(p.strip()) for p in text.split(",") if p.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise CommandError(f"bad coefficient set {text!r}: {exc}")
    if not parts:
        raise CommandError(f"bad coefficient set {text!r}: empty")
    return parts


def _default_coeffs(args, fallback: tuple) -> tuple:
    if getattr(args, "coeffs", None):
        return _coeffs_from(args.coeffs)
    env = os.environ.get(ENV_COEFFS)
    if env:
        return _coeffs_from(env)
    return fallback


def _default_max_degree(args) -> int:
    if args.max_degree is not None:
        return args.max_degree
    env = os.environ.get(ENV_MAX_DEGREE)
    if env:
        try:
            return int(env)
        except ValueError:
            raise CommandError(f"bad {ENV_MAX_DEGREE}={env!r}")
    raise CommandError("--max-degree is required (or set " + ENV_MAX_DEGREE + ")")


def _read_model(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise CommandError(f"cannot read {path}: {exc.strerror or exc}")
    return parse_document(text)


def _rank_vector_spec(spec: str) -> RankVector:
    """A catalog name or an inline vector like 2:1,3:1,5:1."""
    try:
        return find_entry(spec).rank_vector
    except KeyError:
        pass
    try:
        return RankVector.parse(spec)
    except ValueError as exc:
        raise CommandError(f"bad space spec {spec!r}: {exc}")


def _total_entry(spec: str) -> SpaceCatalogEntry:
    """A catalog name, or a model file for ad-hoc total spaces."""
    if os.path.exists(spec):
        doc = _read_model(spec)
        report = validate_model(doc.model, require_minimal=True)
        if not report.ok:
            raise CommandError(f"{spec}: {report.summary()}")
        rv = rank_vector_of_model(doc.model)
        dim = formal_dimension(rv)
        if dim <= 0:
            raise CommandError(f"{spec}: formal dimension {dim} is not positive")
        return SpaceCatalogEntry(
            name=doc.name,
            rank_vector=rv,
            dim=dim,
            model=doc.model,
            betti=betti_table(doc.model, dim),
            table_row=False,
        )
    try:
        return find_entry(spec)
    except KeyError as exc:
        raise CommandError(str(exc.args[0]))


# -- subcommand handlers -----------------------------------------------------

def _cmd_model_check(args) -> int:
    doc = _read_model(args.file)
    report = validate_model(doc.model, require_minimal=args.require_minimal)
    for note in doc.notes:
        print(f"note: {note}", file=sys.stderr)
    problems = [] if report.ok else report.summary().splitlines()
    if args.require_simply_connected and not doc.model.is_simply_connected:
        low = [g.name for g in doc.model.generators if g.degree < 2]
        problems.append(f"not simply connected: degree-1 generators {', '.join(low)}")
    if problems:
        print(f"{doc.name}: FAIL")
        for p in problems:
            print(f"  {p}")
        return 1
    gens = len(doc.model.generators)
    print(f"{doc.name}: ok ({gens} generators)")
    if args.max_degree is not None:
        table = betti_table(doc.model, args.max_degree)
        print("betti: " + " ".join(str(b) for b in table.values))
    return 0


def _cmd_model_cohomology(args) -> int:
    doc = _read_model(args.file)
    report = validate_model(doc.model, require_minimal=False)
    if not report.ok:
        print(f"error: {doc.name}: {report.summary()}", file=sys.stderr)
        return 1
    top = _default_max_degree(args)
    table = betti_table(doc.model, top)
    if args.format == "tree":
        print(json.dumps({"name": doc.name, "max_degree": top, "betti": list(table.values)}, indent=2))
    else:
        print(" ".join(str(b) for b in table.values))
    return 0


def _cmd_elliptic_enumerate(args) -> int:
    candidates = enumerate_candidates(args.dim)
    if args.no_prune:
        for f in candidates:
            print(f)
        return 0
    coeffs = _default_coeffs(args, (-1, 0, 1))
    undecided = []
    for f in candidates:
        verdict = realizable(f, coeff_set=coeffs, audit_bound=args.audit_bound)
        if verdict.status == "realized":
            print(f)
        elif verdict.status == "inconclusive":
            undecided.append(f)
    if undecided:
        for f in undecided:
            print(f"undecided: {f}", file=sys.stderr)
        return 1
    return 0


def _cmd_fibration_fiber_ranks(args) -> int:
    total = _rank_vector_spec(args.total)
    base = _rank_vector_spec(args.base)
    try:
        fibers = fiber_rank_vectors(total, base)
    except ValueError as exc:
        raise CommandError(str(exc))
    for f in fibers:
        print(f)
    return 0


def _cmd_fibration_wang(args) -> int:
    total = _total_entry(args.total)
    known = {}
    if args.known:
        for piece in args.known.split(","):
            piece = piece.strip()
            if not piece:
                continue
            k, sep, v = piece.partition("=")
            if not sep:
                raise CommandError(f"bad --known entry {piece!r} (use k=v)")
            try:
                known[int(k)] = int(v)
            except ValueError:
                raise CommandError(f"bad --known entry {piece!r}")
    try:
        solutions = wang_fiber_betti(
            args.sphere, total.betti, args.fiber_dim, known_fiber=known or None
        )
    except ValueError as exc:
        raise CommandError(str(exc))
    for s in solutions:
        print(" ".join(str(b) for b in s.values))
    print(f"{len(solutions)} profile(s)", file=sys.stderr)
    return 0


def _cmd_check_submersion(args) -> int:
    if args.live_table:
        drift = audit_table()
        if drift:
            for line in drift:
                print(f"fixture drift: {line}", file=sys.stderr)
            return 1
    total = _total_entry(args.total)
    if not 2 <= args.max_base_dim < total.dim:
        raise CommandError(
            f"--max-base-dim must lie in [2, {total.dim - 1}] for {total.name}"
        )
    coeffs = _default_coeffs(args, (0, 1))
    report = analyze(total, args.max_base_dim, coeff_set=coeffs)
    print(json.dumps(report.to_dict(), indent=2))
    n = len(report.survivors)
    print(f"{n} surviving base(s)", file=sys.stderr)
    return 0 if n else 1


def _cmd_reproduce(args) -> int:
    print(json.dumps(reproduce(args.target), indent=2))
    return 0


# -- argument surface --------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sullivan",
        description="Exact rational-homotopy computations: models, cohomology, and submersion obstructions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    model = sub.add_parser("model", help="work with model files")
    model_sub = model.add_subparsers(dest="subcommand", required=True)
    mc = model_sub.add_parser("check", help="validate a model file")
    mc.add_argument("file")
    mc.add_argument("--max-degree", type=int, default=None)
    mc.add_argument("--require-minimal", action="store_true")
    mc.add_argument("--require-simply-connected", action="store_true")
    mc.set_defaults(handler=_cmd_model_check)
    mh = model_sub.add_parser("cohomology", help="Betti numbers of a model file")
    mh.add_argument("file")
    mh.add_argument("--max-degree", type=int, default=None)
    mh.add_argument("--format", choices=("text", "tree"), default="text")
    mh.set_defaults(handler=_cmd_model_cohomology)

    elliptic = sub.add_parser("elliptic", help="rank-vector enumeration")
    elliptic_sub = elliptic.add_subparsers(dest="subcommand", required=True)
    ee = elliptic_sub.add_parser("enumerate", help="elliptic rank vectors for one dimension")
    ee.add_argument("--dim", type=int, required=True)
    ee.add_argument("--no-prune", action="store_true",
                    help="list every numerically feasible vector, skip the realizability search")
    ee.add_argument("--coeffs", default=None)
    ee.add_argument("--audit-bound", type=int, default=None)
    ee.set_defaults(handler=_cmd_elliptic_enumerate)

    fibration = sub.add_parser("fibration", help="exact-sequence rank solving")
    fibration_sub = fibration.add_subparsers(dest="subcommand", required=True)
    fr = fibration_sub.add_parser("fiber-ranks", help="fiber rank vectors over a base")
    fr.add_argument("--total", required=True)
    fr.add_argument("--base", required=True)
    fr.set_defaults(handler=_cmd_fibration_fiber_ranks)
    fw = fibration_sub.add_parser("wang", help="fiber Betti profiles over an odd sphere")
    fw.add_argument("--sphere", type=int, required=True)
    fw.add_argument("--total", required=True)
    fw.add_argument("--fiber-dim", type=int, required=True)
    fw.add_argument("--known", default=None)
    fw.set_defaults(handler=_cmd_fibration_wang)

    check = sub.add_parser("check", help="obstruction analyses")
    check_sub = check.add_subparsers(dest="subcommand", required=True)
    cs = check_sub.add_parser("submersion", help="sweep base candidates for a total space")
    cs.add_argument("--total", required=True)
    cs.add_argument("--max-base-dim", type=int, required=True)
    cs.add_argument("--coeffs", default=None)
    cs.add_argument("--live-table", action="store_true",
                    help="audit the pinned rank-vector table against the enumerator first")
    cs.set_defaults(handler=_cmd_check_submersion)

    rp = sub.add_parser("reproduce", help="pinned headline reports")
    rp.add_argument(
        "target",
        choices=("table1", "prop31", "prop32", "prop41", "prop42", "theorem-a", "theorem-b"),
    )
    rp.set_defaults(handler=_cmd_reproduce)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse prints usage itself; normalize its failure code to 2
        return 0 if exc.code in (0, None) else 2
    try:
        return args.handler(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except CommandError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
