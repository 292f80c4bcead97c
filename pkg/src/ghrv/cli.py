"""Command-line front end.

Verb-style interface over the engine modules; human-readable report on
stdout, machine artifacts only through --out.  Exit codes: 0 success, 1
mathematical failure (validation findings, invalid inputs at the math level),
2 usage or parse errors.  Output is deterministic for fixed inputs and seed.
"""

from __future__ import annotations

import argparse
import sys

from .complexes import cone_mul, validate
from .errors import FieldError, GhrvError, ParseError
from .fields import RationalField, field_name, parse_field
from .parser import parse_poly
from .pipelines import (
    FIXTURE_NAMES,
    ModulePresentation,
    complete_resolution_of_k,
    describe_report,
    module_variety,
    named_fixture,
    realize,
    reproduce_examples,
)
from .ring import make_alpha, specialized_modulus
from .serialize import load_complex, load_ring, save_complex, save_trace
from .variety import (
    contractible_at,
    enumerate_points,
    extension_of,
    membership,
    rank_over_R,
    rank_variety,
    residue_ranks,
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ghrv",
        description="rank varieties of periodic complexes over generic hypersurface rings",
    )
    parser.add_argument(
        "--jobs",
        type=int,
        default=1,
        help="worker cap, accepted for compatibility; execution is sequential",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("check", help="validate a complex file and report findings")
    p.add_argument("complex")

    p = sub.add_parser("rank", help="ranks of the differentials over R")
    p.add_argument("complex")
    p.add_argument("--which", choices=("A", "B"))

    p = sub.add_parser("ideal", help="image in k[x] of the critical minor ideal")
    p.add_argument("complex")
    p.add_argument("--which", choices=("A", "B"), required=True)

    p = sub.add_parser("variety", help="rank variety as a union of zero sets")
    p.add_argument("complex", help="complex file, or ring file with --fixture")
    p.add_argument("--points", action="store_true")
    p.add_argument("--ext-bound", type=int, default=1, dest="ext_bound")
    p.add_argument("--fixture", choices=FIXTURE_NAMES)

    p = sub.add_parser("points", help="enumerate projective space over a finite field")
    p.add_argument("--field", required=True)
    p.add_argument("--c", type=int, required=True)

    p = sub.add_parser("specialize", help="specialize a complex at a point")
    p.add_argument("complex")
    p.add_argument("--alpha", required=True)
    p.add_argument("--preimages")

    p = sub.add_parser("contractible", help="contractibility verdict at a point")
    p.add_argument("complex")
    p.add_argument("--alpha", required=True)

    p = sub.add_parser("cone", help="mapping cone of multiplication by p")
    p.add_argument("complex")
    p.add_argument("--p", required=True)

    p = sub.add_parser("resolve-k", help="complete resolution of the residue field")
    p.add_argument("ring")
    p.add_argument("--out", required=True)

    p = sub.add_parser("realize", help="realize a closed set by iterated cones")
    p.add_argument("ring")
    p.add_argument("--p", action="append", default=[], dest="ps")
    p.add_argument("--points", action="store_true")
    p.add_argument("--out")

    p = sub.add_parser("module-variety", help="variety of the presented module")
    p.add_argument("complex")

    p = sub.add_parser("reproduce", help="re-run the documented worked examples")
    p.add_argument("--field", default="GF(5)")
    p.add_argument("--seed", type=int, default=0)

    return parser


def _parse_coords(text: str, field):
    coords = []
    for tok in text.split(","):
        tok = tok.strip()
        try:
            coords.append(field.from_int(int(tok)))
            continue
        except ValueError:
            pass
        if "/" in tok and isinstance(field, RationalField):
            from fractions import Fraction

            try:
                coords.append(Fraction(tok))
                continue
            except ValueError:
                pass
        raise ParseError(f"bad coordinate {tok!r}")
    return tuple(coords)


def _format_matrix(name: str, grid) -> str:
    lines = [f"{name} ="]
    for row in grid:
        lines.append("  [ " + ", ".join(str(e) for e in row) + " ]")
    return "\n".join(lines)


def _print_points(V, field, ext_bound: int):
    for j in range(1, ext_bound + 1):
        fld = extension_of(field, j)
        members = [pt for pt in enumerate_points(fld, len(V.ring.vars)) if membership(V, pt)]
        body = ", ".join(str(pt) for pt in members)
        print(f"points over {field_name(fld)}: {{{body}}}")


def _alpha_from_args(C, args):
    field = C.ring.field
    coords = _parse_coords(args.alpha, field)
    preimages = None
    if getattr(args, "preimages", None):
        preimages = tuple(tok.strip() for tok in args.preimages.split(","))
    return make_alpha(C.ring, coords, preimages=preimages)


def _cmd_check(args) -> int:
    C = load_complex(args.complex)
    report = validate(C)
    print(report.describe())
    return 0 if report.ok else 1


def _cmd_rank(args) -> int:
    C = load_complex(args.complex)
    r_a = rank_over_R(C.A.entries, C.ring)
    r_b = rank_over_R(C.B.entries, C.ring)
    if args.which in (None, "A"):
        print(f"rank(A) = {r_a}")
    if args.which in (None, "B"):
        print(f"rank(B) = {r_b}")
    if args.which is None:
        print(f"size = {C.size}")
    return 0


def _cmd_ideal(args) -> int:
    from .variety import minor_ideal_image

    C = load_complex(args.complex)
    grid = C.A.entries if args.which == "A" else C.B.entries
    r = rank_over_R(grid, C.ring)
    ideal = minor_ideal_image(grid, r, C.ring)
    print(f"image of I_{r}({args.which}) in k[x]: {ideal.describe()}")
    return 0


def _cmd_variety(args) -> int:
    if args.fixture:
        ring = load_ring(args.complex)
        C = named_fixture(args.fixture, ring)
    else:
        C = load_complex(args.complex)
    V = rank_variety(C)
    print("components: " + V.describe())
    if args.points:
        _print_points(V, C.ring.field, args.ext_bound)
    return 0


def _cmd_points(args) -> int:
    field = parse_field(args.field)
    pts = enumerate_points(field, args.c)
    print(f"P^{args.c - 1}({field_name(field)}): {len(pts)} points")
    for pt in pts:
        print(str(pt))
    return 0


def _cmd_specialize(args) -> int:
    from .ring import specialize as specialize_elem

    C = load_complex(args.complex)
    alpha = _alpha_from_args(C, args)
    ring = C.ring
    print(f"alpha = {alpha}")
    print(f"w_alpha = {specialized_modulus(alpha, ring)}")
    a_spec = [[specialize_elem(e, alpha, ring) for e in row] for row in C.A.entries]
    b_spec = [[specialize_elem(e, alpha, ring) for e in row] for row in C.B.entries]
    print(_format_matrix("A|alpha", a_spec))
    print(_format_matrix("B|alpha", b_spec))
    r_a, r_b = residue_ranks(C, alpha)
    print(f"residue ranks: rank(A) = {r_a}, rank(B) = {r_b}, size = {C.size}")
    return 0


def _cmd_contractible(args) -> int:
    C = load_complex(args.complex)
    alpha = _alpha_from_args(C, args)
    r_a, r_b = residue_ranks(C, alpha)
    verdict = r_a + r_b == C.size
    print(f"contractible at {alpha}: {verdict} (residue ranks {r_a} + {r_b} vs size {C.size})")
    return 0


def _cmd_cone(args) -> int:
    C = load_complex(args.complex)
    p = parse_poly(C.ring.ambient, args.p)
    cone = cone_mul(C, p)
    print(f"cone by {C.ring.normal_form(p)}: size {cone.size}, "
          f"certified {cone.certified}")
    print(f"degrees0 = {list(cone.degrees0)}")
    print(f"degrees1 = {list(cone.degrees1)}")
    print(_format_matrix("A", cone.A.entries))
    print(_format_matrix("B", cone.B.entries))
    return 0


def _cmd_resolve_k(args) -> int:
    ring = load_ring(args.ring)
    C = complete_resolution_of_k(ring)
    print(f"complete resolution of k: size {C.size}, certified {C.certified}")
    save_complex(C, args.out)
    print(f"wrote {args.out}")
    return 0


def _cmd_realize(args) -> int:
    ring = load_ring(args.ring)
    scalars = [parse_poly(ring.ambient, p) for p in args.ps]
    trace = realize(ring, scalars)
    print("trace sizes: " + " -> ".join(str(s) for s in trace.sizes))
    print("requested zero set: " + trace.requested.describe())
    if trace.verified_points:
        print(f"pointwise cone law verified at {trace.verified_points} base-field points")
    final = trace.stages[-1]
    if final.noncontractible is not None:
        if final.noncontractible:
            names = ", ".join(str(pt) for pt in final.noncontractible)
            print(f"noncontractible base-field points: {names}")
        else:
            print("contractible at every base-field point")
    if args.points:
        _print_points(trace.requested, ring.field, 1)
    if args.out:
        save_trace(trace, args.out)
        print(f"wrote {args.out}")
    return 0


def _cmd_module_variety(args) -> int:
    C = load_complex(args.complex)
    mp = ModulePresentation(C)
    V = module_variety(mp)
    print("module variety components: " + V.describe())
    return 0


def _cmd_reproduce(args) -> int:
    field = parse_field(args.field)
    report = reproduce_examples(field, seed=args.seed)
    print(describe_report(report))
    return 0 if report.all_passed else 1


_DISPATCH = {
    "check": _cmd_check,
    "rank": _cmd_rank,
    "ideal": _cmd_ideal,
    "variety": _cmd_variety,
    "points": _cmd_points,
    "specialize": _cmd_specialize,
    "contractible": _cmd_contractible,
    "cone": _cmd_cone,
    "resolve-k": _cmd_resolve_k,
    "realize": _cmd_realize,
    "module-variety": _cmd_module_variety,
    "reproduce": _cmd_reproduce,
}


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        return _DISPATCH[args.verb](args)
    except (ParseError, FieldError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except GhrvError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
