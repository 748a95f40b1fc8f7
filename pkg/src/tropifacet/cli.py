"""Command-line front end: ``tropifacet analyze|lift|verify|svg INSTANCE``.

Exit codes: 0 success, 1 usage or parse error, 2 precondition violated,
3 theorem check failed, 4 resource budget exceeded.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import instances
from .core import in_general_position
from .errors import (
    BudgetExceeded,
    DegeneracyError,
    DimensionError,
    InternalInconsistency,
    PreconditionError,
    TheoremViolation,
    ValidationError,
)
from .io import (
    InstanceFile,
    certificate_json,
    dumps,
    facet_json,
    halfspace_json,
    lift_json,
    load_instance,
    point_json,
    report_json,
)
from .lift import canonical_lift, custom_lift, enumerate_facets, tropicalize_facet
from .perturbation import (
    PerturbationScheme,
    ResampleRequired,
    perturb,
    project_halfspace,
    theorem_pipeline,
)
from .polytope import (
    canonical_representation,
    enumerate_pseudovertices,
    extreme_points,
    ij_pseudovertices,
    is_pure,
    require_pure,
)

EXIT_OK, EXIT_USAGE, EXIT_PRECONDITION, EXIT_THEOREM, EXIT_BUDGET = 0, 1, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, "%s: error: %s\n" % (self.prog, message))


def _budget(args) -> dict:
    return {} if args.budget is None else {"max_states": args.budget}


def _header(inst: InstanceFile, command: str) -> dict:
    out = {"schema": 1, "command": command}
    if inst.name:
        out["name"] = inst.name
    out["dimension"] = inst.dimension
    return out


def cmd_analyze(inst: InstanceFile, args) -> tuple[int, dict]:
    P = inst.polytope()
    report = extreme_points(P)
    pure = is_pure(P, report)
    pseudo = enumerate_pseudovertices(P, **_budget(args))
    certs = ij_pseudovertices(P, pseudo)
    out = _header(inst, "analyze")
    out["generators"] = [point_json(v) for v in P]
    out["general_position"] = in_general_position(list(P))
    out["pure"] = pure
    out["extreme_points"] = [{"generator": r + 1, "types": sorted(i + 1 for i in t)}
                             for r, t in enumerate(report.types) if t]
    out["pseudovertices"] = [point_json(a) for a in pseudo]
    out["ij_pseudovertices"] = [certificate_json(c) for c in certs]
    if pure:
        rep = canonical_representation(P, certs)
        out["canonical_representation"] = [halfspace_json(H) for H in rep]
    else:
        out["canonical_representation"] = None
    return EXIT_OK, out


def _perturbed_lift(P, seed: int, attempts: int = 20):
    for k in range(attempts):
        scheme = PerturbationScheme.for_polytope(P, seed + 7919 * k)
        try:
            return scheme, perturb(P, scheme)
        except ResampleRequired:
            continue
    raise BudgetExceeded("no general-position perturbation after %d schemes" % attempts,
                         schemes=attempts)


def cmd_lift(inst: InstanceFile, args) -> tuple[int, dict]:
    P = inst.polytope()
    out = _header(inst, "lift")
    out["lift"] = args.lift
    if args.lift == "canonical":
        L = canonical_lift(P)
    elif args.lift == "custom":
        if inst.lift is None:
            raise PreconditionError("custom lift requested but the instance has no 'lift' field")
        L = custom_lift(P, inst.lift_series())
    else:
        scheme, Pt = _perturbed_lift(P, _seed(inst, args))
        out["gammas"] = [list(g) for g in scheme.gammas]
        out["perturbed_generators"] = [point_json(v) for v in Pt]
        L = canonical_lift(Pt)
    facets = enumerate_facets(L)
    halfspaces = [tropicalize_facet(F, keep_lex=True) for F in facets]
    out["lift_generators"] = lift_json(L)
    out["facet_count"] = len(facets)
    if args.facets:
        out["facets"] = [facet_json(F, H) for F, H in zip(facets, halfspaces)]
    if args.lift == "perturbed":
        out["lex_halfspaces"] = [halfspace_json(H) for H in halfspaces]
    projected = sorted({project_halfspace(H) for H in halfspaces}, key=lambda H: H.sort_key())
    out["tropical_halfspaces"] = [halfspace_json(H) for H in projected]
    return EXIT_OK, out


def _seed(inst: InstanceFile, args) -> int:
    if args.seed is not None:
        return args.seed
    return inst.seed if inst.seed is not None else 0


def cmd_verify(inst: InstanceFile, args) -> tuple[int, dict]:
    P = inst.polytope()
    report = theorem_pipeline(P, _seed(inst, args), check_instantiation=args.instantiate,
                              **_budget(args))
    out = _header(inst, "verify")
    out.update(report_json(report, timing=args.timing))
    return (EXIT_OK if report.passed else EXIT_THEOREM), out


def cmd_svg(inst: InstanceFile, args) -> tuple[int, str]:
    from .cells import cell_complex, render_svg

    P = inst.polytope()
    if P.n != 3:
        raise PreconditionError("svg output supports n = 3 only, got n = %d" % P.n)
    halfspaces = ()
    if args.halfspaces:
        require_pure(P)
        halfspaces = canonical_representation(P, **_budget(args))
    return EXIT_OK, render_svg(P, halfspaces, cell_complex(P))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="tropifacet",
                     description="Tropical polytopes, their lifts and facet representations.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p):
        p.add_argument("instance", help="instance JSON file, or the name of a built-in "
                                        "instance (%s)" % ", ".join(instances.NAMES))
        p.add_argument("--out", type=Path, help="write output here instead of stdout")
        p.add_argument("--budget", type=int, metavar="N",
                       help="cap on pseudovertex search states")

    p = sub.add_parser("analyze", help="extreme points, pseudovertices, representation")
    common(p)
    p = sub.add_parser("lift", help="facets of a lift and their tropicalizations")
    common(p)
    p.add_argument("--lift", choices=("canonical", "perturbed", "custom"), default="canonical")
    p.add_argument("--seed", type=int)
    p.add_argument("--facets", action="store_true",
                   help="list each facet with its support and normal vector")
    p = sub.add_parser("verify", help="run the perturbation pipeline on a pure polytope")
    common(p)
    p.add_argument("--seed", type=int)
    p.add_argument("--timing", action="store_true", help="include stage timings")
    p.add_argument("--instantiate", action="store_true",
                   help="also compare facet normals against numeric instantiation")
    p = sub.add_parser("svg", help="draw the bounded cells of a planar polytope")
    common(p)
    p.add_argument("--halfspaces", action="store_true",
                   help="draw boundaries of the canonical representation")
    return parser


_COMMANDS = {"analyze": cmd_analyze, "lift": cmd_lift, "verify": cmd_verify, "svg": cmd_svg}


def _load(spec: str) -> InstanceFile:
    path = Path(spec)
    if not path.exists() and spec in instances.NAMES:
        return instances.builtin(spec)
    return load_instance(path)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        inst = _load(args.instance)
        code, result = _COMMANDS[args.command](inst, args)
    except (ValidationError, DimensionError) as exc:
        return _fail(EXIT_USAGE, exc)
    except (PreconditionError, DegeneracyError) as exc:
        return _fail(EXIT_PRECONDITION, exc)
    except (TheoremViolation, InternalInconsistency) as exc:
        return _fail(EXIT_THEOREM, exc)
    except BudgetExceeded as exc:
        return _fail(EXIT_BUDGET, exc)
    text = result if isinstance(result, str) else dumps(result)
    if args.out is not None:
        args.out.write_text(text)
    else:
        sys.stdout.write(text)
    return code


def _fail(code: int, exc: Exception) -> int:
    # library messages use 0-based indices
    sys.stderr.write("tropifacet: %s: %s\n" % (type(exc).__name__, exc))
    support = getattr(exc, "support", None)
    if support is not None:
        sys.stderr.write("tropifacet: offending generators (1-based): %s\n"
                         % [r + 1 for r in support])
    return code


if __name__ == "__main__":
    sys.exit(main())
