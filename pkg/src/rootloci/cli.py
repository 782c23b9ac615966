"""Command-line interface.

Exit codes: 0 success, 1 domain/usage error, 2 resource-cap error,
3 check-suite failure.  Output is deterministic for fixed flags and seed.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import __version__
from .checks import DEFAULT_SEED, run_suite
from .diagram import render_dot, render_text, to_json_obj
from .errors import DomainError, ResourceLimitExceeded
from .expansion import ChartIndex, theta_polys
from .charts import chart_generators
from .groebner import eliminate
from .loci import (
    BinaryForm,
    FactoredForm,
    classify_point,
    default_cache_dir,
    fiber_points,
    ideal_of_X,
    is_member,
    is_smooth,
    singular_diagram,
)
from .partitions import Partition
from .polyring import Poly, Var, poly_from_obj, poly_to_obj


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _build_parser():
    parser = _Parser(prog="rootloci", description=__doc__)
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--format", choices=["text", "json", "dot"], default="text")
        p.add_argument("--seed", type=int, default=DEFAULT_SEED)
        p.add_argument("--cache-dir", default=None)
        p.add_argument("--max-pairs", type=int, default=None)
        p.add_argument("--max-ops", type=int, default=None)
        return p

    p = add("theta", "coefficient polynomials of the power-product expansion")
    p.add_argument("--partition", required=True)

    p = add("generators", "chart generators of the incidence scheme")
    p.add_argument("--partition", required=True)
    p.add_argument("--chart", default=None, help="comma-separated multi-index, default all zeros")

    p = add("ideal", "defining equations of the coincident root locus")
    p.add_argument("--partition", required=True)
    p.add_argument("--no-cache", action="store_true")

    p = add("member", "test membership of a form in a locus")
    p.add_argument("--partition", required=True)
    p.add_argument("--form", required=True, help="comma-separated coefficients a_0..a_d")
    p.add_argument("--use-ideal", action="store_true",
                   help="cross-check against the cached defining equations")

    p = add("fiber", "preimages of a factored form under the multiplication map")
    p.add_argument("--partition", required=True)
    p.add_argument("--factors", required=True, help='e.g. "1,0:2;0,1:2" for x^2*y^2')
    p.add_argument("--scalar", default="1")

    p = add("classify", "singularity type of a factored form on a locus")
    p.add_argument("--partition", required=True)
    p.add_argument("--factors", required=True)
    p.add_argument("--scalar", default="1")

    p = add("diagram", "stratification diagram for all partitions of d")
    p.add_argument("--d", type=int, required=True)

    p = add("smooth", "smoothness of the locus")
    p.add_argument("--partition", required=True)

    p = add("eliminate", "elimination ideal of polynomials from a JSON file")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--drop", required=True,
                   help='comma-separated variable patterns, e.g. "W:*" or "W:2:1,Z:3"')
    p.add_argument("--order", choices=["block-grevlex", "lex"], default="block-grevlex")

    p = add("check", "run property suites")
    p.add_argument("suite", choices=["partitions", "theta", "gamma", "groebner", "crl", "all"])
    p.add_argument("--dmax", type=int, default=None)
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--forms", type=int, default=None)
    p.add_argument("--instances", type=int, default=None)
    return parser


def _emit(text, out):
    out.write(text)
    if not text.endswith("\n"):
        out.write("\n")


def _polys_json(polys, extra):
    obj = {"schema": 1}
    obj.update(extra)
    obj["generators"] = [poly_to_obj(p) for p in polys]
    return json.dumps(obj, indent=2) + "\n"


def _match_vars(patterns, variables):
    chosen = set()
    for pattern in patterns.split(","):
        pattern = pattern.strip()
        if not pattern:
            continue
        hit = False
        for v in variables:
            tag = v.tag()
            if tag == pattern:
                chosen.add(v)
                hit = True
            elif pattern.endswith("*") and tag.startswith(pattern[:-1]):
                chosen.add(v)
                hit = True
        if not hit:
            raise DomainError("pattern %r matches no variable" % (pattern,))
    return chosen


def _run(args, out):
    cache_dir = getattr(args, "cache_dir", None) or default_cache_dir()

    if args.command == "theta":
        lam = Partition.from_string(args.partition)
        thetas = theta_polys(lam)
        if args.format == "json":
            obj = {
                "schema": 1,
                "partition": list(lam.parts),
                "thetas": [poly_to_obj(t) for t in thetas],
            }
            _emit(json.dumps(obj, indent=2), out)
        else:
            _emit("partition: %s" % (lam,), out)
            for j, t in enumerate(thetas):
                _emit("Theta_%d = %s" % (j, t), out)
        return 0

    if args.command == "generators":
        lam = Partition.from_string(args.partition)
        alpha = (
            ChartIndex.zero(lam)
            if args.chart is None
            else ChartIndex.from_string(args.chart)
        ).validate(lam)
        gens = chart_generators(lam, alpha)
        if args.format == "json":
            _emit(_polys_json(gens.gens, {
                "partition": list(lam.parts),
                "chart": list(alpha.entries),
            }), out)
        else:
            _emit("partition: %s  chart: %s" % (lam, alpha), out)
            for g in gens.gens:
                _emit(str(g), out)
        return 0

    if args.command == "ideal":
        lam = Partition.from_string(args.partition)
        gens = ideal_of_X(
            lam,
            cache_dir=cache_dir,
            use_cache=not args.no_cache,
            max_pairs=args.max_pairs,
            max_ops=args.max_ops,
        )
        if args.format == "json":
            _emit(_polys_json(gens, {"partition": list(lam.parts)}), out)
        else:
            _emit("partition: %s  generators: %d" % (lam, len(gens)), out)
            for g in gens:
                _emit(str(g), out)
        return 0

    if args.command == "member":
        lam = Partition.from_string(args.partition)
        form = BinaryForm.from_string(args.form)
        ideal = None
        if args.use_ideal:
            ideal = ideal_of_X(lam, cache_dir=cache_dir,
                               max_pairs=args.max_pairs, max_ops=args.max_ops)
        answer = is_member(form, lam, ideal=ideal)
        if args.format == "json":
            _emit(json.dumps({"schema": 1, "member": answer}), out)
        else:
            _emit("true" if answer else "false", out)
        return 0

    if args.command == "fiber":
        lam = Partition.from_string(args.partition)
        factored = FactoredForm.from_string(args.factors, scalar=args.scalar)
        points = fiber_points(factored, lam)
        if args.format == "json":
            obj = {
                "schema": 1,
                "partition": list(lam.parts),
                "points": [
                    [{"size": r, "coefficients": [str(c) for c in vec]}
                     for r, vec in pt.forms]
                    for pt in points
                ],
            }
            _emit(json.dumps(obj, indent=2), out)
        else:
            _emit("points: %d" % (len(points),), out)
            for pt in points:
                desc = "; ".join(
                    "G_%d = (%s)" % (r, ",".join(str(c) for c in vec))
                    for r, vec in pt.forms
                )
                _emit(desc, out)
        return 0

    if args.command == "classify":
        lam = Partition.from_string(args.partition)
        factored = FactoredForm.from_string(args.factors, scalar=args.scalar)
        label = classify_point(factored, lam)
        if args.format == "json":
            _emit(json.dumps({
                "schema": 1,
                "fiber_count": label.fiber_count,
                "tangent_degenerate": label.tangent_degenerate,
                "nonsingular": label.nonsingular,
                "label": label.text(),
            }), out)
        else:
            _emit(
                "fiber_count=%d tangent_degenerate=%s nonsingular=%s label=%r"
                % (label.fiber_count, label.tangent_degenerate,
                   label.nonsingular, label.text()),
                out,
            )
        return 0

    if args.command == "diagram":
        data = singular_diagram(args.d)
        if args.format == "json":
            _emit(json.dumps(to_json_obj(data), indent=2), out)
        elif args.format == "dot":
            _emit(render_dot(data), out)
        else:
            _emit(render_text(data), out)
        return 0

    if args.command == "smooth":
        lam = Partition.from_string(args.partition)
        answer = is_smooth(lam)
        if args.format == "json":
            _emit(json.dumps({"schema": 1, "smooth": answer}), out)
        else:
            _emit("true" if answer else "false", out)
        return 0

    if args.command == "eliminate":
        try:
            with open(args.infile, "r", encoding="ascii") as fh:
                data = json.load(fh)
        except OSError as exc:
            raise DomainError("cannot read %s: %s" % (args.infile, exc)) from None
        except ValueError as exc:
            raise DomainError("bad JSON in %s: %s" % (args.infile, exc)) from None
        if not isinstance(data, dict) or "generators" not in data:
            raise DomainError('input file needs a "generators" list')
        gens = [poly_from_obj(obj) for obj in data["generators"]]
        variables = set()
        for g in gens:
            variables.update(g.variables())
        drop = _match_vars(args.drop, sorted(variables))
        result = eliminate(
            gens, drop, style=args.order,
            max_pairs=args.max_pairs, max_ops=args.max_ops,
        )
        if args.format == "json":
            _emit(_polys_json(result, {"dropped": sorted(v.tag() for v in drop)}), out)
        else:
            _emit("generators: %d" % (len(result),), out)
            for g in result:
                _emit(str(g), out)
        return 0

    if args.command == "check":
        results = run_suite(
            args.suite,
            dmax=args.dmax,
            trials=args.trials,
            forms=args.forms,
            instances=args.instances,
            seed=args.seed,
            cache_dir=cache_dir,
            max_pairs=args.max_pairs,
            max_ops=args.max_ops,
        )
        failed = 0
        for r in results:
            status = "PASS" if r.passed else "FAIL"
            line = "%s  [%s] %s" % (status, r.suite, r.name)
            if r.detail and not r.passed:
                line += "  (%s)" % (r.detail,)
            _emit(line, out)
            failed += 0 if r.passed else 1
        _emit("%d/%d checks passed" % (len(results) - failed, len(results)), out)
        return 3 if failed else 0

    raise DomainError("unknown command %r" % (args.command,))


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        sys.stderr.write("usage error: %s\n" % (exc,))
        parser.print_usage(sys.stderr)
        return 1
    try:
        return _run(args, out)
    except DomainError as exc:
        sys.stderr.write("error: %s\n" % (exc,))
        return 1
    except ResourceLimitExceeded as exc:
        sys.stderr.write("resource limit: %s\n" % (exc,))
        return 2


def console_main():
    raise SystemExit(main())


if __name__ == "__main__":
    raise SystemExit(main())
