"""Command line for the summation workbench.

One executable, a handful of verbs:

    check                  run a suite of checks, one report row per check
    phi                    best recovered topology of an induced summation
    psi                    closure of a set system under unique sums
    quotient               push a summation onto a factor group
    enumerate-topologies   list the topologies on a few points
    build                  write a model file from flags
    verify-witness         replay the failing rows of a saved report
    report-schema          the stable shape of a report row

Exit status is 0 when everything asked for passed within bounds, 1 when
some check failed or a replayed witness stopped reproducing, and 2 when
the request itself is broken: unknown model, malformed bounds string, a
table file that assigns two sums to one family.
"""

import argparse
import json
import sys

from . import axioms, endo, models, quotient, theorems, topo, uncond
from .carrier import cyclic
from .families import family_to_json
from .modelfile import (MODEL_KINDS, InvalidSpec, build_model, parse_carrier,
                        parse_model, render_model, resolve_model,
                        _parse_set_list)
from .reports import FAIL, PASS, Bounds, HypothesisNotMet
from .systems import NotAFunction, SummationSystem
from .topo import FiniteTopology, mask_of, set_of

SUITES = ("axioms", "theorems", "phi", "psi", "uncond", "endo",
          "quotient", "independence-table", "all")

# the suites that exercise one chosen model; the others carry their own
# zoo of systems and ignore --model
MODEL_SUITES = ("axioms", "theorems", "all")

DEFAULT_MODEL = "builtin:finitary-z4"

# psi and the filter route live among the uncond checks
PSI_CHECKS = tuple(cid for cid in uncond.UNCOND_CHECK_IDS
                   if cid.startswith(("psi", "filter")))


def _bounds_from(args):
    try:
        bounds = Bounds.from_string(args.bounds) if getattr(args, "bounds", None) \
            else Bounds()
    except (ValueError, KeyError) as e:
        raise InvalidSpec("bad bounds: %s" % e)
    if getattr(args, "seed", None) is not None:
        bounds = bounds.replace(seed=args.seed)
    return bounds


def _load_system(ref):
    """Resolve a model reference and insist on a carrier summation."""
    spec, built = resolve_model(ref)
    if not isinstance(built, SummationSystem):
        raise InvalidSpec("model %r builds a %s; this command needs a "
                          "summation system on a finite carrier"
                          % (ref, type(built).__name__))
    return built


def _describe(built):
    if isinstance(built, SummationSystem):
        return "%s on %d elements" % (built.name, built.carrier.size)
    return getattr(built, "name", "") or type(built).__name__


# ---------------------------------------------------------------------
# check
# ---------------------------------------------------------------------

def _run_model_suite(suite, system, bounds):
    reports, skipped = [], []
    if suite in ("axioms", "all"):
        more, skip = axioms.run_suite(system, None, bounds)
        reports.extend(more)
        skipped.extend(skip)
    if suite in ("theorems", "all"):
        more, skip = theorems.run_theorems(system, None, bounds)
        reports.extend(more)
        skipped.extend(skip)
    return reports, skipped


def _run_suite(suite, system, bounds, scope):
    reports, skipped = [], []

    def extend(pair):
        reports.extend(pair[0])
        skipped.extend(pair[1])

    if suite in MODEL_SUITES:
        extend(_run_model_suite(suite, system, bounds))
    if suite in ("phi", "all"):
        extend(topo.run_topo_suite(None, bounds))
    if suite == "psi":
        extend(uncond.run_uncond_suite(PSI_CHECKS, bounds))
    if suite in ("uncond", "all"):
        extend(uncond.run_uncond_suite(None, bounds))
    if suite in ("endo", "all"):
        extend(endo.run_endo_suite(None, bounds, **scope))
    if suite in ("quotient", "all"):
        extend(quotient.run_quotient_suite(None, bounds, **scope))
    if suite in ("independence-table", "all"):
        reports.extend(models.independence_table(bounds))
    return reports, skipped


def _report_doc(command, reports, skipped, bounds, model=None, suite=None):
    rows = sorted((r.to_dict() for r in reports), key=lambda d: d["check-id"])
    doc = {"command": command}
    if model is not None:
        doc["model"] = model
    if suite is not None:
        doc["suite"] = suite
    doc["bounds"] = bounds.to_dict()
    doc["reports"] = rows
    doc["skipped"] = [{"check-id": cid, "reason": why} for cid, why in skipped]
    doc["passed"] = all(d["verdict"] == PASS for d in rows)
    return doc


def _print_doc(doc, fmt, out=None):
    out = out or sys.stdout
    if fmt == "json":
        json.dump(doc, out, indent=2, default=str)
        out.write("\n")
        return
    rows = doc.get("reports", [])
    width = max([len(d["check-id"]) for d in rows] + [10])
    for d in rows:
        out.write("%-*s  %-18s %6dms\n"
                  % (width, d["check-id"], d["verdict"], d["millis"]))
        if d["verdict"] != PASS and d.get("witness") is not None:
            out.write("    witness: %s\n"
                      % json.dumps(d["witness"], sort_keys=True, default=str))
    for row in doc.get("skipped", []):
        out.write("%-*s  skipped: %s\n" % (width, row["check-id"], row["reason"]))
    good = sum(1 for d in rows if d["verdict"] == PASS)
    out.write("%d of %d passed within bounds" % (good, len(rows)))
    if doc.get("skipped"):
        out.write(", %d skipped" % len(doc["skipped"]))
    out.write("\n")


def cmd_check(args):
    bounds = _bounds_from(args)
    scope = {}
    if args.window is not None:
        scope["window"] = args.window
    system = None
    ref = args.model
    if args.suite in MODEL_SUITES:
        ref = ref or DEFAULT_MODEL
        system = _load_system(ref)
    elif ref is not None:
        print("note: suite %r picks its own models, --model is ignored"
              % args.suite, file=sys.stderr)
        ref = None
    reports, skipped = _run_suite(args.suite, system, bounds, scope)
    doc = _report_doc("check", reports, skipped, bounds,
                      model=ref, suite=args.suite)
    _print_doc(doc, args.format)
    return 0 if doc["passed"] else 1


# ---------------------------------------------------------------------
# phi and psi
# ---------------------------------------------------------------------

def _load_space(ref, group):
    kind, sep, count = ref.partition(":")
    if sep and kind in ("trivial", "indiscrete", "discrete"):
        try:
            n = int(count)
        except ValueError:
            raise InvalidSpec("space %r wants a point count after the colon"
                              % ref)
        if not 1 <= n <= 6:
            raise InvalidSpec("named spaces cover 1..6 points")
        top = (FiniteTopology.discrete(n) if kind == "discrete"
               else FiniteTopology.indiscrete(n))
        car = parse_carrier(group) if group else cyclic(n)
    else:
        spec, _ = resolve_model(ref)
        if spec.kind != "induced":
            raise InvalidSpec("a space file must say model: induced, "
                              "this one says %r" % spec.kind)
        car = parse_carrier(group or spec.params["group"])
        try:
            top = FiniteTopology(car.size,
                                 [mask_of(s) for s in spec.params["opens"]])
        except ValueError as e:
            raise InvalidSpec(str(e))
    if car.size != top.n:
        raise InvalidSpec("the group has %d elements but the space has "
                          "%d points" % (car.size, top.n))
    return top, car


def _render_opens(top):
    return [sorted(set_of(m)) for m in sorted(top.opens)]


def _sets_text(sets):
    return ", ".join("{%s}" % ",".join(str(p) for p in s) for s in sets)


def _classify(top):
    if top.opens == FiniteTopology.discrete(top.n).opens:
        return "discrete"
    if top.opens == FiniteTopology.indiscrete(top.n).opens:
        return "indiscrete"
    return "neither discrete nor indiscrete"


def cmd_phi(args):
    bounds = _bounds_from(args)
    top, car = _load_space(args.space, args.group)
    recovered = topo.phi(top, car, bounds)
    doc = {
        "command": "phi",
        "space": args.space,
        "group": args.group or "z%d" % car.size,
        "bounds": bounds.to_dict(),
        "input-opens": _render_opens(top),
        "phi-opens": _render_opens(recovered),
        "classification": _classify(recovered),
    }
    if args.format == "json":
        json.dump(doc, sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        print("phi(%s) over %s = %s"
              % (args.space, doc["group"], doc["classification"]))
        print("opens in:  %s" % _sets_text(doc["input-opens"]))
        print("opens out: %s" % _sets_text(doc["phi-opens"]))
    return 0


def cmd_psi(args):
    bounds = _bounds_from(args)
    if args.model:
        spec, _ = resolve_model(args.model)
        if spec.kind != "uncond":
            raise InvalidSpec("psi wants an uncond model, got kind %r"
                              % spec.kind)
        car = parse_carrier(spec.params["group"])
        sets = spec.params["A"]
        label = args.model
    elif args.group and args.sets:
        car = parse_carrier(args.group)
        sets = _parse_set_list(args.sets, "--sets")
        label = args.group
    else:
        raise InvalidSpec("psi wants --model, or --group together with --sets")
    for s in sets:
        for p in s:
            if not 0 <= p < car.size:
                raise InvalidSpec("set element %d is outside the group" % p)
    before = uncond.SetSystem(car, [mask_of(s) for s in sets])
    after = uncond.psi(before)
    filt = uncond.sigma_filter(uncond.uncond_system(before), bounds)
    agrees = after.key() == filt.key()
    doc = {
        "command": "psi",
        "over": label,
        "bounds": bounds.to_dict(),
        "sets-in": before.sets_as_lists(),
        "sets-out": after.sets_as_lists(),
        "is-filter": after.is_filter,
        "filter-route-agrees": agrees,
    }
    if args.format == "json":
        json.dump(doc, sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        print("psi over %s" % label)
        print("sets in:  %s" % _sets_text(doc["sets-in"]))
        print("sets out: %s" % _sets_text(doc["sets-out"]))
        print("filter: %s, filter route agrees: %s"
              % (doc["is-filter"], agrees))
    return 0 if agrees else 1


# ---------------------------------------------------------------------
# quotient
# ---------------------------------------------------------------------

def cmd_quotient(args):
    bounds = _bounds_from(args)
    system = _load_system(args.model)
    try:
        sub = tuple(sorted({int(tok) for tok in args.subgroup.split(",")
                            if tok.strip()}))
    except ValueError:
        raise InvalidSpec("subgroup wants comma separated elements, "
                          "for example 0,2")
    if not sub:
        raise InvalidSpec("subgroup wants at least the zero element")
    try:
        quo = quotient.quotient_system(system, sub, bounds)
    except NotAFunction as e:
        doc = {
            "command": "quotient",
            "model": args.model,
            "subgroup": list(sub),
            "bounds": bounds.to_dict(),
            "quotient-is-function": False,
            "conflict": {
                "family-a": family_to_json(e.family_a),
                "family-b": family_to_json(e.family_b),
                "sum-a": e.sum_a,
                "sum-b": e.sum_b,
            },
        }
        if args.format == "json":
            json.dump(doc, sys.stdout, indent=2, default=str)
            sys.stdout.write("\n")
        else:
            print("no quotient: %s" % e)
        return 1
    base_size = quo.base.carrier.size
    doc = {
        "command": "quotient",
        "model": args.model,
        "subgroup": list(sub),
        "bounds": bounds.to_dict(),
        "quotient-is-function": True,
        "name": quo.name,
        "cosets": quo.carrier.size,
        "reps": list(quo.reps),
        "coset-of": [quo.coset_of[x] for x in range(base_size)],
        "stored-pairs": len(quo.pairs()),
        "empty-sum": quo.empty_sum(),
    }
    if args.format == "json":
        json.dump(doc, sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        print("%s: %d cosets, reps %s, %d stored pairs"
              % (quo.name, doc["cosets"], doc["reps"], doc["stored-pairs"]))
    return 0


# ---------------------------------------------------------------------
# enumerate-topologies and build
# ---------------------------------------------------------------------

def cmd_enumerate_topologies(args):
    n = args.points
    if not 1 <= n <= 4:
        raise InvalidSpec("the listing covers 1..4 points; past four the "
                          "lattice stops being a desk object")
    tops = list(topo.enumerate_topologies(n))
    listing = sorted(_render_opens(t) for t in tops)
    doc = {
        "command": "enumerate-topologies",
        "points": n,
        "count": len(tops),
        "topologies": listing,
    }
    if args.format == "json":
        json.dump(doc, sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        print("%d topologies on %d points" % (len(tops), n))
        for sets in listing:
            print("  %s" % _sets_text(sets))
    return 0


# (model file key, argparse attribute) for the build verb
_BUILD_KEYS = (
    ("group", "group"), ("value", "value"), ("alphabet", "alphabet"),
    ("cap", "cap"), ("A", "sets"), ("opens", "opens"),
    ("family", "family"), ("field", "field"), ("width", "width"),
    ("head", "head"), ("cyc", "cyc"),
)


def cmd_build(args):
    if args.kind == "table":
        raise InvalidSpec("table models want a file with pair: lines, "
                          "not flags")
    lines = ["model: %s" % args.kind]
    for key, attr in _BUILD_KEYS:
        value = getattr(args, attr)
        if value is not None:
            lines.append("%s: %s" % (key, value))
    for tail in args.tail or ():
        lines.append("tail: %s" % tail)
    spec = parse_model("\n".join(lines), "command line")
    built = build_model(spec)
    text = render_model(spec)
    if args.format == "json":
        doc = {"command": "build", "kind": spec.kind,
               "text": text, "builds": _describe(built)}
        json.dump(doc, sys.stdout, indent=2)
        sys.stdout.write("\n")
    elif args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
        print("wrote %s (%s)" % (args.out, _describe(built)))
    else:
        sys.stdout.write(text)
        print("builds: %s" % _describe(built), file=sys.stderr)
    if args.out and args.format == "json":
        with open(args.out, "w") as fh:
            fh.write(text)
    return 0


# ---------------------------------------------------------------------
# verify-witness
# ---------------------------------------------------------------------

def _row_bounds(raw, fallback):
    """Report rows carry their bounds plus check notes; keep the caps."""
    if not isinstance(raw, dict):
        return fallback
    known = fallback.to_dict()
    kw = {k: raw[k] for k in known if k in raw}
    return Bounds(**kw) if kw else fallback


def _replay_row(row, model_ref, fallback, scope):
    cid = row.get("check-id", "")
    witness = row.get("witness")
    bounds = _row_bounds(row.get("bounds"), fallback)
    if cid in axioms.ALL_CHECK_IDS or cid in theorems.THEOREM_CHECKS:
        if model_ref is None:
            raise InvalidSpec("replaying %r needs --model or a model "
                              "field in the report" % cid)
        system = _load_system(model_ref)
        if witness is not None:
            return axioms.verify_witness(system, witness)
        if cid in axioms.ALL_CHECK_IDS:
            rep = axioms.check_axiom(system, cid, bounds)
        else:
            rep = theorems.check_theorem(system, cid, bounds)
        return rep.verdict == FAIL
    try:
        if cid in topo.TOPO_CHECK_IDS:
            rep = topo.check_topo_theorem(cid, bounds)
        elif cid in uncond.UNCOND_CHECK_IDS:
            rep = uncond.check_uncond_prop(cid, bounds)
        elif cid in endo.ENDO_CHECK_IDS:
            rep = endo.check_endo_prop(cid, bounds, **scope)
        elif cid in quotient.QUOTIENT_CHECK_IDS:
            rep = quotient.check_quotient_theorem(cid, bounds, **scope)
        elif cid.startswith("independence["):
            hits = [r for r in models.independence_table(bounds)
                    if r.check_id == cid]
            if not hits:
                raise InvalidSpec("no independence row named %r" % cid)
            rep = hits[0]
        else:
            raise InvalidSpec("unknown check id %r" % cid)
    except HypothesisNotMet as e:
        raise InvalidSpec("cannot replay %r: %s" % (cid, e))
    return rep.verdict == FAIL


def cmd_verify_witness(args):
    try:
        with open(args.report) as fh:
            doc = json.load(fh)
    except OSError as e:
        raise InvalidSpec("cannot read report: %s" % e)
    except ValueError as e:
        raise InvalidSpec("report is not json: %s" % e)
    rows = doc.get("reports") if isinstance(doc, dict) else doc
    if not isinstance(rows, list):
        raise InvalidSpec("the report has no list of rows")
    failing = [r for r in rows
               if isinstance(r, dict) and r.get("verdict") == FAIL]
    model_ref = args.model
    if model_ref is None and isinstance(doc, dict):
        model_ref = doc.get("model")
    fallback = Bounds()
    if isinstance(doc, dict):
        fallback = _row_bounds(doc.get("bounds"), fallback)
    scope = {"window": args.window} if args.window is not None else {}
    results = [(row.get("check-id", ""),
                _replay_row(row, model_ref, fallback, scope))
               for row in failing]
    ok = all(refail for _, refail in results)
    if args.format == "json":
        json.dump({"command": "verify-witness",
                   "replayed": len(results),
                   "rows": [{"check-id": cid, "re-fails": refail}
                            for cid, refail in results],
                   "all-re-fail": ok},
                  sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        if not results:
            print("no failing rows to replay")
        for cid, refail in results:
            print("%-10s %s" % ("re-fails" if refail else "LOST", cid))
    return 0 if ok else 1


# ---------------------------------------------------------------------
# report-schema
# ---------------------------------------------------------------------

def cmd_report_schema(args):
    schema = {
        "row": {
            "check-id": {"type": "string",
                         "doc": "which check produced the row; the full "
                                "registry is under check-ids"},
            "verdict": {"type": "string", "enum": [PASS, FAIL]},
            "witness": {"type": ["object", "null"],
                        "doc": "replayable counterexample, null on a pass"},
            "bounds": {"type": "object",
                       "doc": "search caps the verdict is relative to, "
                              "plus any notes the check left"},
            "millis": {"type": "integer",
                       "doc": "wall clock spent on the check"},
        },
        "envelope": {
            "command": "string",
            "model": "string, present for model bound suites",
            "suite": "string",
            "bounds": "object, the caps every row started from",
            "reports": "array of rows, sorted by check-id",
            "skipped": "array of {check-id, reason}",
            "passed": "boolean, true when every row passed",
        },
        "exit-codes": {
            "0": "every requested check passed within bounds",
            "1": "at least one check failed",
            "2": "the request itself was malformed",
        },
        "suites": list(SUITES),
        "check-ids": {
            "axioms": list(axioms.AXIOM_IDS),
            "axiom-variants": [cid for cid in axioms.ALL_CHECK_IDS
                               if cid not in axioms.AXIOM_IDS],
            "theorems": sorted(theorems.THEOREM_CHECKS),
            "phi": list(topo.TOPO_CHECK_IDS),
            "uncond": list(uncond.UNCOND_CHECK_IDS),
            "endo": list(endo.ENDO_CHECK_IDS),
            "quotient": list(quotient.QUOTIENT_CHECK_IDS),
            "independence-table": ["independence[%s]" % name
                                   for name, _, _ in
                                   models.independence_fixtures()],
        },
    }
    json.dump(schema, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return 0


# ---------------------------------------------------------------------
# wiring
# ---------------------------------------------------------------------

def _parser():
    parser = argparse.ArgumentParser(
        prog="sumsys",
        description="checks, constructions and counterexamples for "
                    "summation systems on small carriers")
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True

    def verb(name, help_, func, bounds=True):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("--format", choices=("text", "json"), default="text")
        if bounds:
            sp.add_argument("--bounds", metavar="K=V,...", default=None,
                            help="adjust search caps, e.g. "
                                 "max_size=4,samples=80")
            sp.add_argument("--seed", type=int, default=None,
                            help="seed for sampled searches")
        sp.set_defaults(func=func)
        return sp

    sp = verb("check", "run a suite of checks against a model", cmd_check)
    sp.add_argument("--model", default=None,
                    help="builtin:<name> or a model file path")
    sp.add_argument("--suite", choices=SUITES, default="axioms")
    sp.add_argument("--window", type=int, default=None,
                    help="matrix window for the endo and quotient suites")

    sp = verb("phi", "best recovered topology of an induced summation",
              cmd_phi)
    sp.add_argument("--space", required=True,
                    help="trivial:<n>, discrete:<n>, or an induced "
                         "model file")
    sp.add_argument("--group", default=None,
                    help="carrier, e.g. z4 or klein; defaults to z<n>")

    sp = verb("psi", "closure of a set system under unique sums", cmd_psi)
    sp.add_argument("--model", default=None, help="an uncond model")
    sp.add_argument("--group", default=None)
    sp.add_argument("--sets", default=None, metavar='"{0},{0,2}"')

    sp = verb("quotient", "push a summation onto a factor group",
              cmd_quotient)
    sp.add_argument("--model", required=True)
    sp.add_argument("--subgroup", required=True, metavar="0,2")

    sp = verb("enumerate-topologies", "list the topologies on n points",
              cmd_enumerate_topologies, bounds=False)
    sp.add_argument("points", type=int)

    sp = verb("build", "write a model file from flags", cmd_build,
              bounds=False)
    sp.add_argument("kind", choices=list(MODEL_KINDS))
    sp.add_argument("--group", default=None)
    sp.add_argument("--value", type=int, default=None)
    sp.add_argument("--alphabet", type=int, default=None)
    sp.add_argument("--cap", type=int, default=None)
    sp.add_argument("--sets", default=None, metavar='"{0},{0,2}"')
    sp.add_argument("--opens", default=None, metavar='"{},{0,1}"')
    sp.add_argument("--family", default=None)
    sp.add_argument("--field", default=None)
    sp.add_argument("--width", type=int, default=None)
    sp.add_argument("--head", default=None, metavar='"1/3,1/6"')
    sp.add_argument("--cyc", default=None, metavar='"0"')
    sp.add_argument("--tail", action="append", default=None,
                    metavar='"a=1/12 r=1/2"')
    sp.add_argument("--out", default=None, help="write the file here")

    sp = verb("verify-witness", "replay the failing rows of a report",
              cmd_verify_witness, bounds=False)
    sp.add_argument("--report", required=True,
                    help="json file from a check run")
    sp.add_argument("--model", default=None,
                    help="model for axiom and theorem replays")
    sp.add_argument("--window", type=int, default=None)

    verb("report-schema", "the stable shape of a report row",
         cmd_report_schema, bounds=False)

    return parser


def main(argv=None):
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else 2
    try:
        return args.func(args)
    except InvalidSpec as e:
        print("error: %s" % e, file=sys.stderr)
        return 2
    except NotAFunction as e:
        print("error: %s" % e, file=sys.stderr)
        return 2
    except HypothesisNotMet as e:
        print("error: %s" % e, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
