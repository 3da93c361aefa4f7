"""``twolevel`` command line.

Every verb writes one JSON report (stdout or ``--output``).  Exit status:
0 when every check in the report passed, 1 when some check failed (a
violation or counterexample, listed in the report), 2 on input or usage
errors.
"""
from __future__ import annotations

import argparse
import logging
import sys

from . import _backend
from .audit import audit
from .config import (
    canonicalize, complete_A, complete_B, maximalize, pairing_matrix, validate,
    Configuration,
)
from .exactlin import format_rational
from .jsonio import (
    InputError, config_from_json, config_to_json, emit_report, facet_to_json,
    family_from_json, graph_from_json, load_json, make_report, poset_from_json,
    polytope_from_json, polytope_to_json, search_report_to_json, vector_to_json,
    witness_to_json,
)

log = logging.getLogger("twolevel")

VERBS = ("validate", "complete", "canonicalize", "trace", "witnesses",
         "polytope-check", "polytope-gen", "search", "lemma", "graph", "set-family")


def _need_input(args):
    if not args.input:
        raise InputError(f"{args.verb} needs --input")
    doc = load_json(args.input)
    # accept a previous report (e.g. from polytope-gen) in place of its payload
    if isinstance(doc, dict) and doc.get("tool") == "twolevel" and "result" in doc:
        doc = doc["result"]
    return doc


def cmd_validate(args):
    cfg = config_from_json(_need_input(args))
    rep = validate(cfg)
    result = {
        "d": cfg.d, "size_A": rep.size_A, "size_B": rep.size_B,
        "product": rep.product, "bound": cfg.bound,
        "violations": [{"a": i, "b": j, "product": format_rational(p)}
                       for i, j, p in rep.violations],
    }
    checks = {"pairing": not rep.violations, "spans_A": rep.spans_A, "spans_B": rep.spans_B}
    return result, checks


def cmd_complete(args):
    cfg = config_from_json(_need_input(args))
    A, B = list(cfg.A), list(cfg.B)
    try:
        if args.side in ("B", "both"):
            B = complete_B(A, include_zero=args.include_zero)
        if args.side in ("A", "both"):
            A = complete_A(B, include_zero=args.include_zero)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    out = Configuration(cfg.d, tuple(A), tuple(B))
    rep = validate(out)
    return config_to_json(out), {"pairing": not rep.violations}


def cmd_canonicalize(args):
    cfg = config_from_json(_need_input(args))
    try:
        new, cmap = canonicalize(cfg)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    result = {"configuration": config_to_json(new),
              "M": [vector_to_json(r) for r in cmap.M],
              "basis_indices": list(cmap.basis_indices)}
    checks = {"pairing_preserved": pairing_matrix(cfg) == pairing_matrix(new),
              "A_in_cube": all(c in (0, 1) for a in new.A for c in a)}
    return result, checks


def cmd_trace(args):
    from .prooftrace import TraceError, trace
    cfg = config_from_json(_need_input(args))
    if args.complete:
        try:
            cfg = maximalize(cfg)
        except ValueError as exc:
            raise InputError(str(exc)) from None
    try:
        cert = trace(cfg, check_maximal=not args.waive_maximality)
    except TraceError as exc:
        raise InputError(f"trace precondition failed: {exc}") from None
    doc = cert.to_dict()
    verdict, problems = audit(doc)
    doc["audit"] = {"verdict": verdict, "problems": problems}
    checks = {"certificate": cert.passed, "audit_agrees": verdict == cert.passed}
    return doc, checks


def cmd_witnesses(args):
    from .prooftrace import TraceError, build_node, construct_witnesses
    cfg = config_from_json(_need_input(args))
    try:
        node = build_node(cfg, check_maximal=False)
    except TraceError as exc:
        raise InputError(str(exc)) from None
    w = construct_witnesses(node)
    result = {"b_d": vector_to_json(node.b_d), "dim_U0": node.U0.dim,
              "witness": witness_to_json(w)}
    checks = {}
    if w is not None:
        checks.update({f"b1_{k}": v for k, v in w.b1_checks.items()})
        checks.update({f"b2_{k}": v for k, v in w.b2_checks.items()})
    return result, checks


def cmd_polytope_check(args):
    from .polytope import PolytopeError, facets, is_two_level, to_configuration, verify_bound
    P = polytope_from_json(_need_input(args))
    try:
        F = facets(P)
    except PolytopeError as exc:
        raise InputError(str(exc)) from None
    rep = is_two_level(P, F)
    result = {
        "d": P.d, "f0": rep.f0, "f_dminus1": rep.f_dminus1,
        "product": rep.product, "bound": rep.bound,
        "is_two_level": rep.is_two_level,
        "witness": None if rep.witness is None else facet_to_json(rep.witness),
        "facets": [facet_to_json(f) for f in F],
    }
    checks = {"two_level": rep.is_two_level}
    if rep.is_two_level:
        cfg, mult = to_configuration(P, F)
        result["configuration"] = config_to_json(cfg)
        result["multiplicity"] = [mult[b] for b in cfg.B]
        checks["bound"] = rep.holds
        checks["configuration_valid"] = validate(cfg).valid
        if args.cross_check:
            cc = verify_bound(P, cross_check=True).cross_check
            result["cross_check"] = cc
            if cc is not None:
                checks["double_facet_partition_empty"] = cc["empty_partition"]
    return result, checks


def cmd_polytope_gen(args):
    from .polytope import PolytopeError, generate
    poset = graph = None
    if args.family in ("order_polytope", "chain_polytope"):
        poset = poset_from_json(_need_input(args))
    elif args.family == "stable_set_polytope":
        graph = graph_from_json(_need_input(args))
    try:
        P = generate(args.family, d=args.d, poset=poset, graph=graph)
    except PolytopeError as exc:
        raise InputError(str(exc)) from None
    return polytope_to_json(P), {}


def cmd_search(args):
    from .oracle import search_extremal
    if args.d is None:
        raise InputError("search needs --d")
    log.info("extremal search d=%d mode=%s", args.d, args.mode)
    rep = search_extremal(args.d, mode=args.mode, budget=args.budget or 10000,
                          seed=args.seed, long_running=args.long_running)
    return search_report_to_json(rep, args.timing), {"bound": rep.holds}


def cmd_lemma(args):
    from .oracle import verify_lemma_sliceb, verify_lemma_slice
    if args.input:
        cfg = config_from_json(_need_input(args))
        out = verify_lemma_sliceb(cfg.A, cfg.B)
        return out, {"preconditions": not out["preconditions"], "bound": bool(out["holds"])}
    if args.d is None:
        raise InputError("lemma needs --d (or --input for the A/B form)")
    log.info("slice lemma d=%d mode=%s", args.d, args.mode)
    rep = verify_lemma_slice(args.d, mode=args.mode, samples=args.budget or 100_000,
                             seed=args.seed)
    return search_report_to_json(rep, args.timing), {"bound": rep.holds}


def cmd_graph(args):
    from .oracle import graph_bound, graph_census
    if args.census is not None:
        rep = graph_census(args.census)
    else:
        rep = graph_bound(graph_from_json(_need_input(args)))
    return search_report_to_json(rep, args.timing), {"bound": rep.holds}


def cmd_set_family(args):
    from .oracle import verify_set_family
    ground, A, B = family_from_json(_need_input(args))
    rep = verify_set_family(ground, A, B)
    checks = {"bound": rep.holds}
    if "certificate_passed" in rep.details:
        checks["configuration_certificate"] = rep.details["certificate_passed"]
    return search_report_to_json(rep, args.timing), checks


HANDLERS = {
    "validate": cmd_validate, "complete": cmd_complete, "canonicalize": cmd_canonicalize,
    "trace": cmd_trace, "witnesses": cmd_witnesses, "polytope-check": cmd_polytope_check,
    "polytope-gen": cmd_polytope_gen, "search": cmd_search, "lemma": cmd_lemma,
    "graph": cmd_graph, "set-family": cmd_set_family,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", help="input JSON file")
    common.add_argument("--output", help="write the report here instead of stdout")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--budget", type=int, help="samples / random instances")
    common.add_argument("--include-zero", action=argparse.BooleanOptionalAction, default=True)
    common.add_argument("--long-running", action="store_true",
                        help="allow exhaustive runs beyond the default scale")
    common.add_argument("--threads", type=int, help="cap on kernel worker threads")
    common.add_argument("--timing", action="store_true",
                        help="add wall-clock timings (reports stop being byte-reproducible)")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="twolevel", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="verb", required=True, metavar="VERB")
    for verb in VERBS:
        sp = sub.add_parser(verb, parents=[common])
        if verb == "complete":
            sp.add_argument("--side", choices=("A", "B", "both"), default="B")
        if verb == "trace":
            sp.add_argument("--complete", action="store_true",
                            help="maximalize both sides before tracing")
            sp.add_argument("--waive-maximality", action="store_true")
        if verb == "polytope-check":
            sp.add_argument("--cross-check", action="store_true")
        if verb == "polytope-gen":
            sp.add_argument("--family", required=True,
                            choices=("hypercube", "cross_polytope", "simplex", "order_polytope",
                                     "chain_polytope", "stable_set_polytope"))
            sp.add_argument("--d", type=int)
        if verb in ("search", "lemma"):
            sp.add_argument("--d", type=int)
            sp.add_argument("--mode", choices=("exhaustive", "random"), default="exhaustive")
        if verb == "graph":
            sp.add_argument("--census", type=int, metavar="N",
                            help="check every labeled graph on N nodes")
    return p


def run(argv=None):
    """Parse, dispatch, and return (exit status, report text or None)."""
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        stream=sys.stderr, format="%(name)s: %(message)s")
    _backend.set_threads(args.threads)
    try:
        result, checks = HANDLERS[args.verb](args)
    except (InputError, ValueError) as exc:
        print(f"twolevel {args.verb}: error: {exc}", file=sys.stderr)
        return 2, None
    seed = args.seed if args.verb in ("search", "lemma") else None
    text = emit_report(make_report(args.verb, result, checks, seed=seed))
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return (0 if all(checks.values()) else 1), text


def main(argv=None):
    status, _ = run(argv)
    return status


if __name__ == "__main__":
    sys.exit(main())
