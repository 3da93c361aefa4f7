"""JSON formats shared by the library and the CLI.

Rationals are always strings ``"p/q"`` (``"p"`` when the denominator is 1).
"""
from __future__ import annotations

import json
from fractions import Fraction

from . import __version__
from .combinat import Graph, Poset
from .config import Configuration
from .exactlin import format_rational, parse_rational

__all__ = [
    "InputError", "vector_to_json", "vector_from_json", "config_to_json",
    "config_from_json", "polytope_to_json", "polytope_from_json",
    "graph_from_json", "graph_to_json", "poset_from_json", "family_from_json",
    "facet_to_json", "search_report_to_json", "witness_to_json", "make_report",
    "emit_report", "load_json",
]


class InputError(ValueError):
    """Malformed input document."""


def vector_to_json(v) -> list:
    return [format_rational(c) for c in v]


def vector_from_json(raw, d=None) -> tuple:
    if not isinstance(raw, list):
        raise InputError(f"vector must be a list, got {type(raw).__name__}")
    try:
        v = tuple(parse_rational(c) for c in raw)
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad rational in {raw!r}: {exc}") from None
    if d is not None and len(v) != d:
        raise InputError(f"vector {raw!r} has length {len(v)}, expected {d}")
    return v


def _require(doc, key, kind):
    if not isinstance(doc, dict) or key not in doc:
        raise InputError(f"missing field {key!r}")
    val = doc[key]
    if kind is int and (isinstance(val, bool) or not isinstance(val, int)):
        raise InputError(f"field {key!r} must be an integer")
    if kind is list and not isinstance(val, list):
        raise InputError(f"field {key!r} must be a list")
    return val


def config_to_json(cfg: Configuration) -> dict:
    return {"d": cfg.d, "A": [vector_to_json(a) for a in cfg.A],
            "B": [vector_to_json(b) for b in cfg.B]}


def config_from_json(doc) -> Configuration:
    d = _require(doc, "d", int)
    if d < 0:
        raise InputError("d must be nonnegative")
    A = [vector_from_json(x, d) for x in _require(doc, "A", list)]
    B = [vector_from_json(x, d) for x in _require(doc, "B", list)]
    try:
        return Configuration(d, tuple(A), tuple(B))
    except ValueError as exc:
        raise InputError(str(exc)) from None


def polytope_to_json(P) -> dict:
    return {"d": P.d, "vertices": [vector_to_json(v) for v in P.vertices]}


def polytope_from_json(doc):
    from .polytope import PolytopeError, VPolytope
    d = _require(doc, "d", int)
    V = [vector_from_json(x, d) for x in _require(doc, "vertices", list)]
    try:
        return VPolytope(d, tuple(V))
    except PolytopeError as exc:
        raise InputError(str(exc)) from None


def _pairs(raw, what):
    out = []
    for e in raw:
        if (not isinstance(e, list) or len(e) != 2
                or not all(isinstance(x, int) and not isinstance(x, bool) for x in e)):
            raise InputError(f"{what} entries must be [int, int], got {e!r}")
        out.append(tuple(e))
    return out


def graph_from_json(doc) -> Graph:
    n = _require(doc, "n", int)
    try:
        return Graph.from_edges(n, _pairs(_require(doc, "edges", list), "edge"))
    except ValueError as exc:
        raise InputError(str(exc)) from None


def graph_to_json(G: Graph) -> dict:
    return {"n": G.n, "edges": [list(e) for e in sorted(G.edges)]}


def poset_from_json(doc) -> Poset:
    n = _require(doc, "n", int)
    try:
        return Poset(n, frozenset(_pairs(_require(doc, "covers", list), "cover")))
    except ValueError as exc:
        raise InputError(str(exc)) from None


def family_from_json(doc):
    ground = doc.get("ground") if isinstance(doc, dict) else None
    if isinstance(ground, bool) or not isinstance(ground, (int, list)):
        raise InputError("field 'ground' must be a count or a list of elements")
    A = _require(doc, "A", list)
    B = _require(doc, "B", list)
    for fam in (A, B):
        if not all(isinstance(S, list) for S in fam):
            raise InputError("families are lists of lists")
    return ground, A, B


def facet_to_json(f) -> dict:
    return {
        "normal": [str(c) for c in f.normal],
        "rhs_low": format_rational(f.rhs_low),
        "rhs_high": format_rational(f.rhs_high),
        "low_is_facet": f.low_is_facet,
        "high_is_facet": f.high_is_facet,
        "levels": [[format_rational(v), c] for v, c in f.vertex_levels],
    }


def _generic(x):
    if isinstance(x, Configuration):
        return config_to_json(x)
    if isinstance(x, Graph):
        return graph_to_json(x)
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, tuple) and all(isinstance(c, Fraction) for c in x):
        return vector_to_json(x)
    if isinstance(x, (list, tuple)):
        return [_generic(y) for y in x]
    if isinstance(x, dict):
        return {str(k): _generic(v) for k, v in x.items()}
    return x


def search_report_to_json(rep, timing: bool = False) -> dict:
    out = {
        "kind": rep.kind,
        "parameter": rep.parameter,
        "mode": rep.mode,
        "max_product": rep.max_product,
        "bound": rep.bound,
        "holds": rep.holds,
        "instances_checked": rep.instances_checked,
        "argmax": _generic(rep.argmax),
        "equality_count": rep.equality_count,
        "equality_cases": _generic(rep.equality_cases),
        "violations": _generic(rep.violations),
        "seed": rep.seed,
        "details": _generic(rep.details),
    }
    if timing:
        out["elapsed_seconds"] = round(rep.elapsed, 6)
    return out


def witness_to_json(w) -> dict:
    if w is None:
        return {"found": False}
    return {
        "found": True,
        "v": vector_to_json(w.v),
        "a0": vector_to_json(w.a0),
        "c": vector_to_json(w.c),
        "delta1": format_rational(w.delta1),
        "b1": vector_to_json(w.b1),
        "b1_checks": w.b1_checks,
        "xi": None if w.xi is None else format_rational(w.xi),
        "v_prime": None if w.v_prime is None else vector_to_json(w.v_prime),
        "delta2": None if w.delta2 is None else format_rational(w.delta2),
        "b2": None if w.b2 is None else vector_to_json(w.b2),
        "b2_checks": w.b2_checks,
        "fiber_size": len(w.fiber),
    }


def make_report(command: str, result, checks: dict, seed=None) -> dict:
    """Wrap a result in the common envelope; ``passed`` is all checks true."""
    return {
        "tool": "twolevel",
        "version": __version__,
        "command": command,
        "seed": seed,
        "checks": {k: bool(v) for k, v in checks.items()},
        "passed": all(bool(v) for v in checks.values()),
        "result": _generic(result),
    }


def emit_report(doc: dict) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def load_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from None
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
