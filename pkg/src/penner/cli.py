"""Command line front door.

Subcommands: dilatation, coxeter, genus, minimize, table1, limits. Every
command takes --json for machine-readable output with the same numeric
content as the text report. Values print with 10 significant digits, and
reports are byte-identical across runs on identical inputs. Exit codes:
0 success, 2 invalid input, 3 internal inconsistency.
"""

from __future__ import annotations

import argparse
import json
import sys

from .coxeter import (
    LIMIT_DILATATION,
    action_spectral_radius,
    bipartite_order,
    coxeter_transformation,
    dynkin_graph,
    homological_action,
    lambda_closed_form,
)
from .errors import (
    DocumentError,
    InternalInconsistencyError,
    InvalidParameterError,
    PennerError,
)
from .exact import DEFAULT_TOL, IntPolynomial, char_poly, count_real_roots
from .fileformat import GraphDocument, PatternDocument, load_document
from .search import exclusion_certificate, minimal_dilatation, table1
from .surfaces import (
    cycle_fill_genus_bound,
    genus_distribution,
    trace_faces,
    tree_fill_genus,
)
from .twists import (
    IntersectionPattern,
    TwistWord,
    bipartite_word,
    dilatation,
    double_intersection_certificate,
    mapping_class_dilatation,
    penner_product,
    validate_word,
    word_from_order,
)

MIN_POLY_DEGREE_CAP = 16


def fmt(x: float) -> str:
    return "%.10g" % x


def num(x: float) -> float:
    """Round to the printed precision so text and JSON carry the same values."""
    return float(fmt(x))


def minimal_polynomial(root):
    """Irreducible factor of the certified root's polynomial that owns the
    root, or None when the polynomial degree exceeds the display cap."""
    poly = root.polynomial
    if poly.degree > MIN_POLY_DEGREE_CAP:
        return None
    import sympy

    t = sympy.Symbol("t")
    expr = sympy.Poly(list(reversed(poly.coefficients)), t)
    lo, hi = root.isolating_interval
    for factor, _ in expr.factor_list()[1]:
        coeffs = [int(c) for c in reversed(factor.all_coeffs())]
        candidate = IntPolynomial(coeffs)
        if candidate.degree < 1:
            continue
        if lo == hi:
            if candidate(lo) == 0:
                return candidate
        elif count_real_roots(candidate, lo, hi) >= 1:
            return candidate
    return poly  # irreducible already


def _emit(args, lines, payload):
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=False))
    else:
        for line in lines:
            print(line)


def _pattern_from_document(doc):
    if isinstance(doc, PatternDocument):
        return doc
    graph = doc.graph
    pattern, _, _ = IntersectionPattern.from_graph(graph)
    return PatternDocument(pattern)


def _root_payload(root):
    return {
        "value": num(root.value),
        "radius": root.radius,
        "characteristic_polynomial": list(root.polynomial.coefficients),
    }


def cmd_dilatation(args):
    doc = _pattern_from_document(load_document(args.pattern_file))
    pattern = doc.pattern
    if args.word is not None:
        word = TwistWord.from_string(args.word)
    elif doc.word is not None:
        word = doc.word
    else:
        word = bipartite_word(pattern)
    report = validate_word(pattern, word)
    if not report.valid:
        raise InvalidParameterError("invalid twist word: %s" % report.reason())
    product = penner_product(pattern, word)
    root = dilatation(pattern, word, args.tol)
    poly = char_poly(product)
    minpoly = minimal_polynomial(root)

    lines = [
        "pattern: alpha=%d beta=%d" % (pattern.n, pattern.m),
        "word: %s" % word,
        "characteristic polynomial: %s" % poly,
        "dilatation: %s" % fmt(root.value),
        "radius: %g" % root.radius,
    ]
    payload = {
        "command": "dilatation",
        "alpha": pattern.n,
        "beta": pattern.m,
        "word": str(word),
        "characteristic_polynomial": list(poly.coefficients),
        "dilatation": num(root.value),
        "radius": root.radius,
        "certificates": [],
    }
    if minpoly is not None:
        lines.append("minimal polynomial: %s" % minpoly)
        payload["minimal_polynomial"] = list(minpoly.coefficients)

    double = double_intersection_certificate(pattern, args.tol)
    if double is not None:
        lines.append(
            "certificate: components a%d and b%d intersect %d times, so every "
            "dilatation over this pattern is at least %s (largest root of %s)"
            % (
                double.alpha_index + 1,
                double.beta_index + 1,
                double.count,
                fmt(double.bound.value),
                double.polynomial,
            )
        )
        payload["certificates"].append(
            {
                "kind": "double_intersection",
                "alpha": double.alpha_index + 1,
                "beta": double.beta_index + 1,
                "count": double.count,
                "bound": num(double.bound.value),
                "polynomial": list(double.polynomial.coefficients),
            }
        )
    exclusion = exclusion_certificate(pattern.graph())
    if exclusion is not None:
        lines.append(
            "certificate: intersection graph contains %s, so every dilatation "
            "over this pattern is at least %s" % (exclusion.obstruction, fmt(LIMIT_DILATATION))
        )
        payload["certificates"].append(
            {
                "kind": exclusion.excluded_by,
                "obstruction": exclusion.obstruction,
                "bound": num(LIMIT_DILATATION),
            }
        )
    if not payload["certificates"]:
        lines.append("certificates: none")
    _emit(args, lines, payload)
    return 0


def cmd_coxeter(args):
    doc = load_document(args.graph_file)
    if isinstance(doc, GraphDocument):
        graph = doc.graph
    else:
        graph = doc.graph()
    if args.order == "bipartite":
        order = bipartite_order(graph)
    else:
        if not args.perm:
            raise InvalidParameterError("--order custom needs --perm, e.g. --perm '2 1 3'")
        order = tuple(int(tok) - 1 for tok in args.perm.split())
    transformation = coxeter_transformation(graph, order)
    action = homological_action(graph, order)
    trans_poly = char_poly(transformation)
    action_poly = char_poly(action)

    lines = [
        "graph: %d vertices, %d edges, signs %s"
        % (
            graph.vertex_count,
            len(graph.edges),
            " ".join("+" if s > 0 else "-" for s in graph.signs),
        ),
        "order: %s" % " ".join(str(v + 1) for v in order),
        "coxeter transformation char poly: %s" % trans_poly,
        "homological action char poly: %s" % action_poly,
    ]
    payload = {
        "command": "coxeter",
        "vertices": graph.vertex_count,
        "edges": sorted([a + 1, b + 1] for a, b in graph.edges),
        "signs": list(graph.signs),
        "order": [v + 1 for v in order],
        "coxeter_char_poly": list(trans_poly.coefficients),
        "action_char_poly": list(action_poly.coefficients),
    }

    if graph.is_alternating():
        word, root = mapping_class_dilatation(graph, order, args.tol)
        lines.append("twist word for this order: %s" % word)
        lines.append("dilatation (mapping class): %s" % fmt(root.value))
        payload["twist_word"] = str(word)
        payload["dilatation"] = num(root.value)
        payload["radius"] = root.radius
    else:
        root = action_spectral_radius(graph, order, args.tol)
        lines.append("spectral radius (homological action): %s" % fmt(root.value))
        payload["spectral_radius"] = num(root.value)
        payload["radius"] = root.radius
    if graph.is_tree():
        lines.append(
            "note: the graph is a tree, so the characteristic polynomials do "
            "not depend on the order"
        )
        payload["order_independent"] = True
    _emit(args, lines, payload)
    return 0


def cmd_genus(args):
    if args.family is not None:
        if args.n is None:
            raise InvalidParameterError("--family needs --n")
        if args.family in ("A", "D"):
            genus = tree_fill_genus(args.family, args.n)
            lines = ["%s_%d fills genus %d" % (args.family, args.n, genus)]
            payload = {
                "command": "genus",
                "family": args.family,
                "n": args.n,
                "genus": genus,
            }
            if args.distribution:
                pattern, _, _ = IntersectionPattern.from_graph(
                    dynkin_graph(args.family, args.n)
                )
                dist = genus_distribution(pattern)
                lines.append("per-framing distribution: %s" % _dist_text(dist))
                payload["distribution"] = {str(k): v for k, v in sorted(dist.items())}
            _emit(args, lines, payload)
            return 0
        if args.family == "cycle":
            bound = cycle_fill_genus_bound(args.n)
            lines = ["%d-cycle fills genus at most %d" % (args.n, bound)]
            payload = {
                "command": "genus",
                "family": "cycle",
                "n": args.n,
                "genus_bound": bound,
            }
            if args.distribution:
                pattern, _, _ = IntersectionPattern.from_graph(
                    dynkin_graph("cycle", args.n)
                )
                dist = genus_distribution(pattern)
                lines.append("per-framing distribution: %s" % _dist_text(dist))
                payload["distribution"] = {str(k): v for k, v in sorted(dist.items())}
            _emit(args, lines, payload)
            return 0
        raise InvalidParameterError("--family must be A, D or cycle")

    if args.pattern_file is None:
        raise InvalidParameterError("give a pattern file or --family/--n")
    doc = _pattern_from_document(load_document(args.pattern_file))
    framed = doc.framed()
    counts = trace_faces(framed)
    lines = [
        "cells: %d vertices, %d edges, %d faces"
        % (counts.zero_cells, counts.one_cells, counts.two_cells),
        "euler characteristic: %d" % counts.euler_characteristic,
        "genus: %d" % counts.genus,
    ]
    if not doc.has_framing:
        lines.append("note: no framing in the file; used ascending orders and + crossings")
    payload = {
        "command": "genus",
        "zero_cells": counts.zero_cells,
        "one_cells": counts.one_cells,
        "two_cells": counts.two_cells,
        "euler_characteristic": counts.euler_characteristic,
        "genus": counts.genus,
        "framing_given": doc.has_framing,
    }
    if args.distribution:
        dist = genus_distribution(doc.pattern)
        lines.append("per-framing distribution: %s" % _dist_text(dist))
        payload["distribution"] = {str(k): v for k, v in sorted(dist.items())}
    _emit(args, lines, payload)
    return 0


def _dist_text(dist):
    return ", ".join("genus %d x%d" % (k, v) for k, v in sorted(dist.items()))


def cmd_minimize(args):
    result = minimal_dilatation(args.genus, args.mode, args.tol)
    lines = [
        "genus: %d" % result.genus,
        "mode: %s" % result.mode,
        "minimal dilatation: %s" % fmt(result.value),
        "witness: %s with word %s" % (result.witness_name, result.witness_word),
        "audit:",
    ]
    audit_payload = []
    for entry in result.audit:
        value_text = fmt(entry.value) if entry.value is not None else "-"
        lines.append(
            "  %-18s %-14s value=%s%s  %s"
            % (
                entry.name,
                "(%d vertices)" % entry.vertex_count if entry.vertex_count else "",
                value_text,
                " [certified]" if entry.certified else "",
                entry.fill,
            )
        )
        audit_payload.append(
            {
                "name": entry.name,
                "vertex_count": entry.vertex_count,
                "fill": entry.fill,
                "value": num(entry.value) if entry.value is not None else None,
                "certified": entry.certified,
                "lower_bound": num(entry.lower_bound)
                if entry.lower_bound is not None
                else None,
                "note": entry.note,
            }
        )
    payload = {
        "command": "minimize",
        "genus": result.genus,
        "mode": result.mode,
        "value": num(result.value),
        "witness": result.witness_name,
        "witness_word": str(result.witness_word),
        "audit": audit_payload,
    }
    _emit(args, lines, payload)
    return 0


def cmd_table1(args):
    rows = table1(args.tol)
    lines = ["%-18s %-8s %-14s %s" % ("graph", "genus", "dilatation", "note")]
    payload_rows = []
    for row in rows:
        lines.append(
            "%-18s %-8s %-14s %s"
            % (row.name, row.genus_display, fmt(row.dilatation), row.note)
        )
        payload_rows.append(
            {
                "graph": row.name,
                "genus": row.genus_display,
                "genus_values": list(row.genus_values),
                "dilatation": num(row.dilatation),
                "note": row.note,
            }
        )
    payload = {"command": "table1", "rows": payload_rows}
    if args.plot:
        from .figures import save_table_figure

        save_table_figure(rows, args.plot)
        lines.append("figure written to %s" % args.plot)
        payload["figure"] = args.plot
    _emit(args, lines, payload)
    return 0


def cmd_limits(args):
    if args.gmax < 1:
        raise InvalidParameterError("--gmax must be at least 1")
    rows = []
    for g in range(1, args.gmax + 1):
        value = lambda_closed_form(g)
        rows.append((g, value, LIMIT_DILATATION - value))
    lines = ["genus,dilatation,gap_to_limit"]
    for g, value, gap in rows:
        lines.append("%d,%s,%s" % (g, fmt(value), fmt(gap)))
    payload = {
        "command": "limits",
        "limit": num(LIMIT_DILATATION),
        "rows": [
            {"genus": g, "dilatation": num(v), "gap_to_limit": num(gap)}
            for g, v, gap in rows
        ],
    }
    if args.plot:
        from .figures import save_limits_figure

        save_limits_figure(rows, args.plot)
        lines.append("figure written to %s" % args.plot)
        payload["figure"] = args.plot
    _emit(args, lines, payload)
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="penner",
        description="Exact dilatations of Dehn-twist products and the "
        "certified minimal-dilatation search per genus.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def common(p):
        p.add_argument("--tol", type=float, default=DEFAULT_TOL, help="certified radius bound")
        p.add_argument("--json", action="store_true", help="machine-readable output")

    p = sub.add_parser("dilatation", help="certified dilatation of a twist word")
    p.add_argument("pattern_file")
    p.add_argument("--word", help="twist word like 'a1+ b1-' (default: the word in the file, else all alphas then all betas)")
    common(p)
    p.set_defaults(func=cmd_dilatation)

    p = sub.add_parser("coxeter", help="spectral report of a mixed-sign Coxeter graph")
    p.add_argument("graph_file")
    p.add_argument("--order", choices=("bipartite", "custom"), default="bipartite")
    p.add_argument("--perm", help="custom reflection order, 1-based, e.g. '1 3 2 4'")
    common(p)
    p.set_defaults(func=cmd_coxeter)

    p = sub.add_parser("genus", help="fill genus of a framed pattern or named family")
    p.add_argument("pattern_file", nargs="?")
    p.add_argument("--family", choices=("A", "D", "cycle"))
    p.add_argument("--n", type=int)
    p.add_argument("--distribution", action="store_true", help="per-framing genus counts")
    common(p)
    p.set_defaults(func=cmd_genus)

    p = sub.add_parser("minimize", help="minimal dilatation for a genus, with audit")
    p.add_argument("--genus", type=int, required=True)
    p.add_argument("--mode", choices=("closed_form", "certified_search"), default="certified_search")
    common(p)
    p.set_defaults(func=cmd_minimize)

    p = sub.add_parser("table1", help="the small-genus comparison table")
    p.add_argument("--plot", help="also render the table as a PNG figure")
    common(p)
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("limits", help="dilatation per genus and gap to the limit, as CSV")
    p.add_argument("--gmax", type=int, required=True)
    p.add_argument("--plot", help="also render the convergence as a PNG figure")
    common(p)
    p.set_defaults(func=cmd_limits)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InternalInconsistencyError as exc:
        print("error: %s: %s" % (type(exc).__name__, exc), file=sys.stderr)
        return 3
    except (PennerError, FileNotFoundError, IsADirectoryError) as exc:
        print("error: %s: %s" % (type(exc).__name__, exc), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
