"""``mcb`` command-line entry point.

Exit codes: 0 when a result was computed (including "MCB fails"), 2 for
input or usage errors, 3 when the instance is out of scope or over budget.
"""

from __future__ import annotations

import argparse
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import __version__
from .constructions import (NegPavingParams, NobdParams, block_hyperplanes, neg_paving,
                            neg_paving_hyperplanes, neg_paving_witness, pavexmp_a_bound,
                            pavexmp_paving)
from .covers import compare_counts
from .errors import ConventionMismatchError, MatroidInputError, ScopeError
from .graphs import (check_dirgraph_equivalence, direct_sum_graphic, induced_two_connected,
                     k_circuits, maximal_path_covers, mcb_digraph)
from .matroid import cycle_matroid
from .io import dumps, load_graph, load_matroid, paving_to_json, read_json, sha256_file
from .mcb import check_mcb, cover_profiles
from .polytope import (decompose, facet_inequalities, flacets, mcb_flacet_equivalence,
                       normal_fan_equivalent)

SCHEMA = "mcb/1"
# Flags that change how a run executes but not what it computes; kept out of the echo.
_EXECUTION_FLAGS = {"--threads", "--timing", "--format", "-o", "--output"}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(2)


def _int_list(text: str) -> list:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _blocks(text: str) -> list:
    return [_int_list(part) for part in text.split(";") if part.strip()]


def _sets(sets) -> list:
    return [sorted(s) for s in sets]


def _frac(x: Fraction) -> dict:
    return {"numerator": x.numerator, "denominator": x.denominator}


# --- subcommand handlers -------------------------------------------------------------
# Each returns (result dict, list of input files).

def cmd_check(args):
    M = load_matroid(args.matroid)
    v = check_mcb(M, args.degree, proper_only=not args.allow_improper, workers=args.threads)
    return {"degree": args.degree, **v.to_json()}, [args.matroid]


def cmd_profile(args):
    M = load_matroid(args.matroid)
    profiles = cover_profiles(M, args.k, proper_only=not args.allow_improper)
    return {"k": args.k, "profiles": [p.to_json() for p in profiles]}, [args.matroid]


def cmd_construct_nobd(args):
    p = NobdParams(args.n, args.B, args.m)
    doc = paving_to_json(p.n, block_hyperplanes(p.n, p.B, p.m), p.m)
    a_max = p.a_max
    doc["provenance"] = {
        "construction": "nobd",
        "params": {"n": p.n, "B": p.B, "m": p.m},
        "claims": {"rank": p.m + 1, "paving": True, "a_max": _frac(a_max),
                   "mcb_holds_for_degrees_up_to": a_max.numerator // a_max.denominator},
    }
    return doc, []


def cmd_construct_pavexmp(args):
    pavexmp_paving(args.n, args.B)  # validates the parameters
    doc = paving_to_json(args.n, block_hyperplanes(args.n, args.B, 2), 2)
    bound = pavexmp_a_bound(args.n, args.B)
    doc["provenance"] = {
        "construction": "pavexmp",
        "params": {"n": args.n, "B": args.B},
        "claims": {"rank": 3, "paving": True, "a_bound": _frac(bound),
                   "mcb_holds_for_degrees_below": _frac(bound)},
    }
    return doc, []


def cmd_construct_negpaving(args):
    p = NegPavingParams(args.n, frozenset(args.A), args.m,
                        tuple(tuple(b) for b in args.type2) if args.type2 else None)
    res = neg_paving(p)
    family, q = neg_paving_witness(p)
    doc = paving_to_json(p.n, neg_paving_hyperplanes(p), p.m)
    doc["provenance"] = {
        "construction": "negpaving",
        "params": {"n": p.n, "A": sorted(p.A), "m": p.m,
                   "type2": [sorted(b) for b in p.type2] if p.type2 else None},
        "claims": {"rank": p.m + 1, "paving": True, "witness_size": res.witness_size,
                   "mcb_fails_at_degree": res.witness_size,
                   "witness_family": _sets(family), "uncovered_point": q},
    }
    return doc, []


def cmd_polytope_decompose(args):
    M = load_matroid(args.matroid)
    d = decompose(M)
    return {"decomposition": d.to_json(), "generic": all(v >= 0 for v in d.y.values())}, [args.matroid]


def cmd_polytope_flacets(args):
    M = load_matroid(args.matroid)
    return {"flacets": _sets(flacets(M))}, [args.matroid]


def cmd_polytope_facets(args):
    M = load_matroid(args.matroid)
    ineqs = facet_inequalities(decompose(M))
    return {"inequalities": [{"subset": sorted(G), "bound": _frac(b)} for G, b in ineqs]}, [args.matroid]


def cmd_polytope_fan_eq(args):
    M, N = load_matroid(args.matroid), load_matroid(args.other)
    return {"equivalent": normal_fan_equivalent(M, N)}, [args.matroid, args.other]


def cmd_polytope_equivalence(args):
    M = load_matroid(args.matroid)
    return mcb_flacet_equivalence(M, args.degree).to_json(), [args.matroid]


def cmd_covers_count(args):
    return compare_counts(args.a, args.b, args.mode, args.ambient_n).to_json(), []


def cmd_graph_kcircuits(args):
    G = load_graph(args.graph)
    circ = k_circuits(cycle_matroid(G), args.k, relaxed=args.relaxed)
    return {"k": args.k, "relaxed": args.relaxed, "k_circuits": _sets(circ)}, [args.graph]


def cmd_graph_sumgraphic(args):
    M = cycle_matroid(load_graph(args.graph))
    out = {"k": args.k}
    for name, relaxed in (("strict", False), ("relaxed", True)):
        res = direct_sum_graphic(M, args.k, relaxed)
        out[name] = {"graphic": res.graphic, "k_circuits": _sets(res.circuits),
                     "witness": _sets(res.witness) if res.witness else None}
    return out, [args.graph]


def cmd_graph_twoconn(args):
    G = load_graph(args.graph)
    A = args.edges if args.edges is not None else list(range(1, G.n + 1))
    return {"edges": sorted(set(A)), "two_connected": induced_two_connected(G, A)}, [args.graph]


def cmd_graph_dirgraph_check(args):
    G = load_graph(args.graph)
    return check_dirgraph_equivalence(G, args.r, workers=args.threads).to_json(), [args.graph]


def cmd_graph_digraph(args):
    family = read_json(args.family)
    if not isinstance(family, list):
        raise MatroidInputError("family must be a list of subsets")
    D = mcb_digraph(args.n, family)
    out = {"digraph": D.to_json()}
    if args.covers is not None:
        out["path_covers"] = [[list(p) for p in fam] for fam in maximal_path_covers(D, args.covers)]
    return out, [args.family]


# --- parser --------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    def shared(top):
        # Leaf copies use SUPPRESS so they do not reset values given before the subcommand.
        def d(value):
            return value if top else argparse.SUPPRESS

        q = argparse.ArgumentParser(add_help=False)
        q.add_argument("--format", choices=("json", "table"), default=d("json"))
        q.add_argument("--threads", type=int, default=d(1), help="worker threads for the searches")
        q.add_argument("--timing", action="store_true", default=d(False), help="add wall time to the report")
        return q

    common = shared(False)
    p = _Parser(prog="mcb", description="Matroidal Cayley-Bacharach toolkit", parents=[shared(True)])
    p.add_argument("--version", action="version", version=f"mcb {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def leaf(parent, name, func, help_text):
        q = parent.add_parser(name, parents=[common], help=help_text)
        q.set_defaults(func=func)
        return q

    q = leaf(sub, "check", cmd_check, "decide MCB(a)")
    q.add_argument("--matroid", required=True)
    q.add_argument("--degree", type=int, required=True)
    q.add_argument("--allow-improper", action="store_true")

    q = leaf(sub, "profile", cmd_profile, "minimal flat covers with their rank profiles")
    q.add_argument("--matroid", required=True)
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--allow-improper", action="store_true")

    con = sub.add_parser("construct", help="build paving matroids").add_subparsers(
        dest="construction", required=True, parser_class=_Parser)
    q = leaf(con, "nobd", cmd_construct_nobd, "block paving satisfying MCB up to a_max")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--B", type=int, required=True)
    q.add_argument("--m", type=int, required=True)
    q.add_argument("-o", "--output")
    q = leaf(con, "pavexmp", cmd_construct_pavexmp, "rank-3 block paving")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--B", type=int, required=True)
    q.add_argument("-o", "--output")
    q = leaf(con, "negpaving", cmd_construct_negpaving, "paving matroid failing MCB")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--A", type=_int_list, required=True, help="hyperplane A, e.g. 1,2,3")
    q.add_argument("--m", type=int, required=True)
    q.add_argument("--type2", type=_blocks, help="blocks inside E - A, e.g. 4,5,6;7,8,9")
    q.add_argument("-o", "--output")

    pol = sub.add_parser("polytope", help="matroid polytope tools").add_subparsers(
        dest="action", required=True, parser_class=_Parser)
    for name, func, text in (("decompose", cmd_polytope_decompose, "signed Minkowski decomposition"),
                             ("flacets", cmd_polytope_flacets, "flats defining facets"),
                             ("facets", cmd_polytope_facets, "facet inequalities from the building closure"),
                             ("equivalence", cmd_polytope_equivalence, "MCB(a) against sMCB(a) of the closure")):
        q = leaf(pol, name, func, text)
        q.add_argument("--matroid", required=True)
        if name == "equivalence":
            q.add_argument("--degree", type=int, required=True)
    q = leaf(pol, "fan-eq", cmd_polytope_fan_eq, "compare normal fans")
    q.add_argument("--matroid", required=True)
    q.add_argument("--other", required=True)

    cov = sub.add_parser("covers", help="cover counting").add_subparsers(
        dest="action", required=True, parser_class=_Parser)
    q = leaf(cov, "count", cmd_covers_count, "minimal cover counts")
    q.add_argument("--a", type=int, required=True)
    q.add_argument("--b", type=int, required=True)
    q.add_argument("--mode", choices=("oracle", "recursion", "both"), default="both")
    q.add_argument("--ambient-n", type=int, help="use 2^(n-r) in the recursion")

    gr = sub.add_parser("graph", help="graphic matroid tools").add_subparsers(
        dest="action", required=True, parser_class=_Parser)
    q = leaf(gr, "kcircuits", cmd_graph_kcircuits, "k-circuits of M(G)")
    q.add_argument("--graph", required=True)
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--relaxed", action="store_true")
    q = leaf(gr, "sumgraphic", cmd_graph_sumgraphic, "disjointness of k-circuits")
    q.add_argument("--graph", required=True)
    q.add_argument("--k", type=int, required=True)
    q = leaf(gr, "twoconn", cmd_graph_twoconn, "edge-wise 2-connectivity of an edge set")
    q.add_argument("--graph", required=True)
    q.add_argument("--edges", type=_int_list)
    q = leaf(gr, "dirgraph-check", cmd_graph_dirgraph_check, "MCB(r) against the r-copy criterion")
    q.add_argument("--graph", required=True)
    q.add_argument("--r", type=int, required=True)
    q = leaf(gr, "digraph", cmd_graph_digraph, "digraph of a set family")
    q.add_argument("--n", type=int, required=True)
    q.add_argument("--family", required=True, help="JSON file holding a list of subsets")
    q.add_argument("--covers", type=int, help="also list maximal-path covers by at most this many paths")
    return p


def _echo(argv) -> list:
    out, skip = [], False
    for tok in argv:
        if skip:
            skip = False
            continue
        name = tok.split("=", 1)[0]
        if name in _EXECUTION_FLAGS:
            skip = "=" not in tok and name != "--timing"
            continue
        out.append(tok)
    return out


def _table(obj, prefix="") -> list:
    lines = []
    if isinstance(obj, dict):
        for k in sorted(obj):
            lines += _table(obj[k], f"{prefix}{k}.")
    elif isinstance(obj, list) and any(isinstance(x, (dict, list)) for x in obj):
        for i, x in enumerate(obj):
            lines += _table(x, f"{prefix}{i}.")
    else:
        lines.append(f"{prefix[:-1]}\t{obj}")
    return lines


def _emit(report: dict, fmt: str):
    if fmt == "table":
        sys.stdout.write("\n".join(_table(report)) + "\n")
    else:
        sys.stdout.write(dumps(report))


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads < 1:
        parser.error("--threads must be at least 1")
    base = {"schema": SCHEMA, "version": __version__, "command": _echo(argv)}
    start = time.perf_counter()
    try:
        result, inputs = args.func(args)
        base["inputs"] = {str(f): sha256_file(f) for f in inputs}
        code = 0
    except (MatroidInputError, FileNotFoundError, IsADirectoryError, PermissionError) as e:
        result, code = {"error": {"type": type(e).__name__, "message": str(e)}}, 2
    except (ScopeError, ConventionMismatchError) as e:
        result, code = {"error": {"type": type(e).__name__, "message": str(e)}}, 3
    report = {**base, **result}
    if args.timing:
        report["wall_time_s"] = round(time.perf_counter() - start, 6)
    out = getattr(args, "output", None)
    if code == 0 and out:
        Path(out).write_text(dumps(result))
    _emit(report, args.format)
    return code


if __name__ == "__main__":
    sys.exit(main())
