"""Command-line front end: ``sierprod build | analyze | autos``.

Exit codes: 0 when every requested item was computed, 1 when some item
raised (overflow, bad input discovered late), 2 for usage and input errors.
"""

from __future__ import annotations

import argparse
import logging
import math
import re
import sys
from dataclasses import dataclass
from importlib.metadata import PackageNotFoundError, version
from pathlib import Path

from .analysis import (
    connecting_edge_cycle_check,
    diameter_bound,
    embedding_condition_report,
    genus_lower_bound,
    product_planarity,
)
from .errors import GraphError, SearchOverflow
from .graph import Graph, named
from .io import emit_dot, emit_edge_list, emit_graph6, emit_map_text, parse_edge_list, parse_graph6
from .metrics import diameter, girth, is_connected
from .planarity import is_planar
from .product import (
    ChainSpec,
    ProductResult,
    VertexMap,
    chain_product,
    predicted_counts,
)
from .report import RunReport, graph_digest, text_digest
from .scan import conjecture_scan
from .symmetry import non_respecting_witness, tilde_a, verify_decomposition

log = logging.getLogger("sierprod")

CHECKS = ("connectivity", "planarity", "girth", "diameter", "bounds", "cycles", "embedding")
DEFAULT_CHECKS = ("connectivity", "planarity", "girth", "diameter", "bounds")


def _version() -> str:
    try:
        return version("sierprod")
    except PackageNotFoundError:  # running from a source tree
        return "0+unknown"


class InputError(Exception):
    """Bad command-line input; reported with exit status 2."""


# -- input resolution -------------------------------------------------------------------


def load_graph(spec: str, base: int) -> tuple[Graph, str]:
    """A named graph (``K4``, ``C5``, ``2K3+e`` ...) or a file.

    Files ending in ``.g6`` are graph6, anything else is an edge list.
    Returns the graph and the text that was hashed for the report.
    """
    path = Path(spec)
    if path.is_file():
        text = path.read_text()
        g = parse_graph6(text) if path.suffix == ".g6" else parse_edge_list(text)
        return g, text
    try:
        g = named(spec, start=base)
    except GraphError:
        raise InputError(f"{spec!r} is neither a file nor a known graph name") from None
    return g, emit_edge_list(g)


def load_map(spec: str, source: Graph, target: Graph) -> tuple[VertexMap, str]:
    """``id``, ``modK`` (integer labels, ``i -> i mod K``) or a map file."""
    if spec == "id":
        f = VertexMap.identity(source, target)
        return f, "id"
    m = re.fullmatch(r"mod(\d+)", spec)
    if m:
        k = int(m.group(1))
        if k < 1:
            raise InputError("modK needs K >= 1")
        try:
            return VertexMap.modulo(source, target, k), spec
        except ValueError:
            raise InputError(f"{spec} needs integer vertex labels") from None
    path = Path(spec)
    if not path.is_file():
        raise InputError(f"{spec!r} is neither id, modK nor a map file")
    text = path.read_text()
    return VertexMap.parse(text, source, target), text


@dataclass
class Instance:
    product: ProductResult
    factors: list[Graph]
    maps: list[VertexMap]


def resolve(args, report: RunReport) -> Instance:
    """Build the product described by the factor arguments."""
    base = args.base
    if args.generalized is not None:
        if args.factors:
            raise InputError("give either factors or --generalized, not both")
        if args.n is None or args.n < 1:
            raise InputError("--generalized needs --n N with N >= 1")
        g, _ = load_graph(args.generalized, base)
        factors = [g] * args.n
        map_specs = ["id"] * (args.n - 1)
        specs = [args.generalized] * args.n
    else:
        if not args.factors:
            raise InputError("no factors given")
        loaded = [load_graph(s, base) for s in args.factors]
        factors = [g for g, _ in loaded]
        specs = list(args.factors)
        map_specs = list(args.maps or [])
        if args.map is not None:
            map_specs = [args.map] + map_specs
        map_specs = list(reversed(map_specs))  # given innermost first
        if len(map_specs) != len(factors) - 1:
            raise InputError(f"{len(factors)} factors need {len(factors) - 1} maps, "
                             f"got {len(map_specs)}")
    maps, map_texts = [], []
    for k, spec in enumerate(map_specs):
        f, text = load_map(spec, factors[k], factors[k + 1])
        maps.append(f)
        map_texts.append((spec, text))
    report.inputs = {
        "factors": [{"spec": s, "order": g.order, "size": g.size, "sha256": graph_digest(g)}
                    for s, g in zip(specs, factors)],
        "maps": [{"spec": s, "sha256": text_digest(t)} for s, t in reversed(map_texts)],
        "separator": args.separator,
    }
    with report.timed("construct"):
        p = chain_product(ChainSpec(tuple(factors), tuple(maps), args.separator))
    return Instance(p, factors, maps)


def _counts(inst: Instance) -> dict:
    order, size = predicted_counts(ChainSpec(tuple(inst.factors), tuple(inst.maps)))
    g = inst.product.graph
    return {"order": g.order, "size": g.size,
            "inner_edges": len(inst.product.inner_edges),
            "connecting_edges": len(inst.product.connecting_edges),
            "predicted": {"order": order, "size": size},
            "matches_prediction": (order, size) == (g.order, g.size)}


# -- build --------------------------------------------------------------------------------


def cmd_build(args, report: RunReport) -> str | None:
    inst = resolve(args, report)
    p = inst.product
    report.results["counts"] = _counts(inst)
    report.results["phi"] = p.phi
    if args.phi:
        Path(args.phi).write_text(emit_map_text(p.phi))
    if args.out == "json":
        report.results["graph"] = {
            "vertices": list(p.graph.labels),
            "edges": [[a, b, p.classify_edge(a, b)] for a, b in p.graph.edge_labels()],
        }
        return None
    text = {"edgelist": emit_edge_list, "graph6": lambda g: emit_graph6(g) + "\n",
            "dot": lambda g: emit_dot(g, p, name="product")}[args.out](p.graph)
    if args.output:
        Path(args.output).write_text(text)
        return None
    return text


# -- analyze -------------------------------------------------------------------------------


def _binary(inst: Instance) -> tuple[Graph, Graph, VertexMap] | None:
    if len(inst.factors) == 2:
        return inst.factors[0], inst.factors[1], inst.maps[0]
    return None


def _check_connectivity(inst: Instance) -> dict:
    factors = [is_connected(g) for g in inst.factors]
    prod_c = is_connected(inst.product.graph)
    return {"product_connected": prod_c, "factors_connected": factors,
            "claim": "product connected iff every factor connected",
            "claim_holds": prod_c == all(factors)}


def _check_planarity(inst: Instance) -> dict:
    pair = _binary(inst)
    if pair is not None and all(is_connected(g) for g in pair[:2]):
        verdict = product_planarity(*pair)
        out = verdict.to_dict()
        out["claim"] = "direct test agrees with factor-level planarity conditions"
        return out
    out = is_planar(inst.product.graph).to_dict()
    out["claim"] = "direct planarity test"
    return out


def _check_girth(inst: Instance) -> dict:
    return {"product_girth": girth(inst.product.graph),
            "factor_girths": [girth(g) for g in inst.factors]}


def _check_diameter(inst: Instance) -> dict:
    return {"product_diameter": diameter(inst.product.graph),
            "factor_diameters": [diameter(g) for g in inst.factors]}


def _check_bounds(inst: Instance, genus) -> dict:
    diams = [diameter(g) for g in reversed(inst.factors)]  # innermost first
    bound = diameter_bound(diams)
    measured = diameter(inst.product.graph)
    out = {
        "diameter_bound": bound,
        "diameter": measured,
        "diameter_bound_holds": (math.isinf(bound) or measured <= bound),
        "counts": _counts(inst),
    }
    pair = _binary(inst)
    if genus is not None:
        if pair is None:
            raise InputError("--genus applies to two-factor products")
        out["genus_lower_bound"] = genus_lower_bound(genus[0], pair[0].order, genus[1])
    return out


def _check_cycles(inst: Instance) -> dict:
    if len(inst.factors) < 2:
        return {"edges": [], "holds": True}
    return connecting_edge_cycle_check(inst.product)


def _check_embedding(inst: Instance) -> dict:
    pair = _binary(inst)
    if pair is None:
        raise InputError("the embedding check applies to two-factor products")
    rep = embedding_condition_report(*pair)
    rep["product_planar"] = is_planar(inst.product.graph).planar
    rep["agrees_with_direct_test"] = rep["holds"] == rep["product_planar"]
    return rep


def cmd_analyze(args, report: RunReport) -> None:
    inst = resolve(args, report)
    checks = [c.strip() for c in args.checks.split(",") if c.strip()]
    unknown = [c for c in checks if c not in CHECKS]
    if unknown:
        raise InputError(f"unknown checks {unknown}; choose from {', '.join(CHECKS)}")
    runners = {
        "connectivity": _check_connectivity, "planarity": _check_planarity,
        "girth": _check_girth, "diameter": _check_diameter,
        "bounds": lambda i: _check_bounds(i, args.genus),
        "cycles": _check_cycles, "embedding": _check_embedding,
    }
    for name in checks:
        try:
            with report.timed(name):
                report.results[name] = runners[name](inst)
        except (SearchOverflow, GraphError) as exc:
            report.error(name, exc)


# -- autos ------------------------------------------------------------------------------------


def _gens(group) -> list[str]:
    return [g.cycle_notation() for g in group.generators]


def cmd_autos(args, report: RunReport) -> None:
    if args.factors or args.generalized is not None:
        inst = resolve(args, report)
        pair = _binary(inst)
        if pair is None:
            raise InputError("autos needs exactly two factors")
        p = inst.product
        try:
            with report.timed("groups"):
                parts = tilde_a(p)
            res = {"orders": parts.orders(),
                   "tilde_equals_full": parts.tilde.order == parts.full.order,
                   "generators": {"full": _gens(parts.full), "tilde": _gens(parts.tilde),
                                  "hat_b": _gens(parts.hat_b)}}
            if parts.bar_a is not None:
                res["generators"]["bar_a"] = _gens(parts.bar_a)
            res["counterexample"] = non_respecting_witness(p, parts.full)
            report.results["automorphisms"] = res
        except SearchOverflow as exc:
            report.error("automorphisms", exc)
        if args.decompose:
            g, h, f = pair
            try:
                if not g.same_as(h):
                    raise GraphError("decomposition needs G = H")
                with report.timed("decompose"):
                    report.results["decomposition"] = verify_decomposition(g, f)
            except (SearchOverflow, GraphError) as exc:
                report.error("decomposition", exc)
    elif args.decompose:
        raise InputError("--decompose needs factors")
    if args.scan_max is not None:
        with report.timed("scan"):
            report.results["scan"] = conjecture_scan(args.scan_max, seed=args.seed)
    if not report.results and not report.errors:
        raise InputError("nothing to do: give factors or --scan-max")


# -- parser ---------------------------------------------------------------------------------


def _add_inputs(p: argparse.ArgumentParser) -> None:
    p.add_argument("factors", nargs="*",
                   help="factors outermost first: names (K4, C5, P3, K2,3, house, 2K3+e) "
                        "or files (.g6 for graph6, else edge list)")
    p.add_argument("--map", help="map for a two-factor product: id, modK or a map file")
    p.add_argument("--maps", nargs="+", metavar="MAP",
                   help="maps of a chain, innermost first (f_1 ... f_{m-1})")
    p.add_argument("--generalized", metavar="G", help="generalized Sierpinski graph of G")
    p.add_argument("--n", type=int, help="number of factors for --generalized")
    p.add_argument("--separator", default=".", help="joins factor labels (default '.')")
    p.add_argument("--base", type=int, default=1, help="first label of named graphs")
    p.add_argument("--no-timings", action="store_true", help="omit timings from the report")
    p.add_argument("--report", metavar="PATH", help="also write the JSON report here")
    p.add_argument("-v", "--verbose", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sierprod", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=_version())
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="construct a product and export it")
    _add_inputs(b)
    b.add_argument("--out", choices=("edgelist", "graph6", "dot", "json"), default="json")
    b.add_argument("-o", "--output", metavar="PATH", help="write the graph here")
    b.add_argument("--phi", metavar="PATH", help="write the embedding table here")

    a = sub.add_parser("analyze", help="structural checks on a product")
    _add_inputs(a)
    a.add_argument("--checks", default=",".join(DEFAULT_CHECKS),
                   help=f"comma list from {', '.join(CHECKS)}")
    a.add_argument("--genus", type=int, nargs=2, metavar=("GAMMA_G", "GAMMA_H"),
                   help="known genera of the factors, for the genus lower bound")

    s = sub.add_parser("autos", help="automorphism groups and the conjecture scan")
    _add_inputs(s)
    s.add_argument("--decompose", action="store_true",
                   help="check the semidirect decomposition (G = H, f an automorphism)")
    s.add_argument("--scan-max", type=int, metavar="N", help="scan all pairs up to N vertices")
    s.add_argument("--seed", type=int, default=0, help="seed for sampled maps in the scan")
    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    report = RunReport(command={"argv": argv, "subcommand": args.command,
                                "version": _version()},
                       include_timings=not args.no_timings)
    handler = {"build": cmd_build, "analyze": cmd_analyze, "autos": cmd_autos}[args.command]
    try:
        payload = handler(args, report)
    except InputError as exc:
        print(f"sierprod: error: {exc}", file=sys.stderr)
        return 2
    except (GraphError, OSError) as exc:
        print(f"sierprod: error: {exc}", file=sys.stderr)
        return 2
    except SearchOverflow as exc:
        report.error(args.command, exc)
        payload = None
    text = report.to_json()
    if args.report:
        Path(args.report).write_text(text)
    if payload is not None:
        sys.stdout.write(payload)
        c = report.results.get("counts", {})
        print(f"order={c.get('order')} size={c.get('size')}", file=sys.stderr)
    else:
        sys.stdout.write(text)
    for err in report.errors:
        print(f"sierprod: {err['item']}: {err['message']}", file=sys.stderr)
    return 0 if report.ok else 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
