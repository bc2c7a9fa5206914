"""Command-line front end.

Exit status is 0 when the command succeeds or the checked property holds,
1 when a property fails (the counterexample goes to standard output) and 2
on bad input.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from fractions import Fraction
from pathlib import Path

from .chains import Chain, Form, chain_from_json, chain_to_json, format_chain_text, \
    parse_chain_text
from .digraph import (
    Digraph,
    cartesian_product,
    digraph_from_json,
    digraph_to_json,
    format_digraph_text,
    induced_subgraph,
    is_isomorphic,
    strong_product,
    transitive_closure,
)
from .errors import InputError, ParseError, PathHomError, PropertyFailure, UnknownVertex
from .homology import HomologyResult, cohomology, homology, kunneth_check, mv_les_verify, \
    mv_pair_check
from .homotopy import (
    check_digraph_map,
    check_homotopy,
    check_retraction,
    map_violations,
    parse_homotopy,
    parse_vertex_map,
)
from .minimal import (
    SplitRecord,
    StructureReport,
    acyclic_certify,
    augment_split,
    enumerate_minimal,
    is_minimal,
    minimal_decompose,
    split_at,
    structure_decompose,
    supp,
)
from .omega import build_complex, format_basis_dump
from .products import (
    build_chain_homotopy,
    cross_product,
    cup,
    diagonal,
    skew_check,
    star_product,
    verify_chain_homotopy,
)

__all__ = ["load_digraph", "load_chain", "build_parser", "run", "main"]


def load_digraph(path: str | Path) -> Digraph:
    """Read a digraph in text or JSON format, chosen by file extension."""
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if path.suffix == ".json":
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(exc.lineno, exc.msg) from exc
        return digraph_from_json(obj)
    from .digraph import parse_digraph_text

    return parse_digraph_text(text, name=path.stem)


def load_chain(path: str | Path, G: Digraph | None = None, dim: int | None = None,
               form: bool = False) -> Chain:
    """Read a chain (or form) in text or JSON format and check its vertices."""
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if path.suffix == ".json":
        try:
            c = chain_from_json(json.loads(text))
        except json.JSONDecodeError as exc:
            raise ParseError(exc.lineno, exc.msg) from exc
        if form and not isinstance(c, Form):
            c = Form(c.dim, c.items())
    else:
        c = parse_chain_text(text, dim=dim, cls=Form if form else Chain)
    if G is not None:
        for p in c.paths():
            for v in p:
                if v not in G:
                    raise UnknownVertex(v)
    return c


# -- report plumbing ------------------------------------------------------------------

def plain(obj):
    """Turn results into JSON-ready values."""
    if isinstance(obj, Chain):
        return chain_to_json(obj)
    if isinstance(obj, Digraph):
        return digraph_to_json(obj)
    if isinstance(obj, (HomologyResult, StructureReport)):
        return obj.to_json()
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {f.name: plain(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    if isinstance(obj, Fraction):
        return obj.numerator if obj.denominator == 1 else str(obj)
    if isinstance(obj, dict):
        return {k if isinstance(k, str) else str(k): plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [plain(x) for x in obj]
    if isinstance(obj, (set, frozenset)):
        return sorted(plain(x) for x in obj)
    return obj


def _chain_lines(chains) -> str:
    return "\n".join(format_chain_text(c) or "0" for c in chains)


def _homology_text(res: HomologyResult) -> str:
    lines = []
    for n in res.degrees():
        parts = []
        if res.betti[n]:
            parts.append(f"{'Z' if res.coeff == 'z' else 'Q'}^{res.betti[n]}")
        parts += [f"Z/{d}" for d in res.torsion[n]]
        lines.append(f"H_{n} = {' + '.join(parts) if parts else '0'}")
    return "\n".join(lines)


class Outcome:
    def __init__(self, payload, text: str, status: int = 0):
        self.payload, self.text, self.status = payload, text, status


# -- subcommand handlers -------------------------------------------------------------

def _graph_and_chain(args, form: bool = False):
    G = load_digraph(args.graph)
    return G, load_chain(args.chain, G, args.dim if hasattr(args, "dim") else None, form)


def cmd_homology(args):
    G = load_digraph(args.graph)
    build_to = None if args.maxdim is None else args.maxdim + 1
    cx = build_complex(G, build_to, reduced=args.reduced)
    res = homology(cx, args.coeff, args.maxdim)
    return Outcome(res, _homology_text(res))


def cmd_cohomology(args):
    G = load_digraph(args.graph)
    res = cohomology(G, args.maxdim)
    text = "\n".join(f"H^{n} rank {r}" for n, r in enumerate(res["ranks"]))
    return Outcome(res, text)


def cmd_omega(args):
    G = load_digraph(args.graph)
    cx = build_complex(G, args.maxdim, reduced=args.reduced)
    return Outcome({"ranks": cx.ranks(), "bases": {n: cx.bases[n] for n in sorted(cx.bases)}},
                   format_basis_dump(cx).rstrip("\n"))


def cmd_minimal(args):
    G = load_digraph(args.graph)
    found = enumerate_minimal(G, args.dim, args.start, args.end, args.coeff_bound)
    return Outcome(found, _chain_lines(found))


def cmd_is_minimal(args):
    G, P = _graph_and_chain(args)
    ok, witness = is_minimal(G, P)
    if ok:
        return Outcome({"minimal": True}, "minimal")
    return Outcome({"minimal": False, "witness": witness},
                   f"not minimal; smaller invariant chain: {format_chain_text(witness)}", 1)


def cmd_decompose(args):
    G, P = _graph_and_chain(args)
    parts = minimal_decompose(G, P)
    return Outcome(parts, _chain_lines(parts))


def cmd_supp(args):
    G, P = _graph_and_chain(args)
    H = supp(P)
    return Outcome(H, format_digraph_text(H).rstrip("\n"))


def cmd_structure(args):
    G, P = _graph_and_chain(args)
    rep = structure_decompose(G, P, strict=True, with_part2=args.part2)
    lines = [f"S={rep.start} E={rep.end} n={rep.n}"]
    lines += [f"A[{k}]: {format_chain_text(c)}" for k, c in rep.family_A.items()]
    lines += [f"B[{k}]: {format_chain_text(c)}" for k, c in rep.family_B.items()]
    lines.append(f"C: {format_chain_text(rep.family_C) if rep.family_C else 'absent'}")
    return Outcome(rep, "\n".join(lines))


def cmd_acyclic(args):
    G, P = _graph_and_chain(args)
    res = acyclic_certify(G, P)
    text = ("supp(P) has zero reduced homology" if res["acyclic"]
            else "supp(P) is NOT acyclic\n" + _homology_text(res["homology"]))
    return Outcome(res, text, 0 if res["acyclic"] else 1)


def _split_text(rec: SplitRecord) -> str:
    if rec.checks.get("trivial"):
        return "trivial split: E_1 has fewer than two vertices"
    return "\n".join([f"alpha={rec.alpha}",
                      "added edges: " + ", ".join(f"{a}->{b}" for a, b in rec.added_edges),
                      f"P1: {format_chain_text(rec.P1)}", f"P2: {format_chain_text(rec.P2)}",
                      "Z edges: " + ", ".join(f"{a}->{b}" for a, b in rec.Z.sorted_edges())])


def cmd_augment_split(args):
    G, P = _graph_and_chain(args)
    if args.alpha is None:
        rec = augment_split(P, G, args.maxdim)
    else:
        rec, reason = split_at(P, args.alpha, args.maxdim)
        if rec is None:
            return Outcome({"split": None, "reason": reason}, f"no split: {reason}", 1)
    payload = {"split": rec}
    text = _split_text(rec)
    if args.les and not rec.checks.get("trivial"):
        les = mv_les_verify(rec.augmented, rec.Y1, rec.Y2, args.maxdim)
        payload["les"] = les
        text += "\nMayer-Vietoris sequence exact"
    return Outcome(payload, text)


def cmd_product(args):
    G, H = load_digraph(args.graph), load_digraph(args.other)
    P = cartesian_product(G, H) if args.kind == "cartesian" else strong_product(G, H)
    return Outcome(P, format_digraph_text(P).rstrip("\n"))


def cmd_closure(args):
    C = transitive_closure(load_digraph(args.graph))
    return Outcome(C, format_digraph_text(C).rstrip("\n"))


def cmd_iso(args):
    ok, bij = is_isomorphic(load_digraph(args.graph), load_digraph(args.other))
    text = "isomorphic: " + ", ".join(f"{a}->{b}" for a, b in bij.items()) if ok \
        else "not isomorphic"
    return Outcome({"isomorphic": ok, "bijection": bij}, text, 0 if ok else 1)


def _two_factor(args, form: bool):
    G, H = load_digraph(args.graph), load_digraph(args.other)
    return load_chain(args.left, G, form=form), load_chain(args.right, H, form=form)


def cmd_cross(args):
    u, v = _two_factor(args, False)
    c = cross_product(u, v)
    return Outcome(c, format_chain_text(c) or "0")


def cmd_star(args):
    a, b = _two_factor(args, True)
    c = star_product(a, b)
    return Outcome(c, format_chain_text(c) or "0")


def cmd_cup(args):
    G = load_digraph(args.graph)
    a, b = load_chain(args.left, G, form=True), load_chain(args.right, G, form=True)
    c = cup(a, b)
    return Outcome(c, format_chain_text(c) or "0")


def cmd_diagonal(args):
    G, u = _graph_and_chain(args)
    c = diagonal(u, transposed=args.transposed, G=G)
    return Outcome(c, format_chain_text(c) or "0")


def cmd_chain_homotopy(args):
    G = load_digraph(args.graph)
    F = build_chain_homotopy(G, 3 if args.maxdim is None else args.maxdim)
    ok = verify_chain_homotopy(F)
    payload = {"verified": ok, "base_edge": F.base_edge,
               "degrees": [{"n": n, "basis": F.bases[n], "images": F.images[n]}
                           for n in sorted(F.bases)]}
    text = F.dump() + ("identity verified" if ok else "identity FAILED")
    return Outcome(payload, text, 0 if ok else 1)


def cmd_skew_check(args):
    G = load_digraph(args.graph)
    rep = skew_check(G, args.p, args.q)
    text = (f"H^{args.p} rank {rep['ranks']['H^p']}, H^{args.q} rank {rep['ranks']['H^q']}, "
            f"H^{args.p + args.q} rank {rep['ranks']['H^p+q']}\n"
            + "\n".join(f"({r['phi']},{r['psi']}): "
                        + ("coboundary of " + r["witness"] if r["coboundary"] else "NOT a coboundary")
                        for r in rep["pairs"]))
    return Outcome(rep, text, 0 if rep["holds"] else 1)


def cmd_map_check(args):
    G, H = load_digraph(args.graph), load_digraph(args.other)
    m = parse_vertex_map(Path(args.map).read_text(), G, H)
    bad = map_violations(m)
    if not bad:
        return Outcome({"digraph_map": True}, "digraph map")
    return Outcome({"digraph_map": False, "violations": bad},
                   "not a digraph map; edges: " + ", ".join(f"{a}->{b}" for a, b in bad), 1)


def cmd_homotopy_check(args):
    G, H = load_digraph(args.graph), load_digraph(args.other)
    w = parse_homotopy(Path(args.homotopy).read_text(), G, H)
    ok = check_homotopy(w)
    return Outcome({"homotopy": ok, "line": w.line},
                   f"homotopy along line {w.line} " + ("verified" if ok else "FAILED"),
                   0 if ok else 1)


def cmd_retract_check(args):
    G = load_digraph(args.graph)
    self_map = parse_vertex_map(Path(args.map).read_text(), G, G)
    H = induced_subgraph(G, set(self_map.assignment.values()), name=f"{G.name}_r")
    from .digraph import VertexMap

    r = VertexMap(G, H, dict(self_map.assignment))
    seq = [parse_vertex_map(Path(p).read_text(), G, G) for p in args.sequence or []]
    ok = check_retraction(G, H, r, mode="sequence" if seq else "one_step", sequence=seq or None)
    return Outcome({"deformation_retraction": ok, "target": H},
                   "deformation retraction" + ("" if ok else " NOT certified"), 0 if ok else 1)


def _cover(args):
    return load_digraph(args.graph), load_digraph(args.first), load_digraph(args.second)


def cmd_mv_check(args):
    X, Y1, Y2 = _cover(args)
    rep = mv_pair_check(X, Y1, Y2, args.maxdim)
    return Outcome(rep, "Mayer-Vietoris pair verified")


def cmd_mv_les(args):
    X, Y1, Y2 = _cover(args)
    rep = mv_les_verify(X, Y1, Y2, args.maxdim)
    lines = [f"{p['node']}: dim {p['dim']}, in {p['rank_in']}, out {p['rank_out']}"
             for p in rep["positions"]]
    return Outcome(rep, "\n".join(lines + ["sequence exact"]))


def cmd_kunneth(args):
    rep = kunneth_check(load_digraph(args.graph), load_digraph(args.other),
                        3 if args.maxdim is None else args.maxdim)
    text = f"product {rep['product']} convolution {rep['convolution']}"
    return Outcome(rep, text, 0 if rep["holds"] else 1)


def _cmd_fuzz(kind):
    def handler(args):
        from .fuzz import fuzz

        rep = fuzz(kind, args.graphs, args.seed, args.max_vertices, args.edge_prob,
                   3 if args.maxdim is None else args.maxdim, getattr(args, "wide", False))
        text = (f"seed {rep.seed}: {rep.graphs} digraphs, {rep.minimal_paths} minimal paths, "
                f"{len(rep.counterexamples)} counterexamples")
        for ce in rep.counterexamples:
            text += f"\n-- trial {ce['trial']}\n{ce['digraph']}" + "\n".join(
                f"{v['check']}: {v['chain']}" for v in ce["violations"])
        return Outcome(rep, text, 0 if rep.ok else 1)
    return handler


# -- parser ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["human", "json"], default="human")
    common.add_argument("--maxdim", type=int, default=None)
    common.add_argument("--coeff", choices=["z", "q"], default="z")
    common.add_argument("--reduced", action="store_true")
    common.add_argument("--seed", type=int, default=0)

    ap = argparse.ArgumentParser(prog="pathhom", description="Path homology of digraphs.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, handler, *positional, help=None):
        p = sub.add_parser(name, parents=[common], help=help)
        for arg in positional:
            p.add_argument(arg)
        p.set_defaults(handler=handler)
        return p

    add("homology", cmd_homology, "graph", help="integer or rational path homology")
    add("cohomology", cmd_cohomology, "graph", help="cohomology ranks by two routes")
    add("omega", cmd_omega, "graph", help="dump the Omega bases")
    p = add("minimal", cmd_minimal, "graph", help="enumerate minimal paths")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--start")
    p.add_argument("--end")
    p.add_argument("--coeff-bound", type=int, default=1)
    for name, h, hlp in (("is-minimal", cmd_is_minimal, "test minimality"),
                         ("decompose", cmd_decompose, "split into minimal paths"),
                         ("supp", cmd_supp, "supporting digraph"),
                         ("structure", cmd_structure, "three-family boundary decomposition"),
                         ("acyclic", cmd_acyclic, "reduced homology of the support"),
                         ("diagonal", cmd_diagonal, "diagonal approximation")):
        p = add(name, h, "graph", "chain", help=hlp)
        p.add_argument("--dim", type=int, default=None, help="declared chain dimension")
    sub.choices["structure"].add_argument("--part2", action="store_true")
    sub.choices["diagonal"].add_argument("--transposed", action="store_true")
    p = add("augment-split", cmd_augment_split, "graph", "chain", help="augment and split")
    p.add_argument("--alpha")
    p.add_argument("--les", action="store_true", help="also verify the long exact sequence")
    p.add_argument("--dim", type=int, default=None)
    p = add("product", cmd_product, "graph", "other", help="graph product")
    p.add_argument("--kind", choices=["cartesian", "strong"], default="cartesian")
    add("closure", cmd_closure, "graph", help="transitive closure")
    add("iso", cmd_iso, "graph", "other", help="isomorphism test")
    add("cross", cmd_cross, "graph", "other", "left", "right", help="cross product of chains")
    add("star", cmd_star, "graph", "other", "left", "right", help="star product of forms")
    add("cup", cmd_cup, "graph", "left", "right", help="cup product of forms")
    add("chain-homotopy", cmd_chain_homotopy, "graph", help="build and verify F")
    p = add("skew-check", cmd_skew_check, "graph", help="graded commutativity of cup")
    p.add_argument("--p", type=int, default=1)
    p.add_argument("--q", type=int, default=1)
    add("map-check", cmd_map_check, "graph", "other", "map", help="digraph map test")
    add("homotopy-check", cmd_homotopy_check, "graph", "other", "homotopy",
        help="verify a line-digraph homotopy")
    p = add("retract-check", cmd_retract_check, "graph", "map", help="deformation retraction")
    p.add_argument("--sequence", nargs="+", help="maps f_0..f_n for the n-step criterion")
    add("mv-check", cmd_mv_check, "graph", "first", "second", help="Mayer-Vietoris pair")
    add("mv-les", cmd_mv_les, "graph", "first", "second", help="long exact sequence")
    add("kunneth", cmd_kunneth, "graph", "other", help="Kunneth formula for the box product")
    for kind in ("structure", "acyclic"):
        p = add(f"fuzz-{kind}", _cmd_fuzz(kind), help=f"random search against the {kind} checks")
        p.add_argument("--graphs", type=int, default=1000)
        p.add_argument("--max-vertices", type=int, default=7)
        p.add_argument("--edge-prob", type=float, default=0.3)
    sub.choices["fuzz-structure"].add_argument("--wide", action="store_true",
                                               help="allow coefficients up to 2")
    return ap


def run(args: argparse.Namespace, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    if args.maxdim is not None and args.maxdim < 0:
        print("error: --maxdim must be nonnegative", file=err)
        return 2
    try:
        result = args.handler(args)
    except PropertyFailure as exc:
        if args.format == "json":
            print(json.dumps({"ok": False, "error": type(exc).__name__, "message": str(exc),
                              "detail": plain(exc.detail)}, indent=1), file=out)
        else:
            print(f"{type(exc).__name__}: {exc}", file=out)
            if exc.detail is not None:
                print(json.dumps(plain(exc.detail), indent=1), file=out)
        return 1
    except (InputError, OSError, PathHomError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=err)
        return 2
    if args.format == "json":
        print(json.dumps(plain(result.payload), indent=1), file=out)
    else:
        print(result.text, file=out)
    return result.status


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command.startswith("fuzz-"):
        print(f"seed {args.seed}", file=sys.stderr)
    return run(args)


if __name__ == "__main__":
    sys.exit(main())
