"""Regenerate the fixture corpus under src/pathhom/fixtures.

Digraphs defined by a chain are written as the supp closure of that chain,
so their edge sets are forced rather than typed by hand.
"""

import argparse
import json
from pathlib import Path

from pathhom.chains import format_chain_text
from pathhom.corpus import CHAINS, HOMOTOPIES, RETRACTIONS, build_digraph, chain_of, names
from pathhom.digraph import VertexMap, digraph_to_json, format_digraph_text
from pathhom.homotopy import format_homotopy, format_vertex_map, homotopy_from_rows, \
    retraction_from_values

NOTE = "# generated by scripts/make_fixtures.py"


def write_all(out: Path) -> list[str]:
    out.mkdir(parents=True, exist_ok=True)
    written = []

    def put(fname, text):
        (out / fname).write_text(text)
        written.append(fname)

    for name in names():
        G = build_digraph(name)
        origin = "supp closure of the defining chain" if name not in {
            "point", "I1", "T", "Q", "G1", "G2", "C3", "C4", "simplex3", "chain012"} \
            else "edge list"
        put(f"{name}.dg", f"{NOTE} ({origin})\n" + format_digraph_text(G))
        put(f"{name}.json", json.dumps(digraph_to_json(G), indent=1) + "\n")
        if name in CHAINS:
            put(f"{name}_P.chain", format_chain_text(chain_of(name)) + "\n")
    for name, maps in RETRACTIONS.items():
        G = build_digraph(name)
        for rname, values in maps.items():
            r, _ = retraction_from_values(G, values)
            put(f"{name}_{rname}.map", format_vertex_map(VertexMap(G, G, dict(r.assignment))))
    for name, spec in HOMOTOPIES.items():
        G = build_digraph(name)
        r, _ = retraction_from_values(G, RETRACTIONS[name][spec["retraction"]])
        ident = VertexMap.identity(G)
        ir = VertexMap(G, G, dict(r.assignment))
        w = homotopy_from_rows(G, G, ident, ir, spec["line"], spec["rows"])
        put(f"{name}_{spec['retraction']}.hom", format_homotopy(w))
    return written


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path,
                    default=Path(__file__).resolve().parent.parent / "src" / "pathhom" / "fixtures")
    args = ap.parse_args()
    files = write_all(args.out)
    print(f"wrote {len(files)} files to {args.out}")


if __name__ == "__main__":
    main()
