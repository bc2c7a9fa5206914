"""The shipped example corpus: digraphs, defining chains and homotopy data.

Graphs of examples defined by a chain are generated as supp(P); the files
under ``fixtures/`` are produced by ``scripts/make_fixtures.py`` from the
definitions below, and the tests check that the two agree.
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path

from .chains import Chain, parse_chain_text
from .digraph import Digraph, parse_digraph_text, validate_digraph

FIXTURE_DIR = Path(str(resources.files("pathhom") / "fixtures"))

# Digraphs given by edge lists.
EDGE_LISTS: dict[str, list[tuple[str, str]]] = {
    "point": [],
    "I1": [("0", "1")],
    "T": [("s", "a"), ("a", "e"), ("s", "e")],
    "Q": [("s", "a"), ("a", "e"), ("s", "b"), ("b", "e")],
    "G1": [("0", "1"), ("1", "3"), ("0", "2"), ("2", "3"), ("0", "3")],
    "G2": [("0", "1"), ("0", "2"), ("0", "3"), ("1", "4"), ("2", "4"), ("3", "4")],
    "C3": [("0", "1"), ("1", "2"), ("2", "0")],
    "C4": [("0", "1"), ("1", "2"), ("2", "3"), ("3", "0")],
    "simplex3": [(str(i), str(j)) for i in range(4) for j in range(i + 1, 4)],
    "chain012": [("0", "1"), ("1", "2")],
}

# Defining chains; for names not in EDGE_LISTS the digraph is supp(P).
CHAINS: dict[str, str] = {
    "simplex3": "+1 [0 1 2 3]",
    "G2": "+1 [0 1 4] -2 [0 2 4] +1 [0 3 4]",
    "G1": "+1 [0 1 3] -1 [0 2 3]",
    "ex0123": "+1 [0 1 2 3]",
    "ex0134": "+1 [0 1 3 4] -1 [0 2 3 4]",
    "ex0135": "+1 [0 1 3 5] -1 [0 2 3 5] +1 [0 2 4 5]",
    "ex0136": "+1 [0 1 3 6] -1 [0 1 4 6] -1 [0 2 3 6] +1 [0 2 5 6]",
    "ex012345": "+1 [0 1 3 5] -1 [0 1 4 5] +1 [0 2 4 5] -1 [0 2 3 5]",
    "exfsfe1": "+1 [0 1 3 6] -1 [0 1 5 6] +1 [0 4 5 6] +1 [0 2 4 6] -1 [0 2 3 6]",
    "cube": "+1 [0 1 3 7] -1 [0 2 3 7] +1 [0 2 6 7] -1 [0 4 6 7] +1 [0 4 5 7] -1 [0 1 5 7]",
    "noncontract": "+1 [0 1 3 7] -1 [0 2 3 7] +1 [0 2 6 7] -1 [0 1 5 7] +1 [0 4 5 7]",
    "xcube": "+1 [0 2 5 8] -1 [0 1 5 8] -1 [0 2 6 8] +1 [0 3 6 8] -1 [0 3 7 8] +1 [0 4 7 8]",
    "more1": ("+1 [S 0 5 E] -1 [S 1 5 E] +1 [S 1 7 E] -1 [S 3 7 E] +1 [S 3 9 E] "
              "-1 [S 4 9 E] +1 [S 4 8 E] -1 [S 2 8 E] +1 [S 2 6 E] -1 [S 0 6 E]"),
    "more2": ("+1 [S 0 6 E] -1 [S 1 6 E] +1 [S 1 7 E] -1 [S 2 7 E] +1 [S 2 8 E] "
              "-1 [S 3 8 E] +1 [S 3 9 E] -1 [S 4 9 E] +1 [S 4 10 E] -1 [S 5 10 E]"),
    "len4": ("+1 [S 1 5 9 E] -1 [S 1 6 9 E] +1 [S 2 6 9 E] "
             "+1 [S 1 6 10 E] -1 [S 2 6 10 E] +1 [S 2 7 10 E] -1 [S 3 7 10 E] "
             "-1 [S 2 7 11 E] +1 [S 3 7 11 E] -1 [S 2 8 11 E] +1 [S 4 8 11 E]"),
    "sabcdee": "+1 [S a c E] -1 [S a e E] +1 [S d e E] +1 [S b d E] -1 [S b c E]",
}

# Minimal paths of length 3 or more whose supports form the examples.
SUPPORT_EXAMPLES = ["ex0123", "ex0134", "ex0135", "ex0136", "ex012345", "exfsfe1",
                    "cube", "noncontract", "xcube", "more1", "more2", "sabcdee", "len4"]

# Retractions r given by their non-identity values; the target is the
# subgraph induced on the image.
RETRACTIONS: dict[str, dict[str, dict[str, str]]] = {
    "ex0123": {"r": {"3": "2"}},
    "ex0134": {"r": {"4": "3"}},
    "ex0135": {"r1": {"5": "3", "4": "2"}, "r2": {"5": "4", "3": "2", "1": "0"}},
    "ex0136": {"r1": {"6": "3", "5": "2", "4": "1"},
               "r2": {"6": "4", "3": "1", "5": "0", "2": "0"},
               "r3": {"1": "4", "2": "5", "3": "6"},
               "r4": {"0": "1", "2": "3", "5": "3"}},
    "ex012345": {"r": {"5": "3", "4": "3"}},
    "exfsfe1": {"r1": {"6": "5", "3": "1", "2": "0"},
                "r2": {"6": "4", "5": "4", "3": "2", "1": "0"}},
}

# Explicit homotopies F(v, k) between the identity and i o r, as rows
# k = 1..n over the vertices in natural order.
HOMOTOPIES: dict[str, dict] = {
    "ex012345": {"retraction": "r", "line": "--+",
                 "rows": [["0", "1", "0", "1", "1", "3"],
                          ["0", "1", "0", "1", "1", "1"],
                          ["0", "1", "2", "3", "3", "3"]]},
    "ex0136": {"retraction": "r4", "line": "-+-",
               "rows": [["0", "1", "2", "3", "1", "2", "3"],
                        ["1", "4", "3", "6", "4", "3", "6"],
                        ["1", "1", "3", "3", "4", "3", "6"]]},
}


def chain_of(name: str) -> Chain:
    return parse_chain_text(CHAINS[name])


def build_digraph(name: str) -> Digraph:
    """Construct a corpus digraph from its definition (not from disk)."""
    if name in EDGE_LISTS:
        verts = ["0"] if name == "point" else []
        return validate_digraph(verts, EDGE_LISTS[name], name=name)
    from .minimal import supp

    return supp(chain_of(name), name=name)


def names() -> list[str]:
    return list(EDGE_LISTS) + [n for n in CHAINS if n not in EDGE_LISTS]


def load_fixture(name: str) -> Digraph:
    path = FIXTURE_DIR / f"{name}.dg"
    return parse_digraph_text(path.read_text(), name=name)


def load_fixture_chain(name: str) -> Chain:
    path = FIXTURE_DIR / f"{name}_P.chain"
    return parse_chain_text(path.read_text())
