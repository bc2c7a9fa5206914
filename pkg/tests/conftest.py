import os

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from pathhom.chains import Chain, Form, _allowed_basis
from pathhom.digraph import validate_digraph

settings.register_profile(
    "default", deadline=None, suppress_health_check=[HealthCheck.too_slow], derandomize=True
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@st.composite
def digraphs(draw, max_vertices=6, min_vertices=1):
    n = draw(st.integers(min_vertices, max_vertices))
    verts = [str(i) for i in range(n)]
    pairs = [(u, v) for u in verts for v in verts if u != v]
    mask = draw(st.lists(st.booleans(), min_size=len(pairs), max_size=len(pairs)))
    return validate_digraph(verts, [e for e, keep in zip(pairs, mask) if keep], name="h")


@st.composite
def allowed_chains(draw, G, dim, cls=Chain, max_terms=4):
    paths = _allowed_basis(G, dim)
    if not paths:
        return cls.zero(dim)
    chosen = draw(st.lists(st.sampled_from(paths), max_size=max_terms, unique=True))
    coeffs = draw(st.lists(st.integers(-3, 3), min_size=len(chosen), max_size=len(chosen)))
    return cls(dim, list(zip(chosen, coeffs)))


@st.composite
def free_chains(draw, vertices="01234", max_dim=3, cls=Chain, dim=None):
    if dim is None:
        dim = draw(st.integers(0, max_dim))
    path = st.permutations(list(vertices)).map(lambda p: tuple(p[:dim + 1]))
    terms = draw(st.lists(st.tuples(path, st.integers(-3, 3)), max_size=5))
    return cls(dim, terms)


def random_form(rng, G, dim):
    paths = _allowed_basis(G, dim)
    picks = rng.sample(paths, min(3, len(paths))) if paths else []
    return Form(dim, [(p, rng.randint(-2, 2)) for p in picks])


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not getattr(mod, "RESULTS", None):
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
