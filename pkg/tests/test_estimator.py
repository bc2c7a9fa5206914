import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import make_pipeline
from sklearn.preprocessing import StandardScaler

from pathhom.corpus import build_digraph
from pathhom.digraph import digraph_to_json
from pathhom.estimator import PathHomology, as_digraph, check_digraphs


def sample():
    return [build_digraph(n) for n in ("T", "C3", "C4", "Q")]


def test_fit_transform():
    est = PathHomology(maxdim=2)
    X = est.fit_transform(sample())
    assert X.dtype == np.int64
    assert X.tolist() == [[1, 0, 0], [1, 1, 0], [1, 1, 0], [1, 0, 0]]
    assert list(est.get_feature_names_out()) == ["betti_0", "betti_1", "betti_2"]


def test_learned_maxdim_and_reduced():
    est = PathHomology(reduced=True).fit(sample())
    assert est.maxdim_ == 3 and est.degrees_[0] == -1
    assert est.transform([build_digraph("T")]).tolist() == [[0, 0, 0, 0, 0]]


def test_torsion_columns():
    est = PathHomology(maxdim=1, coeff="z", torsion=True).fit(sample())
    assert est.transform(sample()).shape == (4, 4)


def test_inputs_in_several_shapes():
    T = build_digraph("T")
    assert as_digraph(digraph_to_json(T)).edges == T.edges
    assert as_digraph([("s", "a"), ("a", "e")]).has_edge("a", "e")
    with pytest.raises(TypeError):
        as_digraph(3)
    with pytest.raises(ValueError):
        check_digraphs(T)
    with pytest.raises(ValueError):
        check_digraphs([])


def test_params_and_clone():
    est = PathHomology(maxdim=1, coeff="z")
    assert est.get_params() == {"maxdim": 1, "coeff": "z", "reduced": False, "torsion": False}
    twin = clone(est)
    assert twin.get_params() == est.get_params() and twin is not est


def test_validation():
    with pytest.raises(ValueError):
        PathHomology(coeff="r").fit(sample())
    with pytest.raises(ValueError):
        PathHomology(maxdim=-1).fit(sample())
    with pytest.raises(ValueError):
        PathHomology(torsion=True).fit(sample())
    with pytest.raises(NotFittedError):
        PathHomology().transform(sample())


def test_pipeline():
    pipe = make_pipeline(PathHomology(maxdim=1), StandardScaler())
    assert pipe.fit_transform(sample()).shape == (4, 2)
