"""scikit-learn style transformer turning digraphs into Betti-number features."""

from __future__ import annotations

from collections.abc import Iterable, Mapping

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .digraph import Digraph, digraph_from_json, validate_digraph
from .homology import homology
from .omega import build_complex

__all__ = ["as_digraph", "check_digraphs", "PathHomology"]


def as_digraph(obj) -> Digraph:
    """Accept a Digraph, a JSON-style mapping, or an iterable of edge pairs."""
    if isinstance(obj, Digraph):
        return obj
    if isinstance(obj, Mapping):
        return digraph_from_json(dict(obj))
    if isinstance(obj, Iterable) and not isinstance(obj, (str, bytes)):
        edges = [tuple(e) for e in obj]
        if any(len(e) != 2 for e in edges):
            raise ValueError("edge lists must contain (source, target) pairs")
        return validate_digraph([], [(str(u), str(v)) for u, v in edges])
    raise TypeError(f"cannot interpret {type(obj).__name__} as a digraph")


def check_digraphs(X) -> list[Digraph]:
    """Validate a sample of digraphs; a single digraph is rejected."""
    if isinstance(X, (Digraph, Mapping, str, bytes)):
        raise ValueError("expected a sequence of digraphs, got a single object")
    graphs = [as_digraph(g) for g in X]
    if not graphs:
        raise ValueError("at least one digraph is required")
    return graphs


class PathHomology(BaseEstimator, TransformerMixin):
    """Map each digraph to its Betti numbers in degrees 0..maxdim.

    With ``maxdim=None`` the top degree is learned in ``fit`` as the largest
    vertex count minus one over the training sample. Reduced homology adds
    a leading degree -1 column.
    """

    def __init__(self, maxdim=None, coeff="q", reduced=False, torsion=False):
        self.maxdim = maxdim
        self.coeff = coeff
        self.reduced = reduced
        self.torsion = torsion

    def _validate_params(self):
        if self.coeff not in ("z", "q"):
            raise ValueError(f"coeff must be 'z' or 'q', got {self.coeff!r}")
        if self.maxdim is not None and (not isinstance(self.maxdim, int) or self.maxdim < 0):
            raise ValueError("maxdim must be a nonnegative integer or None")
        if self.torsion and self.coeff != "z":
            raise ValueError("torsion counts need integer coefficients")

    def fit(self, X, y=None):
        self._validate_params()
        graphs = check_digraphs(X)
        if self.maxdim is None:
            self.maxdim_ = max(max(len(g.vertices) - 1, 0) for g in graphs)
        else:
            self.maxdim_ = self.maxdim
        low = -1 if self.reduced else 0
        self.degrees_ = list(range(low, self.maxdim_ + 1))
        names = [f"betti_{n}" for n in self.degrees_]
        if self.torsion:
            names += [f"torsion_{n}" for n in self.degrees_]
        self.feature_names_out_ = np.array(names, dtype=object)
        self.n_features_out_ = len(names)
        return self

    def _row(self, G: Digraph) -> list[int]:
        cx = build_complex(G, self.maxdim_ + 1, reduced=self.reduced)
        res = homology(cx, self.coeff, self.maxdim_)
        row = [res.betti.get(n, 0) for n in self.degrees_]
        if self.torsion:
            row += [len(res.torsion.get(n, [])) for n in self.degrees_]
        return row

    def transform(self, X):
        check_is_fitted(self, "degrees_")
        graphs = check_digraphs(X)
        return np.array([self._row(G) for G in graphs], dtype=np.int64)

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self, "feature_names_out_")
        return self.feature_names_out_.copy()
