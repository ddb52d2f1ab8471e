"""Scikit-learn facade over the distance-based classifier.

``StandardizeNormalize`` reproduces the data-preparation step as a
transformer, and ``QuantumDistanceClassifier`` exposes the closed-form
classifier through the usual ``fit`` / ``predict`` / ``predict_proba``
surface, so both compose with pipelines, grid search, and cross-validation.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted, check_X_y

from .quantum import NORM_ATOL


class StandardizeNormalize(TransformerMixin, BaseEstimator):
    """Z-score each feature (population std), then scale each row to unit norm."""

    def fit(self, X, y=None):
        X = check_array(X, dtype=np.float64)
        if X.shape[0] < 2:
            raise ValueError("fit needs at least two rows")
        scale = X.std(axis=0)
        if np.any(scale == 0.0):
            raise ValueError("zero-variance feature column")
        self.mean_ = X.mean(axis=0)
        self.scale_ = scale
        self.n_features_in_ = X.shape[1]
        return self

    def transform(self, X):
        check_is_fitted(self, "mean_")
        X = check_array(X, dtype=np.float64)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(
                f"X has {X.shape[1]} features, expected {self.n_features_in_}"
            )
        z = (X - self.mean_) / self.scale_
        norms = np.linalg.norm(z, axis=1)
        if np.any(norms == 0.0):
            raise ValueError("a standardized row has zero norm")
        return z / norms[:, None]


class QuantumDistanceClassifier(ClassifierMixin, BaseEstimator):
    """Binary classifier scoring by interference weights of unit feature vectors.

    Training rows act as reference points; a query is assigned the class whose
    points sit closer on the unit sphere, with per-class probabilities given
    by the post-selected weights ``|x + x_m|^2``. Rows are normalized to unit
    length during ``fit`` and ``predict`` unless ``normalize=False``, in which
    case unit norm is required.

    ``predict_proba`` columns follow ``classes_`` (sorted); exact ties resolve
    to ``classes_[0]``.
    """

    def __init__(self, normalize: bool = True):
        self.normalize = normalize

    def _prepare_rows(self, X) -> np.ndarray:
        X = check_array(X, dtype=np.float64)
        norms = np.linalg.norm(X, axis=1)
        if self.normalize:
            if np.any(norms == 0.0):
                raise ValueError("cannot normalize zero rows")
            return X / norms[:, None]
        if np.abs(norms - 1.0).max() > NORM_ATOL:
            raise ValueError(
                "rows must have unit norm; pass normalize=True or use "
                "StandardizeNormalize first"
            )
        return X

    def fit(self, X, y):
        X, y = check_X_y(X, y)
        self.classes_ = np.unique(y)
        if len(self.classes_) != 2:
            raise ValueError(f"expected exactly 2 classes, got {len(self.classes_)}")
        self.X_ = self._prepare_rows(X)
        self.n_features_in_ = self.X_.shape[1]
        # internal two-class coding: classes_[0] -> -1, classes_[1] -> +1
        self._y_pm = np.where(y == self.classes_[0], -1, 1)
        return self

    def _class_weights(self, X) -> np.ndarray:
        check_is_fitted(self, "X_")
        X = self._prepare_rows(X)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(
                f"X has {X.shape[1]} features, expected {self.n_features_in_}"
            )
        # squared norms |x + x_m|^2 for every query/reference pair
        w = ((X[:, None, :] + self.X_[None, :, :]) ** 2).sum(axis=2)
        w_minus = w[:, self._y_pm == -1].sum(axis=1)
        w_plus = w[:, self._y_pm == 1].sum(axis=1)
        return np.column_stack([w_minus, w_plus])

    def predict_proba(self, X) -> np.ndarray:
        w = self._class_weights(X)
        totals = w.sum(axis=1, keepdims=True)
        if np.any(totals == 0.0):
            raise ValueError("a query is antipodal to every training point")
        return w / totals

    def post_selection_proba(self, X) -> np.ndarray:
        """Probability that the post-selection accepts, per query row."""
        w = self._class_weights(X)
        return w.sum(axis=1) / (4.0 * self.X_.shape[0])

    def decision_function(self, X) -> np.ndarray:
        proba = self.predict_proba(X)
        return proba[:, 1] - proba[:, 0]

    def predict(self, X) -> np.ndarray:
        scores = self.decision_function(X)
        return self.classes_[(scores > 0).astype(int)]
