"""scikit-learn compatible wrapper around :func:`largest_gaps_fit`."""

import numpy as np
from sklearn.base import BaseEstimator, BiclusterMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_binary_matrix, check_threshold
from .gaps import ThresholdStrategy, largest_gaps_fit, threshold_value
from .model import compute_key_parameters


class LargestGapsCoclustering(BiclusterMixin, BaseEstimator):
    """Co-cluster a binary matrix by thresholding gaps between sorted degrees.

    Parameters
    ----------
    row_threshold, column_threshold : float or None, default=None
        Explicit thresholds. When ``None`` the threshold comes from
        ``strategy``.
    strategy : str, default="S2"
        Threshold schedule used for any threshold left as ``None``; one of
        ``"S1"`` (constant, needs ``oracle_params``), ``"S2"``, ``"S3"``,
        ``"S4"`` or the matching :class:`ThresholdStrategy` names.
    oracle_params : LBMParameters or None, default=None
        True model parameters, only consulted by the constant strategy.

    Attributes
    ----------
    row_labels_ : ndarray of shape (n_rows,)
    column_labels_ : ndarray of shape (n_columns,)
    n_row_clusters_, n_column_clusters_ : int
    rows_ : ndarray of shape (n_row_clusters_ * n_column_clusters_, n_rows)
        Row indicator of every (row class, column class) bicluster.
    columns_ : ndarray of shape (n_row_clusters_ * n_column_clusters_, n_columns)
    pi_, rho_, alpha_ : ndarray
        Estimated class proportions and block means.
    row_threshold_, column_threshold_ : float
        Thresholds actually used.
    fit_result_ : FitResult
    """

    def __init__(self, row_threshold=None, column_threshold=None, strategy="S2", oracle_params=None):
        self.row_threshold = row_threshold
        self.column_threshold = column_threshold
        self.strategy = strategy
        self.oracle_params = oracle_params

    def _resolve_thresholds(self, n, d):
        explicit = (self.row_threshold, self.column_threshold)
        if all(t is not None for t in explicit):
            return check_threshold(explicit[0], "row_threshold"), check_threshold(explicit[1], "column_threshold")
        strategy = ThresholdStrategy.parse(self.strategy)
        key = None if self.oracle_params is None else compute_key_parameters(self.oracle_params)
        s_g = self.row_threshold
        if s_g is None:
            s_g = threshold_value(strategy, n, d, key=key, axis="row")
        s_m = self.column_threshold
        if s_m is None:
            s_m = threshold_value(strategy, d, n, key=key, axis="column")
        return check_threshold(s_g, "row_threshold"), check_threshold(s_m, "column_threshold")

    def fit(self, X, y=None):
        X = check_binary_matrix(X, name="X")
        n, d = X.shape
        s_g, s_m = self._resolve_thresholds(n, d)
        result = largest_gaps_fit(X, s_g, s_m)
        self.fit_result_ = result
        self.row_threshold_, self.column_threshold_ = s_g, s_m
        self.n_row_clusters_ = result.g_hat
        self.n_column_clusters_ = result.m_hat
        self.row_labels_ = np.asarray(result.z_hat.labels)
        self.column_labels_ = np.asarray(result.w_hat.labels)
        self.pi_ = result.theta_hat.pi
        self.rho_ = result.theta_hat.rho
        self.alpha_ = result.theta_hat.alpha
        row_ind = self.row_labels_[None, :] == np.arange(result.g_hat)[:, None]
        col_ind = self.column_labels_[None, :] == np.arange(result.m_hat)[:, None]
        self.rows_ = np.repeat(row_ind, result.m_hat, axis=0)
        self.columns_ = np.tile(col_ind, (result.g_hat, 1))
        self.n_features_in_ = d
        return self

    def fit_predict(self, X, y=None):
        """Fit and return the row labels."""
        return self.fit(X).row_labels_

    def transform(self, X):
        """Reorder ``X`` so that rows and columns are grouped by class.

        ``X`` must have the shape of the matrix passed to :meth:`fit`.
        """
        check_is_fitted(self, "fit_result_")
        X = check_binary_matrix(X, name="X")
        if X.shape != (self.row_labels_.size, self.column_labels_.size):
            raise ValueError(
                f"X has shape {X.shape}, the fitted matrix had "
                f"{(self.row_labels_.size, self.column_labels_.size)}"
            )
        rows = np.argsort(self.row_labels_, kind="stable")
        cols = np.argsort(self.column_labels_, kind="stable")
        return X[np.ix_(rows, cols)]
