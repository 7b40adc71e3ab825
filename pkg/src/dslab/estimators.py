"""scikit-learn style wrappers.

Each row of ``X`` is one sampled function (``2**N`` cell values).  The
wrappers work in float mode; use the functional API for exact arithmetic.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .exceptions import DomainError, ResolutionError
from .means import apply_mean, parse_mean
from .systems import SystemId
from .transforms import CoefficientVector, SampledFunction, forward_transform, inverse_transform

__all__ = ["check_samples", "check_index", "WalshTransformer", "SummabilityTransformer"]


def check_samples(X, resolution: int | None = None) -> tuple[np.ndarray, int]:
    """Validate a 2-d float array whose row length is a power of two."""
    X = check_array(X, dtype=np.float64)
    width = X.shape[1]
    if width & (width - 1):
        raise ResolutionError(f"row length {width} is not a power of two")
    N = width.bit_length() - 1
    if resolution is not None and N != resolution:
        raise ResolutionError(f"expected rows of length 2**{resolution}, got {width}")
    return X, N


def check_index(n, resolution: int, minimum: int = 1) -> int:
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
        raise DomainError(f"index must be an integer, got {n!r}")
    n = int(n)
    if n < minimum:
        raise DomainError(f"index must be >= {minimum}, got {n}")
    if n > 1 << resolution:
        raise ResolutionError(f"index {n} exceeds 2**{resolution}")
    return n


class WalshTransformer(TransformerMixin, BaseEstimator):
    """Rows of cell values to Walsh-Paley or Walsh-Kaczmarz coefficients.

    Parameters
    ----------
    system : str
        ``"walsh_paley"`` or ``"walsh_kaczmarz"`` (aliases ``w`` and ``k`` work).
    n_coefficients : int or None
        Keep only the first ``n_coefficients`` coefficients; the rest are
        zero in ``inverse_transform``.
    """

    def __init__(self, system="walsh_paley", n_coefficients=None):
        self.system = system
        self.n_coefficients = n_coefficients

    def fit(self, X, y=None):
        X, N = check_samples(X)
        self.system_ = SystemId.parse(self.system)
        self.resolution_ = N
        self.n_features_in_ = X.shape[1]
        k = X.shape[1] if self.n_coefficients is None else self.n_coefficients
        self.n_coefficients_ = check_index(k, N)
        return self

    def transform(self, X):
        check_is_fitted(self, "resolution_")
        X, _ = check_samples(X, self.resolution_)
        out = np.empty((X.shape[0], self.n_coefficients_))
        for i, row in enumerate(X):
            c = forward_transform(SampledFunction(row, exact=False), self.system_).coeffs
            out[i] = c[: self.n_coefficients_]
        return out

    def inverse_transform(self, C):
        check_is_fitted(self, "resolution_")
        C = check_array(C, dtype=np.float64)
        if C.shape[1] != self.n_coefficients_:
            raise DomainError(f"expected {self.n_coefficients_} coefficients, got {C.shape[1]}")
        size = 1 << self.resolution_
        out = np.empty((C.shape[0], size))
        for i, row in enumerate(C):
            full = np.zeros(size)
            full[: len(row)] = row
            out[i] = inverse_transform(CoefficientVector(self.system_, full, exact=False)).values
        return out


class SummabilityTransformer(TransformerMixin, BaseEstimator):
    """Apply the ``n``-th summability mean to every row.

    Parameters
    ----------
    mean : str
        ``fejer``, ``fejer_printed``, ``riesz``, ``norlund_log``,
        ``cesaro:<alpha>`` or ``norlund:<weight preset>``.
    n : int
        Index of the mean.
    system : str
        Orthonormal system the partial sums are taken in.
    """

    def __init__(self, mean="fejer", n=8, system="walsh_kaczmarz"):
        self.mean = mean
        self.n = n
        self.system = system

    def fit(self, X, y=None):
        X, N = check_samples(X)
        self.mean_ = parse_mean(self.mean, self.system)
        self.resolution_ = N
        self.n_features_in_ = X.shape[1]
        check_index(self.n, N, self.mean_.min_index)
        return self

    def transform(self, X):
        check_is_fitted(self, "mean_")
        X, _ = check_samples(X, self.resolution_)
        out = np.empty_like(X)
        for i, row in enumerate(X):
            out[i] = apply_mean(self.mean_, self.n, SampledFunction(row, exact=False)).values
        return out
