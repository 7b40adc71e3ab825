import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError
from sklearn.pipeline import make_pipeline

from dslab.estimators import SummabilityTransformer, WalshTransformer, check_index, check_samples
from dslab.exceptions import DomainError, ResolutionError

rng = np.random.default_rng(0)
X = rng.normal(size=(5, 32))


@pytest.mark.parametrize("system", ["walsh_paley", "walsh_kaczmarz"])
def test_round_trip(system):
    t = WalshTransformer(system=system).fit(X)
    C = t.transform(X)
    assert C.shape == (5, 32)
    assert np.allclose(C[:, 0], X.mean(axis=1))
    assert np.allclose(t.inverse_transform(C), X)


def test_truncation_equals_dirichlet_mean():
    t = WalshTransformer(system="k", n_coefficients=8).fit(X)
    back = t.inverse_transform(t.transform(X))
    # S_8 f averages over dyadic blocks of length 4
    assert np.allclose(back, X.reshape(5, 8, 4).mean(axis=2).repeat(4, axis=1))


def test_summability_fejer_on_constant_rows():
    ones = np.ones((2, 16))
    out = SummabilityTransformer(mean="fejer", n=5).fit_transform(ones)
    assert np.allclose(out, 1.0)


def test_pipeline_and_params():
    pipe = make_pipeline(SummabilityTransformer(mean="cesaro:1/2", n=16), WalshTransformer(n_coefficients=4))
    assert pipe.fit_transform(X).shape == (5, 4)
    est = SummabilityTransformer(mean="riesz", n=3)
    assert est.get_params() == {"mean": "riesz", "n": 3, "system": "walsh_kaczmarz"}
    assert clone(est).set_params(n=4).n == 4


def test_validation_errors():
    with pytest.raises(ResolutionError):
        check_samples(np.ones((2, 12)))
    with pytest.raises(ResolutionError):
        WalshTransformer().fit(X).transform(np.ones((1, 16)))
    with pytest.raises(ResolutionError):
        SummabilityTransformer(n=64).fit(X)
    with pytest.raises(DomainError):
        SummabilityTransformer(mean="riesz", n=1).fit(X)
    with pytest.raises(DomainError):
        check_index(2.0, 4)
    with pytest.raises(NotFittedError):
        WalshTransformer().transform(X)
    with pytest.raises(ValueError):
        check_samples(np.array([[np.nan, 1.0]]))
