import numpy as np
import pytest

from contractlab import distance_to_diagonal, l1, l2, linf, project, weighted_l2
from contractlab.projections import NormError, project_columns, vector_norm

NORMS = [linf(), l2(), l1(), weighted_l2([1.0, 0.3, 0.7])]


def test_linf_example():
    p = project([0.0, 1.0, 3.0], linf())
    assert p.alpha == 1.5 and p.distance == 1.5


def test_l2_example():
    p = project([0.0, 1.0, 3.0], l2())
    assert p.alpha == pytest.approx(4.0 / 3.0)
    assert p.distance == pytest.approx(np.sqrt(42.0) / 3.0)


def test_l1_example():
    p = project([0.0, 1.0, 3.0], l1())
    assert p.alpha == 1.0 and p.distance == 3.0


def test_diagonal_vectors_have_zero_distance():
    for norm in NORMS:
        for alpha in (-2.0, 0.0, 3.5):
            assert distance_to_diagonal([alpha] * 3, norm) == pytest.approx(0.0, abs=1e-12)


def test_distance_wrapper_examples():
    assert distance_to_diagonal([1.0, 1.0, 1.0], l2()) == 0.0
    assert distance_to_diagonal([0.0, 1.0], linf()) == 0.5
    assert distance_to_diagonal([0.0, 1.0, 3.0], l1()) == 3.0


def test_weighted_projection_coefficient():
    w = np.array([1.0, 0.5, 0.25])
    x = np.array([2.0, -1.0, 4.0])
    p = project(x, weighted_l2(w))
    assert p.alpha == pytest.approx(w @ x / w.sum())
    assert p.distance == pytest.approx(np.sqrt(np.sum(w * (x - p.alpha) ** 2)))


def test_weight_normalization_and_validation():
    norm = weighted_l2([2.0, 4.0])
    assert norm.weights.max() == 1.0
    with pytest.raises(NormError):
        weighted_l2([1.0, -1.0])
    with pytest.raises(NormError):
        project([1.0, 2.0, 3.0], weighted_l2([1.0, 1.0]))  # length mismatch


def test_input_validation():
    with pytest.raises(NormError):
        project([], l2())
    with pytest.raises(NormError):
        project([1.0, np.inf], linf())


def test_projection_is_minimizer():
    rng = np.random.default_rng(11)
    for norm in NORMS:
        for _ in range(250):
            x = rng.standard_normal(3) * rng.uniform(0.1, 10)
            p = project(x, norm)
            betas = p.alpha + rng.standard_normal(100)
            for beta in betas:
                assert p.distance <= vector_norm(x - beta, norm) + 1e-12


def test_l1_even_n_tie_interval():
    rng = np.random.default_rng(12)
    for _ in range(200):
        n = int(rng.integers(2, 9)) * 2
        x = rng.standard_normal(n)
        xs = np.sort(x)
        p = project(x, l1())
        assert p.alpha == xs[n // 2 - 1]
        for aprime in np.linspace(xs[n // 2 - 1], xs[n // 2], 7):
            assert vector_norm(x - aprime, l1()) == pytest.approx(p.distance, abs=1e-10)


def test_translation_covariance_and_homogeneity():
    rng = np.random.default_rng(13)
    for norm in NORMS:
        for _ in range(200):
            x = rng.standard_normal(3)
            beta = float(rng.standard_normal())
            lam = float(rng.standard_normal())
            p = project(x, norm)
            q = project(x + beta, norm)
            assert q.alpha == pytest.approx(p.alpha + beta, abs=1e-10)
            assert q.distance == pytest.approx(p.distance, abs=1e-10)
            assert distance_to_diagonal(lam * x, norm) == pytest.approx(
                abs(lam) * p.distance, abs=1e-10)


def test_project_columns_matches_scalar_version():
    rng = np.random.default_rng(14)
    X = rng.standard_normal((5, 40))
    for norm in [linf(), l2(), l1(), weighted_l2(rng.random(5) + 0.1)]:
        alphas, dists = project_columns(X, norm)
        for j in range(X.shape[1]):
            p = project(X[:, j], norm)
            assert alphas[j] == pytest.approx(p.alpha, abs=1e-12)
            assert dists[j] == pytest.approx(p.distance, abs=1e-12)
