import numpy as np
import pytest
from hypothesis import given

from lorentz3.catalog import FamilyId, build_metric
from lorentz3.curvature import constant_curvature, curvature, levi_civita
from lorentz3.lie import MODELS, random_automorphism

from strategies import family_point, seeds


def _data(fid, p):
    group, G = build_metric(FamilyId.parse(fid), p)
    return MODELS[group], G, curvature(MODELS[group], G)


@given(family_point())
def test_levi_civita_is_torsion_free_and_metric(point):
    fid, p = point
    group, G = build_metric(fid, p)
    lc = levi_civita(MODELS[group], G)
    scale = max(1.0, np.max(np.abs(lc.ops)))
    assert lc.torsion_defect(MODELS[group]) <= 1e-10 * scale
    assert lc.compatibility_defect() <= 1e-10 * scale * np.max(np.abs(G))


@given(family_point())
def test_scalar_is_trace_of_ricci_operator(point):
    fid, p = point
    group, G = build_metric(fid, p)
    d = curvature(MODELS[group], G)
    assert d.scalar == pytest.approx(np.trace(np.linalg.solve(G, d.ric)), abs=1e-9 * d.scale)
    assert np.allclose(d.ric, d.ric.T)
    assert np.allclose(d.K, -d.K.transpose(1, 0, 2, 3), atol=1e-12 * d.scale)


@given(family_point(), seeds)
def test_curvature_is_natural_under_automorphisms(point, seed):
    fid, p = point
    group, G = build_metric(fid, p)
    A = random_automorphism(group, np.random.default_rng(seed))
    alg = MODELS[group]
    d = curvature(alg, G)
    d2 = curvature(alg, A.T @ G @ A)
    tol = 1e-7 * d.scale * max(1.0, np.max(np.abs(A))) ** 4
    assert np.allclose(d2.ric, A.T @ d.ric @ A, atol=tol)
    assert d2.scalar == pytest.approx(d.scalar, abs=tol)


def test_model_metric_values():
    _, _, d = _data("SU2", (1, 1, 1))
    assert np.allclose(d.ric, np.diag([6.0, 6, 2])) and d.scalar == pytest.approx(10)
    _, _, d = _data("N1", (2,))
    assert np.allclose(d.ric, np.diag([1.0, 1, 2])) and d.scalar == pytest.approx(1)
    _, _, d = _data("N2", (4,))
    assert np.allclose(d.ric, 0.5 * np.diag([1.0, 0.25, 0.25])) and d.scalar == pytest.approx(0.125)
    _, _, d = _data("SOL0ZZ", (1, 1))
    assert np.allclose(d.ric, [[-1, 0, 0], [0, 2, 2], [0, 2, -2]]) and d.scalar == pytest.approx(-2)


@pytest.mark.parametrize("mu", [0.25, 1.0, 4.0])
def test_anti_de_sitter_like_metric_has_negative_constant_curvature(mu):
    alg, G, d = _data("SL2D1", (mu, mu, mu))
    lam = constant_curvature(d)
    assert lam == pytest.approx(-1 / mu)
    assert np.allclose(d.ric, 2 * lam * G)


@pytest.mark.parametrize("fid,p", [("N0", ()), ("SOLD2", (0.0, 1.0)), ("E2D1", (1.0, 1.0))])
def test_flat_metrics(fid, p):
    _, _, d = _data(fid, p)
    assert np.max(np.abs(d.K)) <= 1e-12 * d.scale
    assert constant_curvature(d) == 0.0 or abs(constant_curvature(d)) < 1e-12


def test_non_constant_curvature_is_rejected():
    _, _, d = _data("SU2", (3, 2, 1))
    assert constant_curvature(d) is None
