import numpy as np
import pytest
from hypothesis import given

from lorentz3.catalog import FamilyId, build_metric
from lorentz3.curvature import curvature, levi_civita
from lorentz3.lie import MODELS
from lorentz3.properties import (
    is_einstein,
    is_flat,
    lie_derivative_metric,
    nabla_curvature_defect,
    property_report,
    ricci_operator_type,
    ricci_signature,
    ricci_soliton,
    semi_symmetry_defect,
    soliton_residual,
)

from strategies import family_point


def _report(fid, p):
    group, G = build_metric(FamilyId.parse(fid), p)
    alg = MODELS[group]
    lc = levi_civita(alg, G)
    d = curvature(alg, G)
    return alg, G, d, property_report(alg, lc, d)


def test_steady_soliton_certificate():
    alg, G, d, rep = _report("SOL03", ())
    s = rep.soliton
    assert s is not None and not s.trivial
    assert s.kind == "steady" and s.c == 0.0
    assert np.array_equal(s.X, [0.0, 0.0, -1.0])
    assert soliton_residual(alg, d, s.X, s.c) <= 1e-12


def test_einstein_metrics_get_the_trivial_certificate():
    _, G, d, rep = _report("SL2D1", (1.0, 1.0, 1.0))
    assert rep.einstein == pytest.approx(-2.0)
    assert rep.soliton.trivial and rep.soliton.kind == "shrinking"
    assert rep.locally_symmetric and rep.semi_symmetric and not rep.chain_violations


def test_generic_metric_is_not_a_soliton():
    _, _, _, rep = _report("SU2", (3.0, 2.0, 1.0))
    assert rep.soliton is None and rep.einstein is None and not rep.locally_symmetric


def test_left_invariant_soliton_field_on_nil_is_absent():
    # the Lorentzian Nil metrics are not solitons for left-invariant fields
    for lam in (0.5, 2.0):
        _, _, _, rep = _report("N1", (lam,))
        assert rep.soliton is None


def test_non_einstein_soliton_on_triple_root_family():
    alg, _, d, rep = _report("SL2A3", (1.0,))
    assert rep.soliton is not None and not rep.soliton.trivial and rep.einstein is None


def test_lie_derivative_of_the_metric_is_symmetric():
    group, G = build_metric(FamilyId.SOL03)
    alg = MODELS[group]
    D = lie_derivative_metric(alg, G, [0.3, -1.0, 2.0])
    assert np.allclose(D, D.T)


@given(family_point())
def test_detector_chain_is_consistent(point):
    fid, p = point
    group, G = build_metric(fid, p)
    alg = MODELS[group]
    lc, d = levi_civita(alg, G), curvature(alg, G)
    rep = property_report(alg, lc, d)
    assert rep.chain_violations == ()
    if rep.flat:
        assert rep.constant_curvature == 0.0 or abs(rep.constant_curvature) < 1e-9
    if rep.constant_curvature is not None:
        assert rep.einstein == pytest.approx(2 * rep.constant_curvature, abs=1e-8 * d.scale)
    if rep.einstein is not None:
        assert rep.locally_symmetric
    if rep.locally_symmetric:
        assert rep.semi_symmetric
    if rep.soliton is not None:
        assert soliton_residual(alg, d, rep.soliton.X, rep.soliton.c) <= 1e-8 * rep.soliton.scale


@given(family_point())
def test_ricci_signature_matches_eigenvalue_count_on_g(point):
    fid, p = point
    group, G = build_metric(fid, p)
    d = curvature(MODELS[group], G)
    sig = ricci_signature(d)
    assert sig.n_plus + sig.n_minus + sig.n_zero == 3
    ev = np.linalg.eigvalsh(d.ric)
    thresh = 1e-6 * max(d.scale, np.max(np.abs(d.ric)))
    assert sig.n_plus <= np.sum(ev > -thresh) and sig.n_minus <= np.sum(ev < thresh)


def test_semi_symmetric_but_not_locally_symmetric():
    alg, G, d, rep = _report("SOL03", ())
    lc = levi_civita(alg, G)
    assert semi_symmetry_defect(d) <= 1e-12
    assert nabla_curvature_defect(lc, d) > 0.1
    assert rep.semi_symmetric and not rep.locally_symmetric


def test_ricci_operator_types():
    _, _, d, _ = _report("SOL03", ())
    rt = ricci_operator_type(d)
    assert rt.tag == "double" and rt.nilpotent_square == pytest.approx(0)
    _, _, d, _ = _report("SU2", (3.0, 2.0, 1.0))
    assert ricci_operator_type(d).tag == "diag"
    _, _, d, _ = _report("N0", ())
    assert is_flat(d) and is_einstein(d) == 0.0
