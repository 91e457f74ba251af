import numpy as np
import pytest
from hypothesis import assume, given

from lorentz3.lie import (
    ABELIAN,
    E2,
    MODELS,
    NIL,
    SL2,
    SOL,
    SU2,
    GroupId,
    InvalidAlgebraError,
    InvalidMetricError,
    LieAlgebra3,
    check_lorentzian,
    identify_group,
    is_automorphism,
    is_isomorphism,
    killing_form,
    pullback_metric,
    random_automorphism,
    validate_algebra,
)
from lorentz3.linalg import Signature, sylvester_signature
from lorentz3.milnor import frame_brackets

from strategies import seeds

KILLING = {
    GroupId.NIL: Signature(0, 0, 3),
    GroupId.SU2: Signature(0, 3, 0),
    GroupId.PSL2R: Signature(2, 1, 0),
    GroupId.SOL: Signature(1, 0, 2),
    GroupId.E2TILDE: Signature(0, 1, 2),
}


@pytest.mark.parametrize("group", list(MODELS))
def test_models_are_unimodular_lie_algebras(group):
    v = validate_algebra(MODELS[group])
    assert v.ok and v.jacobi == 0 and v.unimodularity == 0


@pytest.mark.parametrize("group", list(MODELS))
def test_killing_signature_identifies_group(group):
    assert sylvester_signature(killing_form(MODELS[group]), 1e-12) == KILLING[group]
    assert identify_group(MODELS[group]) is group


def test_model_brackets():
    assert np.array_equal(NIL.bracket([1, 0, 0], [0, 1, 0]), [0, 0, 1])
    assert np.array_equal(SU2.bracket([0, 1, 0], [0, 0, 1]), [2, 0, 0])
    assert np.array_equal(SL2.bracket([0, 0, 1], [0, 1, 0]), [2, 0, 0])
    assert np.array_equal(SOL.bracket([1, 0, 0], [0, 0, 1]), [0, 0, -1])
    assert np.array_equal(E2.bracket([1, 0, 0], [0, 1, 0]), [0, 0, 1])
    assert identify_group(ABELIAN) is GroupId.ABELIAN


def test_jacobi_failure_is_detected():
    bad = LieAlgebra3.from_brackets({(0, 1): (0, 0, 1), (0, 2): (1, 0, 0)})
    assert not validate_algebra(bad).jacobi_ok
    with pytest.raises(InvalidAlgebraError):
        identify_group(bad)


def test_non_unimodular_is_rejected():
    bad = LieAlgebra3.from_brackets({(0, 1): (0, 1, 0), (0, 2): (0, 0, 1)})
    assert not validate_algebra(bad).unimodular


def test_json_round_trip():
    for alg in MODELS.values():
        back = LieAlgebra3.from_json(alg.to_json())
        assert np.array_equal(back.c, alg.c)


def test_check_lorentzian():
    with pytest.raises(InvalidMetricError):
        check_lorentzian(np.eye(3))
    with pytest.raises(InvalidMetricError):
        check_lorentzian(np.diag([1.0, -1, -1]))
    assert np.array_equal(check_lorentzian(np.diag([1.0, 1, -1])), np.diag([1.0, 1, -1]))


@pytest.mark.parametrize("group", list(MODELS))
@given(seed=seeds)
def test_random_automorphisms_are_automorphisms(group, seed):
    A = random_automorphism(group, np.random.default_rng(seed))
    assert is_automorphism(A, MODELS[group], 1e-9).ok


@pytest.mark.parametrize("group", list(MODELS))
@given(seed=seeds)
def test_group_identification_is_basis_independent(group, seed):
    rng = np.random.default_rng(seed)
    F = rng.normal(size=(3, 3))
    assume(np.linalg.cond(F) < 100)
    alg = LieAlgebra3(frame_brackets(MODELS[group], F))
    assert identify_group(alg) is group
    assert is_isomorphism(np.linalg.inv(F), MODELS[group], alg, 1e-9).ok


def test_su2_swap_is_automorphism():
    assert is_automorphism(np.array([[0, 1, 0], [1, 0, 0], [0, 0, -1.0]]), SU2).ok
    assert not is_automorphism(np.array([[0, 1, 0], [1, 0, 0], [0, 0, 1.0]]), SU2).ok


def test_pullback_rejects_singular():
    with pytest.raises(ValueError):
        pullback_metric(np.zeros((3, 3)), np.eye(3))
