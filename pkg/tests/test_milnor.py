import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from lorentz3.lie import MODELS, GroupId, LieAlgebra3, killing_form
from lorentz3.milnor import (
    ETA,
    ComplexPair,
    DiagonalReal,
    DoubleRoot,
    TripleRoot,
    canonical_frame,
    cross,
    expected_killing_eigen,
    frame_brackets,
    milnor_operator,
    normal_form_brackets,
)

from strategies import seeds


def random_lorentzian(rng, max_cond=1e3):
    while True:
        P = rng.normal(size=(3, 3))
        G = P.T @ ETA @ P
        if np.linalg.cond(G) < max_cond:
            return G


NORMAL_FORMS = [DiagonalReal(1.0, 2.0, -0.5), DiagonalReal(1.0, 1.0, 0.0), ComplexPair(0.5, 1.0, 2.0),
                ComplexPair(0.0, -1.0, 0.5), DoubleRoot(1.0, 0.5), DoubleRoot(0.0, -1.0), TripleRoot(0.7),
                TripleRoot(0.0)]


@pytest.mark.parametrize("t", NORMAL_FORMS, ids=str)
def test_normal_form_algebras_reproduce_their_operator(t):
    alg = LieAlgebra3(normal_form_brackets(t))
    M = milnor_operator(alg, ETA, 1)
    assert np.allclose(M.L, t.normal_matrix(), atol=1e-12)


@pytest.mark.parametrize("t", [t for t in NORMAL_FORMS if not isinstance(t, TripleRoot)], ids=str)
def test_killing_eigenvalues_in_closed_form(t):
    alg = LieAlgebra3(normal_form_brackets(t))
    ev = np.linalg.eigvalsh(killing_form(alg))
    assert np.allclose(ev, expected_killing_eigen(t), atol=1e-10)


def test_killing_triple_root_invariants():
    t = TripleRoot(0.7)
    alg = LieAlgebra3(normal_form_brackets(t))
    A = killing_form(alg)
    det, trace = expected_killing_eigen(t)
    assert np.linalg.det(A) == pytest.approx(det) and np.trace(A) == pytest.approx(trace)


def test_cross_product_orientation():
    e = np.eye(3)
    assert np.allclose(cross(e[1], e[2], ETA), e[0])
    assert np.allclose(cross(e[0], e[1], ETA), -e[2])
    assert np.allclose(cross(e[0], e[1], ETA, -1), e[2])


@pytest.mark.parametrize("group", [g for g in MODELS])
@given(seed=seeds)
def test_brackets_are_reconstructed_from_the_operator(group, seed):
    alg = MODELS[group]
    G = random_lorentzian(np.random.default_rng(seed))
    M = milnor_operator(alg, G, 1)
    E = np.eye(3)
    for i in range(3):
        for j in range(3):
            assert np.allclose(alg.bracket(E[i], E[j]), M.L @ cross(E[i], E[j], G), atol=1e-9)
    GL = G @ M.L
    assert np.allclose(GL, GL.T, atol=1e-9 * np.max(np.abs(GL)))


@pytest.mark.parametrize("group", [g for g in MODELS])
@given(seed=seeds)
def test_orientation_flip_negates_operator(group, seed):
    G = random_lorentzian(np.random.default_rng(seed))
    Lp = milnor_operator(MODELS[group], G, 1).L
    Lm = milnor_operator(MODELS[group], G, -1).L
    assert np.allclose(Lm, -Lp, atol=1e-12 * max(1.0, np.max(np.abs(Lp))))


@pytest.mark.parametrize("group", [g for g in MODELS])
@given(seed=seeds)
def test_canonical_frame_realizes_the_normal_form(group, seed):
    alg = MODELS[group]
    G = random_lorentzian(np.random.default_rng(seed), 1e2)
    M = milnor_operator(alg, G, 1)
    try:
        cf = canonical_frame(M)
    except ValueError:
        assume(False)  # near a type boundary; rejected by design
    F = cf.frame
    assert np.allclose(F.T @ G @ F, ETA, atol=1e-6)
    c = frame_brackets(alg, F)
    target = normal_form_brackets(cf.optype)
    assert np.max(np.abs(c - target)) <= 1e-6 * max(1.0, np.max(np.abs(target)))


def test_operator_types_of_model_metrics():
    cf = canonical_frame(milnor_operator(MODELS[GroupId.SU2], np.diag([1.0, 1, -1])))
    assert cf.optype.tag == "diag"
    cf = canonical_frame(milnor_operator(MODELS[GroupId.NIL], np.diag([1.0, 1, -1])))
    assert cf.optype.tag == "diag"
    assert sorted(abs(x) for x in cf.optype.params().values()) == pytest.approx([0, 0, 1])


@given(st.floats(-3, 3), st.floats(0.1, 3))
def test_complex_pair_is_not_diagonalizable(alpha, beta):
    t = ComplexPair(0.0, alpha, beta)
    ev = np.linalg.eigvals(t.normal_matrix())
    assert np.sum(np.abs(ev.imag) > 1e-9) == 2
