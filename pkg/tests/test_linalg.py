import numpy as np
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from lorentz3.linalg import (
    LORENTZIAN,
    Signature,
    cubic_roots,
    default_tol,
    eigenstructure,
    kernel_basis,
    orthonormalize,
    scale_of,
    solve_linear,
    sylvester_signature,
    sym_form,
)

finite = st.floats(-10, 10, allow_nan=False)
matrices = st.lists(finite, min_size=9, max_size=9).map(lambda v: np.array(v).reshape(3, 3))


def test_signature_text_round_trip():
    for s in (Signature(2, 1, 0), Signature(0, 0, 3), Signature(1, 0, 2)):
        assert Signature.from_signs(s.signs()) == s
    assert Signature.from_signs("(+,-,-)") == Signature(1, 2, 0)
    assert str(LORENTZIAN) == "(+,+,-)"


def test_signature_counts_must_sum_to_three():
    with pytest.raises(ValueError):
        Signature(2, 2, 0)


def test_sym_form_reads_lower_triangle():
    m = np.array([[1.0, 99, 99], [2, 3, 99], [4, 5, 6]])
    assert np.array_equal(sym_form(m), np.array([[1, 2, 4], [2, 3, 5], [4, 5, 6.0]]))


def test_default_tol_env(monkeypatch):
    monkeypatch.setenv("LORENTZ3_TOL", "1e-6")
    assert default_tol() == 1e-6
    monkeypatch.setenv("LORENTZ3_TOL", "-1")
    with pytest.raises(ValueError):
        default_tol()


def test_scale_of_zero_matrix_is_one():
    assert scale_of(np.zeros((3, 3))) == 1.0


@given(matrices, st.lists(st.floats(-5, 5).filter(lambda x: abs(x) > 0.1), min_size=3, max_size=3))
def test_signature_is_congruence_invariant(P, d):
    assume(abs(np.linalg.det(P)) > 0.5 and np.linalg.cond(P) < 50)
    D = np.diag(d)
    expected = Signature(sum(x > 0 for x in d), sum(x < 0 for x in d), 0)
    assert sylvester_signature(P.T @ D @ P, 1e-9) == expected


@given(st.lists(st.floats(-5, 5), min_size=3, max_size=3))
def test_cubic_roots_of_distinct_reals(r):
    r = sorted(r)
    assume(min(r[1] - r[0], r[2] - r[1]) > 1e-2)
    c2, c1, c0 = -sum(r), r[0] * r[1] + r[0] * r[2] + r[1] * r[2], -r[0] * r[1] * r[2]
    kind, roots, _ = cubic_roots(c2, c1, c0)
    assert kind == "distinct"
    assert np.allclose(roots, r, atol=1e-7)


def test_cubic_roots_multiplicities():
    assert cubic_roots(-6, 12, -8)[0] == "triple"  # (x-2)^3
    kind, roots, _ = cubic_roots(-4, 5, -2)  # (x-1)^2 (x-2)
    assert kind == "double" and np.allclose(roots, [2, 1, 1])
    kind, roots, _ = cubic_roots(-1, 1, -1)  # (x-1)(x^2+1)
    assert kind == "complex" and np.allclose(roots, [1, 0, 1])


def test_eigenstructure_detects_jordan_block():
    J = np.array([[2.0, 1, 0], [0, 2, 0], [0, 0, 5]])
    ed = eigenstructure(J)
    double = [r for r in ed.real if r.algebraic == 2][0]
    assert double.value == pytest.approx(2) and double.geometric == 1
    ed = eigenstructure(np.diag([2.0, 2.0, 5.0]))
    assert [r for r in ed.real if r.algebraic == 2][0].geometric == 2


def test_eigenstructure_complex_pair():
    ed = eigenstructure(np.array([[1.0, 0, 0], [0, 3, 2], [0, -2, 3]]))
    assert ed.kind == "real-plus-complex-pair"
    assert ed.pair == pytest.approx((3.0, 2.0))


def test_kernel_basis_dimension():
    assert kernel_basis(np.diag([1.0, 0, 0]), 1e-12).shape == (3, 2)


def test_solve_linear_min_norm():
    A = np.array([[1.0, 1.0]])
    out = solve_linear(A, [2.0])
    assert np.allclose(out.x, [1, 1]) and out.rank_deficient


def test_orthonormalize_lorentzian():
    G = np.diag([1.0, 1.0, -1.0])
    B, signs = orthonormalize(np.array([[1.0, 0, 0], [1, 1, 0], [0, 0.5, 1]]).T, G)
    assert np.allclose(B.T @ G @ B, np.diag(signs))
