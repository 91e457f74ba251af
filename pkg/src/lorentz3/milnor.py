"""Lorentzian cross product, the bracket operator L and its normal forms.

For a 3D unimodular Lie algebra with a Lorentzian scalar product and an
orientation there is a unique endomorphism ``L`` with ``[u, v] = L(u x v)``;
``L`` is self-adjoint.  Its conjugacy type is one of four:

* ``DiagonalReal(a, b, c)``  -- ``[e1,e2] = -c e3, [e2,e3] = a e1, [e3,e1] = b e2``
* ``ComplexPair(a, alpha, beta)`` -- ``[e1,e2] = -beta e2 - alpha e3, [e2,e3] = a e1,
  [e3,e1] = alpha e2 - beta e3``
* ``DoubleRoot(a, b)`` (``{ab2}``) -- ``[e1,e2] = e2/2 + (1/2 - b) e3, [e2,e3] = a e1,
  [e3,e1] = (b + 1/2) e2 + e3/2``
* ``TripleRoot(a)`` (``{a3}``) -- ``[e1,e2] = e2/r2 - a e3, [e2,e3] = a e1 + e2/r2,
  [e3,e1] = e1/r2 + a e2 + e3/r2`` with ``r2 = sqrt(2)``

in a positively oriented basis with ``<e1,e1> = <e2,e2> = 1, <e3,e3> = -1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .lie import InvalidAlgebraError, LieAlgebra3, check_lorentzian, killing_form
from .linalg import (
    as_vec3,
    default_tol,
    eigenstructure,
    kernel_basis,
    orthonormalize,
    scale_of,
)

SQRT2 = math.sqrt(2.0)
ETA = np.diag([1.0, 1.0, -1.0])


class FrameError(ValueError):
    """Normal-form frame could not be built to tolerance (type boundary)."""

    def __init__(self, message: str, residual: float = float("nan")):
        super().__init__(message)
        self.residual = residual


# -- operator types -----------------------------------------------------------------


@dataclass(frozen=True)
class DiagonalReal:
    a: float
    b: float
    c: float
    tag = "diag"

    @property
    def label(self) -> str:
        return "diag{a,b,c}"

    def params(self) -> dict:
        return {"a": self.a, "b": self.b, "c": self.c}

    def normal_matrix(self) -> np.ndarray:
        return np.diag([self.a, self.b, self.c])

    def negated(self) -> "DiagonalReal":
        return DiagonalReal(-self.a, -self.b, -self.c)


@dataclass(frozen=True)
class ComplexPair:
    a: float
    alpha: float
    beta: float
    tag = "complex"

    @property
    def label(self) -> str:
        return "{az̅z}"

    def params(self) -> dict:
        return {"a": self.a, "alpha": self.alpha, "beta": self.beta}

    def normal_matrix(self) -> np.ndarray:
        return np.array([[self.a, 0, 0], [0, self.alpha, self.beta], [0, -self.beta, self.alpha]])

    def negated(self) -> "ComplexPair":
        return ComplexPair(-self.a, -self.alpha, self.beta)


@dataclass(frozen=True)
class DoubleRoot:
    a: float
    b: float
    tag = "double"

    @property
    def label(self) -> str:
        return "{ab2}"

    def params(self) -> dict:
        return {"a": self.a, "b": self.b}

    def normal_matrix(self) -> np.ndarray:
        b = self.b
        return np.array([[self.a, 0, 0], [0, b + 0.5, -0.5], [0, 0.5, b - 0.5]])

    def negated(self) -> "DoubleRoot":
        return DoubleRoot(-self.a, -self.b)


@dataclass(frozen=True)
class TripleRoot:
    a: float
    tag = "triple"

    @property
    def label(self) -> str:
        return "{a3}"

    def params(self) -> dict:
        return {"a": self.a}

    def normal_matrix(self) -> np.ndarray:
        s = 1.0 / SQRT2
        a = self.a
        return np.array([[a, s, 0], [s, a, -s], [0, s, a]])

    def negated(self) -> "TripleRoot":
        return TripleRoot(-self.a)


OperatorType = DiagonalReal | ComplexPair | DoubleRoot | TripleRoot


def normal_form_brackets(t: OperatorType) -> np.ndarray:
    """Structure constants of the normal form of ``t`` in its frame."""
    L = t.normal_matrix()
    c = np.zeros((3, 3, 3))
    # e2 x e3 = e1, e3 x e1 = e2, e1 x e2 = -e3 in a positive pseudo-orthonormal frame
    c[1, 2] = L[:, 0]
    c[2, 0] = L[:, 1]
    c[0, 1] = -L[:, 2]
    return _antisym(c)


def _antisym(c):
    out = c.copy()
    for i, j in ((1, 2), (2, 0), (0, 1)):
        out[j, i] = -c[i, j]
    return out


# -- cross product and L ----------------------------------------------------------------


def cross(u, v, g, orientation: int = 1) -> np.ndarray:
    """Metric cross product: ``<u x v, w> = orientation * vol(u, v, w)``."""
    G = np.asarray(g, dtype=float)
    vol = math.sqrt(abs(np.linalg.det(G)))
    return orientation * vol * np.linalg.solve(G, np.cross(as_vec3(u), as_vec3(v)))


@dataclass(frozen=True)
class MilnorOperator:
    L: np.ndarray
    G: np.ndarray
    orientation: int
    asymmetry: float = 0.0

    def flipped(self) -> "MilnorOperator":
        return MilnorOperator(-self.L, self.G, -self.orientation, self.asymmetry)


def milnor_operator(alg: LieAlgebra3, g, orientation: int = 1, tol: float | None = None) -> MilnorOperator:
    """Solve ``[X_i, X_j] = L(X_i x X_j)`` for ``L`` and check self-adjointness."""
    tol = default_tol() if tol is None else tol
    if orientation not in (1, -1):
        raise ValueError("orientation must be +1 or -1")
    G = check_lorentzian(g, tol)
    E = np.eye(3)
    W = np.column_stack([cross(E[1], E[2], G, orientation), cross(E[2], E[0], G, orientation),
                         cross(E[0], E[1], G, orientation)])
    B = alg.bracket_columns()
    # L W = B  <=>  W^T L^T = B^T
    L = np.linalg.solve(W.T, B.T).T
    GL = G @ L
    asym = float(np.max(np.abs(GL - GL.T)))
    if asym > tol * scale_of(GL) * 10:
        raise InvalidAlgebraError(f"bracket operator is not self-adjoint (defect {asym:.3g}); algebra is not unimodular")
    return MilnorOperator(L, G, orientation, asym)


# -- frames ----------------------------------------------------------------------------


@dataclass(frozen=True)
class CanonicalFrame:
    """Pseudo-orthonormal frame (columns, in model coordinates) realizing a normal form."""

    frame: np.ndarray
    optype: OperatorType
    orientation: int
    residual: float
    margin: float
    sign: int = 1
    """+1 if the frame realizes the normal form of L itself, -1 if of -L."""


def _oriented(F, orientation):
    return orientation * np.linalg.det(F) > 0


def _normalize(v, G):
    n = float(v @ G @ v)
    if n == 0:
        raise FrameError("null vector where a non-null one was expected")
    return v / math.sqrt(abs(n)), math.copysign(1.0, n)


def _complement(e1, G):
    """Pseudo-orthonormal (spacelike, timelike) basis of the orthogonal complement of e1."""
    _, _, vt = np.linalg.svd((G @ e1)[None, :])
    basis, signs = orthonormalize(vt[1:].T, G)
    order = np.argsort(-signs)
    basis, signs = basis[:, order], signs[order]
    if not (signs[0] > 0 and signs[1] < 0):
        raise FrameError("complement of the simple eigenvector is not Lorentzian")
    return basis[:, 0], basis[:, 1]


def _frame_diagonal(L, G, ed, tol):
    vecs, vals, signs = [], [], []
    scale = scale_of(L)
    for r in ed.real:
        K = kernel_basis(L - r.value * np.eye(3), max(tol, 1e-7), scale)
        if K.shape[1] != r.algebraic:
            raise FrameError("eigenspace dimension does not match multiplicity")
        basis, sg = orthonormalize(K, G)
        for k in range(basis.shape[1]):
            vecs.append(basis[:, k])
            vals.append(r.value)
            signs.append(sg[k])
    time = [i for i, s in enumerate(signs) if s < 0]
    if len(time) != 1:
        raise FrameError("eigenbasis does not contain exactly one timelike vector")
    space = sorted((i for i in range(3) if signs[i] > 0), key=lambda i: -vals[i])
    order = space + time
    F = np.column_stack([vecs[i] for i in order])
    t = DiagonalReal(vals[order[0]], vals[order[1]], vals[order[2]])
    return F, t


def _frame_complex(L, G, ed, tol):
    r = ed.real[0].value
    # the real eigenvalue is simple: its eigenvector is the least singular direction
    _, _, vt = np.linalg.svd(L - r * np.eye(3))
    e1, s1 = _normalize(vt[-1], G)
    if s1 < 0:
        raise FrameError("real eigenvector of a complex-pair operator is not spacelike")
    f2, f3 = _complement(e1, G)
    # restricted operator in the (f2, f3) frame; self-adjoint for diag(1, -1)
    Lf2, Lf3 = L @ f2, L @ f3
    p, s = float(f2 @ G @ Lf2), -float(f3 @ G @ Lf3)
    r_ = float(f2 @ G @ Lf3)
    alpha = 0.5 * (p + s)
    m, n = 0.5 * (p - s), r_
    if abs(m) >= abs(n):
        raise FrameError("restricted operator has real spectrum")
    t = 0.5 * math.atanh(-m / n)
    e2 = math.cosh(t) * f2 + math.sinh(t) * f3
    beta = math.sqrt(n * n - m * m)
    e3 = (alpha * e2 - L @ e2) / beta
    return np.column_stack([e1, e2, e3]), ComplexPair(r, alpha, beta)


def _null_chain_plane(N, e1, G):
    """Null vectors n1, n2 of the plane orthogonal to e1 with N n2 = n1, <n1, n2> > 0 normalized to 2."""
    f2, f3 = _complement(e1, G)
    c2, c3 = N @ f2, N @ f3
    n1 = c2 if np.linalg.norm(c2) >= np.linalg.norm(c3) else c3
    cands = [f2 + f3, f2 - f3]
    n2 = min(cands, key=lambda v: abs(np.dot(v, n1)) / (np.linalg.norm(v) * np.linalg.norm(n1)))
    img = N @ n2
    k = float(np.dot(img, n1) / np.dot(n1, n1))
    if k == 0:
        raise FrameError("Jordan chain degenerates")
    n2 = n2 / k
    pair = float(n1 @ G @ n2)
    return n1, n2, pair


def _frame_double(L, G, ed, tol, a, b):
    N = L - b * np.eye(3)
    scale = scale_of(L)
    if ed.real[0].algebraic == 3:
        K = kernel_basis(N, max(tol, 1e-7), scale)
        if K.shape[1] != 2:
            raise FrameError("kernel of L - b is not two dimensional")
        # spacelike direction of ker N: the kernel vector farthest from the null image line
        cands = [K[:, 0], K[:, 1], K[:, 0] + K[:, 1], K[:, 0] - K[:, 1]]
        w = max(cands, key=lambda v: float(v @ G @ v) / float(v @ v))
    else:
        K = kernel_basis(L - a * np.eye(3), max(tol, 1e-7), scale)
        if K.shape[1] != 1:
            raise FrameError("simple eigenvector is not unique")
        w = K[:, 0]
    e1, s1 = _normalize(w, G)
    if s1 < 0:
        raise FrameError("simple eigenvector of a Jordan-type operator is not spacelike")
    n1, n2, pair = _null_chain_plane(N, e1, G)
    if pair <= 0:
        return None
    s = math.sqrt(2.0 / pair)
    n1, n2 = s * n1, s * n2
    e2, e3 = 0.5 * (n1 + n2), 0.5 * (n1 - n2)
    return np.column_stack([e1, e2, e3]), DoubleRoot(a, b)


def _frame_triple(L, G, a):
    N = L - a * np.eye(3)
    N2 = N @ N
    w = max(np.eye(3), key=lambda v: np.linalg.norm(N2 @ v)).copy()
    Nw, N2w = N @ w, N2 @ w
    kappa = float(w @ G @ N2w)
    if kappa <= 0:
        raise FrameError("nilpotent part has the wrong causal sign for a (+,+,-) form")
    x = -float(w @ G @ Nw) / (2 * kappa)
    w = w + x * Nw
    y = -float(w @ G @ w) / (2 * kappa)
    w = w + y * N2w
    w = w * math.sqrt(2.0 / kappa)
    n = N2 @ w
    e1, e2, e3 = 0.5 * (n + w), (N @ w) / SQRT2, 0.5 * (n - w)
    return np.column_stack([e1, e2, e3]), TripleRoot(a)


def _margin(ed) -> float:
    if ed.kind == "real-plus-complex-pair":
        return abs(ed.pair[1]) / ed.scale
    if ed.gaps:
        return min(ed.gaps) / ed.scale
    return 0.0


def _build(L, G, orientation, ed, tol):
    """Frame realizing the normal form of L for the given orientation, or None."""
    if ed.kind == "real-plus-complex-pair":
        F, t = _frame_complex(L, G, ed, tol)
        if not _oriented(F, orientation):
            F[:, 0] = -F[:, 0]
        return F, t
    reals = ed.real
    if len(reals) == 1:
        r = reals[0]
        if r.geometric == 3:
            F, t = _frame_diagonal(L, G, ed, tol)
        elif r.geometric == 2:
            out = _frame_double(L, G, ed, tol, r.value, r.value)
            if out is None:
                return None
            F, t = out
        else:
            F, t = _frame_triple(L, G, r.value)
            if not _oriented(F, orientation):
                F = -F
            return F, t
    elif len(reals) == 2:
        simple, double = reals
        if double.geometric == 2:
            F, t = _frame_diagonal(L, G, ed, tol)
        else:
            out = _frame_double(L, G, ed, tol, simple.value, double.value)
            if out is None:
                return None
            F, t = out
    else:
        F, t = _frame_diagonal(L, G, ed, tol)
    if not _oriented(F, orientation):
        F[:, 0] = -F[:, 0]
    return F, t


def frame_residual(F, L, G, t: OperatorType) -> float:
    """Worst deviation of F from pseudo-orthonormality and of F^-1 L F from the normal form."""
    gram = F.T @ G @ F
    conj = np.linalg.solve(F, L @ F)
    return max(float(np.max(np.abs(gram - ETA))), float(np.max(np.abs(conj - t.normal_matrix()))) / scale_of(L))


def canonical_frame(M: MilnorOperator, tol: float | None = None) -> CanonicalFrame:
    """Pseudo-orthonormal frame in which the brackets take their normal form.

    The operator's own orientation is tried first; Jordan-type operators
    whose nilpotent part has the opposite causal sign only reach the normal
    form for the reversed orientation (``L -> -L``), which is then used and
    reported through ``orientation``.
    """
    tol = default_tol() if tol is None else tol
    _require_self_adjoint(M, tol)
    L, G = M.L, M.G
    for sgn in (1, -1):
        Ls = sgn * L
        ed = eigenstructure(Ls, tol)
        out = _build(Ls, G, sgn * M.orientation, ed, tol)
        if out is None:
            continue
        F, t = out
        res = frame_residual(F, Ls, G, t)
        # normal forms are reached up to rounding amplified by the conditioning of F
        limit = max(1e3 * tol, 1e-6) * max(1.0, np.linalg.cond(F))
        if res > limit:
            raise FrameError(f"normal-form residual {res:.3g} exceeds tolerance; operator is near a type boundary", res)
        return CanonicalFrame(F, t, sgn * M.orientation, res, _margin(ed), sgn)
    raise FrameError("no orientation realizes a normal form")


def _require_self_adjoint(M: MilnorOperator, tol: float) -> None:
    GL = M.G @ M.L
    if float(np.max(np.abs(GL - GL.T))) > 10 * tol * scale_of(GL):
        raise ValueError("operator is not self-adjoint for its metric")


def classify_operator(M: MilnorOperator, tol: float | None = None) -> OperatorType:
    """Normal-form type of a self-adjoint operator, parameters read off its frame.

    The returned parameters describe ``L`` for the orientation that realizes
    the normal form; see ``canonical_frame`` for the orientation and margin.
    """
    return canonical_frame(M, tol).optype


def frame_brackets(alg: LieAlgebra3, F) -> np.ndarray:
    """Structure constants of ``alg`` in the basis given by the columns of F."""
    Finv = np.linalg.inv(F)
    c = np.zeros((3, 3, 3))
    for i in range(3):
        for j in range(3):
            c[i, j] = Finv @ alg.bracket(F[:, i], F[:, j])
    return c


def killing_in_frame(alg: LieAlgebra3, F) -> np.ndarray:
    """Matrix of the Killing form in the basis F."""
    return F.T @ killing_form(alg) @ F


def expected_killing_eigen(t: OperatorType):
    """Closed-form Killing eigen-data for each normal form (eigenvalues, or (det, trace) for {a3})."""
    if isinstance(t, DiagonalReal):
        a, b, c = t.a, t.b, t.c
        return sorted([-2 * a * b, 2 * a * c, 2 * b * c])
    if isinstance(t, ComplexPair):
        r = math.hypot(t.alpha, t.beta)
        return sorted([2 * r * r, 2 * t.a * r, -2 * t.a * r])
    if isinstance(t, DoubleRoot):
        a, b = t.a, t.b
        q = math.sqrt(4 * b * b + 1)
        return sorted([2 * b * b, (q - 1) * a, -(q + 1) * a])
    return (-8 * t.a ** 6, 2 * (t.a ** 2 + 1))
