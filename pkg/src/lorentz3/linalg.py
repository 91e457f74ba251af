"""Fixed-size 3D real linear algebra.

Vectors and endomorphisms are plain ``numpy`` arrays of shape ``(3,)`` and
``(3, 3)``; matrices act on column coordinates.  Symmetric forms are stored
as full symmetric ``(3, 3)`` arrays.  Every tolerance is relative to a scale
derived from the input (largest absolute entry), so the same default works
across the several orders of magnitude spanned by the catalog parameters.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field

import numpy as np

DEFAULT_TOL = 1e-9


def default_tol() -> float:
    """Tolerance from ``LORENTZ3_TOL`` if set, else ``DEFAULT_TOL``."""
    raw = os.environ.get("LORENTZ3_TOL")
    if raw is None:
        return DEFAULT_TOL
    value = float(raw)
    if not value > 0:
        raise ValueError(f"LORENTZ3_TOL must be positive, got {raw!r}")
    return value


def as_vec3(v) -> np.ndarray:
    arr = np.asarray(v, dtype=float).reshape(3)
    if not np.all(np.isfinite(arr)):
        raise ValueError("vector has non-finite entries")
    return arr


def as_endo3(m) -> np.ndarray:
    arr = np.asarray(m, dtype=float).reshape(3, 3)
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix has non-finite entries")
    return arr


def sym_form(m) -> np.ndarray:
    """Symmetric form built from the lower triangle of ``m``."""
    arr = as_endo3(m)
    low = np.tril(arr)
    return low + np.tril(arr, -1).T


def scale_of(m) -> float:
    """Largest absolute entry, or 1 for the zero matrix."""
    s = float(np.max(np.abs(m))) if np.size(m) else 0.0
    return s if s > 0 else 1.0


@dataclass(frozen=True)
class Signature:
    """Sylvester counts of a real symmetric 3x3 form."""

    n_plus: int
    n_minus: int
    n_zero: int

    def __post_init__(self):
        if min(self.n_plus, self.n_minus, self.n_zero) < 0:
            raise ValueError("signature counts must be nonnegative")
        if self.n_plus + self.n_minus + self.n_zero != 3:
            raise ValueError("signature counts must sum to 3")

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.n_plus, self.n_minus, self.n_zero)

    def signs(self) -> str:
        """Sign pattern in the ``(+,-,0)`` style used by curvature tables."""
        return "(" + ",".join("+" * self.n_plus + "-" * self.n_minus + "0" * self.n_zero) + ")"

    @classmethod
    def from_signs(cls, text: str) -> "Signature":
        chars = [c for c in text if c in "+-0"]
        return cls(chars.count("+"), chars.count("-"), chars.count("0"))

    def __str__(self) -> str:
        return self.signs()


LORENTZIAN = Signature(2, 1, 0)


def sylvester_signature(form, tol: float | None = None, scale: float | None = None) -> Signature:
    """Count eigenvalues above ``tol*scale``, below ``-tol*scale`` and in between.

    ``scale`` defaults to the largest absolute entry of the form; callers
    whose form may vanish identically (a flat Ricci tensor, say) pass the
    magnitude of the quantities it was computed from.
    """
    tol = default_tol() if tol is None else tol
    if not tol > 0:
        raise ValueError("tol must be positive")
    g = sym_form(form)
    thresh = tol * (scale_of(g) if scale is None else scale)
    ev = np.linalg.eigvalsh(g)
    plus = int(np.sum(ev > thresh))
    minus = int(np.sum(ev < -thresh))
    return Signature(plus, minus, 3 - plus - minus)


@dataclass(frozen=True)
class RealEigen:
    value: float
    algebraic: int
    geometric: int


@dataclass(frozen=True)
class EigenData3:
    """Eigen-data of a real 3x3 matrix.

    ``kind`` is ``"three-real"`` or ``"real-plus-complex-pair"``.  For the
    latter, ``real`` holds the single real eigenvalue and ``pair`` the
    ``(alpha, beta)`` of ``alpha +- i beta`` with ``beta > 0``.
    """

    kind: str
    real: tuple[RealEigen, ...]
    pair: tuple[float, float] | None = None
    discriminant: float = 0.0
    scale: float = 1.0
    gaps: tuple[float, ...] = field(default=())

    def values(self) -> list[float]:
        out = []
        for r in self.real:
            out.extend([r.value] * r.algebraic)
        return out


def _char_coeffs(m: np.ndarray) -> tuple[float, float, float]:
    """Coefficients of ``x^3 + c2 x^2 + c1 x + c0`` = det(xI - m)."""
    tr = float(np.trace(m))
    minors = (
        m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
        + m[0, 0] * m[2, 2] - m[0, 2] * m[2, 0]
        + m[1, 1] * m[2, 2] - m[1, 2] * m[2, 1]
    )
    return -tr, float(minors), -float(np.linalg.det(m))


def _newton(c2, c1, c0, x):
    f = ((x + c2) * x + c1) * x + c0
    df = (3 * x + 2 * c2) * x + c1
    if df == 0:
        return x
    step = f / df
    # a polish step must not move a root across its neighbours
    if abs(step) > 1e-3 * (1 + abs(x)):
        return x
    return x - step


def cubic_roots(c2: float, c1: float, c0: float, tol: float = DEFAULT_TOL, scale: float | None = None):
    """Roots of ``x^3 + c2 x^2 + c1 x + c0`` by the discriminant method.

    ``scale`` bounds the root magnitudes (for a characteristic polynomial,
    the norm of the matrix); coincidence tests run on the depressed
    coefficients normalized by it.  Returns ``(kind, roots, disc)`` where
    ``kind`` is ``"triple"``, ``"double"``, ``"distinct"`` or ``"complex"``
    and ``roots`` is ``[r, r, r]``, ``[simple, double, double]``, three
    sorted reals, or ``[r, alpha, beta]`` (complex pair ``alpha +- i beta``).
    """
    shift = -c2 / 3.0
    # depressed cubic t^3 + p t + q with x = t + shift
    p = c1 - c2 * c2 / 3.0
    q = 2.0 * c2 ** 3 / 27.0 - c2 * c1 / 3.0 + c0
    if scale is None:
        scale = max(abs(c2) / 3.0, math.sqrt(abs(c1)), abs(c0) ** (1.0 / 3.0))
    s = scale if scale > 0 else 1.0
    pn, qn = p / s ** 2, q / s ** 3
    if abs(pn) <= tol and abs(qn) <= tol:
        return "triple", [shift] * 3, 0.0
    disc = -(4.0 * pn ** 3 + 27.0 * qn ** 2)
    if abs(disc) <= tol * (4.0 * abs(pn) ** 3 + 27.0 * qn ** 2):
        simple = 3.0 * q / p + shift
        double = -1.5 * q / p + shift
        return "double", [simple, double, double], disc
    if disc > 0:
        r = 2.0 * math.sqrt(-p / 3.0)
        arg = 3.0 * q / (p * r)
        phi = math.acos(max(-1.0, min(1.0, arg)))
        roots = [r * math.cos((phi - 2.0 * math.pi * k) / 3.0) + shift for k in range(3)]
        roots = sorted(_newton(c2, c1, c0, x) for x in roots)
        return "distinct", roots, disc
    root_d = math.sqrt(q * q / 4.0 + p ** 3 / 27.0)
    a = -math.copysign(abs(q) / 2.0 + root_d, q)
    a = math.copysign(abs(a) ** (1.0 / 3.0), a)
    t = a - p / (3.0 * a) if a != 0 else 0.0
    r = _newton(c2, c1, c0, t + shift)
    # deflate: (x - r)(x^2 + b x + c)
    b = c2 + r
    c = c1 + r * b
    alpha = -b / 2.0
    beta = math.sqrt(max(c - alpha * alpha, 0.0))
    return "complex", [r, alpha, beta], disc


def kernel_basis(m, tol: float, scale: float | None = None) -> np.ndarray:
    """Columns spanning the numerical kernel of ``m`` (singular values below tol*scale)."""
    m = np.asarray(m, dtype=float)
    scale = scale_of(m) if scale is None else scale
    _, sv, vt = np.linalg.svd(m)
    null = sv <= tol * scale
    return vt[null].T.copy()


def eigenstructure(op, tol: float | None = None) -> EigenData3:
    """Eigenvalues with multiplicities of a real 3x3 endomorphism.

    Roots of the characteristic cubic come from the discriminant method
    (triple and double roots are detected from the normalized depressed
    coefficients, so Jordan blocks are not split by rounding); geometric
    multiplicities are kernel dimensions of ``op - lambda I`` at the same
    tolerance.
    """
    tol = default_tol() if tol is None else tol
    if not tol > 0:
        raise ValueError("tol must be positive")
    m = as_endo3(op)
    scale = scale_of(m)
    kind, roots, disc = cubic_roots(*_char_coeffs(m), tol=tol, scale=float(np.linalg.norm(m)))
    # kernel threshold must absorb the O(sqrt(eps)) error of a near-defective root
    ktol = max(tol, 1e-7)

    def geo(val):
        return kernel_basis(m - val * np.eye(3), ktol, scale).shape[1]

    if kind == "complex":
        r, alpha, beta = roots
        return EigenData3(
            "real-plus-complex-pair",
            (RealEigen(r, 1, 1),),
            (alpha, beta),
            disc,
            scale,
        )
    if kind == "triple":
        v = roots[0]
        return EigenData3("three-real", (RealEigen(v, 3, max(1, geo(v))),), None, disc, scale)
    if kind == "double":
        simple, double = roots[0], roots[1]
        return EigenData3(
            "three-real",
            (RealEigen(simple, 1, 1), RealEigen(double, 2, min(2, max(1, geo(double))))),
            None,
            disc,
            scale,
            (abs(simple - double),),
        )
    a, b, c = roots
    return EigenData3(
        "three-real",
        tuple(RealEigen(x, 1, 1) for x in roots),
        None,
        disc,
        scale,
        (b - a, c - b),
    )


@dataclass(frozen=True)
class LstsqResult:
    x: np.ndarray
    residual: float
    rank: int
    rank_deficient: bool


def solve_linear(A, b, tol: float | None = None) -> LstsqResult:
    """Minimum-norm least-squares solution of ``A x = b``.

    Uses an SVD; singular values under ``tol * largest`` count as zero and
    set the rank-deficiency flag.
    """
    tol = default_tol() if tol is None else tol
    A = np.atleast_2d(np.asarray(A, dtype=float))
    b = np.asarray(b, dtype=float).reshape(-1)
    if A.shape[0] == 0 or A.shape[1] > 6:
        raise ValueError("A must be nonempty with at most 6 columns")
    if A.shape[0] != b.shape[0]:
        raise ValueError("row count of A and length of b differ")
    u, sv, vt = np.linalg.svd(A, full_matrices=False)
    smax = sv[0] if sv.size and sv[0] > 0 else 1.0
    keep = sv > tol * smax
    inv = np.zeros_like(sv)
    inv[keep] = 1.0 / sv[keep]
    x = vt.T @ (inv * (u.T @ b))
    res = float(np.linalg.norm(A @ x - b))
    rank = int(np.sum(keep))
    return LstsqResult(x, res, rank, rank < A.shape[1])


def orthonormalize(vectors, gram, tol: float = DEFAULT_TOL):
    """Pseudo-orthonormal basis of the span of ``vectors`` (columns) for ``gram``.

    Returns ``(basis, signs)`` with ``basis.T @ gram @ basis = diag(signs)``.
    Raises ``ValueError`` when the restricted form is degenerate.
    """
    V = np.asarray(vectors, dtype=float)
    S = V.T @ gram @ V
    S = 0.5 * (S + S.T)
    w, Q = np.linalg.eigh(S)
    if np.any(np.abs(w) <= tol * scale_of(S)):
        raise ValueError("restricted form is degenerate")
    basis = V @ Q / np.sqrt(np.abs(w))
    return basis, np.sign(w)
