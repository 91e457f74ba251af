"""Curvature property detectors.

Every detector compares a residual against ``tol`` times a reference
magnitude built from the Levi-Civita operators (``CurvatureData.scale``),
so that vanishing quantities such as the curvature of a flat metric are
judged relative to the terms that cancel in them.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .curvature import CurvatureData, LeviCivitaTable, constant_curvature
from .lie import LieAlgebra3
from .linalg import Signature, default_tol, eigenstructure, scale_of, solve_linear, sylvester_signature
from .milnor import MilnorOperator, OperatorType, canonical_frame


def _tol(tol):
    return default_tol() if tol is None else tol


def is_flat(data: CurvatureData, tol: float | None = None) -> bool:
    return float(np.max(np.abs(data.K))) <= _tol(tol) * data.scale


def is_einstein(data: CurvatureData, tol: float | None = None) -> float | None:
    """``lam`` with ``Ric = lam Id`` (equivalently ``ric = lam h``), else ``None``."""
    lam = float(np.trace(data.Ric)) / 3.0
    if float(np.max(np.abs(data.Ric - lam * np.eye(3)))) <= _tol(tol) * data.scale:
        return lam
    return None


def nabla_curvature_defect(lc: LeviCivitaTable, data: CurvatureData) -> float:
    """Largest entry of ``[L_u, K(v,w)] - K(L_u v, w) - K(v, L_u w)`` over basis triples."""
    worst = 0.0
    E = np.eye(3)
    for u in range(3):
        Lu = lc.ops[u]
        for v in range(3):
            for w in range(3):
                Kvw = data.K[v, w]
                e = Lu @ Kvw - Kvw @ Lu - data.op(Lu @ E[v], E[w]) - data.op(E[v], Lu @ E[w])
                worst = max(worst, float(np.max(np.abs(e))))
    return worst


def is_locally_symmetric(lc: LeviCivitaTable, data: CurvatureData, tol: float | None = None) -> bool:
    return nabla_curvature_defect(lc, data) <= _tol(tol) * data.scale ** 1.5


def semi_symmetry_defect(data: CurvatureData) -> float:
    """Largest entry of ``[K(u,v), K(a,b)] - K(K(u,v)a, b) - K(a, K(u,v)b)`` over basis quadruples."""
    worst = 0.0
    E = np.eye(3)
    for u in range(3):
        for v in range(3):
            R = data.K[u, v]
            for a in range(3):
                for b in range(3):
                    Kab = data.K[a, b]
                    e = R @ Kab - Kab @ R - data.op(R @ E[a], E[b]) - data.op(E[a], R @ E[b])
                    worst = max(worst, float(np.max(np.abs(e))))
    return worst


def is_semi_symmetric(data: CurvatureData, tol: float | None = None) -> bool:
    return semi_symmetry_defect(data) <= _tol(tol) * data.scale ** 2


def ricci_signature(data: CurvatureData, tol: float | None = None) -> Signature:
    return sylvester_signature(data.ric, _tol(tol), max(scale_of(data.ric), data.scale))


@dataclass(frozen=True)
class RicciType:
    """Normal-form type of ``Ric``.

    ``optype`` carries the eigenvalues of ``Ric`` itself; ``jordan_sign`` is
    the causal sign of the nilpotent part for Jordan types (``-1`` when only
    ``-Ric`` reaches the listed normal form), else ``+1``.
    """

    optype: OperatorType
    jordan_sign: int
    nilpotent_square: float

    @property
    def tag(self) -> str:
        return self.optype.tag


def ricci_operator_type(data: CurvatureData, g=None, tol: float | None = None) -> RicciType:
    """Classify ``Ric`` (self-adjoint for ``g``) among the four normal forms."""
    tol = _tol(tol)
    G = data.G if g is None else np.asarray(g, dtype=float)
    scale = max(scale_of(data.Ric), data.scale)
    Ric = data.Ric
    if float(np.max(np.abs(Ric))) <= tol * scale:
        Ric = np.zeros((3, 3))
    cf = canonical_frame(MilnorOperator(Ric, G, 1), tol)
    t = cf.optype if cf.sign == 1 else cf.optype.negated()
    sq = float(np.max(np.abs(Ric @ Ric))) / scale ** 2
    return RicciType(t, cf.sign, sq)


# -- Ricci solitons -------------------------------------------------------------------


@dataclass(frozen=True)
class SolitonCertificate:
    """``L_X h + ric = c h`` with left-invariant ``X`` (coordinates in the model basis)."""

    X: np.ndarray
    c: float
    kind: str
    residual: float
    scale: float
    trivial: bool = False

    def to_json(self) -> dict:
        return {"X": [float(x) for x in self.X], "c": float(self.c), "class": self.kind,
                "residual": float(self.residual), "trivial": self.trivial}


def lie_derivative_metric(alg: LieAlgebra3, G, X) -> np.ndarray:
    """``(L_X h)(X_i, X_j) = -<[X, X_i], X_j> - <X_i, [X, X_j]>`` for left-invariant data."""
    A = alg.ad(X)
    M = A.T @ np.asarray(G, dtype=float)
    return -(M + M.T)


def soliton_scale(data: CurvatureData) -> float:
    return max(scale_of(data.ric), data.scale * scale_of(data.G))


def soliton_residual(alg: LieAlgebra3, data: CurvatureData, X, c: float) -> float:
    """Largest entry of ``L_X h + ric - c h``."""
    R = lie_derivative_metric(alg, data.G, X) + data.ric - c * data.G
    return float(np.max(np.abs(R)))


def soliton_class(c: float, tol: float) -> str:
    if abs(c) <= tol:
        return "steady"
    return "shrinking" if c < 0 else "expanding"


@dataclass(frozen=True)
class SolitonFit:
    X: np.ndarray
    c: float
    residual: float
    scale: float
    rank: int


def fit_soliton(alg: LieAlgebra3, data: CurvatureData, tol: float | None = None) -> SolitonFit:
    """Minimum-norm least-squares solution of the six soliton equations in ``(X, c)``."""
    tol = _tol(tol)
    G = data.G
    rows, rhs = [], []
    basis = np.eye(3)
    cols = [lie_derivative_metric(alg, G, basis[k]) for k in range(3)]
    for i in range(3):
        for j in range(i, 3):
            rows.append([cols[k][i, j] for k in range(3)] + [-G[i, j]])
            rhs.append(-data.ric[i, j])
    sol = solve_linear(np.array(rows), np.array(rhs), tol)
    X, c = sol.x[:3], float(sol.x[3])
    return SolitonFit(X, c, soliton_residual(alg, data, X, c), soliton_scale(data), sol.rank)


def ricci_soliton(alg: LieAlgebra3, g, data: CurvatureData, tol: float | None = None) -> SolitonCertificate | None:
    """Left-invariant Ricci soliton certificate, or ``None``.

    Einstein metrics always admit the trivial certificate ``X = 0``; it is
    returned with ``trivial=True``.
    """
    tol = _tol(tol)
    fit = fit_soliton(alg, data, tol)
    if fit.residual > tol * fit.scale:
        return None
    trivial = is_einstein(data, tol) is not None
    X = np.zeros(3) if trivial else np.where(np.abs(fit.X) <= tol * max(1.0, scale_of(fit.X)), 0.0, fit.X)
    c = float(np.trace(data.Ric)) / 3.0 if trivial else fit.c
    c = 0.0 if abs(c) <= tol * fit.scale else c
    return SolitonCertificate(X, c, soliton_class(c, tol * fit.scale), soliton_residual(alg, data, X, c), fit.scale, trivial)


# -- aggregate ------------------------------------------------------------------------


@dataclass(frozen=True)
class PropertyReport:
    """Curvature properties; implied flags are closed upward along
    flat => constant curvature => Einstein => locally symmetric => semi-symmetric.
    Any implication the raw detectors disagreed with is listed in ``chain_violations``.
    """

    flat: bool
    constant_curvature: float | None
    einstein: float | None
    locally_symmetric: bool
    semi_symmetric: bool
    ricci_signature: Signature
    ricci_type: RicciType | None
    soliton: SolitonCertificate | None
    chain_violations: tuple[str, ...] = field(default=())

    @property
    def is_constant_curvature(self) -> bool:
        return self.constant_curvature is not None

    @property
    def is_einstein(self) -> bool:
        return self.einstein is not None


def property_report(alg: LieAlgebra3, lc: LeviCivitaTable, data: CurvatureData, tol: float | None = None) -> PropertyReport:
    tol = _tol(tol)
    flat = is_flat(data, tol)
    cc = constant_curvature(data, None, tol)
    ein = is_einstein(data, tol)
    loc = is_locally_symmetric(lc, data, tol)
    semi = is_semi_symmetric(data, tol)
    violations = []
    if flat and cc is None:
        violations.append("flat but not constant curvature")
        cc = 0.0
    if cc is not None and ein is None:
        violations.append("constant curvature but not Einstein")
        ein = 2.0 * cc
    if ein is not None and not loc:
        violations.append("Einstein but not locally symmetric")
        loc = True
    if loc and not semi:
        violations.append("locally symmetric but not semi-symmetric")
        semi = True
    try:
        rtype = ricci_operator_type(data, None, tol)
    except ValueError:
        rtype = None
    return PropertyReport(flat, cc, ein, loc, semi, ricci_signature(data, tol), rtype,
                          ricci_soliton(alg, data.G, data, tol), tuple(violations))
