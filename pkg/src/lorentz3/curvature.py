"""Levi-Civita product, curvature, Ricci tensor and scalar curvature.

Conventions (all tensors are evaluated on the model basis ``X1, X2, X3``):

* ``2 <L_u v, w> = <[u,v],w> + <[w,u],v> + <[w,v],u>`` (Koszul);
* ``K(u, v) = L_[u,v] - [L_u, L_v]``;
* ``ric(u, v) = tr(w -> K(u, w) v)``, ``<Ric u, v> = ric(u, v)``, ``s = tr Ric``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .lie import LieAlgebra3, check_lorentzian
from .linalg import default_tol, scale_of, solve_linear


@dataclass(frozen=True)
class LeviCivitaTable:
    """``ops[i]`` is the matrix of ``L_{X_i}``; column ``j`` is ``L_{X_i} X_j``."""

    ops: np.ndarray
    G: np.ndarray

    def product(self, u, v) -> np.ndarray:
        return self.op(u) @ np.asarray(v, dtype=float)

    def op(self, u) -> np.ndarray:
        return np.tensordot(np.asarray(u, dtype=float), self.ops, axes=1)

    def torsion_defect(self, alg: LieAlgebra3) -> float:
        E = np.eye(3)
        return max(
            float(np.max(np.abs(self.ops[i][:, j] - self.ops[j][:, i] - alg.bracket(E[i], E[j]))))
            for i in range(3)
            for j in range(3)
        )

    def compatibility_defect(self) -> float:
        # <L_u v, w> + <v, L_u w> = 0  <=>  G L_u is antisymmetric
        return max(float(np.max(np.abs(self.G @ A + (self.G @ A).T))) for A in self.ops)


@dataclass(frozen=True)
class CurvatureData:
    """``K[i, j]`` is the endomorphism ``K(X_i, X_j)``; ``ric`` the Ricci form, ``Ric = G^-1 ric``."""

    K: np.ndarray
    ric: np.ndarray
    Ric: np.ndarray
    scalar: float
    G: np.ndarray
    natural_scale: float = 1.0
    """Size of the quadratic terms ``L_u L_v`` that cancel in a flat metric."""

    def op(self, u, v) -> np.ndarray:
        return np.einsum("i,j,ijab->ab", np.asarray(u, float), np.asarray(v, float), self.K)

    @property
    def scale(self) -> float:
        """Reference magnitude for curvature tolerances (nonzero even when K = 0)."""
        return max(self.natural_scale, scale_of(self.K))


def levi_civita(alg: LieAlgebra3, g, tol: float | None = None) -> LeviCivitaTable:
    """Levi-Civita products of basis vectors from Koszul's formula."""
    G = check_lorentzian(g, default_tol() if tol is None else tol)
    c = alg.c
    # brackets paired with the metric: P[i, j, k] = <[X_i, X_j], X_k>
    P = np.einsum("ijm,mk->ijk", c, G)
    # 2 <L_i X_j, X_k> = P[i,j,k] + P[k,i,j] + P[k,j,i]
    rhs = P + P.transpose(1, 2, 0) + P.transpose(2, 1, 0)
    lower = 0.5 * rhs  # lower[i, j, k] = <L_i X_j, X_k>
    Ginv = np.linalg.inv(G)
    ops = np.einsum("km,ijm->ikj", Ginv, lower)
    return LeviCivitaTable(ops, G)


def curvature(alg: LieAlgebra3, g, tol: float | None = None) -> CurvatureData:
    """Curvature operators, Ricci form and operator, scalar curvature."""
    lc = levi_civita(alg, g, tol)
    L = lc.ops
    K = np.einsum("ijm,mab->ijab", alg.c, L) - (
        np.einsum("iab,jbc->ijac", L, L) - np.einsum("jab,ibc->ijac", L, L)
    )
    # ric(X_u, X_v) = sum_w [K(X_u, X_w) X_v]_w
    ric = np.einsum("uwwv->uv", K)
    ric = 0.5 * (ric + ric.T)
    Ric = np.linalg.solve(lc.G, ric)
    natural = max(scale_of(L) ** 2, scale_of(np.einsum("ijm,mab->ijab", alg.c, L)))
    return CurvatureData(K, ric, Ric, float(np.trace(Ric)), lc.G, natural)


def constant_curvature(data: CurvatureData, g=None, tol: float | None = None) -> float | None:
    """Constant sectional curvature ``lam``, or ``None``.

    Because ``K(u, v) = L_[u,v] - [L_u, L_v]`` is minus the usual Riemann
    operator, a space of sectional curvature ``lam`` satisfies
    ``K(u,v)w = -lam(<v,w>u - <u,w>v)``.  The sign is fixed so that ``lam`` is
    the sectional curvature (negative on the anti-de Sitter-like metrics,
    with ``ric = 2 lam h``).  ``lam`` is the least-squares fit over the 27
    component equations, accepted when the worst component residual is below
    ``tol * scale``.
    """
    tol = default_tol() if tol is None else tol
    G = data.G if g is None else np.asarray(g, dtype=float)
    E = np.eye(3)
    lhs, model = [], []
    for i in range(3):
        for j in range(3):
            for k in range(3):
                lhs.append(data.K[i, j] @ E[k])
                model.append(G[i, k] * E[j] - G[j, k] * E[i])
    lhs = np.concatenate(lhs)
    model = np.concatenate(model)
    lam = float(solve_linear(model[:, None], lhs, tol).x[0])
    if float(np.max(np.abs(lhs - lam * model))) > tol * data.scale:
        return None
    return lam
