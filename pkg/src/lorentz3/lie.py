"""Three-dimensional Lie algebras: structure constants, Killing form, models.

Structure constants are stored densely as ``c[i, j, k]`` with
``[X_i, X_j] = sum_k c[i, j, k] X_k``.  The five unimodular non-abelian
models ship with their standard bases; every metric matrix in the catalog is
expressed in these bases.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field

import numpy as np

from .linalg import (
    LORENTZIAN,
    Signature,
    as_endo3,
    as_vec3,
    default_tol,
    scale_of,
    sym_form,
    sylvester_signature,
)


class GroupId(str, enum.Enum):
    NIL = "Nil"
    SU2 = "SU2"
    PSL2R = "PSL2R"
    SOL = "Sol"
    E2TILDE = "E2tilde"
    ABELIAN = "Abelian"

    @classmethod
    def parse(cls, text: str) -> "GroupId":
        key = text.strip().lower().replace("_", "").replace("-", "")
        aliases = {
            "nil": cls.NIL, "heisenberg": cls.NIL, "n": cls.NIL,
            "su2": cls.SU2,
            "psl2r": cls.PSL2R, "sl2": cls.PSL2R, "sl2r": cls.PSL2R,
            "sol": cls.SOL,
            "e2": cls.E2TILDE, "e2tilde": cls.E2TILDE, "e02": cls.E2TILDE,
            "abelian": cls.ABELIAN,
        }
        if key not in aliases:
            raise ValueError(f"unknown group {text!r}")
        return aliases[key]


class InvalidAlgebraError(ValueError):
    """Raised when structure constants are not a 3D unimodular Lie algebra."""


class InvalidMetricError(ValueError):
    """Raised when a metric is not Lorentzian of signature (+,+,-)."""


@dataclass(frozen=True)
class LieAlgebra3:
    c: np.ndarray
    basis: tuple[str, str, str] = ("X1", "X2", "X3")
    name: str = ""

    def __post_init__(self):
        c = np.asarray(self.c, dtype=float).reshape(3, 3, 3).copy()
        if not np.all(np.isfinite(c)):
            raise InvalidAlgebraError("structure constants must be finite")
        c.setflags(write=False)
        object.__setattr__(self, "c", c)

    @classmethod
    def from_brackets(cls, brackets: dict, basis=("X1", "X2", "X3"), name: str = "") -> "LieAlgebra3":
        """Build from ``{(i, j): coeffs}`` with 0-based ``i != j``; antisymmetry is filled in."""
        c = np.zeros((3, 3, 3))
        for (i, j), coeffs in brackets.items():
            if i == j:
                raise InvalidAlgebraError("bracket of a basis vector with itself must vanish")
            v = as_vec3(coeffs)
            c[i, j] = v
            c[j, i] = -v
        return cls(c, tuple(basis), name)

    def bracket(self, u, v) -> np.ndarray:
        return np.einsum("i,j,ijk->k", as_vec3(u), as_vec3(v), self.c)

    def ad(self, u) -> np.ndarray:
        """Matrix of ``v -> [u, v]``."""
        return np.einsum("i,ijk->kj", as_vec3(u), self.c)

    def bracket_columns(self) -> np.ndarray:
        """Columns ``[X2,X3], [X3,X1], [X1,X2]``."""
        return np.column_stack([self.c[1, 2], self.c[2, 0], self.c[0, 1]])

    def to_json(self) -> dict:
        brackets = []
        for i in range(3):
            for j in range(i + 1, 3):
                if np.any(self.c[i, j] != 0):
                    brackets.append({"i": i + 1, "j": j + 1, "coeffs": [float(x) for x in self.c[i, j]]})
        return {"basis": list(self.basis), "brackets": brackets}

    @classmethod
    def from_json(cls, doc) -> "LieAlgebra3":
        if isinstance(doc, str):
            doc = json.loads(doc)
        basis = tuple(doc.get("basis", ("X1", "X2", "X3")))
        if len(basis) != 3:
            raise InvalidAlgebraError("basis must have 3 labels")
        brackets = {}
        for entry in doc.get("brackets", []):
            i, j = int(entry["i"]) - 1, int(entry["j"]) - 1
            if not (0 <= i < 3 and 0 <= j < 3):
                raise InvalidAlgebraError(f"bracket index out of range: {entry}")
            brackets[(i, j)] = entry["coeffs"]
        return cls.from_brackets(brackets, basis)


@dataclass(frozen=True)
class AlgebraValidation:
    antisymmetry: float
    jacobi: float
    unimodularity: float
    tol: float
    scale: float = 1.0

    @property
    def antisymmetric(self) -> bool:
        return self.antisymmetry <= self.tol * self.scale

    @property
    def jacobi_ok(self) -> bool:
        return self.jacobi <= self.tol * self.scale ** 2

    @property
    def unimodular(self) -> bool:
        return self.unimodularity <= self.tol * self.scale

    @property
    def ok(self) -> bool:
        return self.antisymmetric and self.jacobi_ok and self.unimodular


def validate_algebra(alg: LieAlgebra3, tol: float | None = None) -> AlgebraValidation:
    """Worst violations of antisymmetry, Jacobi and unimodularity."""
    tol = default_tol() if tol is None else tol
    c = alg.c
    anti = float(np.max(np.abs(c + c.transpose(1, 0, 2))))
    E = np.eye(3)
    jac = 0.0
    for i in range(3):
        for j in range(3):
            for k in range(3):
                s = (
                    alg.bracket(alg.bracket(E[i], E[j]), E[k])
                    + alg.bracket(alg.bracket(E[j], E[k]), E[i])
                    + alg.bracket(alg.bracket(E[k], E[i]), E[j])
                )
                jac = max(jac, float(np.max(np.abs(s))))
    uni = max(abs(float(np.trace(alg.ad(E[i])))) for i in range(3))
    return AlgebraValidation(anti, jac, uni, tol, scale_of(c))


def killing_form(alg: LieAlgebra3) -> np.ndarray:
    """``K(u, v) = tr(ad_u ad_v)`` on the basis."""
    ads = [alg.ad(e) for e in np.eye(3)]
    return np.array([[np.trace(ads[i] @ ads[j]) for j in range(3)] for i in range(3)])


_KILLING_TABLE = {
    (0, 0, 3): GroupId.NIL,
    (0, 3, 0): GroupId.SU2,
    (2, 1, 0): GroupId.PSL2R,
    (1, 0, 2): GroupId.SOL,
    (0, 1, 2): GroupId.E2TILDE,
}


def identify_group(alg: LieAlgebra3, tol: float | None = None) -> GroupId:
    """Group of a unimodular 3D algebra from its Killing signature."""
    tol = default_tol() if tol is None else tol
    v = validate_algebra(alg, tol)
    if not v.ok:
        raise InvalidAlgebraError(
            "not a 3D unimodular Lie algebra: "
            f"antisymmetry {v.antisymmetry:.3g}, Jacobi {v.jacobi:.3g}, trace(ad) {v.unimodularity:.3g}"
        )
    if np.max(np.abs(alg.c)) <= tol:
        return GroupId.ABELIAN
    K = killing_form(alg)
    # K is quadratic in the structure constants; measure it on that scale, not its own
    scale = scale_of(alg.c) ** 2
    ev = np.linalg.eigvalsh(K)
    gray = (np.abs(ev) > tol * scale) & (np.abs(ev) < 10 * tol * scale)
    if np.any(gray):
        raise InvalidAlgebraError(
            f"Killing form eigenvalues {ev.tolist()} sit near zero; signature is not reliable"
        )
    sig = sylvester_signature(K, tol, scale)
    try:
        return _KILLING_TABLE[sig.as_tuple()]
    except KeyError:
        raise InvalidAlgebraError(
            f"Killing signature {sig.as_tuple()} is not that of a 3D unimodular non-abelian algebra"
        ) from None


@dataclass(frozen=True)
class AutomorphismCheck:
    ok: bool
    defect: float
    det: float


def is_isomorphism(P, src: LieAlgebra3, dst: LieAlgebra3, tol: float | None = None) -> AutomorphismCheck:
    """Whether ``P[u, v]_src = [Pu, Pv]_dst`` on all basis pairs and ``P`` is invertible."""
    tol = default_tol() if tol is None else tol
    P = as_endo3(P)
    det = float(np.linalg.det(P))
    E = np.eye(3)
    defect = 0.0
    for i in range(3):
        for j in range(i + 1, 3):
            lhs = P @ src.bracket(E[i], E[j])
            rhs = dst.bracket(P @ E[i], P @ E[j])
            defect = max(defect, float(np.max(np.abs(lhs - rhs))))
    sP = scale_of(P)
    sc = max(scale_of(src.c), scale_of(dst.c))
    invertible = abs(det) > tol * sP ** 3
    ok = invertible and defect <= tol * sc * max(sP, sP ** 2)
    return AutomorphismCheck(ok, defect, det)


def is_automorphism(P, alg: LieAlgebra3, tol: float | None = None) -> AutomorphismCheck:
    """Whether ``P[u, v] = [Pu, Pv]`` on all basis pairs and ``P`` is invertible."""
    return is_isomorphism(P, alg, alg, tol)


def check_lorentzian(g, tol: float | None = None) -> np.ndarray:
    """Return the symmetrized metric or raise ``InvalidMetricError``."""
    tol = default_tol() if tol is None else tol
    G = sym_form(g)
    sig = sylvester_signature(G, tol)
    if sig != LORENTZIAN:
        raise InvalidMetricError(f"metric has signature {sig.as_tuple()}, expected (2, 1, 0)")
    return G


def pullback_metric(P, g, tol: float | None = None) -> np.ndarray:
    """``P^T G P``: the matrix of the pulled-back scalar product."""
    tol = default_tol() if tol is None else tol
    P = as_endo3(P)
    G = sym_form(g)
    if abs(np.linalg.det(P)) <= tol * scale_of(P) ** 3:
        raise ValueError("pullback by a singular matrix")
    out = P.T @ G @ P
    return 0.5 * (out + out.T)


def _model(brackets, basis, name):
    return LieAlgebra3.from_brackets(brackets, basis, name)


# standard bases; brackets not listed vanish
NIL = _model({(0, 1): (0, 0, 1)}, ("X", "Y", "Z"), "n")
SU2 = _model(
    {(0, 1): (0, 0, 2), (1, 2): (2, 0, 0), (2, 0): (0, 2, 0)},
    ("sigma_x", "sigma_y", "sigma_z"),
    "su(2)",
)
SL2 = _model(
    {(0, 1): (0, 0, 2), (2, 0): (0, 2, 0), (2, 1): (2, 0, 0)},
    ("X1", "X2", "X3"),
    "sl(2,R)",
)
SOL = _model({(0, 1): (0, 1, 0), (0, 2): (0, 0, -1)}, ("X1", "X2", "X3"), "sol")
E2 = _model({(0, 1): (0, 0, 1), (0, 2): (0, -1, 0)}, ("X1", "X2", "X3"), "e0(2)")
ABELIAN = LieAlgebra3(np.zeros((3, 3, 3)), ("X1", "X2", "X3"), "R^3")

MODELS: dict[GroupId, LieAlgebra3] = {
    GroupId.NIL: NIL,
    GroupId.SU2: SU2,
    GroupId.PSL2R: SL2,
    GroupId.SOL: SOL,
    GroupId.E2TILDE: E2,
}


def random_automorphism(group: GroupId, rng: np.random.Generator) -> np.ndarray:
    """A random element of the automorphism group of a model algebra.

    Used for invariance tests; the parametrizations follow the known
    automorphism groups of the five models in their standard bases.
    """
    if group is GroupId.NIL:
        A = rng.normal(size=(2, 2))
        while abs(np.linalg.det(A)) < 0.2:
            A = rng.normal(size=(2, 2))
        P = np.zeros((3, 3))
        P[:2, :2] = A
        P[2, :2] = rng.normal(size=2)
        P[2, 2] = np.linalg.det(A)
        return P
    if group in (GroupId.SU2,):
        q, _ = np.linalg.qr(rng.normal(size=(3, 3)))
        return q * np.sign(np.linalg.det(q))
    if group is GroupId.PSL2R:
        # Ad(g) for g in GL(2,R), in the basis X1, X2, X3
        g = rng.normal(size=(2, 2))
        while abs(np.linalg.det(g)) < 0.3:
            g = rng.normal(size=(2, 2))
        mats = [np.array([[0, 1], [-1, 0.0]]), np.array([[0, 1], [1, 0.0]]), np.array([[1, 0], [0, -1.0]])]
        gi = np.linalg.inv(g)

        def coord(m):
            return np.array([(m[0, 1] - m[1, 0]) / 2, (m[0, 1] + m[1, 0]) / 2, m[0, 0]])

        return np.column_stack([coord(g @ m @ gi) for m in mats])
    if group in (GroupId.SOL, GroupId.E2TILDE):
        P = np.zeros((3, 3))
        if group is GroupId.SOL:
            s, t = rng.uniform(0.4, 2.0, size=2) * rng.choice([-1, 1], size=2)
            if rng.random() < 0.5:
                P[:, 0] = (1, *rng.normal(size=2))
                P[1, 1], P[2, 2] = s, t
            else:
                P[:, 0] = (-1, *rng.normal(size=2))
                P[2, 1], P[1, 2] = s, t
        else:
            theta = rng.uniform(0, 2 * np.pi)
            r = rng.uniform(0.4, 2.0)
            eps = rng.choice([-1, 1])
            P[:, 0] = (eps, *rng.normal(size=2))
            R = r * np.array([[np.cos(theta), -np.sin(theta)], [np.sin(theta), np.cos(theta)]])
            if eps < 0:
                R = R @ np.diag([1.0, -1.0])
            P[1:, 1:] = R
        return P
    raise ValueError(f"no automorphism sampler for {group}")
