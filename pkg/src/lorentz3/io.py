"""Input parsing, report documents and deterministic JSON output."""

from __future__ import annotations

import json
import math
import time
from pathlib import Path

import numpy as np

from .catalog import ClassificationError, FamilyId, build_metric, classify_metric, family
from .curvature import curvature, levi_civita
from .lie import MODELS, GroupId, InvalidAlgebraError, LieAlgebra3, check_lorentzian, identify_group, validate_algebra
from .linalg import default_tol
from .milnor import FrameError, canonical_frame, milnor_operator
from .properties import property_report


class InputError(ValueError):
    """Unparseable command-line or file input; the message names the location."""


# -- parsing ---------------------------------------------------------------------------


def _number(text: str, where: str) -> float:
    try:
        x = float(text)
    except ValueError:
        raise InputError(f"{where}: {text.strip()!r} is not a number") from None
    if not math.isfinite(x):
        raise InputError(f"{where}: {text.strip()!r} is not finite")
    return x


def parse_metric(text: str) -> np.ndarray:
    """Metric from ``"a,b,c;d,e,f;g,h,i"`` rows or a JSON 3x3 array / ``{"metric": ...}`` file.

    Only the lower triangle is read; the upper triangle is mirrored from it.
    """
    text = text.strip()
    path = Path(text)
    if ";" not in text and (path.suffix == ".json" or path.is_file()):
        try:
            doc = json.loads(path.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"{text}: cannot read metric JSON ({exc})") from None
        rows = doc.get("metric") if isinstance(doc, dict) else doc
        if not isinstance(rows, list):
            raise InputError(f"{text}: expected a 3x3 array or an object with a 'metric' field")
        text = ";".join(",".join(str(x) for x in (r if isinstance(r, list) else [r])) for r in rows)
    rows = [r for r in text.split(";")]
    if len(rows) != 3:
        raise InputError(f"metric: expected 3 rows separated by ';', got {len(rows)}")
    G = np.zeros((3, 3))
    for i, row in enumerate(rows):
        entries = row.split(",")
        if len(entries) != 3:
            raise InputError(f"metric row {i + 1}: expected 3 entries, got {len(entries)}")
        for j, e in enumerate(entries):
            x = _number(e, f"metric row {i + 1}, entry {j + 1}")
            if j <= i:
                G[i, j] = G[j, i] = x
    return G


def parse_params(text: str | None) -> tuple[float, ...]:
    if text is None or not text.strip():
        return ()
    return tuple(_number(x, f"parameter {k + 1}") for k, x in enumerate(text.split(",")))


def parse_group(text: str) -> GroupId:
    try:
        return GroupId.parse(text)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def parse_family(text: str) -> FamilyId:
    try:
        return FamilyId.parse(text)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def load_algebra(path: str, tol: float | None = None) -> LieAlgebra3:
    """Structure constants from a JSON file; raises ``InvalidAlgebraError`` when not unimodular Lie."""
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"{path}: cannot read algebra JSON ({exc})") from None
    try:
        alg = LieAlgebra3.from_json(doc)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, InvalidAlgebraError):
            raise
        raise InputError(f"{path}: malformed algebra ({exc})") from None
    v = validate_algebra(alg, tol)
    if not v.ok:
        raise InvalidAlgebraError(
            f"not a unimodular Lie algebra (antisymmetry {v.antisymmetry:.3g}, Jacobi {v.jacobi:.3g}, "
            f"trace ad {v.unimodularity:.3g})")
    return alg


# -- serialization -----------------------------------------------------------------------


def _plain(x):
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, np.ndarray):
        return _plain(x.tolist())
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        if not math.isfinite(x):
            return None
        return 0.0 if x == 0 else x
    return x


def dumps(doc) -> str:
    """Deterministic JSON: fixed key order, shortest round-trip floats (at most 17 digits)."""
    return json.dumps(_plain(doc), indent=2, ensure_ascii=False, allow_nan=False)


# -- reports ---------------------------------------------------------------------------------


def _eigen_json(L) -> list:
    ev = np.linalg.eigvals(L)
    ev = sorted(ev, key=lambda z: (round(z.real, 12), round(z.imag, 12)))
    return [[float(z.real), float(z.imag)] for z in ev]


def milnor_summary(alg: LieAlgebra3, G, tol: float) -> dict:
    out = {"orientations": []}
    for o in (1, -1):
        M = milnor_operator(alg, G, o, tol)
        entry = {"orientation": o, "L": M.L, "eigenvalues": _eigen_json(M.L)}
        try:
            cf = canonical_frame(M, tol)
            entry.update({"type": cf.optype.label, "type_params": cf.optype.params(),
                          "frame_orientation": cf.orientation, "margin": cf.margin, "frame_residual": cf.residual})
        except FrameError as exc:
            entry["type"] = None
            entry["error"] = str(exc)
        out["orientations"].append(entry)
    return out


def report_document(alg: LieAlgebra3, g, tol: float | None = None, group: GroupId | None = None,
                    source: dict | None = None, timing: bool = False, orientation="auto") -> dict:
    """Full pipeline output for one metric: operator, curvature, properties, classification."""
    tol = default_tol() if tol is None else tol
    t0 = time.perf_counter()
    group = identify_group(alg, tol) if group is None else group
    G = check_lorentzian(g, tol)
    lc = levi_civita(alg, G, tol)
    data = curvature(alg, G, tol)
    rep = property_report(alg, lc, data, tol)
    doc = {
        "input": {"group": group.value, "metric": G, "tol": tol, **(source or {})},
        "milnor": milnor_summary(alg, G, tol) if group is not GroupId.ABELIAN else None,
        "curvature": {
            "ric": data.ric,
            "Ric": data.Ric,
            "scalar": data.scalar,
            "K": data.K,
            "levi_civita": lc.ops,
        },
        "properties": {
            "flat": rep.flat,
            "constant_curvature": rep.constant_curvature,
            "einstein": rep.einstein,
            "locally_symmetric": rep.locally_symmetric,
            "semi_symmetric": rep.semi_symmetric,
            "ricci_signature": {"counts": list(rep.ricci_signature.as_tuple()), "signs": rep.ricci_signature.signs()},
            "ricci_type": None if rep.ricci_type is None else {
                "type": rep.ricci_type.optype.label, "params": rep.ricci_type.optype.params(),
                "jordan_sign": rep.ricci_type.jordan_sign, "Ric_squared": rep.ricci_type.nilpotent_square},
            "soliton": None if rep.soliton is None else rep.soliton.to_json(),
            "chain_violations": list(rep.chain_violations),
        },
    }
    warnings = []
    try:
        cls = classify_metric(alg, G, tol, orientation)
        doc["classification"] = cls.to_json()
        warnings.extend(cls.warnings)
    except ClassificationError as exc:
        doc["classification"] = None
        warnings.append(f"classification failed: {exc}")
    doc["warnings"] = warnings
    if timing:
        doc["timing_s"] = time.perf_counter() - t0
    return doc


def family_report(f, params, tol: float | None = None, timing: bool = False, orientation="auto") -> dict:
    rec = family(f)
    group, G = build_metric(rec, params)
    source = {"family": rec.id.value, "params": dict(zip(rec.params, (float(x) for x in params)))}
    return report_document(MODELS[group], G, tol, group, source, timing, orientation)


_GREEK = {"lam": "λ", "mu1": "μ₁", "mu2": "μ₂", "mu3": "μ₃", "alpha": "α", "beta": "β"}


def summary_line(family_id: str, params: dict) -> str:
    parts = [family_id] + [f"{_GREEK.get(k, k)}={v:.12g}" for k, v in params.items()]
    return " ".join(parts)
