import json

import numpy as np
import pytest
from hypothesis import given, settings

from lorentz3.catalog import (
    ERRATA,
    FAMILIES,
    ClassificationError,
    DomainError,
    FamilyId,
    build_metric,
    canonical_representative,
    catalog_json,
    classify_metric,
    design_grid,
    expected_curvature,
    expected_signature,
    family,
    isometry_to,
    verify_family,
    witness_check,
)
from lorentz3.curvature import curvature
from lorentz3.lie import ABELIAN, MODELS, GroupId, random_automorphism
from lorentz3.milnor import ETA

from strategies import family_point, seeds


def test_there_are_twenty_one_families():
    assert len(FAMILIES) == 21
    assert len(catalog_json()) == 21
    json.dumps(catalog_json())


@pytest.mark.parametrize("text,fid", [("sl2azz+", "SL2AZZ_P"), ("SL2AZZ-", "SL2AZZ_M"), ("sl2azz0", "SL2AZZ_0"),
                                      ("S0L03", "SOL03"), ("e2a02", "E2A02"), ("sol0zz0", "SOL0ZZ0")])
def test_family_aliases(text, fid):
    assert FamilyId.parse(text) is FamilyId(fid)


def test_unknown_family():
    with pytest.raises(ValueError):
        FamilyId.parse("SOL04")


@pytest.mark.parametrize("fid,p,G", [
    ("N1", (2,), np.diag([1.0, 1, -2])),
    ("N2", (4,), np.diag([4.0, 1, -1])),
    ("SOL03", (), [[0, 0, 1], [0, 1, 0], [1, 0, 0]]),
    ("E2A02", (1,), [[0, 1, 0], [1, 0, 0], [0, 0, 1]]),
    ("SU2", (1, 1, 1), ETA),
])
def test_family_matrices(fid, p, G):
    assert np.allclose(build_metric(fid, p)[1], G)


@pytest.mark.parametrize("fid,p", [("N1", (0,)), ("N1", (-1,)), ("SU2", (1, 2, 1)), ("SL2D1", (1, 1, 2)),
                                   ("SL2A3", (0,)), ("SOLD1", (1, 1)), ("SOLD1", (-1, 1)), ("SOL0B2", (0,)),
                                   ("SL2AZZ_M", (1, 1, 1)), ("E2D1", (1, 0))])
def test_domain_violations_are_rejected(fid, p):
    with pytest.raises(DomainError) as info:
        build_metric(fid, p)
    assert info.value.family is FamilyId.parse(fid)


def test_wrong_arity_is_rejected():
    with pytest.raises(ValueError):
        build_metric("SU2", (1, 1))


@pytest.mark.parametrize("fid", list(FAMILIES))
def test_grid_points_are_in_domain_and_lorentzian(fid):
    pts = design_grid(fid)
    assert pts and len(set(pts)) == len(pts)
    for p in pts:
        _, G = build_metric(fid, p)
        ev = np.linalg.eigvalsh(G)
        assert np.sum(ev > 0) == 2 and np.sum(ev < 0) == 1


def test_grid_size():
    assert sum(len(design_grid(f)) for f in FAMILIES) == 725


# -- published values against the pipeline ------------------------------------------------


def _item(e, item):
    if item == "scalar":
        return e.scalar
    i, j = (int(x) for x in item[4:-1].split(","))
    return e.ric[i, j]


@pytest.mark.parametrize("key", list(ERRATA), ids=lambda k: f"{k[0].value}:{k[1]}")
def test_errata_are_real_and_corrected_forms_hold(key):
    fid, item = key
    printed_differs = False
    for p in design_grid(fid):
        group, G = build_metric(fid, p)
        d = curvature(MODELS[group], G)
        got = _item(d, item)
        printed = _item(expected_curvature(fid, p), item)
        fixed = _item(expected_curvature(fid, p, corrected=True), item)
        assert fixed == pytest.approx(got, rel=1e-9, abs=1e-9)
        printed_differs |= not np.isclose(printed, got, rtol=1e-6, atol=1e-9)
    assert printed_differs


@pytest.mark.parametrize("fid", list(FAMILIES))
def test_corrected_ricci_matches_everywhere_on_grid(fid):
    for p in design_grid(fid):
        group, G = build_metric(fid, p)
        d = curvature(MODELS[group], G)
        exp = expected_curvature(fid, p, corrected=True)
        scale = max(1.0, np.max(np.abs(exp.ric)))
        assert np.max(np.abs(d.ric - exp.ric)) <= 1e-9 * scale
        assert abs(d.scalar - exp.scalar) <= 1e-9 * scale


def test_published_examples():
    e = expected_curvature("SOL0ZZ", (1, 1))
    assert e.scalar == -2 and np.allclose(e.ric, [[-1, 0, 0], [0, 2, 2], [0, 2, -2]])
    e = expected_curvature("N2", (4,))
    assert e.scalar == pytest.approx(1 / 8)
    assert np.allclose(expected_curvature("N0").ric, 0)


def test_signature_expectation_statuses():
    assert expected_signature("SU2", (1, 1, 1)).status in ("stated", "possible")
    s = expected_signature("SOLD1", (-0.5, 1.0))
    assert s.status in ("stated", "ambiguous")


@pytest.mark.parametrize("fid", list(FAMILIES))
def test_verification_without_errata_has_no_failures(fid):
    for p in design_grid(fid, 3):
        v = verify_family(fid, p)
        assert v.passed(allow_errata=True), [i for i in v.items if i.status == "fail"]


def test_erratum_entries_are_reported_not_hidden():
    v = verify_family("E2A02", (2.0,))
    assert any(i.status == "paper-erratum" for i in v.items)
    assert not v.passed()


# -- witnesses --------------------------------------------------------------------------------


@pytest.mark.parametrize("fid", ["N1", "N0", "SU2", "SL2D2", "SL2AB2", "SL2A3", "SOLD2", "SOL0ZZ", "SOL0ZZ0",
                                 "E2D1", "E2D2"])
def test_published_witnesses_hold(fid):
    for p in design_grid(fid):
        r = witness_check(fid, p)
        assert r.ok, [i for i in r.items if i.status not in ("pass", "info")]


@pytest.mark.parametrize("fid,p", [("N2", (4.0,)), ("SL2D1", (1.0, 2.0, 0.5)), ("SL2AZZ_P", (1.0, 1.0, 2.0)),
                                   ("SOLA02", (2.0,)), ("SOL0B2", (0.5,)), ("SOL03", ()), ("E2A02", (1.0,))])
def test_misprinted_witnesses_have_verified_corrections(fid, p):
    r = witness_check(fid, p)
    assert not r.ok
    assert {i.status for i in r.items} <= {"pass", "info", "paper-erratum"}
    assert [i for i in r.items if i.name.startswith("corrected chain")][0].status == "pass"


def test_witness_outside_its_construction_is_unrealizable():
    r = witness_check("SOLD1", (-2.0, 1.0))
    assert [i.status for i in r.items] == ["unrealizable"]


# -- classification --------------------------------------------------------------------------------


def _classify(fid, p):
    group, G = build_metric(fid, p)
    return classify_metric(MODELS[group], G)


@pytest.mark.parametrize("fid,p", [("N1", (2.0,)), ("N2", (4.0,)), ("SU2", (2.0, 1.0, 0.5)),
                                   ("SL2D2", (1.0, 2.0, 3.0)), ("SOL03", ()), ("E2D2", (1.0, 2.0)),
                                   ("SL2AZZ_M", (1.0, -1.0, 1.0)), ("SL2A3", (1.0,))])
def test_classifier_recovers_canonical_points(fid, p):
    c = _classify(fid, p)
    assert c.family is FamilyId.parse(fid)
    assert np.allclose(c.values(), p, atol=1e-9)
    assert not c.warnings


@pytest.mark.parametrize("fid,p,target", [
    ("N1", (0.5,), ("N2", (2.0,))),
    ("N2", (0.5,), ("N1", (2.0,))),
    ("SL2A3", (-1.0,), ("SL2A3", (1.0,))),
    ("SOLD1", (-0.5, 1.0), ("SOLD1", (0.5, 1.0))),
    ("SOLD1", (-2.0, 1.0), ("SOLD2", (1.0, 2.0))),
    ("E2D1", (2.0, 1.0), ("E2D1", (2.0, 4.0))),
])
def test_equivalent_parameters_and_isometry_certificates(fid, p, target):
    tf, tp = canonical_representative(fid, p)
    assert (tf.value, tp) == (target[0], target[1])
    c = _classify(fid, p)
    assert c.family is tf and np.allclose(c.values(), tp)
    group, G_from = build_metric(fid, p)
    _, G_to = build_metric(tf, tp)
    A = isometry_to(MODELS[group], G_from, G_to)
    assert A is not None
    assert np.allclose(A.T @ G_to @ A, G_from, atol=1e-8)


def test_spacelike_centre_nil_metric_is_not_in_the_catalog():
    with pytest.raises(ClassificationError):
        classify_metric(MODELS[GroupId.NIL], np.diag([1.0, -1.0, 1.0]))


def test_abelian_algebra_is_not_classified():
    with pytest.raises(ClassificationError):
        classify_metric(ABELIAN, ETA)


@settings(max_examples=80)
@given(family_point(max_cond=1e4))
def test_round_trip_modulo_equivalences(point):
    fid, p = point
    tf, tp = canonical_representative(fid, p)
    c = _classify(fid, p)
    assert c.family is tf
    assert np.allclose(c.values(), tp, rtol=1e-6, atol=1e-6)


@settings(max_examples=80)
@given(family_point(max_cond=1e4), seeds)
def test_classification_is_invariant_under_automorphisms(point, seed):
    fid, p = point
    group, G = build_metric(fid, p)
    A = random_automorphism(group, np.random.default_rng(seed))
    if np.linalg.cond(A.T @ G @ A) > 1e6:
        return
    c1 = classify_metric(MODELS[group], G)
    c2 = classify_metric(MODELS[group], A.T @ G @ A)
    assert c1.family is c2.family
    assert np.allclose(c1.values(), c2.values(), rtol=1e-5, atol=1e-6)


def test_record_json_is_serializable():
    for fid in FAMILIES:
        doc = family(fid).to_json()
        assert doc["id"] == fid.value
        json.dumps(doc)
