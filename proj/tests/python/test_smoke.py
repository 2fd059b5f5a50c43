"""Smoke tests for the Python bindings."""

import math

import numpy as np
import pytest

import lnelab


def test_classifiers():
    v = lnelab.classify_brieskorn(2, 3, 3)
    assert v["lne"] is False
    assert v["clause"] == "n1"
    assert "witness_minus" in v

    assert lnelab.classify_brieskorn(3, 4, 5)["lne"] is True
    assert lnelab.classify_brieskorn(2, 2, 2)["clause"] == "i"

    horn = lnelab.classify_horn(3, 2, 2)
    assert horn["applicable"] and horn["lne"]
    assert not lnelab.classify_horn(3, 3, 2)["applicable"]


def test_corpus_and_sampling():
    names = lnelab.corpus_names()
    assert "brieskorn233" in names and "spiral" in names

    germ = lnelab.corpus_germ("horn")
    cloud = lnelab.sample_ball(germ, 0.4, 500, seed=7)
    pts = cloud.points
    assert pts.shape[1] == 3
    assert len(cloud) >= 400
    # membership spot check
    worst = max(germ.max_residual(p) for p in pts[:50])
    assert worst <= germ.residual_tol

    again = lnelab.sample_ball(germ, 0.4, 500, seed=7)
    assert np.array_equal(pts, again.points)


def test_projection():
    germ = lnelab.corpus_germ("horn")
    x = lnelab.project_to_variety(germ, np.array([0.1, 0.1, 0.1]))
    assert x is not None
    assert germ.max_residual(x) <= 1e-10


def test_graph_operations():
    n = 200
    angles = 2 * math.pi * np.arange(n) / n
    circle = np.stack([np.cos(angles), np.sin(angles)], axis=1)
    est = lnelab.lne_constant(circle, k=2)
    assert est["defined"]
    assert est["constant"] == pytest.approx(math.pi / 2, rel=0.05)

    parts = lnelab.components(circle, k=2)
    assert parts["component_count"] == 1

    d = lnelab.inner_distance(circle, 0, n // 2, k=2)
    assert d == pytest.approx(math.pi, rel=0.01)


def test_sweep_and_verdict():
    germ = lnelab.corpus_germ("line")
    result = lnelab.sweep(germ, [0.4, 0.2, 0.1, 0.05], per_slice_count=40, seed=3)
    assert result["verdict"]["classification"] == "bounded"
    assert result["csv"].startswith("t,n_samples,n_components,C_t,d0,stable")
    for rec in result["records"]:
        assert rec["n_components"] == 2
        assert rec["d0"] == pytest.approx(2 * rec["t"], rel=1e-3)


def test_arcs_and_hausdorff():
    # (t, 0) against (t, t^2)
    a = [[(1.0, 1, 1)], []]
    b = [[(1.0, 1, 1)], [(1.0, 2, 1)]]
    exact = lnelab.tord_outer(a, b)
    assert exact["method"] == "symbolic_exact"
    assert exact["order"] == pytest.approx(2.0)

    reg = lnelab.tord_outer(a, b, [0.2, 0.1, 0.05, 0.025])
    assert reg["order"] == pytest.approx(2.0, abs=0.05)

    x = np.array([[0.0, 0.0]])
    y = np.array([[3.0, 4.0]])
    assert lnelab.hausdorff_distance(x, y) == pytest.approx(5.0)


def test_germ_json_round_trip():
    germ = lnelab.corpus_germ("brieskorn233")
    text = lnelab.germ_to_json(germ)
    back = lnelab.germ_from_json(text)
    assert lnelab.germ_to_json(back) == text
