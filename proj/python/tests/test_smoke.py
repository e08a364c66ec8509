import json
import math

import numpy as np
import pytest

import kpze


def test_airy_identities():
    assert kpze.airy_cdf(0.0) == pytest.approx(2 / 3, abs=1e-12)
    assert kpze.airy_tail(0.0) == pytest.approx(1 / 3, abs=1e-12)
    assert kpze.airy_ai(0.0) == pytest.approx(0.3550280538878172, abs=1e-14)


def test_spectrum():
    eigs = kpze.airy_eigs(5)
    assert eigs[0] == pytest.approx(2.338107410459767, abs=1e-10)
    assert kpze.count_eigs_below(10.0) == 6


def test_painleve_matches_fredholm():
    v = 1.0
    assert kpze.f2_analytic(-2.0, v) == pytest.approx(kpze.fredholm_det_airy(-2.0, 1 - math.exp(-v)), abs=1e-6)
    assert kpze.f1_analytic(-1.0, 1.0) == pytest.approx(0.733007, abs=1e-5)
    sol = kpze.solve_uas(0.5, -5.0)
    assert len(sol["x"]) == len(sol["u"]) > 10


def test_sampling_and_stats(tmp_path):
    s = kpze.sample_tridiag_edge(200, 5, 50, seed=3)
    pts = s.points
    assert pts.shape == (50, 5)
    assert np.all(np.diff(pts, axis=1) < 0)
    e = kpze.empirical_cgf(s, -1.0, 0.0)
    assert e.value == 1.0 and e.std_error == 0.0
    path = tmp_path / "s.bin"
    s.save(str(path))
    t = kpze.load_sample(str(path))
    np.testing.assert_array_equal(t.points, pts)
    again = kpze.sample_tridiag_edge(200, 5, 50, seed=3)
    np.testing.assert_array_equal(again.points, pts)


def test_synthetic_sample_and_errors():
    s = kpze.sample_from_points(np.array([[-1.0, -3.0, -5.0]]))
    assert kpze.tail_prob_max(s, 0.5).value == 1.0
    with pytest.raises(kpze.TruncationError):
        kpze.laplace_functional(s, 2.0, 8.0)
    with pytest.raises(ValueError):
        kpze.fredholm_det_airy(0.0, 2.0)
    with pytest.raises(ValueError):
        kpze.sample_from_points(np.array([[-1.0, 0.0]]))


def test_bounds():
    r = kpze.kpz_tail_bounds(5.0, 1e6, 0.1, 0.1)
    assert r["regime"] == "goe_regime"
    assert r["dominant_lower"] == "lower_cubic"
    assert kpze.f1_bound_curve(1.0, 0.2) == pytest.approx(math.exp(-1 / (3 * math.pi)))


def test_verify_fast():
    report = json.loads(kpze.run_verify("fast", seed=1))
    assert report["summary"]["fail"] == 0
    assert all("anchor" in row for row in report["checks"])
