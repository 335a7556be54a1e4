"""Statistics and geometry of the coherent families.

The exact rational anchors below (11/12, 75/64, 16/3, 184/9, 25/42,
8/11) all come from the GCS2 elementary normalization or from the
two-term z -> 0 limit, worked out by hand.
"""

import math

import numpy as np
import pytest

from scarfcs import coherent, observables, scarf
from scarfcs.coherent import GcsKind, GcsSpec, Zeta
from scarfcs.observables import StatsReport

P2 = scarf.PotentialParams(2.0, 0.5)
P12 = scarf.PotentialParams(12.0, 10.9)


def test_gcs2_exact_anchors():
    # N = (1+z)(1-z)^(-5) at alpha = 2 makes everything rational at z = 1/2
    spec = GcsSpec(GcsKind.GCS2)
    assert observables.mandel_q(spec, P2, 0.5) == pytest.approx(11.0 / 12.0, rel=1e-14)
    assert observables.g2(spec, P2, 0.5) == pytest.approx(75.0 / 64.0, rel=1e-14)
    assert observables.mean_photon(spec, P2, 0.5) == pytest.approx(16.0 / 3.0, rel=1e-14)
    assert observables.metric_factor(spec, P2, 0.5) == pytest.approx(184.0 / 9.0, rel=1e-14)


def test_zero_z_limits():
    # g2(0) = 2 t_2 / t_1^2, a pure weight-ratio statement
    assert observables.g2(GcsSpec(GcsKind.GCS1), P2, 0.0) == pytest.approx(
        25.0 / 42.0, rel=1e-13)
    assert observables.g2(GcsSpec(GcsKind.GCS4, sigma=1.5), P2, 0.0) == pytest.approx(
        2.0, rel=1e-13)
    assert observables.g2(GcsSpec(GcsKind.GCS4, sigma=-9.0), P2, 0.0) == pytest.approx(
        8.0 / 11.0, rel=1e-13)


@pytest.mark.parametrize("z", [0.1, 0.5, 1.0, 4.0])
def test_gcs4_sigma_zero_is_poissonian(z):
    spec = GcsSpec(GcsKind.GCS4, sigma=0.0)
    assert observables.g2(spec, P2, z) == pytest.approx(1.0, abs=1e-12)
    assert observables.mandel_q(spec, P2, z) == pytest.approx(0.0, abs=1e-12)
    assert observables.mean_photon(spec, P2, z) == pytest.approx(z, rel=1e-12)
    assert observables.metric_factor(spec, P2, z) == pytest.approx(1.0, rel=1e-12)


@pytest.mark.parametrize("kind,sigma,zs", [
    (GcsKind.GCS1, None, np.linspace(0.25, 10.0, 14)),
    (GcsKind.GCS2, None, np.linspace(0.05, 0.95, 10)),
    (GcsKind.GCS3, None, np.linspace(0.25, 4.0, 8)),
    (GcsKind.GCS4, -1.0, np.linspace(0.25, 10.0, 8)),
])
@pytest.mark.parametrize("alpha", [2.0, 5.0, 10.0])
def test_mandel_q_identity(alpha, kind, sigma, zs):
    # Q = <n> (g2 - 1) ties three observables together
    p = scarf.PotentialParams(alpha, (alpha - 1.0) / 2.0)
    spec = GcsSpec(kind, sigma=sigma)
    for z in zs:
        r = observables.stats_report(spec, p, float(z))
        assert r.mandel_q == pytest.approx(
            r.mean_photon * (r.g2 - 1.0), abs=1e-10 * max(1.0, abs(r.mandel_q)))


@pytest.mark.parametrize("kind,sigma,z", [
    (GcsKind.GCS1, None, 2.0),
    (GcsKind.GCS2, None, 0.6),
    (GcsKind.GCS3, None, 1.5),
    (GcsKind.GCS4, 1.5, 2.0),
])
def test_metric_factor_is_mean_photon_slope(kind, sigma, z):
    spec = GcsSpec(kind, sigma=sigma)
    h = 1e-5 * max(1.0, z)
    fd = (observables.mean_photon(spec, P12, z + h)
          - observables.mean_photon(spec, P12, z - h)) / (2.0 * h)
    assert observables.metric_factor(spec, P12, z) == pytest.approx(fd, rel=1e-6)


def test_sign_structure():
    # family 1 is sub-Poissonian, family 2 super-Poissonian
    for z in np.linspace(0.25, 10.0, 14):
        assert observables.mandel_q(GcsSpec(GcsKind.GCS1), P12, float(z)) < 0.0
        assert observables.g2(GcsSpec(GcsKind.GCS1), P12, float(z)) < 1.0
    for z in np.linspace(0.05, 0.95, 10):
        assert observables.mandel_q(GcsSpec(GcsKind.GCS2), P12, float(z)) > 0.0
        assert observables.g2(GcsSpec(GcsKind.GCS2), P12, float(z)) > 1.0


def test_metric_factor_positive():
    for z in (0.1, 0.9, 3.0):
        assert observables.metric_factor(GcsSpec(GcsKind.GCS1), P12, z) > 0.0
        assert observables.metric_factor(GcsSpec(GcsKind.GCS3), P12, z) > 0.0


def test_stats_report_is_consistent():
    spec = GcsSpec(GcsKind.GCS3)
    r = observables.stats_report(spec, P12, 1.7)
    assert isinstance(r, StatsReport)
    assert r.z == 1.7
    assert r.g2 == pytest.approx(observables.g2(spec, P12, 1.7), rel=1e-14)
    assert r.mandel_q == pytest.approx(observables.mandel_q(spec, P12, 1.7), rel=1e-14)
    assert r.mean_photon == pytest.approx(
        observables.mean_photon(spec, P12, 1.7), rel=1e-14)
    assert r.metric_factor == pytest.approx(
        observables.metric_factor(spec, P12, 1.7), rel=1e-14)


def test_autocorrelation_at_origin_and_revival():
    zeta = Zeta(1.0)
    for kind in (GcsKind.GCS1, GcsKind.GCS3):
        spec = GcsSpec(kind)
        assert abs(observables.autocorrelation(spec, P12, zeta, 0.0)) ** 2 == (
            pytest.approx(1.0, abs=1e-12))
        revived = observables.autocorrelation(spec, P12, zeta, 2.0 * math.pi)
        assert abs(revived) ** 2 == pytest.approx(1.0, abs=1e-10)


def test_no_full_revival_for_generic_alpha():
    # fractional alpha scrambles the 2 pi phases (12.3: measured 0.868)
    p = scarf.PotentialParams(12.3, 10.9)
    a = observables.autocorrelation(GcsSpec(GcsKind.GCS1), p, Zeta(1.0),
                                    2.0 * math.pi)
    assert abs(a) ** 2 < 0.95


def test_autocorrelation_symmetries():
    spec = GcsSpec(GcsKind.GCS3)
    zeta = Zeta(1.2, 0.7)
    t = 0.7
    a_plus = observables.autocorrelation(spec, P12, zeta, t)
    a_minus = observables.autocorrelation(spec, P12, zeta, -t)
    assert a_minus == pytest.approx(np.conj(a_plus), abs=1e-13)
    # integer alpha makes A exactly 2 pi periodic
    shifted = observables.autocorrelation(spec, P12, zeta, t + 2.0 * math.pi)
    assert shifted == pytest.approx(a_plus, abs=1e-12)
    # the phase of zeta never enters |<zeta(t)|zeta>|
    plain = observables.autocorrelation(spec, P12, Zeta(1.2), t)
    assert plain == pytest.approx(a_plus, abs=1e-13)


def test_autocorrelation_trace_shape_and_bound():
    times = np.linspace(0.0, 2.0 * math.pi, 64)
    trace = observables.autocorrelation_trace(GcsSpec(GcsKind.GCS1), P12,
                                              Zeta(3.0), times)
    assert trace.shape == times.shape
    assert np.all(np.abs(trace) <= 1.0 + 1e-12)
    assert float(np.min(np.abs(trace))) < 0.9  # it actually decays in between


def test_autocorrelation_is_model_free():
    import inspect
    for fn in (observables.autocorrelation, observables.autocorrelation_trace):
        assert "model" not in inspect.signature(fn).parameters
