import math

import numpy as np
import pytest

from nongauss.errors import DomainError
from nongauss.fock_states import ThermalParams, make_pats, make_psts, make_thermal
from nongauss.nongaussianity import (
    associate_gaussian,
    delta_bures,
    delta_hs,
    delta_hs_psts_closed,
    delta_re,
    measures,
)

# 50-digit mpmath sums of p_n = (n+1)/2^(n+2) against s_n = (2/3)^n/3, n < 600
GOLDEN_RE_1_1 = 0.030095603514449717
GOLDEN_FID_1_1 = 0.0079558098689358032

NBAR_GRID = [0.1, 1.0, 2.0, 5.0]
X_GRID = [round(0.05 * k, 2) for k in range(1, 20)]


def hs_direct(state):
    """Hilbert-Schmidt degree from explicit thermal probabilities s_n."""
    p = state.probs
    pad = p.size + 4000
    gauss = associate_gaussian(state)
    s = gauss.probs(pad)
    p = np.concatenate((p, np.zeros(pad - p.size)))
    return 0.5 * (1 + math.fsum(s * s - 2 * s * p) / math.fsum(p * p))


class TestAssociateGaussian:
    def test_thermal_is_its_own(self):
        g = associate_gaussian(make_thermal(ThermalParams(1.0)))
        assert g.mean_occupancy == pytest.approx(1.0, abs=1e-12)
        assert g.sigma == pytest.approx(0.5, abs=1e-12)

    def test_subtracted(self):
        g = associate_gaussian(make_psts(ThermalParams(1.0), 1))
        assert g.mean_occupancy == pytest.approx(2.0, abs=1e-12)
        assert g.sigma == pytest.approx(2 / 3, abs=1e-12)

    def test_vacuum(self):
        g = associate_gaussian(make_thermal(ThermalParams(0.0)))
        assert g.mean_occupancy == 0.0 and g.sigma == 0.0
        assert g.probs(3).tolist() == [1.0, 0.0, 0.0]

    def test_probabilities_sum_to_one(self):
        g = associate_gaussian(make_psts(ThermalParams(2.0), 3))
        assert math.fsum(g.probs(2000)) == pytest.approx(1.0, abs=1e-12)


class TestHilbertSchmidt:
    @pytest.mark.parametrize("nbar", [0.0, 0.3, 1.0, 7.0])
    def test_thermal_zero(self, nbar):
        assert abs(delta_hs(make_thermal(ThermalParams(nbar)))) <= 1e-12

    def test_matches_closed_form(self):
        assert delta_hs(make_psts(ThermalParams(1.0), 1)) == pytest.approx(
            delta_hs_psts_closed(ThermalParams(1.0), 1), rel=1e-10)

    @pytest.mark.parametrize("nbar,m", [(1.0, 1), (0.1, 3), (5.0, 9), (2.0, 10)])
    def test_matches_explicit_sum(self, nbar, m):
        state = make_psts(ThermalParams(nbar), m)
        assert delta_hs(state) == pytest.approx(hs_direct(state), rel=1e-9)

    @pytest.mark.parametrize("m", [1, 4, 9])
    def test_vanishes_near_vacuum_seed(self, m):
        assert 0 <= delta_hs(make_psts(ThermalParams(1e-6), m)) < 1e-8


class TestRelativeEntropy:
    @pytest.mark.parametrize("nbar", [0.1, 1.0, 10.0])
    def test_thermal_zero(self, nbar):
        assert abs(delta_re(make_thermal(ThermalParams(nbar)))) <= 1e-10

    def test_golden(self):
        assert delta_re(make_psts(ThermalParams(1.0), 1)) == pytest.approx(GOLDEN_RE_1_1, abs=1e-13)

    def test_vacuum(self):
        assert delta_re(make_thermal(ThermalParams(0.0))) == 0.0


class TestBures:
    @pytest.mark.parametrize("nbar", [0.1, 1.0, 10.0])
    def test_thermal_zero(self, nbar):
        assert abs(delta_bures(make_thermal(ThermalParams(nbar)))) <= 1e-12

    def test_golden(self):
        assert delta_bures(make_psts(ThermalParams(1.0), 1)) == pytest.approx(GOLDEN_FID_1_1, abs=1e-13)

    @pytest.mark.parametrize("make,nbar,m", [
        (make_psts, 0.1, 1), (make_psts, 5.0, 10), (make_pats, 0.1, 1), (make_pats, 5.0, 10), (make_pats, 0.0, 3),
    ])
    def test_unit_interval(self, make, nbar, m):
        assert 0.0 <= delta_bures(make(ThermalParams(nbar), m)) <= 1.0


class TestClosedForm:
    @pytest.mark.parametrize("nbar", [0.1, 1.0, 3.0])
    def test_zero_photons(self, nbar):
        assert abs(delta_hs_psts_closed(ThermalParams(nbar), 0)) <= 1e-12

    def test_stress_point(self):
        assert delta_hs_psts_closed(ThermalParams(5.0), 9) == pytest.approx(
            delta_hs(make_psts(ThermalParams(5.0), 9)), rel=1e-9)

    def test_vacuum_seed_rejected(self):
        with pytest.raises(DomainError):
            delta_hs_psts_closed(ThermalParams(0.0), 2)

    @pytest.mark.parametrize("nbar", NBAR_GRID + [0.5])
    @pytest.mark.parametrize("m", range(11))
    def test_equivalence_grid(self, nbar, m):
        closed = delta_hs_psts_closed(ThermalParams(nbar), m)
        series = delta_hs(make_psts(ThermalParams(nbar), m))
        assert abs(closed - series) <= 1e-9 * max(abs(series), 1e-300) or abs(closed - series) <= 1e-15


class TestMeasures:
    def test_thermal(self):
        ms = measures(make_thermal(ThermalParams(2.0)))
        assert max(abs(ms.hs), abs(ms.re), abs(ms.fid)) <= 1e-10

    def test_bundles_components(self):
        state = make_psts(ThermalParams(1.0), 1)
        ms = measures(state)
        assert (ms.hs, ms.re, ms.fid) == (delta_hs(state), delta_re(state), delta_bures(state))

    def test_more_photons_more_non_gaussian(self):
        lo = measures(make_psts(ThermalParams(1.5), 8))
        hi = measures(make_psts(ThermalParams(1.5), 9))
        assert hi.hs > lo.hs and hi.re > lo.re and hi.fid > lo.fid


def _triples(states):
    return np.array([[ms.hs, ms.re, ms.fid] for ms in map(measures, states)])


@pytest.mark.parametrize("nbar", [0.0, 0.1, 1.0, 2.0, 5.0, 10.0])
def test_gaussian_zero(nbar):
    assert np.all(np.abs(_triples([make_thermal(ThermalParams(nbar))])) <= 1e-10)


@pytest.mark.parametrize("nbar", NBAR_GRID)
def test_increasing_in_photon_number(nbar):
    values = _triples(make_psts(ThermalParams(nbar), m) for m in range(11))
    assert np.all(np.diff(values, axis=0) > 1e-12)


@pytest.mark.parametrize("m", [1, 4, 5, 8, 9])
def test_increasing_in_thermal_ratio(m):
    values = _triples(make_psts(ThermalParams.from_x(x), m) for x in X_GRID)
    assert np.all(np.diff(values, axis=0) > 1e-12)


@pytest.mark.parametrize("nbar", NBAR_GRID)
@pytest.mark.parametrize("m", range(11))
def test_added_dominates_subtracted(nbar, m):
    params = ThermalParams(nbar)
    added, subtracted = _triples([make_pats(params, m)]), _triples([make_psts(params, m)])
    assert np.all(added - subtracted >= -1e-12)


@pytest.mark.parametrize("make", [make_psts, make_pats])
@pytest.mark.parametrize("nbar", NBAR_GRID)
@pytest.mark.parametrize("m", [0, 1, 5, 10])
def test_ranges(make, nbar, m):
    ms = measures(make(ThermalParams(nbar), m))
    assert 0 <= ms.hs < 1
    assert ms.re >= 0
    assert 0 <= ms.fid <= 1
