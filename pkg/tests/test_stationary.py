"""Attractor ensembles and features under stationary / transient dynamics."""

import io
import math

import numpy as np
import pytest

from infoproc import langton, stationary
from infoproc.errors import DomainError, ResourceError


def test_masses_form_a_distribution():
    for rule in (0, 30, 90, 110):
        ens = stationary.attractor_ensemble(rule, 10)
        assert ens.masses.sum() == pytest.approx(1.0, abs=1e-12)
        assert (ens.masses > 0).all()
        assert (np.diff(ens.states.astype(np.int64)) > 0).all()


@pytest.mark.parametrize("rule", [0, 18, 30, 54, 90, 110, 150, 184, 204, 232])
def test_ensemble_is_invariant_under_stepping(rule):
    ens = stationary.attractor_ensemble(rule, 11)
    stepped = ens.step()
    assert (ens.states == stepped.states).all()
    np.testing.assert_array_equal(ens.masses, stepped.masses)


def test_rule_zero_collapses_to_the_empty_state():
    ens = stationary.attractor_ensemble(0, 9)
    assert ens.states.tolist() == [0]
    assert ens.masses.tolist() == [1.0]


def test_identity_rule_keeps_everything():
    ens = stationary.attractor_ensemble(204, 8)
    assert len(ens.states) == 256
    np.testing.assert_allclose(ens.masses, 1 / 256)


def test_ring_size_bounds():
    with pytest.raises(ResourceError):
        stationary.attractor_ensemble(110, 2)
    with pytest.raises(ResourceError):
        stationary.attractor_ensemble(110, stationary.MAX_RING + 1)


def test_stationary_features_identity_rule():
    # rule 204 copies the center cell and its attractor ensemble is uniform,
    # so memory is a full bit and nothing else carries information
    fv = stationary.stationary_features(204, 8)
    assert fv.value("I010") == pytest.approx(1.0, abs=1e-12)
    assert fv.value("I100") == pytest.approx(0.0, abs=1e-12)
    assert fv.value("S111") == pytest.approx(0.0, abs=1e-12)


def test_stationary_features_cells_agree():
    for cell in range(3):
        a = stationary.stationary_features(110, 9, cell=cell).values()
        b = stationary.stationary_features(110, 9).values()
        np.testing.assert_allclose(a, b, atol=1e-12)


def test_transient_first_step_matches_closed_forms():
    # the first step starts from exactly i.i.d. uniform cells, so the
    # exhaustive transient quantities equal the lambda closed forms
    for rule in (30, 90, 110):
        cf = langton.closed_form_features(rule)
        point = stationary.transient_features(rule, 12, 1)[0]
        assert point.i_tot == pytest.approx(cf.i_tot, abs=1e-12)
        assert point.i_mem == pytest.approx(cf.i_mem, abs=1e-12)
        assert point.i_trans_l == pytest.approx(cf.i_trans_left, abs=1e-12)
        assert point.i_trans_r == pytest.approx(cf.i_trans_right, abs=1e-12)


def test_transient_rule_zero_is_all_zeros():
    for point in stationary.transient_features(0, 10, 5):
        assert point.i_tot == 0.0
        assert point.i_mem == 0.0


def test_transient_monte_carlo_is_seeded_and_consistent():
    a = stationary.transient_features(110, 16, 3, samples=20000, seed=3)
    b = stationary.transient_features(110, 16, 3, samples=20000, seed=3)
    assert [(p.i_tot, p.i_mem) for p in a] == [(p.i_tot, p.i_mem) for p in b]
    exact = stationary.transient_features(110, 16, 3, samples=1 << 16)
    for mc, ex in zip(a, exact):
        assert mc.i_tot == pytest.approx(ex.i_tot, abs=0.02)


def test_transient_argument_validation():
    with pytest.raises(DomainError):
        stationary.transient_features(110, 2, 5)
    with pytest.raises(DomainError):
        stationary.transient_features(110, 12, 0)
    with pytest.raises(DomainError):
        stationary.transient_features(110, 30, 5, samples=500)


def test_has_settled():
    assert stationary.has_settled([1.0] * 12)
    assert not stationary.has_settled([1.0] * 5)  # too short
    drifting = [0.1 * i for i in range(15)]
    assert not stationary.has_settled(drifting)


def test_transient_csv_format():
    points = stationary.transient_features(110, 10, 2)
    buf = io.StringIO()
    stationary.write_transient_csv(buf, points)
    lines = buf.getvalue().strip().split("\n")
    assert lines[0] == "step,i_tot,i_mem,i_trans_l,i_trans_r"
    assert len(lines) == 3
    assert lines[1].split(",")[0] == "1"


def test_settling_toward_stationarity():
    # after many steps the uniform ensemble's one-step features approach the
    # attractor-ensemble features (rule 204 reaches them immediately)
    points = stationary.transient_features(204, 10, 3)
    fv = stationary.stationary_features(204, 10)
    assert points[-1].i_mem == pytest.approx(fv.value("I010") * math.log(2), abs=1e-12)
