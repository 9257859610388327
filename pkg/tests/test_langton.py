"""Lambda profiles and the closed-form t=1 information features."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from infoproc import classify, features, langton

LN2 = math.log(2.0)


def test_lambda_of_extreme_rules():
    assert langton.lambda_profile(0).lam == 0
    assert langton.lambda_profile(255).lam == 1
    assert langton.lambda_profile(110).lam == Fraction(5, 8)


@given(st.integers(min_value=0, max_value=255))
@settings(max_examples=256, deadline=None)
def test_generalized_lambdas_partition(rule):
    p = langton.lambda_profile(rule)
    assert p.lambda0 + p.lambda1 == p.lam
    assert p.lambda0_left + p.lambda1_left == p.lam
    assert p.lambda0_right + p.lambda1_right == p.lam
    for f in (p.lambda0, p.lambda1, p.lambda0_left, p.lambda1_left,
              p.lambda0_right, p.lambda1_right):
        assert 0 <= f <= Fraction(1, 2)


def test_rule_110_golden_numbers():
    cf = langton.closed_form_features(110)
    assert cf.i_tot == pytest.approx(0.66156, abs=5e-5)
    assert cf.i_mem == pytest.approx(0.03382, abs=5e-5)
    assert cf.i_trans_left == pytest.approx(0.03382, abs=5e-5)
    assert cf.i_trans_right == pytest.approx(0.03382, abs=5e-5)


def test_constant_rules_process_no_information():
    for rule in (0, 255):
        cf = langton.closed_form_features(rule)
        assert cf.i_tot == 0.0
        assert cf.i_mem == 0.0


@given(st.integers(min_value=0, max_value=255))
@settings(max_examples=256, deadline=None)
def test_closed_forms_equal_exact_features(rule):
    cf = langton.closed_form_features(rule)
    fv = features.feature_vector(rule, 1)
    assert cf.i_tot == pytest.approx(fv.value("I111") * LN2, abs=1e-12)
    assert cf.i_mem == pytest.approx(fv.value("I010") * LN2, abs=1e-12)
    assert cf.i_trans_left == pytest.approx(fv.value("I100") * LN2, abs=1e-12)
    assert cf.i_trans_right == pytest.approx(fv.value("I001") * LN2, abs=1e-12)


def test_total_information_is_output_entropy():
    # I(out : all inputs) is the full output entropy: the rule is a function
    for rule in (30, 90, 110, 204):
        lam = float(langton.lambda_profile(rule).lam)
        cf = langton.closed_form_features(rule)
        expect = 0.0
        if 0 < lam < 1:
            expect = -(lam * math.log(lam) + (1 - lam) * math.log(1 - lam))
        assert cf.i_tot == pytest.approx(expect, abs=1e-12)


def test_lambda_predictive_power_is_below_integration():
    table = classify.bundled_class_table()
    lam_power = langton.lambda_predictive_power(table)
    s111 = classify.power_of_features(["S111"], 1)
    assert 0.0 < lam_power < s111


def test_lambda_power_uses_exact_symbolization():
    # fractions with denominator 8 never collide spuriously
    table = classify.bundled_class_table()
    p = langton.lambda_predictive_power(table)
    assert p == pytest.approx(0.18068, abs=1e-4)
