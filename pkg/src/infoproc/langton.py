"""Langton lambda parameters and the closed-form t=1 information features.

The lambda convention used throughout is the fraction of ones in a rule's
lookup table (the generalized variants restrict one input to a fixed
value). Note that an alternative convention, Pr(next state = 0), appears
in parts of the literature; the two induce the same partition of rules, so
predictive power is unaffected. Closed-form feature values are in nats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from infoproc import eca
from infoproc.errors import DomainError


@dataclass(frozen=True)
class LambdaProfile:
    """Langton lambda and its restrictions to a fixed center/left/right input."""

    lam: Fraction
    lambda0: Fraction
    lambda1: Fraction
    lambda0_left: Fraction
    lambda1_left: Fraction
    lambda0_right: Fraction
    lambda1_right: Fraction


@dataclass(frozen=True)
class ClosedFormFeatures:
    """Total, memory, and left/right transfer information at t=1, in nats."""

    i_tot: float
    i_mem: float
    i_trans_left: float
    i_trans_right: float


def lambda_profile(rule: int) -> LambdaProfile:
    """Count ones in the lookup table, overall and with one input pinned.
    All counts share the denominator 8."""
    outputs = eca.rule_table(rule).outputs

    def frac(bit_pos: int, value: int) -> Fraction:
        total = sum(
            outputs[code] for code in range(8) if (code >> bit_pos) & 1 == value
        )
        return Fraction(total, 8)

    lam = Fraction(sum(outputs), 8)
    profile = LambdaProfile(
        lam=lam,
        lambda0=frac(1, 0),
        lambda1=frac(1, 1),
        lambda0_left=frac(2, 0),
        lambda1_left=frac(2, 1),
        lambda0_right=frac(0, 0),
        lambda1_right=frac(0, 1),
    )
    assert profile.lambda0 + profile.lambda1 == lam
    assert profile.lambda0_left + profile.lambda1_left == lam
    assert profile.lambda0_right + profile.lambda1_right == lam
    return profile


def _xlog(coef: Fraction, num: Fraction, den: Fraction) -> float:
    # terms with a zero coefficient are dropped (0 ln 0 = 0 convention);
    # a positive coefficient guarantees a positive numerator
    if coef == 0:
        return 0.0
    return float(coef) * math.log(float(num) / float(den))


def _pair_information(lam: Fraction, l0: Fraction, l1: Fraction) -> float:
    half = Fraction(1, 2)
    return (
        _xlog(half - l0, 1 - 2 * l0, 1 - lam)
        + _xlog(l0, 2 * l0, lam)
        + _xlog(half - l1, 1 - 2 * l1, 1 - lam)
        + _xlog(l1, 2 * l1, lam)
    )


def closed_form_features(rule: int) -> ClosedFormFeatures:
    """Evaluate the generalized-lambda expressions for the four t=1
    information quantities (nats)."""
    p = lambda_profile(rule)
    lam = p.lam
    i_tot = -_xlog(lam, lam, 1) - _xlog(1 - lam, 1 - lam, 1)
    return ClosedFormFeatures(
        i_tot=i_tot,
        i_mem=_pair_information(lam, p.lambda0, p.lambda1),
        i_trans_left=_pair_information(lam, p.lambda0_left, p.lambda1_left),
        i_trans_right=_pair_information(lam, p.lambda0_right, p.lambda1_right),
    )


def lambda_predictive_power(classes) -> float:
    """Normalized predictive power of lambda alone for the behavior class."""
    from infoproc.classify import predictive_power

    values = [(lambda_profile(r).lam,) for r in range(256)]
    power = predictive_power(values, classes, precision=None)
    return power
