"""Entropy, mutual information, and whole-minus-sum synergy on discrete
joint distributions.

Distributions carry either exact integer counts with a common denominator
(the ECA path, where probabilities are dyadic rationals) or real weights
(empirical ensembles). All summations run in a fixed canonical outcome
order so floating-point results are reproducible bit-for-bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from infoproc.errors import DomainError, InternalConsistencyError

LN2 = math.log(2.0)

# negative MI no larger than this (in bits) is treated as roundoff and clamped
MI_CLAMP = 1e-12


@dataclass(frozen=True)
class JointDistribution:
    """A discrete joint probability table over labeled variables.

    ``weights`` are integer counts summing to ``denom`` when ``weight_kind``
    is "exact", and floats summing to 1 (within 1e-12) when "real".
    Outcomes are stored sorted, one tuple per support point.
    """

    variables: tuple[str, ...]
    outcomes: tuple[tuple, ...]
    weights: tuple
    weight_kind: str = "exact"
    denom: int | None = None

    @classmethod
    def exact(cls, variables: Sequence[str], counts: dict[tuple, int], denom: int) -> "JointDistribution":
        items = sorted((k, v) for k, v in counts.items() if v)
        d = cls(
            variables=tuple(variables),
            outcomes=tuple(k for k, _ in items),
            weights=tuple(int(v) for _, v in items),
            weight_kind="exact",
            denom=int(denom),
        )
        d.validate()
        return d

    @classmethod
    def real(cls, variables: Sequence[str], pmf: dict[tuple, float]) -> "JointDistribution":
        items = sorted((k, v) for k, v in pmf.items() if v > 0.0)
        d = cls(
            variables=tuple(variables),
            outcomes=tuple(k for k, _ in items),
            weights=tuple(float(v) for _, v in items),
            weight_kind="real",
            denom=None,
        )
        d.validate()
        return d

    def validate(self) -> None:
        if self.weight_kind not in ("exact", "real"):
            raise DomainError(f"unknown weight_kind {self.weight_kind!r}")
        arity = len(self.variables)
        if any(len(o) != arity for o in self.outcomes):
            raise DomainError("outcome arity does not match variable count")
        if len(set(self.variables)) != arity:
            raise DomainError("duplicate variable labels")
        if self.weight_kind == "exact":
            if self.denom is None or self.denom <= 0:
                raise DomainError("exact distribution requires a positive denominator")
            if any(w < 0 for w in self.weights):
                raise DomainError("negative count")
            if sum(self.weights) != self.denom:
                raise DomainError("counts do not sum to the denominator")
        else:
            if any(w < 0 for w in self.weights):
                raise DomainError("negative weight")
            if abs(sum(self.weights) - 1.0) > 1e-12:
                raise DomainError("weights do not sum to 1")

    def indices_of(self, subset: Sequence[str]) -> tuple[int, ...]:
        missing = [v for v in subset if v not in self.variables]
        if missing:
            raise DomainError(f"unknown variables {missing}")
        return tuple(self.variables.index(v) for v in subset)

    def marginal(self, subset: Sequence[str]) -> "JointDistribution":
        """Marginalize onto ``subset`` (order taken from ``subset``)."""
        idx = self.indices_of(subset)
        acc: dict[tuple, float] = {}
        for outcome, w in zip(self.outcomes, self.weights):
            key = tuple(outcome[i] for i in idx)
            acc[key] = acc.get(key, 0) + w
        if self.weight_kind == "exact":
            return JointDistribution.exact(subset, acc, self.denom)
        return JointDistribution.real(subset, acc)


def _entropy_bits(d: JointDistribution) -> float:
    if d.weight_kind == "exact":
        denom = float(d.denom)
        s = 0.0
        for c in d.weights:
            s += c * math.log2(c)
        return math.log2(d.denom) - s / denom
    s = 0.0
    for p in d.weights:
        if p > 0.0:
            s -= p * math.log2(p)
    return s


def _convert(bits: float, unit: str) -> float:
    if unit == "bits":
        return bits
    if unit == "nats":
        return bits * LN2
    raise DomainError(f"unknown unit {unit!r}")


def entropy(d: JointDistribution, unit: str = "bits") -> float:
    """Shannon entropy H = -sum p log p, with 0 log 0 = 0."""
    d.validate()
    return _convert(_entropy_bits(d), unit)


def conditional_entropy(d: JointDistribution, part_a: Sequence[str], part_b: Sequence[str], unit: str = "bits") -> float:
    """H(A|B) = -sum_b p(b) sum_a p(a|b) log p(a|b), computed explicitly."""
    _check_parts(d, part_a, part_b)
    joint = d.marginal(tuple(part_a) + tuple(part_b))
    k = len(part_a)
    total = float(d.denom) if d.weight_kind == "exact" else 1.0
    by_b: dict[tuple, list] = {}
    for outcome, w in zip(joint.outcomes, joint.weights):
        by_b.setdefault(outcome[k:], []).append(w)
    h = 0.0
    for b in sorted(by_b):
        ws = by_b[b]
        wb = sum(ws)
        pb = wb / total
        inner = 0.0
        for w in ws:
            p_cond = w / wb
            inner -= p_cond * math.log2(p_cond)
        h += pb * inner
    return _convert(h, unit)


def _check_parts(d: JointDistribution, part_a: Sequence[str], part_b: Sequence[str]) -> None:
    if not part_a or not part_b:
        raise DomainError("variable subsets must be nonempty")
    if set(part_a) & set(part_b):
        raise DomainError("variable subsets overlap")
    d.indices_of(tuple(part_a) + tuple(part_b))


def mutual_information(d: JointDistribution, part_a: Sequence[str], part_b: Sequence[str], unit: str = "bits") -> float:
    """I(A:B) = H(A) + H(B) - H(A,B) on the marginalized joint."""
    _check_parts(d, part_a, part_b)
    joint = d.marginal(tuple(part_a) + tuple(part_b))
    ha = _entropy_bits(joint.marginal(tuple(part_a)))
    hb = _entropy_bits(joint.marginal(tuple(part_b)))
    hab = _entropy_bits(joint)
    mi = ha + hb - hab
    if mi < 0.0:
        if mi < -MI_CLAMP:
            raise InternalConsistencyError(f"mutual information {mi} below -{MI_CLAMP}")
        mi = 0.0
    return _convert(mi, unit)


def wms_synergy(d: JointDistribution, target: str, inputs: Iterable[str], unit: str = "bits") -> float:
    """Whole-minus-sum synergy: I(target : inputs jointly) minus the sum of
    the individual I(target : input). May be negative in general."""
    inputs = tuple(inputs)
    if not inputs:
        raise DomainError("inputs must be nonempty")
    whole = mutual_information(d, (target,), inputs, unit=unit)
    parts = sum(mutual_information(d, (target,), (v,), unit=unit) for v in inputs)
    return whole - parts
