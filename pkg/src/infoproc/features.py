"""Information-feature vectors of ECA rules.

A feature is named by a kind letter, ``I`` (mutual information with a set of
initial cells) or ``S`` (whole-minus-sum synergy over a set of initial
cells), followed by the bitmask of the selected cells in the 2t+1-cell
dependency window; the middle bit is the cell itself. Features at depth
t' > 1 carry a ``t{t'}:`` prefix, e.g. ``t2:S11111``. Values are in bits.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import IO, Iterable

import numpy as np

from infoproc import eca
from infoproc.errors import DomainError
from infoproc.measures import mutual_information, wms_synergy

_NAME_RE = re.compile(r"^(?:t(\d+):)?([IS])([01]+)$")


@dataclass(frozen=True, order=True)
class FeatureDescriptor:
    """Identifies one information feature: kind, time depth, cell bitmask."""

    kind: str
    t_prime: int
    mask: int

    def __post_init__(self):
        if self.kind not in ("I", "S"):
            raise DomainError(f"kind must be 'I' or 'S', got {self.kind!r}")
        if self.t_prime < 1:
            raise DomainError("t_prime must be >= 1")
        width = self.width
        n_cells = bin(self.mask).count("1")
        if not 0 < self.mask < (1 << width):
            raise DomainError(f"mask {self.mask:#x} does not fit a width-{width} window")
        if self.kind == "S" and n_cells < 2:
            raise DomainError("synergy features need at least two cells")

    @property
    def width(self) -> int:
        return 2 * self.t_prime + 1

    @property
    def name(self) -> str:
        prefix = f"t{self.t_prime}:" if self.t_prime > 1 else ""
        return f"{prefix}{self.kind}{self.mask:0{self.width}b}"

    @classmethod
    def from_name(cls, name: str) -> "FeatureDescriptor":
        m = _NAME_RE.match(name)
        if not m:
            raise DomainError(f"unparseable feature name {name!r}")
        t_prime = int(m.group(1)) if m.group(1) else 1
        bits = m.group(3)
        if len(bits) != 2 * t_prime + 1:
            raise DomainError(f"mask width in {name!r} does not match its depth")
        return cls(kind=m.group(2), t_prime=t_prime, mask=int(bits, 2))


@dataclass
class FeatureVector:
    """Ordered feature values (bits) of one rule."""

    rule: int
    entries: dict[FeatureDescriptor, float]

    def value(self, name: str) -> float:
        return self.entries[FeatureDescriptor.from_name(name)]

    def values(self) -> np.ndarray:
        return np.asarray(list(self.entries.values()))


@dataclass(frozen=True)
class SummaryTriple:
    """The three-axis summary of a rule: memory, transfer, integration."""

    memory: float
    transfer: float
    integration: float


def enumerate_descriptors(t: int, mode: str = "per-step") -> list[FeatureDescriptor]:
    """All feature descriptors at depth t (per-step) or depths 1..t
    (cumulative), in deterministic order: depth ascending, I before S,
    mask ascending."""
    if t < 1:
        raise DomainError("t must be >= 1")
    if mode not in ("per-step", "cumulative"):
        raise DomainError(f"unknown mode {mode!r}")
    depths = range(1, t + 1) if mode == "cumulative" else (t,)
    out = []
    for tp in depths:
        width = 2 * tp + 1
        for kind in ("I", "S"):
            lo = 1
            for mask in range(lo, 1 << width):
                if kind == "S" and bin(mask).count("1") < 2:
                    continue
                out.append(FeatureDescriptor(kind=kind, t_prime=tp, mask=mask))
    return out


def compute_feature(rule: int, d: FeatureDescriptor) -> float:
    """One feature value in bits, straight from the exact joint distribution."""
    r = eca.rule_table(rule)
    joint = eca.joint_counts(r, d.t_prime, d.mask)
    inputs = [v for v in joint.variables if v != eca.OUTPUT_VAR]
    if d.kind == "I":
        return mutual_information(joint, (eca.OUTPUT_VAR,), inputs)
    return wms_synergy(joint, eca.OUTPUT_VAR, inputs)


def _entropy_from_counts(counts: np.ndarray, size: int) -> float:
    c = counts[counts > 0].astype(np.float64)
    return math.log2(size) - float((c * np.log2(c)).sum()) / size


def _masked_key(table: np.ndarray, idx: np.ndarray, width: int, mask: int) -> np.ndarray:
    key = table.astype(np.int64)
    for p in eca.mask_positions(mask, width):
        key = (key << 1) | ((idx >> np.uint64(width - 1 - p)) & 1).astype(np.int64)
    return key


def feature_vector(rule: int, t: int, mode: str = "per-step") -> FeatureVector:
    """All features of one rule, computed from one light-cone table per depth."""
    descriptors = enumerate_descriptors(t, mode)
    r = eca.rule_table(rule)
    entries: dict[FeatureDescriptor, float] = {}
    cache: dict[int, tuple] = {}
    for d in descriptors:
        if d.t_prime not in cache:
            cone = eca.light_cone_map(r, d.t_prime)
            width = 2 * d.t_prime + 1
            size = 1 << width
            idx = np.arange(size, dtype=np.uint64)
            h_out = _entropy_from_counts(np.bincount(cone.table, minlength=2), size)
            singles = {}
            for p in range(width):
                m = 1 << (width - 1 - p)
                key = _masked_key(cone.table, idx, width, m)
                h_in = _entropy_from_counts(np.bincount(key & 1, minlength=2), size)
                h_joint = _entropy_from_counts(np.bincount(key, minlength=4), size)
                singles[m] = max(h_out + h_in - h_joint, 0.0)
            cache[d.t_prime] = (cone, idx, h_out, singles)
        cone, idx, h_out, singles = cache[d.t_prime]
        width = 2 * d.t_prime + 1
        size = 1 << width
        key = _masked_key(cone.table, idx, width, d.mask)
        k = bin(d.mask).count("1")
        h_in = _entropy_from_counts(np.bincount(key & ((1 << k) - 1), minlength=1 << k), size)
        h_joint = _entropy_from_counts(np.bincount(key, minlength=1 << (k + 1)), size)
        whole = max(h_out + h_in - h_joint, 0.0)
        if d.kind == "I":
            entries[d] = whole
        else:
            parts = sum(
                singles[1 << (width - 1 - p)] for p in eca.mask_positions(d.mask, width)
            )
            entries[d] = whole - parts
    return FeatureVector(rule=rule, entries=entries)


def feature_matrix(
    t: int, mode: str = "per-step", rules: Iterable[int] = range(256)
) -> tuple[np.ndarray, list[FeatureDescriptor]]:
    """Feature values for a batch of rules: row per rule, column per
    descriptor, both in deterministic order."""
    descriptors = enumerate_descriptors(t, mode)
    rules = list(rules)
    matrix = np.empty((len(rules), len(descriptors)))
    for i, rule in enumerate(rules):
        fv = feature_vector(rule, t, mode)
        matrix[i, :] = [fv.entries[d] for d in descriptors]
    return matrix, descriptors


def summary_triple(rule: int, t_prime: int = 1) -> SummaryTriple:
    """Memory, transfer, integration at depth t': the center-cell feature,
    the two adjacent-cell features summed, and the full-window synergy."""
    if t_prime < 1:
        raise DomainError("t_prime must be >= 1")
    width = 2 * t_prime + 1
    center = 1 << t_prime
    fv = feature_vector(rule, t_prime)

    def iv(mask: int) -> float:
        return fv.entries[FeatureDescriptor(kind="I", t_prime=t_prime, mask=mask)]

    return SummaryTriple(
        memory=iv(center),
        transfer=iv(center << 1) + iv(center >> 1),
        integration=fv.entries[
            FeatureDescriptor(kind="S", t_prime=t_prime, mask=(1 << width) - 1)
        ],
    )


def write_feature_csv(fh: IO[str], matrix: np.ndarray, descriptors: list[FeatureDescriptor], rules: Iterable[int] = range(256)) -> None:
    """CSV export: header ``rule,<names>``, 12 significant digits."""
    fh.write("rule," + ",".join(d.name for d in descriptors) + "\n")
    for rule, row in zip(rules, matrix):
        fh.write(f"{rule}," + ",".join(f"{v:.12g}" for v in row) + "\n")
