"""Exact elementary cellular automaton machinery.

Rules follow the standard Wolfram numbering: the output for neighborhood
``(left, center, right)`` is bit ``4*left + 2*center + right`` of the rule
number. Window tables ("light cones") index initial windows with the
leftmost cell as the most significant bit, so entry names are reproducible.

All probabilities derived here are exact dyadic rationals, stored as
integer counts over a power-of-two denominator.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from infoproc.errors import DomainError, ResourceError
from infoproc.measures import JointDistribution

# practical depth bound: the window table for t has 2^(2t+1) entries
MAX_LIGHT_CONE_T = 12

OUTPUT_VAR = "out"


def input_var(offset: int) -> str:
    """Label of the initial cell at the given offset from the center cell."""
    return f"in[{offset:+d}]"


@dataclass(frozen=True)
class RuleTable:
    """Lookup table of one ECA rule: outputs[code] for code = 4l + 2c + r."""

    rule_number: int
    outputs: tuple[int, ...]

    def __post_init__(self):
        if not 0 <= self.rule_number <= 255:
            raise DomainError(f"rule number {self.rule_number} not in 0..255")
        if len(self.outputs) != 8 or any(b not in (0, 1) for b in self.outputs):
            raise DomainError("outputs must be 8 bits")
        if sum(b << i for i, b in enumerate(self.outputs)) != self.rule_number:
            raise DomainError("outputs do not encode the rule number")


def rule_table(n: int) -> RuleTable:
    """Decode a rule number into its 8-entry lookup table."""
    if not isinstance(n, (int, np.integer)) or not 0 <= n <= 255:
        raise DomainError(f"rule number must be an integer in 0..255, got {n!r}")
    n = int(n)
    return RuleTable(rule_number=n, outputs=tuple((n >> code) & 1 for code in range(8)))


def step_ring(bits, r: RuleTable) -> np.ndarray:
    """One synchronous update on a periodic ring of cells."""
    c = np.asarray(bits, dtype=np.uint8)
    if c.ndim != 1 or c.size < 3:
        raise DomainError("configuration must be a 1-d bit sequence of length >= 3")
    if not np.isin(c, (0, 1)).all():
        raise DomainError("configuration bits must be 0 or 1")
    codes = 4 * np.roll(c, 1) + 2 * c + np.roll(c, -1)
    lut = np.asarray(r.outputs, dtype=np.uint8)
    return lut[codes]


@dataclass(frozen=True)
class LightConeMap:
    """Truth table of the center cell after t steps as a function of its
    2t+1-cell dependency window (leftmost initial cell = MSB of the index)."""

    rule_number: int
    t: int
    table: np.ndarray

    @property
    def window(self) -> int:
        return 2 * self.t + 1


def _window_bits(indices: np.ndarray, width: int) -> np.ndarray:
    """Decode window indices into a (len, width) bit array, MSB first."""
    shifts = np.arange(width - 1, -1, -1, dtype=np.uint64)
    return ((indices[:, None] >> shifts) & 1).astype(np.uint8)


def light_cone_map(r: RuleTable, t: int) -> LightConeMap:
    """Exact composition of the rule over t steps, restricted to the
    dependency cone: one output bit per 2t+1-cell initial window."""
    if t < 1:
        raise DomainError("t must be >= 1")
    if t > MAX_LIGHT_CONE_T:
        raise ResourceError(
            f"light cone table for t={t} has 2^{2 * t + 1} entries; bound is t <= {MAX_LIGHT_CONE_T}"
        )
    width = 2 * t + 1
    size = 1 << width
    lut = np.asarray(r.outputs, dtype=np.uint8)
    table = np.empty(size, dtype=np.uint8)
    chunk = min(size, 1 << 18)
    for lo in range(0, size, chunk):
        idx = np.arange(lo, min(lo + chunk, size), dtype=np.uint64)
        gen = _window_bits(idx, width)
        for _ in range(t):
            codes = 4 * gen[:, :-2] + 2 * gen[:, 1:-1] + gen[:, 2:]
            gen = lut[codes]
        table[lo : lo + idx.size] = gen[:, 0]
    return LightConeMap(rule_number=r.rule_number, t=t, table=table)


def mask_positions(mask: int, width: int) -> tuple[int, ...]:
    """Window positions (0 = leftmost) selected by a bitmask whose MSB is
    the leftmost window cell."""
    if not 0 <= mask < (1 << width):
        raise DomainError(f"mask {mask:#x} does not fit a width-{width} window")
    return tuple(p for p in range(width) if (mask >> (width - 1 - p)) & 1)


def joint_counts(r: RuleTable, t: int, mask: int, cone: LightConeMap | None = None) -> JointDistribution:
    """Exact joint distribution of the center output at time t together with
    the masked initial cells, from enumeration of all equiprobable windows.

    Variable labels are ``out`` plus ``in[offset]`` for each selected cell,
    offsets relative to the center cell.
    """
    if cone is None:
        cone = light_cone_map(r, t)
    width = 2 * t + 1
    positions = mask_positions(mask, width)
    size = 1 << width
    idx = np.arange(size, dtype=np.uint64)
    key = cone.table.astype(np.int64)
    for p in positions:
        key = (key << 1) | ((idx >> np.uint64(width - 1 - p)) & 1).astype(np.int64)
    counts = np.bincount(key, minlength=1 << (len(positions) + 1))
    variables = (OUTPUT_VAR,) + tuple(input_var(p - t) for p in positions)
    table: dict[tuple, int] = {}
    k = len(positions)
    for code, c in enumerate(counts):
        if c:
            outcome = tuple((code >> (k - i)) & 1 for i in range(k + 1))
            table[outcome] = int(c)
    return JointDistribution.exact(variables, table, size)
