"""Attractor ensembles of finite rings and features under stationarity.

Instead of sampling trajectories, the attractor distribution is obtained by
exhaustive enumeration: every one of the 2^N initial states is followed to
its terminal cycle and its probability mass spread uniformly over that
cycle. Ring sizes up to N=20 keep this desk-scale.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import IO

import numpy as np

from infoproc import eca, kernels
from infoproc.errors import DomainError, ResourceError
from infoproc.features import FeatureDescriptor, FeatureVector, enumerate_descriptors
from infoproc.measures import JointDistribution, mutual_information, wms_synergy

MAX_RING = 20

VAR_OUT = eca.OUTPUT_VAR
VAR_L, VAR_C, VAR_R = eca.input_var(-1), eca.input_var(0), eca.input_var(+1)


@dataclass
class AttractorEnsemble:
    """Stationary distribution over the cycle states of a rule on a ring."""

    rule: int
    n: int
    states: np.ndarray  # packed configurations on cycles, ascending
    masses: np.ndarray

    def as_dict(self) -> dict[int, float]:
        return {int(s): float(m) for s, m in zip(self.states, self.masses)}

    def step(self) -> "AttractorEnsemble":
        """Push the distribution through one synchronous update."""
        nxt = kernels.step_states(self.states, self.rule, self.n)
        acc: dict[int, float] = {}
        for s, m in zip(nxt, self.masses):
            acc[int(s)] = acc.get(int(s), 0.0) + float(m)
        states = np.asarray(sorted(acc), dtype=np.uint64)
        masses = np.asarray([acc[int(s)] for s in states])
        return AttractorEnsemble(rule=self.rule, n=self.n, states=states, masses=masses)


def attractor_ensemble(rule: int, n: int) -> AttractorEnsemble:
    """Exhaustively enumerate basins and cycles of a rule on an N-ring."""
    eca.rule_table(rule)
    if not 3 <= n <= MAX_RING:
        raise ResourceError(f"ring size must be in 3..{MAX_RING}, got {n}")
    states, masses = kernels.basin_masses(rule, n)
    return AttractorEnsemble(rule=rule, n=n, states=states, masses=masses)


def _bit(states: np.ndarray, pos: int, n: int) -> np.ndarray:
    return ((states >> np.uint64(pos % n)) & np.uint64(1)).astype(np.int64)


def _one_step_joint(
    states: np.ndarray, masses: np.ndarray, nxt: np.ndarray, n: int, cell: int
) -> JointDistribution:
    """Joint of (next state of `cell`; previous left, center, right)."""
    code = (
        8 * _bit(nxt, cell, n)
        + 4 * _bit(states, cell - 1, n)
        + 2 * _bit(states, cell, n)
        + _bit(states, cell + 1, n)
    )
    weights = np.bincount(code, weights=masses, minlength=16)
    pmf = {}
    for c in range(16):
        if weights[c] > 0:
            pmf[((c >> 3) & 1, (c >> 2) & 1, (c >> 1) & 1, c & 1)] = float(weights[c])
    return JointDistribution.real((VAR_OUT, VAR_L, VAR_C, VAR_R), pmf)


def stationary_features(
    rule: int, n: int, cell: int | None = None, ensemble: AttractorEnsemble | None = None
) -> FeatureVector:
    """One-step-delay information features with the previous state drawn
    from the attractor ensemble. By ring symmetry the per-cell values agree;
    they are averaged over cells unless one cell index is given. Bits."""
    if ensemble is None:
        ensemble = attractor_ensemble(rule, n)
    nxt = kernels.step_states(ensemble.states, rule, n)
    cells = range(n) if cell is None else [cell % n]
    descriptors = enumerate_descriptors(1, "per-step")
    totals = {d: 0.0 for d in descriptors}
    inputs_of_mask = {1 << 2: (VAR_L,), 1 << 1: (VAR_C,), 1: (VAR_R,)}
    for i in cells:
        joint = _one_step_joint(ensemble.states, ensemble.masses, nxt, n, i)
        for d in descriptors:
            names = [
                inputs_of_mask[bit][0]
                for bit in (4, 2, 1)
                if d.mask & bit
            ]
            if d.kind == "I":
                totals[d] += mutual_information(joint, (VAR_OUT,), names)
            else:
                totals[d] += wms_synergy(joint, VAR_OUT, names)
    entries = {d: totals[d] / len(list(cells)) for d in descriptors}
    return FeatureVector(rule=rule, entries=entries)


@dataclass
class TransientPoint:
    """One-step-delay quantities at a given step, in nats."""

    step: int
    i_tot: float
    i_mem: float
    i_trans_l: float
    i_trans_r: float


def transient_features(
    rule: int,
    n: int,
    t_max: int,
    samples: int = 32768,
    seed: int | None = None,
) -> list[TransientPoint]:
    """Per-step total/memory/left/right one-step information starting from
    i.i.d. uniform ring states: exhaustive over all 2^N states when they fit
    in the sample budget, otherwise seeded Monte Carlo."""
    eca.rule_table(rule)
    if not 3 <= n <= 63:
        raise DomainError("ring size must be in 3..63")
    if t_max < 1:
        raise DomainError("t_max must be >= 1")
    if (1 << n) <= samples:
        states = np.arange(1 << n, dtype=np.uint64)
    else:
        if samples < 10_000:
            raise DomainError("need at least 10^4 samples when not exhaustive")
        rng = np.random.default_rng(seed)
        states = rng.integers(0, 1 << n, size=samples, dtype=np.uint64)
    masses = np.full(states.shape[0], 1.0 / states.shape[0])
    out = []
    for step in range(1, t_max + 1):
        nxt = kernels.step_states(states, rule, n)
        # aggregate the 16-bin one-step joint over all cells; the ensemble is
        # translation invariant, so this only averages out sampling noise
        weights = np.zeros(16)
        for i in range(n):
            code = (
                8 * _bit(nxt, i, n)
                + 4 * _bit(states, i - 1, n)
                + 2 * _bit(states, i, n)
                + _bit(states, i + 1, n)
            )
            weights += np.bincount(code, weights=masses, minlength=16)
        weights /= n
        pmf = {
            ((c >> 3) & 1, (c >> 2) & 1, (c >> 1) & 1, c & 1): float(w)
            for c, w in enumerate(weights)
            if w > 0
        }
        joint = JointDistribution.real((VAR_OUT, VAR_L, VAR_C, VAR_R), pmf)
        out.append(
            TransientPoint(
                step=step,
                i_tot=mutual_information(joint, (VAR_OUT,), (VAR_L, VAR_C, VAR_R), unit="nats"),
                i_mem=mutual_information(joint, (VAR_OUT,), (VAR_C,), unit="nats"),
                i_trans_l=mutual_information(joint, (VAR_OUT,), (VAR_L,), unit="nats"),
                i_trans_r=mutual_information(joint, (VAR_OUT,), (VAR_R,), unit="nats"),
            )
        )
        states = nxt
    return out


def has_settled(values, window: int = 10, tol: float = 1e-4) -> bool:
    """Stationarity check: least-squares slope over the trailing window
    below ``tol`` (nats per step)."""
    if len(values) < window:
        return False
    y = np.asarray(values[-window:], dtype=float)
    x = np.arange(window, dtype=float)
    slope = np.polyfit(x, y, 1)[0]
    return abs(slope) < tol


def write_transient_csv(fh: IO[str], points: list[TransientPoint]) -> None:
    fh.write("step,i_tot,i_mem,i_trans_l,i_trans_r\n")
    for p in points:
        fh.write(
            f"{p.step},{p.i_tot:.12g},{p.i_mem:.12g},{p.i_trans_l:.12g},{p.i_trans_r:.12g}\n"
        )
