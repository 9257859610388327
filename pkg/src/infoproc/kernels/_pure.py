"""Pure numpy implementations of the hot kernels.

Reference semantics for the compiled extension; selected automatically when
the extension is unavailable. States of a ring of ``n_cells`` binary cells
are packed into integers with cell ``p`` at bit ``p``.
"""

from __future__ import annotations

from itertools import combinations

import numpy as np


def step_states(states: np.ndarray, rule: int, n_cells: int) -> np.ndarray:
    """Apply one synchronous update of an ECA rule on a periodic ring.

    ``states`` is an integer array of packed configurations; all of them are
    updated at once with bitwise operations.
    """
    s = np.asarray(states, dtype=np.uint64)
    n = np.uint64(n_cells)
    one = np.uint64(1)
    mask = np.uint64((1 << n_cells) - 1)
    # bit i of `left` is cell (i-1) mod N, bit i of `right` is cell (i+1) mod N
    left = ((s << one) | (s >> (n - one))) & mask
    right = ((s >> one) | (s << (n - one))) & mask
    out = np.zeros_like(s)
    for code in range(8):
        if not (rule >> code) & 1:
            continue
        l, c, r = (code >> 2) & 1, (code >> 1) & 1, code & 1
        term = (left if l else ~left) & (s if c else ~s) & (right if r else ~right)
        out |= term
    return out & mask


def basin_masses(rule: int, n_cells: int) -> tuple[np.ndarray, np.ndarray]:
    """Enumerate all 2^N initial states and return the attractor distribution.

    Returns ``(states, masses)`` where ``states`` are the configurations lying
    on a cycle, sorted ascending, and ``masses`` their stationary probability
    when initial states are i.i.d. uniform: each initial state contributes
    2^-N spread uniformly over its terminal cycle.
    """
    size = 1 << n_cells
    nxt = step_states(np.arange(size, dtype=np.uint64), rule, n_cells).astype(np.int64)
    # pointer doubling: after N squarings f[s] is the state 2^N steps ahead,
    # which is guaranteed to lie on s's terminal cycle
    f = nxt.copy()
    for _ in range(n_cells):
        f = f[f]
    cycle_states = np.unique(f)
    # label each cycle by walking it once
    cycle_id = np.full(size, -1, dtype=np.int64)
    cycle_len: list[int] = []
    for s in cycle_states:
        if cycle_id[s] >= 0:
            continue
        cid = len(cycle_len)
        cur = int(s)
        length = 0
        while cycle_id[cur] < 0:
            cycle_id[cur] = cid
            cur = int(nxt[cur])
            length += 1
        cycle_len.append(length)
    cycle_len_arr = np.asarray(cycle_len, dtype=np.int64)
    basin = np.bincount(cycle_id[f], minlength=len(cycle_len))
    cids = cycle_id[cycle_states]
    masses = basin[cids] / (float(size) * cycle_len_arr[cids])
    return cycle_states.astype(np.uint64), masses


def _mi_bits(keys: np.ndarray, classes: np.ndarray) -> float:
    """Mutual information (bits) between a key partition and class labels."""
    n = keys.shape[0]
    _, key_idx = np.unique(keys, return_inverse=True)
    joint = np.zeros((key_idx.max() + 1, classes.max() + 1))
    np.add.at(joint, (key_idx, classes), 1.0)
    joint /= n
    pk = joint.sum(axis=1)
    pc = joint.sum(axis=0)

    def h(p: np.ndarray) -> float:
        p = p[p > 0]
        return float(-(p * np.log2(p)).sum())

    return h(pk) + h(pc) - h(joint.ravel())


def best_subset(codes: np.ndarray, classes: np.ndarray, n: int) -> tuple[tuple[int, ...], float]:
    """Exhaustive search for the size-``n`` subset of feature columns with
    maximal mutual information about the class labels.

    ``codes`` has shape (D, R): integer value codes of D features over R
    items. Ties are resolved in favor of the lexicographically first index
    combination (combinations are visited in lexicographic order and only a
    strictly larger score replaces the incumbent).
    """
    codes = np.ascontiguousarray(codes, dtype=np.int64)
    classes = np.ascontiguousarray(classes, dtype=np.int64)
    d, r = codes.shape
    base = np.int64(r + 1)
    best_mi = -1.0
    best_combo: tuple[int, ...] = ()
    for combo in combinations(range(d), n):
        keys = codes[combo[0]].copy()
        for idx in combo[1:]:
            # re-factorize after each mix so keys never overflow
            _, keys = np.unique(keys * base + codes[idx], return_inverse=True)
        mi = _mi_bits(keys, classes)
        if mi > best_mi:
            best_mi = mi
            best_combo = combo
    return best_combo, best_mi
