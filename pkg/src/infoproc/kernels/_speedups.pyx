# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled implementations of the hot kernels (see kernels/_pure.py for the
reference semantics)."""

from libc.math cimport log2
from libc.stdlib cimport calloc, free, malloc

import numpy as np

cimport numpy as cnp

cnp.import_array()


def step_states(states, int rule, int n_cells):
    """Synchronous ring update of packed ECA states."""
    cdef cnp.ndarray[cnp.uint64_t, ndim=1] s = np.ascontiguousarray(states, dtype=np.uint64)
    cdef cnp.ndarray[cnp.uint64_t, ndim=1] out = np.empty_like(s)
    cdef Py_ssize_t i, n = s.shape[0]
    cdef int p, l, c, r, code
    cdef unsigned long long x, y, bits
    for i in range(n):
        x = s[i]
        y = 0
        for p in range(n_cells):
            l = (x >> ((p + n_cells - 1) % n_cells)) & 1
            c = (x >> p) & 1
            r = (x >> ((p + 1) % n_cells)) & 1
            code = 4 * l + 2 * c + r
            if (rule >> code) & 1:
                y |= (<unsigned long long>1) << p
        out[i] = y
    return out


def basin_masses(int rule, int n_cells):
    """Attractor states and stationary masses from exhaustive enumeration."""
    cdef Py_ssize_t size = (<Py_ssize_t>1) << n_cells
    cdef cnp.ndarray[cnp.int64_t, ndim=1] nxt = step_states(
        np.arange(size, dtype=np.uint64), rule, n_cells
    ).astype(np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] comp = np.full(size, -1, dtype=np.int64)
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] on_cycle = np.zeros(size, dtype=np.uint8)
    # per-walk visit stamps: stamp[s] == walk id iff s was seen in this walk
    cdef cnp.ndarray[cnp.int64_t, ndim=1] stamp = np.full(size, -1, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] order = np.empty(size, dtype=np.int64)
    cdef list cycle_len = []
    cdef Py_ssize_t start, cur, walk, path_len, j, cid, meet
    cdef Py_ssize_t n_cycles = 0
    for start in range(size):
        if comp[start] >= 0:
            continue
        walk = start
        cur = start
        path_len = 0
        while comp[cur] < 0 and stamp[cur] != walk:
            stamp[cur] = walk
            order[path_len] = cur
            path_len += 1
            cur = nxt[cur]
        if comp[cur] >= 0:
            cid = comp[cur]
        else:
            # `cur` was revisited within this walk: the path tail is a new cycle
            cid = n_cycles
            n_cycles += 1
            meet = 0
            for j in range(path_len):
                if order[j] == cur:
                    meet = j
                    break
            cycle_len.append(path_len - meet)
            for j in range(meet, path_len):
                on_cycle[order[j]] = 1
        for j in range(path_len):
            comp[order[j]] = cid
    cdef cnp.ndarray[cnp.int64_t, ndim=1] basin = np.bincount(comp, minlength=n_cycles)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] clen = np.asarray(cycle_len, dtype=np.int64)
    states = np.nonzero(on_cycle)[0].astype(np.uint64)
    cids = comp[states.astype(np.int64)]
    masses = basin[cids] / (<double>size * clen[cids])
    return states, masses


cdef double _subset_mi(
    cnp.int64_t[:, :] codes,
    cnp.int64_t[:] classes,
    Py_ssize_t* combo,
    int n,
    Py_ssize_t r,
    cnp.int64_t* keys,
    cnp.int64_t* uniq,
    cnp.int64_t* counts,
    double h_class,
    int n_classes,
) noexcept:
    cdef Py_ssize_t i, j, k, n_uniq = 0
    cdef cnp.int64_t key, base = r + 1
    cdef double h_key = 0.0, h_joint = 0.0, p
    for i in range(r):
        key = codes[combo[0], i]
        for j in range(1, n):
            key = key * base + codes[combo[j], i]
        keys[i] = key
    # group by key with a linear-scan table; r is small (hundreds)
    for i in range(r):
        key = keys[i]
        k = -1
        for j in range(n_uniq):
            if uniq[j] == key:
                k = j
                break
        if k < 0:
            k = n_uniq
            uniq[k] = key
            for j in range(n_classes):
                counts[k * n_classes + j] = 0
            n_uniq += 1
        counts[k * n_classes + classes[i]] += 1
        keys[i] = k
    for k in range(n_uniq):
        key = 0
        for j in range(n_classes):
            key += counts[k * n_classes + j]
            if counts[k * n_classes + j] > 0:
                p = <double>counts[k * n_classes + j] / r
                h_joint -= p * log2(p)
        p = <double>key / r
        h_key -= p * log2(p)
    return h_key + h_class - h_joint


def best_subset(codes, classes, int n):
    """Exhaustive most-informative feature subset; see _pure.best_subset."""
    cdef cnp.int64_t[:, :] cm = np.ascontiguousarray(codes, dtype=np.int64)
    cdef cnp.int64_t[:] cl = np.ascontiguousarray(classes, dtype=np.int64)
    cdef Py_ssize_t d = cm.shape[0], r = cm.shape[1]
    if n < 1 or n > d:
        return (), -1.0
    cdef int n_classes = int(np.max(classes)) + 1
    cdef double h_class = 0.0, p, mi, best_mi = -1.0
    cdef cnp.ndarray[cnp.int64_t, ndim=1] ccounts = np.bincount(
        np.asarray(classes, dtype=np.int64), minlength=n_classes
    )
    cdef Py_ssize_t i, j
    for i in range(n_classes):
        if ccounts[i] > 0:
            p = <double>ccounts[i] / r
            h_class -= p * log2(p)
    cdef Py_ssize_t* combo = <Py_ssize_t*>malloc(n * sizeof(Py_ssize_t))
    cdef Py_ssize_t* best = <Py_ssize_t*>malloc(n * sizeof(Py_ssize_t))
    cdef cnp.int64_t* keys = <cnp.int64_t*>malloc(r * sizeof(cnp.int64_t))
    cdef cnp.int64_t* uniq = <cnp.int64_t*>malloc(r * sizeof(cnp.int64_t))
    cdef cnp.int64_t* counts = <cnp.int64_t*>malloc(r * n_classes * sizeof(cnp.int64_t))
    if not (combo and best and keys and uniq and counts):
        raise MemoryError
    try:
        for i in range(n):
            combo[i] = i
        while True:
            mi = _subset_mi(cm, cl, combo, n, r, keys, uniq, counts, h_class, n_classes)
            if mi > best_mi:
                best_mi = mi
                for i in range(n):
                    best[i] = combo[i]
            # advance to the next combination in lexicographic order
            i = n - 1
            while i >= 0 and combo[i] == d - n + i:
                i -= 1
            if i < 0:
                break
            combo[i] += 1
            for j in range(i + 1, n):
                combo[j] = combo[j - 1] + 1
        return tuple(best[i] for i in range(n)), best_mi
    finally:
        free(combo)
        free(best)
        free(keys)
        free(uniq)
        free(counts)
