"""Predicting the Wolfram behavior class from information features.

Predictive power of a feature set is the mutual information between the
(symbolized) feature tuple and the class label over the 256 rules, treated
as uniformly random, normalized by the class entropy. Feature values are
rounded to a fixed number of decimals before grouping; upstream arithmetic
is exact, so genuinely equal values collide reliably.
"""

from __future__ import annotations

import functools
import importlib.resources
import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

import numpy as np

from infoproc import kernels
from infoproc.errors import DomainError, FormatError, ResourceError
from infoproc.features import enumerate_descriptors, feature_matrix

BUNDLED_CLASS_COUNTS = {1: 24, 2: 196, 3: 26, 4: 10}

DEFAULT_PRECISION = 10

# beyond this many candidate subsets, exhaustive search is refused
EXHAUSTIVE_BOUND = 20_000_000


@dataclass(frozen=True)
class ClassTable:
    """Rule -> Wolfram class (1..4) for all 256 rules."""

    class_of: tuple[int, ...]

    def __post_init__(self):
        if len(self.class_of) != 256:
            raise FormatError("class table must cover exactly the 256 rules")
        if any(c not in (1, 2, 3, 4) for c in self.class_of):
            raise FormatError("classes must be in 1..4")

    def counts(self) -> dict[int, int]:
        return {c: self.class_of.count(c) for c in (1, 2, 3, 4)}


@dataclass(frozen=True)
class Symbolization:
    """Rounding applied to feature values before grouping into symbols."""

    precision: int = DEFAULT_PRECISION

    def __post_init__(self):
        if self.precision < 6:
            raise DomainError("symbolization precision must be >= 6 decimals")


@dataclass
class PrincipalSelection:
    """Best feature set of a given size and its normalized power."""

    t: int
    n: int
    mode: str
    search: str
    features: tuple[str, ...]
    power: float


@dataclass
class BaselineResult:
    """Null distribution of predictive power under label permutation."""

    mean: float
    lo: float
    hi: float
    n_permutations: int
    seed: int


@dataclass
class NonlocalityResult:
    """Predictive power of the full feature pool as a function of t."""

    curve: list[tuple[int, float]]
    t_c: int
    conventions: dict[str, int] = field(default_factory=dict)


def load_class_table(path) -> ClassTable:
    """Read a ``rule,class`` CSV covering all 256 rules exactly once."""
    seen: dict[int, int] = {}
    with open(path, "r", encoding="utf-8") as fh:
        header = fh.readline().strip()
        if header != "rule,class":
            raise FormatError(f"expected header 'rule,class', got {header!r}")
        for lineno, line in enumerate(fh, start=2):
            line = line.strip()
            if not line:
                continue
            try:
                rule_s, class_s = line.split(",")
                rule, cls = int(rule_s), int(class_s)
            except ValueError as exc:
                raise FormatError(f"line {lineno}: {line!r}") from exc
            if not 0 <= rule <= 255:
                raise FormatError(f"line {lineno}: rule {rule} out of range")
            if rule in seen:
                raise FormatError(f"line {lineno}: duplicate rule {rule}")
            if cls not in (1, 2, 3, 4):
                raise FormatError(f"line {lineno}: class {cls} out of range")
            seen[rule] = cls
    if len(seen) != 256:
        raise FormatError(f"class table has {len(seen)} rules, expected 256")
    return ClassTable(class_of=tuple(seen[r] for r in range(256)))


@functools.lru_cache(maxsize=1)
def bundled_class_table() -> ClassTable:
    """The packaged rule classification; its per-class counts are pinned."""
    ref = importlib.resources.files("infoproc.data") / "wolfram_classes.csv"
    with importlib.resources.as_file(ref) as path:
        table = load_class_table(path)
    if table.counts() != BUNDLED_CLASS_COUNTS:
        raise FormatError(f"bundled class counts {table.counts()} are wrong")
    return table


def _entropy_of_labels(labels: Sequence) -> float:
    n = len(labels)
    counts: dict = {}
    for x in labels:
        counts[x] = counts.get(x, 0) + 1
    return -sum(c / n * math.log2(c / n) for c in counts.values())


def symbolize(value, precision: int | None = DEFAULT_PRECISION):
    if precision is None:
        return value
    return round(value, precision) + 0.0


def predictive_power(
    values: Sequence[tuple], classes: ClassTable, precision: int | None = DEFAULT_PRECISION
) -> float:
    """I(symbolized feature tuple : class) / H(class), in bits over the
    empirical joint of the 256 rules."""
    if len(values) != 256:
        raise DomainError("need one value tuple per rule (256)")
    labels = classes.class_of
    h_c = _entropy_of_labels(labels)
    if h_c == 0.0:
        raise DomainError("class entropy is zero; power is undefined")
    sym = [tuple(symbolize(v, precision) for v in tup) for tup in values]
    h_f = _entropy_of_labels(sym)
    h_fc = _entropy_of_labels(list(zip(sym, labels)))
    return (h_f + h_c - h_fc) / h_c


@functools.lru_cache(maxsize=8)
def _pool(t: int, mode: str) -> tuple[list[str], np.ndarray]:
    """Feature names (sorted) and their symbol codes over the 256 rules."""
    matrix, descriptors = feature_matrix(t, mode)
    names = [d.name for d in descriptors]
    order = sorted(range(len(names)), key=lambda i: names[i])
    codes = np.empty((len(names), 256), dtype=np.int64)
    for row, i in enumerate(order):
        col = np.asarray([symbolize(v) for v in matrix[:, i]])
        _, codes[row] = np.unique(col, return_inverse=True)
    return [names[i] for i in order], codes


def _class_codes(classes: ClassTable) -> np.ndarray:
    return np.asarray(classes.class_of, dtype=np.int64) - 1


def _power_of_codes(codes: np.ndarray, class_codes: np.ndarray) -> float:
    _, keys = np.unique(codes.T, axis=0, return_inverse=True)
    mi = (
        _entropy_of_labels(list(keys))
        + _entropy_of_labels(list(class_codes))
        - _entropy_of_labels(list(zip(keys, class_codes)))
    )
    h_c = _entropy_of_labels(list(class_codes))
    return mi / h_c


def select_principal(
    t: int,
    n: int,
    mode: str = "per-step",
    search: str = "exhaustive",
    beam_width: int = 10,
    classes: ClassTable | None = None,
) -> PrincipalSelection:
    """Most predictive feature set of size n at depth t.

    Exhaustive search scans all subsets (bounded); beam search keeps the
    ``beam_width`` best prefixes per level. Ties go to the set whose sorted
    canonical names are lexicographically smallest.
    """
    if n < 1:
        raise DomainError("n must be >= 1")
    if classes is None:
        classes = bundled_class_table()
    names, codes = _pool(t, mode)
    cls = _class_codes(classes)
    h_c = _entropy_of_labels(list(cls))
    d = len(names)
    if n > d:
        raise DomainError(f"n={n} exceeds the pool size {d}")
    if search == "exhaustive":
        if math.comb(d, n) > EXHAUSTIVE_BOUND:
            raise ResourceError(
                f"exhaustive search over C({d},{n}) subsets exceeds the bound; use beam search"
            )
        # the compiled kernel mixes codes arithmetically; route wide subsets
        # through the pure version, which re-factorizes and cannot overflow
        search_fn = kernels.best_subset if n <= 7 else kernels.pure.best_subset
        combo, mi = search_fn(codes, cls, n)
        chosen = tuple(names[i] for i in combo)
        return PrincipalSelection(t=t, n=n, mode=mode, search="exhaustive", features=chosen, power=mi / h_c)
    if search != "beam":
        raise DomainError(f"unknown search {search!r}")
    beam: list[tuple[int, ...]] = [()]
    for _ in range(n):
        scored: dict[tuple[int, ...], float] = {}
        for prefix in beam:
            start = prefix[-1] + 1 if prefix else 0
            for j in range(start, d):
                cand = prefix + (j,)
                if cand not in scored:
                    _, mi = kernels.pure.best_subset(codes[list(cand)], cls, len(cand))
                    scored[cand] = mi
        ranked = sorted(scored.items(), key=lambda kv: (-kv[1], kv[0]))
        beam = [combo for combo, _ in ranked[:beam_width]]
    best = beam[0]
    _, mi = kernels.pure.best_subset(codes[list(best)], cls, n)
    return PrincipalSelection(
        t=t, n=n, mode=mode, search="beam", features=tuple(names[i] for i in best), power=mi / h_c
    )


def permutation_baseline(
    t: int,
    n: int,
    selected: Sequence[str],
    n_permutations: int = 1000,
    seed: int = 0,
    mode: str = "per-step",
    classes: ClassTable | None = None,
    reselect: bool = False,
) -> BaselineResult:
    """Null distribution of power for the selected set under random
    re-pairings of rules and class labels. With ``reselect`` the size-n
    selection is re-run for every permutation (slower, less conservative)."""
    if n_permutations < 100:
        raise DomainError("need at least 100 permutations")
    if classes is None:
        classes = bundled_class_table()
    names, codes = _pool(t, mode)
    cls = _class_codes(classes)
    h_c = _entropy_of_labels(list(cls))
    idx = [names.index(s) for s in selected]
    sub = codes[idx]
    rng = np.random.default_rng(seed)
    powers = np.empty(n_permutations)
    for i in range(n_permutations):
        perm = rng.permutation(256)
        shuffled = cls[perm]
        if reselect:
            _, mi = kernels.best_subset(codes, shuffled, n)
        else:
            _, mi = kernels.pure.best_subset(sub, shuffled, len(idx))
        powers[i] = mi / h_c
    lo, hi = np.percentile(powers, [2.5, 97.5])
    return BaselineResult(
        mean=float(powers.mean()), lo=float(lo), hi=float(hi),
        n_permutations=n_permutations, seed=seed,
    )


def nonlocality(
    t_max: int, mode: str = "per-step", classes: ClassTable | None = None
) -> NonlocalityResult:
    """Power of the full feature pool per depth, and the saturation depth.

    ``t_c`` is the smallest t whose power reaches the maximum over the
    scanned range (within 1e-9). The ``conventions`` map also reports the
    zero-based variant (one less), since both step-counting conventions
    appear in the literature.
    """
    if t_max < 2:
        raise DomainError("t_max must be >= 2")
    if classes is None:
        classes = bundled_class_table()
    cls = _class_codes(classes)
    curve = []
    for t in range(1, t_max + 1):
        _, codes = _pool(t, mode)
        curve.append((t, _power_of_codes(codes, cls)))
    top = max(p for _, p in curve)
    t_c = next(t for t, p in curve if p >= top - 1e-9)
    return NonlocalityResult(
        curve=curve,
        t_c=t_c,
        conventions={"first_saturating_t": t_c, "zero_based": t_c - 1},
    )


def power_of_features(
    feature_names: Sequence[str],
    t: int,
    mode: str = "per-step",
    classes: ClassTable | None = None,
) -> float:
    """Normalized power of an explicit feature-name set."""
    if classes is None:
        classes = bundled_class_table()
    names, codes = _pool(t, mode)
    idx = [names.index(s) for s in feature_names]
    return _power_of_codes(codes[idx], _class_codes(classes))
