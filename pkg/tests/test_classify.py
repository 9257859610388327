"""Class tables, predictive power, subset search, and non-locality."""

import math
from itertools import combinations

import numpy as np
import pytest

from infoproc import classify, features
from infoproc.errors import DomainError, FormatError, ResourceError


def write_table(tmp_path, rows, header="rule,class"):
    path = tmp_path / "classes.csv"
    path.write_text(header + "\n" + "\n".join(rows) + "\n")
    return path


def full_rows(class_of):
    return [f"{r},{c}" for r, c in enumerate(class_of)]


def test_load_class_table_round_trip(tmp_path):
    table = classify.bundled_class_table()
    path = write_table(tmp_path, full_rows(table.class_of))
    assert classify.load_class_table(path).class_of == table.class_of


@pytest.mark.parametrize(
    "mutate",
    [
        lambda rows: rows[:-1],  # missing rule
        lambda rows: rows + ["255,2"],  # duplicate rule
        lambda rows: rows[:-1] + ["255,5"],  # class out of range
        lambda rows: rows[:-1] + ["999,1"],  # rule out of range
        lambda rows: rows[:-1] + ["255"],  # malformed line
    ],
)
def test_load_class_table_rejects_bad_files(tmp_path, mutate):
    rows = full_rows(classify.bundled_class_table().class_of)
    path = write_table(tmp_path, mutate(rows))
    with pytest.raises(FormatError):
        classify.load_class_table(path)


def test_load_class_table_rejects_bad_header(tmp_path):
    rows = full_rows(classify.bundled_class_table().class_of)
    path = write_table(tmp_path, rows, header="rule;class")
    with pytest.raises(FormatError):
        classify.load_class_table(path)


def test_bundled_counts_and_entropy():
    table = classify.bundled_class_table()
    counts = table.counts()
    assert counts == {1: 24, 2: 196, 3: 26, 4: 10}
    h = -sum(c / 256 * math.log2(c / 256) for c in counts.values())
    assert h == pytest.approx(1.1329963, abs=1e-6)


def test_predictive_power_extremes():
    table = classify.bundled_class_table()
    perfect = [(float(c),) for c in table.class_of]
    assert classify.predictive_power(perfect, table) == pytest.approx(1.0, abs=1e-12)
    constant = [(0.0,)] * 256
    assert classify.predictive_power(constant, table) == 0.0


def test_predictive_power_requires_256_rows():
    with pytest.raises(DomainError):
        classify.predictive_power([(0.0,)] * 255, classify.bundled_class_table())


def test_symbolization_merges_near_equal_values():
    table = classify.bundled_class_table()
    noisy = [(float(c) + 1e-13,) if r % 2 else (float(c),) for r, (c,) in
             enumerate((float(x),) for x in table.class_of)]
    assert classify.predictive_power(noisy, table) == pytest.approx(1.0, abs=1e-12)


def mi_oracle(columns, labels):
    """Plain-dict mutual information between a feature tuple and labels."""
    n = len(labels)
    keys = list(zip(*columns))

    def h(xs):
        counts = {}
        for x in xs:
            counts[x] = counts.get(x, 0) + 1
        return -sum(c / n * math.log2(c / n) for c in counts.values())

    return h(keys) + h(labels) - h(list(zip(keys, labels)))


def test_select_principal_matches_brute_force_oracle():
    table = classify.bundled_class_table()
    matrix, descs = features.feature_matrix(1)
    names = sorted(d.name for d in descs)
    by_name = {d.name: matrix[:, i] for i, d in enumerate(descs)}
    labels = list(table.class_of)
    h_c = mi_oracle([labels], labels)  # H(C) via I(C:C)
    best = None
    for combo in combinations(names, 2):
        cols = [tuple(round(v, 10) for v in by_name[c]) for c in combo]
        mi = mi_oracle(cols, labels)
        if best is None or mi > best[0] + 1e-12:
            best = (mi, combo)
    sel = classify.select_principal(1, 2)
    assert sel.features == best[1]
    assert sel.power == pytest.approx(best[0] / h_c, abs=1e-9)


def test_beam_search_recovers_exhaustive_optimum():
    for n in (1, 2, 3):
        ex = classify.select_principal(1, n, search="exhaustive")
        beam = classify.select_principal(1, n, search="beam")
        assert beam.power == pytest.approx(ex.power, abs=1e-12)


def test_select_principal_bounds_and_errors():
    with pytest.raises(DomainError):
        classify.select_principal(1, 0)
    with pytest.raises(DomainError):
        classify.select_principal(1, 12)  # pool has 11 features
    with pytest.raises(ResourceError):
        classify.select_principal(3, 6)  # C(247, 6) blows the bound
    with pytest.raises(DomainError):
        classify.select_principal(1, 1, search="simulated-annealing")


def test_permutation_baseline_determinism_and_range():
    sel = classify.select_principal(1, 1)
    b1 = classify.permutation_baseline(1, 1, sel.features, n_permutations=200, seed=11)
    b2 = classify.permutation_baseline(1, 1, sel.features, n_permutations=200, seed=11)
    assert (b1.mean, b1.lo, b1.hi) == (b2.mean, b2.lo, b2.hi)
    assert 0.0 <= b1.lo <= b1.mean <= b1.hi <= 1.0
    assert b1.hi < sel.power
    with pytest.raises(DomainError):
        classify.permutation_baseline(1, 1, sel.features, n_permutations=50)


def test_nonlocality_saturates_at_t3():
    nl = classify.nonlocality(3)
    powers = dict(nl.curve)
    assert powers[1] < powers[2] < powers[3]
    assert powers[3] == pytest.approx(1.0, abs=1e-9)
    assert nl.conventions == {"first_saturating_t": 3, "zero_based": 2}
    assert nl.t_c == 3


def test_nonlocality_requires_a_range():
    with pytest.raises(DomainError):
        classify.nonlocality(1)


def test_power_of_features_consistent_with_selection():
    sel = classify.select_principal(1, 2)
    assert classify.power_of_features(sel.features, 1) == pytest.approx(sel.power, abs=1e-12)
