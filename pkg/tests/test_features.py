"""Feature descriptors, enumeration, and the fast feature-vector path."""

import io

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from infoproc import eca, features
from infoproc.errors import DomainError
from infoproc.features import FeatureDescriptor


def mirror_rule(rule):
    """Exchange the roles of the left and right inputs."""
    out = 0
    for code in range(8):
        l, c, r = (code >> 2) & 1, (code >> 1) & 1, code & 1
        if (rule >> code) & 1:
            out |= 1 << (4 * r + 2 * c + l)
    return out


def mirror_mask(mask, width):
    return int(f"{mask:0{width}b}"[::-1], 2)


def complement_rule(rule):
    """Invert all cell states: negated outputs of the negated inputs."""
    out = 0
    for code in range(8):
        if not (rule >> (7 - code)) & 1:
            out |= 1 << code
    return out


def test_pool_counts():
    assert len(features.enumerate_descriptors(1)) == 11
    assert len(features.enumerate_descriptors(2)) == 57
    assert len(features.enumerate_descriptors(3)) == 247
    assert len(features.enumerate_descriptors(2, "cumulative")) == 11 + 57


def test_descriptor_names():
    d = FeatureDescriptor(kind="S", t_prime=1, mask=0b111)
    assert d.name == "S111"
    d2 = FeatureDescriptor(kind="I", t_prime=2, mask=0b00001)
    assert d2.name == "t2:I00001"
    assert FeatureDescriptor.from_name("t2:I00001") == d2
    assert FeatureDescriptor.from_name("S111") == d


def test_descriptor_validation():
    with pytest.raises(DomainError):
        FeatureDescriptor(kind="X", t_prime=1, mask=1)
    with pytest.raises(DomainError):
        FeatureDescriptor(kind="S", t_prime=1, mask=0b010)  # synergy needs >= 2 cells
    with pytest.raises(DomainError):
        FeatureDescriptor(kind="I", t_prime=1, mask=0)
    with pytest.raises(DomainError):
        FeatureDescriptor.from_name("t2:I001")  # width/depth mismatch


@given(
    st.sampled_from("IS"),
    st.integers(min_value=1, max_value=4),
    st.data(),
)
@settings(max_examples=100, deadline=None)
def test_descriptor_name_round_trip(kind, t_prime, data):
    width = 2 * t_prime + 1
    min_bits = 2 if kind == "S" else 1
    mask = data.draw(
        st.integers(min_value=1, max_value=(1 << width) - 1).filter(
            lambda m: bin(m).count("1") >= min_bits
        )
    )
    d = FeatureDescriptor(kind=kind, t_prime=t_prime, mask=mask)
    assert FeatureDescriptor.from_name(d.name) == d


def test_enumeration_order_is_name_order():
    descs = features.enumerate_descriptors(2, "cumulative")
    # depth ascending, I before S, mask ascending — a deterministic order
    keys = [(d.t_prime, d.kind, d.mask) for d in descs]
    assert keys == sorted(keys)


@pytest.mark.parametrize("rule", [30, 54, 90, 110, 150, 184])
def test_fast_path_matches_direct_computation(rule):
    fv = features.feature_vector(rule, 2)
    for d in features.enumerate_descriptors(2):
        assert fv.entries[d] == pytest.approx(features.compute_feature(rule, d), abs=1e-12)


@given(st.integers(min_value=0, max_value=255))
@settings(max_examples=60, deadline=None)
def test_mirror_rule_symmetry(rule):
    fv = features.feature_vector(rule, 1)
    fm = features.feature_vector(mirror_rule(rule), 1)
    for d, v in fv.entries.items():
        mirrored = FeatureDescriptor(kind=d.kind, t_prime=1, mask=mirror_mask(d.mask, 3))
        assert fm.entries[mirrored] == pytest.approx(v, abs=1e-12)


@given(st.integers(min_value=0, max_value=255))
@settings(max_examples=60, deadline=None)
def test_complement_rule_invariance(rule):
    # flipping all cell states is a bijection of uniform initial conditions,
    # so every information feature is unchanged
    fv = features.feature_vector(rule, 1)
    fc = features.feature_vector(complement_rule(rule), 1)
    for d, v in fv.entries.items():
        assert fc.entries[d] == pytest.approx(v, abs=1e-12)


def test_locality_feature_ignores_cells_outside_dependence():
    # rule 90 reads only the outer neighbors; the center adds no information
    fv = features.feature_vector(90, 1)
    assert fv.value("I010") == 0.0
    assert fv.value("I101") == pytest.approx(1.0, abs=1e-12)
    assert fv.value("I111") == pytest.approx(1.0, abs=1e-12)


def test_additive_rules_105_150_identical():
    a = features.feature_vector(105, 3, "cumulative").values()
    b = features.feature_vector(150, 3, "cumulative").values()
    np.testing.assert_allclose(a, b, rtol=0, atol=0)


def test_synergy_is_whole_minus_parts():
    fv = features.feature_vector(110, 1)
    whole = fv.value("I111")
    parts = fv.value("I100") + fv.value("I010") + fv.value("I001")
    assert fv.value("S111") == pytest.approx(whole - parts, abs=1e-12)


def test_summary_triple_matches_named_features():
    fv = features.feature_vector(110, 1)
    s = features.summary_triple(110)
    assert s.memory == pytest.approx(fv.value("I010"), abs=1e-15)
    assert s.transfer == pytest.approx(fv.value("I100") + fv.value("I001"), abs=1e-15)
    assert s.integration == pytest.approx(fv.value("S111"), abs=1e-15)


def test_feature_matrix_shape_and_csv():
    matrix, descs = features.feature_matrix(1, rules=range(4))
    assert matrix.shape == (4, 11)
    buf = io.StringIO()
    features.write_feature_csv(buf, matrix, descs, rules=range(4))
    lines = buf.getvalue().strip().split("\n")
    assert lines[0] == "rule," + ",".join(d.name for d in descs)
    assert len(lines) == 5
    assert lines[1].startswith("0,")


def test_feature_values_bounded_by_output_entropy():
    for rule in (30, 110, 184):
        cone = eca.light_cone_map(eca.rule_table(rule), 1)
        p1 = cone.table.mean()
        h_out = 0.0 if p1 in (0.0, 1.0) else -(
            p1 * np.log2(p1) + (1 - p1) * np.log2(1 - p1)
        )
        fv = features.feature_vector(rule, 1)
        for d, v in fv.entries.items():
            if d.kind == "I":
                assert -1e-12 <= v <= h_out + 1e-12
