import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import lazysaddle as ls
from lazysaddle.data import LibsvmFormatError, SparseDataset


def test_parse_small_file_by_hand():
    text = "1 1:0.5 3:-2\n-1 2:1\n"
    ds = ls.parse_libsvm(text)
    np.testing.assert_array_equal(ds.labels, [1.0, -1.0])
    assert ds.rows == [[(1, 0.5), (3, -2.0)], [(2, 1.0)]]
    assert ds.n_features == 3


def test_parse_skips_blanks_comments_and_allows_bare_labels():
    text = "# header\n\n1\n-1 2:3.5\n   \n"
    ds = ls.parse_libsvm(text)
    assert len(ds.labels) == 2
    assert ds.rows[0] == []
    assert ds.n_features == 2


def test_parse_accepts_line_iterables():
    ds = ls.parse_libsvm(["1 1:2", "-1 1:3"])
    assert ds.n_features == 1


@pytest.mark.parametrize(
    "text, fragment",
    [
        ("1 1:0.5\nx 1:1\n", "line 2"),
        ("1 1:0.5\n-1 0:1\n", "line 2"),
        ("1 2:1 1:2\n", "line 1"),
        ("1 3:1 3:2\n", "line 1"),
        ("1 1:notanumber\n", "line 1"),
        ("1 1\n", "line 1"),
    ],
)
def test_parse_errors_carry_line_numbers(text, fragment):
    with pytest.raises(LibsvmFormatError, match=fragment):
        ls.parse_libsvm(text)


def test_dump_round_trips_by_hand():
    ds = SparseDataset(
        labels=np.array([1.0, -1.0]),
        rows=[[(1, 0.5), (7, -1.25)], []],
        n_features=7,
    )
    again = ls.parse_libsvm(ls.dump_libsvm(ds))
    np.testing.assert_array_equal(again.labels, ds.labels)
    assert again.rows == ds.rows
    assert again.n_features == ds.n_features


finite_values = st.floats(
    allow_nan=False, allow_infinity=False, min_value=-1e6, max_value=1e6
).filter(lambda v: v != 0.0)


@settings(max_examples=60, deadline=None)
@given(
    st.lists(
        st.tuples(
            st.sampled_from([-1.0, 1.0]),
            st.dictionaries(st.integers(min_value=1, max_value=30), finite_values, max_size=8),
        ),
        min_size=1,
        max_size=12,
    )
)
def test_dump_parse_round_trip_fuzz(rows):
    dataset = SparseDataset(
        labels=np.array([label for label, _ in rows]),
        rows=[sorted(features.items()) for _, features in rows],
        n_features=max(
            (max(features) for _, features in rows if features), default=1
        ),
    )
    again = ls.parse_libsvm(ls.dump_libsvm(dataset))
    np.testing.assert_array_equal(again.labels, dataset.labels)
    assert again.rows == dataset.rows


def test_extract_protected_splits_binarizes_and_relabels():
    text = "0 1:2 2:1 3:5\n1 1:4 3:6\n1 2:0.2 3:7\n"
    ds = ls.parse_libsvm(text)
    features, labels, protected = ls.extract_protected(ds, 2)
    assert features.shape == (3, 2)
    np.testing.assert_array_equal(features[:, 1], [5.0, 6.0, 7.0])
    np.testing.assert_array_equal(labels, [-1.0, 1.0, 1.0])
    # 1 -> +1, 0 and 0.2 fall below the threshold -> -1
    np.testing.assert_array_equal(protected, [1.0, -1.0, -1.0])


def test_extract_protected_warns_when_constant():
    ds = ls.parse_libsvm("1 1:1 2:1\n-1 1:1 2:2\n")
    with pytest.warns(RuntimeWarning):
        ls.extract_protected(ds, 1)


def test_extract_protected_rejects_bad_index():
    ds = ls.parse_libsvm("1 1:1\n")
    with pytest.raises(ValueError):
        ls.extract_protected(ds, 5)


def test_normalize_features_scales_to_unit_max():
    features = np.array([[2.0, 0.0], [-4.0, 0.0]])
    scaled = ls.normalize_features(features)
    np.testing.assert_array_equal(scaled[:, 0], [0.5, -1.0])
    # zero columns pass through untouched rather than dividing by zero
    np.testing.assert_array_equal(scaled[:, 1], [0.0, 0.0])
    np.testing.assert_array_equal(ls.normalize_features(scaled), scaled)


def test_synthetic_dataset_is_deterministic_and_balanced():
    text = ls.synthetic_fairness_text()
    assert text == ls.synthetic_fairness_text()
    ds = ls.parse_libsvm(text)
    assert len(ds.labels) == 270
    assert ds.n_features == 13
    features, labels, protected = ls.extract_protected(ds, 2)
    assert features.shape == (270, 12)
    assert {-1.0, 1.0} == set(np.unique(labels).tolist())
    assert {-1.0, 1.0} == set(np.unique(protected).tolist())
