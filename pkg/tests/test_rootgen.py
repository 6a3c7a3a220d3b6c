"""Tests for breadth-first root generation, normalization and words."""

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from limitroots.core.errors import (
    BadArguments,
    BadRootSpec,
    CapacityExceeded,
    IndexOutOfRange,
    OnZeroHyperplane,
)
from limitroots.services.datum_service import DatumService
from limitroots.services.rootgen_service import RootgenService


def test_f1_depth_two_table(f1):
    table = RootgenService.generate_positive_roots(f1, 2)

    assert [r.coords for r in table.roots] == [
        (0.0, 1.0),
        (1.0, 0.0),
        (1.0, 2.5),
        (2.5, 1.0),
        (2.5, 5.25),
        (5.25, 2.5),
    ]
    assert list(table.depths) == [0, 0, 1, 1, 2, 2]


def test_depth_zero_gives_simple_roots(f2):
    table = RootgenService.generate_positive_roots(f2, 0)

    assert len(table) == 3
    np.testing.assert_array_equal(np.sort(table.coords, axis=0), np.eye(3))


def test_f2_depth_one_deduplicates_equal_images(f2):
    # r_1 a_2 = r_2 a_1 and r_2 a_3 = r_3 a_2 for the order-3 bonds
    table = RootgenService.generate_positive_roots(f2, 1)

    assert len(table) == 7
    assert len(table.at_depth(1)) == 4


def test_finite_group_table_stops_growing(finite):
    table = RootgenService.generate_positive_roots(finite, 10)

    assert len(table) == 3
    assert table.max_depth == 10


def test_witness_words_reproduce_roots(f2):
    table = RootgenService.generate_positive_roots(f2, 6)

    for root in table.roots:
        simple = np.eye(3)[root.base - 1]
        image = RootgenService.apply_word(f2, root.word, simple)
        np.testing.assert_allclose(image, root.vector, atol=1e-9)
        assert len(root.word) == root.depth


def test_roots_are_positive_unit_vectors(f3):
    table = RootgenService.generate_positive_roots(f3, 6)

    assert np.all(table.coords >= 0.0)
    for root in table.roots:
        assert RootgenService.isotropy(f3, root.vector) == pytest.approx(1.0, abs=1e-9)


def test_table_has_no_duplicates(f2):
    table = RootgenService.generate_positive_roots(f2, 8)

    for k, root in enumerate(table.roots):
        assert table.index_of(root.vector) == k


def test_canonical_order_is_depth_then_lexicographic(f3):
    table = RootgenService.generate_positive_roots(f3, 5)

    keys = [(r.depth, r.coords) for r in table.roots]
    assert keys == sorted(keys)


def test_generation_is_deterministic(f2):
    first = RootgenService.generate_positive_roots(f2, 7)
    second = RootgenService.generate_positive_roots(f2, 7)

    assert [r.coords for r in first.roots] == [r.coords for r in second.roots]
    assert [r.word for r in first.roots] == [r.word for r in second.roots]


def test_capacity_is_enforced(f3):
    with pytest.raises(CapacityExceeded):
        RootgenService.generate_positive_roots(f3, 10, capacity=50)


def test_negative_depth_is_rejected(f1):
    with pytest.raises(BadArguments):
        RootgenService.generate_positive_roots(f1, -1)


@pytest.mark.parametrize("name", ["f1", "f2", "f3"])
def test_depth_drops_by_one_along_a_descent(request, name):
    datum = request.getfixturevalue(name)
    table = RootgenService.generate_positive_roots(datum, 5)

    for root in table.roots:
        if not 1 <= root.depth <= 4:
            continue
        depths = {}
        for s in range(1, datum.rank + 1):
            k = table.index_of(DatumService.reflect(datum, s, root.vector))
            assert k is not None
            depths[s] = table.roots[k].depth
            pairing = DatumService.bilinear(datum, root.vector, np.eye(datum.rank)[s - 1])
            if pairing > 1e-9:
                assert depths[s] == root.depth - 1
            elif pairing < -1e-9:
                assert depths[s] == root.depth + 1
        assert min(depths.values()) == root.depth - 1



def test_normalize_examples():
    point = RootgenService.normalize(np.array([5.25, 2.5]))

    assert point.coords == pytest.approx((21 / 31, 10 / 31), abs=1e-15)
    assert RootgenService.normalize(np.array([1.0, 0.0])).coords == (1.0, 0.0)
    with pytest.raises(OnZeroHyperplane):
        RootgenService.normalize(np.array([1.0, -1.0]))


@settings(max_examples=100, deadline=None)
@given(st.lists(st.floats(min_value=-50, max_value=50), min_size=2, max_size=4))
def test_normalize_is_idempotent(coords):
    v = np.array(coords)
    assume(abs(v.sum()) > 0.1 * (1.0 + float(np.abs(v).max())))

    once = RootgenService.normalize(v)
    twice = RootgenService.normalize(once.vector)

    assert sum(once.coords) == pytest.approx(1.0, abs=1e-12)
    np.testing.assert_allclose(twice.vector, once.vector, rtol=0, atol=1e-12)



def test_isotropy_examples(f1):
    assert RootgenService.isotropy(f1, np.array([2 / 3, 1 / 3])) == pytest.approx(0.0, abs=1e-15)
    assert RootgenService.isotropy(f1, np.array([0.5, 0.5])) == pytest.approx(-0.125)


def test_apply_word_examples(f1):
    a, b = np.array([1.0, 0.0]), np.array([0.0, 1.0])

    np.testing.assert_allclose(RootgenService.apply_word(f1, [1, 2], a), [5.25, 2.5])
    np.testing.assert_array_equal(RootgenService.apply_word(f1, [], b), b)
    np.testing.assert_allclose(RootgenService.apply_word(f1, [1, 1], b), b)


def test_words_without_repeats():
    words = RootgenService.words_without_repeats(3, 2)

    assert words[:3] == [(1,), (2,), (3,)]
    assert len(words) == 3 + 6
    assert all(w[0] != w[1] for w in words if len(w) == 2)
    assert RootgenService.words_without_repeats(3, 0) == []


def test_parse_root_spec(f1):
    assert RootgenService.parse_root_spec(f1, "@2").coords == (0.0, 1.0)
    root = RootgenService.parse_root_spec(f1, "1,2@1")
    assert root.coords == pytest.approx((5.25, 2.5))
    assert root.word == (1, 2)


@pytest.mark.parametrize("spec", ["1,2", "a@1", "1@x", "2@2"])
def test_parse_root_spec_rejects_bad_specs(f1, spec):
    # "2@2" is r_2 a_2 = -a_2
    with pytest.raises(BadRootSpec):
        RootgenService.parse_root_spec(f1, spec)


def test_parse_root_spec_checks_generators(f1):
    with pytest.raises(IndexOutOfRange):
        RootgenService.parse_root_spec(f1, "3@1")
