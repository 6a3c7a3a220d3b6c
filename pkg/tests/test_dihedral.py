"""Tests for the closed forms of infinite dihedral reflection subgroups."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from limitroots.core.errors import (
    AffinePair,
    BadArguments,
    DegenerateSeed,
    NotInfiniteDihedral,
)
from limitroots.models.enums import DihedralKind, Side
from limitroots.services.datum_service import DatumService
from limitroots.services.dihedral_service import DihedralService
from limitroots.services.rootgen_service import RootgenService

A = np.array([1.0, 0.0])
B = np.array([0.0, 1.0])


@pytest.fixture
def pair(f1):
    return DihedralService.make_dihedral_pair(f1, A, B)


def test_f1_pair_closed_forms(pair):
    assert pair.kind == DihedralKind.hyperbolic
    assert pair.theta == pytest.approx(math.log(2), abs=1e-12)
    assert pair.cosh_theta == pytest.approx(1.25)
    assert pair.sinh_theta == pytest.approx(0.75)
    assert pair.a_inf.coords == pytest.approx((2 / 3, 1 / 3), abs=1e-12)
    assert pair.b_inf.coords == pytest.approx((1 / 3, 2 / 3), abs=1e-12)


def test_limit_points_are_isotropic(f1, pair):
    assert RootgenService.isotropy(f1, pair.a_inf.vector) == pytest.approx(0.0, abs=1e-12)
    assert RootgenService.isotropy(f1, pair.b_inf.vector) == pytest.approx(0.0, abs=1e-12)


def test_affine_pair_has_single_limit():
    datum = DatumService.parse_gram_matrix("2\n1 -1\n-1 1")
    pair = DihedralService.make_dihedral_pair(datum, A, B)

    assert pair.kind == DihedralKind.affine
    assert pair.theta is None
    assert pair.a_inf.coords == pytest.approx((0.5, 0.5))
    assert pair.a_inf == pair.b_inf
    assert RootgenService.isotropy(datum, pair.a_inf.vector) == pytest.approx(0.0, abs=1e-15)
    with pytest.raises(AffinePair):
        DihedralService.sequence_root(pair, 1)


def test_finite_pair_is_rejected(f2):
    with pytest.raises(NotInfiniteDihedral):
        DihedralService.make_dihedral_pair(f2, np.eye(3)[0], np.eye(3)[1])


def test_negative_roots_are_rejected(f1):
    with pytest.raises(BadArguments):
        DihedralService.make_dihedral_pair(f1, -A, B)


def test_chebyshev_examples():
    theta = math.log(2)

    assert DihedralService.chebyshev_c(theta, 0) == 0.0
    assert DihedralService.chebyshev_c(theta, 1) == 1.0
    assert DihedralService.chebyshev_c(theta, 2) == pytest.approx(2.5)
    assert DihedralService.chebyshev_c(theta, 3) == pytest.approx(5.25)
    assert DihedralService.chebyshev_c(theta, 4) == pytest.approx(10.625)


@pytest.mark.parametrize("theta", [0.2, math.log(2), 1.5])
def test_chebyshev_recurrence_matches_sinh_ratio(theta):
    c = DihedralService.chebyshev_sequence(theta, 63)

    for i in range(1, 61):
        exact = math.sinh(i * theta) / math.sinh(theta)
        assert abs(c[i] - exact) <= 1e-9 * exact
        assert c[i] * c[i + 2] - c[i + 1] ** 2 == pytest.approx(-1.0, abs=1e-9 * c[i + 1] ** 2)


def test_sequence_root_examples(f1, pair):
    np.testing.assert_allclose(DihedralService.sequence_root(pair, 0), A)
    np.testing.assert_allclose(DihedralService.sequence_root(pair, 1), [5.25, 2.5])
    np.testing.assert_allclose(DihedralService.sequence_root(pair, 2), [21.3125, 10.625])
    np.testing.assert_allclose(
        DihedralService.sequence_root(pair, 1),
        RootgenService.apply_word(f1, [1, 2], A),
    )
    np.testing.assert_allclose(
        DihedralService.sequence_root(pair, 1, Side.B),
        RootgenService.apply_word(f1, [2, 1], B),
    )


def test_rotation_matrix_power_examples(pair):
    np.testing.assert_allclose(DihedralService.rotation_matrix(pair), [[5.25, -2.5], [2.5, -1.0]])
    np.testing.assert_allclose(
        DihedralService.rotation_matrix_power(pair, 1), [[5.25, -2.5], [2.5, -1.0]]
    )
    np.testing.assert_allclose(
        DihedralService.rotation_matrix_power(pair, 2), [[21.3125, -10.625], [10.625, -5.25]]
    )
    with pytest.raises(BadArguments):
        DihedralService.rotation_matrix_power(pair, 0)


def test_rotation_matrix_power_matches_iterated_product(pair):
    base = DihedralService.rotation_matrix(pair)
    product = np.eye(2)

    for i in range(1, 16):
        product = product @ base
        closed = DihedralService.rotation_matrix_power(pair, i)
        assert np.max(np.abs(closed - product) / np.abs(product)) <= 1e-9
        assert np.linalg.det(closed) == pytest.approx(1.0, rel=1e-9, abs=1e-9 * closed[0, 0] ** 2)


def test_limit_pairings(f1, pair):
    direct = DihedralService.limit_pairings(f1, pair)
    closed = DihedralService.limit_pairings_closed_form(pair)

    assert direct == pytest.approx((0.25, -0.5, -0.5, 0.25), abs=1e-12)
    assert closed == pytest.approx((0.25, -0.5, -0.5, 0.25), abs=1e-12)


@settings(max_examples=50, deadline=None)
@given(
    bond=st.floats(min_value=-5.0, max_value=-1.001),
    scale_a=st.floats(min_value=0.1, max_value=10.0),
    scale_b=st.floats(min_value=0.1, max_value=10.0),
)
def test_limit_pairing_signs_and_scale_invariance(bond, scale_a, scale_b):
    datum = DatumService.parse_gram_matrix(f"2\n1 {bond!r}\n{bond!r} 1")
    pair = DihedralService.make_dihedral_pair(datum, scale_a * A, scale_b * B)
    unit = DihedralService.make_dihedral_pair(datum, A, B)

    signs = [math.copysign(1, x) for x in DihedralService.limit_pairings(datum, pair)]
    assert signs == [1, -1, -1, 1]
    assert DihedralService.limit_pairings(datum, pair) == pytest.approx(
        DihedralService.limit_pairings_closed_form(pair), rel=1e-9, abs=1e-12
    )
    assert pair.a_inf.coords == pytest.approx(unit.a_inf.coords, abs=1e-12)


def test_convergence_profile_contracts_by_a_quarter(pair):
    rows = DihedralService.convergence_profile(pair, 20)

    assert rows[0].ratio is None
    for row in rows[5:]:
        assert row.ratio == pytest.approx(0.25, abs=0.01)


def test_sequence_distances_reach_the_limit(pair):
    rows = DihedralService.sequence_distances(pair, 20)

    assert [r.i for r in rows] == list(range(1, 21))
    assert rows[-1].distance_to_a_inf <= 1e-10
    assert rows[3].ratio == pytest.approx(1 / 16, rel=1e-3)


def test_periodic_limit_converges_to_a_inf(f1, pair):
    rng = np.random.default_rng(0)
    for seed in rng.uniform(-1.0, 1.0, size=(100, 2)):
        limit = DihedralService.periodic_limit(f1, pair, seed)
        assert limit.coords == pytest.approx(pair.a_inf.coords, abs=1e-9)


def test_periodic_limit_of_b_is_a_inf(f1, pair):
    limit = DihedralService.periodic_limit(f1, pair, B)

    assert limit.coords == pytest.approx((2 / 3, 1 / 3), abs=1e-9)


def test_periodic_limit_fixes_b_inf(f1, pair):
    limit = DihedralService.periodic_limit(f1, pair, pair.b_inf)

    assert limit.coords == pytest.approx(pair.b_inf.coords, abs=1e-12)


def test_periodic_limit_rejects_zero_seed(f1, pair):
    with pytest.raises(DegenerateSeed):
        DihedralService.periodic_limit(f1, pair, np.zeros(2))


def test_maximal_dihedral_plane(f1, f2):
    f1_table = RootgenService.generate_positive_roots(f1, 6)
    assert len(DihedralService.maximal_dihedral_plane(f1, A, B, f1_table)) == len(f1_table)

    f2_table = RootgenService.generate_positive_roots(f2, 6)
    plane = DihedralService.maximal_dihedral_plane(f2, np.eye(3)[0], np.eye(3)[1], f2_table)
    assert sorted(r.coords for r in plane) == [(0.0, 1.0, 0.0), (1.0, 0.0, 0.0), (1.0, 1.0, 0.0)]


def test_infinite_dihedral_plane_grows_with_depth(f2):
    shallow = RootgenService.generate_positive_roots(f2, 6)
    deep = RootgenService.generate_positive_roots(f2, 10)
    i, j = next(
        (i, j)
        for i in range(len(shallow))
        for j in range(i + 1, len(shallow))
        if shallow.roots[i].depth <= 2
        and shallow.roots[j].depth <= 2
        and DatumService.bilinear(f2, shallow.roots[i].vector, shallow.roots[j].vector) < -1.0
    )
    a, b = shallow.roots[i], shallow.roots[j]

    assert len(DihedralService.maximal_dihedral_plane(f2, a, b, deep)) > len(
        DihedralService.maximal_dihedral_plane(f2, a, b, shallow)
    )


def test_interlaced_limit_check(f1, pair):
    a_2 = DihedralService.sequence_root(pair, 2)
    report = DihedralService.interlaced_limit_check(f1, pair, a_2, 10)

    assert report.k is not None
    assert report.distance_to_a_inf < 0.01


def test_dihedral_report(f1, pair):
    report = DihedralService.dihedral_report(f1, pair, 20)

    assert report.theta == pytest.approx(math.log(2))
    assert len(report.convergence) == 20
    assert report.convergence[-1].distance_to_a_inf <= 1e-10
    assert report.pairings == pytest.approx([0.25, -0.5, -0.5, 0.25], abs=1e-12)
