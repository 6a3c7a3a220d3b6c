"""Tests for limit-root estimates, the dot action and the N_i neighbourhoods."""

import math

import numpy as np
import pytest

from limitroots.core.errors import (
    EmptySelection,
    IdenticalPoints,
    LeavesChartD,
    NoHyperbolicPairs,
    NotIsotropic,
)
from limitroots.models.enums import ProvenanceKind
from limitroots.services.datum_service import DatumService
from limitroots.services.dihedral_service import DihedralService
from limitroots.services.limits_service import LimitsService
from limitroots.services.rootgen_service import RootgenService

A = np.array([1.0, 0.0])
B = np.array([0.0, 1.0])
A_INF = (2 / 3, 1 / 3)
B_INF = (1 / 3, 2 / 3)


@pytest.fixture
def f1_pair(f1):
    return DihedralService.make_dihedral_pair(f1, A, B)


@pytest.fixture(scope="module")
def f2_setup():
    datum = DatumService.parse_coxeter_matrix("3\n1 3 4\n3 1 3\n4 3 1")
    table = RootgenService.generate_positive_roots(datum, 6)
    return datum, table


@pytest.fixture(scope="module")
def f2_deep():
    datum = DatumService.parse_coxeter_matrix("3\n1 3 4\n3 1 3\n4 3 1")
    table = RootgenService.generate_positive_roots(datum, 15)
    return datum, table


def _max_pairwise(datum, points: np.ndarray) -> float:
    worst = -math.inf
    for start in range(0, len(points), 500):
        block = points[start : start + 500] @ datum.matrix @ points.T
        worst = max(worst, float(block.max()))
    return worst


# --- deep-root estimate --------------------------------------------------------


def test_f1_deep_roots_cluster_at_the_two_limits(f1):
    table = RootgenService.generate_positive_roots(f1, 20)
    cloud = LimitsService.estimate_limit_cloud(f1, table, 15, 1e-4)

    assert len(cloud) == 2
    np.testing.assert_allclose(sorted(cloud.matrix.tolist()), [B_INF, A_INF], atol=1e-6)
    assert all(p.kind == ProvenanceKind.deep_root for p in cloud.provenance)
    assert cloud.min_depth == 15


def test_finite_group_has_no_deep_roots(finite):
    table = RootgenService.generate_positive_roots(finite, 6)

    with pytest.raises(EmptySelection):
        LimitsService.estimate_limit_cloud(finite, table, 3, 1e-4)


def test_f2_deep_roots_are_nearly_isotropic(f2_deep):
    datum, table = f2_deep
    cloud = LimitsService.estimate_limit_cloud(datum, table, 12, 1e-2)

    assert len(cloud) > 0
    assert cloud.max_residual <= 0.05


def test_f2_residuals_shrink_with_min_depth(f2_deep):
    datum, table = f2_deep

    residuals = [
        LimitsService.estimate_limit_cloud(datum, table, m, 1e-2).max_residual
        for m in range(8, 13)
    ]
    assert residuals == sorted(residuals, reverse=True)


def test_cluster_centers_are_separated(f2):
    table = RootgenService.generate_positive_roots(f2, 10)
    cloud = LimitsService.estimate_limit_cloud(f2, table, 7, 1e-2)

    points = cloud.matrix
    gaps = np.max(np.abs(points[:, None, :] - points[None, :, :]), axis=2)
    np.fill_diagonal(gaps, np.inf)
    assert gaps.min() > 1e-2


# --- lines, dot action, geometric action -----------------------------------------


def test_line_through_simple_roots_meets_both_limits(f1):
    points = LimitsService.line_isotropic_intersections(f1, A, B)

    assert [p.coords for p in points] == [
        pytest.approx(A_INF, abs=1e-12),
        pytest.approx(B_INF, abs=1e-12),
    ]


def test_line_misses_cone_for_finite_bond(f2):
    assert LimitsService.line_isotropic_intersections(f2, np.eye(3)[0], np.eye(3)[1]) == []


def test_affine_line_is_tangent():
    datum = DatumService.parse_gram_matrix("2\n1 -1\n-1 1")
    points = LimitsService.line_isotropic_intersections(datum, A, B)

    assert len(points) == 1
    assert points[0].coords == pytest.approx((0.5, 0.5))


def test_line_needs_two_points(f1):
    with pytest.raises(IdenticalPoints):
        LimitsService.line_isotropic_intersections(f1, A, A.copy())


@pytest.mark.parametrize("i", range(3, 12))
def test_line_through_consecutive_chain_roots(f1, f1_pair, i):
    # normalized a_i and a_{i+1} are within 16^-i of a_inf
    p = RootgenService.normalize(DihedralService.sequence_root(f1_pair, i))
    q = RootgenService.normalize(DihedralService.sequence_root(f1_pair, i + 1))
    assert p.coords != q.coords

    points = LimitsService.line_isotropic_intersections(f1, p, q)

    np.testing.assert_allclose(
        sorted(pt.coords for pt in points), [B_INF, A_INF], rtol=0, atol=1e-9
    )


def test_nearby_points_are_not_identical(f1):
    p = np.array(A_INF)
    q = p + np.array([1e-13, -1e-13])

    points = LimitsService.line_isotropic_intersections(f1, p, q)

    assert len(points) == 2


@pytest.mark.parametrize("name", ["f1", "f2", "f3"])
def test_intersection_count_follows_pairing(request, name):
    datum = request.getfixturevalue(name)
    table = RootgenService.generate_positive_roots(datum, 5)
    rng = np.random.default_rng(1)

    checked = 0
    while checked < 350:
        i, j = (int(k) for k in rng.integers(0, len(table), size=2))
        x, y = table.roots[i], table.roots[j]
        if i == j or x.normalized.coords == y.normalized.coords:
            continue
        pairing = abs(DatumService.bilinear(datum, x.vector, y.vector))
        found = LimitsService.line_isotropic_intersections(datum, x.normalized, y.normalized)
        if abs(pairing - 1.0) <= 1e-9:
            assert len(found) <= 1
        else:
            assert len(found) == (2 if pairing > 1.0 else 0)
        checked += 1


def test_dot_action_examples(f1):
    a_inf = LimitsService.dot_action(f1, [1], np.array(B_INF))
    b_inf = LimitsService.dot_action(f1, [1], np.array(A_INF))

    assert a_inf.coords == pytest.approx(A_INF, abs=1e-12)
    assert b_inf.coords == pytest.approx(B_INF, abs=1e-12)
    assert LimitsService.dot_action(f1, [], np.array(A_INF)).coords == pytest.approx(A_INF)


def test_dot_action_by_a_generator_is_an_involution(f2_setup):
    datum, table = f2_setup
    for root in table.roots[:40]:
        point = root.normalized
        for s in (1, 2, 3):
            try:
                image = LimitsService.dot_action(datum, [s], point)
                back = LimitsService.dot_action(datum, [s], image)
            except LeavesChartD:
                continue
            np.testing.assert_allclose(back.vector, point.vector, atol=1e-12)


def test_dot_action_leaves_chart(f1):
    # r_1 (3.5, 1) = (-1, 1)
    with pytest.raises(LeavesChartD):
        LimitsService.dot_action(f1, [1], np.array([3.5, 1.0]))


def test_geometric_action_on_f1(f1):
    report = LimitsService.verify_geometric_action(f1, A, np.array(A_INF))

    assert report.fixed_point is False
    assert report.residual <= 1e-12
    assert report.image.coords == pytest.approx(B_INF, abs=1e-12)
    assert len(report.intersections) == 2


def test_geometric_action_fixed_point(f1):
    # B((2, 1), a_inf) = 0
    report = LimitsService.verify_geometric_action(f1, np.array([2.0, 1.0]), np.array(A_INF))

    assert report.fixed_point is True
    assert report.residual == pytest.approx(0.0, abs=1e-12)


def test_geometric_action_needs_isotropic_point(f1):
    with pytest.raises(NotIsotropic):
        LimitsService.verify_geometric_action(f1, A, np.array([0.5, 0.5]))


@pytest.mark.parametrize("i", range(8, 16))
def test_geometric_action_for_deep_chain_roots(f1, f1_pair, i):
    alpha = DihedralService.sequence_root(f1_pair, i)

    report = LimitsService.verify_geometric_action(f1, alpha, np.array(A_INF))

    assert report.residual <= 1e-9


@pytest.mark.parametrize("i", [1, 2])
def test_chain_reflections_swap_the_limits(f1, f1_pair, i):
    alpha = DihedralService.sequence_root(f1_pair, i)

    report = LimitsService.verify_geometric_action(f1, alpha, np.array(A_INF))

    assert report.fixed_point is False
    assert report.image.coords == pytest.approx(B_INF, abs=1e-9)
    np.testing.assert_allclose(
        sorted(p.coords for p in report.intersections), [B_INF, A_INF], rtol=0, atol=1e-9
    )


def test_geometric_action_sweep(f2_setup):
    datum, table = f2_setup
    cloud = LimitsService.sample_e2(datum, table, 50, 1)
    rng = np.random.default_rng(2)

    for _ in range(1000):
        alpha = table.roots[int(rng.integers(0, len(table)))]
        x = cloud.points[int(rng.integers(0, len(cloud)))]
        report = LimitsService.verify_geometric_action(datum, alpha, x)
        assert report.residual <= 1e-9
        if abs(DatumService.bilinear(datum, alpha.vector, x.vector)) <= 1e-10:
            assert report.fixed_point


# --- E2 sample and cross-validation ------------------------------------------------


def test_f1_e2_is_the_pair_of_limits(f1):
    table = RootgenService.generate_positive_roots(f1, 4)
    cloud = LimitsService.sample_e2(f1, table, 200, 2)

    assert len(cloud) == 2
    np.testing.assert_allclose(sorted(cloud.matrix.tolist()), [B_INF, A_INF], atol=1e-12)


def test_finite_group_has_no_hyperbolic_pairs(finite):
    table = RootgenService.generate_positive_roots(finite, 4)

    with pytest.raises(NoHyperbolicPairs):
        LimitsService.sample_e2(finite, table, 10, 1)


def test_f2_e2_points_are_isotropic_and_pairwise_non_positive(f2_setup):
    datum, table = f2_setup
    cloud = LimitsService.sample_e2(datum, table, 200, 4)

    assert len(cloud) >= 50
    assert cloud.max_residual <= 1e-9
    assert _max_pairwise(datum, cloud.matrix) <= 1e-8
    kinds = {p.kind for p in cloud.provenance}
    assert kinds == {ProvenanceKind.dihedral_pair, ProvenanceKind.orbit}


def test_f1_cross_validation(f1):
    table = RootgenService.generate_positive_roots(f1, 20)
    deep = LimitsService.estimate_limit_cloud(f1, table, 15, 1e-4)
    e2 = LimitsService.sample_e2(f1, table, 50, 1)

    assert LimitsService.cross_validate(deep, e2) <= 1e-6


def test_f2_cross_validation(f2_deep):
    datum, table = f2_deep
    deep = LimitsService.estimate_limit_cloud(datum, table, 12, 1e-2)
    e2 = LimitsService.sample_e2(datum, table, 200, 4)

    assert LimitsService.cross_validate(deep, e2) <= 1e-3


def test_imaginary_cone_spot_check(f2_setup):
    datum, table = f2_setup
    cloud = LimitsService.sample_e2(datum, table, 50, 1)
    report = LimitsService.imaginary_cone_spot_check(datum, cloud, samples=100)

    assert report.kappa_points > 0
    assert report.orbit_points > 0
    assert report.max_pairing <= 1e-8


def test_fundamental_cone_examples(f1):
    assert LimitsService.fundamental_cone_contains(f1, np.array([1.0, 1.0])) is True
    assert LimitsService.fundamental_cone_contains(f1, A) is False
    assert LimitsService.fundamental_cone_contains(f1, np.zeros(2)) is False


# --- neighbourhoods ------------------------------------------------------------------


def test_certificates_in_f1(f1, f1_pair):
    probe = LimitsService.make_probe(f1_pair, 1)

    assert LimitsService.probe_at(f1, probe, f1_pair.a_inf).certificate_margin == pytest.approx(
        0.0625, abs=1e-12
    )
    assert LimitsService.certify_neighborhood(f1, probe, f1_pair.a_inf) is True
    assert LimitsService.probe_at(f1, probe, f1_pair.b_inf).certificate_margin == pytest.approx(
        -2.0, abs=1e-12
    )
    assert LimitsService.certify_neighborhood(f1, probe, f1_pair.b_inf) is False
    zero = LimitsService.make_probe(f1_pair, 0)
    assert LimitsService.probe_at(f1, zero, f1_pair.a_inf).certificate_margin == pytest.approx(
        0.25, abs=1e-12
    )


def test_margins_at_a_inf_shrink_by_a_quarter(f1, f1_pair):
    for i in range(11):
        margin = LimitsService.neighborhood_margin(f1, f1_pair, i, f1_pair.a_inf)
        assert margin == pytest.approx(0.25 * 4.0**-i, abs=1e-9)
        assert margin == pytest.approx(
            DatumService.bilinear(
                f1, DihedralService.sequence_root(f1_pair, i), f1_pair.a_inf.vector
            ),
            abs=1e-9,
        )


def test_shrink_witness_in_f1(f1, f1_pair):
    assert LimitsService.shrink_witness(f1, f1_pair, f1_pair.b_inf, 50) == 0
    assert LimitsService.shrink_witness(f1, f1_pair, f1_pair.a_inf, 50) is None


def test_shrink_witness_in_f2(f2_setup):
    datum, table = f2_setup
    i, j = LimitsService.hyperbolic_pairs(datum, table, 1)[0]
    pair = DihedralService.make_dihedral_pair(datum, table.roots[i], table.roots[j])
    cloud = LimitsService.sample_e2(datum, table, 100, 1)

    far = [
        p for p in cloud.points if np.max(np.abs(p.vector - pair.a_inf.vector)) > 0.1
    ]
    assert far
    for eta in far:
        assert LimitsService.shrink_witness(datum, pair, eta, 50) is not None
    assert LimitsService.shrink_witness(datum, pair, pair.a_inf, 50) is None


def test_certificates_are_nested(f2_setup):
    datum, table = f2_setup
    i, j = LimitsService.hyperbolic_pairs(datum, table, 1)[0]
    pair = DihedralService.make_dihedral_pair(datum, table.roots[i], table.roots[j])
    cloud = LimitsService.sample_e2(datum, table, 30, 1)

    for eta in cloud.points:
        certified = [
            LimitsService.neighborhood_margin(datum, pair, k, eta) > 0.0 for k in range(20)
        ]
        first_false = certified.index(False) if False in certified else len(certified)
        assert not any(certified[first_false:])


def test_neighborhood_membership_in_f1(f1, f1_pair):
    table = RootgenService.generate_positive_roots(f1, 20)

    assert LimitsService.neighborhood_membership(f1, f1_pair, 2, table, f1_pair.a_inf, 1e-6)
    assert not LimitsService.neighborhood_membership(f1, f1_pair, 2, table, f1_pair.b_inf, 1e-3)
    assert LimitsService.neighborhood_membership(f1, f1_pair, 2, table, f1_pair.b_inf, 2.0)


def test_neighborhood_membership_is_nested(f1, f1_pair):
    table = RootgenService.generate_positive_roots(f1, 12)

    for eta in (f1_pair.a_inf, f1_pair.b_inf):
        members = [
            LimitsService.neighborhood_membership(f1, f1_pair, i, table, eta, 1e-3)
            for i in range(4)
        ]
        for inner, outer in zip(members[1:], members):
            assert outer or not inner


def test_neighborhood_report(f1, f1_pair):
    report = LimitsService.neighborhood_report(
        f1, f1_pair, 1, [f1_pair.a_inf, f1_pair.b_inf], i_max=10
    )

    assert report.a_i == pytest.approx([5.25, 2.5])
    assert [p.certified for p in report.probes] == [True, False]
    assert [p.shrink_witness for p in report.probes] == [None, 0]
    assert all(p.member is None for p in report.probes)
