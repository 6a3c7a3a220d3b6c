"""Limits service - numerical limit roots, the dot action and the N_i neighbourhoods."""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence

import numpy as np

from limitroots.config import get_settings
from limitroots.core.errors import (
    AffinePair,
    BadArguments,
    EmptySelection,
    IdenticalPoints,
    LeavesChartD,
    NoHyperbolicPairs,
    NotIsotropic,
)
from limitroots.core.pencil import line_parameters, quadratic_roots
from limitroots.core.spatial import greedy_cluster
from limitroots.models.datum import CoxeterDatum
from limitroots.models.dihedral import DihedralPair
from limitroots.models.enums import ProvenanceKind, Side
from limitroots.models.limits import (
    GeometricActionReport,
    LimitCloud,
    NeighborhoodProbe,
    Provenance,
)
from limitroots.models.root import NormalizedPoint, Root, RootTable
from limitroots.schemas.limits import (
    ImaginaryConeReport,
    NeighborhoodReport,
    ProbeRecord,
)
from limitroots.services.datum_service import DatumService
from limitroots.services.dihedral_service import DihedralService
from limitroots.services.dominance_service import DominanceService
from limitroots.services.rootgen_service import ZERO_SUM_TOL, RootgenService

logger = logging.getLogger(__name__)

FIXED_POINT_TOL = 1e-10
CERTIFY_ISOTROPY_TOL = 1e-6


def _vec(x: Root | NormalizedPoint | np.ndarray | Sequence[float]) -> np.ndarray:
    if isinstance(x, (Root, NormalizedPoint)):
        return x.vector
    return np.asarray(x, dtype=float)


def _distance(u: np.ndarray, v: np.ndarray) -> float:
    return float(np.max(np.abs(u - v)))


def _point(v: np.ndarray) -> NormalizedPoint:
    return NormalizedPoint(coords=tuple(float(c) for c in v))


class LimitsService:
    """Service for limit roots and the neighbourhood system at a_inf."""

    @staticmethod
    def estimate_limit_cloud(
        datum: CoxeterDatum, table: RootTable, min_depth: int, cluster_tol: float
    ) -> LimitCloud:
        """
        Normalized roots of depth >= min_depth, greedily clustered.

        The canonically first root of each cluster is kept as its center.

        Raises:
            EmptySelection: no root of depth >= min_depth
        """
        if min_depth > table.max_depth:
            raise BadArguments(f"min_depth {min_depth} exceeds table depth {table.max_depth}")
        if cluster_tol <= 0:
            raise BadArguments("cluster_tol must be positive")
        selected = [r for r in table.roots if r.depth >= min_depth]
        if not selected:
            raise EmptySelection(f"no roots of depth >= {min_depth}")

        normalized = [r.normalized for r in selected]
        kept = greedy_cluster([p.coords for p in normalized], cluster_tol)
        points = [normalized[k] for k in kept]
        residuals = [abs(RootgenService.isotropy(datum, p.vector)) for p in points]
        provenance = [
            Provenance(kind=ProvenanceKind.deep_root, depth=selected[k].depth) for k in kept
        ]
        logger.info(
            f"Limit cloud: {len(points)} clusters from {len(selected)} roots "
            f"(min_depth={min_depth}, tol={cluster_tol})"
        )
        return LimitCloud(
            points=tuple(points),
            residuals=tuple(residuals),
            provenance=tuple(provenance),
            cluster_tol=cluster_tol,
            min_depth=min_depth,
        )

    @staticmethod
    def line_isotropic_intersections(
        datum: CoxeterDatum, p: NormalizedPoint | np.ndarray, q: NormalizedPoint | np.ndarray
    ) -> list[NormalizedPoint]:
        """
        Points of the line through p and q on the normalized isotropic cone.

        For normalized roots the count is 0, 1 or 2 as |B(x, y)| is below,
        at or above 1.

        Raises:
            IdenticalPoints: p and q are the same vector
        """
        pv = DatumService.check_vector(datum, _vec(p))
        qv = DatumService.check_vector(datum, _vec(q))
        if np.array_equal(pv, qv):
            raise IdenticalPoints("the line needs two distinct points")
        tol = get_settings().ISOTROPY_TOL
        found: list[NormalizedPoint] = []
        for t in line_parameters(datum.matrix, pv, qv, tangent_tol=tol):
            v = pv + t * (qv - pv)
            total = float(v.sum())
            if abs(total) <= ZERO_SUM_TOL:
                continue
            found.append(_point(v / total))
        return found

    @staticmethod
    def dot_action(
        datum: CoxeterDatum, word: Sequence[int], p: NormalizedPoint | np.ndarray
    ) -> NormalizedPoint:
        """
        w . p = normalize(w p), letters applied right to left.

        Raises:
            LeavesChartD: an intermediate image has zero coordinate sum
        """
        v = DatumService.check_vector(datum, _vec(p))
        for s in reversed(word):
            v = DatumService.reflect(datum, s, v)
            total = float(v.sum())
            if abs(total) <= ZERO_SUM_TOL:
                raise LeavesChartD(f"image under r_{s} lies on the zero-sum hyperplane")
            v = v / total
        return _point(v)

    @staticmethod
    def reflect_point(
        datum: CoxeterDatum, alpha: Root | np.ndarray, x: NormalizedPoint | np.ndarray
    ) -> NormalizedPoint:
        """r_alpha . x for an arbitrary root alpha."""
        image = DatumService.reflect_in_root(datum, _vec(alpha), _vec(x))
        total = float(image.sum())
        if abs(total) <= ZERO_SUM_TOL:
            raise LeavesChartD("r_alpha x lies on the zero-sum hyperplane")
        return _point(image / total)

    @staticmethod
    def verify_geometric_action(
        datum: CoxeterDatum, alpha: Root | np.ndarray, x: NormalizedPoint | np.ndarray
    ) -> GeometricActionReport:
        """
        Check r_alpha . x against the isotropic points of span(alpha, x).

        B(alpha, x) = 0 makes x a fixed point; otherwise the pencil
        x + t alpha meets the isotropic cone exactly in {x, r_alpha . x}.
        x is taken on the cone, so the pencil quadratic is
        t^2 + 2 B(alpha, x) t with roots 0 and -2 B(alpha, x).

        Raises:
            NotIsotropic: |q(x)| > ISOTROPY_TOL
        """
        xv = DatumService.check_vector(datum, _vec(x))
        alpha_v = DatumService.check_vector(datum, _vec(alpha))
        residual_q = RootgenService.isotropy(datum, xv)
        if abs(residual_q) > get_settings().ISOTROPY_TOL:
            raise NotIsotropic(f"q(x) = {residual_q} is not zero")

        image = LimitsService.reflect_point(datum, alpha_v, xv)
        pairing = float(xv @ datum.matrix @ alpha_v)
        if abs(pairing) <= FIXED_POINT_TOL:
            return GeometricActionReport(
                fixed_point=True,
                image=image,
                intersections=(),
                residual=_distance(image.vector, xv),
            )

        intersections: list[NormalizedPoint] = []
        for t in quadratic_roots(1.0, pairing, 0.0):
            v = xv + t * alpha_v
            total = float(v.sum())
            if abs(total) > ZERO_SUM_TOL:
                intersections.append(_point(v / total))
        expected = [xv, image.vector]
        found = [p.vector for p in intersections]
        if not found:
            residual = math.inf
        else:
            residual = max(
                max(min(_distance(e, f) for f in found) for e in expected),
                max(min(_distance(f, e) for e in expected) for f in found),
            )
        return GeometricActionReport(
            fixed_point=False,
            image=image,
            intersections=tuple(intersections),
            residual=residual,
        )

    @staticmethod
    def make_probe(pair: DihedralPair, i: int) -> NeighborhoodProbe:
        """Probe for N_i around a_inf, carrying a_i = (r_a r_b)^i a."""
        a_i = DihedralService.sequence_root(pair, i, Side.A)
        return NeighborhoodProbe(pair=pair, index=i, a_i=tuple(a_i.tolist()))

    @staticmethod
    def neighborhood_margin(
        datum: CoxeterDatum, pair: DihedralPair, i: int, eta: NormalizedPoint | np.ndarray
    ) -> float:
        """
        B(a_i, eta) without cancellation.

        With g = e^t B(a, eta) + B(b, eta) and h = e^-t B(a, eta) + B(b, eta),
        B(a_i, eta) = (e^(2it) g - e^(-2it) h) / (2 sinh t). g vanishes at
        eta = a_inf and is snapped to zero when it is rounding noise.
        """
        if not pair.is_hyperbolic:
            raise AffinePair("neighbourhood margins need a hyperbolic pair")
        ev = DatumService.check_vector(datum, _vec(eta))
        pa = DatumService.bilinear(datum, pair.a_vector, ev)
        pb = DatumService.bilinear(datum, pair.b_vector, ev)
        theta = float(pair.theta)
        up, down = math.exp(theta), math.exp(-theta)
        g = up * pa + pb
        h = down * pa + pb
        if abs(g) <= 1e-12 * (up * abs(pa) + abs(pb)):
            g = 0.0
        return (math.exp(2 * i * theta) * g - math.exp(-2 * i * theta) * h) / (
            2.0 * pair.sinh_theta
        )

    @staticmethod
    def probe_at(
        datum: CoxeterDatum, probe: NeighborhoodProbe, eta: NormalizedPoint | np.ndarray
    ) -> NeighborhoodProbe:
        """The probe with its certificate margin B(a_i, eta) filled in.

        Raises:
            NotIsotropic: |q(eta)| > 1e-6
        """
        ev = DatumService.check_vector(datum, _vec(eta))
        residual = RootgenService.isotropy(datum, ev)
        if abs(residual) > CERTIFY_ISOTROPY_TOL:
            raise NotIsotropic(f"q(eta) = {residual} is not zero")
        margin = LimitsService.neighborhood_margin(datum, probe.pair, probe.index, ev)
        return probe.model_copy(update={"certificate_margin": margin})

    @staticmethod
    def certify_neighborhood(
        datum: CoxeterDatum, probe: NeighborhoodProbe, eta: NormalizedPoint | np.ndarray
    ) -> bool:
        """B(a_i, eta) > 0 certifies eta in N_i; ``False`` is only evidence against."""
        probed = LimitsService.probe_at(datum, probe, eta)
        return bool(probed.certificate_margin > 0.0)

    @staticmethod
    def neighborhood_membership(
        datum: CoxeterDatum,
        pair: DihedralPair,
        i: int,
        table: RootTable,
        eta: NormalizedPoint | np.ndarray,
        eps: float,
    ) -> bool:
        """
        Some root of the dominance cone A_i normalizes to within ``eps`` of eta.

        Only as good as the table depth and ``eps``.

        Raises:
            BaseNotInTable: a_i is deeper than the table
        """
        a_i = DihedralService.sequence_root(pair, i, Side.A)
        cone = DominanceService.dominance_cone(datum, a_i, table)
        ev = _vec(eta)
        return any(_distance(root.normalized.vector, ev) <= eps for root in cone)

    @staticmethod
    def shrink_witness(
        datum: CoxeterDatum, pair: DihedralPair, eta: NormalizedPoint | np.ndarray, i_max: int
    ) -> int | None:
        """Smallest i <= i_max with B(a_i, eta) <= 0, i.e. eta outside N_i."""
        for i in range(i_max + 1):
            if LimitsService.neighborhood_margin(datum, pair, i, eta) <= 0.0:
                return i
        return None

    @staticmethod
    def fundamental_cone_contains(datum: CoxeterDatum, v: np.ndarray) -> bool:
        """v in K = {v >= 0, v != 0, B(v, a_s) <= 0 for every s}."""
        v = DatumService.check_vector(datum, _vec(v))
        if np.any(v < -1e-12) or np.all(v <= 1e-12):
            return False
        return bool(np.all(datum.matrix @ v <= 1e-12))

    @staticmethod
    def hyperbolic_pairs(
        datum: CoxeterDatum, table: RootTable, budget: int
    ) -> list[tuple[int, int]]:
        """Index pairs (i < j) with B(x_i, x_j) < -1, canonical order, at most ``budget``."""
        if not len(table):
            return []
        tol = get_settings().AFFINE_TOL
        coords = table.coords
        pairings = coords @ datum.matrix @ coords.T
        hits = np.argwhere(np.triu(pairings < -1.0 - tol, k=1))
        return [(int(i), int(j)) for i, j in hits[:budget]]

    @staticmethod
    def sample_e2(
        datum: CoxeterDatum, table: RootTable, pair_budget: int, word_budget: int
    ) -> LimitCloud:
        """
        Limit points of hyperbolic dihedral subgroups and their W-orbits.

        Raises:
            NoHyperbolicPairs: the table holds no pair with B < -1
        """
        if pair_budget < 1 or word_budget < 0:
            raise BadArguments("pair_budget must be >= 1 and word_budget >= 0")
        settings = get_settings()
        pairs = LimitsService.hyperbolic_pairs(datum, table, pair_budget)
        if not pairs:
            raise NoHyperbolicPairs("the table contains no pair with B(x, y) < -1")

        words = RootgenService.words_without_repeats(datum.rank, word_budget)
        candidates: list[NormalizedPoint] = []
        origins: list[Provenance] = []
        skipped = 0
        for i, j in pairs:
            pair = DihedralService.make_dihedral_pair(datum, table.roots[i], table.roots[j])
            seeds = (pair.a_inf, pair.b_inf)
            for seed in seeds:
                candidates.append(seed)
                origins.append(Provenance(kind=ProvenanceKind.dihedral_pair, pair=(i, j)))
            for seed in seeds:
                for word in words:
                    try:
                        image = LimitsService.dot_action(datum, word, seed)
                    except LeavesChartD:
                        skipped += 1
                        continue
                    candidates.append(image)
                    origins.append(
                        Provenance(kind=ProvenanceKind.orbit, pair=(i, j), word=word)
                    )

        residuals = [abs(RootgenService.isotropy(datum, p.vector)) for p in candidates]
        admissible = [k for k, r in enumerate(residuals) if r <= settings.ISOTROPY_TOL]
        if len(admissible) < len(candidates):
            logger.warning(
                f"Dropped {len(candidates) - len(admissible)} E2 candidates off the isotropic cone"
            )
        kept = greedy_cluster(
            [candidates[k].coords for k in admissible], settings.E2_CLUSTER_TOL
        )
        chosen = [admissible[k] for k in kept]
        logger.info(
            f"E2 sample: {len(chosen)} points from {len(pairs)} pairs "
            f"(word_budget={word_budget}, {skipped} images left D)"
        )
        return LimitCloud(
            points=tuple(candidates[k] for k in chosen),
            residuals=tuple(residuals[k] for k in chosen),
            provenance=tuple(origins[k] for k in chosen),
            cluster_tol=settings.E2_CLUSTER_TOL,
        )

    @staticmethod
    def cross_validate(deep: LimitCloud, e2: LimitCloud) -> float:
        """Largest distance from a deep-root cluster center to its nearest E2 point."""
        if not len(deep):
            return 0.0
        if not len(e2):
            return math.inf
        a, b = deep.matrix, e2.matrix
        gaps = np.max(np.abs(a[:, None, :] - b[None, :, :]), axis=2)
        return float(np.max(np.min(gaps, axis=1)))

    @staticmethod
    def imaginary_cone_spot_check(
        datum: CoxeterDatum,
        cloud: LimitCloud,
        samples: int = 200,
        word_len: int = 3,
        seed: int = 0,
    ) -> ImaginaryConeReport:
        """
        max B(eta, z-hat) over cloud points eta and sampled points z of W K.

        Points of K come from the weight cone -G^-1 u (u >= 0) and from the
        simplex, filtered by :meth:`fundamental_cone_contains`; random words of
        length <= ``word_len`` move them around the imaginary cone.
        """
        rng = np.random.default_rng(seed)
        n = datum.rank
        weights = -np.linalg.pinv(datum.matrix)
        draws = rng.dirichlet(np.ones(n), size=samples)
        candidates = np.vstack([draws @ weights.T, rng.dirichlet(np.ones(n), size=samples)])
        kappa = [v for v in candidates if LimitsService.fundamental_cone_contains(datum, v)]

        orbit: list[np.ndarray] = []
        for v in kappa:
            length = int(rng.integers(0, word_len + 1))
            word = [int(s) for s in rng.integers(1, n + 1, size=length)]
            image = RootgenService.apply_word(datum, word, v)
            total = float(image.sum())
            if abs(total) > ZERO_SUM_TOL:
                orbit.append(image / total)

        max_pairing = -math.inf
        if len(cloud) and orbit:
            pairings = cloud.matrix @ datum.matrix @ np.array(orbit).T
            max_pairing = float(np.max(pairings))
        logger.info(
            f"Imaginary cone spot check: {len(kappa)} points of K, "
            f"{len(orbit)} orbit points, max B = {max_pairing}"
        )
        return ImaginaryConeReport(
            kappa_points=len(kappa), orbit_points=len(orbit), max_pairing=max_pairing
        )

    @staticmethod
    def neighborhood_report(
        datum: CoxeterDatum,
        pair: DihedralPair,
        i: int,
        etas: Sequence[NormalizedPoint],
        i_max: int = 50,
        table: RootTable | None = None,
        eps: float | None = None,
    ) -> NeighborhoodReport:
        """Certificates, shrink witnesses and (with a table) membership for each eta."""
        probe = LimitsService.make_probe(pair, i)
        records: list[ProbeRecord] = []
        for eta in etas:
            probed = LimitsService.probe_at(datum, probe, eta)
            member = None
            if table is not None and eps is not None:
                member = LimitsService.neighborhood_membership(datum, pair, i, table, eta, eps)
            records.append(
                ProbeRecord(
                    eta=list(eta.coords),
                    margin=probed.certificate_margin,
                    certified=probed.certificate_margin > 0.0,
                    shrink_witness=LimitsService.shrink_witness(datum, pair, eta, i_max),
                    member=member,
                )
            )
        return NeighborhoodReport(
            pair=[list(pair.a), list(pair.b)],
            i=i,
            a_i=list(probe.a_i),
            a_inf=list(pair.a_inf.coords),
            probes=records,
        )
