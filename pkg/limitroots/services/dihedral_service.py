"""Dihedral service - closed-form asymptotics of infinite dihedral subgroups."""

from __future__ import annotations

import logging
import math

import numpy as np

from limitroots.config import get_settings
from limitroots.core.errors import (
    AffinePair,
    BadArguments,
    DegenerateSeed,
    NoConvergence,
    NotInfiniteDihedral,
)
from limitroots.models.datum import CoxeterDatum
from limitroots.models.dihedral import DihedralPair
from limitroots.models.enums import DihedralKind, Side
from limitroots.models.root import NormalizedPoint, Root, RootTable
from limitroots.schemas.dihedral import ConvergenceRow, DihedralReport, InterlaceReport
from limitroots.services.datum_service import DatumService
from limitroots.services.rootgen_service import RootgenService

logger = logging.getLogger(__name__)


def _vec(x: Root | NormalizedPoint | np.ndarray) -> np.ndarray:
    if isinstance(x, (Root, NormalizedPoint)):
        return x.vector
    return np.asarray(x, dtype=float)


def _c_sequence(two_cosh: float, count: int) -> np.ndarray:
    """c_0 .. c_{count-1} from c_{i+1} = 2 cosh(theta) c_i - c_{i-1}."""
    c = np.zeros(max(count, 2))
    c[1] = 1.0
    for i in range(1, count - 1):
        c[i + 1] = two_cosh * c[i] - c[i - 1]
    return c[:count]


def _unit(datum: CoxeterDatum, v: np.ndarray) -> np.ndarray:
    """v rescaled to B(v, v) = 1; roots pass through untouched."""
    q = DatumService.bilinear(datum, v, v)
    if q <= 0.0:
        raise BadArguments(f"B(v, v) = {q} is not positive: {v.tolist()} is not a root direction")
    return v if abs(q - 1.0) <= 1e-9 else v / math.sqrt(q)


def _require_hyperbolic(pair: DihedralPair) -> None:
    if not pair.is_hyperbolic:
        raise AffinePair("operation needs a hyperbolic pair, B(a, b) < -1")


class DihedralService:
    """Service for non-affine infinite dihedral reflection subgroups W_{a,b}."""

    @staticmethod
    def make_dihedral_pair(
        datum: CoxeterDatum, a: Root | np.ndarray, b: Root | np.ndarray
    ) -> DihedralPair:
        """
        Build W_{a,b} with its limit points.

        Hyperbolic pairs use e = cosh(theta) + sinh(theta):
        a_inf = (e a + b) / (e|a| + |b|) and b_inf = (a / e + b) / (|a| / e + |b|).
        Affine pairs have the single limit normalize(a + b). Positive multiples
        of roots are rescaled to B(a, a) = B(b, b) = 1 first.

        Raises:
            NotInfiniteDihedral: B(a, b) > -1 + AFFINE_TOL
        """
        tol = get_settings().AFFINE_TOL
        av = DatumService.check_vector(datum, _vec(a))
        bv = DatumService.check_vector(datum, _vec(b))
        if not (RootgenService.is_positive(av) and RootgenService.is_positive(bv)):
            raise BadArguments("dihedral pairs are built from positive roots")
        av, bv = _unit(datum, av), _unit(datum, bv)
        pairing = DatumService.bilinear(datum, av, bv)
        if pairing > -1.0 + tol:
            raise NotInfiniteDihedral(f"B(a, b) = {pairing} > -1: W_(a,b) is finite")

        if abs(pairing + 1.0) <= tol:
            limit = RootgenService.normalize(av + bv)
            logger.debug(f"Affine pair, single limit {limit.coords}")
            return DihedralPair(
                a=tuple(av.tolist()),
                b=tuple(bv.tolist()),
                pairing=pairing,
                kind=DihedralKind.affine,
                theta=None,
                a_inf=limit,
                b_inf=limit,
            )

        x = -pairing
        growth = x + math.sqrt(x * x - 1.0)
        theta = math.log(growth)
        pair = DihedralPair(
            a=tuple(av.tolist()),
            b=tuple(bv.tolist()),
            pairing=pairing,
            kind=DihedralKind.hyperbolic,
            theta=theta,
            a_inf=RootgenService.normalize(growth * av + bv),
            b_inf=RootgenService.normalize(av / growth + bv),
        )
        logger.debug(f"Hyperbolic pair, theta = {theta}")
        return pair

    @staticmethod
    def chebyshev_c(theta: float, i: int) -> float:
        """c_i = sinh(i theta) / sinh(theta), by the linear recurrence."""
        if i < 0:
            raise BadArguments(f"index must be >= 0, got {i}")
        return float(_c_sequence(2.0 * math.cosh(theta), i + 1)[i])

    @staticmethod
    def chebyshev_sequence(theta: float, count: int) -> np.ndarray:
        """c_0 .. c_{count-1}."""
        return _c_sequence(2.0 * math.cosh(theta), count)

    @staticmethod
    def sequence_root(pair: DihedralPair, i: int, side: Side = Side.A) -> np.ndarray:
        """
        a_i = (r_a r_b)^i a = c_{2i+1} a + c_{2i} b (side A), or
        b_i = (r_b r_a)^i b = c_{2i} a + c_{2i+1} b (side B).
        """
        _require_hyperbolic(pair)
        if i < 0:
            raise BadArguments(f"index must be >= 0, got {i}")
        c = _c_sequence(-2.0 * pair.pairing, 2 * i + 2)
        if side == Side.A:
            return c[2 * i + 1] * pair.a_vector + c[2 * i] * pair.b_vector
        return c[2 * i] * pair.a_vector + c[2 * i + 1] * pair.b_vector

    @staticmethod
    def rotation_matrix(pair: DihedralPair) -> np.ndarray:
        """Matrix A of r_a r_b on span(a, b), columns are the images of a and b."""
        _require_hyperbolic(pair)
        x = -pair.pairing
        return np.array([[4.0 * x * x - 1.0, -2.0 * x], [2.0 * x, -1.0]])

    @staticmethod
    def rotation_matrix_power(pair: DihedralPair, i: int) -> np.ndarray:
        """A^i = [[c_{2i+1}, -c_{2i}], [c_{2i}, -c_{2i-1}]]."""
        _require_hyperbolic(pair)
        if i < 1:
            raise BadArguments(f"power must be >= 1, got {i}")
        c = _c_sequence(-2.0 * pair.pairing, 2 * i + 2)
        return np.array([[c[2 * i + 1], -c[2 * i]], [c[2 * i], -c[2 * i - 1]]])

    @staticmethod
    def periodic_limit(
        datum: CoxeterDatum, pair: DihedralPair, c: Root | NormalizedPoint | np.ndarray
    ) -> NormalizedPoint:
        """
        lim normalize((r_a r_b)^i c).

        A seed fixed up to scale by r_a r_b (one of the eigenlines) is its own
        limit; every other seed converges to a_inf.

        Raises:
            DegenerateSeed: B(a, c) and B(b, c) both vanish
            NoConvergence: PERIODIC_MAX_ITERS reached
        """
        settings = get_settings()
        seed = DatumService.check_vector(datum, _vec(c))
        av, bv = pair.a_vector, pair.b_vector
        pa = DatumService.bilinear(datum, av, seed)
        pb = DatumService.bilinear(datum, bv, seed)
        if abs(pa) <= 1e-12 and abs(pb) <= 1e-12:
            raise DegenerateSeed("B(a, c) = B(b, c) = 0: r_a r_b fixes c")

        def step(v: np.ndarray) -> np.ndarray:
            return DatumService.reflect_in_root(
                datum, av, DatumService.reflect_in_root(datum, bv, v)
            )

        image = step(seed)
        along = float(image @ seed) / float(seed @ seed)
        residual = float(np.max(np.abs(image - along * seed)))
        if residual <= settings.COLLINEAR_TOL * max(float(np.max(np.abs(image))), 1e-300):
            logger.debug("Seed lies on an eigenline of r_a r_b")
            return RootgenService.normalize(seed)

        v = seed / float(np.max(np.abs(seed)))
        previous: np.ndarray | None = None
        for iteration in range(1, settings.PERIODIC_MAX_ITERS + 1):
            v = step(v)
            v = v / float(np.max(np.abs(v)))
            total = float(v.sum())
            if abs(total) <= 1e-14:
                previous = None
                continue
            current = v / total
            gap = math.inf if previous is None else float(np.max(np.abs(current - previous)))
            if gap < settings.PERIODIC_TOL:
                logger.debug(f"Periodic limit reached after {iteration} steps")
                return NormalizedPoint(coords=tuple(current.tolist()))
            previous = current
        raise NoConvergence(
            f"no convergence after {settings.PERIODIC_MAX_ITERS} applications of r_a r_b"
        )

    @staticmethod
    def limit_pairings(
        datum: CoxeterDatum, pair: DihedralPair
    ) -> tuple[float, float, float, float]:
        """(B(a_inf, a), B(a_inf, b), B(b_inf, a), B(b_inf, b)) from coordinates."""
        _require_hyperbolic(pair)
        av, bv = pair.a_vector, pair.b_vector
        ai, bi = pair.a_inf.vector, pair.b_inf.vector
        return (
            DatumService.bilinear(datum, ai, av),
            DatumService.bilinear(datum, ai, bv),
            DatumService.bilinear(datum, bi, av),
            DatumService.bilinear(datum, bi, bv),
        )

    @staticmethod
    def limit_pairings_closed_form(pair: DihedralPair) -> tuple[float, float, float, float]:
        """The same four values from theta, |a| and |b| alone."""
        _require_hyperbolic(pair)
        ch, sh = pair.cosh_theta, pair.sinh_theta
        up = (ch + sh) * pair.norm_a + pair.norm_b
        down = (ch - sh) * pair.norm_a + pair.norm_b
        return (sh / up, -sh * (ch + sh) / up, -sh / down, sh * (ch - sh) / down)

    @staticmethod
    def convergence_profile(pair: DihedralPair, steps: int) -> list[ConvergenceRow]:
        """
        Distances of x_n = c_{n+1} a + c_n b to a_inf, n = 0..steps.

        x_{2i} is a_i; consecutive distances contract by e^{-2 theta}.
        """
        _require_hyperbolic(pair)
        if steps < 0:
            raise BadArguments(f"steps must be >= 0, got {steps}")
        c = _c_sequence(-2.0 * pair.pairing, steps + 2)
        limit = pair.a_inf.vector
        rows: list[ConvergenceRow] = []
        previous: float | None = None
        for n in range(steps + 1):
            x = c[n + 1] * pair.a_vector + c[n] * pair.b_vector
            distance = float(np.max(np.abs(x / x.sum() - limit)))
            ratio = distance / previous if previous else None
            rows.append(ConvergenceRow(i=n, distance_to_a_inf=distance, ratio=ratio))
            previous = distance
        return rows

    @staticmethod
    def sequence_distances(pair: DihedralPair, iters: int) -> list[ConvergenceRow]:
        """Distances of normalize(a_i) to a_inf for i = 1..iters."""
        _require_hyperbolic(pair)
        limit = pair.a_inf.vector
        rows: list[ConvergenceRow] = []
        previous: float | None = None
        for i in range(1, iters + 1):
            x = DihedralService.sequence_root(pair, i, Side.A)
            distance = float(np.max(np.abs(x / x.sum() - limit)))
            ratio = distance / previous if previous else None
            rows.append(ConvergenceRow(i=i, distance_to_a_inf=distance, ratio=ratio))
            previous = distance
        return rows

    @staticmethod
    def maximal_dihedral_plane(
        datum: CoxeterDatum, a: Root | np.ndarray, b: Root | np.ndarray, table: RootTable
    ) -> list[Root]:
        """Table roots in span(a, b), by least-squares residual <= 1e-9 (relative)."""
        basis = np.column_stack(
            [DatumService.check_vector(datum, _vec(a)), DatumService.check_vector(datum, _vec(b))]
        )
        if np.linalg.matrix_rank(basis) < 2:
            raise BadArguments("a and b must be linearly independent")
        if not len(table):
            return []
        coords = table.coords
        coefficients, *_ = np.linalg.lstsq(basis, coords.T, rcond=None)
        residuals = np.max(np.abs(basis @ coefficients - coords.T), axis=0)
        scale = np.maximum(1.0, np.max(np.abs(coords), axis=1))
        keep = np.flatnonzero(residuals <= 1e-9 * scale)
        logger.debug(f"{keep.size} of {len(table)} roots lie in span(a, b)")
        return [table.roots[k] for k in keep]

    @staticmethod
    def interlaced_limit_check(
        datum: CoxeterDatum, pair: DihedralPair, y: Root | np.ndarray, i_max: int
    ) -> InterlaceReport:
        """
        k = min{i | (r_b r_a)^(i+1) y is negative}, searched up to ``i_max``.

        For a_k dom y dom a_j the index satisfies j <= k and
        y = (r_a r_b)^k c with c positive and r_b r_a c negative.
        """
        yv = DatumService.check_vector(datum, _vec(y))
        av, bv = pair.a_vector, pair.b_vector
        distance = float(np.max(np.abs(RootgenService.normalize(yv).vector - pair.a_inf.vector)))
        current = yv
        for i in range(i_max + 1):
            following = DatumService.reflect_in_root(
                datum, bv, DatumService.reflect_in_root(datum, av, current)
            )
            if not RootgenService.is_positive(following):
                return InterlaceReport(
                    k=i, seed=tuple(current.tolist()), distance_to_a_inf=distance
                )
            current = following
        return InterlaceReport(k=None, seed=None, distance_to_a_inf=distance)

    @staticmethod
    def dihedral_report(datum: CoxeterDatum, pair: DihedralPair, iters: int) -> DihedralReport:
        """Report with limit pairings and the a_i convergence table (hyperbolic pairs)."""
        hyperbolic = pair.is_hyperbolic
        report = DihedralReport(
            a=list(pair.a),
            b=list(pair.b),
            pairing=pair.pairing,
            kind=pair.kind,
            theta=pair.theta,
            a_inf=list(pair.a_inf.coords),
            b_inf=list(pair.b_inf.coords),
            pairings=list(DihedralService.limit_pairings(datum, pair)) if hyperbolic else None,
            convergence=DihedralService.sequence_distances(pair, iters) if hyperbolic else [],
        )
        logger.info(f"Dihedral report: kind={pair.kind}, theta={pair.theta}, iters={iters}")
        return report
