"""Render service - deterministic SVG pictures of normalized roots and limits."""

from __future__ import annotations

import logging
import math
from xml.sax.saxutils import escape

import numpy as np

from limitroots.config import get_settings
from limitroots.core.errors import BadArguments, NoHyperbolicPairs
from limitroots.models.datum import CoxeterDatum
from limitroots.models.enums import Layer, Projection
from limitroots.models.limits import LimitCloud
from limitroots.models.root import RootTable
from limitroots.schemas.render import RenderSpec
from limitroots.services.limits_service import LimitsService

logger = logging.getLogger(__name__)

SVG_HEADER = '<?xml version="1.0" encoding="UTF-8"?>\n'
SCALE = 0.45


def _xy(x: float, y: float) -> str:
    return f"{x:.6f},{y:.6f}"


def default_projection(rank: int) -> Projection:
    if rank == 2:
        return Projection.barycentric2
    if rank == 3:
        return Projection.barycentric3
    return Projection.polygon


def _layout(rank: int) -> np.ndarray:
    """Abstract 2 x n vertex positions of the simple roots."""
    if rank == 2:
        return np.array([[-1.0, 1.0], [0.0, 0.0]])
    angles = [math.pi / 2 + 2 * math.pi * k / rank for k in range(rank)]
    return np.array([[math.cos(t) for t in angles], [math.sin(t) for t in angles]])


class _Canvas:
    """Maps the abstract layout plane to pixels (y axis pointing down)."""

    def __init__(self, width: int, height: int) -> None:
        self.width = width
        self.height = height
        self.scale = SCALE * min(width, height)

    def pixel(self, x: float, y: float) -> tuple[float, float]:
        return self.width / 2 + self.scale * x, self.height / 2 - self.scale * y


class RenderService:
    """Service producing the SVG picture."""

    @staticmethod
    def resolve_projection(datum: CoxeterDatum, spec: RenderSpec) -> Projection:
        """The projection for the datum rank; an explicit mismatch is an error."""
        if datum.rank < 2:
            raise BadArguments("rendering needs rank >= 2")
        expected = default_projection(datum.rank)
        if spec.projection is not None and spec.projection != expected:
            raise BadArguments(
                f"projection {spec.projection} does not fit rank {datum.rank} (use {expected})"
            )
        return expected

    @staticmethod
    def conic_polylines(datum: CoxeterDatum, segments: int) -> list[list[tuple[float, float]]]:
        """
        The isotropic conic in the layout plane, as ray-cast polylines.

        Points are c0 + x u1 + y u2 with M u_k = e_k inside V0, so the
        layout image of a point is M c0 + (x, y). Rays leave the center of
        the plane conic; a ray without a forward hit splits the polyline.
        """
        n = datum.rank
        layout = _layout(n)
        constraints = np.vstack([layout, np.ones((1, n))])
        lift = np.linalg.pinv(constraints)
        u1, u2 = lift[:, 0], lift[:, 1]
        c0 = np.full(n, 1.0 / n)
        gram = datum.matrix

        h = np.array([[u1 @ gram @ u1, u1 @ gram @ u2], [u2 @ gram @ u1, u2 @ gram @ u2]])
        g = np.array([c0 @ gram @ u1, c0 @ gram @ u2])
        f = float(c0 @ gram @ c0)
        if abs(np.linalg.det(h)) > 1e-12:
            center = -np.linalg.solve(h, g)
        else:
            center = np.zeros(2)
        base = layout @ c0

        def value(z: np.ndarray) -> float:
            return float(z @ h @ z + 2.0 * g @ z + f)

        polylines: list[list[tuple[float, float]]] = []
        current: list[tuple[float, float]] = []
        for k in range(segments + 1):
            phi = 2.0 * math.pi * k / segments
            d = np.array([math.cos(phi), math.sin(phi)])
            a = float(d @ h @ d)
            b = 2.0 * float(d @ (h @ center + g))
            c = value(center)
            hits: list[float] = []
            if abs(a) > 1e-15:
                disc = b * b - 4.0 * a * c
                if disc >= 0.0:
                    root = math.sqrt(disc)
                    hits = [t for t in ((-b - root) / (2 * a), (-b + root) / (2 * a)) if t > 0]
            elif b != 0.0 and -c / b > 0:
                hits = [-c / b]
            if not hits:
                if len(current) > 1:
                    polylines.append(current)
                current = []
                continue
            z = center + min(hits) * d
            point = base + z
            current.append((float(point[0]), float(point[1])))
        if len(current) > 1:
            polylines.append(current)
        return polylines

    @staticmethod
    def render_svg(
        datum: CoxeterDatum,
        table: RootTable,
        spec: RenderSpec,
        limits: LimitCloud | None = None,
    ) -> str:
        """
        SVG document: one group per layer, elements sorted, 6-decimal coordinates.

        With the ``limits`` layer and no ``limits`` cloud given, the E2
        sample of the table is drawn (nothing for finite groups).
        """
        RenderService.resolve_projection(datum, spec)
        settings = get_settings()
        n = datum.rank
        layout = _layout(n)
        canvas = _Canvas(spec.width, spec.height)

        def to_pixel(p: np.ndarray) -> tuple[float, float]:
            x, y = layout @ p
            return canvas.pixel(float(x), float(y))

        groups: list[tuple[str, list[str]]] = []
        layers = set(spec.layers)

        if Layer.roots in layers:
            elements = []
            max_depth = max(table.max_depth, 1)
            for root in table.roots:
                X, Y = to_pixel(root.normalized.vector)
                shade = int(round(200 * (1 - root.depth / max_depth)))
                radius = 4.0 if root.depth == 0 else 2.0
                elements.append(
                    f'<circle cx="{X:.6f}" cy="{Y:.6f}" r="{radius:.1f}" '
                    f'fill="rgb({shade},{shade},{shade})"/>'
                )
            groups.append(("roots", elements))

        if Layer.conic in layers:
            elements = []
            if n == 2:
                for point in LimitsService.line_isotropic_intersections(
                    datum, np.array([1.0, 0.0]), np.array([0.0, 1.0])
                ):
                    X, Y = to_pixel(point.vector)
                    elements.append(
                        f'<circle cx="{X:.6f}" cy="{Y:.6f}" r="3.0" fill="none" stroke="#1f77b4"/>'
                    )
            else:
                for line in RenderService.conic_polylines(datum, settings.CONIC_SEGMENTS):
                    points = " ".join(_xy(*canvas.pixel(x, y)) for x, y in line)
                    elements.append(
                        f'<polyline points="{points}" fill="none" stroke="#1f77b4" '
                        f'stroke-width="1.0"/>'
                    )
            groups.append(("conic", elements))

        if Layer.limits in layers:
            if limits is None:
                try:
                    limits = LimitsService.sample_e2(datum, table, pair_budget=200, word_budget=2)
                except NoHyperbolicPairs:
                    logger.warning("No hyperbolic pairs in the table; limits layer left empty")
            elements = []
            for point in limits.points if limits is not None else ():
                X, Y = to_pixel(point.vector)
                elements.append(f'<circle cx="{X:.6f}" cy="{Y:.6f}" r="1.5" fill="#d62728"/>')
            groups.append(("limits", elements))

        if Layer.labels in layers:
            elements = []
            for k, label in enumerate(datum.labels):
                X, Y = to_pixel(np.eye(n)[k])
                elements.append(
                    f'<text x="{X:.6f}" y="{Y - 8:.6f}" font-family="sans-serif" '
                    f'font-size="14" text-anchor="middle">{escape(label)}</text>'
                )
            groups.append(("labels", elements))

        parts = [
            SVG_HEADER,
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{spec.width}" '
            f'height="{spec.height}" viewBox="0 0 {spec.width} {spec.height}">\n',
            f'<rect x="0" y="0" width="{spec.width}" height="{spec.height}" fill="white"/>\n',
        ]
        for name, elements in groups:
            parts.append(f'<g class="{name}">\n')
            parts.extend(f"{element}\n" for element in sorted(elements))
            parts.append("</g>\n")
        parts.append("</svg>\n")
        logger.info(
            f"Rendered {sum(len(e) for _, e in groups)} elements in layers "
            f"{[name for name, _ in groups]}"
        )
        return "".join(parts)
