"""Isotropic points on lines and pencils of a quadratic form."""

from __future__ import annotations

import math

import numpy as np


def quadratic_roots(a: float, half_b: float, c: float, tangent_tol: float = 0.0) -> list[float]:
    """Real roots of a t^2 + 2 half_b t + c, ascending.

    Uses the cancellation-free pairing of k / a with c / k, so a tiny ``a``
    yields one huge root rather than a lost one. A discriminant within
    ``tangent_tol`` of ``half_b^2 + |a c|`` counts as a double root.
    """
    if a == 0.0:
        return [] if half_b == 0.0 else [-c / (2.0 * half_b)]
    scale = half_b * half_b + abs(a * c)
    disc = half_b * half_b - a * c
    if abs(disc) <= tangent_tol * scale:
        return [-half_b / a]
    if disc < 0.0:
        return []
    k = -(half_b + math.copysign(math.sqrt(disc), half_b))
    if k == 0.0:
        return [0.0]
    return sorted(t for t in {k / a, c / k} if math.isfinite(t))


def line_parameters(
    gram: np.ndarray, p: np.ndarray, q: np.ndarray, tangent_tol: float = 0.0
) -> list[float]:
    """Real t with q(p + t (q - p)) = 0, ascending.

    The pencil is spanned by p and the direction d = q - p, and B(d, d) is
    paired from d itself, so nearby points keep their relative precision.
    When both endpoints have positive norm the tangent test reads
    |B(p, q)| / sqrt(q(p) q(q)) against 1 within ``tangent_tol``.
    """
    d = q - p
    a = float(d @ gram @ d)
    half_b = float(p @ gram @ d)
    c = float(p @ gram @ p)
    qq = float(q @ gram @ q)
    if c > 0.0 and qq > 0.0:
        # h^2 - a c = B(p, q)^2 - q(p) q(q)
        excess = (half_b * half_b - a * c) / (c * qq)
        gap = excess / (math.sqrt(max(1.0 + excess, 0.0)) + 1.0)
        if abs(gap) <= tangent_tol:
            return [] if a == 0.0 else [-half_b / a]
        if gap < 0.0:
            return []
        return quadratic_roots(a, half_b, c)
    return quadratic_roots(a, half_b, c, tangent_tol)
