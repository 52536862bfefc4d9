"""Closed-form reference laws: semicircle and Marchenko-Pastur.

Both laws expose ``pdf``, ``cdf`` and ``support``.  The Marchenko-Pastur law
with ratio y > 1 additionally carries a point mass of 1 - 1/y at zero, kept
as a separate field (never baked into the density); its ``cdf`` includes it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import quad

__all__ = ["Semicircle", "MarchenkoPastur", "ReferenceLaw", "semicircle_moment"]


def semicircle_moment(m: int) -> float:
    """m-th moment of the semicircle law: 0 for odd m, Catalan C_{m/2} for even."""
    if m < 0:
        raise ValueError(f"moment order must be >= 0, got {m}")
    if m % 2 == 1:
        return 0.0
    k = m // 2
    return float(math.comb(2 * k, k) // (k + 1))


@dataclass(frozen=True)
class Semicircle:
    """Semicircle law: density sqrt(4 - x^2) / (2 pi) on [-2, 2]."""

    def support(self) -> tuple[float, float]:
        return (-2.0, 2.0)

    def pdf(self, x):
        x = np.asarray(x, dtype=float)
        dens = np.sqrt(np.maximum(4.0 - x * x, 0.0)) / (2.0 * np.pi)
        return float(dens) if dens.ndim == 0 else dens

    def cdf(self, x):
        # closed form: 1/2 + x sqrt(4 - x^2)/(4 pi) + arcsin(x/2)/pi,
        # clamped to [-2, 2] where it hits exactly 0 and 1
        x = np.asarray(x, dtype=float)
        t = np.clip(x, -2.0, 2.0)
        c = 0.5 + t * np.sqrt(4.0 - t * t) / (4.0 * np.pi) + np.arcsin(t / 2.0) / np.pi
        return float(c) if c.ndim == 0 else c

    def moment(self, m: int) -> float:
        return semicircle_moment(m)


@dataclass(frozen=True)
class MarchenkoPastur:
    """Marchenko-Pastur law with ratio y > 0.

    Continuous density sqrt((a_plus - x)(x - a_minus)) / (2 pi x y) on
    [a_minus, a_plus] with a_pm = (1 +/- sqrt(y))^2, plus a point mass of
    (1 - 1/y)^+ at zero when y > 1.
    """

    y: float

    def __post_init__(self):
        if not self.y > 0:
            raise ValueError(f"MP ratio y must be > 0, got {self.y}")

    @property
    def a_minus(self) -> float:
        return (1.0 - math.sqrt(self.y)) ** 2

    @property
    def a_plus(self) -> float:
        return (1.0 + math.sqrt(self.y)) ** 2

    @property
    def point_mass_at_zero(self) -> float:
        return max(0.0, 1.0 - 1.0 / self.y)

    def support(self) -> tuple[float, float]:
        # support of the continuous part; the y > 1 point mass sits at 0
        return (self.a_minus, self.a_plus)

    def pdf(self, x):
        """Density of the continuous part; 0 outside [a_minus, a_plus].

        For y >= 1 the point x = 0 is the point-mass location (or, at y = 1,
        a non-removable singularity of the density) and raises ValueError.
        """
        x = np.asarray(x, dtype=float)
        if self.y >= 1 and np.any(x == 0.0):
            raise ValueError(
                "invalid-argument: MP density undefined at x = 0 for y >= 1 "
                "(point mass location); query point_mass_at_zero instead"
            )
        am, ap = self.a_minus, self.a_plus
        rad = np.maximum((ap - x) * (x - am), 0.0)
        inside = (x >= am) & (x <= ap) & (x != 0.0)
        with np.errstate(divide="ignore", invalid="ignore"):
            dens = np.where(inside, np.sqrt(rad) / (2.0 * np.pi * self.y * np.where(inside, x, 1.0)), 0.0)
        return float(dens) if dens.ndim == 0 else dens

    def _continuous_cdf(self, x: float) -> float:
        # mass of the continuous part on (-inf, x], by adaptive quadrature
        # after x = a_minus + (a_plus - a_minus) sin^2(theta), which removes
        # the square-root edges (and the 1/x pole at y = 1)
        am, ap = self.a_minus, self.a_plus
        total = 1.0 - self.point_mass_at_zero
        if x <= am:
            return 0.0
        if x >= ap:
            return total
        span = ap - am
        theta_max = math.asin(math.sqrt((x - am) / span))

        def integrand(theta):
            s = math.sin(theta)
            return span * span * math.sin(2.0 * theta) ** 2 / (
                4.0 * math.pi * self.y * (am + span * s * s)
            )

        val, _ = quad(integrand, 0.0, theta_max, epsabs=1e-10, epsrel=1e-12, limit=200)
        return min(max(val, 0.0), total)

    def cdf(self, x):
        """Full CDF: point mass at zero (when y > 1) plus the continuous part."""
        if np.ndim(x) == 0:
            x = float(x)
            pm = self.point_mass_at_zero if x >= 0 else 0.0
            return pm + self._continuous_cdf(x)
        return np.array([self.cdf(float(t)) for t in np.asarray(x, dtype=float)])


ReferenceLaw = Semicircle | MarchenkoPastur
