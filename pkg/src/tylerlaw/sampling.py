"""Sampling from generalized spherical populations.

A generalized spherical population is a random vector X = R * U where U is
uniform on the unit sphere of R^d and R is a scalar radius.  Unlike the
classical spherical case, R may take negative values and may depend on U;
the center is identically zero.

Radial laws provided here:

- ``ChiRadius(df)``:        R = sqrt(chi2_df).  With df = d the population
                            is standard normal N(0, I_d).
- ``ScaledFRootRadius(df, p)``: R = sqrt(df * F_{df,p}).  With df = d the
                            population is the d-dimensional t with p degrees
                            of freedom; p = 1 gives the multivariate Cauchy
                            (no finite mean).
- ``ConstantRadius(value)``: R = value exactly (value != 0).
- ``SignedChiRadius(df)``:  R = +/- sqrt(chi2_df) with an independent fair
                            sign, so both signs occur.

Coupling between R and U (``Coupling``):

- ``INDEPENDENT``: R is drawn independently of U.
- ``SIGN_U1``:     the drawn radius is multiplied by 1 + sign(u_1)/2, i.e.
                   3/2 when the first sphere coordinate is positive and 1/2
                   when it is negative.  This makes the radius a non-constant
                   function of U while keeping the multiplier nonzero.

RNG contract
------------
All draws go through an explicit ``numpy.random.Generator``.  Population
sampling seeds a fresh PCG64 generator (``numpy.random.default_rng``) from
``PopulationSpec.seed``, so identical specs produce bit-identical samples.
Parallel trials must use independently derived seeds; ``derive_seed`` mixes
a base seed with trial indices through SplitMix64, a fixed, documented
64-bit mixing function.

Chi-square draws use sums of squared standard normals for df <= 64 (exact
construction) and a gamma sampler above that switch point (speed).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

__all__ = [
    "ChiRadius",
    "ScaledFRootRadius",
    "ConstantRadius",
    "SignedChiRadius",
    "RadialLaw",
    "Coupling",
    "PopulationSpec",
    "DegenerateDrawError",
    "sample_unit_sphere",
    "sample_radius",
    "sample_population",
    "splitmix64",
    "derive_seed",
]

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15

# Above this df, chi-square draws switch from summed squared normals to a
# gamma sampler.
CHI_EXACT_DF_MAX = 64

# Norms below this are treated as a degenerate sphere draw and redrawn.
_MIN_SPHERE_NORM = 1e-300
_MAX_REDRAWS = 100


class DegenerateDrawError(RuntimeError):
    """Raised when the sphere sampler keeps producing near-zero vectors."""


def splitmix64(x: int) -> int:
    """One SplitMix64 output step for the 64-bit state ``x``."""
    x = (x + _GOLDEN) & _MASK64
    z = x
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def derive_seed(base_seed: int, *indices: int) -> int:
    """Derive an independent 64-bit stream seed from a base seed and indices.

    The base seed absorbs each index in turn through SplitMix64:
    ``state <- splitmix64(state ^ splitmix64(index))``.  The mixing is fixed
    so that trial seeds are reproducible across runs and independent of the
    order in which trials execute.
    """
    state = base_seed & _MASK64
    for idx in indices:
        state = splitmix64(state ^ splitmix64(idx & _MASK64))
    return state


@dataclass(frozen=True)
class ChiRadius:
    """R = sqrt(chi2_df); nonnegative."""

    df: int

    def __post_init__(self):
        if self.df < 1:
            raise ValueError(f"ChiRadius df must be a positive integer, got {self.df}")


@dataclass(frozen=True)
class ScaledFRootRadius:
    """R = sqrt(df * F_{df,p}) from independent chi-squares; nonnegative.

    With p = 1 the resulting population has no finite mean (Cauchy radial law).
    """

    df: int
    p: int

    def __post_init__(self):
        if self.df < 1:
            raise ValueError(f"ScaledFRootRadius df must be positive, got {self.df}")
        if self.p < 1:
            raise ValueError(f"ScaledFRootRadius p must be positive, got {self.p}")


@dataclass(frozen=True)
class ConstantRadius:
    """R = value exactly; value must be nonzero (may be negative)."""

    value: float

    def __post_init__(self):
        if self.value == 0:
            raise ValueError("ConstantRadius value must be nonzero")


@dataclass(frozen=True)
class SignedChiRadius:
    """R = +/- sqrt(chi2_df) with an independent fair sign."""

    df: int

    def __post_init__(self):
        if self.df < 1:
            raise ValueError(f"SignedChiRadius df must be positive, got {self.df}")


RadialLaw = ChiRadius | ScaledFRootRadius | ConstantRadius | SignedChiRadius


class Coupling(Enum):
    """How the radius depends on the sphere draw."""

    INDEPENDENT = "independent"
    SIGN_U1 = "sign-u1"


@dataclass(frozen=True)
class PopulationSpec:
    """A generalized spherical population; the center is identically zero.

    Parameters
    ----------
    dim : int
        Dimension d >= 1.
    radial : RadialLaw
        Law of the scalar radius R.
    coupling : Coupling
        Dependence of the radius on the sphere draw.
    seed : int
        64-bit seed for the PCG64 generator backing ``sample_population``.
    """

    dim: int
    radial: RadialLaw
    coupling: Coupling = Coupling.INDEPENDENT
    seed: int = 0

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError(f"dimension must be >= 1, got {self.dim}")
        if not isinstance(self.radial, (ChiRadius, ScaledFRootRadius, ConstantRadius, SignedChiRadius)):
            raise TypeError(f"unknown radial law: {self.radial!r}")
        if not isinstance(self.coupling, Coupling):
            raise TypeError(f"unknown coupling: {self.coupling!r}")


def sample_unit_sphere(dim: int, rng: np.random.Generator, size: int | None = None) -> np.ndarray:
    """Draw uniformly from the unit sphere S^{d-1} in R^dim.

    Normalized independent standard normals; the construction is exactly
    rotation invariant in distribution.  Draws whose raw norm falls below
    1e-300 are redrawn (at most 100 times, then ``DegenerateDrawError``).

    Parameters
    ----------
    dim : int
        Ambient dimension, >= 1.  dim = 1 yields +1 or -1.
    rng : numpy.random.Generator
        Source of randomness.
    size : int, optional
        If given, draw that many points and return them as columns.

    Returns
    -------
    numpy.ndarray
        Shape (dim,) if size is None, else (dim, size); unit columns.
    """
    if dim < 1:
        raise ValueError(f"dimension must be >= 1, got {dim}")
    m = 1 if size is None else int(size)
    if m < 1:
        raise ValueError(f"size must be >= 1, got {size}")
    z = rng.standard_normal((dim, m))
    norms = np.linalg.norm(z, axis=0)
    for _ in range(_MAX_REDRAWS):
        bad = norms < _MIN_SPHERE_NORM
        if not bad.any():
            break
        k = int(bad.sum())
        z[:, bad] = rng.standard_normal((dim, k))
        norms = np.linalg.norm(z, axis=0)
    else:
        raise DegenerateDrawError(
            "degenerate-draw: sphere sampler produced near-zero vectors "
            f"{_MAX_REDRAWS} times in a row"
        )
    u = z / norms
    return u[:, 0] if size is None else u


def _chi_square(rng: np.random.Generator, df: int, m: int) -> np.ndarray:
    """m draws of chi2_df; exact normal-sum construction up to df = 64."""
    if df <= CHI_EXACT_DF_MAX:
        z = rng.standard_normal((m, df))
        return np.einsum("ij,ij->i", z, z)
    return 2.0 * rng.standard_gamma(0.5 * df, size=m)


def sample_radius(
    law: RadialLaw,
    u: np.ndarray,
    coupling: Coupling,
    rng: np.random.Generator,
) -> float | np.ndarray:
    """Draw the scalar radius (or one per column of ``u``).

    The base radius is drawn from ``law``; the coupling multiplier, if any,
    is applied last.  ``u`` must have unit column norms.

    Returns a float for a single unit vector, else an array of shape (m,)
    matching the columns of ``u``.
    """
    u = np.asarray(u, dtype=float)
    scalar = u.ndim == 1
    m = 1 if scalar else u.shape[1]

    if isinstance(law, ChiRadius):
        r = np.sqrt(_chi_square(rng, law.df, m))
    elif isinstance(law, ScaledFRootRadius):
        num = _chi_square(rng, law.df, m) / law.df
        den = _chi_square(rng, law.p, m) / law.p
        r = np.sqrt(law.df * num / den)
    elif isinstance(law, ConstantRadius):
        r = np.full(m, float(law.value))
    elif isinstance(law, SignedChiRadius):
        r = np.sqrt(_chi_square(rng, law.df, m))
        r *= rng.integers(0, 2, size=m) * 2 - 1
    else:
        raise TypeError(f"unknown radial law: {law!r}")

    if coupling is Coupling.SIGN_U1:
        u1 = u[0] if scalar else u[0, :]
        r = r * (1.0 + 0.5 * np.sign(u1))
    elif coupling is not Coupling.INDEPENDENT:
        raise TypeError(f"unknown coupling: {coupling!r}")

    return float(r[0]) if scalar else r


def sample_population(spec: PopulationSpec, n: int) -> np.ndarray:
    """Draw an i.i.d. sample of size n; columns are the observations.

    Column j is R_j * U_j with independent draws across j.  The generator is
    PCG64 seeded from ``spec.seed``, so the output is bit-identical across
    calls with the same spec and n.

    Returns
    -------
    numpy.ndarray
        Data matrix of shape (spec.dim, n); every column is nonzero.
    """
    if n < 1:
        raise ValueError(f"sample size must be >= 1, got {n}")
    rng = np.random.default_rng(spec.seed)
    u = sample_unit_sphere(spec.dim, rng, size=n)
    r = sample_radius(spec.radial, u, spec.coupling, rng)
    return u * r
