"""Class operators and transforms on normalized functions.

The central object is the blended operator

    alpha * f(z)/z + beta * z f'(z)/f(z) + (1 - alpha - beta) * (1 + z f''(z)/f'(z)),

an affine mix of the three classical quotients.  A parameter pair
``(alpha, beta)`` defines the membership class ``Re > (alpha + beta)/2``;
the derived constant ``mu = (2 - alpha - beta)/(6 - 5 alpha - 4 beta)``
is the flat part of the sharp Fekete-Szego bound ``max(mu, |1 - lambda|)``
over that class.

Also here: the Fekete-Szego functional itself, the half-plane-to-disk
transform that turns a ``Re > gamma`` condition into a Schwarz-function
condition, and the mutually inverse pair mapping a function to/from its
associated starlike function on the ``alpha = 0`` line.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .series import (
    ConstantTermError,
    NormalizedFunction,
    TaylorSeries,
    derivative,
    div,
    div_z,
    mul,
    pow_real,
    scale,
    times_z,
)

__all__ = [
    "ParameterError",
    "ClassParams",
    "FSParams",
    "f_over_z",
    "starlike_quotient",
    "convexity_quotient",
    "blended_operator",
    "fekete_szego",
    "schwarz_transform",
    "mocanu_transform",
    "mocanu_inverse",
]


class ParameterError(ValueError):
    """Class parameters violate a structural constraint."""


@dataclass(frozen=True)
class ClassParams:
    """The real pair (alpha, beta) of a membership class.

    ``alpha + beta < 2`` is required: at and beyond that line the class
    is empty.
    """

    alpha: float
    beta: float

    def __post_init__(self):
        if not (math.isfinite(self.alpha) and math.isfinite(self.beta)):
            raise ParameterError("alpha and beta must be finite")
        if self.alpha + self.beta >= 2.0:
            raise ParameterError(
                f"alpha+beta must be < 2 (class is empty otherwise); "
                f"got {self.alpha} + {self.beta} = {self.alpha + self.beta}")

    @property
    def threshold(self) -> float:
        """Half-plane threshold (alpha + beta)/2 of the class condition."""
        return 0.5 * (self.alpha + self.beta)

    @property
    def mu(self) -> float:
        """Sharp-bound constant (2-a-b)/(6-5a-4b); needs 5a+4b < 6."""
        denom = 6.0 - 5.0 * self.alpha - 4.0 * self.beta
        if denom <= 0.0:
            raise ParameterError(
                f"mu undefined: 5*alpha+4*beta must be < 6, got "
                f"{5 * self.alpha + 4 * self.beta}")
        return (2.0 - self.alpha - self.beta) / denom


@dataclass(frozen=True)
class FSParams:
    """Fekete-Szego weight lambda tied to its (mu, s) reparameterization.

    The invariant ``lam == 1 + s * mu`` holds bitwise; construct through
    :meth:`from_lambda` or :meth:`from_s`, which canonicalize.
    """

    lam: complex
    mu: float
    s: complex

    def __post_init__(self):
        if not self.mu > 0.0:
            raise ParameterError(f"mu must be positive, got {self.mu}")
        if self.lam != 1.0 + self.s * self.mu:
            raise ParameterError("lambda must equal 1 + s*mu exactly")

    @classmethod
    def from_lambda(cls, params: ClassParams, lam: complex) -> "FSParams":
        mu = params.mu
        s = (complex(lam) - 1.0) / mu
        return cls(1.0 + s * mu, mu, s)

    @classmethod
    def from_s(cls, params: ClassParams, s: complex) -> "FSParams":
        mu = params.mu
        return cls(1.0 + complex(s) * mu, mu, complex(s))

    @property
    def bound(self) -> float:
        """max(mu, |1 - lambda|), the sharp class bound at this lambda."""
        return max(self.mu, abs(1.0 - self.lam))


def f_over_z(f: NormalizedFunction) -> TaylorSeries:
    """f(z)/z, constant term exactly 1."""
    return div_z(f.series)


def starlike_quotient(f: NormalizedFunction) -> TaylorSeries:
    """z f'(z)/f(z), computed as f'/(f/z) to keep the pivot at 1."""
    return div(derivative(f.series), f_over_z(f))


def convexity_quotient(f: NormalizedFunction) -> TaylorSeries:
    """1 + z f''(z)/f'(z)."""
    fp = derivative(f.series)
    return div(times_z(derivative(fp)), fp) + 1.0


def blended_operator(f: NormalizedFunction, params: ClassParams) -> TaylorSeries:
    """Affine blend of f/z, zf'/f and 1 + zf''/f' with weights (a, b, 1-a-b).

    The constant term is pinned to exactly 1: each quotient starts at 1,
    so only float roundoff in the weights could perturb it.
    """
    if f.order < 4:
        raise ValueError(f"truncation order must be >= 4, got {f.order}")
    a, b = params.alpha, params.beta
    parts = []
    if a != 0.0:
        parts.append(scale(f_over_z(f), a))
    if b != 0.0:
        parts.append(scale(starlike_quotient(f), b))
    w = 1.0 - a - b
    if w != 0.0 or not parts:
        parts.append(scale(convexity_quotient(f), w))
    g = parts[0]
    for p in parts[1:]:
        g = g + p
    c = g.coeffs.copy()
    if abs(c[0] - 1.0) > 1e-10:
        raise ConstantTermError(f"blended operator lost its unit constant term: {c[0]!r}")
    c[0] = 1.0
    return TaylorSeries(c, g.order)


def fekete_szego(f: NormalizedFunction, lam: complex) -> complex:
    """The quadratic coefficient functional a3 - lambda * a2**2."""
    if f.order < 3:
        raise ValueError(f"truncation order must be >= 3, got {f.order}")
    return f.a3 - lam * f.a2 ** 2


def schwarz_transform(g: TaylorSeries, gamma: float) -> TaylorSeries:
    """Map a ``Re g > gamma`` candidate to its Schwarz-function witness.

    Returns ``(g - g(0)) / (g - 2 gamma + g(0))``, which vanishes at 0 and
    is a self-map of the disk exactly where the half-plane condition holds.
    Degenerate when ``g(0) = gamma``.
    """
    g0 = complex(g.coeffs[0])
    if abs(2.0 * (g0 - gamma)) < 1e-14:
        raise ParameterError(f"degenerate transform: g(0) = {g0} equals gamma = {gamma}")
    numer = g - g0
    denom = g + (g0 - 2.0 * gamma)
    return div(numer, denom)


def _check_mocanu_beta(beta: float) -> None:
    if beta == 1.0 or beta >= 2.0:
        raise ParameterError(
            f"beta must satisfy beta < 2 and beta != 1, got {beta}")


def mocanu_transform(f: NormalizedFunction, beta: float) -> TaylorSeries:
    """Associated starlike function z (f')^{(2-2b)/(2-b)} (f/z)^{2b/(2-b)}.

    For beta = 0 the exponents collapse and the result is z f'(z).
    """
    _check_mocanu_beta(beta)
    e1 = (2.0 - 2.0 * beta) / (2.0 - beta)
    e2 = (2.0 * beta) / (2.0 - beta)
    prod = mul(pow_real(derivative(f.series), e1), pow_real(f_over_z(f), e2))
    return times_z(prod)


def mocanu_inverse(g: TaylorSeries, beta: float) -> NormalizedFunction:
    """Invert :func:`mocanu_transform`: recover f from its starlike partner.

    Writing ``(g/w)^{(2-b)/(2-2b)} = 1 + sum d_k w^k``, the primitive of
    ``w^{b/(1-b)} (g(w)/w)^{(2-b)/(2-2b)}`` against the monomial weight is
    ``z^{1/(1-b)} * sum d_k z^k / ((1-b) k + 1)``, so

        f = z * ( sum_k d_k z^k / ((1-b) k + 1) )^{1-b}.

    The final fractional power re-anchors at constant term 1 and the output
    is snapped to exact class-A normalization (drift beyond 1e-10 raises).
    Conditioning: the working exponent grows like 1/(1-beta), so the
    intermediate series spans a huge dynamic range as beta approaches 1
    and double precision round trips degrade beyond beta of about 0.85.
    """
    _check_mocanu_beta(beta)
    c = g.coeffs.copy()
    if abs(c[0]) > 1e-10 or abs(c[1] - 1.0) > 1e-10:
        raise ValueError("g must be normalized: g(0) = 0, g'(0) = 1")
    c[0] = 0.0
    goz = div_z(TaylorSeries(c, g.order))
    d = pow_real(goz, (2.0 - beta) / (2.0 - 2.0 * beta))
    k = np.arange(d.order + 1)
    weights = (1.0 - beta) * k + 1.0
    bad = np.abs(weights) < 1e-12
    if bad.any():
        raise ParameterError(
            f"resonant integration weight at k={int(np.argmax(bad))} for beta={beta}")
    h = TaylorSeries(d.coeffs / weights, d.order)
    f = times_z(pow_real(h, 1.0 - beta))
    return NormalizedFunction.from_series(f, tol=1e-10)
