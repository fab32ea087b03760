"""Power-series solver for Briot-Bouquet equations and extremal builders.

The equation is

    q(z) + z q'(z) / (B q(z) + Gamma) = h(z),        q(0) = h(0),

solved by the coefficient recursion obtained from clearing the
denominator, ``q (B q + Gamma) + z q' = h (B q + Gamma)``:

    (n + B h0 + Gamma) q_n
        = B * sum_{i=1}^{n} h_i q_{n-i} + Gamma h_n
          - B * sum_{i=1}^{n-1} q_i q_{n-i},

which only references coefficients of index below n on the right.  The
hypothesis ``Re(B h0 + Gamma) > 0`` keeps every denominator bounded away
from zero (its real part exceeds n).

The two extremal families live here as well.  On the ``alpha = 0`` line
the equation for ``q = z f'/f`` with ``B = 1/(1-beta)``, ``Gamma = 0``
and target ``beta/2 + (1 - beta/2)(1 + z^k)/(1 - z^k)`` produces, for
``k = 2``, the function attaining the flat part ``(2-beta)/(6-4beta)``
of the sharp Fekete-Szego bound; ``k = 1`` attains the ``|1 - lambda|``
part.  On the ``beta = 1 - alpha`` line the unknown is ``q = f/z`` with
``B = alpha/(1-alpha)``, ``Gamma = 0``, target
``1 + (1/alpha) z^k/(1 - z^k)``, and flat constant ``1/(2-alpha)``.
Both degenerate endpoints (beta = 1, alpha = 1) are algebraic: the
differential term drops out and q equals the target directly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .operators import ParameterError
from .series import (
    NormalizedFunction,
    TaylorSeries,
    default_order,
    div,
    exp0,
)

__all__ = [
    "SmallDenominatorError",
    "BriotBouquetProblem",
    "ExtremalResult",
    "solve_briot_bouquet",
    "equation_residual",
    "f_from_q",
    "extremal_mocanu",
    "extremal_alpha",
    "default_lambda_grid",
    "sharpness_sweep",
]


class SmallDenominatorError(ArithmeticError):
    """A recursion denominator n + B h0 + Gamma fell below tolerance."""


@dataclass(frozen=True)
class BriotBouquetProblem:
    """Right-hand side and linearization coefficients of one equation."""

    h: TaylorSeries
    b: float
    gamma: float

    def __post_init__(self):
        if self.b == 0.0:
            raise ValueError("B must be nonzero")
        p0 = self.b * complex(self.h.coeffs[0]) + self.gamma
        if not p0.real > 0.0:
            raise ValueError(
                f"need Re(B*h(0) + Gamma) > 0 for solvability, got {p0}")


def solve_briot_bouquet(problem: BriotBouquetProblem,
                        order: int | None = None) -> TaylorSeries:
    """Unique formal series solution with q(0) = h(0)."""
    n = order or problem.h.order
    h = problem.h.coeffs
    if h.size < n + 1:
        h = np.concatenate([h, np.zeros(n + 1 - h.size, dtype=complex)])
    b, gamma = problem.b, problem.gamma
    q = np.zeros(n + 1, dtype=complex)
    q[0] = h[0]
    base = b * h[0] + gamma
    for k in range(1, n + 1):
        denom = k + base
        if abs(denom) <= 1e-12:
            raise SmallDenominatorError(
                f"denominator {denom} at index {k} is below tolerance")
        s_hq = np.dot(h[1:k + 1], q[k - 1::-1][:k])
        s_qq = np.dot(q[1:k], q[k - 1:0:-1]) if k > 1 else 0j
        q[k] = (b * s_hq + gamma * h[k] - b * s_qq) / denom
    return TaylorSeries(q, n)


def equation_residual(problem: BriotBouquetProblem, q: TaylorSeries) -> float:
    """Max coefficient magnitude of q + zq'/(Bq + Gamma) - h.

    Substitutes the candidate back through independent series arithmetic,
    so it cross-checks the recursion's index bookkeeping.
    """
    zqp = TaylorSeries(np.arange(q.order + 1) * q.coeffs, q.order)
    lhs = q + div(zqp, q * problem.b + problem.gamma)
    h = problem.h.coeffs
    n = min(lhs.order, problem.h.order)
    return float(np.abs(lhs.coeffs[:n + 1] - h[:n + 1]).max())


def f_from_q(q: TaylorSeries) -> NormalizedFunction:
    """Recover f from q = z f'/f via f = z exp(integral of (q-1)/w)."""
    if abs(q.coeffs[0] - 1.0) > 1e-12:
        raise ValueError(f"q(0) must be 1, got {q.coeffs[0]!r}")
    n = q.order
    primitive = np.zeros(n + 1, dtype=complex)
    primitive[1:] = q.coeffs[1:] / np.arange(1, n + 1)
    expo = exp0(TaylorSeries(primitive, n))
    f = np.zeros(n + 2, dtype=complex)
    f[1:] = expo.coeffs
    return NormalizedFunction(TaylorSeries(f, n + 1))


def default_lambda_grid() -> np.ndarray:
    """Complex lambda grid: Re in [-1, 3] step 0.1, Im in {-1, 0, 1}.

    Spans both regimes of the bound max(mu, |1 - lambda|).
    """
    xs = np.linspace(-1.0, 3.0, 41)
    ys = (-1.0, 0.0, 1.0)
    return np.array([x + 1j * y for y in ys for x in xs])


@dataclass(frozen=True)
class ExtremalResult:
    """An extremal function with its low coefficients and bound samples."""

    line: str            # "beta" or "alpha"
    value: float         # the line parameter
    k: int               # 1 or 2
    f: NormalizedFunction
    a2: complex
    a3: complex
    phi: tuple[tuple[complex, complex], ...]   # (lambda, Phi(f, lambda))

    def to_dict(self) -> dict:
        return {
            self.line: self.value,
            "k": self.k,
            "a2": [self.a2.real, self.a2.imag],
            "a3": [self.a3.real, self.a3.imag],
            "phi": [{"lambda": [lam.real, lam.imag],
                     "value": [val.real, val.imag]}
                    for lam, val in self.phi],
        }


def _comb_target(order: int, k: int, level: float, slope: float) -> TaylorSeries:
    """Series of level + slope * z^k/(1 - z^k): constant plus a lacunary tail."""
    c = np.zeros(order + 1, dtype=complex)
    c[0] = level
    c[k::k] = slope
    return TaylorSeries(c, order)


def _phi_samples(f: NormalizedFunction) -> tuple[tuple[complex, complex], ...]:
    a2, a3 = f.a2, f.a3
    return tuple((complex(lam), a3 - lam * a2 ** 2) for lam in default_lambda_grid())


def _result(line: str, value: float, k: int, f: NormalizedFunction) -> ExtremalResult:
    return ExtremalResult(line=line, value=value, k=k, f=f,
                          a2=f.a2, a3=f.a3, phi=_phi_samples(f))


def extremal_mocanu(beta: float, k: int, order: int | None = None) -> ExtremalResult:
    """Extremal member of the class at (0, beta), beta in [0, 1], k in {1, 2}.

    The prescribed operator value is beta/2 + (1 - beta/2)(1+z^k)/(1-z^k),
    i.e. target level 1 with lacunary slope (2 - beta) on powers of z^k.
    """
    if not 0.0 <= beta <= 1.0:
        raise ParameterError(f"beta must lie in [0, 1], got {beta}")
    if k not in (1, 2):
        raise ParameterError(f"k must be 1 or 2, got {k}")
    n = order or default_order()
    h = _comb_target(n, k, 1.0, 2.0 - beta)
    if beta == 1.0:
        q = h  # differential term vanishes: z f'/f equals the target
    else:
        q = solve_briot_bouquet(BriotBouquetProblem(h, 1.0 / (1.0 - beta), 0.0), n)
    return _result("beta", beta, k, f_from_q(q))


def extremal_alpha(alpha: float, k: int, order: int | None = None) -> ExtremalResult:
    """Extremal member of the class at (alpha, 1-alpha), alpha in (0, 1]."""
    if not 0.0 < alpha <= 1.0:
        raise ParameterError(f"alpha must lie in (0, 1], got {alpha}")
    if k not in (1, 2):
        raise ParameterError(f"k must be 1 or 2, got {k}")
    n = order or default_order()
    if alpha == 1.0:
        q = _comb_target(n, k, 1.0, 1.0)  # f/z = 1/(1 - z^k) directly
    else:
        h = _comb_target(n, k, 1.0, 1.0 / alpha)
        prob = BriotBouquetProblem(h, alpha / (1.0 - alpha), 0.0)
        q = solve_briot_bouquet(prob, n)
    f = np.zeros(n + 2, dtype=complex)
    f[1:] = q.coeffs
    return _result("alpha", alpha, k, NormalizedFunction(TaylorSeries(f, n + 1)))


def sharpness_sweep(line: str, value: float,
                    lambda_grid: np.ndarray | None = None,
                    order: int | None = None) -> list[dict]:
    """Bound vs. attained value of |Phi| over both extremals, per lambda.

    Rows carry lambda_re, lambda_im, bound, attained, ratio; the k = 1
    extremal realizes |1 - lambda| and the k = 2 extremal the flat
    constant, so attained/bound stays at 1 on the whole grid.
    """
    if line == "beta":
        mu = (2.0 - value) / (6.0 - 4.0 * value)
        extremals = [extremal_mocanu(value, k, order) for k in (1, 2)]
    elif line == "alpha":
        mu = 1.0 / (2.0 - value)
        extremals = [extremal_alpha(value, k, order) for k in (1, 2)]
    else:
        raise ParameterError(f"line must be 'beta' or 'alpha', got {line!r}")
    if lambda_grid is None:
        lambda_grid = default_lambda_grid()
    rows = []
    for lam in lambda_grid:
        lam = complex(lam)
        bound = max(mu, abs(1.0 - lam))
        attained = max(abs(e.a3 - lam * e.a2 ** 2) for e in extremals)
        rows.append({
            "lambda_re": lam.real,
            "lambda_im": lam.imag,
            "bound": bound,
            "attained": attained,
            "ratio": attained / bound,
        })
    return rows
