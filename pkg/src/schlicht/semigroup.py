"""Semigroup flows generated by normalized functions.

The flow solves the Cauchy problem

    du/dt = -f(u),    u(0) = z0,

with an adaptive Dormand-Prince 5(4) pair.  Stage points are evaluated
through unchecked polynomial evaluation (a rejected trial step may
overshoot the disk boundary without meaning anything), but every accepted
solution point must stay strictly inside the disk; crossing the boundary
raises :class:`DiskEscapeError`, which is precisely the numerical symptom
of a non-generator.

For a generator fixing the origin the flow is a contraction toward 0, so
trajectories satisfy |u(t)| <= |z0|; on the ``beta = 1 - alpha`` line with
alpha in [1/2, 1] the sharper exponential bound

    |u(t)| <= exp(t (1 - 2 alpha) / (2 alpha)) |z0|

holds, and :func:`bound_audit_alpha` spot-checks it pointwise.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .membership import DiskGrid, min_margin
from .series import NormalizedFunction, tail_estimate

__all__ = [
    "DiskEscapeError",
    "StiffnessError",
    "NotAGeneratorError",
    "StepStats",
    "SemigroupTrajectory",
    "BoundAuditReport",
    "evolve",
    "bound_audit_alpha",
    "semigroup_property_audit",
]

_ESCAPE_RADIUS = 1.0 - 1e-12
_MIN_STEP = 1e-14

# Dormand-Prince 5(4) tableau
_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_B5 = (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0)
_B4 = (5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200, 187 / 2100, 1 / 40)


class DiskEscapeError(RuntimeError):
    """The trajectory reached the unit circle: f is not acting as a generator
    on this orbit (or tolerances are too loose)."""


class StiffnessError(RuntimeError):
    """Step size underflowed; the problem is stiffer than the controller
    can handle."""


class NotAGeneratorError(ValueError):
    """The generator precheck failed; pass force=True to integrate anyway."""


@dataclass(frozen=True)
class StepStats:
    accepted: int
    rejected: int
    fevals: int

    def to_dict(self) -> dict:
        return {"accepted": self.accepted, "rejected": self.rejected,
                "fevals": self.fevals}


@dataclass(frozen=True)
class SemigroupTrajectory:
    """Flow samples u(t_i, z0) along ascending times starting at 0.

    ``field_tail`` estimates the dropped series tail of the vector field at
    the largest radius the orbit visits; it belongs in the error budget on
    top of the integrator tolerance.
    """

    z0: complex
    times: tuple[float, ...]
    points: tuple[complex, ...]
    step_stats: StepStats
    field_tail: float | None = None

    def __post_init__(self):
        if self.times[0] != 0.0 or self.points[0] != self.z0:
            raise ValueError("trajectory must start at (0, z0)")
        if any(abs(p) >= 1.0 for p in self.points):
            raise ValueError("trajectory left the unit disk")

    def rows(self, bound_rate: float | None = None) -> list[dict]:
        """Plot-ready rows: t, re(u), im(u), |u| and, when auditing,
        the exponential bound exp(bound_rate * t) |z0|."""
        out = []
        for t, u in zip(self.times, self.points):
            row = {"t": t, "re_u": u.real, "im_u": u.imag, "abs_u": abs(u)}
            if bound_rate is not None:
                row["bound"] = float(np.exp(bound_rate * t) * abs(self.z0))
            out.append(row)
        return out

    def to_dict(self) -> dict:
        return {
            "z0": [self.z0.real, self.z0.imag],
            "times": list(self.times),
            "points": [[p.real, p.imag] for p in self.points],
            "step_stats": self.step_stats.to_dict(),
            "field_tail": self.field_tail,
        }


def _integrate(deriv, z0: complex, times: np.ndarray,
               atol: float, rtol: float,
               first_step: float, max_step: float) -> tuple[list[complex], StepStats]:
    """Adaptive embedded RK from 0 through each requested time exactly."""
    t = 0.0
    y = complex(z0)
    h = first_step
    accepted = rejected = fevals = 0
    out: list[complex] = []
    for target in times:
        while t < target - 1e-15:
            h = min(h, max_step, target - t)
            if h < _MIN_STEP:
                raise StiffnessError(f"step size underflow at t={t}")
            k = [deriv(y)]
            for row in _A[1:]:
                stage = y + h * sum(a * ki for a, ki in zip(row, k))
                k.append(deriv(stage))
            fevals += 7
            y5 = y + h * sum(b * ki for b, ki in zip(_B5, k))
            y4 = y + h * sum(b * ki for b, ki in zip(_B4, k))
            err = abs(y5 - y4)
            tol = atol + rtol * max(abs(y), abs(y5))
            if err <= tol:
                t += h
                y = y5
                accepted += 1
                if abs(y) >= _ESCAPE_RADIUS:
                    raise DiskEscapeError(
                        f"|u({t:.6g})| = {abs(y):.12f} reached the unit circle")
            else:
                rejected += 1
            grow = 5.0 if err == 0.0 else min(5.0, max(0.2, 0.9 * (tol / err) ** 0.2))
            h *= grow
        out.append(y)
    return out, StepStats(accepted, rejected, fevals)


def evolve(f: NormalizedFunction, z0: complex, t_end: float,
           times=None, force: bool = False,
           atol: float = 1e-10, rtol: float = 1e-10,
           first_step: float = 1e-3, max_step: float = 0.1) -> SemigroupTrajectory:
    """Flow of du/dt = -f(u) from z0, sampled at the requested times.

    Unless ``force`` is set, f must pass the generator margin check first;
    with ``force`` the check is skipped and a boundary crossing surfaces
    as :class:`DiskEscapeError` rather than an assertion of bad input.
    """
    z0 = complex(z0)
    if abs(z0) >= 1.0:
        raise ValueError(f"|z0| = {abs(z0)} must be < 1")
    if t_end < 0.0:
        raise ValueError("t_end must be >= 0")
    if not force:
        rep = min_margin(f, "generator", grid=DiskGrid.audit())
        if rep.verdict == "fail":
            raise NotAGeneratorError(
                f"generator margin {rep.margin:.3e} is negative; "
                "pass force=True to integrate anyway")
    if times is None:
        times = np.array([0.0]) if t_end == 0.0 else np.linspace(0.0, t_end, 51)
    times = np.asarray(sorted(set(float(t) for t in times) | {0.0}))
    if times[0] < 0.0 or times[-1] > t_end + 1e-12:
        raise ValueError("times must lie in [0, t_end]")

    # a plain tuple keeps the Horner loop on builtin complex arithmetic
    rev = tuple(complex(c) for c in f.series.coeffs[::-1])

    def deriv(u: complex) -> complex:
        acc = 0j
        for c in rev:
            acc = acc * u + c
        return -acc

    interior = times[times > 0.0]
    points, stats = _integrate(deriv, z0, interior, atol, rtol, first_step, max_step)
    max_radius = max(abs(p) for p in (z0, *points))
    return SemigroupTrajectory(
        z0=z0,
        times=(0.0, *map(float, interior)),
        points=(z0, *points),
        step_stats=stats,
        field_tail=tail_estimate(f.series, max_radius),
    )


@dataclass(frozen=True)
class BoundAuditReport:
    """Pointwise check of the exponential growth bound on one alpha line."""

    alpha: float
    rate: float
    rows: tuple[dict, ...]
    max_excess: float
    violations: int

    def to_dict(self) -> dict:
        return {"alpha": self.alpha, "rate": self.rate,
                "max_excess": self.max_excess, "violations": self.violations,
                "samples": list(self.rows)}


def bound_audit_alpha(f: NormalizedFunction, alpha: float,
                      samples) -> BoundAuditReport:
    """Check |u(t, z0)| <= exp(t (1-2a)/(2a)) |z0| (1 + 1e-6) per sample.

    ``samples`` is an iterable of (z0, t) pairs; trajectories are shared
    across samples with equal z0.  Violations are counted and reported,
    never raised: membership of f in the class at (alpha, 1-alpha) is the
    caller's precondition.
    """
    if not 0.5 <= alpha <= 1.0:
        raise ValueError(f"alpha must lie in [1/2, 1], got {alpha}")
    rate = (1.0 - 2.0 * alpha) / (2.0 * alpha)
    by_start: dict[complex, list[float]] = {}
    for z0, t in samples:
        by_start.setdefault(complex(z0), []).append(float(t))
    rows: list[dict] = []
    max_excess = -np.inf
    violations = 0
    for z0, ts in by_start.items():
        ts = sorted(set(ts))
        traj = evolve(f, z0, ts[-1], times=ts, force=True)
        wanted = set(ts)
        for t, u in zip(traj.times, traj.points):
            if t not in wanted:
                continue
            bound = float(np.exp(rate * t)) * abs(z0)
            excess = abs(u) - bound * (1.0 + 1e-6)
            max_excess = max(max_excess, excess)
            if excess > 0.0:
                violations += 1
            rows.append({"z0_re": z0.real, "z0_im": z0.imag, "t": t,
                         "abs_u": abs(u), "bound": bound, "excess": excess})
    return BoundAuditReport(alpha=alpha, rate=rate, rows=tuple(rows),
                            max_excess=float(max_excess), violations=violations)


def semigroup_property_audit(f: NormalizedFunction, s: float, t: float,
                             z0_grid) -> float:
    """Max over the grid of |u(t+s, z0) - u(t, u(s, z0))|."""
    if s < 0.0 or t < 0.0:
        raise ValueError("s and t must be >= 0")
    worst = 0.0
    for z0 in z0_grid:
        z0 = complex(z0)
        through = evolve(f, z0, s + t, times=[s, s + t], force=True)
        u_s = through.points[through.times.index(s)]
        u_st = through.points[-1]
        u2 = evolve(f, u_s, t, times=[t], force=True).points[-1] if t > 0.0 else u_s
        worst = max(worst, abs(u_st - u2))
    return worst
