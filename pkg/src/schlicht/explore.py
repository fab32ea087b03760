"""Randomized class members and Monte-Carlo audits.

Members are never rejection-sampled from raw coefficient space (the
classes are far too thin there).  Instead a random half-plane target with
the right structure is prescribed and the Briot-Bouquet route constructs
a member realizing it exactly:

* on the ``alpha = 0`` line the target is
  ``beta/2 + (1 - beta/2) * H`` for a random Herglotz function ``H``,
  and the solver inverts ``q + (1 - beta) z q'/q = target`` for
  ``q = z f'/f``;
* on the ``beta = 1 - alpha`` line the target ``1/2 + H/2`` has real part
  above 1/2 and becomes the right-hand side ``1 + (target - 1)/alpha``
  for ``q = f/z``.

Herglotz functions are finite convex combinations of rotated half-plane
kernels, so positivity of the real part is structural rather than
checked.  Schwarz functions are finite Blaschke products times z, giving
structural self-maps of the disk for the coefficient-inequality audit.

All sampling is deterministic: a base seed expands into per-trial seeds
up front, so serial and parallel runs of an audit see identical members.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .briot_bouquet import (
    BriotBouquetProblem,
    default_lambda_grid,
    f_from_q,
    solve_briot_bouquet,
)
from .membership import DiskGrid, TOL_PASS, minimize_real_part
from .operators import (
    ClassParams,
    ParameterError,
    convexity_quotient,
    f_over_z,
    fekete_szego,
    starlike_quotient,
)
from .series import NormalizedFunction, TaylorSeries, default_order, div, evaluate_many

__all__ = [
    "HerglotzSampler",
    "SchwarzSampler",
    "trial_seeds",
    "sample_m0beta",
    "sample_malpha",
    "sample_members_m0beta",
    "sample_members_malpha",
    "FSBoundReport",
    "fs_bound_audit",
    "FiltrationReport",
    "filtration_audit",
    "filtration_audit_alpha",
    "SchwarzAuditReport",
    "schwarz_lemma_audit",
]

_MAX_ATOMS = 8
_MAX_DEGREE = 6


def trial_seeds(seed: int, n: int) -> list[int]:
    """Expand one base seed into n per-trial seeds, deterministically."""
    rng = np.random.default_rng(seed)
    return [int(x) for x in rng.integers(0, 2 ** 63 - 1, size=n, dtype=np.int64)]


@dataclass(frozen=True)
class HerglotzSampler:
    """Atomic Herglotz function: sum of w_j (1 + e^{-i t_j} z)/(1 - e^{-i t_j} z).

    Weights are nonnegative and sum to 1, so H(0) = 1 and Re H > 0 on the
    disk by construction.
    """

    seed: int
    atoms: tuple[tuple[float, float], ...]   # (weight, angle)

    def __post_init__(self):
        if not 1 <= len(self.atoms) <= _MAX_ATOMS:
            raise ValueError(f"need 1..{_MAX_ATOMS} atoms, got {len(self.atoms)}")
        w = np.array([a[0] for a in self.atoms])
        if (w < 0).any() or abs(w.sum() - 1.0) > 1e-9:
            raise ValueError("weights must be nonnegative and sum to 1")

    @property
    def num_atoms(self) -> int:
        return len(self.atoms)

    @classmethod
    def random(cls, seed: int, num_atoms: int | None = None) -> "HerglotzSampler":
        rng = np.random.default_rng(seed)
        m = num_atoms if num_atoms is not None else int(rng.integers(1, _MAX_ATOMS + 1))
        weights = rng.dirichlet(np.ones(m))
        angles = rng.uniform(0.0, 2.0 * np.pi, m)
        return cls(seed=seed, atoms=tuple(zip(map(float, weights), map(float, angles))))

    def series(self, order: int | None = None) -> TaylorSeries:
        """Coefficients 1, then 2 sum_j w_j e^{-i k t_j}; c0 pinned to 1."""
        order = order or default_order()
        w = np.array([a[0] for a in self.atoms])
        th = np.array([a[1] for a in self.atoms])
        k = np.arange(1, order + 1)
        c = np.zeros(order + 1, dtype=complex)
        c[0] = 1.0
        c[1:] = 2.0 * (np.exp(-1j * np.outer(k, th)) @ w)
        return TaylorSeries(c, order)


@dataclass(frozen=True)
class SchwarzSampler:
    """Random Schwarz function: z times a finite Blaschke product."""

    seed: int
    zeros: tuple[complex, ...]
    rotation: complex

    def __post_init__(self):
        if not 1 <= len(self.zeros) <= _MAX_DEGREE:
            raise ValueError(f"need 1..{_MAX_DEGREE} zeros, got {len(self.zeros)}")
        if any(abs(a) >= 1.0 for a in self.zeros):
            raise ValueError("Blaschke zeros must satisfy |a| < 1")
        if abs(abs(self.rotation) - 1.0) > 1e-12:
            raise ValueError("rotation must be unimodular")

    @property
    def degree(self) -> int:
        return len(self.zeros)

    @classmethod
    def random(cls, seed: int, degree: int | None = None) -> "SchwarzSampler":
        rng = np.random.default_rng(seed)
        d = degree if degree is not None else int(rng.integers(1, _MAX_DEGREE + 1))
        radii = 0.99 * np.sqrt(rng.uniform(0.0, 1.0, d))
        angs = rng.uniform(0.0, 2.0 * np.pi, d)
        rotation = complex(np.exp(1j * rng.uniform(0.0, 2.0 * np.pi)))
        zeros = tuple(complex(r * np.exp(1j * a)) for r, a in zip(radii, angs))
        return cls(seed=seed, zeros=zeros, rotation=rotation)

    def series(self, order: int = 8) -> TaylorSeries:
        """Product of Blaschke factors (a - z)/(1 - conj(a) z), times z."""
        out = TaylorSeries.variable(order)
        for a in self.zeros:
            num = np.zeros(order + 1, dtype=complex)
            num[0], num[1] = a, -1.0
            den = np.zeros(order + 1, dtype=complex)
            den[0], den[1] = 1.0, -np.conj(a)
            out = out * div(TaylorSeries(num, order), TaylorSeries(den, order))
        return out * self.rotation


# -- member construction -------------------------------------------------------

def sample_m0beta(beta: float, sampler: HerglotzSampler,
                  order: int | None = None) -> NormalizedFunction:
    """Random member of the class at (0, beta), beta <= 1.

    Prescribes the operator target beta/2 + (1 - beta/2) H and solves for
    z f'/f; the degenerate beta = 1 needs no equation.
    """
    if beta > 1.0:
        raise ParameterError(f"beta must be <= 1, got {beta}")
    order = order or default_order()
    target = sampler.series(order) * (1.0 - beta / 2.0) + beta / 2.0
    c = target.coeffs.copy()
    c[0] = 1.0  # exact by construction (weights sum to 1)
    target = TaylorSeries(c, order)
    if beta == 1.0:
        q = target
    else:
        q = solve_briot_bouquet(
            BriotBouquetProblem(target, 1.0 / (1.0 - beta), 0.0), order)
    return f_from_q(q)


def sample_malpha(alpha: float, sampler: HerglotzSampler,
                  order: int | None = None) -> NormalizedFunction:
    """Random member of the class at (alpha, 1-alpha), alpha in (1/2, 1]."""
    if not 0.5 < alpha <= 1.0:
        raise ParameterError(f"alpha must lie in (1/2, 1], got {alpha}")
    order = order or default_order()
    target = sampler.series(order) * 0.5 + 0.5
    c = target.coeffs.copy()
    c[0] = 1.0
    target = TaylorSeries(c, order)
    if alpha == 1.0:
        q = target  # f/z equals the target directly
    else:
        h = (target - 1.0) * (1.0 / alpha) + 1.0
        hc = h.coeffs.copy()
        hc[0] = 1.0
        q = solve_briot_bouquet(
            BriotBouquetProblem(TaylorSeries(hc, order), alpha / (1.0 - alpha), 0.0),
            order)
    fc = np.zeros(order + 2, dtype=complex)
    fc[1:] = q.coeffs
    return NormalizedFunction.from_series(TaylorSeries(fc, order + 1))


def sample_members_m0beta(beta: float, count: int, seed: int,
                          order: int | None = None) -> list[NormalizedFunction]:
    return [sample_m0beta(beta, HerglotzSampler.random(s), order)
            for s in trial_seeds(seed, count)]


def sample_members_malpha(alpha: float, count: int, seed: int,
                          order: int | None = None) -> list[NormalizedFunction]:
    return [sample_malpha(alpha, HerglotzSampler.random(s), order)
            for s in trial_seeds(seed, count)]


# -- Fekete-Szego bound audit ---------------------------------------------------

@dataclass(frozen=True)
class FSBoundReport:
    alpha: float
    beta: float
    mu: float
    n_members: int
    max_excess: float
    violations: int
    rows: tuple[dict, ...]   # per lambda: bound, attained, ratio

    def to_dict(self) -> dict:
        return {"alpha": self.alpha, "beta": self.beta, "mu": self.mu,
                "n_members": self.n_members, "max_excess": self.max_excess,
                "violations": self.violations, "rows": list(self.rows)}


def fs_bound_audit(members, params: ClassParams,
                   lambda_grid: np.ndarray | None = None,
                   tol: float = 1e-6) -> FSBoundReport:
    """Check |a3 - lambda a2^2| <= max(mu, |1 - lambda|) over members.

    Reports the attained supremum per lambda (sharpness evidence) and the
    worst excess over the bound; any excess beyond tol counts as a
    violation, which for constructed members indicates an implementation
    bug rather than a counterexample.
    """
    members = list(members)
    mu = params.mu
    if lambda_grid is None:
        lambda_grid = default_lambda_grid()
    phis = np.array([[fekete_szego(f, complex(lam)) for lam in lambda_grid]
                     for f in members])
    rows = []
    max_excess = -math.inf
    violations = 0
    for j, lam in enumerate(lambda_grid):
        lam = complex(lam)
        bound = max(mu, abs(1.0 - lam))
        attained = float(np.abs(phis[:, j]).max()) if members else 0.0
        excess = attained - bound
        max_excess = max(max_excess, excess)
        if excess > tol:
            violations += 1
        rows.append({"lambda_re": lam.real, "lambda_im": lam.imag,
                     "bound": bound, "attained": attained,
                     "ratio": attained / bound})
    return FSBoundReport(alpha=params.alpha, beta=params.beta, mu=mu,
                         n_members=len(members), max_excess=float(max_excess),
                         violations=violations, rows=tuple(rows))


# -- filtration audits ----------------------------------------------------------

@dataclass(frozen=True)
class FiltrationReport:
    line: str
    from_value: float
    to_values: tuple[float, ...]
    n_samples: int
    seed: int
    worst_margin: float
    worst_at: float
    violations: int
    per_target: tuple[dict, ...]
    strictness_evidence: int
    strictness_example: dict | None

    def to_dict(self) -> dict:
        return {
            "line": self.line,
            "from": self.from_value,
            "to": list(self.to_values),
            "samples": self.n_samples,
            "seed": self.seed,
            "worst_margin": self.worst_margin,
            "worst_at": self.worst_at,
            "violations": self.violations,
            "per_target": list(self.per_target),
            "strictness": {
                "label": "conjecture-evidence",
                "count": self.strictness_evidence,
                "example": self.strictness_example,
            },
        }


def _margins_on_line(f: NormalizedFunction, line: str, values,
                     grid: DiskGrid) -> list[float]:
    """Membership margins of f for several classes on one parameter line.

    The blended operator is affine in (alpha, beta), so the two component
    quotients are evaluated once on the base grid and recombined per class;
    refinement re-evaluates only the small candidate windows.
    """
    pts = grid.points()
    if line == "beta":
        first, second = starlike_quotient(f), convexity_quotient(f)

        def combo(v: float):
            return first * v + second * (1.0 - v), 0.5 * v
    else:
        first, second = f_over_z(f), starlike_quotient(f)

        def combo(v: float):
            return first * v + second * (1.0 - v), 0.5

    fv = evaluate_many(first, pts)
    sv = evaluate_many(second, pts)
    margins = []
    for v in values:
        test, threshold = combo(v)
        base = fv * v + sv * (1.0 - v)
        min_re, _ = minimize_real_part(
            lambda z: evaluate_many(test, z), grid, base_values=base)
        margins.append(min_re - threshold)
    return margins


def _filtration_audit(line: str, from_value: float, to_values, samples: int,
                      seed: int, grid: DiskGrid | None,
                      sample_small, sample_large) -> FiltrationReport:
    grid = grid or DiskGrid.audit()
    to_values = tuple(float(v) for v in to_values)
    worst = math.inf
    worst_at = math.nan
    violations = 0
    per_worst = {v: math.inf for v in to_values}
    per_viol = {v: 0 for v in to_values}
    for s in trial_seeds(seed, samples):
        f = sample_small(HerglotzSampler.random(s))
        for v, margin in zip(to_values, _margins_on_line(f, line, to_values, grid)):
            per_worst[v] = min(per_worst[v], margin)
            if margin < worst:
                worst, worst_at = margin, v
            if margin <= TOL_PASS:
                violations += 1
                per_viol[v] += 1
    # strictness probe: members of the largest class failing the smallest
    evidence = 0
    example = None
    probe_target = max(to_values)
    for s in trial_seeds(seed + 1, min(samples, 50)):
        g = sample_large(HerglotzSampler.random(s), probe_target)
        margin = _margins_on_line(g, line, [from_value], grid)[0]
        if margin < -TOL_PASS:
            evidence += 1
            if example is None:
                example = {"sampler_seed": s, "margin": margin,
                           "member_of": probe_target, "fails": from_value}
    per_target = tuple({"to": v, "worst_margin": per_worst[v],
                        "violations": per_viol[v]} for v in to_values)
    return FiltrationReport(line=line, from_value=from_value,
                            to_values=to_values, n_samples=samples, seed=seed,
                            worst_margin=worst, worst_at=worst_at,
                            violations=violations, per_target=per_target,
                            strictness_evidence=evidence,
                            strictness_example=example)


def filtration_audit(beta_from: float, beta_to_grid, samples: int, seed: int,
                     grid: DiskGrid | None = None) -> FiltrationReport:
    """Sampled members of the class at (0, beta) tested in every larger
    class on the beta line; forward violations should never occur."""
    for v in beta_to_grid:
        if not beta_from < v <= 1.0:
            raise ParameterError(
                f"targets must satisfy beta_from < beta1 <= 1, got {v}")
    return _filtration_audit(
        "beta", beta_from, beta_to_grid, samples, seed, grid,
        sample_small=lambda smp: sample_m0beta(beta_from, smp),
        sample_large=lambda smp, v: sample_m0beta(v, smp))


def filtration_audit_alpha(alpha_from: float, alpha_to_grid, samples: int,
                           seed: int, grid: DiskGrid | None = None) -> FiltrationReport:
    """Same audit on the (alpha, 1-alpha) line, alpha in (1/2, 1]."""
    if not 0.5 < alpha_from <= 1.0:
        raise ParameterError(f"alpha_from must lie in (1/2, 1], got {alpha_from}")
    for v in alpha_to_grid:
        if not alpha_from < v <= 1.0:
            raise ParameterError(
                f"targets must satisfy alpha_from < alpha1 <= 1, got {v}")
    return _filtration_audit(
        "alpha", alpha_from, alpha_to_grid, samples, seed, grid,
        sample_small=lambda smp: sample_malpha(alpha_from, smp),
        sample_large=lambda smp, v: sample_malpha(v, smp))


# -- Schwarz coefficient audit ----------------------------------------------------

@dataclass(frozen=True)
class SchwarzAuditReport:
    trials: int
    seed: int
    s_values: tuple[complex, ...]
    max_slack_quadratic: float   # |b2| - (1 - |b1|^2), worst over trials
    max_slack_weighted: float    # |b2 - s b1^2| - max(1, |s|), worst over all
    violations: int

    def to_dict(self) -> dict:
        return {"trials": self.trials, "seed": self.seed,
                "s_values": [[s.real, s.imag] for s in self.s_values],
                "max_slack_quadratic": self.max_slack_quadratic,
                "max_slack_weighted": self.max_slack_weighted,
                "violations": self.violations}


def schwarz_lemma_audit(seed: int, trials: int,
                        s_values=(0, 1, -1, 2, -2, 1j),
                        tol: float = 1e-9) -> SchwarzAuditReport:
    """Audit |b2| <= 1 - |b1|^2 and |b2 - s b1^2| <= max(1, |s|).

    b1, b2 are the first two coefficients of random Blaschke-based Schwarz
    functions; the inequalities are theorems, so any violation beyond tol
    flags an implementation bug.
    """
    s_values = tuple(complex(s) for s in s_values)
    worst_q = -math.inf
    worst_w = -math.inf
    violations = 0
    for s in trial_seeds(seed, trials):
        omega = SchwarzSampler.random(s).series(order=4)
        b1 = omega.coefficient(1)
        b2 = omega.coefficient(2)
        slack_q = abs(b2) - (1.0 - abs(b1) ** 2)
        worst_q = max(worst_q, slack_q)
        if slack_q > tol:
            violations += 1
        for sv in s_values:
            slack_w = abs(b2 - sv * b1 ** 2) - max(1.0, abs(sv))
            worst_w = max(worst_w, slack_w)
            if slack_w > tol:
                violations += 1
    return SchwarzAuditReport(trials=trials, seed=seed, s_values=s_values,
                              max_slack_quadratic=float(worst_q),
                              max_slack_weighted=float(worst_w),
                              violations=violations)
