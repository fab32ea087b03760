"""Numerical-evidence membership certification on disk grids.

A class condition here is always an open half-plane condition
``Re T(z) > threshold`` for a test series ``T`` derived from the
function.  The certifier samples ``Re T`` on concentric rings, refines
the angular grid around the minimizer, and reports the worst margin
``min Re T - threshold`` together with a tri-state verdict:

* ``pass``          margin >  +1e-7
* ``fail``          margin <  -1e-7
* ``inconclusive``  otherwise

Verdicts are evidence, never proofs: grids miss boundary behavior, and a
truncated series cannot resolve margins below its tail error.  Reports
therefore carry a truncation-warning flag whenever the estimated dropped
tail at the outermost ring exceeds a tenth of the verdict tolerance.

Beyond the half-plane classes, the module hosts the plane-region
sufficient condition for generators (a parabolic region the operator
range must avoid), the trivial Denjoy-Wolff factorization of a
normalized generator, and the classical implication-chain audit
convex => starlike(1/2) => Re f/z > 1/2 => generator.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .operators import (
    ClassParams,
    blended_operator,
    convexity_quotient,
    f_over_z,
    starlike_quotient,
)
from .series import NormalizedFunction, TaylorSeries, evaluate_many, tail_estimate

__all__ = [
    "TOL_PASS",
    "CLASS_IDS",
    "class_test",
    "DiskGrid",
    "MembershipReport",
    "BerksonPortaDecomposition",
    "DeltaAuditReport",
    "MarxStrohhackerReport",
    "minimize_real_part",
    "min_margin",
    "delta_region_contains",
    "delta_audit",
    "berkson_porta",
    "marx_strohhacker_audit",
]

TOL_PASS = 1e-7

CLASS_IDS = ("m", "generator", "starlike_half", "convex", "a_half")

_DEFAULT_RADII = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.95)
_AUDIT_RADII = (0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9)


@dataclass(frozen=True)
class DiskGrid:
    """Concentric sampling rings for half-plane margin checks."""

    radii: tuple[float, ...]
    angles_per_ring: int = 720
    refinement_depth: int = 2

    def __post_init__(self):
        r = self.radii
        if not r or any(not 0.0 < x <= 0.995 for x in r):
            raise ValueError("radii must lie in (0, 0.995]")
        if any(b <= a for a, b in zip(r, r[1:])):
            raise ValueError("radii must be strictly ascending")
        if self.angles_per_ring < 64:
            raise ValueError("need at least 64 angles per ring")
        if self.refinement_depth < 0:
            raise ValueError("refinement depth must be >= 0")

    @classmethod
    def default(cls, test: TaylorSeries | None = None) -> "DiskGrid":
        """Default grid; the 0.99 ring joins only when the series' tail
        estimate says margins there are resolvable."""
        radii = _DEFAULT_RADII
        if test is not None:
            est = tail_estimate(test, 0.99)
            if est is not None and est <= TOL_PASS / 10.0:
                radii = radii + (0.99,)
        return cls(radii)

    @classmethod
    def audit(cls) -> "DiskGrid":
        """Lighter grid for Monte-Carlo audits over many sampled members.

        Capped at radius 0.9: at the default truncation order, ring 0.95
        carries tail noise of the same size as the theoretical margins of
        class members, so it cannot support zero-violation audits.
        """
        return cls(_AUDIT_RADII, angles_per_ring=360, refinement_depth=1)

    def points(self) -> np.ndarray:
        angles = 2.0 * np.pi * np.arange(self.angles_per_ring) / self.angles_per_ring
        return (np.asarray(self.radii)[:, None] * np.exp(1j * angles)[None, :]).ravel()

    def to_dict(self) -> dict:
        return {
            "radii": list(self.radii),
            "angles_per_ring": self.angles_per_ring,
            "refinement_depth": self.refinement_depth,
        }


def _verdict(margin: float) -> str:
    if margin > TOL_PASS:
        return "pass"
    if margin < -TOL_PASS:
        return "fail"
    return "inconclusive"


def minimize_real_part(eval_fn, grid: DiskGrid,
                       base_values: np.ndarray | None = None) -> tuple[float, complex]:
    """Minimum of ``Re eval_fn`` over the grid with angular refinement.

    ``eval_fn`` maps an array of disk points to complex values.  Each
    refinement level re-samples a shrinking window around the current
    argmin at four times the angular density, so added points can only
    lower the reported minimum.
    """
    pts = grid.points()
    vals = np.real(base_values) if base_values is not None else np.real(eval_fn(pts))
    i = int(np.argmin(vals))
    best_val = float(vals[i])
    best_pt = complex(pts[i])
    radius = abs(best_pt)
    theta = math.atan2(best_pt.imag, best_pt.real)
    spacing = 2.0 * np.pi / grid.angles_per_ring
    for _ in range(grid.refinement_depth):
        offsets = np.linspace(-2.0 * spacing, 2.0 * spacing, 17)
        cand = radius * np.exp(1j * (theta + offsets))
        cvals = np.real(eval_fn(cand))
        j = int(np.argmin(cvals))
        if cvals[j] < best_val:
            best_val = float(cvals[j])
            best_pt = complex(cand[j])
            theta = theta + float(offsets[j])
        spacing /= 4.0
    return best_val, best_pt


@dataclass(frozen=True)
class MembershipReport:
    """Outcome of one half-plane margin check."""

    class_id: str
    alpha: float | None
    beta: float | None
    threshold: float
    margin: float
    argmin: complex
    verdict: str
    grid: DiskGrid
    truncation_warning: bool
    tail: float | None

    def to_dict(self) -> dict:
        return {
            "class": self.class_id,
            "alpha": self.alpha,
            "beta": self.beta,
            "threshold": self.threshold,
            "margin": self.margin,
            "argmin": [self.argmin.real, self.argmin.imag],
            "verdict": self.verdict,
            "grid": self.grid.to_dict(),
            "truncation_warning": self.truncation_warning,
            "tail_estimate": self.tail,
        }


def class_test(f: NormalizedFunction, class_id: str,
               params: ClassParams | None = None) -> tuple[TaylorSeries, float]:
    """Test series and threshold of a class condition: Re test > threshold."""
    if class_id == "m":
        if params is None:
            raise ValueError("class 'm' needs ClassParams")
        return blended_operator(f, params), params.threshold
    if class_id == "generator":
        return f_over_z(f), 0.0
    if class_id == "a_half":
        return f_over_z(f), 0.5
    if class_id == "starlike_half":
        return starlike_quotient(f), 0.5
    if class_id == "convex":
        return convexity_quotient(f), 0.0
    raise ValueError(f"unknown class id {class_id!r}; expected one of {CLASS_IDS}")


def min_margin(f: NormalizedFunction, class_id: str,
               params: ClassParams | None = None,
               grid: DiskGrid | None = None) -> MembershipReport:
    """Worst half-plane margin of ``f`` against a class condition."""
    test, threshold = class_test(f, class_id, params)
    if grid is None:
        grid = DiskGrid.default(test)
    min_re, argmin = minimize_real_part(lambda z: evaluate_many(test, z), grid)
    margin = min_re - threshold
    tail = tail_estimate(test, max(grid.radii))
    warn = tail is None or tail > TOL_PASS / 10.0
    return MembershipReport(
        class_id=class_id,
        alpha=params.alpha if (class_id == "m" and params) else None,
        beta=params.beta if (class_id == "m" and params) else None,
        threshold=threshold,
        margin=margin,
        argmin=argmin,
        verdict=_verdict(margin),
        grid=grid,
        truncation_warning=warn,
        tail=tail,
    )


# -- plane-region sufficient condition for generators ------------------------

def _in_excluded_region(params: ClassParams, w: np.ndarray) -> np.ndarray:
    """Vectorized test for the parabolic exclusion region.

    The region is ``y^2 <= (x - 1 - beta)^2 - alpha^2`` intersected with a
    half-plane whose side flips with the sign of alpha.
    """
    x = w.real
    y = w.imag
    k = x - 1.0 - params.beta
    inside_parabola = y * y <= k * k - params.alpha ** 2
    edge = 1.0 + params.beta - params.alpha
    if params.alpha >= 0.0:
        return (x <= edge) & inside_parabola
    return (x >= edge) & inside_parabola


def delta_region_contains(params: ClassParams, w: complex) -> bool:
    """True iff ``w`` lies in the admissible region (the complement of the
    excluded parabolic set for this ``(alpha, beta)``)."""
    return not bool(_in_excluded_region(params, np.asarray([complex(w)]))[0])


@dataclass(frozen=True)
class DeltaAuditReport:
    """Consistency check of the region-based generator criterion.

    ``consistent`` is an implication: if every operator value on the grid
    stayed in the admissible region, the generator margin must not be
    negative beyond tolerance.  A range that leaves the region makes the
    audit vacuously consistent; the criterion is sufficient, not
    necessary, so nothing can be concluded in that case.
    """

    alpha: float
    beta: float
    n_points: int
    n_excluded: int
    all_in_delta: bool
    generator_margin: float
    generator_verdict: str
    consistent: bool

    def to_dict(self) -> dict:
        return {
            "alpha": self.alpha,
            "beta": self.beta,
            "n_points": self.n_points,
            "n_excluded": self.n_excluded,
            "all_in_delta": self.all_in_delta,
            "generator_margin": self.generator_margin,
            "generator_verdict": self.generator_verdict,
            "consistent": self.consistent,
        }


def delta_audit(f: NormalizedFunction, params: ClassParams,
                grid: DiskGrid | None = None) -> DeltaAuditReport:
    """Evaluate the blended operator on the grid and check the implication
    "range avoids the excluded region => f is a generator"."""
    g = blended_operator(f, params)
    if grid is None:
        grid = DiskGrid.default(g)
    pts = grid.points()
    excluded = _in_excluded_region(params, evaluate_many(g, pts))
    n_excl = int(excluded.sum())
    all_in = n_excl == 0
    gen = min_margin(f, "generator", grid=grid)
    consistent = (not all_in) or gen.margin >= -TOL_PASS
    return DeltaAuditReport(
        alpha=params.alpha,
        beta=params.beta,
        n_points=pts.size,
        n_excluded=n_excl,
        all_in_delta=all_in,
        generator_margin=gen.margin,
        generator_verdict=gen.verdict,
        consistent=consistent,
    )


# -- Denjoy-Wolff factorization ----------------------------------------------

@dataclass(frozen=True)
class BerksonPortaDecomposition:
    """Factorization f(z) = (z - tau)(1 - z conj(tau)) p(z).

    For normalized f the interior fixed point is pinned at the origin, so
    tau = 0 and p = f/z; the generator verdict is the margin of Re p > 0.
    """

    tau: complex
    p: TaylorSeries
    report: MembershipReport

    def reconstruction_error(self, f: NormalizedFunction,
                             grid: DiskGrid | None = None) -> float:
        grid = grid or DiskGrid.default(f.series)
        pts = grid.points()
        rebuilt = (pts - self.tau) * (1.0 - pts * np.conj(self.tau)) \
            * evaluate_many(self.p, pts)
        return float(np.abs(rebuilt - evaluate_many(f.series, pts)).max())


def berkson_porta(f: NormalizedFunction,
                  grid: DiskGrid | None = None) -> BerksonPortaDecomposition:
    p = f_over_z(f)
    report = min_margin(f, "generator", grid=grid)
    return BerksonPortaDecomposition(tau=0j, p=p, report=report)


# -- classical implication chain ----------------------------------------------

_CHAIN = ("convex", "starlike_half", "a_half", "generator")


@dataclass(frozen=True)
class MarxStrohhackerReport:
    margins: dict = field(default_factory=dict)
    verdicts: dict = field(default_factory=dict)
    chain_ok: bool = True

    def to_dict(self) -> dict:
        return {"margins": dict(self.margins),
                "verdicts": dict(self.verdicts),
                "chain_ok": self.chain_ok}


def marx_strohhacker_audit(f: NormalizedFunction,
                           grid: DiskGrid | None = None) -> MarxStrohhackerReport:
    """Check convex => starlike(1/2) => Re f/z > 1/2 => generator on verdicts.

    A violation is an antecedent that passes while its consequent fails;
    inconclusive verdicts break nothing.
    """
    margins: dict[str, float] = {}
    verdicts: dict[str, str] = {}
    for cid in _CHAIN:
        rep = min_margin(f, cid, grid=grid)
        margins[cid] = rep.margin
        verdicts[cid] = rep.verdict
    ok = True
    for a, b in zip(_CHAIN, _CHAIN[1:]):
        if verdicts[a] == "pass" and verdicts[b] == "fail":
            ok = False
    return MarxStrohhackerReport(margins=margins, verdicts=verdicts, chain_ok=ok)
