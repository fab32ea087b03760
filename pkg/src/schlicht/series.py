"""Truncated complex power series on the unit disk.

Every other module computes on one representation: a dense vector of
complex Taylor coefficients ``c0..cN`` truncated at a fixed order ``N``.
A :class:`TaylorSeries` is an immutable value; all operations are pure
functions returning new series, so instances can be shared freely across
threads.

Conventions:

* Binary operations align operands by zero-padding to the larger order.
  Padding treats the unknown tail as zero, which is adequate because the
  working order (default 96) leaves ample headroom above the coefficients
  any caller inspects.
* ``log1`` and ``pow_real`` anchor the principal branch at constant term
  exactly 1; ``exp0`` requires constant term 0.  These are the only
  transcendental operations the rest of the toolkit needs.
* ``derivative`` lowers the truncation order by one, ``integrate0``
  raises it by one, so the round trip ``derivative(integrate0(s))``
  reproduces ``s`` without losing the top coefficient.

Series serialize to JSON as ``{"n": N, "coeffs": [[re, im], ...]}``.
"""

from __future__ import annotations

import json
import math
import os
from typing import Iterable

import numpy as np
from numpy.polynomial import polynomial as _npoly

__all__ = [
    "DEFAULT_ORDER",
    "ConstantTermError",
    "EvaluationDomainError",
    "TaylorSeries",
    "NormalizedFunction",
    "add",
    "sub",
    "mul",
    "scale",
    "div",
    "derivative",
    "integrate0",
    "times_z",
    "div_z",
    "log1",
    "exp0",
    "pow_real",
    "evaluate",
    "evaluate_many",
    "tail_estimate",
    "default_order",
]

DEFAULT_ORDER = 96

# Constant terms are compared against this when an operation requires an
# exact anchor (pivot of a division, branch point of log/pow).
_C0_TOL = 1e-12


class ConstantTermError(ValueError):
    """The constant term does not satisfy the operation's requirement."""


class EvaluationDomainError(ValueError):
    """Evaluation point lies outside the open unit disk."""


def default_order() -> int:
    """Working truncation order, overridable via ``SCHLICHT_TRUNC``."""
    raw = os.environ.get("SCHLICHT_TRUNC")
    if raw is None:
        return DEFAULT_ORDER
    n = int(raw)
    if n < 1:
        raise ValueError(f"SCHLICHT_TRUNC must be >= 1, got {n}")
    return n


class TaylorSeries:
    """Dense truncated power series ``c0 + c1 z + ... + cN z^N``.

    ``TaylorSeries(coeffs)`` takes the order from ``len(coeffs) - 1``;
    passing ``order`` explicitly pads with zeros or truncates.  The
    coefficient array is complex and read-only.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable[complex], order: int | None = None):
        c = np.asarray(list(coeffs) if not isinstance(coeffs, np.ndarray) else coeffs,
                       dtype=complex)
        if c.ndim != 1 or c.size == 0:
            raise ValueError("coefficients must form a non-empty 1-D sequence")
        if order is None:
            order = c.size - 1
        if order < 1:
            raise ValueError(f"truncation order must be >= 1, got {order}")
        if c.size - 1 > order:
            c = c[: order + 1]
        elif c.size - 1 < order:
            c = np.concatenate([c, np.zeros(order + 1 - c.size, dtype=complex)])
        else:
            c = c.copy()
        if not np.all(np.isfinite(c.real)) or not np.all(np.isfinite(c.imag)):
            raise ValueError("coefficients must be finite (no NaN/Inf)")
        c.setflags(write=False)
        self._c = c

    @property
    def coeffs(self) -> np.ndarray:
        """Read-only coefficient array of length ``order + 1``."""
        return self._c

    @property
    def order(self) -> int:
        return self._c.size - 1

    def coefficient(self, k: int) -> complex:
        """Coefficient of ``z**k`` (0 beyond the truncation order)."""
        if k < 0:
            raise IndexError("negative power")
        return complex(self._c[k]) if k <= self.order else 0j

    @classmethod
    def zero(cls, order: int) -> "TaylorSeries":
        return cls(np.zeros(order + 1), order)

    @classmethod
    def one(cls, order: int) -> "TaylorSeries":
        c = np.zeros(order + 1, dtype=complex)
        c[0] = 1.0
        return cls(c, order)

    @classmethod
    def variable(cls, order: int) -> "TaylorSeries":
        """The series of ``z`` itself."""
        c = np.zeros(order + 1, dtype=complex)
        c[1] = 1.0
        return cls(c, order)

    @classmethod
    def constant(cls, value: complex, order: int) -> "TaylorSeries":
        c = np.zeros(order + 1, dtype=complex)
        c[0] = value
        return cls(c, order)

    # -- arithmetic sugar (the named module functions are the primary API)

    def __add__(self, other):
        if isinstance(other, TaylorSeries):
            return add(self, other)
        c = self._c.copy()
        c[0] += other
        return TaylorSeries(c)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, TaylorSeries):
            return sub(self, other)
        c = self._c.copy()
        c[0] -= other
        return TaylorSeries(c)

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __neg__(self):
        return TaylorSeries(-self._c)

    def __mul__(self, other):
        if isinstance(other, TaylorSeries):
            return mul(self, other)
        return scale(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, TaylorSeries):
            return div(self, other)
        return scale(self, 1.0 / other)

    def __eq__(self, other):
        return (isinstance(other, TaylorSeries)
                and self.order == other.order
                and bool(np.array_equal(self._c, other._c)))

    __hash__ = None  # value type, but arrays make a stable hash pointless

    def __repr__(self):
        head = np.array2string(self._c[: min(5, self._c.size)], precision=6)
        return f"TaylorSeries(order={self.order}, coeffs={head}...)"

    # -- JSON

    def to_dict(self) -> dict:
        return {"n": self.order,
                "coeffs": [[float(c.real), float(c.imag)] for c in self._c]}

    @classmethod
    def from_dict(cls, data: dict) -> "TaylorSeries":
        coeffs = [complex(re, im) for re, im in data["coeffs"]]
        n = int(data["n"])
        if len(coeffs) != n + 1:
            raise ValueError(f"coeffs length {len(coeffs)} does not match n={n}")
        return cls(coeffs, n)

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_json(cls, text: str) -> "TaylorSeries":
        return cls.from_dict(json.loads(text))


class NormalizedFunction:
    """A series with ``c0 = 0`` and ``c1 = 1`` exactly (class-A normalization)."""

    __slots__ = ("_s",)

    def __init__(self, series: TaylorSeries):
        c = series.coeffs
        if c[0] != 0 or c[1] != 1:
            raise ValueError(
                f"not normalized: c0={c[0]!r}, c1={c[1]!r} (need exactly 0 and 1)")
        self._s = series

    @classmethod
    def from_series(cls, series: TaylorSeries, tol: float = 1e-10) -> "NormalizedFunction":
        """Snap a nearly-normalized series to exact class-A form.

        Floating drift up to ``tol`` in ``c0`` and ``c1`` is zeroed out;
        larger drift is an error rather than something to hide.
        """
        c = series.coeffs
        drift = max(abs(c[0]), abs(c[1] - 1.0))
        if drift > tol:
            raise ValueError(f"normalization drift {drift:.3e} exceeds {tol:.1e}")
        fixed = c.copy()
        fixed[0] = 0.0
        fixed[1] = 1.0
        return cls(TaylorSeries(fixed))

    @property
    def series(self) -> TaylorSeries:
        return self._s

    @property
    def order(self) -> int:
        return self._s.order

    @property
    def a2(self) -> complex:
        return self._s.coefficient(2)

    @property
    def a3(self) -> complex:
        return self._s.coefficient(3)

    def coefficient(self, k: int) -> complex:
        return self._s.coefficient(k)

    def __eq__(self, other):
        return isinstance(other, NormalizedFunction) and self._s == other._s

    __hash__ = None

    def __repr__(self):
        return f"NormalizedFunction(order={self.order}, a2={self.a2:.6g}, a3={self.a3:.6g})"

    def to_dict(self) -> dict:
        return self._s.to_dict()

    @classmethod
    def from_dict(cls, data: dict) -> "NormalizedFunction":
        return cls(TaylorSeries.from_dict(data))


def _aligned(a: TaylorSeries, b: TaylorSeries) -> tuple[np.ndarray, np.ndarray, int]:
    n = max(a.order, b.order)
    ca = np.concatenate([a.coeffs, np.zeros(n - a.order, dtype=complex)])
    cb = np.concatenate([b.coeffs, np.zeros(n - b.order, dtype=complex)])
    return ca, cb, n


def add(a: TaylorSeries, b: TaylorSeries) -> TaylorSeries:
    ca, cb, n = _aligned(a, b)
    return TaylorSeries(ca + cb, n)


def sub(a: TaylorSeries, b: TaylorSeries) -> TaylorSeries:
    ca, cb, n = _aligned(a, b)
    return TaylorSeries(ca - cb, n)


def scale(a: TaylorSeries, c: complex) -> TaylorSeries:
    return TaylorSeries(a.coeffs * c, a.order)


def mul(a: TaylorSeries, b: TaylorSeries) -> TaylorSeries:
    """Cauchy product truncated at the (padded) common order."""
    ca, cb, n = _aligned(a, b)
    return TaylorSeries(np.convolve(ca, cb)[: n + 1], n)


def div(a: TaylorSeries, b: TaylorSeries) -> TaylorSeries:
    """Quotient ``q`` with ``q * b == a`` up to the common order.

    The forward substitution ``q[k] = (a[k] - sum_{i<k} q[i] b[k-i]) / b[0]``
    requires a non-vanishing constant term in the divisor.
    """
    if abs(b.coeffs[0]) < _C0_TOL:
        raise ConstantTermError(
            f"division by series with vanishing constant term {b.coeffs[0]!r}")
    ca, cb, n = _aligned(a, b)
    q = np.zeros(n + 1, dtype=complex)
    b0 = cb[0]
    for k in range(n + 1):
        acc = ca[k]
        if k:
            acc = acc - np.dot(q[:k], cb[k:0:-1])
        q[k] = acc / b0
    return TaylorSeries(q, n)


def derivative(s: TaylorSeries) -> TaylorSeries:
    """Termwise derivative; the order drops by one (floor at 1)."""
    c = s.coeffs[1:] * np.arange(1, s.order + 1)
    if c.size == 1:
        c = np.concatenate([c, [0j]])
    return TaylorSeries(c)


def integrate0(s: TaylorSeries) -> TaylorSeries:
    """Antiderivative vanishing at 0; the order rises by one."""
    c = np.zeros(s.order + 2, dtype=complex)
    c[1:] = s.coeffs / np.arange(1, s.order + 2)
    return TaylorSeries(c)


def times_z(s: TaylorSeries) -> TaylorSeries:
    """Multiply by ``z`` (coefficient shift up, order + 1)."""
    c = np.zeros(s.order + 2, dtype=complex)
    c[1:] = s.coeffs
    return TaylorSeries(c)


def div_z(s: TaylorSeries) -> TaylorSeries:
    """Divide by ``z``; requires a vanishing constant term."""
    if abs(s.coeffs[0]) > _C0_TOL:
        raise ConstantTermError(
            f"cannot divide by z: constant term {s.coeffs[0]!r} is not 0")
    c = s.coeffs[1:]
    if c.size == 1:
        c = np.concatenate([c, [0j]])
    return TaylorSeries(c)


def log1(s: TaylorSeries) -> TaylorSeries:
    """Principal logarithm of a series with constant term exactly 1.

    Uses the recursion obtained from ``s' = s * L'``:
    ``L[k] = s[k] - (1/k) * sum_{j=1}^{k-1} j L[j] s[k-j]``.
    """
    a = s.coeffs
    if abs(a[0] - 1.0) > _C0_TOL:
        raise ConstantTermError(f"log1 requires constant term 1, got {a[0]!r}")
    n = s.order
    out = np.zeros(n + 1, dtype=complex)
    for k in range(1, n + 1):
        acc = a[k]
        if k > 1:
            acc = acc - np.dot(np.arange(1, k) * out[1:k], a[k - 1:0:-1]) / k
        out[k] = acc
    return TaylorSeries(out, n)


def exp0(s: TaylorSeries) -> TaylorSeries:
    """Exponential of a series with constant term exactly 0.

    Uses the recursion from ``E' = s' * E``:
    ``E[k] = (1/k) * sum_{j=1}^{k} j s[j] E[k-j]``.
    """
    a = s.coeffs
    if abs(a[0]) > _C0_TOL:
        raise ConstantTermError(f"exp0 requires constant term 0, got {a[0]!r}")
    n = s.order
    out = np.zeros(n + 1, dtype=complex)
    out[0] = 1.0
    ja = np.arange(n + 1) * a
    for k in range(1, n + 1):
        out[k] = np.dot(ja[1:k + 1], out[k - 1::-1][:k]) / k
    return TaylorSeries(out, n)


def pow_real(s: TaylorSeries, c: float) -> TaylorSeries:
    """Real power ``s**c`` on the principal branch anchored at ``s(0) = 1``."""
    if isinstance(c, complex):
        raise TypeError("exponent must be real")
    if abs(s.coeffs[0] - 1.0) > _C0_TOL:
        raise ConstantTermError(
            f"pow_real requires constant term 1, got {s.coeffs[0]!r}")
    if c == 1.0:
        return s
    return exp0(scale(log1(s), c))


def evaluate(s: TaylorSeries, z: complex, check_domain: bool = True) -> complex:
    """Horner partial sum at a point of the open unit disk."""
    if check_domain and abs(z) >= 1.0:
        raise EvaluationDomainError(f"|z| = {abs(z)} is not < 1")
    acc = 0j
    for c in s.coeffs[::-1]:
        acc = acc * z + c
    return acc


def evaluate_many(s: TaylorSeries, zs: np.ndarray, check_domain: bool = True) -> np.ndarray:
    """Vectorized evaluation on an array of disk points."""
    zs = np.asarray(zs, dtype=complex)
    if check_domain and zs.size and np.abs(zs).max() >= 1.0:
        raise EvaluationDomainError("all evaluation points must satisfy |z| < 1")
    return _npoly.polyval(zs, s.coeffs)


def tail_estimate(s: TaylorSeries, r: float) -> float | None:
    """Estimated magnitude of the dropped tail ``sum_{k>N} |c_k| r^k``.

    Fits geometric decay ``|c_k| ~ A * rho**k`` to the top coefficients and
    sums the extrapolated tail.  Returns ``None`` when the fit gives
    ``rho * r >= 1`` (tail not summable from the available evidence), and
    0.0 for series whose top coefficients are identically zero
    (polynomials below the truncation order).
    """
    n = s.order
    window = min(16, n)
    mags = np.abs(s.coeffs[-window:])
    top = mags.max()
    if top == 0.0:
        return 0.0
    ks = np.arange(n - window + 1, n + 1)
    keep = mags > top * 1e-280
    if keep.sum() >= 4:
        slope, intercept = np.polyfit(ks[keep], np.log(mags[keep]), 1)
        rho = math.exp(slope)
        amp = math.exp(intercept)
    else:
        # too sparse to fit: assume no decay beyond the observed ceiling
        rho, amp = 1.0, top
    x = rho * r
    if x >= 1.0 - 1e-9:
        return None
    return amp * x ** (n + 1) / (1.0 - x)
