"""Built-in normalized test functions.

These are the stock examples every command and test reaches for:

* ``identity``:  f(z) = z
* ``halfplane``: f(z) = z/(1-z), the convex half-plane map
* ``koebe``:     f(z) = z/(1-z)^2, starlike but not convex
* ``neglog``:    f(z) = -z - 2 log(1-z), a generator that is neither
  detected by convexity nor by starlikeness of order 1/2
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .series import NormalizedFunction, TaylorSeries, default_order

__all__ = ["identity", "halfplane", "koebe", "neglog", "named_function",
           "load_function", "BUILTIN_NAMES"]


def identity(order: int | None = None) -> NormalizedFunction:
    order = order or default_order()
    return NormalizedFunction(TaylorSeries.variable(order))


def halfplane(order: int | None = None) -> NormalizedFunction:
    """z/(1-z): coefficients 0, 1, 1, 1, ..."""
    order = order or default_order()
    c = np.ones(order + 1, dtype=complex)
    c[0] = 0.0
    return NormalizedFunction(TaylorSeries(c, order))


def koebe(order: int | None = None) -> NormalizedFunction:
    """z/(1-z)^2: coefficient of z^k is k."""
    order = order or default_order()
    return NormalizedFunction(TaylorSeries(np.arange(order + 1, dtype=complex), order))


def neglog(order: int | None = None) -> NormalizedFunction:
    """-z - 2 log(1-z): coefficients c1 = 1 and c_k = 2/k for k >= 2."""
    order = order or default_order()
    c = np.zeros(order + 1, dtype=complex)
    c[1] = 1.0
    k = np.arange(2, order + 1)
    c[2:] = 2.0 / k
    return NormalizedFunction(TaylorSeries(c, order))


_BUILTINS = {
    "id": identity,
    "identity": identity,
    "halfplane": halfplane,
    "koebe": koebe,
    "neglog": neglog,
}

BUILTIN_NAMES = ("id", "halfplane", "koebe", "neglog")


def named_function(name: str, order: int | None = None) -> NormalizedFunction:
    try:
        builder = _BUILTINS[name]
    except KeyError:
        raise ValueError(
            f"unknown function {name!r}; built-ins are {', '.join(BUILTIN_NAMES)}"
        ) from None
    return builder(order)


def load_function(spec: str, order: int | None = None) -> NormalizedFunction:
    """Resolve a built-in name or a path to a series JSON file.

    JSON input uses the series schema ``{"n": N, "coeffs": [[re, im], ...]}``
    and must be normalized (c0 = 0, c1 = 1) up to 1e-10 drift.
    """
    if spec in _BUILTINS:
        return named_function(spec, order)
    path = Path(spec)
    if not path.exists():
        raise ValueError(
            f"{spec!r} is neither a built-in function ({', '.join(BUILTIN_NAMES)}) "
            f"nor an existing JSON file")
    data = json.loads(path.read_text())
    s = TaylorSeries.from_dict(data)
    if order is not None and s.order < order:
        s = TaylorSeries(s.coeffs, order)
    return NormalizedFunction.from_series(s)
