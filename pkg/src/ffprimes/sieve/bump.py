"""Smooth even bump functions on [-1, 1] with value 1 at the origin."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np


@dataclass(frozen=True)
class BumpFn:
    """A bump with its derivative; identity (and caching) goes by label."""

    label: str
    fn: Callable[[np.ndarray], np.ndarray] = field(compare=False, repr=False)
    derivative: Callable[[np.ndarray], np.ndarray] = field(compare=False, repr=False)

    def __call__(self, x):
        scalar = np.ndim(x) == 0
        out = self.fn(np.atleast_1d(np.asarray(x, dtype=np.float64)))
        return float(out[0]) if scalar else out


def _mollifier(x: np.ndarray) -> np.ndarray:
    out = np.zeros_like(x)
    inside = np.abs(x) < 1
    xi = x[inside]
    out[inside] = np.exp(-xi * xi / (1 - xi * xi))
    return out


def _mollifier_derivative(x: np.ndarray) -> np.ndarray:
    out = np.zeros_like(x)
    inside = np.abs(x) < 1
    xi = x[inside]
    s = 1 - xi * xi
    out[inside] = -2 * xi / (s * s) * np.exp(-xi * xi / s)
    return out


MOLLIFIER = BumpFn("mollifier", _mollifier, _mollifier_derivative)

BUMPS = {MOLLIFIER.label: MOLLIFIER}


def get_bump(label: str) -> BumpFn:
    try:
        return BUMPS[label]
    except KeyError:
        from ..errors import InvalidInput
        raise InvalidInput(f"unknown bump {label!r}; known: {sorted(BUMPS)}") from None
