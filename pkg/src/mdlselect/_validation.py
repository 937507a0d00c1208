"""Input validation helpers shared across the package."""

from __future__ import annotations

import math
import operator
from typing import Any

import numpy as np


def check_probability(p: float, name: str = "p") -> float:
    """Validate a single probability and return it as a float."""
    p = float(p)
    if not math.isfinite(p):
        raise ValueError(f"{name} must be finite, got {p!r}")
    if p < 0.0 or p > 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {p!r}")
    return p


def check_positive(x: float, name: str = "x") -> float:
    x = float(x)
    if not math.isfinite(x) or x <= 0.0:
        raise ValueError(f"{name} must be a positive finite real, got {x!r}")
    return x


def check_positive_int(k: Any, name: str = "k") -> int:
    try:
        k = operator.index(k)
    except TypeError:
        raise ValueError(f"{name} must be an integer, got {k!r}") from None
    if k < 1:
        raise ValueError(f"{name} must be >= 1, got {k}")
    return k


def check_non_negative_int(k: Any, name: str = "k") -> int:
    try:
        k = operator.index(k)
    except TypeError:
        raise ValueError(f"{name} must be an integer, got {k!r}") from None
    if k < 0:
        raise ValueError(f"{name} must be >= 0, got {k}")
    return k


def as_binary_sequence(x: Any) -> np.ndarray:
    """Coerce ``x`` to a 1-d array of {0, 1} symbols.

    Accepts array-likes of integers or a string of '0'/'1' characters.
    Raises ``ValueError`` on empty input or symbols outside {0, 1}.
    """
    if isinstance(x, str):
        bad = set(x) - {"0", "1"}
        if bad:
            raise ValueError(f"binary string contains non-binary characters: {sorted(bad)}")
        arr = np.frombuffer(x.encode("ascii"), dtype=np.uint8) - ord("0")
        arr = arr.astype(np.int8)
    else:
        arr = np.asarray(x)
        if arr.ndim != 1:
            arr = np.ravel(arr)
        if arr.size and not np.isin(arr, (0, 1)).all():
            raise ValueError("binary sequence may only contain 0 and 1")
        arr = arr.astype(np.int8)
    if arr.size == 0:
        raise ValueError("binary sequence must contain at least one symbol")
    return arr


def as_real_sequence(x: Any, name: str = "x") -> np.ndarray:
    arr = np.asarray(x, dtype=float).ravel()
    if arr.size == 0:
        raise ValueError(f"{name} must contain at least one value")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains NaN or Inf")
    return arr
