"""Base-2 codelength arithmetic and the elementary codes.

All codelengths in this package are idealized (non-integer) bit counts:
an event of probability p is charged -log2(p) bits, with probability 0
mapping to +inf. No ceiling rounding is ever applied, and no actual
bitstrings are emitted; everything downstream is pure accounting.
"""

from __future__ import annotations

import math
from typing import Iterable, Mapping, Sequence, Union

import numpy as np

from ._validation import check_positive_int, check_probability

__all__ = [
    "bits_of_prob",
    "integer_codelength",
    "uniform_codelength",
    "kraft_sum",
    "logsumexp2",
    "expected_codelength",
]

#: Absolute slack allowed when asserting Kraft sums and proper distributions.
KRAFT_TOL = 1e-9

CodelengthTable = Union[Mapping[object, float], Iterable[float]]


def bits_of_prob(p: float) -> float:
    """Codelength -log2(p) in bits of an event with probability ``p``.

    ``p == 0`` returns +inf (the event was given no codeword). Exact for
    p a power of two.
    """
    p = check_probability(p, "p")
    if p == 0.0:
        return math.inf
    return -math.log2(p)


def integer_codelength(k: int) -> float:
    """Length 2*log2(k) + 1 of the standard prefix code for integers k >= 1.

    The corresponding weights 2**-(2 log k + 1) sum to less than one, so
    the code is defective but valid.
    """
    k = check_positive_int(k, "k")
    return 2.0 * math.log2(k) + 1.0


def uniform_codelength(m: int) -> float:
    """Length log2(m) of the fixed-length code over ``m`` equiprobable outcomes."""
    m = check_positive_int(m, "m")
    return math.log2(m)


def kraft_sum(table: CodelengthTable) -> float:
    """Sum of 2**-L(z) over a finite codelength table.

    ``table`` may be a mapping from outcome to bits or a bare iterable of
    bit lengths. Callers assert <= 1 + tolerance for code validity;
    +inf entries contribute 0.
    """
    lengths = table.values() if isinstance(table, Mapping) else table
    arr = np.asarray(list(lengths), dtype=float)
    if arr.size and np.isnan(arr).any():
        raise ValueError("codelength table contains NaN")
    return float(np.sum(np.exp2(-arr)))


def logsumexp2(terms: Sequence[float]) -> float:
    """log2 of a sum of powers of two, evaluated stably in the log2 domain.

    Uses the usual max-shift; the reduction is index-ordered so repeated
    runs produce identical results. Entries may be -inf (absorbing zero);
    an empty input is an error.
    """
    arr = np.asarray(terms, dtype=float).ravel()
    if arr.size == 0:
        raise ValueError("logsumexp2 of an empty list is undefined")
    if np.isnan(arr).any():
        raise ValueError("logsumexp2 input contains NaN")
    m = float(np.max(arr))
    if m == -math.inf:
        return -math.inf
    if m == math.inf:
        return math.inf
    return m + math.log2(float(np.sum(np.exp2(arr - m))))


def expected_codelength(p: Sequence[float], q: Sequence[float]) -> float:
    """Expected bits E_P[-log2 Q] when coding P-distributed outcomes with Q.

    ``p`` must be a proper distribution; ``q`` may be defective. The two
    must cover the same finite outcome space, index by index. Outcomes
    with p = 0 contribute nothing even when q = 0 there.
    """
    parr = np.asarray(p, dtype=float).ravel()
    qarr = np.asarray(q, dtype=float).ravel()
    if parr.size != qarr.size:
        raise ValueError(f"mismatched outcome spaces: {parr.size} vs {qarr.size}")
    if parr.size == 0:
        raise ValueError("empty outcome space")
    if (parr < 0).any() or (qarr < 0).any():
        raise ValueError("negative probabilities")
    if abs(parr.sum() - 1.0) > KRAFT_TOL:
        raise ValueError(f"p is not a proper distribution (sums to {parr.sum()!r})")
    if qarr.sum() > 1.0 + KRAFT_TOL:
        raise ValueError(f"q sums to more than one ({qarr.sum()!r})")
    total = 0.0
    for pi, qi in zip(parr, qarr):
        if pi == 0.0:
            continue
        total += pi * (math.inf if qi == 0.0 else -math.log2(qi))
    return total
