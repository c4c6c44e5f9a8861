"""Symbol sources and the two notions of per-string information content.

Strings are sequences of integer symbol indices in [0, a).  Information
content comes in two interpretations:

* literal: -sum_j log2 p(s_j), measured against the source probabilities;
* empirical: n*log2(n) - sum_v c_v*log2(c_v), measured against the string's
  own symbol counts c, so it depends only on the composition.

The shaping analysis tabulates the empirical interpretation; the literal one
stays available as a selectable mode.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import InvalidSymbolError

PROB_SUM_TOL = 1e-12


@dataclass(frozen=True)
class SourceEnsemble:
    """An i.i.d. symbol source over the alphabet {0, ..., a-1}."""

    probabilities: tuple[float, ...]

    def __post_init__(self):
        probs = tuple(float(p) for p in self.probabilities)
        object.__setattr__(self, "probabilities", probs)
        if len(probs) < 1:
            raise ValueError("alphabet must have at least one symbol")
        if any(p < 0.0 or p > 1.0 for p in probs):
            raise ValueError("probabilities must lie in [0, 1]")
        if abs(math.fsum(probs) - 1.0) > PROB_SUM_TOL:
            raise ValueError("probabilities must sum to 1")

    @classmethod
    def uniform(cls, alphabet_size: int) -> "SourceEnsemble":
        if alphabet_size < 1:
            raise ValueError("alphabet must have at least one symbol")
        return cls((1.0 / alphabet_size,) * alphabet_size)

    @property
    def alphabet_size(self) -> int:
        return len(self.probabilities)

    @property
    def is_uniform(self) -> bool:
        first = self.probabilities[0]
        return all(p == first for p in self.probabilities)

    def entropy_bits(self) -> float:
        """Shannon entropy of one symbol, in bits."""
        return -math.fsum(p * math.log2(p) for p in self.probabilities if p > 0.0)


def _as_int_array(symbols: Sequence[int]) -> np.ndarray:
    arr = np.asarray(symbols)
    if arr.ndim != 1:
        raise ValueError("a string must be one-dimensional")
    if arr.dtype.kind == "f":
        # a fractional symbol is corrupt input, not something to truncate
        if arr.size and np.any(np.mod(arr, 1) != 0):
            raise InvalidSymbolError("symbols must be whole numbers")
        return arr.astype(np.int64)
    if arr.dtype.kind in "iub":
        return arr.astype(np.int64)
    raise InvalidSymbolError(f"symbols must be integers, not {arr.dtype}")


def validate_symbols(symbols: Sequence[int], alphabet_size: int) -> np.ndarray:
    """Return the string as an int64 array, rejecting out-of-range symbols."""
    arr = _as_int_array(symbols)
    if arr.size and (arr.min() < 0 or arr.max() >= alphabet_size):
        raise InvalidSymbolError(
            f"symbols must lie in [0, {alphabet_size}); "
            f"saw values in [{arr.min()}, {arr.max()}]"
        )
    return arr


def composition_of(symbols: Sequence[int], alphabet_size: int) -> tuple[int, ...]:
    """Per-symbol count vector of the string."""
    arr = validate_symbols(symbols, alphabet_size)
    return tuple(int(c) for c in np.bincount(arr, minlength=alphabet_size))


def string_probability(ensemble: SourceEnsemble, symbols: Sequence[int]) -> float:
    """Probability of the exact string under the i.i.d. source."""
    arr = validate_symbols(symbols, ensemble.alphabet_size)
    probs = np.asarray(ensemble.probabilities)
    return float(np.prod(probs[arr]))


def literal_information_content(
    ensemble: SourceEnsemble, symbols: Sequence[int]
) -> float:
    """-sum_j log2 p(s_j); rejects symbols the source cannot emit."""
    arr = validate_symbols(symbols, ensemble.alphabet_size)
    if arr.size == 0:
        raise ValueError("a string must be nonempty")
    counts = np.bincount(arr, minlength=ensemble.alphabet_size)
    total = 0.0
    for c, p in zip(counts, ensemble.probabilities):
        if c == 0:
            continue
        if p == 0.0:
            raise InvalidSymbolError("string uses a zero-probability symbol")
        total -= c * math.log2(p)
    return total


def empirical_information_content(
    symbols: Sequence[int], alphabet_size: int | None = None
) -> float:
    """n*log2(n) - sum_v c_v*log2(c_v) from the string's own counts."""
    if alphabet_size is None:
        arr = _as_int_array(symbols)
        if arr.size and arr.min() < 0:
            raise InvalidSymbolError("symbols must be nonnegative")
        counts = np.bincount(arr) if arr.size else np.zeros(0, dtype=np.int64)
    else:
        arr = validate_symbols(symbols, alphabet_size)
        counts = np.bincount(arr, minlength=alphabet_size)
    n = int(arr.size)
    if n == 0:
        raise ValueError("a string must be nonempty")
    return n * math.log2(n) - math.fsum(
        int(c) * math.log2(int(c)) for c in counts if c > 1
    )


def information_content(
    ensemble: SourceEnsemble,
    symbols: Sequence[int],
    interpretation: str = "empirical",
) -> float:
    """Dispatch between the two interpretations by name."""
    if interpretation == "empirical":
        return empirical_information_content(symbols, ensemble.alphabet_size)
    if interpretation == "literal":
        return literal_information_content(ensemble, symbols)
    raise ValueError(f"unknown interpretation {interpretation!r}")
