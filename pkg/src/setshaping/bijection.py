"""Rank, unrank, and the order-preserving length-increasing injection.

A string's rank is its position in the exact order: information content
ascending, ties broken by count vector, strings within a class
lexicographic.  Shaping a length-n string means taking its rank r and
returning the rank-r string of length n+k over the same alphabet, which is
one of the a**n lowest-content strings of that longer length.  Unshaping
inverts this and rejects strings whose rank falls outside the image.

All rank arithmetic is exact integer work; no floats participate.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .compositions import (
    DEFAULT_COMPOSITION_CAP,
    check_composition_cap,
    class_order,
    multinomial,
)
from .errors import BlockLengthError, NotInImageError
from .source import composition_of, validate_symbols


@dataclass(frozen=True)
class ShapingParameters:
    """Alphabet size, block length n, and length surplus k of the map."""

    alphabet_size: int
    n: int
    k: int = 1

    def __post_init__(self):
        if self.alphabet_size < 2:
            raise ValueError("shaping needs an alphabet of at least two symbols")
        if self.n < 1:
            raise ValueError("block length must be positive")
        if self.k < 1:
            raise ValueError("length surplus must be positive")

    @property
    def output_length(self) -> int:
        return self.n + self.k

    def check_cap(self, cap: int = DEFAULT_COMPOSITION_CAP) -> None:
        check_composition_cap(self.output_length, self.alphabet_size, cap)


def _rank_within_class(symbols: Sequence[int], counts: Sequence[int]) -> int:
    """Lexicographic rank of the string among rearrangements of its class."""
    remaining = list(counts)
    m = len(symbols)
    size = multinomial(counts)
    rank = 0
    for s in symbols:
        for v in range(s):
            if remaining[v]:
                rank += size * remaining[v] // m
        size = size * remaining[s] // m
        remaining[s] -= 1
        m -= 1
    return rank


def _unrank_within_class(offset: int, counts: Sequence[int]) -> tuple[int, ...]:
    """Inverse of _rank_within_class for 0 <= offset < multinomial(counts)."""
    remaining = list(counts)
    m = sum(remaining)
    size = multinomial(counts)
    out = []
    for _ in range(m):
        total = 0
        for v, r in enumerate(remaining):
            if r == 0:
                continue
            here = size * r // m
            if offset < total + here:
                out.append(v)
                offset -= total
                size = here
                remaining[v] -= 1
                m -= 1
                break
            total += here
        else:
            raise AssertionError("offset exceeded the class size")
    return tuple(out)


def string_rank(
    symbols: Sequence[int],
    alphabet_size: int,
    cap: int = DEFAULT_COMPOSITION_CAP,
) -> int:
    """Exact position of the string in the order over its own length."""
    arr = validate_symbols(symbols, alphabet_size)
    if arr.size == 0:
        raise ValueError("a string must be nonempty")
    order = class_order(int(arr.size), alphabet_size, cap)
    counts = composition_of(arr, alphabet_size)
    seq = [int(s) for s in arr]
    return order.strings_before_class(counts) + _rank_within_class(seq, counts)


def string_unrank(
    rank: int,
    n: int,
    alphabet_size: int,
    cap: int = DEFAULT_COMPOSITION_CAP,
) -> tuple[int, ...]:
    """The rank-th string of length n; inverse of string_rank."""
    order = class_order(n, alphabet_size, cap)
    if not 0 <= rank < order.total_strings:
        raise ValueError(
            f"rank {rank} out of range for {alphabet_size}**{n} strings"
        )
    counts, offset = order.locate_string(rank)
    return _unrank_within_class(offset, counts)


def shape(
    symbols: Sequence[int],
    params: ShapingParameters,
    cap: int = DEFAULT_COMPOSITION_CAP,
) -> tuple[int, ...]:
    """Map a length-n string to its length n+k image of equal rank."""
    arr = validate_symbols(symbols, params.alphabet_size)
    if arr.size != params.n:
        raise BlockLengthError(f"expected a block of length {params.n}, got {arr.size}")
    rank = string_rank(arr, params.alphabet_size, cap)
    return string_unrank(rank, params.output_length, params.alphabet_size, cap)


def unshape(
    symbols: Sequence[int],
    params: ShapingParameters,
    cap: int = DEFAULT_COMPOSITION_CAP,
) -> tuple[int, ...]:
    """Invert shape; raises NotInImageError off the image of the map."""
    arr = validate_symbols(symbols, params.alphabet_size)
    if arr.size != params.output_length:
        raise BlockLengthError(
            f"expected a block of length {params.output_length}, got {arr.size}"
        )
    rank = string_rank(arr, params.alphabet_size, cap)
    limit = params.alphabet_size**params.n
    if rank >= limit:
        raise NotInImageError(
            f"rank {rank} exceeds the {limit} images of length-{params.n} strings"
        )
    return string_unrank(rank, params.n, params.alphabet_size, cap)


def in_image(
    symbols: Sequence[int],
    params: ShapingParameters,
    cap: int = DEFAULT_COMPOSITION_CAP,
) -> bool:
    """Whether a length n+k string is the image of some length-n string."""
    arr = validate_symbols(symbols, params.alphabet_size)
    if arr.size != params.output_length:
        raise BlockLengthError(
            f"expected a block of length {params.output_length}, got {arr.size}"
        )
    rank = string_rank(arr, params.alphabet_size, cap)
    return rank < params.alphabet_size**params.n
