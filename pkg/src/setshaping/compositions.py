"""Exact combinatorics over composition classes of symbol strings.

A composition is the per-symbol count vector of a string over an alphabet of
size a; every string in a composition class shares its empirical information
content.  For a fixed total n, comparing the contents

    n*log2(n) - sum_v c_v*log2(c_v)

reduces to comparing the integer products prod_v c_v**c_v, which makes the
ordering exact: floats never decide a placement and ties are detected
reliably.  The total order used throughout is information content ascending
(order product descending), with equal-content classes ranked by their count
vectors ascending lexicographically, and the strings inside a class ordered
lexicographically by symbol index.

Compositions that share the same multiset of counts are permutations of one
another, so they share their product, class size, and information content.
ClassOrder therefore aggregates by partition of n and only expands individual
count vectors on demand; the partition count grows polynomially in n where
the composition count grows like n**(a-1), which keeps n around 100 cheap
while staying exact.
"""

from __future__ import annotations

import heapq
import math
import threading
from bisect import bisect_right
from collections import Counter
from typing import Iterator, Sequence

import numpy as np

from .errors import ResourceLimitError

# Refuse exact enumeration beyond this many composition classes by default.
DEFAULT_COMPOSITION_CAP = 10**8


def composition_count(n: int, a: int) -> int:
    """Number of compositions of n into a nonnegative parts."""
    if n < 0 or a < 1:
        raise ValueError("need n >= 0 and a >= 1")
    return math.comb(n + a - 1, a - 1)


def check_composition_cap(n: int, a: int, cap: int = DEFAULT_COMPOSITION_CAP) -> int:
    """Return composition_count(n, a), raising ResourceLimitError above cap."""
    count = composition_count(n, a)
    if count > cap:
        raise ResourceLimitError(
            f"{count} composition classes for n={n}, a={a} "
            f"exceeds the cap of {cap}"
        )
    return count


def multinomial(counts: Sequence[int]) -> int:
    """Number of distinct strings with the given composition, n!/prod(c!)."""
    result = 1
    total = 0
    for c in counts:
        if c < 0:
            raise ValueError("counts must be nonnegative")
        total += c
        result *= math.comb(total, c)
    return result


def order_product(counts: Sequence[int]) -> int:
    """prod_v c_v**c_v with 0**0 = 1; larger product means lower content."""
    result = 1
    for c in counts:
        if c > 1:
            result *= c**c
    return result


def composition_info_bits(counts: Sequence[int]) -> float:
    """Empirical information content shared by every string in the class."""
    n = sum(counts)
    if n <= 0:
        raise ValueError("composition must have positive total")
    return n * math.log2(n) - math.fsum(c * math.log2(c) for c in counts if c > 1)


def exact_compare(c1: Sequence[int], c2: Sequence[int]) -> int:
    """-1, 0, or +1 ordering two equal-total compositions exactly.

    Lower information content first; exact ties fall back to the count
    vectors compared lexicographically.
    """
    if sum(c1) != sum(c2):
        raise ValueError("compositions must have equal totals")
    p1, p2 = order_product(c1), order_product(c2)
    if p1 != p2:
        return -1 if p1 > p2 else 1
    t1, t2 = tuple(c1), tuple(c2)
    if t1 == t2:
        return 0
    return -1 if t1 < t2 else 1


def enumerate_compositions(n: int, a: int) -> Iterator[tuple[int, ...]]:
    """All compositions of n into a parts, lexicographically ascending."""
    if a < 1:
        raise ValueError("need a >= 1")
    if a == 1:
        yield (n,)
        return
    for head in range(n + 1):
        for rest in enumerate_compositions(n - head, a - 1):
            yield (head,) + rest


def class_weight(probabilities: Sequence[float], counts: Sequence[int]) -> float:
    """Probability that an i.i.d. draw of sum(counts) symbols lands in the class."""
    if len(probabilities) != len(counts):
        raise ValueError("probability vector and composition sizes differ")
    log_p = 0.0
    for p, c in zip(probabilities, counts):
        if c == 0:
            continue
        if p == 0.0:
            return 0.0
        log_p += c * math.log(p)
    try:
        scale = float(multinomial(counts))
    except OverflowError:
        scale = None
    if scale is None or scale == math.inf:
        log_scale = math.lgamma(sum(counts) + 1) - math.fsum(
            math.lgamma(c + 1) for c in counts
        )
        return math.exp(log_scale + log_p)
    return scale * math.exp(log_p)


def _partitions(n: int, slots: int, max_part: int) -> Iterator[tuple[int, ...]]:
    """Partitions of n into at most `slots` parts each <= max_part, descending."""
    if n == 0:
        yield ()
        return
    if slots == 0:
        return
    lowest = -(-n // slots)
    for first in range(min(n, max_part), lowest - 1, -1):
        for rest in _partitions(n - first, slots - 1, first):
            yield (first,) + rest


def _padded_multiset(partition: Sequence[int], a: int) -> Counter:
    counts = Counter(partition)
    counts[0] += a - len(partition)
    return counts


def _arrangements(multiset: Counter, slots: int) -> int:
    """Distinct sequences that use every element of the multiset once."""
    result = math.factorial(slots)
    for m in multiset.values():
        if m > 1:
            result //= math.factorial(m)
    return result


def _vector_count(partition: Sequence[int], a: int) -> int:
    """Number of distinct compositions that sort to this partition."""
    return _arrangements(_padded_multiset(partition, a), a)


def _perms_lex_below(partition: Sequence[int], a: int, target: Sequence[int]) -> int:
    """Count a-length rearrangements of the padded partition lex-below target."""
    remaining = _padded_multiset(partition, a)
    below = 0
    slots = a
    for value in target:
        for v in sorted(remaining):
            if v >= value:
                break
            if remaining[v] == 0:
                continue
            remaining[v] -= 1
            below += _arrangements(remaining, slots - 1)
            remaining[v] += 1
        if remaining[value] == 0:
            break
        remaining[value] -= 1
        slots -= 1
    return below


def _lex_vectors(partition: Sequence[int], a: int) -> Iterator[tuple[int, ...]]:
    """Distinct padded count vectors of the partition, lex ascending."""
    vec = sorted(list(partition) + [0] * (a - len(partition)))
    while True:
        yield tuple(vec)
        i = a - 2
        while i >= 0 and vec[i] >= vec[i + 1]:
            i -= 1
        if i < 0:
            return
        j = a - 1
        while vec[j] <= vec[i]:
            j -= 1
        vec[i], vec[j] = vec[j], vec[i]
        vec[i + 1 :] = reversed(vec[i + 1 :])


class ClassOrder:
    """The exact total order over all compositions of n into a parts.

    Storage and build time scale with the number of partitions of n.  A tie
    group is a maximal run of compositions sharing one exact order product
    (hence one information content); groups are held sorted, content
    ascending, together with exact string and class totals and prefix sums,
    so rank and selection queries never materialize the composition list.
    """

    def __init__(self, n: int, a: int, cap: int = DEFAULT_COMPOSITION_CAP):
        if n < 1 or a < 1:
            raise ValueError("need n >= 1 and a >= 1")
        check_composition_cap(n, a, cap)
        self.n = n
        self.alphabet_size = a
        self.total_strings = a**n

        by_product: dict[int, list[tuple[int, ...]]] = {}
        for part in _partitions(n, a, n):
            by_product.setdefault(order_product(part), []).append(part)

        self.group_products: list[int] = sorted(by_product, reverse=True)
        self._group_index = {p: i for i, p in enumerate(self.group_products)}
        self.group_partitions: list[list[tuple[int, ...]]] = [
            sorted(by_product[p]) for p in self.group_products
        ]
        # Per partition: strings per class, and number of classes.
        self._class_sizes = [
            [multinomial(part) for part in parts] for parts in self.group_partitions
        ]
        self._vector_counts = [
            [_vector_count(part, a) for part in parts]
            for parts in self.group_partitions
        ]
        self.group_class_totals = [
            sum(v) for v in self._vector_counts
        ]
        self.group_string_totals = [
            sum(size * v for size, v in zip(sizes, vectors))
            for sizes, vectors in zip(self._class_sizes, self._vector_counts)
        ]
        self.group_infos = np.array(
            [composition_info_bits(parts[0]) for parts in self.group_partitions],
            dtype=np.float64,
        )

        prefix = [0]
        for total in self.group_string_totals:
            prefix.append(prefix[-1] + total)
        self._string_prefix = prefix
        if prefix[-1] != self.total_strings:
            raise AssertionError("group totals disagree with a**n")

        class_prefix = [0]
        for total in self.group_class_totals:
            class_prefix.append(class_prefix[-1] + total)
        self._class_prefix = class_prefix
        self.num_compositions = class_prefix[-1]

    # -- lookups ---------------------------------------------------------

    def group_of(self, counts: Sequence[int]) -> int:
        """Index of the tie group containing the composition."""
        try:
            return self._group_index[order_product(counts)]
        except KeyError:
            raise ValueError(f"{tuple(counts)} is not a composition of n={self.n}")

    def class_size(self, counts: Sequence[int]) -> int:
        """Strings in the composition's class (multinomial coefficient)."""
        return multinomial(counts)

    def strings_before_class(self, counts: Sequence[int]) -> int:
        """Exact number of strings ranked before the first string of the class."""
        counts = tuple(counts)
        if len(counts) != self.alphabet_size or sum(counts) != self.n:
            raise ValueError("composition does not match this order")
        gi = self.group_of(counts)
        total = self._string_prefix[gi]
        for part, size in zip(self.group_partitions[gi], self._class_sizes[gi]):
            total += size * _perms_lex_below(part, self.alphabet_size, counts)
        return total

    def classes_before(self, counts: Sequence[int]) -> int:
        """Exact number of classes ranked before the composition."""
        counts = tuple(counts)
        gi = self.group_of(counts)
        total = self._class_prefix[gi]
        for part in self.group_partitions[gi]:
            total += _perms_lex_below(part, self.alphabet_size, counts)
        return total

    def locate_string(self, index: int) -> tuple[tuple[int, ...], int]:
        """Composition holding the index-th string overall, plus the offset within it."""
        if not 0 <= index < self.total_strings:
            raise ValueError(f"string index {index} out of range")
        gi = bisect_right(self._string_prefix, index) - 1
        return self._select_in_group(gi, index - self._string_prefix[gi])

    def info_at(self, index: int) -> float:
        """Information content of the string at the given position."""
        if not 0 <= index < self.total_strings:
            raise ValueError(f"string index {index} out of range")
        gi = bisect_right(self._string_prefix, index) - 1
        return float(self.group_infos[gi])

    def _select_in_group(self, gi: int, t: int) -> tuple[tuple[int, ...], int]:
        a = self.alphabet_size
        active = [
            [dict(_padded_multiset(part, a)), size]
            for part, size in zip(self.group_partitions[gi], self._class_sizes[gi])
        ]
        vector: list[int] = []
        slots = a
        for _ in range(a):
            values = sorted({v for rem, _ in active for v in rem if rem[v] > 0})
            for v in values:
                weight = 0
                for rem, size in active:
                    if rem.get(v, 0) > 0:
                        rem[v] -= 1
                        weight += size * _arrangements(Counter(rem), slots - 1)
                        rem[v] += 1
                if t < weight:
                    vector.append(v)
                    survivors = []
                    for rem, size in active:
                        if rem.get(v, 0) > 0:
                            rem[v] -= 1
                            survivors.append([rem, size])
                    active = survivors
                    slots -= 1
                    break
                t -= weight
            else:
                raise AssertionError("offset exceeded the tie group")
        return tuple(vector), t

    # -- iteration -------------------------------------------------------

    def iter_group_classes(self, gi: int) -> Iterator[tuple[tuple[int, ...], int]]:
        """(composition, class size) pairs of one tie group, lex ascending."""
        parts = self.group_partitions[gi]
        sizes = self._class_sizes[gi]
        if len(parts) == 1:
            size = sizes[0]
            for vec in _lex_vectors(parts[0], self.alphabet_size):
                yield vec, size
            return

        def stream(part: tuple[int, ...], size: int):
            for vec in _lex_vectors(part, self.alphabet_size):
                yield vec, size

        streams = [stream(p, s) for p, s in zip(parts, sizes)]
        yield from heapq.merge(*streams, key=lambda item: item[0])

    def iter_classes(self) -> Iterator[tuple[tuple[int, ...], int]]:
        """Every (composition, class size) pair in exact order."""
        for gi in range(len(self.group_products)):
            yield from self.iter_group_classes(gi)


_ORDER_CACHE: dict[tuple[int, int], ClassOrder] = {}
_ORDER_LOCK = threading.Lock()


def class_order(n: int, a: int, cap: int = DEFAULT_COMPOSITION_CAP) -> ClassOrder:
    """Shared ClassOrder for (n, a); builds are serialized and idempotent."""
    key = (n, a)
    order = _ORDER_CACHE.get(key)
    if order is not None:
        return order
    with _ORDER_LOCK:
        order = _ORDER_CACHE.get(key)
        if order is None:
            order = ClassOrder(n, a, cap)
            _ORDER_CACHE[key] = order
    return order


def sorted_compositions(
    n: int, a: int, cap: int = DEFAULT_COMPOSITION_CAP
) -> list[tuple[tuple[int, ...], int]]:
    """Materialized (composition, class size) list in exact order."""
    return list(class_order(n, a, cap).iter_classes())
