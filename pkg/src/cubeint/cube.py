"""Exact linear maps acting on hypercube vertices.

Cube points x in {0,1}^k are encoded as integers with coordinate i (1-based)
stored in bit i-1.  A pattern over the cube is a single bitmask with bit x set
iff point x belongs to it.  All arithmetic is exact (ints and fractions), so a
membership test is never subject to rounding.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import lcm
from typing import Iterable, Mapping, Sequence

# One bit per cube vertex; beyond this the masks no longer fit a sane budget.
MAX_DIMENSION = 24

DEFAULT_ORACLE_BUDGET = 2 ** 36


class PatternFactorError(ValueError):
    """The pattern does not factor over the claimed support."""


class EnumerationBudgetError(RuntimeError):
    """An exhaustive enumeration would exceed its configured budget."""


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    return Fraction(value)


@dataclass(frozen=True)
class LinearMap:
    """An m-by-k matrix of exact rationals, acting on {0,1}^k row by row.

    m = 0 is allowed and denotes the empty condition list (the full cube);
    it is needed to witness the intersection of a space with itself.
    """

    k: int
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if not 1 <= self.k <= MAX_DIMENSION:
            raise ValueError(f"dimension k={self.k} outside 1..{MAX_DIMENSION}")
        for row in self.entries:
            if len(row) != self.k:
                raise ValueError("row length does not match k")

    @property
    def m(self) -> int:
        return len(self.entries)

    @staticmethod
    def from_rows(k: int, rows: Iterable[Iterable]) -> "LinearMap":
        entries = tuple(tuple(_as_fraction(v) for v in row) for row in rows)
        return LinearMap(k, entries)

    def row(self, i: int) -> tuple[Fraction, ...]:
        """Row by 1-based index."""
        if not 1 <= i <= self.m:
            raise IndexError(f"row index {i} outside 1..{self.m}")
        return self.entries[i - 1]

    def to_json_dict(self) -> dict:
        return {
            "k": self.k,
            "m": self.m,
            "entries": [[str(v) for v in row] for row in self.entries],
        }

    @staticmethod
    def from_json_dict(data: Mapping) -> "LinearMap":
        lm = LinearMap.from_rows(int(data["k"]), data["entries"])
        if "m" in data and int(data["m"]) != lm.m:
            raise ValueError("declared m does not match entry rows")
        return lm


@dataclass(frozen=True)
class IntersectionPattern:
    """Subset of {0,1}^k as a bitmask (bit x set iff point x is a member)."""

    k: int
    mask: int

    def __post_init__(self):
        if self.mask >> (1 << self.k):
            raise ValueError("mask has bits beyond 2^k points")

    @property
    def size(self) -> int:
        return self.mask.bit_count()

    def __contains__(self, point: int) -> bool:
        return bool((self.mask >> point) & 1)

    def members(self) -> Iterable[int]:
        mask = self.mask
        while mask:
            low = mask & -mask
            yield low.bit_length() - 1
            mask ^= low

    def to_hex(self) -> str:
        return format(self.mask, "x")

    @staticmethod
    def from_hex(k: int, text: str) -> "IntersectionPattern":
        return IntersectionPattern(k, int(text, 16))


@lru_cache(maxsize=None)
def _row_mask(k: int, coeffs: tuple[int, ...], unit: int) -> int:
    """Bitmask of points whose scaled row value lies in {0, unit}."""
    values = [0]
    for c in coeffs:
        values.extend([v + c for v in values])
    mask = 0
    for idx, v in enumerate(values):
        if v == 0 or v == unit:
            mask |= 1 << idx
    return mask


def _scaled_row(row: Sequence[Fraction]) -> tuple[tuple[int, ...], int]:
    unit = lcm(*(f.denominator for f in row)) if row else 1
    return tuple(int(f * unit) for f in row), unit


def full_mask(k: int) -> int:
    return (1 << (1 << k)) - 1


def evaluate_pattern(linear_map: LinearMap) -> tuple[IntersectionPattern, int]:
    """Pattern of points x with every row value in {0,1}, and its size."""
    k = linear_map.k
    mask = full_mask(k)
    for row in linear_map.entries:
        coeffs, unit = _scaled_row(row)
        mask &= _row_mask(k, coeffs, unit)
        if mask == 0:
            break
    pattern = IntersectionPattern(k, mask)
    return pattern, pattern.size


def intersection_size(linear_map: LinearMap) -> int:
    return evaluate_pattern(linear_map)[1]


def support(linear_map: LinearMap) -> tuple[tuple[frozenset[int], ...], frozenset[int]]:
    """Per-row supports (1-based coordinate sets) and their union."""
    rows = tuple(
        frozenset(j + 1 for j, v in enumerate(row) if v != 0)
        for row in linear_map.entries
    )
    total = frozenset().union(*rows) if rows else frozenset()
    return rows, total


def restrict(linear_map: LinearMap, rows: Iterable[int]) -> LinearMap:
    """Keep only the rows with the given 1-based indices, ascending."""
    indices = sorted(set(rows))
    if not indices:
        raise ValueError("row subset must be nonempty")
    if indices[0] < 1 or indices[-1] > linear_map.m:
        raise IndexError("row index outside 1..m")
    return LinearMap(linear_map.k, tuple(linear_map.entries[i - 1] for i in indices))


def is_minimal(linear_map: LinearMap) -> bool:
    """No row support inside the union of the others, and no vacuous row."""
    row_supports, _ = support(linear_map)
    m = linear_map.m
    for i in range(m):
        others = frozenset().union(
            *(row_supports[j] for j in range(m) if j != i)
        ) if m > 1 else frozenset()
        if row_supports[i] <= others:
            return False
        coeffs, unit = _scaled_row(linear_map.entries[i])
        if _row_mask(linear_map.k, coeffs, unit) == full_mask(linear_map.k):
            return False
    return True


def has_redundant_condition(linear_map: LinearMap) -> bool:
    """True iff dropping some row leaves the intersection size unchanged."""
    if linear_map.m == 0:
        raise ValueError("map has no conditions")
    total = intersection_size(linear_map)
    if linear_map.m == 1:
        return total == 1 << linear_map.k
    for i in range(1, linear_map.m + 1):
        rest = [j for j in range(1, linear_map.m + 1) if j != i]
        if intersection_size(restrict(linear_map, rest)) == total:
            return True
    return False


def _coordinate_zero_mask(k: int, coordinate: int) -> int:
    """Bitmask selecting the points with the given 1-based coordinate = 0."""
    b = coordinate - 1
    period = 1 << (b + 1)
    block = (1 << (1 << b)) - 1
    repeats = (full_mask(k)) // ((1 << period) - 1)
    return block * repeats


def fix_coordinate_count(linear_map: LinearMap, coordinate: int) -> int:
    """Number of pattern members whose given coordinate equals zero."""
    if not 1 <= coordinate <= linear_map.k:
        raise IndexError("coordinate outside 1..k")
    pattern, _ = evaluate_pattern(linear_map)
    return (pattern.mask & _coordinate_zero_mask(linear_map.k, coordinate)).bit_count()


def factor_pattern(
    pattern: IntersectionPattern, support_set: Iterable[int]
) -> tuple[IntersectionPattern, int]:
    """Split P = J x {0,1}^free over the claimed support, validating the split.

    Returns the compressed pattern J over the support coordinates (in ascending
    order) and the count of free coordinates.  Raises PatternFactorError when
    the pattern actually depends on a coordinate outside the support.
    """
    k = pattern.k
    supp = sorted(set(support_set))
    if supp and (supp[0] < 1 or supp[-1] > k):
        raise ValueError("support coordinate outside 1..k")
    free = [c for c in range(1, k + 1) if c not in set(supp)]
    mask = pattern.mask
    for c in free:
        zero_sel = _coordinate_zero_mask(k, c)
        half = 1 << (c - 1)
        low = mask & zero_sel
        high = (mask >> half) & zero_sel
        if low != high:
            raise PatternFactorError(
                f"pattern depends on coordinate {c} outside the claimed support"
            )
    j_mask = 0
    s = len(supp)
    for combo in range(1 << s):
        point = 0
        for bit_idx in range(s):
            if (combo >> bit_idx) & 1:
                point |= 1 << (supp[bit_idx] - 1)
        if (mask >> point) & 1:
            j_mask |= 1 << combo
    j_pattern = IntersectionPattern(s, j_mask)
    free_count = k - s
    if j_pattern.size << free_count != pattern.size:
        raise PatternFactorError("pattern size does not match the product form")
    return j_pattern, free_count


@dataclass
class SizeSet:
    """Achievable intersection sizes for fixed (n, k), with provenance."""

    n: int
    k: int
    sizes: tuple[int, ...]
    provenance: dict[int, str] = field(default_factory=dict)

    def __post_init__(self):
        dedup = sorted(set(self.sizes))
        if any(s < 1 or s > (1 << self.k) for s in dedup):
            raise ValueError("size outside 1..2^k")
        self.sizes = tuple(dedup)

    def merged(self, other: "SizeSet") -> "SizeSet":
        if (self.n, self.k) != (other.n, other.k):
            raise ValueError("cannot merge size sets for different (n, k)")
        prov = dict(other.provenance)
        prov.update(self.provenance)
        return SizeSet(self.n, self.k, self.sizes + other.sizes, prov)

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "sizes": list(self.sizes),
            "provenance": {str(s): self.provenance.get(s, "") for s in self.sizes},
        }


def oracle_enumerate(
    k: int,
    m: int,
    entry_set: Iterable,
    keep_above: Fraction | int = 0,
    budget: int = DEFAULT_ORACLE_BUDGET,
) -> SizeSet:
    """Exact set of achievable sizes over all m-row maps with given entries.

    Enumerates distinct single-row patterns once, then closes them under
    intersection up to m rows; the result is identical to the raw sweep over
    all |entries|^(k*m) matrices, which is what the budget guard is stated in.
    Only sizes strictly above keep_above * 2^k are reported.
    """
    entries = sorted(set(_as_fraction(v) for v in entry_set))
    if not entries:
        raise ValueError("entry set must be nonempty")
    raw_count = len(entries) ** (k * m)
    if raw_count > budget:
        raise EnumerationBudgetError(
            f"{len(entries)}^{k * m} maps exceed budget {budget}"
        )
    keep = _as_fraction(keep_above)
    points = 1 << k

    row_masks = set()
    for row in product(entries, repeat=k):
        coeffs, unit = _scaled_row(row)
        row_masks.add(_row_mask(k, coeffs, unit))
    row_masks = sorted(row_masks)

    def above(count: int) -> bool:
        return count * keep.denominator > keep.numerator * points

    sizes: set[int] = set()
    seen = set(row_masks)
    frontier = [mask for mask in row_masks if above(mask.bit_count())]
    sizes.update(mask.bit_count() for mask in frontier)
    for _ in range(2, m + 1):
        next_frontier = []
        for mask in frontier:
            for row in row_masks:
                child = mask & row
                if child in seen:
                    continue
                seen.add(child)
                if above(child.bit_count()):
                    next_frontier.append(child)
                    sizes.add(child.bit_count())
        frontier = next_frontier
        if not frontier:
            break
    result = tuple(sorted(sizes))
    return SizeSet(k + m, k, result, {s: "oracle" for s in result})


def clear_caches() -> None:
    _row_mask.cache_clear()
