"""Support hypergraphs (shapes) and the best intersection over sign choices.

A shape records only which coordinates each condition touches; the actual map
is fixed by assigning +1/-1 to every incidence.  Isolated coordinates are never
stored: they would double every achievable size without changing fractions.
Edges form a multiset (a condition may repeat another's support), stored
sorted by (size descending, lexicographic), and vertices are the integers
1..vertex_count.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product
from typing import Iterable, Sequence

from .codim1 import binomial
from .cube import LinearMap, _row_mask, evaluate_pattern

Edge = tuple[int, ...]


def _edge_key(edge: Edge):
    return (-len(edge), edge)


@dataclass(frozen=True)
class Shape:
    """Multiset of condition supports over vertices 1..vertex_count."""

    edges: tuple[Edge, ...]

    def __post_init__(self):
        if not self.edges:
            raise ValueError("a shape needs at least one edge")
        for edge in self.edges:
            if len(edge) < 2:
                raise ValueError("edges of size < 2 are excluded from shapes")
            if list(edge) != sorted(set(edge)):
                raise ValueError("edge vertices must be sorted and distinct")
        covered = set()
        for edge in self.edges:
            covered.update(edge)
        k = max(covered)
        if covered != set(range(1, k + 1)):
            raise ValueError("vertices must be exactly 1..k with no gaps")
        if list(self.edges) != sorted(self.edges, key=_edge_key):
            raise ValueError("edges must be sorted by (size desc, lex)")

    @staticmethod
    def from_edges(edges: Iterable[Iterable[int]]) -> "Shape":
        """Build a shape from arbitrary labels, compressing them to 1..k."""
        raw = [tuple(sorted(set(e))) for e in edges]
        raw.sort(key=_edge_key)
        labels: dict[int, int] = {}
        for edge in raw:
            for v in edge:
                if v not in labels:
                    labels[v] = len(labels) + 1
        relabelled = tuple(
            tuple(sorted(labels[v] for v in edge)) for edge in raw
        )
        return Shape(tuple(sorted(relabelled, key=_edge_key)))

    @property
    def vertex_count(self) -> int:
        return max(v for edge in self.edges for v in edge)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def distinct_edge_count(self) -> int:
        return len(set(self.edges))

    def degrees(self) -> Counter:
        deg: Counter = Counter()
        for edge in self.edges:
            deg.update(edge)
        return deg

    def shared_vertices(self) -> tuple[int, ...]:
        deg = self.degrees()
        return tuple(sorted(v for v, d in deg.items() if d >= 2))

    def is_minimal(self) -> bool:
        """Every edge keeps a private vertex (multiset degree one)."""
        deg = self.degrees()
        return all(any(deg[v] == 1 for v in edge) for edge in self.edges)

    def to_json_dict(self) -> dict:
        return {"k": self.vertex_count, "edges": [list(e) for e in self.edges]}

    @staticmethod
    def from_json_dict(data) -> "Shape":
        return Shape.from_edges(data["edges"])


@dataclass(frozen=True)
class SignAssignment:
    """Signs in {-1,+1} for every incidence, aligned to the shape's edges.

    signs[i][j] is the sign on the j-th smallest vertex of edge i.
    """

    shape: Shape
    signs: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.signs) != self.shape.edge_count:
            raise ValueError("one sign tuple per edge required")
        for edge, row in zip(self.shape.edges, self.signs):
            if len(row) != len(edge) or any(s not in (-1, 1) for s in row):
                raise ValueError("signs must be +-1 and match edge sizes")

    def sign(self, edge_index: int, vertex: int) -> int:
        edge = self.shape.edges[edge_index]
        return self.signs[edge_index][edge.index(vertex)]

    def to_map(self) -> LinearMap:
        k = self.shape.vertex_count
        rows = []
        for edge, row in zip(self.shape.edges, self.signs):
            coeffs = [0] * k
            for v, s in zip(edge, row):
                coeffs[v - 1] = s
            rows.append(coeffs)
        return LinearMap.from_rows(k, rows)


# ---------------------------------------------------------------------------
# canonical labelling
# ---------------------------------------------------------------------------

_CANONICAL_CACHE: dict[tuple[Edge, ...], Shape] = {}


def canonical_form(shape: Shape) -> Shape:
    """Canonical representative of the isomorphism class of a shape.

    Vertices are characterised by their incidence vector over the distinct
    edges; for a fixed ordering of the distinct edges, the multiset of
    incidence vectors together with the edge multiplicities determines the
    shape up to isomorphism.  Minimising that encoding over the orderings
    (only permutations within equal (size, multiplicity) blocks can matter)
    yields a canonical encoding, from which a canonically labelled shape is
    rebuilt.
    """
    cached = _CANONICAL_CACHE.get(shape.edges)
    if cached is not None:
        return cached

    counter = Counter(shape.edges)
    distinct = list(counter.items())
    blocks: dict[tuple[int, int], list[Edge]] = {}
    for edge, mult in distinct:
        blocks.setdefault((-len(edge), -mult), []).append(edge)
    block_keys = sorted(blocks)

    best = None
    block_perms = [permutations(blocks[key]) for key in block_keys]
    for perm_combo in product(*block_perms):
        ordered: list[Edge] = [e for group in perm_combo for e in group]
        vectors: Counter = Counter()
        for v in range(1, shape.vertex_count + 1):
            vec = 0
            for idx, edge in enumerate(ordered):
                if v in edge:
                    vec |= 1 << idx
            vectors[vec] += 1
        encoding = (
            tuple((len(e), counter[e]) for e in ordered),
            tuple(sorted(vectors.items(), reverse=True)),
        )
        if best is None or encoding < best:
            best = encoding

    sizes_mults, vector_items = best
    label = 0
    vertex_labels: dict[int, list[int]] = {}
    for vec, count in vector_items:
        vertex_labels[vec] = [label + i + 1 for i in range(count)]
        label += count
    result_edges: list[Edge] = []
    for idx, (_size, mult) in enumerate(sizes_mults):
        members = []
        for vec, labels_list in vertex_labels.items():
            if (vec >> idx) & 1:
                members.extend(labels_list)
        result_edges.extend([tuple(sorted(members))] * mult)
    result = Shape(tuple(sorted(result_edges, key=_edge_key)))
    _CANONICAL_CACHE[shape.edges] = result
    return result


def are_isomorphic(a: Shape, b: Shape) -> bool:
    return canonical_form(a) == canonical_form(b)


# ---------------------------------------------------------------------------
# star classification
# ---------------------------------------------------------------------------

STAR21 = "star21"
STAR32 = "star32"
STAR32_CENTER_EDGES = "star32_center_edges"
OTHER = "other"


def classify_star(shape: Shape) -> str:
    sizes = {len(e) for e in shape.edges}
    edge_sets = [set(e) for e in shape.edges]
    if sizes == {2}:
        common = set.intersection(*edge_sets)
        if common:
            return STAR21
        return OTHER
    if sizes == {3}:
        common = set.intersection(*edge_sets)
        if len(common) >= 2:
            return STAR32
        return OTHER
    if sizes == {2, 3}:
        pairs = [frozenset(e) for e in shape.edges if len(e) == 2]
        if len(set(pairs)) != 1:
            return OTHER
        centre = set(next(iter(pairs)))
        if all(centre <= s for s in edge_sets if len(s) == 3):
            return STAR32_CENTER_EDGES
        return OTHER
    return OTHER


# ---------------------------------------------------------------------------
# intersection values over sign choices
# ---------------------------------------------------------------------------


def assignment_intersection(shape: Shape, assignment: SignAssignment) -> int:
    """Size of the intersection for one sign assignment.

    Conditions are evaluated by conditioning on the shared coordinates (those
    in at least two edges): for each 0/1 choice there, every edge contributes
    the number of ways to finish its private coordinates, and the total is the
    sum over shared choices of the product of those counts.
    """
    if assignment.shape != shape:
        raise ValueError("assignment does not belong to this shape")
    shared = shape.shared_vertices()
    shared_index = {v: i for i, v in enumerate(shared)}
    per_edge = []
    for edge, row in zip(shape.edges, assignment.signs):
        shared_signs = [(shared_index[v], s) for v, s in zip(edge, row) if v in shared_index]
        private_signs = [s for v, s in zip(edge, row) if v not in shared_index]
        n = len(private_signs)
        b = sum(1 for s in private_signs if s == -1)
        per_edge.append((shared_signs, n, b))
    total = 0
    for choice in range(1 << len(shared)):
        prod = 1
        for shared_signs, n, b in per_edge:
            p = sum(s for i, s in shared_signs if (choice >> i) & 1)
            ways = binomial(n, b - p) + binomial(n, b + 1 - p)
            if ways == 0:
                prod = 0
                break
            prod *= ways
        total += prod
    return total


def _spread(edge: Edge, signs: Sequence[int], k: int) -> tuple[int, ...]:
    coeffs = [0] * k
    for v, s in zip(edge, signs):
        coeffs[v - 1] = s
    return tuple(coeffs)


def _edge_candidates(shape: Shape, index: int, reduced: bool) -> list[tuple[tuple[int, ...], int]]:
    """(signs, mask) choices for one edge, sorted by sign tuple.

    In reduced form only the count of -1s over the private coordinates is
    varied (they occupy the low vertices first), which covers every achievable
    joint value because private coordinates of one edge can be permuted freely.
    """
    k = shape.vertex_count
    edge = shape.edges[index]
    shared = set(shape.shared_vertices())
    shared_pos = [i for i, v in enumerate(edge) if v in shared]
    private_pos = [i for i, v in enumerate(edge) if v not in shared]
    candidates = []
    if reduced:
        private_options = []
        for minus in range(len(private_pos), -1, -1):
            signs = [-1] * minus + [1] * (len(private_pos) - minus)
            private_options.append(signs)
    else:
        private_options = [list(c) for c in product((-1, 1), repeat=len(private_pos))]
    for shared_signs in product((-1, 1), repeat=len(shared_pos)):
        for private_signs in private_options:
            signs = [0] * len(edge)
            for pos, s in zip(shared_pos, shared_signs):
                signs[pos] = s
            for pos, s in zip(private_pos, private_signs):
                signs[pos] = s
            signs_t = tuple(signs)
            mask = _row_mask(k, _spread(edge, signs_t, k), 1)
            candidates.append((signs_t, mask))
    candidates.sort(key=lambda item: item[0])
    dedup: dict[int, tuple[int, ...]] = {}
    ordered = []
    for signs_t, mask in candidates:
        if mask in dedup:
            continue
        dedup[mask] = signs_t
        ordered.append((signs_t, mask))
    return ordered


_VALUE_SET_CACHE: dict = {}


def intersection_value_set(
    shape: Shape, floor: Fraction | int = 0
) -> dict[int, SignAssignment]:
    """All achievable sizes above floor * 2^k, each with its first witness.

    Witnesses are deterministic: candidates are explored in ascending sign
    order (reduced private placements, -1 before +1), so the recorded witness
    for a value is the least one in that order.
    """
    floor = Fraction(floor)
    key = (shape.edges, floor)
    cached = _VALUE_SET_CACHE.get(key)
    if cached is not None:
        return cached
    k = shape.vertex_count
    points = 1 << k
    limit_num = floor.numerator * points
    limit_den = floor.denominator
    cands = [_edge_candidates(shape, i, reduced=True) for i in range(shape.edge_count)]
    found: dict[int, tuple[tuple[int, ...], ...]] = {}

    def walk(idx: int, mask: int, chosen: tuple):
        if mask.bit_count() * limit_den <= limit_num:
            return
        if idx == len(cands):
            value = mask.bit_count()
            if value not in found:
                found[value] = chosen
            return
        for signs_t, cand_mask in cands[idx]:
            walk(idx + 1, mask & cand_mask, chosen + (signs_t,))

    walk(0, (1 << points) - 1, ())
    result = {
        value: SignAssignment(shape, signs)
        for value, signs in sorted(found.items())
    }
    _VALUE_SET_CACHE[key] = result
    return result


def max_intersection(
    shape: Shape,
    exclude_at_or_above: int | None = None,
    reduced: bool = True,
) -> tuple[int, SignAssignment | None]:
    """Best achievable size over sign assignments, with a deterministic witness.

    With exclude_at_or_above set, assignments reaching at least that size are
    skipped (they repeat a value already achievable with fewer conditions);
    the maximum of the remaining values is returned, or (0, None) if nothing
    survives the skip.
    """
    cands = [_edge_candidates(shape, i, reduced=reduced) for i in range(shape.edge_count)]
    k = shape.vertex_count
    points = 1 << k
    best = 0

    def walk_max(idx: int, mask: int):
        nonlocal best
        count = mask.bit_count()
        if count <= best:
            return
        if idx == len(cands):
            if exclude_at_or_above is not None and count >= exclude_at_or_above:
                return
            best = count
            return
        for _, cand_mask in cands[idx]:
            walk_max(idx + 1, mask & cand_mask)

    walk_max(0, (1 << points) - 1)
    if best == 0:
        return 0, None

    witness: tuple | None = None

    def walk_witness(idx: int, mask: int, chosen: tuple):
        nonlocal witness
        if witness is not None:
            return
        if mask.bit_count() < best:
            return
        if idx == len(cands):
            if mask.bit_count() == best:
                witness = chosen
            return
        for signs_t, cand_mask in cands[idx]:
            walk_witness(idx + 1, mask & cand_mask, chosen + (signs_t,))
            if witness is not None:
                return

    walk_witness(0, (1 << points) - 1, ())
    assert witness is not None
    return best, SignAssignment(shape, witness)


def naive_max_intersection(shape: Shape) -> int:
    """Cross-check: brute force over every sign vector via map evaluation."""
    best = 0
    ranges = [product((-1, 1), repeat=len(edge)) for edge in shape.edges]
    for combo in product(*ranges):
        assignment = SignAssignment(shape, tuple(tuple(r) for r in combo))
        _, size = evaluate_pattern(assignment.to_map())
        best = max(best, size)
    return best


def shape_fraction(shape: Shape) -> Fraction:
    """Best achievable size divided by the covered cube's size."""
    best, _ = max_intersection(shape)
    return Fraction(best, 1 << shape.vertex_count)


def clear_caches() -> None:
    _CANONICAL_CACHE.clear()
    _VALUE_SET_CACHE.clear()
