"""Breadth-first search over shapes with exact fraction pruning.

States are edge multisets, grown one condition at a time in non-increasing
size order.  A state survives a round when it still admits a sign assignment
whose covered fraction beats the threshold; since adding a condition can only
shrink the pattern, pruned states can never spawn useful descendants.

Three modes:

* ``minimal-large``    -- only expansions that keep every edge a private
                          vertex; used for the structural star results.
* ``non-redundant-small`` -- duplicates allowed; when scoring a child, any
                          assignment at least as large as the parent's
                          recorded best (scaled for fresh vertices) is skipped,
                          because such an assignment repeats a value already
                          achievable with fewer conditions.  Some redundant
                          assignments below that bar survive; only the upper
                          bound is relied on.
* ``exhaustive-large`` -- duplicates allowed, no redundancy skip; every state
                          keeps its full list of above-threshold values, which
                          is what the large-size verification consumes.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .codim1 import support_size_bound
from .shapes import (
    Shape,
    SignAssignment,
    canonical_form,
    intersection_value_set,
)

MINIMAL_LARGE = "minimal-large"
NON_REDUNDANT_SMALL = "non-redundant-small"
EXHAUSTIVE_LARGE = "exhaustive-large"
MODES = (MINIMAL_LARGE, NON_REDUNDANT_SMALL, EXHAUSTIVE_LARGE)


class SearchBudgetError(RuntimeError):
    """The frontier outgrew the configured safety budget."""


@dataclass(frozen=True)
class SearchConfig:
    mode: str
    threshold: Fraction
    max_edge_size: int
    max_edges: int
    max_vertices: int
    dedupe_isomorphic: bool = True
    max_states: int = 200_000

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        if not 0 < self.threshold < 1:
            raise ValueError("threshold must lie strictly between 0 and 1")
        if self.max_edge_size < 2:
            raise ValueError("edges have at least two vertices")


def large_search_config(k: int, max_edges: int | None = None, **kwargs) -> SearchConfig:
    threshold = Fraction(1, 2)
    return SearchConfig(
        mode=MINIMAL_LARGE,
        threshold=threshold,
        max_edge_size=min(support_size_bound(threshold), k),
        max_edges=max_edges if max_edges is not None else k - 1,
        max_vertices=k,
        **kwargs,
    )


def small_search_config(k: int, max_edges: int | None = None, **kwargs) -> SearchConfig:
    threshold = Fraction(15, 32)
    return SearchConfig(
        mode=NON_REDUNDANT_SMALL,
        threshold=threshold,
        max_edge_size=min(support_size_bound(threshold), k),
        max_edges=max_edges if max_edges is not None else k - 1,
        max_vertices=k,
        **kwargs,
    )


def exhaustive_large_config(k: int, max_edges: int | None = None, **kwargs) -> SearchConfig:
    threshold = Fraction(1, 2)
    return SearchConfig(
        mode=EXHAUSTIVE_LARGE,
        threshold=threshold,
        max_edge_size=min(support_size_bound(threshold), k),
        max_edges=max_edges if max_edges is not None else k,
        max_vertices=k,
        **kwargs,
    )


@dataclass
class ShapeRecord:
    """A surviving state: canonical shape plus everything the round measured.

    ``keys`` distinguishes the inequivalent ways the state was produced (size
    of the added edge plus its overlap profile with the parent's edges); with
    isomorphism deduplication switched off these are reported as separate raw
    survivors, which is how the historical raw counts arise.
    """

    shape: Shape
    max_size: int
    fraction: Fraction
    witness: SignAssignment | None
    values: tuple[int, ...]
    keys: tuple = ()

    def raw_count(self) -> int:
        return max(1, len(self.keys))


@dataclass
class SearchResult:
    config: SearchConfig
    depths: list[list[ShapeRecord]] = field(default_factory=list)
    pruned_count: int = 0
    terminated_naturally: bool = False

    def survivors(self, depth: int) -> list[ShapeRecord]:
        if depth < 1 or depth > len(self.depths):
            raise ValueError(f"search did not run to depth {depth}")
        return self.depths[depth - 1]

    def raw_survivor_count(self, depth: int) -> int:
        return sum(rec.raw_count() for rec in self.survivors(depth))

    def canonical_survivor_count(self, depth: int) -> int:
        return len(self.survivors(depth))

    def all_values_scaled(self, k: int, max_depth: int | None = None) -> set[int]:
        """Above-threshold values of every survivor, padded with isolated
        coordinates up to dimension k."""
        out: set[int] = set()
        limit = len(self.depths) if max_depth is None else min(max_depth, len(self.depths))
        for depth in range(1, limit + 1):
            for rec in self.depths[depth - 1]:
                shift = k - rec.shape.vertex_count
                if shift < 0:
                    continue
                out.update(v << shift for v in rec.values)
        return out


def _values_above(shape: Shape, threshold: Fraction) -> dict[int, SignAssignment]:
    return intersection_value_set(shape, floor=threshold)


def expand(shape: Shape, config: SearchConfig) -> list[Shape]:
    """Canonical children of one survivor (one added condition), deduplicated."""
    children = {}
    for child_edges, _key in _raw_children(shape, config):
        canon = canonical_form(Shape(child_edges))
        children[canon.edges] = canon
    return [children[key] for key in sorted(children)]


def _raw_children(shape: Shape, config: SearchConfig):
    """All admissible one-edge extensions, as (edges, key) pairs.

    The new edge is a subset of the current vertices plus a run of fresh ones;
    its size may not exceed the smallest existing edge, which realises the
    non-increasing addition order.  The key records the new size and the
    overlap profile with the existing edges.
    """
    verts = list(range(1, shape.vertex_count + 1))
    smallest = len(shape.edges[-1])
    for new_size in range(2, min(smallest, config.max_edge_size) + 1):
        for used in range(min(new_size, len(verts)) + 1):
            fresh = new_size - used
            if shape.vertex_count + fresh > config.max_vertices:
                continue
            fresh_verts = tuple(range(len(verts) + 1, len(verts) + 1 + fresh))
            for chosen in combinations(verts, used):
                new_edge = tuple(sorted(chosen + fresh_verts))
                child_edges = tuple(
                    sorted(shape.edges + (new_edge,), key=lambda e: (-len(e), e))
                )
                if config.mode == MINIMAL_LARGE and not Shape(child_edges).is_minimal():
                    continue
                vec = tuple(len(set(chosen) & set(e)) for e in shape.edges)
                yield child_edges, (new_size, vec)


def bfs_search(config: SearchConfig) -> SearchResult:
    result = SearchResult(config)
    frontier: dict[tuple, ShapeRecord] = {}
    for size in range(2, min(config.max_edge_size, config.max_vertices) + 1):
        shape = Shape((tuple(range(1, size + 1)),))
        values = _values_above(shape, config.threshold)
        if not values:
            result.pruned_count += 1
            continue
        best = max(values)
        frontier[shape.edges] = ShapeRecord(
            shape=shape,
            max_size=best,
            fraction=Fraction(best, 1 << size),
            witness=values[best],
            values=tuple(sorted(values)),
            keys=((size, ()),),
        )
    result.depths.append(_sorted_records(frontier))

    for _depth in range(2, config.max_edges + 1):
        new_frontier: dict[tuple, ShapeRecord] = {}
        for parent in frontier.values():
            for child_edges, key in _raw_children(parent.shape, config):
                canon = canonical_form(Shape(child_edges))
                points = 1 << canon.vertex_count
                values = _values_above(canon, config.threshold)
                if config.mode == NON_REDUNDANT_SMALL:
                    fresh = canon.vertex_count - parent.shape.vertex_count
                    bound = parent.max_size << fresh
                    admissible = [v for v in values if v < bound]
                else:
                    admissible = list(values)
                if not admissible:
                    result.pruned_count += 1
                    continue
                best = max(admissible)
                record = new_frontier.get(canon.edges)
                if record is None:
                    new_frontier[canon.edges] = ShapeRecord(
                        shape=canon,
                        max_size=best,
                        fraction=Fraction(best, points),
                        witness=values[best],
                        values=tuple(sorted(values)),
                        keys=(key,),
                    )
                else:
                    if best > record.max_size:
                        record.max_size = best
                        record.fraction = Fraction(best, points)
                        record.witness = values[best]
                    if key not in record.keys:
                        record.keys = record.keys + (key,)
                if len(new_frontier) > config.max_states:
                    raise SearchBudgetError(
                        f"frontier exceeded {config.max_states} states"
                    )
        if not new_frontier:
            result.terminated_naturally = True
            break
        result.depths.append(_sorted_records(new_frontier))
        frontier = new_frontier
    return result


def _sorted_records(frontier: dict) -> list[ShapeRecord]:
    return [frontier[key] for key in sorted(frontier, key=lambda e: (len(e), e))]


def final_shapes(result: SearchResult, depth: int) -> list[tuple[Shape, int]]:
    """Survivors at a depth; repeated per production key when deduplication is
    off, one entry per isomorphism class otherwise."""
    records = result.survivors(depth)
    out: list[tuple[Shape, int]] = []
    for rec in records:
        copies = 1 if result.config.dedupe_isomorphic else rec.raw_count()
        out.extend([(rec.shape, rec.max_size)] * copies)
    return out
