"""Core types: graphs, layouts, render parameters, and result records.

All types are immutable after construction and safe to share between
threads.  Coordinates are abstract drawing units, not pixels.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import GraphError

Edge = tuple[int, int]


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on nodes 0..node_count-1.

    Edges are stored canonically as sorted (lo, hi) pairs with lo < hi,
    deduplicated and in ascending order.  Use :func:`build_graph` to
    construct one from raw input.
    """

    node_count: int
    edges: tuple[Edge, ...]

    @property
    def n(self) -> int:
        return self.node_count

    @property
    def m(self) -> int:
        return len(self.edges)

    def adjacency(self) -> list[set[int]]:
        adj: list[set[int]] = [set() for _ in range(self.node_count)]
        for a, b in self.edges:
            adj[a].add(b)
            adj[b].add(a)
        return adj

    def edge_array(self) -> np.ndarray:
        """Edges as an (m, 2) int array (empty -> shape (0, 2))."""
        if not self.edges:
            return np.empty((0, 2), dtype=np.int64)
        return np.asarray(self.edges, dtype=np.int64)


def build_graph(node_count: int, edge_list: Iterable[Sequence[int]]) -> Graph:
    """Build a simple undirected graph, deduplicating unordered pairs.

    Rejects self-loops and out-of-range endpoints with a GraphError that
    names the offending edge index.
    """
    if node_count < 0:
        raise GraphError(f"node_count must be >= 0, got {node_count}")
    seen: set[Edge] = set()
    for idx, pair in enumerate(edge_list):
        try:
            a, b = pair
        except (TypeError, ValueError):
            raise GraphError(f"edge {idx}: expected a pair, got {pair!r}") from None
        a, b = int(a), int(b)
        if a == b:
            raise GraphError(f"edge {idx}: self-loop at node {a}")
        if not (0 <= a < node_count) or not (0 <= b < node_count):
            raise GraphError(
                f"edge {idx}: endpoint out of range for {node_count} nodes: ({a}, {b})"
            )
        seen.add((a, b) if a < b else (b, a))
    return Graph(node_count=node_count, edges=tuple(sorted(seen)))


def graph_density(g: Graph) -> float:
    """Edges per node, m/n.  Undefined (error) for an empty node set."""
    if g.node_count == 0:
        raise GraphError("graph density m/n is undefined for node_count == 0")
    return g.m / g.node_count


@dataclass(frozen=True)
class Layout:
    """Node positions: an (n, 2) float array, one row per node."""

    positions: np.ndarray

    def __post_init__(self):
        pos = np.asarray(self.positions, dtype=np.float64)
        if pos.ndim != 2 or pos.shape[1] != 2:
            raise ValueError(f"positions must have shape (n, 2), got {pos.shape}")
        if pos.size and not np.all(np.isfinite(pos)):
            raise ValueError("positions must be finite")
        pos = pos.copy()
        pos.setflags(write=False)
        object.__setattr__(self, "positions", pos)

    def __len__(self) -> int:
        return self.positions.shape[0]


@dataclass(frozen=True)
class RenderParams:
    """Disk radius, edge width, and the density ceiling gamma."""

    radius: float
    width: float
    gamma: float = 1.0

    def __post_init__(self):
        if self.radius < 0:
            raise ValueError(f"radius must be >= 0, got {self.radius}")
        if self.width < 0:
            raise ValueError(f"width must be >= 0, got {self.width}")
        if not (0.0 < self.gamma <= 1.0):
            raise ValueError(f"gamma must be in (0, 1], got {self.gamma}")


@dataclass(frozen=True)
class BoldDrawing:
    """A graph, its layout, and the rendering parameters.

    The drawn figure is the union of one disk of radius ``params.radius``
    per node and one rectangle of width ``params.width`` per edge.
    """

    graph: Graph
    layout: Layout
    params: RenderParams

    def __post_init__(self):
        if len(self.layout) != self.graph.node_count:
            raise ValueError(
                f"layout has {len(self.layout)} positions for "
                f"{self.graph.node_count} nodes"
            )


@dataclass(frozen=True)
class DrawingMetrics:
    """Measured layout quantities the ink formulas consume."""

    total_edge_length: float
    crossings: int
    area: float
    edge_lengths: np.ndarray = field(repr=False)

    def __post_init__(self):
        lengths = np.array(self.edge_lengths, dtype=np.float64)
        lengths.setflags(write=False)
        object.__setattr__(self, "edge_lengths", lengths)


@dataclass(frozen=True)
class InkReport:
    """Ink totals for one drawing plus the density/feasibility verdict."""

    ink_nodes: float
    ink_edges: float
    overlap: float
    ink_total: float
    density: float
    feasible: bool
