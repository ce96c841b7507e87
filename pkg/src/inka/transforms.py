"""Derived drawings: scaled layouts, zoomed drawings, partial-edge stubs.

Scaling spreads node positions (lengths grow, r and w do not); zooming
magnifies everything together; partial-edge drawing keeps only a fraction
p of each edge as two symmetric end stubs.  Each transform here is the
geometric counterpart of a closed-form ink delta in the ink module, and
the tests hold the two accountable to each other.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import Segment, _pair_index_blocks, transversal_crossing_mask
from .model import BoldDrawing, Layout, RenderParams


def scale_layout(layout: Layout, sigma_len: float) -> Layout:
    """Spread positions about the centroid so every distance multiplies
    by sigma_len.  sigma_len == 1 returns an identical layout."""
    if sigma_len <= 0:
        raise ValueError(f"length multiplier must be > 0, got {sigma_len}")
    pos = layout.positions
    if sigma_len == 1.0 or len(pos) == 0:
        return Layout(pos)
    centroid = pos.mean(axis=0)
    return Layout(centroid + sigma_len * (pos - centroid))


def zoom_drawing(d: BoldDrawing, zeta_area: float) -> BoldDrawing:
    """Magnify the drawing by area factor zeta_area: positions, radius,
    and width all multiply by sqrt(zeta_area)."""
    if zeta_area <= 0:
        raise ValueError(f"area magnification must be > 0, got {zeta_area}")
    s = math.sqrt(zeta_area)
    return BoldDrawing(
        graph=d.graph,
        layout=Layout(d.layout.positions * s),
        params=RenderParams(
            radius=d.params.radius * s, width=d.params.width * s, gamma=d.params.gamma
        ),
    )


@dataclass(frozen=True)
class StubSet:
    """The segments of a partial-edge drawing.

    Each original edge contributes two symmetric stubs (one full segment
    when ratio == 1, so midpoint crossings are not lost).  parent_edge
    maps each stub back to its edge index; parent_nodes carries the
    edge's node pair for adjacency exclusion when counting crossings.
    """

    segments: list[Segment]
    parent_edge: np.ndarray
    parent_nodes: np.ndarray
    ratio: float

    @property
    def total_length(self) -> float:
        p = np.array([s.p for s in self.segments], dtype=np.float64).reshape(-1, 2)
        q = np.array([s.q for s in self.segments], dtype=np.float64).reshape(-1, 2)
        if len(self.segments) == 0:
            return 0.0
        return float(np.hypot(q[:, 0] - p[:, 0], q[:, 1] - p[:, 1]).sum())


def partial_edges(d: BoldDrawing, p: float) -> StubSet:
    """Replace every edge by two stubs of length p*l_e/2, one anchored at
    each endpoint.  p == 1 keeps each edge as its single full segment."""
    if not 0 < p <= 1:
        raise ValueError(f"retained fraction must be in (0, 1], got {p}")
    E = d.graph.edge_array()
    pos = d.layout.positions
    segments: list[Segment] = []
    parents: list[int] = []
    for i in range(E.shape[0]):
        a = pos[E[i, 0]]
        b = pos[E[i, 1]]
        if p == 1.0:
            segments.append(Segment((a[0], a[1]), (b[0], b[1])))
            parents.append(i)
            continue
        step = 0.5 * p * (b - a)
        segments.append(Segment((a[0], a[1]), (a[0] + step[0], a[1] + step[1])))
        segments.append(Segment((b[0], b[1]), (b[0] - step[0], b[1] - step[1])))
        parents.extend((i, i))
    return StubSet(
        segments=segments,
        parent_edge=np.asarray(parents, dtype=np.int64),
        parent_nodes=E,
        ratio=p,
    )


def measure_stub_crossings(stubs: StubSet) -> int:
    """Crossings of a partial-edge drawing: parent-edge pairs whose stubs
    cross transversally.

    Stubs of the same edge or of adjacent edges are ignored, and a pair
    of parent edges counts at most once however their stubs meet.
    """
    k = len(stubs.segments)
    if k < 2:
        return 0
    P = np.array([s.p for s in stubs.segments], dtype=np.float64)
    Q = np.array([s.q for s in stubs.segments], dtype=np.float64)
    par = stubs.parent_edge
    nodes = stubs.parent_nodes

    crossing_pairs: set[tuple[int, int]] = set()
    for I, J in _pair_index_blocks(k):
        pi, pj = par[I], par[J]
        a1, b1 = nodes[pi, 0], nodes[pi, 1]
        a2, b2 = nodes[pj, 0], nodes[pj, 1]
        related = (pi == pj) | (a1 == a2) | (a1 == b2) | (b1 == a2) | (b1 == b2)
        mask = transversal_crossing_mask(P[I], Q[I], P[J], Q[J]) & ~related
        for e1, e2 in zip(pi[mask], pj[mask]):
            crossing_pairs.add((min(int(e1), int(e2)), max(int(e1), int(e2))))
    return len(crossing_pairs)
