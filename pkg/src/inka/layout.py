"""Deterministic 2-D layout engines.

Four algorithms: uniform random placement, a circle, a spring embedder
(attraction d^2/k along edges, repulsion k^2/d between all node pairs,
geometric cooling), and a multilevel variant that coarsens by matching,
lays out the small coarse graph, then interpolates and locally refines
level by level.  Everything is a pure function of (graph, config): same
seed, same layout, bit for bit.

The spring embedder computes repulsion exactly below a node-count
threshold and switches to a bucket-grid approximation (interaction cutoff
at twice the ideal edge length) above it.  Disconnected graphs are laid
out one component at a time and packed on a padded grid.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

import numpy as np

from .errors import LayoutError
from .model import Graph, Layout

_ALGORITHMS = ("random", "circular", "force-directed", "multilevel")

# Golden-angle increment for deterministic, direction-diverse jitter.
_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class LayoutConfig:
    algorithm: str = "force-directed"
    seed: int = 0
    iterations: int = 500
    ideal_edge_length: float = 30.0
    cooling: float = 0.95
    exact_repulsion_max_nodes: int = 2000
    coarsen_threshold: int = 50

    def __post_init__(self):
        if self.algorithm not in _ALGORITHMS:
            raise ValueError(
                f"unknown algorithm {self.algorithm!r}; supported: "
                + ", ".join(_ALGORITHMS)
            )
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must fit in 64 unsigned bits")
        if self.iterations < 1:
            raise ValueError("iterations must be >= 1")
        if self.ideal_edge_length <= 0:
            raise ValueError("ideal_edge_length must be > 0")
        if not 0 < self.cooling < 1:
            raise ValueError("cooling must be in (0, 1)")
        if self.coarsen_threshold < 2:
            raise ValueError("coarsen_threshold must be >= 2")


def layout_random(g: Graph, seed: int, ideal_edge_length: float = 30.0) -> Layout:
    """Positions uniform in the square [0, sqrt(n) * ideal_edge_length]^2."""
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))
    side = math.sqrt(g.node_count) * ideal_edge_length
    return Layout(rng.uniform(0.0, side, size=(g.node_count, 2)))


def layout_circular(g: Graph, ideal_edge_length: float = 30.0) -> Layout:
    """Nodes in index order on a circle whose circumference gives
    neighboring nodes roughly one ideal edge length of spacing."""
    n = g.node_count
    if n == 0:
        return Layout(np.empty((0, 2)))
    radius = n * ideal_edge_length / (2.0 * math.pi)
    angles = 2.0 * math.pi * np.arange(n) / n
    return Layout(np.column_stack([radius * np.cos(angles), radius * np.sin(angles)]))


def _components(g: Graph) -> list[np.ndarray]:
    """Connected components as sorted node-index arrays, ordered by their
    smallest node id."""
    adj = g.adjacency()
    seen = np.zeros(g.node_count, dtype=bool)
    comps = []
    for start in range(g.node_count):
        if seen[start]:
            continue
        queue = deque([start])
        seen[start] = True
        members = [start]
        while queue:
            v = queue.popleft()
            for u in adj[v]:
                if not seen[u]:
                    seen[u] = True
                    members.append(u)
                    queue.append(u)
        comps.append(np.array(sorted(members), dtype=np.int64))
    return comps


def _pack_components(parts: list[np.ndarray], pad: float) -> np.ndarray:
    """Translate per-component position blocks onto a padded grid.

    parts[i] is the (n_i, 2) position array of component i; returns one
    stacked array in the same node order the caller expects.
    """
    boxes = []
    for pos in parts:
        lo = pos.min(axis=0)
        hi = pos.max(axis=0)
        boxes.append((lo, hi - lo))
    cell_w = max(size[0] for _, size in boxes) + pad
    cell_h = max(size[1] for _, size in boxes) + pad
    cols = max(1, math.ceil(math.sqrt(len(parts))))
    out = []
    for i, (pos, (lo, _size)) in enumerate(zip(parts, boxes)):
        origin = np.array([(i % cols) * cell_w, (i // cols) * cell_h])
        out.append(pos - lo + origin)
    return out


def _repulsion_exact(pos: np.ndarray, weight: np.ndarray, k: float) -> np.ndarray:
    n = len(pos)
    disp = np.zeros_like(pos)
    chunk = max(1, 4_000_000 // max(n, 1))
    k2 = k * k
    for s in range(0, n, chunk):
        e = min(n, s + chunk)
        diff = pos[s:e, None, :] - pos[None, :, :]
        d2 = diff[..., 0] ** 2 + diff[..., 1] ** 2
        np.maximum(d2, 1e-8, out=d2)
        f = k2 / d2 * (weight[s:e, None] * weight[None, :])
        f[np.arange(e - s), np.arange(s, e)] = 0.0
        disp[s:e] = (diff * f[:, :, None]).sum(axis=1)
    return disp


def _repulsion_grid(pos: np.ndarray, weight: np.ndarray, k: float) -> np.ndarray:
    """Bucketed repulsion with a cutoff at 2k; nodes beyond the cutoff do
    not interact.  Deterministic: cells are visited in sorted order."""
    cell = 2.0 * k
    keys = np.floor(pos / cell).astype(np.int64)
    buckets: dict[tuple[int, int], list[int]] = {}
    for i, (cx, cy) in enumerate(keys):
        buckets.setdefault((int(cx), int(cy)), []).append(i)
    disp = np.zeros_like(pos)
    k2 = k * k
    cutoff2 = cell * cell
    for (cx, cy) in sorted(buckets):
        mine = np.array(buckets[(cx, cy)], dtype=np.int64)
        nbr: list[int] = []
        for ox in (-1, 0, 1):
            for oy in (-1, 0, 1):
                nbr.extend(buckets.get((cx + ox, cy + oy), ()))
        other = np.array(nbr, dtype=np.int64)
        diff = pos[mine, None, :] - pos[other][None, :, :]
        d2 = diff[..., 0] ** 2 + diff[..., 1] ** 2
        far = d2 > cutoff2
        np.maximum(d2, 1e-8, out=d2)
        f = k2 / d2 * (weight[mine, None] * weight[other][None, :])
        f[far] = 0.0
        f[mine[:, None] == other[None, :]] = 0.0
        disp[mine] = (diff * f[:, :, None]).sum(axis=1)
    return disp


def _spring_iterate(
    pos: np.ndarray,
    edges: np.ndarray,
    edge_weight: np.ndarray,
    node_weight: np.ndarray,
    k: float,
    iterations: int,
    t0: float,
    cooling: float,
    exact_max_nodes: int,
) -> np.ndarray:
    """Core spring-embedder loop; returns refined positions."""
    pos = pos.copy()
    n = len(pos)
    exact = n <= exact_max_nodes
    t = t0
    for it in range(iterations):
        if exact:
            disp = _repulsion_exact(pos, node_weight, k)
        else:
            disp = _repulsion_grid(pos, node_weight, k)
        if len(edges):
            delta = pos[edges[:, 0]] - pos[edges[:, 1]]
            d = np.hypot(delta[:, 0], delta[:, 1])
            np.maximum(d, 1e-9, out=d)
            pull = delta * (edge_weight * d / k)[:, None]
            np.add.at(disp, edges[:, 0], -pull)
            np.add.at(disp, edges[:, 1], pull)
        norm = np.hypot(disp[:, 0], disp[:, 1])
        np.maximum(norm, 1e-12, out=norm)
        step = np.minimum(norm, t)
        pos += disp / norm[:, None] * step[:, None]
        if not np.isfinite(pos).all():
            raise LayoutError(f"force blowup at iteration {it}")
        t *= cooling
    return pos


def layout_force_directed(g: Graph, config: LayoutConfig) -> Layout:
    """Spring embedder; components are laid out independently (each with
    a seed derived from config.seed) and packed side by side."""
    n = g.node_count
    if n == 0:
        return Layout(np.empty((0, 2)))
    k = config.ideal_edge_length
    comps = _components(g)
    seeds = np.random.SeedSequence(config.seed).spawn(len(comps))
    E = g.edge_array()
    parts = []
    for comp, seed in zip(comps, seeds):
        nc = len(comp)
        local = np.full(n, -1, dtype=np.int64)
        local[comp] = np.arange(nc)
        keep = np.isin(E[:, 0], comp) if len(E) else np.zeros(0, dtype=bool)
        ce = local[E[keep]] if len(E) else np.empty((0, 2), dtype=np.int64)
        rng = np.random.Generator(np.random.PCG64(seed))
        side = math.sqrt(nc) * k
        pos = rng.uniform(0.0, side, size=(nc, 2))
        if nc > 1:
            pos = _spring_iterate(
                pos,
                ce,
                np.ones(len(ce)),
                np.ones(nc),
                k,
                config.iterations,
                t0=0.1 * side,
                cooling=config.cooling,
                exact_max_nodes=config.exact_repulsion_max_nodes,
            )
        parts.append(pos)
    packed = _pack_components(parts, pad=k)
    out = np.empty((n, 2))
    for comp, pos in zip(comps, packed):
        out[comp] = pos
    return Layout(out)


def _coarsen(n, edges, edge_weight, node_weight):
    """One heavy-edge matching pass.  Returns the coarse graph
    (n2, edges2, edge_weight2, node_weight2) and the fine-to-coarse map."""
    adj: list[list[tuple[int, float]]] = [[] for _ in range(n)]
    for (a, b), w in zip(edges, edge_weight):
        adj[a].append((int(b), float(w)))
        adj[b].append((int(a), float(w)))
    mate = np.full(n, -1, dtype=np.int64)
    for v in range(n):
        if mate[v] >= 0:
            continue
        best, best_w = -1, -1.0
        for u, w in adj[v]:
            if mate[u] < 0 and u != v and (w > best_w or (w == best_w and u < best)):
                best, best_w = u, w
        if best >= 0:
            mate[v] = best
            mate[best] = v
        else:
            mate[v] = v
    cid = np.full(n, -1, dtype=np.int64)
    nxt = 0
    for v in range(n):
        if cid[v] < 0:
            cid[v] = nxt
            cid[mate[v]] = nxt
            nxt += 1
    node_weight2 = np.zeros(nxt)
    np.add.at(node_weight2, cid, node_weight)
    merged: dict[tuple[int, int], float] = {}
    for (a, b), w in zip(edges, edge_weight):
        ca, cb = int(cid[a]), int(cid[b])
        if ca == cb:
            continue
        key = (ca, cb) if ca < cb else (cb, ca)
        merged[key] = merged.get(key, 0.0) + float(w)
    if merged:
        keys = sorted(merged)
        edges2 = np.array(keys, dtype=np.int64)
        edge_weight2 = np.array([merged[kk] for kk in keys])
    else:
        edges2 = np.empty((0, 2), dtype=np.int64)
        edge_weight2 = np.empty(0)
    return nxt, edges2, edge_weight2, node_weight2, cid


def _induced_coarse_length(pos, cid, coarse_edges):
    """Total coarse-edge length when each coarse node sits at the mean of
    its fine members."""
    n2 = int(cid.max()) + 1 if len(cid) else 0
    centers = np.zeros((n2, 2))
    counts = np.zeros(n2)
    np.add.at(centers, cid, pos)
    np.add.at(counts, cid, 1.0)
    centers /= counts[:, None]
    if not len(coarse_edges):
        return 0.0
    delta = centers[coarse_edges[:, 0]] - centers[coarse_edges[:, 1]]
    return float(np.hypot(delta[:, 0], delta[:, 1]).sum())


def _multilevel_positions(n, edges, config: LayoutConfig, seed) -> np.ndarray:
    """Multilevel layout of one connected component."""
    k = config.ideal_edge_length
    levels = []
    cur = (n, edges, np.ones(len(edges)), np.ones(n))
    maps = []
    while cur[0] > config.coarsen_threshold:
        n2, e2, ew2, nw2, cid = _coarsen(*cur)
        if n2 >= cur[0]:
            break
        levels.append(cur)
        maps.append(cid)
        cur = (n2, e2, ew2, nw2)

    nc, ec, ewc, nwc = cur
    rng = np.random.Generator(np.random.PCG64(seed))
    k_c = k * math.sqrt(float(nwc.mean()))
    side = math.sqrt(nc) * k_c
    pos = rng.uniform(0.0, side, size=(nc, 2))
    if nc > 1:
        pos = _spring_iterate(
            pos, ec, ewc, np.sqrt(nwc), k_c, config.iterations,
            t0=0.1 * side, cooling=config.cooling,
            exact_max_nodes=config.exact_repulsion_max_nodes,
        )

    refine_iters = max(50, config.iterations // 5)
    for (nf, ef, ewf, nwf), cid in zip(reversed(levels), reversed(maps)):
        coarse_edges = cur[1]
        fine = pos[cid].copy()
        # Deterministic symmetric jitter so merged pairs separate.
        for c in range(len(pos)):
            members = np.flatnonzero(cid == c)
            if len(members) == 2:
                theta = 2.0 * math.pi * ((c + 1) * _GOLDEN % 1.0)
                off = 0.25 * k * np.array([math.cos(theta), math.sin(theta)])
                fine[members[0]] += off
                fine[members[1]] -= off
        k_f = k * math.sqrt(float(nwf.mean()))
        before = _induced_coarse_length(fine, cid, coarse_edges)
        refined = _spring_iterate(
            fine, ef, ewf, np.sqrt(nwf), k_f, refine_iters,
            t0=0.6 * k_f, cooling=config.cooling,
            exact_max_nodes=config.exact_repulsion_max_nodes,
        )
        after = _induced_coarse_length(refined, cid, coarse_edges)
        # Guardrail: refinement may not stretch the coarse structure by
        # more than 5%; revert to the interpolated positions if it does.
        if before > 0 and after > 1.05 * before:
            pos = fine
        else:
            pos = refined
        cur = (nf, ef, ewf, nwf)
    return pos


def layout_multilevel(g: Graph, config: LayoutConfig) -> Layout:
    """Matching-based coarsening plus spring refinement; small graphs fall
    through to the plain spring embedder unchanged."""
    n = g.node_count
    if n == 0:
        return Layout(np.empty((0, 2)))
    if n <= config.coarsen_threshold:
        return layout_force_directed(g, config)
    comps = _components(g)
    seeds = np.random.SeedSequence(config.seed).spawn(len(comps))
    E = g.edge_array()
    parts = []
    for comp, seed in zip(comps, seeds):
        nc = len(comp)
        local = np.full(n, -1, dtype=np.int64)
        local[comp] = np.arange(nc)
        keep = np.isin(E[:, 0], comp) if len(E) else np.zeros(0, dtype=bool)
        ce = local[E[keep]] if len(E) else np.empty((0, 2), dtype=np.int64)
        if nc > config.coarsen_threshold:
            pos = _multilevel_positions(nc, ce, config, seed)
        else:
            rng = np.random.Generator(np.random.PCG64(seed))
            side = math.sqrt(nc) * config.ideal_edge_length
            pos = rng.uniform(0.0, side, size=(nc, 2))
            if nc > 1:
                pos = _spring_iterate(
                    pos, ce, np.ones(len(ce)), np.ones(nc),
                    config.ideal_edge_length, config.iterations,
                    t0=0.1 * side, cooling=config.cooling,
                    exact_max_nodes=config.exact_repulsion_max_nodes,
                )
        parts.append(pos)
    packed = _pack_components(parts, pad=config.ideal_edge_length)
    out = np.empty((n, 2))
    for comp, pos in zip(comps, packed):
        out[comp] = pos
    return Layout(out)


def compute_layout(g: Graph, config: LayoutConfig) -> Layout:
    """Dispatch on config.algorithm."""
    if config.algorithm == "random":
        return layout_random(g, config.seed, config.ideal_edge_length)
    if config.algorithm == "circular":
        return layout_circular(g, config.ideal_edge_length)
    if config.algorithm == "force-directed":
        return layout_force_directed(g, config)
    if config.algorithm == "multilevel":
        return layout_multilevel(g, config)
    raise ValueError(f"unknown algorithm {config.algorithm!r}")
