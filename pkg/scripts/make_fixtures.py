"""Regenerate the checked-in graph fixtures under data/graphs/.

All four files are synthetic but deterministic (fixed seeds), sized to
match well-known public test graphs so the bench config and the parser
tests have realistic shapes to chew on:

* can_144.mtx      circulant graph, 144 nodes / 576 edges, written as a
                   symmetric pattern matrix with explicit diagonal
                   (720 entries), same shape as the classic can_144
                   structural-analysis matrix.
* mesh24.graph     24x24 grid with one diagonal per cell (triangulated),
                   576 nodes / 1633 edges, Chaco adjacency format.
* ba800.edges      preferential-attachment graph, 800 nodes / 2394 edges.
* yeastppi.edges   2361 nodes / 7182 edges with deliberate noise lines
                   (duplicates, reversed pairs, a self-loop, weights),
                   the size of a well-known protein-interaction network.

Run from anywhere: python scripts/make_fixtures.py
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

OUT = Path(__file__).resolve().parents[1] / "data" / "graphs"


def make_can144() -> str:
    n = 144
    edges = set()
    for i in range(n):
        for off in (1, 2, 3, 4):
            j = (i + off) % n
            edges.add((max(i, j), min(i, j)))
    assert len(edges) == 576
    lines = [
        "%%MatrixMarket matrix coordinate pattern symmetric",
        "% circulant graph on 144 nodes (offsets 1..4); same dimensions and",
        "% entry count as the classic can_144 test matrix: 144 x 144, 720",
        "% entries in the lower triangle including the diagonal.",
        f"{n} {n} {n + len(edges)}",
    ]
    lines.extend(f"{i + 1} {i + 1}" for i in range(n))
    lines.extend(f"{a + 1} {b + 1}" for a, b in sorted(edges))
    return "\n".join(lines) + "\n"


def make_mesh24() -> str:
    side = 24
    n = side * side

    def nid(row, col):
        return row * side + col

    adj: list[set[int]] = [set() for _ in range(n)]

    def link(a, b):
        adj[a].add(b)
        adj[b].add(a)

    for row in range(side):
        for col in range(side):
            if col + 1 < side:
                link(nid(row, col), nid(row, col + 1))
            if row + 1 < side:
                link(nid(row, col), nid(row + 1, col))
            if row + 1 < side and col + 1 < side:
                link(nid(row, col), nid(row + 1, col + 1))
    m = sum(len(s) for s in adj) // 2
    assert (n, m) == (576, 1633)
    lines = [
        "% 24x24 grid with one diagonal per cell (triangulated mesh)",
        f"{n} {m}",
    ]
    for v in range(n):
        lines.append(" ".join(str(u + 1) for u in sorted(adj[v])))
    return "\n".join(lines) + "\n"


def make_ba800() -> str:
    rng = np.random.default_rng(7)
    attach = 3
    edges = [(0, 1), (0, 2), (1, 2)]
    endpoints = [0, 1, 0, 2, 1, 2]
    for v in range(3, 800):
        targets: set[int] = set()
        while len(targets) < attach:
            targets.add(endpoints[int(rng.integers(len(endpoints)))])
        for t in sorted(targets):
            edges.append((v, t))
            endpoints.extend((v, t))
    assert len(edges) == 3 + 797 * attach
    lines = ["# preferential-attachment graph, 800 nodes, seed 7"]
    lines.extend(f"{a} {b}" for a, b in edges)
    return "\n".join(lines) + "\n"


def make_yeastppi() -> str:
    n, m_target = 2361, 7182
    rng = np.random.default_rng(11)
    edges: list[tuple[int, int]] = [(i, (i + 1) % n) for i in range(n)]
    seen = {(min(a, b), max(a, b)) for a, b in edges}
    while len(edges) < m_target:
        a, b = int(rng.integers(n)), int(rng.integers(n))
        if a == b:
            continue
        key = (min(a, b), max(a, b))
        if key in seen:
            continue
        seen.add(key)
        edges.append((a, b))
    lines = [
        "% synthetic interaction-network-sized graph: 2361 nodes, 7182 edges",
        "% contains deliberate noise the parser must shrug off:",
        "% duplicate lines, reversed pairs, a self-loop, weight columns",
    ]
    for i, (a, b) in enumerate(edges):
        if i % 900 == 250:
            lines.append(f"{a} {b} 1.0")
        else:
            lines.append(f"{a} {b}")
        if i % 500 == 100:
            lines.append(f"{b} {a}")
        if i % 701 == 300:
            lines.append(f"{a} {b}")
    lines.append("5 5")
    lines.append("# end of file")
    return "\n".join(lines) + "\n"


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    (OUT / "can_144.mtx").write_text(make_can144())
    (OUT / "mesh24.graph").write_text(make_mesh24())
    (OUT / "ba800.edges").write_text(make_ba800())
    (OUT / "yeastppi.edges").write_text(make_yeastppi())
    for f in sorted(OUT.iterdir()):
        print(f"{f.name}: {f.stat().st_size} bytes")


if __name__ == "__main__":
    main()
