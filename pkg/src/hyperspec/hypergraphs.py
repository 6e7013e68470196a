"""k-uniform hypergraphs, the generalized power construction, odd-bipartiteness.

Edges are sorted tuples of distinct vertices.  An edge with fewer than k
vertices marks a loop edge: it counts toward degrees but never enters the
adjacency tensor.  Loop edges may repeat (loop multiplicity); full edges may
not.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from hyperspec.graphs import LoopedGraph

__all__ = [
    "Hypergraph",
    "HalfEdgeMap",
    "generalized_power",
    "odd_bipartition",
    "solve_gf2",
    "to_canonical_json",
    "from_json_dict",
]


class Hypergraph:
    """k-uniform hypergraph with optional loop edges of size below k."""

    def __init__(
        self,
        vertex_count: int,
        k: int,
        edges: Iterable[Sequence[int]] = (),
        labels: Sequence[str] | None = None,
    ):
        if vertex_count < 0:
            raise ValueError("vertex_count must be nonnegative")
        if k < 2:
            raise ValueError("edge rank k must be at least 2")
        canon = []
        seen_full = set()
        for e in edges:
            members = tuple(sorted(int(v) for v in e))
            if len(set(members)) != len(members):
                raise ValueError(f"edge {members} repeats a vertex")
            if not members or len(members) > k:
                raise ValueError(f"edge {members} has invalid size for k={k}")
            for v in members:
                if not 0 <= v < vertex_count:
                    raise ValueError(f"vertex {v} out of range [0, {vertex_count})")
            if len(members) == k:
                if members in seen_full:
                    raise ValueError(f"duplicate edge {members}")
                seen_full.add(members)
            canon.append(members)
        self.vertex_count = vertex_count
        self.k = k
        self.edges: tuple[tuple[int, ...], ...] = tuple(sorted(canon))
        if labels is not None and len(labels) != vertex_count:
            raise ValueError("labels must cover every vertex")
        self.labels = tuple(labels) if labels is not None else None
        self._degrees = [0] * vertex_count
        for members in self.edges:
            for v in members:
                self._degrees[v] += 1

    @property
    def full_edges(self) -> tuple[tuple[int, ...], ...]:
        return tuple(e for e in self.edges if len(e) == self.k)

    @property
    def loop_edges(self) -> tuple[tuple[int, ...], ...]:
        return tuple(e for e in self.edges if len(e) < self.k)

    @property
    def is_uniform(self) -> bool:
        return all(len(e) == self.k for e in self.edges)

    def degree(self, v: int) -> int:
        """Number of edges (loop edges included) containing ``v``."""
        if not 0 <= v < self.vertex_count:
            raise ValueError(f"vertex {v} out of range [0, {self.vertex_count})")
        return self._degrees[v]

    def is_connected(self) -> bool:
        """Connectivity through full edges; loop edges do not connect vertices."""
        if self.vertex_count == 0:
            raise ValueError("connectivity is undefined for the empty hypergraph")
        adj: list[set[int]] = [set() for _ in range(self.vertex_count)]
        for e in self.full_edges:
            for v in e:
                adj[v].update(w for w in e if w != v)
        seen = {0}
        queue = deque([0])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        return len(seen) == self.vertex_count

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return (
            self.vertex_count == other.vertex_count
            and self.k == other.k
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash((self.vertex_count, self.k, self.edges))

    def __repr__(self) -> str:
        return f"Hypergraph(n={self.vertex_count}, k={self.k}, m={len(self.edges)})"


@dataclass(frozen=True)
class HalfEdgeMap:
    """Blow-up bookkeeping for a generalized power.

    ``half_edges[u]`` lists the power-hypergraph vertices replacing base
    vertex ``u``; the first member is the anchor.  ``edge_vertices[j]`` lists
    the extra vertices attached to base edge ``j`` (empty when s = k/2).
    """

    half_edges: tuple[tuple[int, ...], ...]
    edge_vertices: tuple[tuple[int, ...], ...]

    def anchor(self, u: int) -> int:
        return self.half_edges[u][0]

    @property
    def anchors(self) -> tuple[int, ...]:
        return tuple(members[0] for members in self.half_edges)

    def base_of(self) -> dict[int, int]:
        """Map every blown-up vertex back to its base vertex."""
        out: dict[int, int] = {}
        for u, members in enumerate(self.half_edges):
            for v in members:
                out[v] = u
        return out


def generalized_power(g: LoopedGraph, k: int, s: int) -> tuple[Hypergraph, HalfEdgeMap]:
    """Blow each vertex of ``g`` into an s-set and each edge into a k-set.

    Base vertex u becomes the half edge (u*s, ..., u*s + s - 1) whose anchor is
    its lowest index; for s < k/2 each base edge also receives k - 2s fresh
    vertices.  Loops are only meaningful for s = k/2, where a base loop at u
    becomes a loop edge on the half edge of u.
    """
    if k < 3:
        raise ValueError("generalized powers need k >= 3")
    if not 1 <= s <= k // 2:
        raise ValueError(f"blow-up size s={s} must satisfy 1 <= s <= k/2")
    half = 2 * s == k
    if half and (k % 2 or k < 4):
        raise ValueError("s = k/2 requires even k >= 4")
    if g.has_loops and not half:
        raise ValueError("loops are only supported for s = k/2")

    n = g.vertex_count
    half_edges = tuple(tuple(range(u * s, u * s + s)) for u in range(n))
    extra = k - 2 * s
    edge_vertices = tuple(
        tuple(range(n * s + j * extra, n * s + (j + 1) * extra))
        for j in range(len(g.edges))
    )
    total = n * s + extra * len(g.edges)

    edges: list[tuple[int, ...]] = []
    for j, (u, v) in enumerate(g.edges):
        edges.append(tuple(sorted(half_edges[u] + half_edges[v] + edge_vertices[j])))
    for u in range(n):
        edges.extend(half_edges[u] for _ in range(g.loops[u]))

    return Hypergraph(total, k, edges), HalfEdgeMap(half_edges, edge_vertices)


# -- odd-bipartiteness -------------------------------------------------------


def solve_gf2(rows: list[int], rhs: list[int], nvars: int) -> int | None:
    """One solution of a linear system over GF(2), or None.

    Rows are bit-packed coefficient masks.  Free variables are set to zero, so
    the witness is deterministic.
    """
    aug = [row | (r & 1) << nvars for row, r in zip(rows, rhs)]
    pivots: list[tuple[int, int]] = []
    cur = 0
    for col in range(nvars):
        pivot = None
        for r in range(cur, len(aug)):
            if (aug[r] >> col) & 1:
                pivot = r
                break
        if pivot is None:
            continue
        aug[cur], aug[pivot] = aug[pivot], aug[cur]
        for r in range(len(aug)):
            if r != cur and (aug[r] >> col) & 1:
                aug[r] ^= aug[cur]
        pivots.append((cur, col))
        cur += 1
    for r in range(cur, len(aug)):
        if aug[r]:
            return None
    solution = 0
    for r, col in pivots:
        if (aug[r] >> nvars) & 1:
            solution |= 1 << col
    return solution


def odd_bipartition(h: Hypergraph) -> tuple[int, ...] | None:
    """A vertex set meeting every edge in an odd count, or None when impossible.

    Defined only for loop-free even-uniform hypergraphs; anything else is
    rejected rather than guessed at.
    """
    if h.k % 2:
        raise ValueError("odd-bipartiteness needs an even edge rank")
    if not h.is_uniform:
        raise ValueError("odd-bipartiteness needs a uniform, loop-free hypergraph")
    rows = []
    for e in h.edges:
        mask = 0
        for v in e:
            mask |= 1 << v
        rows.append(mask)
    solution = solve_gf2(rows, [1] * len(rows), h.vertex_count)
    if solution is None:
        return None
    return tuple(v for v in range(h.vertex_count) if (solution >> v) & 1)


# -- JSON wire format --------------------------------------------------------
#
# {"n": int, "k": int, "edges": [[int, ...], ...],
#  "half_edges": {"<base vertex>": [members]}}   (half_edges optional)


def to_canonical_json(h: Hypergraph, halfmap: HalfEdgeMap | None = None) -> str:
    payload: dict = {
        "n": h.vertex_count,
        "k": h.k,
        "edges": [list(e) for e in h.edges],
    }
    if halfmap is not None:
        payload["half_edges"] = {
            str(u): list(members) for u, members in enumerate(halfmap.half_edges)
        }
    return json.dumps(payload, sort_keys=True, separators=(",", ":")) + "\n"


def from_json_dict(payload: dict) -> tuple[Hypergraph, HalfEdgeMap | None]:
    try:
        h = Hypergraph(int(payload["n"]), int(payload["k"]), payload["edges"])
    except KeyError as exc:
        raise ValueError(f"hypergraph JSON is missing key {exc}") from exc
    halfmap = None
    if "half_edges" in payload:
        raw = payload["half_edges"]
        half_edges = tuple(
            tuple(int(v) for v in raw[str(u)]) for u in range(len(raw))
        )
        halfmap = HalfEdgeMap(half_edges, ())
    return h, halfmap
