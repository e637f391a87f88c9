"""Hypergraph bootstrap closure.

A vertex becomes infected when some hyperedge has that vertex as its only
uninfected member.  The closure is the unique fixed point of this monotone
rule; the order in which firings are processed never changes the result,
only the recorded trace.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass

from .grid import GridSpec, encode_vertex, enumerate_edges


class Hypergraph:
    """Immutable vertex count plus hyperedge list, with a vertex->edge index.

    Edges are canonicalized to sorted tuples of distinct 0-based ids; the edge
    order given at construction is preserved and is the order used for trace
    witness indices.  Edges of size 1 are allowed: their vertex is infected
    unconditionally once processing starts.
    """

    __slots__ = ("num_vertices", "edges", "incident")

    def __init__(self, num_vertices: int, edges) -> None:
        if num_vertices < 0:
            raise ValueError(f"negative vertex count {num_vertices}")
        canon = []
        for e in edges:
            vs = sorted(set(e))
            if not vs:
                raise ValueError("empty hyperedge")
            if vs[0] < 0 or vs[-1] >= num_vertices:
                raise ValueError(f"edge {vs} has a vertex outside [0, {num_vertices})")
            canon.append(tuple(vs))
        self.num_vertices = num_vertices
        self.edges = tuple(canon)
        incident = [[] for _ in range(num_vertices)]
        for i, e in enumerate(self.edges):
            for v in e:
                incident[v].append(i)
        self.incident = tuple(tuple(ix) for ix in incident)

    def __repr__(self) -> str:
        return f"Hypergraph(num_vertices={self.num_vertices}, num_edges={len(self.edges)})"


@dataclass(frozen=True)
class ClosureResult:
    """Final infected set plus the infection order with witness edges.

    ``trace[i] = (v, e)`` means v was the only uninfected vertex of edge e at
    step i; every other vertex of e lies in the initial set or in earlier
    trace entries.
    """

    initial: frozenset[int]
    final: frozenset[int]
    trace: tuple[tuple[int, int], ...]


def closure(h: Hypergraph, initial) -> ClosureResult:
    """Run the bootstrap process from ``initial`` to its fixed point.

    Counter-based: each edge keeps its number of uninfected vertices and is
    examined once per infected member, so the total work is linear in the sum
    of edge sizes.  Witness edges are chosen by the deterministic processing
    order (ascending edge index per newly infected vertex).
    """
    infected = bytearray(h.num_vertices)
    init = []
    for v in initial:
        v = int(v)
        if not 0 <= v < h.num_vertices:
            raise ValueError(f"vertex {v} outside [0, {h.num_vertices})")
        if not infected[v]:
            infected[v] = 1
            init.append(v)

    remaining = [sum(1 for v in e if not infected[v]) for e in h.edges]
    trace: list[tuple[int, int]] = []
    queue: deque[int] = deque()

    def try_fire(e_idx: int) -> None:
        # remaining[e_idx] just reached 1; the edge fires unless its last
        # uninfected vertex was already infected elsewhere (pending decrement).
        for w in h.edges[e_idx]:
            if not infected[w]:
                infected[w] = 1
                trace.append((w, e_idx))
                queue.append(w)
                return

    for e_idx, count in enumerate(remaining):
        if count == 1:
            try_fire(e_idx)
    while queue:
        u = queue.popleft()
        for e_idx in h.incident[u]:
            remaining[e_idx] -= 1
            if remaining[e_idx] == 1:
                try_fire(e_idx)

    final = frozenset(i for i, flag in enumerate(infected) if flag)
    return ClosureResult(frozenset(init), final, tuple(trace))


def percolates(h: Hypergraph, initial) -> bool:
    """True iff the closure of ``initial`` is the whole vertex set."""
    return len(closure(h, initial).final) == h.num_vertices


def grid_hypergraph(spec: GridSpec, family: str) -> Hypergraph:
    """Materialize a grid family as an explicit hypergraph.

    Edge order matches enumerate_edges; vertex ids follow the row-major codec.
    """
    edges = [
        [encode_vertex(spec, v) for v in edge.vertices()] for edge in enumerate_edges(spec, family)
    ]
    return Hypergraph(spec.num_vertices, edges)


def weak_saturation_hypergraph(n: int, k: int) -> Hypergraph:
    """Edge-infection instance on the complete graph with n vertices.

    Hypergraph vertices are the C(n,2) graph edges (pairs in lexicographic
    order); there is one hyperedge per k-clique, holding that clique's C(k,2)
    pair ids.  A set of graph edges percolates iff the missing edges can be
    added one at a time, each completing a k-clique.
    """
    if k < 2 or n < k:
        raise ValueError(f"need n >= k >= 2, got n={n}, k={k}")
    pair_id = {p: i for i, p in enumerate(itertools.combinations(range(n), 2))}
    hyperedges = [
        [pair_id[p] for p in itertools.combinations(clique, 2)]
        for clique in itertools.combinations(range(n), k)
    ]
    return Hypergraph(len(pair_id), hyperedges)


def format_hypergraph(h: Hypergraph) -> str:
    """Text form: header ``p <num_vertices> <num_edges>``, then one line of
    space-separated 0-based ids per edge."""
    lines = [f"p {h.num_vertices} {len(h.edges)}"]
    lines.extend(" ".join(map(str, e)) for e in h.edges)
    return "\n".join(lines) + "\n"


def parse_hypergraph(text: str) -> Hypergraph:
    """Inverse of format_hypergraph; blank lines are ignored."""
    rows = [line.split() for line in text.splitlines() if line.strip()]
    if not rows or rows[0][:1] != ["p"] or len(rows[0]) != 3:
        raise ValueError("expected header line 'p <num_vertices> <num_edges>'")
    try:
        nv, ne = int(rows[0][1]), int(rows[0][2])
    except ValueError:
        raise ValueError("non-integer counts in header") from None
    body = rows[1:]
    if len(body) != ne:
        raise ValueError(f"header promises {ne} edges, found {len(body)} edge lines")
    try:
        edges = [[int(tok) for tok in row] for row in body]
    except ValueError:
        raise ValueError("non-integer vertex id in edge line") from None
    return Hypergraph(nv, edges)


def read_hypergraph(path) -> Hypergraph:
    with open(path, "r", encoding="ascii") as fh:
        return parse_hypergraph(fh.read())


def write_hypergraph(h: Hypergraph, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(format_hypergraph(h))
