"""Independent search oracles.

Exhaustive minimum percolating sets by ascending subset enumeration,
randomized greedy upper bounds, and r-neighbour bootstrap percolation on
graphs.  Exceeding the search budget raises, it never degrades to an
approximate answer.
"""

from __future__ import annotations

import itertools
import random
from collections import deque
from dataclasses import dataclass

from .percolation import Hypergraph, percolates

DEFAULT_BUDGET = 10_000_000


class SearchBudgetExceeded(RuntimeError):
    def __init__(self, tested: int, budget: int) -> None:
        super().__init__(f"search budget exhausted after {tested} candidate sets (budget {budget})")
        self.tested = tested
        self.budget = budget


@dataclass(frozen=True)
class SearchResult:
    """Exact minimum, one witness (sorted ids), and candidates tested."""

    minimum: int
    witness: tuple[int, ...]
    tested: int


def _min_subset_search(num_vertices, percolates_fn, mandatory, lower_hint, upper_hint, budget):
    # Ascending k, lexicographic subsets of the non-mandatory vertices; the
    # first hit is minimal provided lower_hint is a valid lower bound.
    mandatory = sorted(mandatory)
    free = [v for v in range(num_vertices) if v not in set(mandatory)]
    tested = 0
    for k in range(lower_hint, upper_hint + 1):
        if k < len(mandatory):
            continue
        for combo in itertools.combinations(free, k - len(mandatory)):
            if tested >= budget:
                raise SearchBudgetExceeded(tested, budget)
            tested += 1
            candidate = mandatory + list(combo)
            if percolates_fn(candidate):
                return SearchResult(k, tuple(sorted(candidate)), tested)
    return None


def min_percolating_exact(
    h: Hypergraph,
    lower_hint: int = 0,
    upper_hint: int | None = None,
    *,
    budget: int = DEFAULT_BUDGET,
    preprocess: bool = True,
) -> SearchResult | None:
    """Smallest percolating set, by exhaustive ascending subset enumeration.

    The answer is the true minimum whenever ``lower_hint`` is a valid lower
    bound (0 always is).  ``preprocess`` forces vertices that lie in no edge
    into every candidate, since nothing can ever infect them.  Returns None
    when no set of size <= upper_hint percolates; raises SearchBudgetExceeded
    after ``budget`` candidate sets.
    """
    nv = h.num_vertices
    if upper_hint is None:
        upper_hint = nv
    if not 0 <= lower_hint <= upper_hint <= nv:
        raise ValueError(f"need 0 <= lower_hint <= upper_hint <= {nv}")
    mandatory = []
    if preprocess:
        covered = set(itertools.chain.from_iterable(h.edges))
        mandatory = [v for v in range(nv) if v not in covered]
    return _min_subset_search(
        nv, lambda cand: percolates(h, cand), mandatory, lower_hint, upper_hint, budget
    )


def _greedy_deletion(num_vertices, percolates_fn, trials, seed):
    if trials < 1:
        raise ValueError(f"trials must be >= 1, got {trials}")
    rng = random.Random(seed)
    best = frozenset(range(num_vertices))
    for _ in range(trials):
        order = list(range(num_vertices))
        rng.shuffle(order)
        current = set(range(num_vertices))
        for v in order:
            smaller = current - {v}
            if percolates_fn(smaller):
                current = smaller
        if len(current) < len(best):
            best = frozenset(current)
    return best


def greedy_upper_bound(h: Hypergraph, trials: int = 1, seed: int = 0) -> frozenset[int]:
    """Percolating set found by randomized greedy deletion from the full set.

    Each trial scans the vertices in a shuffled order and drops any whose
    removal keeps the set percolating.  One pass per trial suffices: removals
    only shrink closures, so a vertex that cannot be dropped now can never be
    dropped later.  Deterministic given the seed; the result percolates by
    construction, so its size is an upper bound on the true minimum.
    """
    return _greedy_deletion(h.num_vertices, lambda cand: percolates(h, cand), trials, seed)


class Graph:
    """Undirected simple graph: vertex count plus sorted adjacency tuples."""

    __slots__ = ("num_vertices", "adj")

    def __init__(self, num_vertices: int, edges) -> None:
        if num_vertices < 0:
            raise ValueError(f"negative vertex count {num_vertices}")
        neighbours = [set() for _ in range(num_vertices)]
        for u, v in edges:
            if not (0 <= u < num_vertices and 0 <= v < num_vertices):
                raise ValueError(f"edge ({u}, {v}) outside [0, {num_vertices})")
            if u == v:
                raise ValueError(f"self-loop at {u}")
            neighbours[u].add(v)
            neighbours[v].add(u)
        self.num_vertices = num_vertices
        self.adj = tuple(tuple(sorted(ns)) for ns in neighbours)

    @property
    def num_edges(self) -> int:
        return sum(len(ns) for ns in self.adj) // 2

    def __repr__(self) -> str:
        return f"Graph(num_vertices={self.num_vertices}, num_edges={self.num_edges})"


def grid_graph(dims) -> Graph:
    """Axis-aligned grid graph on [n_1] x ... x [n_d].

    Vertices are row-major ids of the 1-based coordinate tuples; two vertices
    are adjacent iff their tuples differ by exactly 1 in one axis.
    """
    dims = tuple(int(n) for n in dims)
    if not dims or any(n < 1 for n in dims):
        raise ValueError(f"axis lengths must be >= 1, got {dims}")
    strides = [1] * len(dims)
    for k in range(len(dims) - 2, -1, -1):
        strides[k] = strides[k + 1] * dims[k + 1]
    edges = []
    for coords in itertools.product(*(range(1, n + 1) for n in dims)):
        vid = sum((x - 1) * s for x, s in zip(coords, strides))
        for k, n in enumerate(dims):
            if coords[k] < n:
                edges.append((vid, vid + strides[k]))
    total = 1
    for n in dims:
        total *= n
    return Graph(total, edges)


def hypercube_graph(d: int) -> Graph:
    """d-dimensional hypercube on ids 0..2^d - 1, adjacency by single bit flips."""
    if d < 1:
        raise ValueError(f"dimension {d} < 1")
    edges = [(b, b | (1 << i)) for b in range(1 << d) for i in range(d) if not b & (1 << i)]
    return Graph(1 << d, edges)


def r_neighbour_closure(g: Graph, initial, r: int) -> frozenset[int]:
    """Closure under: a vertex with at least r infected neighbours is infected."""
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")
    infected = bytearray(g.num_vertices)
    queue: deque[int] = deque()
    for v in initial:
        v = int(v)
        if not 0 <= v < g.num_vertices:
            raise ValueError(f"vertex {v} outside [0, {g.num_vertices})")
        if not infected[v]:
            infected[v] = 1
            queue.append(v)
    counts = [0] * g.num_vertices
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if not infected[w]:
                counts[w] += 1
                if counts[w] >= r:
                    infected[w] = 1
                    queue.append(w)
    return frozenset(i for i, flag in enumerate(infected) if flag)


def min_r_neighbour_percolating(
    g: Graph,
    r: int,
    lower_hint: int = 0,
    upper_hint: int | None = None,
    *,
    budget: int = DEFAULT_BUDGET,
    preprocess: bool = True,
) -> SearchResult | None:
    """Exhaustive minimum percolating set for the r-neighbour process.

    Same enumeration scheme as min_percolating_exact; preprocessing forces
    vertices of degree < r into every candidate (they can never be infected).
    """
    nv = g.num_vertices
    if upper_hint is None:
        upper_hint = nv
    if not 0 <= lower_hint <= upper_hint <= nv:
        raise ValueError(f"need 0 <= lower_hint <= upper_hint <= {nv}")
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")
    mandatory = [v for v in range(nv) if len(g.adj[v]) < r] if preprocess else []
    return _min_subset_search(
        nv,
        lambda cand: len(r_neighbour_closure(g, cand, r)) == nv,
        mandatory,
        lower_hint,
        upper_hint,
        budget,
    )


def greedy_r_neighbour_upper_bound(g: Graph, r: int, trials: int = 1, seed: int = 0) -> frozenset[int]:
    """Greedy-deletion upper bound for the r-neighbour process (cf.
    greedy_upper_bound; the same one-pass argument applies)."""
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")
    return _greedy_deletion(
        g.num_vertices, lambda cand: len(r_neighbour_closure(g, cand, r)) == g.num_vertices, trials, seed
    )
