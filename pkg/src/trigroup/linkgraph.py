"""Integer-multiplicity multigraphs and the link graph of a presentation.

Link-graph vertices are the 2n letters in rank order: vertex 2k-2 is g_k and
vertex 2k-1 is G_k, so a letter's vertex is its rank and mutually inverse
letters are partners under v ^ 1.  A relation (a, b, c) contributes the three
edges {a, b^-1}, {b, c^-1}, {c, a^-1}; cyclic reduction is exactly what rules
out loops.
"""

from dataclasses import dataclass

import numpy as np

from .unionfind import UnionFind
from .words import letter_rank


def partner(v):
    """The vertex of the inverse letter."""
    return v ^ 1


class Multigraph:
    """Undirected, loop-free multigraph with integer edge multiplicities."""

    __slots__ = ("m", "_mult", "_deg")

    def __init__(self, m):
        if m < 0:
            raise ValueError("vertex count must be nonnegative")
        self.m = m
        self._mult = {}
        self._deg = [0] * m

    def add_edge(self, u, w, mult=1):
        if not (0 <= u < self.m and 0 <= w < self.m):
            raise ValueError(f"vertex out of range: ({u}, {w}) with m={self.m}")
        if u == w:
            raise ValueError(f"loop at vertex {u} is not allowed")
        if mult < 1:
            raise ValueError("multiplicity must be positive")
        key = (u, w) if u < w else (w, u)
        self._mult[key] = self._mult.get(key, 0) + mult
        self._deg[u] += mult
        self._deg[w] += mult

    def multiplicity(self, u, w):
        key = (u, w) if u < w else (w, u)
        return self._mult.get(key, 0)

    def degree(self, v):
        return self._deg[v]

    def degrees(self):
        return list(self._deg)

    def edge_count(self):
        """Total edge count, with multiplicity."""
        return sum(self._mult.values())

    def edges(self):
        """(u, w, mult) triples with u < w, sorted."""
        return [(u, w, k) for (u, w), k in sorted(self._mult.items())]

    def union(self, other):
        if self.m != other.m:
            raise ValueError("vertex counts differ")
        out = Multigraph(self.m)
        for (u, w), k in self._mult.items():
            out.add_edge(u, w, k)
        for (u, w), k in other._mult.items():
            out.add_edge(u, w, k)
        return out

    def adjacency(self):
        a = np.zeros((self.m, self.m), dtype=np.int64)
        for (u, w), k in self._mult.items():
            a[u, w] = a[w, u] = k
        return a

    def __eq__(self, other):
        if not isinstance(other, Multigraph):
            return NotImplemented
        return self.m == other.m and self._mult == other._mult

    def __repr__(self):
        return f"Multigraph(m={self.m}, edges={self.edge_count()})"


def _relation_edges(word):
    a, b, c = word
    return (
        (letter_rank(a), letter_rank(-b)),
        (letter_rank(b), letter_rank(-c)),
        (letter_rank(c), letter_rank(-a)),
    )


def build_link_graph(pres):
    graph = Multigraph(2 * pres.n)
    for w in pres.relations:
        for u, v in _relation_edges(w):
            graph.add_edge(u, v)
    return graph


@dataclass(frozen=True)
class LinkDecomposition:
    """One part per edge slot; part i holds relation r's i-th edge."""

    parts: tuple[Multigraph, Multigraph, Multigraph]
    # per relation, the three (u, w) pairs it contributed, in slot order
    provenance: tuple[tuple[tuple[int, int], ...], ...]

    def union(self):
        l1, l2, l3 = self.parts
        return l1.union(l2).union(l3)


def decompose_link_graph(pres):
    m = 2 * pres.n
    parts = (Multigraph(m), Multigraph(m), Multigraph(m))
    provenance = []
    for w in pres.relations:
        edges = _relation_edges(w)
        for part, (u, v) in zip(parts, edges):
            part.add_edge(u, v)
        provenance.append(edges)
    return LinkDecomposition(parts, tuple(provenance))


def is_connected(graph):
    """Connectivity over all m vertices; an isolated vertex disconnects."""
    if graph.m <= 1:
        return True
    uf = UnionFind(graph.m)
    for u, w, _ in graph.edges():
        uf.union(u, w)
    root = uf.find(0)
    return all(uf.find(v) == root for v in range(1, graph.m))


def degree_concentration(graph):
    """Mean degree and the largest relative deviation from it.

    Returns (mean, deviation); deviation is inf for an edgeless graph.
    """
    if graph.m == 0:
        raise ValueError("empty vertex set")
    degs = np.asarray(graph.degrees(), dtype=float)
    mean = float(degs.mean())
    if mean == 0.0:
        return 0.0, float("inf")
    dev = float(np.max(np.abs(degs - mean)) / mean)
    return mean, dev


def pair_capacity(n, u, w):
    """Candidate words per slot whose edge lands on the unordered pair {u, w}.

    A generic pair admits 4(n-1) words, 2(n-1) per orientation.  A pair of
    mutually inverse letters admits 2n-1 per orientation, and both
    orientations land on the same pair, so exhaustive enumeration realizes
    2(2n-1) edges there; this function reports the per-table value 2n-1.
    """
    if n < 1 or not (0 <= u < 2 * n and 0 <= w < 2 * n):
        raise ValueError("vertex out of range")
    if u == w:
        raise ValueError("loops carry no capacity")
    return 2 * n - 1 if w == partner(u) else 4 * (n - 1)


@dataclass(frozen=True)
class MultiplicityReport:
    max_multiplicity: int
    double_edges_form_matching: bool
    has_multi_inverse_pair: bool


def multiplicity_report(graph, pairing=partner):
    doubles = [(u, w) for u, w, k in graph.edges() if k >= 2]
    seen = set()
    matching = True
    for u, w in doubles:
        if u in seen or w in seen:
            matching = False
            break
        seen.update((u, w))
    multi_inverse = any(
        graph.multiplicity(v, pairing(v)) >= 2
        for v in range(graph.m)
        if pairing(v) != v
    )
    mx = max((k for _, _, k in graph.edges()), default=0)
    return MultiplicityReport(mx, matching, multi_inverse)


def dump_graph(graph):
    """Plain-text edge dump for debugging and tests."""
    lines = [f"v {graph.m}"]
    for u, w, k in graph.edges():
        lines.append(f"e {u} {w} {k}")
    return "\n".join(lines) + "\n"
