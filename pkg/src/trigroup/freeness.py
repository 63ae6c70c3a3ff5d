"""Relation classification, elimination certificates, and hypergraph diagnostics.

A generator that occurs, counting signs as equal, exactly once across all
current relations can be eliminated together with the relation holding that
occurrence; the quotient map is an isomorphism onto the group presented by
the remaining relations on the remaining generators.  A presentation whose
relations are consumed entirely this way therefore defines a free group of
rank n - t.  The procedure is greedy and deterministic: the lowest-index
eliminable generator always goes first.
"""

import heapq
from collections import Counter, defaultdict
from dataclasses import dataclass
from enum import IntEnum

from .unionfind import UnionFind

SUBSET_CHECK_LIMIT = 12


class RelationKind(IntEnum):
    TYPE1 = 1   # one generator, e.g. aaa
    TYPE2 = 2   # two generators, e.g. aab; the singly occurring one is the pivot
    TYPE3 = 3   # three distinct generators; every letter is pivotal


@dataclass(frozen=True)
class RelationClass:
    kind: RelationKind
    pivots: frozenset[int]


def classify_relation(word):
    """Kind and pivot set of a word, blind to letter signs."""
    gens = [abs(letter) for letter in word]
    distinct = set(gens)
    if len(distinct) == 1:
        return RelationClass(RelationKind.TYPE1, frozenset())
    if len(distinct) == 3:
        return RelationClass(RelationKind.TYPE3, frozenset(distinct))
    counts = Counter(gens)
    (pivot,) = (g for g, k in counts.items() if k == 1)
    return RelationClass(RelationKind.TYPE2, frozenset((pivot,)))


@dataclass(frozen=True)
class Hyperedge:
    relation_id: int
    vertices: frozenset[int]
    pivots: frozenset[int]


@dataclass(frozen=True)
class Hypergraph:
    """Vertices are the generators 1..n; one edge per relation."""

    n: int
    edges: tuple[Hyperedge, ...]


def build_hypergraph(pres):
    edges = []
    for i, w in enumerate(pres.relations):
        cls = classify_relation(w)
        edges.append(Hyperedge(i, frozenset(abs(letter) for letter in w), cls.pivots))
    return Hypergraph(pres.n, tuple(edges))


# --- elimination ---

@dataclass(frozen=True)
class FreenessCertificate:
    """(generator, relation id) eliminations in order, plus the free rank."""

    eliminations: tuple[tuple[int, int], ...]
    rank: int


@dataclass(frozen=True)
class EliminationOutcome:
    certificate: FreenessCertificate | None
    residual: tuple[int, ...]

    @property
    def succeeded(self):
        return self.certificate is not None


def greedy_eliminate(pres):
    """Run the elimination to exhaustion.

    A pair (a, r) qualifies when generator a occurs exactly once among all
    live relations and that occurrence sits in r; equivalently, neither a nor
    its inverse appears outside r and exactly one letter of r is a or its
    inverse.  Qualifying generators are kept in a min-heap, so ties break
    toward the lowest generator index, and a count-1 generator pins down its
    relation uniquely.  Inconclusive outcomes return the residual relations.
    """
    t = pres.t
    counts = [0] * (pres.n + 1)
    containing = defaultdict(set)
    per_relation = []
    for i, w in enumerate(pres.relations):
        occ = Counter(abs(letter) for letter in w)
        per_relation.append(occ)
        for g, k in occ.items():
            counts[g] += k
            containing[g].add(i)

    heap = [g for g in range(1, pres.n + 1) if counts[g] == 1]
    heapq.heapify(heap)
    live = [True] * t
    used = [False] * (pres.n + 1)
    eliminations = []
    remaining = t
    while remaining and heap:
        g = heapq.heappop(heap)
        if used[g] or counts[g] != 1:
            continue  # stale entry
        (r,) = containing[g]
        live[r] = False
        used[g] = True
        eliminations.append((g, r))
        remaining -= 1
        for h, k in per_relation[r].items():
            counts[h] -= k
            containing[h].discard(r)
            if counts[h] == 1 and not used[h]:
                heapq.heappush(heap, h)
    if remaining:
        return EliminationOutcome(None, tuple(i for i in range(t) if live[i]))
    cert = FreenessCertificate(tuple(eliminations), pres.n - t)
    return EliminationOutcome(cert, ())


def validate_certificate(pres, cert):
    """Replay a certificate against the presentation, independently.

    Deliberately naive (full rescans), so it shares no state or shortcuts
    with greedy_eliminate.  Raises ValueError on the first violation.
    """
    t = pres.t
    if len(cert.eliminations) != t:
        raise ValueError(f"certificate has {len(cert.eliminations)} steps for {t} relations")
    if cert.rank != pres.n - t:
        raise ValueError(f"rank {cert.rank} != n - t = {pres.n - t}")
    live = set(range(t))
    used = set()
    for step, (g, r) in enumerate(cert.eliminations):
        if not 1 <= g <= pres.n:
            raise ValueError(f"step {step}: generator {g} out of range")
        if g in used:
            raise ValueError(f"step {step}: generator {g} already eliminated")
        if r not in live:
            raise ValueError(f"step {step}: relation {r} not live")
        occ = sum(1 for letter in pres.relations[r] if abs(letter) == g)
        if occ != 1:
            raise ValueError(f"step {step}: generator {g} occurs {occ} times in relation {r}")
        for other in live:
            if other != r and any(abs(letter) == g for letter in pres.relations[other]):
                raise ValueError(f"step {step}: generator {g} also occurs in relation {other}")
        live.remove(r)
        used.add(g)


def format_certificate(cert):
    lines = [f"eliminate g{g} using relation {r}" for g, r in cert.eliminations]
    lines.append(f"rank {cert.rank}")
    return "\n".join(lines) + "\n"


def certificate_record(cert):
    """JSON-ready form of a certificate."""
    return {
        "eliminations": [[g, r] for g, r in cert.eliminations],
        "rank": cert.rank,
    }


def subset_property_check(pres):
    """Brute-force check that every nonempty relation subset has an eliminable pair.

    Exponential in t, hence hard-guarded; used as an oracle against
    greedy_eliminate on small instances.
    """
    t = pres.t
    if t > SUBSET_CHECK_LIMIT:
        raise ValueError(f"subset check is guarded to t <= {SUBSET_CHECK_LIMIT}")
    occs = [Counter(abs(letter) for letter in w) for w in pres.relations]
    for mask in range(1, 1 << t):
        total = Counter()
        for i in range(t):
            if mask >> i & 1:
                total.update(occs[i])
        if 1 not in total.values():
            return False
    return True


# --- diagnostics on the 3-edge structure ---

@dataclass(frozen=True)
class HypergraphReport:
    one_edge_count: int
    # (size, number of vertices lying in exactly one 3-edge) per nontrivial
    # component of the 3-edge-only subgraph, largest first
    components: tuple[tuple[int, int], ...]
    max_component_size: int
    two_edges_form_matching: bool
    component_meets_at_most_one_two_edge: bool


def hypergraph_diagnostics(hg):
    uf = UnionFind(hg.n + 1)
    degree3 = [0] * (hg.n + 1)
    one_edges = 0
    two_edges = []
    for e in hg.edges:
        size = len(e.vertices)
        if size == 1:
            one_edges += 1
        elif size == 2:
            two_edges.append(e)
        else:
            a, b, c = sorted(e.vertices)
            uf.union(a, b)
            uf.union(a, c)
            for v in (a, b, c):
                degree3[v] += 1

    members = uf.groups()
    components = []
    for root, verts in members.items():
        verts = [v for v in verts if v >= 1]
        if len(verts) < 2:
            continue  # vertices untouched by 3-edges form trivial components
        deg1 = sum(1 for v in verts if degree3[v] == 1)
        components.append((len(verts), deg1))
    components.sort(reverse=True)

    seen_vertices = set()
    matching = True
    for e in two_edges:
        if e.vertices & seen_vertices:
            matching = False
            break
        seen_vertices |= e.vertices

    # components here include the trivial single-vertex ones
    touched = defaultdict(set)
    meets_one = True
    for e in two_edges:
        for v in e.vertices:
            touched[uf.find(v)].add(e.relation_id)
    if any(len(ids) > 1 for ids in touched.values()):
        meets_one = False

    return HypergraphReport(
        one_edge_count=one_edges,
        components=tuple(components),
        max_component_size=components[0][0] if components else 0,
        two_edges_form_matching=matching,
        component_meets_at_most_one_two_edge=meets_one,
    )
