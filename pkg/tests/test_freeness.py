"""Elimination certificates, their replay validator, and the subset oracle."""

import math

import pytest
from hypothesis import given, strategies as st

from trigroup.freeness import (
    FreenessCertificate,
    RelationKind,
    build_hypergraph,
    certificate_record,
    classify_relation,
    format_certificate,
    greedy_eliminate,
    hypergraph_diagnostics,
    subset_property_check,
    validate_certificate,
)
from trigroup.words import Presentation, count_words, rank_letter, sample_uniform


def pres(n, *relations):
    return Presentation(n, tuple(relations))


# --- classification ---

def test_classify_examples():
    c = classify_relation((1, 2, -3))
    assert c.kind == RelationKind.TYPE3 and c.pivots == {1, 2, 3}
    c = classify_relation((1, 1, -2))
    assert c.kind == RelationKind.TYPE2 and c.pivots == {2}
    c = classify_relation((1, 1, 1))
    assert c.kind == RelationKind.TYPE1 and c.pivots == frozenset()


@given(st.integers(1, 6), st.data())
def test_classify_pivot_sizes(n, data):
    m = 2 * n
    ra = data.draw(st.integers(0, m - 1))
    rb = data.draw(st.integers(0, m - 1).filter(lambda r: r != (ra ^ 1)))
    rc = data.draw(
        st.integers(0, m - 1).filter(lambda r: r != (ra ^ 1) and r != (rb ^ 1))
    )
    word = (rank_letter(ra), rank_letter(rb), rank_letter(rc))
    c = classify_relation(word)
    assert len(c.pivots) == {RelationKind.TYPE1: 0, RelationKind.TYPE2: 1, RelationKind.TYPE3: 3}[c.kind]
    assert c.pivots <= {abs(letter) for letter in word}


def test_build_hypergraph_example():
    hg = build_hypergraph(pres(2, (1, 1, 2), (2, 2, 1)))
    assert hg.n == 2
    assert len(hg.edges) == 2
    assert hg.edges[0].vertices == {1, 2} and hg.edges[0].pivots == {2}
    assert hg.edges[1].vertices == {1, 2} and hg.edges[1].pivots == {1}
    assert hg.edges[0].relation_id == 0 and hg.edges[1].relation_id == 1


# --- greedy elimination ---

def test_eliminate_single_type3():
    out = greedy_eliminate(pres(3, (1, 2, -3)))
    assert out.succeeded
    assert out.certificate.eliminations == ((1, 0),)  # lowest generator wins
    assert out.certificate.rank == 2


def test_eliminate_type2_pivot():
    out = greedy_eliminate(pres(2, (1, 1, 2)))
    assert out.succeeded
    assert out.certificate.eliminations == ((2, 0),)
    assert out.certificate.rank == 1


def test_eliminate_empty_presentation():
    out = greedy_eliminate(pres(4))
    assert out.succeeded
    assert out.certificate == FreenessCertificate((), 4)


def test_eliminate_chain():
    # g3 frees relation 1, which then frees g2 in relation 0.
    p = pres(3, (1, 1, 2), (2, 2, 3))
    out = greedy_eliminate(p)
    assert out.succeeded
    assert out.certificate.eliminations == ((3, 1), (2, 0))
    assert out.certificate.rank == 1
    validate_certificate(p, out.certificate)


def test_eliminate_stuck_cases():
    out = greedy_eliminate(pres(1, (1, 1, 1)))
    assert not out.succeeded and out.residual == (0,)
    out = greedy_eliminate(pres(2, (1, 1, 2), (2, 2, 1)))
    assert not out.succeeded and out.residual == (0, 1)
    # partial progress: the isolated type-3 relation goes, the tangle stays
    out = greedy_eliminate(pres(5, (1, 1, 2), (2, 2, 1), (3, 4, 5)))
    assert not out.succeeded and out.residual == (0, 1)


def test_validator_accepts_and_rejects():
    p = pres(3, (1, 1, 2), (2, 2, 3))
    cert = greedy_eliminate(p).certificate
    validate_certificate(p, cert)

    with pytest.raises(ValueError, match="rank"):
        validate_certificate(p, FreenessCertificate(cert.eliminations, 2))
    with pytest.raises(ValueError, match="steps"):
        validate_certificate(p, FreenessCertificate(cert.eliminations[:1], 1))
    # wrong order: g2 still occurs in relation 1 when the first step runs
    bad = FreenessCertificate(((2, 0), (3, 1)), 1)
    with pytest.raises(ValueError, match="also occurs"):
        validate_certificate(p, bad)
    bad = FreenessCertificate(((3, 0), (2, 1)), 1)
    with pytest.raises(ValueError, match="occurs 0 times"):
        validate_certificate(p, bad)
    bad = FreenessCertificate(((3, 1), (3, 0)), 1)
    with pytest.raises(ValueError, match="already eliminated"):
        validate_certificate(p, bad)


def test_certificate_serialization():
    cert = greedy_eliminate(pres(3, (1, 1, 2), (2, 2, 3))).certificate
    assert format_certificate(cert) == (
        "eliminate g3 using relation 1\neliminate g2 using relation 0\nrank 1\n"
    )
    assert certificate_record(cert) == {"eliminations": [[3, 1], [2, 0]], "rank": 1}


# --- subset oracle ---

def test_subset_property_examples():
    assert subset_property_check(pres(3, (1, 2, -3)))
    assert not subset_property_check(pres(1, (1, 1, 1)))
    assert not subset_property_check(pres(2, (1, 1, 2), (2, 2, 1)))
    assert subset_property_check(pres(4))  # vacuously true
    with pytest.raises(ValueError, match="guarded"):
        subset_property_check(sample_uniform(3, 13, seed=0))


def test_subset_property_agrees_with_greedy():
    # 10^3 seeded instances, n = 6, |R| <= 6.  The two are equivalent:
    # the oracle implies greedy succeeds, and a full greedy run certifies
    # the property for every subset.
    n = 6
    total = count_words(n)
    for seed in range(1000):
        t = seed % 7
        p = sample_uniform(n, min(t, total), seed)
        oracle = subset_property_check(p)
        out = greedy_eliminate(p)
        assert oracle == out.succeeded, (seed, oracle, out)
        if out.succeeded:
            validate_certificate(p, out.certificate)


# --- diagnostics ---

def test_diagnostics_single_triangle():
    report = hypergraph_diagnostics(build_hypergraph(pres(3, (1, 2, 3))))
    assert report.components == ((3, 3),)
    assert report.max_component_size == 3
    assert report.one_edge_count == 0
    assert report.two_edges_form_matching
    assert report.component_meets_at_most_one_two_edge


def test_diagnostics_two_edge_collision():
    # both 2-edges pivot on g2: not a matching, and the trivial component {2}
    # meets two of them
    report = hypergraph_diagnostics(build_hypergraph(pres(3, (1, 1, 2), (3, 3, 2))))
    assert not report.two_edges_form_matching
    assert not report.component_meets_at_most_one_two_edge
    assert report.max_component_size == 0
    assert report.components == ()


def test_diagnostics_parallel_two_edges():
    report = hypergraph_diagnostics(build_hypergraph(pres(2, (1, 1, 2), (1, 1, -2))))
    assert not report.two_edges_form_matching


def test_diagnostics_mixed():
    p = pres(
        7,
        (1, 1, 1),            # 1-edge
        (1, 2, 3), (3, 4, 5), # chained 3-edges
        (6, 6, 7),            # 2-edge away from the chain
    )
    report = hypergraph_diagnostics(build_hypergraph(p))
    assert report.one_edge_count == 1
    assert report.components == ((5, 4),)  # vertices 1..5; only 3 has degree 2
    assert report.max_component_size == 5
    assert report.two_edges_form_matching
    assert report.component_meets_at_most_one_two_edge


def test_component_growth_is_logged():
    # Sparse regime: record the max 3-edge component over 100 seeds and the
    # implied constant against log n.  Diagnostic only, no sharp assertion.
    from trigroup.words import sample_binomial

    n, p = 100, 0.01 / 100**2
    sizes = []
    for seed in range(100):
        hg = build_hypergraph(sample_binomial(n, p, seed))
        sizes.append(hypergraph_diagnostics(hg).max_component_size)
    biggest = max(sizes)
    constant = biggest / math.log(n)
    print(f"max 3-edge component over 100 seeds: {biggest} (= {constant:.2f} * log n)")
    assert biggest <= n


@given(st.integers(1, 5), st.integers(0, 12), st.integers(0, 2**32))
def test_hypergraph_edge_count_matches(n, t, seed):
    p = sample_uniform(n, min(t, count_words(n)), seed)
    hg = build_hypergraph(p)
    assert len(hg.edges) == p.t
    for e in hg.edges:
        assert e.pivots <= e.vertices
        assert 1 <= len(e.vertices) <= 3
