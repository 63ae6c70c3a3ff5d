"""Counting oracles, the index bijection, samplers, and the text format."""

import math

import pytest
from hypothesis import given, strategies as st

from trigroup.words import (
    FormatError,
    Presentation,
    count_words,
    count_words_containing,
    decode_word,
    encode_word,
    enumerate_words,
    format_letter,
    is_cyclically_reduced,
    letter_rank,
    parse_letter,
    parse_presentation,
    rank_letter,
    sample_binomial,
    sample_uniform,
    serialize_presentation,
)

# Frozen by exhaustive enumeration (see test_count_matches_enumeration).
KNOWN_COUNTS = {1: 2, 2: 28, 3: 126, 4: 344}
KNOWN_CONTAINING = {2: 26, 3: 98}


def canonical_key(word):
    return tuple(letter_rank(letter) for letter in word)


# --- letters ---

def test_letter_rank_order():
    # g1 < G1 < g2 < G2 < ...
    assert [letter_rank(x) for x in (1, -1, 2, -2, 3)] == [0, 1, 2, 3, 4]
    for r in range(20):
        assert letter_rank(rank_letter(r)) == r


def test_letter_tokens():
    assert format_letter(3) == "g3"
    assert format_letter(-3) == "G3"
    assert parse_letter("g7", 10) == 7
    assert parse_letter("G7", 10) == -7
    with pytest.raises(FormatError, match="malformed"):
        parse_letter("h3", 10)
    with pytest.raises(FormatError, match="out of range"):
        parse_letter("g11", 10)


def test_cyclic_reduction_predicate():
    assert is_cyclically_reduced((1, 2, 3))
    assert is_cyclically_reduced((1, 1, 1))
    assert not is_cyclically_reduced((1, -1, 2))   # adjacent inverse
    assert not is_cyclically_reduced((1, 2, -2))
    assert not is_cyclically_reduced((1, 2, -1))   # wraparound inverse


# --- counting ---

def test_count_matches_enumeration():
    for n, expected in KNOWN_COUNTS.items():
        ws = list(enumerate_words(n))
        assert len(ws) == len(set(ws)) == expected
        assert count_words(n) == expected
        assert all(is_cyclically_reduced(w) for w in ws)
        # enumeration order is the canonical order
        keys = [canonical_key(w) for w in ws]
        assert keys == sorted(keys)


def test_count_containing_formula():
    for n, expected in KNOWN_CONTAINING.items():
        assert count_words_containing(n) == expected
    for n in (2, 3, 4):
        ws = list(enumerate_words(n))
        for s in (1, n):
            cnt = sum(1 for w in ws if any(abs(letter) == s for letter in w))
            assert cnt == count_words_containing(n)


def test_count_set_difference_identity():
    for n in (2, 3, 4):
        assert count_words(n) - count_words(n - 1) == count_words_containing(n)


def test_type_census_by_enumeration():
    # One generator: 2n words.  Two: 24 per unordered pair.  Three: 48 per triple.
    for n in (2, 3, 4):
        census = {1: 0, 2: 0, 3: 0}
        for w in enumerate_words(n):
            census[len({abs(letter) for letter in w})] += 1
        assert census[1] == 2 * n
        assert census[2] == 24 * math.comb(n, 2)
        assert census[3] == 48 * math.comb(n, 3)


def test_counting_guards():
    with pytest.raises(ValueError):
        count_words(0)
    with pytest.raises(ValueError):
        list(enumerate_words(13))
    # wide integers: no overflow at large n
    assert count_words(10**6) == 8 * 10**18 - 12 * 10**12 + 6 * 10**6


# --- index bijection ---

def test_bijection_exhaustive():
    for n in (1, 2, 3, 4):
        for i, w in enumerate(enumerate_words(n)):
            assert decode_word(n, i) == w
            assert encode_word(n, w) == i


def test_decode_bounds():
    with pytest.raises(ValueError):
        decode_word(2, -1)
    with pytest.raises(ValueError):
        decode_word(2, count_words(2))


@given(st.integers(1, 6), st.data())
def test_bijection_random_words(n, data):
    m = 2 * n
    ra = data.draw(st.integers(0, m - 1))
    rb = data.draw(st.integers(0, m - 1).filter(lambda r: r != (ra ^ 1)))
    rc = data.draw(
        st.integers(0, m - 1).filter(lambda r: r != (ra ^ 1) and r != (rb ^ 1))
    )
    w = (rank_letter(ra), rank_letter(rb), rank_letter(rc))
    assert decode_word(n, encode_word(n, w)) == w


# --- sampling ---

def test_sample_binomial_edge_probabilities():
    assert sample_binomial(5, 0.0, seed=1).t == 0
    full = sample_binomial(2, 1.0, seed=1)
    assert full.t == count_words(2)
    assert set(full.relations) == set(enumerate_words(2))


def test_sample_binomial_output_shape():
    pres = sample_binomial(10, 0.001, seed=7)
    assert pres.n == 10
    assert all(is_cyclically_reduced(w) for w in pres.relations)
    assert len(set(pres.relations)) == pres.t
    keys = [canonical_key(w) for w in pres.relations]
    assert keys == sorted(keys)
    assert pres.provenance.model == "binomial"
    assert pres.provenance.seed == 7


def test_sample_determinism():
    a = sample_binomial(20, 1e-4, seed=123)
    b = sample_binomial(20, 1e-4, seed=123)
    assert a == b
    c = sample_binomial(20, 1e-4, seed=124)
    assert a != c  # overwhelmingly likely, frozen seeds


def test_sample_uniform_exact_count():
    for t in (0, 1, 17, 100):
        pres = sample_uniform(4, t, seed=3)
        assert pres.t == t
        assert len(set(pres.relations)) == t
    assert sample_uniform(1, 2, seed=0).t == 2  # the whole space at n=1
    with pytest.raises(ValueError):
        sample_uniform(1, 3, seed=0)
    with pytest.raises(ValueError):
        sample_binomial(5, 1.5, seed=0)


def test_sample_binomial_mean():
    # Empirical mean of t over 10^4 fixed seeds vs Binomial(count_words(10), p).
    n, p, runs = 10, 0.001, 10_000
    total = count_words(n)
    ts = [sample_binomial(n, p, seed=s).t for s in range(runs)]
    mean = sum(ts) / runs
    expected = total * p
    se = math.sqrt(total * p * (1 - p) / runs)
    assert abs(mean - expected) <= 3 * se


# --- presentation type ---

def test_presentation_rejects_bad_input():
    with pytest.raises(ValueError, match="duplicate"):
        Presentation(2, ((1, 2, 2), (1, 2, 2)))
    with pytest.raises(ValueError, match="cyclically reduced"):
        Presentation(2, ((1, -1, 2),))
    with pytest.raises(ValueError, match="invalid"):
        Presentation(2, ((1, 2, 3),))
    with pytest.raises(ValueError):
        Presentation(0, ())


# --- text format ---

def test_roundtrip_presentation_to_text():
    pres = sample_binomial(6, 0.01, seed=42)
    text = serialize_presentation(pres)
    back = parse_presentation(text)
    assert back == pres
    assert back.provenance == pres.provenance
    assert serialize_presentation(back) == text


def test_parse_plain_file():
    text = "n=3\n# a comment\ng1 g2 g3\n\ng1 g1 G2\n"
    pres = parse_presentation(text)
    assert pres.n == 3
    assert pres.relations == ((1, 2, 3), (1, 1, -2))
    assert pres.provenance is None
    assert serialize_presentation(pres) == "n=3\ng1 g2 g3\ng1 g1 G2\n"


def test_parse_diagnostics_are_distinct():
    with pytest.raises(FormatError, match="header"):
        parse_presentation("g1 g2 g3\n")
    with pytest.raises(FormatError, match="malformed letter"):
        parse_presentation("n=2\ng1 g2 x3\n")
    with pytest.raises(FormatError, match="out of range"):
        parse_presentation("n=2\ng1 g2 g3\n")
    with pytest.raises(FormatError, match="three letters"):
        parse_presentation("n=2\ng1 g2\n")
    with pytest.raises(FormatError, match="not cyclically reduced"):
        parse_presentation("n=2\ng1 G1 g2\n")
    with pytest.raises(FormatError, match="duplicate"):
        parse_presentation("n=2\ng1 g2 g2\ng1 g2 g2\n")
    with pytest.raises(FormatError, match="header"):
        parse_presentation("")


@given(st.integers(1, 5), st.integers(0, 30), st.integers(0, 2**32))
def test_roundtrip_random_presentations(n, t, seed):
    pres = sample_uniform(n, min(t, count_words(n)), seed)
    assert parse_presentation(serialize_presentation(pres)) == pres
