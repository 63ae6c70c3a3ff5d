"""Letters, cyclically reduced length-3 words, and presentation sampling.

A letter is a nonzero integer: ``k`` stands for the generator ``g_k`` and
``-k`` for its formal inverse ``G_k``.  A word is a tuple of three letters in
which no two cyclically adjacent letters are mutually inverse.  Words are
ordered lexicographically on letter ranks, with ``g1 < G1 < g2 < G2 < ...``;
that order fixes the bijection between words and indices
``0 .. count_words(n) - 1`` that the samplers draw from.
"""

import math
import re
from dataclasses import dataclass, field

import numpy as np

Word = tuple[int, int, int]

ENUMERATION_LIMIT = 12
_UINT64_MASK = 2**64 - 1
_INT64_MAX = 2**63 - 1


class FormatError(ValueError):
    """Malformed presentation text."""


# --- Letters ---

def letter_rank(letter):
    """Position of a letter in the order g1 < G1 < g2 < G2 < ..."""
    return 2 * (abs(letter) - 1) + (1 if letter < 0 else 0)


def rank_letter(rank):
    """Inverse of letter_rank."""
    k = rank // 2 + 1
    return -k if rank & 1 else k


def format_letter(letter):
    return f"g{letter}" if letter > 0 else f"G{-letter}"


_LETTER_RE = re.compile(r"([gG])([1-9][0-9]*)$")


def parse_letter(token, n):
    m = _LETTER_RE.match(token)
    if not m:
        raise FormatError(f"malformed letter token {token!r}")
    k = int(m.group(2))
    if k > n:
        raise FormatError(f"generator index out of range in {token!r} (n={n})")
    return k if m.group(1) == "g" else -k


def is_cyclically_reduced(word):
    """True iff no two cyclically adjacent letters are mutually inverse."""
    a, b, c = word
    return b != -a and c != -b and a != -c


def _check_word(n, word):
    if len(word) != 3:
        raise ValueError(f"word must have three letters, got {word!r}")
    for letter in word:
        if not isinstance(letter, int) or letter == 0 or abs(letter) > n:
            raise ValueError(f"letter {letter!r} invalid for n={n}")
    if not is_cyclically_reduced(word):
        raise ValueError(f"word {word!r} is not cyclically reduced")


# --- Counting ---

def _require_positive(n):
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"n must be a positive integer, got {n!r}")


def count_words(n):
    """Number of cyclically reduced length-3 words over n generators."""
    _require_positive(n)
    return 8 * n**3 - 12 * n**2 + 6 * n


def count_words_containing(n):
    """Words in which a fixed generator or its inverse occurs."""
    _require_positive(n)
    return 48 * math.comb(n - 1, 2) + 24 * (n - 1) + 2


def enumerate_words(n):
    """Yield every word once, in canonical (index) order.

    Exhaustive, so guarded to small n; use decode_word for random access.
    """
    _require_positive(n)
    if n > ENUMERATION_LIMIT:
        raise ValueError(f"enumeration is guarded to n <= {ENUMERATION_LIMIT}")
    m = 2 * n
    for ra in range(m):
        ia = ra ^ 1
        for rb in range(m):
            if rb == ia:
                continue
            ib = rb ^ 1
            for rc in range(m):
                if rc == ib or rc == ia:
                    continue
                yield (rank_letter(ra), rank_letter(rb), rank_letter(rc))


# --- Index bijection ---
#
# For a fixed first rank ra there are (m-1) + (m-2)^2 words: the middle rank
# rb runs over the m-1 ranks other than ra^1, and the last rank avoids
# {ra^1, rb^1}, a set of size 1 when rb == ra and 2 otherwise.

def encode_word(n, word):
    """Canonical index of a word; inverse of decode_word."""
    _require_positive(n)
    _check_word(n, word)
    m = 2 * n
    per_a = (m - 1) + (m - 2) ** 2
    ra, rb, rc = (letter_rank(letter) for letter in word)
    ia = ra ^ 1
    ja = ra - (1 if ia < ra else 0)
    jb = rb - (1 if ia < rb else 0)
    base = jb * (m - 2) + (1 if jb > ja else 0)
    off = rc - (1 if ia < rc else 0)
    if rb != ra:
        off -= 1 if (rb ^ 1) < rc else 0
    return ra * per_a + base + off


def decode_word(n, index):
    """Word at a canonical index, computed arithmetically (no enumeration)."""
    _require_positive(n)
    total = count_words(n)
    if not 0 <= index < total:
        raise ValueError(f"index {index} out of range for n={n} (total {total})")
    m = 2 * n
    per_a = (m - 1) + (m - 2) ** 2
    ra, rem = divmod(index, per_a)
    ia = ra ^ 1
    ja = ra - (1 if ia < ra else 0)
    head = ja * (m - 2)
    if rem < head:
        jb = rem // (m - 2)
    elif rem < head + (m - 1):
        jb = ja
    else:
        jb = (rem - 1) // (m - 2)
    start = jb * (m - 2) + (1 if jb > ja else 0)
    off = rem - start
    rb = jb + (1 if jb >= ia else 0)
    if rb == ra:
        excluded = (ia,)
    else:
        ib = rb ^ 1
        excluded = (ia, ib) if ia < ib else (ib, ia)
    rc = off
    for e in excluded:
        if rc >= e:
            rc += 1
    return (rank_letter(ra), rank_letter(rb), rank_letter(rc))


# --- Presentations ---

@dataclass(frozen=True)
class Provenance:
    """How a presentation was produced; informational, ignored by equality."""

    model: str
    seed: int
    p: float | None = None
    t: int | None = None


@dataclass(frozen=True)
class Presentation:
    """Generator count plus an ordered, duplicate-free list of relations."""

    n: int
    relations: tuple[Word, ...]
    provenance: Provenance | None = field(default=None, compare=False)

    def __post_init__(self):
        _require_positive(self.n)
        rels = tuple(tuple(w) for w in self.relations)
        object.__setattr__(self, "relations", rels)
        seen = set()
        for w in rels:
            _check_word(self.n, w)
            if w in seen:
                raise ValueError(f"duplicate relation {w!r}")
            seen.add(w)

    @property
    def t(self):
        return len(self.relations)


# --- Sampling ---
#
# All randomness comes from Philox, a counter-based 64-bit generator, keyed
# directly with the caller's seed.  There is no ambient randomness anywhere.

def _rng(seed):
    return np.random.Generator(np.random.Philox(key=int(seed) & _UINT64_MASK))


def _distinct_indices(rng, total, count):
    """Uniform count-subset of range(total), by rejection on duplicates."""
    if count == 0:
        return []
    if 2 * count > total:
        # Dense draws are cheaper through the complement.
        excluded = set(_distinct_indices(rng, total, total - count))
        return [i for i in range(total) if i not in excluded]
    chosen = set()
    while len(chosen) < count:
        need = count - len(chosen)
        for v in rng.integers(0, total, size=need, dtype=np.uint64):
            chosen.add(int(v))
    return sorted(chosen)


def _sampling_total(n):
    total = count_words(n)
    if total > _INT64_MAX:
        raise ValueError(f"n={n} exceeds the index sampler's 64-bit range")
    return total


def sample_binomial(n, p, seed):
    """Include every candidate word independently with probability p.

    Drawn as Binomial(count_words(n), p) followed by that many distinct
    uniform indices, decoded through the canonical bijection; relations come
    back in canonical order.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p!r}")
    total = _sampling_total(n)
    rng = _rng(seed)
    t = int(rng.binomial(total, p))
    indices = _distinct_indices(rng, total, t)
    relations = tuple(decode_word(n, i) for i in indices)
    return Presentation(n, relations, Provenance("binomial", int(seed), p=float(p)))


def sample_uniform(n, t, seed):
    """Uniformly random set of exactly t distinct relations."""
    total = _sampling_total(n)
    if not 0 <= t <= total:
        raise ValueError(f"t must lie in [0, {total}], got {t!r}")
    rng = _rng(seed)
    indices = _distinct_indices(rng, total, t)
    relations = tuple(decode_word(n, i) for i in indices)
    return Presentation(n, relations, Provenance("uniform", int(seed), t=int(t)))


# --- Text format ---
#
# Line 1 is "n=<int>"; every later non-comment line holds one relation as
# three whitespace-separated tokens g<k> or G<k>.  "#" starts a comment line;
# the serializer records provenance in one such comment and the parser
# restores it, so round trips are exact.

_PROV_RE = re.compile(
    r"#\s*provenance:\s*model=(\S+)\s+seed=(-?\d+)(?:\s+p=(\S+))?(?:\s+t=(\d+))?\s*$"
)


def serialize_presentation(pres):
    lines = [f"n={pres.n}"]
    prov = pres.provenance
    if prov is not None:
        entry = f"# provenance: model={prov.model} seed={prov.seed}"
        if prov.p is not None:
            entry += f" p={prov.p!r}"
        if prov.t is not None:
            entry += f" t={prov.t}"
        lines.append(entry)
    for w in pres.relations:
        lines.append(" ".join(format_letter(letter) for letter in w))
    return "\n".join(lines) + "\n"


def parse_presentation(text):
    n = None
    provenance = None
    relations = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line.startswith("#"):
            m = _PROV_RE.match(line)
            if m and provenance is None:
                provenance = Provenance(
                    model=m.group(1),
                    seed=int(m.group(2)),
                    p=float(m.group(3)) if m.group(3) else None,
                    t=int(m.group(4)) if m.group(4) else None,
                )
            continue
        if not line:
            continue
        if n is None:
            m = re.match(r"n\s*=\s*([1-9][0-9]*)$", line)
            if not m:
                raise FormatError(f"line {lineno}: expected 'n=<int>' header, got {raw!r}")
            n = int(m.group(1))
            continue
        tokens = line.split()
        if len(tokens) != 3:
            raise FormatError(f"line {lineno}: expected three letters, got {len(tokens)}")
        try:
            word = tuple(parse_letter(tok, n) for tok in tokens)
        except FormatError as exc:
            raise FormatError(f"line {lineno}: {exc}") from None
        if not is_cyclically_reduced(word):
            raise FormatError(f"line {lineno}: word {line!r} is not cyclically reduced")
        if word in seen:
            raise FormatError(f"line {lineno}: duplicate relation {line!r}")
        seen.add(word)
        relations.append(word)
    if n is None:
        raise FormatError("missing 'n=<int>' header")
    return Presentation(n, tuple(relations), provenance)
