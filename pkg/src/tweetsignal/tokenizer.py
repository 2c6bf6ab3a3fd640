"""Text normalization into term baskets and term-frequency tables.

A tweet becomes a *transaction*: the set of its normalized terms.  The
normalization rules are deliberately simple and deterministic:

* NFC unicode normalization, then lowercase;
* URLs (``http://`` / ``https://`` schemes) removed;
* user mentions (whitespace tokens starting with ``@``) removed;
* every other non-alphanumeric code point acts as a separator, which
  strips ``#`` from hashtags and ``$`` from cashtags while keeping the word;
* an internal apostrophe cuts the token: ``apple's`` -> ``apple``;
* tokens shorter than ``min_len`` and stopwords are dropped, order is kept.
"""

from __future__ import annotations

import re
import unicodedata
from collections import Counter
from dataclasses import dataclass, field
from datetime import date
from importlib import resources
from typing import TYPE_CHECKING, Iterable, Mapping, Sequence

from .errors import DataError

if TYPE_CHECKING:
    from .corpus import Corpus

_URL_RE = re.compile(r"https?://\S+")
_WORD_RE = re.compile(r"[^\W_]+(?:'[^\W_]+)*", re.UNICODE)

_builtin_stopwords_cache: frozenset[str] | None = None


def builtin_stopwords() -> frozenset[str]:
    """The stopword list shipped with the package (~120 common English words)."""
    global _builtin_stopwords_cache
    if _builtin_stopwords_cache is None:
        text = resources.files("tweetsignal").joinpath("data/stopwords.txt").read_text("utf-8")
        _builtin_stopwords_cache = _parse_stopwords(text.splitlines())
    return _builtin_stopwords_cache


def _parse_stopwords(lines: Iterable[str]) -> frozenset[str]:
    words = set()
    for line in lines:
        word = line.strip()
        if not word or word.startswith("#"):
            continue
        words.add(word.lower())
    return frozenset(words)


def load_stopwords(path) -> frozenset[str]:
    """Load a stopword file: one lowercase word per line, '#' comments allowed."""
    try:
        with open(path, encoding="utf-8") as fh:
            return _parse_stopwords(fh)
    except OSError as exc:
        raise DataError(f"cannot read stopword file {path}: {exc}") from exc


@dataclass(frozen=True)
class TokenConfig:
    """Normalization knobs.  ``stopwords=None`` selects the built-in list."""

    min_len: int = 2
    stopwords: frozenset[str] | None = None

    def effective_stopwords(self) -> frozenset[str]:
        return builtin_stopwords() if self.stopwords is None else self.stopwords


DEFAULT_CONFIG = TokenConfig()

# Used for keyword membership tests (corpus filtering): nothing may be
# dropped, otherwise a keyword that happens to be short or a stopword
# could never match.
MATCH_CONFIG = TokenConfig(min_len=1, stopwords=frozenset())


def normalize_text(text: str, config: TokenConfig = DEFAULT_CONFIG) -> list[str]:
    """Normalize raw tweet text into an ordered token list (duplicates kept)."""
    # second NFC pass: lowercasing can denormalize (e.g. dotted capital I)
    cleaned = unicodedata.normalize("NFC", unicodedata.normalize("NFC", text).lower())
    cleaned = _URL_RE.sub(" ", cleaned)
    stopwords = config.effective_stopwords()
    tokens: list[str] = []
    for chunk in cleaned.split():
        if chunk.startswith("@"):
            continue
        for segment in _WORD_RE.findall(chunk):
            word = segment.split("'", 1)[0]
            if len(word) < config.min_len or word in stopwords:
                continue
            tokens.append(word)
    return tokens


@dataclass(frozen=True)
class Transaction:
    """One tweet as a basket of terms.

    ``counts`` keeps raw token multiplicities (term -> occurrences in the
    tweet); it backs the occurrence totals of :func:`term_stats` and is
    redundant with ``terms`` otherwise.
    """

    tweet_id: str
    terms: frozenset[str]
    date: date
    counts: Mapping[str, int] = field(default=None, compare=False, hash=False)  # type: ignore[assignment]

    def __post_init__(self):
        if self.counts is None:
            object.__setattr__(self, "counts", {t: 1 for t in self.terms})


def to_transactions(corpus: "Corpus", config: TokenConfig = DEFAULT_CONFIG) -> list[Transaction]:
    """One transaction per tweet, in corpus order.

    Tweets that normalize to nothing stay as empty transactions so the
    support denominator still counts them.
    """
    out = []
    for tweet in corpus.tweets:
        tokens = normalize_text(tweet.text, config)
        counts = dict(Counter(tokens))
        out.append(
            Transaction(
                tweet_id=tweet.id,
                terms=frozenset(counts),
                date=tweet.timestamp.date(),
                counts=counts,
            )
        )
    return out


@dataclass
class TermStats:
    """Per-term document frequency and raw occurrence totals."""

    n_transactions: int
    document_frequency: dict[str, int]
    total_occurrences: dict[str, int]

    def sorted_terms(self) -> list[tuple[str, int, int]]:
        """(term, document_frequency, total_occurrences), most frequent first.

        Ties broken lexicographically.
        """
        return sorted(
            ((t, df, self.total_occurrences[t]) for t, df in self.document_frequency.items()),
            key=lambda item: (-item[1], item[0]),
        )

    def top(self, limit: int) -> list[tuple[str, int, int]]:
        return self.sorted_terms()[:limit]


def term_stats(transactions: Sequence[Transaction]) -> TermStats:
    """Count, for every term seen at least once, the transactions containing it."""
    df: Counter = Counter()
    occ: Counter = Counter()
    for tx in transactions:
        df.update(tx.terms)
        for term, k in tx.counts.items():
            occ[term] += k
    return TermStats(
        n_transactions=len(transactions),
        document_frequency=dict(df),
        total_occurrences=dict(occ),
    )
