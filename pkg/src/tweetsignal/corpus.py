"""Tweet ingestion: load, validate, filter, and bucket local tweet files.

Two file formats are supported: JSONL (one record per line with fields
``id``, ``created_at``, ``user``, ``text``) and a CSV fallback with exactly
that header.  A :class:`FetchClient` seam with the same record shape leaves
room for a live network client later without touching anything downstream.
"""

from __future__ import annotations

import csv
import hashlib
import json
from dataclasses import dataclass
from datetime import date, datetime, timezone
from pathlib import Path
from typing import Iterable, Mapping, Protocol

from . import tokenizer
from .errors import DataError

MAX_TEXT_CODEPOINTS = 1000


def _parse_timestamp(raw: str, where: str) -> datetime:
    """ISO-8601 to a UTC instant; values without a zone are taken as UTC."""
    if not isinstance(raw, str) or not raw.strip():
        raise DataError(f"{where}: missing or empty timestamp")
    text = raw.strip()
    if text.endswith(("Z", "z")):
        text = text[:-1] + "+00:00"
    try:
        stamp = datetime.fromisoformat(text)
    except ValueError as exc:
        raise DataError(f"{where}: unparseable timestamp {raw!r}") from exc
    if stamp.tzinfo is None:
        stamp = stamp.replace(tzinfo=timezone.utc)
    return stamp.astimezone(timezone.utc).replace(microsecond=0)


@dataclass(frozen=True)
class Tweet:
    id: str
    author: str
    timestamp: datetime
    text: str

    def __post_init__(self):
        if not self.id:
            raise DataError("tweet id must be non-empty")
        if len(self.text) > MAX_TEXT_CODEPOINTS:
            raise DataError(
                f"tweet {self.id}: text exceeds {MAX_TEXT_CODEPOINTS} code points"
            )
        if self.timestamp.tzinfo is None:
            raise DataError(f"tweet {self.id}: timestamp must be timezone-aware")


@dataclass(frozen=True)
class CorpusFilter:
    """Keyword / author / date-range selection.  Empty keywords match all."""

    keywords: frozenset[str] = frozenset()
    users: frozenset[str] | None = None
    date_range: tuple[datetime, datetime] | None = None

    def __post_init__(self):
        if self.date_range is not None:
            start, end = self.date_range
            if start > end:
                raise ValueError("date_range start must be <= end")


@dataclass(frozen=True)
class Corpus:
    """Tweets sorted ascending by (timestamp, id), ids unique."""

    tweets: tuple[Tweet, ...]
    source_digest: str

    def __len__(self) -> int:
        return len(self.tweets)


class FetchClient(Protocol):
    """Seam for a future live tweet source: yields records shaped like
    one JSONL line (``id``, ``created_at``, ``user``, ``text``)."""

    def fetch(self) -> Iterable[Mapping[str, object]]: ...


def _tweet_from_record(record: Mapping[str, object], where: str) -> Tweet:
    for key in ("id", "created_at", "user", "text"):
        if key not in record:
            raise DataError(f"{where}: missing field {key!r}")
    try:
        return Tweet(
            id=str(record["id"]),
            author=str(record["user"]),
            timestamp=_parse_timestamp(str(record["created_at"]), where),
            text=str(record["text"]),
        )
    except DataError:
        raise
    except (TypeError, ValueError) as exc:
        raise DataError(f"{where}: malformed record: {exc}") from exc


def corpus_from_records(
    records: Iterable[tuple[str, Mapping[str, object]]], source_digest: str
) -> Corpus:
    """Build a corpus from (location, record) pairs: first occurrence of a
    duplicate id wins, result sorted by (timestamp, id)."""
    seen: set[str] = set()
    tweets: list[Tweet] = []
    for where, record in records:
        tweet = _tweet_from_record(record, where)
        if tweet.id in seen:
            continue
        seen.add(tweet.id)
        tweets.append(tweet)
    tweets.sort(key=lambda t: (t.timestamp, t.id))
    return Corpus(tweets=tuple(tweets), source_digest=source_digest)


def _file_digest(path: Path) -> str:
    return hashlib.sha256(path.read_bytes()).hexdigest()


def load_jsonl(path) -> Corpus:
    """Load a JSONL tweet file; malformed lines report their 1-based number."""
    path = Path(path)
    if not path.is_file():
        raise DataError(f"tweet file not found: {path}")

    def records():
        with path.open(encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, start=1):
                if not line.strip():
                    continue
                where = f"{path.name} line {lineno}"
                try:
                    record = json.loads(line)
                except json.JSONDecodeError as exc:
                    raise DataError(f"{where}: invalid JSON: {exc}") from exc
                if not isinstance(record, dict):
                    raise DataError(f"{where}: record must be a JSON object")
                yield where, record

    return corpus_from_records(records(), _file_digest(path))


def load_csv(path) -> Corpus:
    """CSV fallback: header exactly ``id,created_at,user,text`` (RFC-4180)."""
    path = Path(path)
    if not path.is_file():
        raise DataError(f"tweet file not found: {path}")

    def records():
        with path.open(encoding="utf-8", newline="") as fh:
            reader = csv.reader(fh)
            try:
                header = next(reader)
            except StopIteration:
                raise DataError(f"{path.name}: empty CSV file") from None
            if header != ["id", "created_at", "user", "text"]:
                raise DataError(
                    f"{path.name}: expected header id,created_at,user,text, got {','.join(header)}"
                )
            for row in reader:
                if not row:
                    continue
                where = f"{path.name} line {reader.line_num}"
                if len(row) != 4:
                    raise DataError(f"{where}: expected 4 fields, got {len(row)}")
                yield where, dict(zip(("id", "created_at", "user", "text"), row))

    return corpus_from_records(records(), _file_digest(path))


def load_corpus(path) -> Corpus:
    """Dispatch on extension: ``.csv`` -> CSV fallback, anything else JSONL."""
    if str(path).lower().endswith(".csv"):
        return load_csv(path)
    return load_jsonl(path)


def apply_filter(corpus: Corpus, corpus_filter: CorpusFilter) -> Corpus:
    """Keep tweets matching ANY keyword (token-level), author and date range.

    Keyword membership runs the tweet text through the tokenizer with
    filtering disabled, so matching is on whole normalized tokens and a
    keyword can never match inside a longer word.
    """
    kept = []
    for tweet in corpus.tweets:
        if corpus_filter.users is not None and tweet.author not in corpus_filter.users:
            continue
        if corpus_filter.date_range is not None:
            start, end = corpus_filter.date_range
            if not (start <= tweet.timestamp <= end):
                continue
        if corpus_filter.keywords:
            tokens = set(tokenizer.normalize_text(tweet.text, tokenizer.MATCH_CONFIG))
            if not (corpus_filter.keywords & tokens):
                continue
        kept.append(tweet)
    return Corpus(tweets=tuple(kept), source_digest=corpus.source_digest)


def bucket_by_day(corpus: Corpus) -> dict[date, list[Tweet]]:
    """Partition tweets by UTC calendar date, keys ascending."""
    buckets: dict[date, list[Tweet]] = {}
    for tweet in corpus.tweets:  # already sorted, so keys appear in order
        buckets.setdefault(tweet.timestamp.date(), []).append(tweet)
    return buckets
