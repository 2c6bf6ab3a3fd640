from datetime import date, datetime, timezone

import pytest
from hypothesis import given, strategies as st

from tweetsignal.corpus import (
    Corpus,
    CorpusFilter,
    apply_filter,
    bucket_by_day,
    corpus_from_records,
    load_corpus,
    load_csv,
    load_jsonl,
)
from tweetsignal.errors import DataError

UTC = timezone.utc


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return path


def test_load_jsonl_two_lines(tmp_path):
    path = write(
        tmp_path,
        "t.jsonl",
        '{"id": "b", "created_at": "2013-01-02T10:00:00Z", "user": "wsj", "text": "later"}\n'
        '{"id": "a", "created_at": "2013-01-01T10:00:00+00:00", "user": "cnn", "text": "earlier"}\n',
    )
    corpus = load_jsonl(path)
    assert len(corpus) == 2
    assert [t.id for t in corpus.tweets] == ["a", "b"]  # sorted by timestamp
    assert corpus.tweets[0].timestamp == datetime(2013, 1, 1, 10, tzinfo=UTC)
    assert corpus.source_digest


def test_load_jsonl_empty_file(tmp_path):
    corpus = load_jsonl(write(tmp_path, "t.jsonl", ""))
    assert len(corpus) == 0


def test_load_jsonl_duplicate_id_keeps_first(tmp_path):
    path = write(
        tmp_path,
        "t.jsonl",
        '{"id": "t1", "created_at": "2013-01-01T09:00:00Z", "user": "cnn", "text": "first"}\n'
        '{"id": "t2", "created_at": "2013-01-01T10:00:00Z", "user": "cnn", "text": "mid"}\n'
        '{"id": "t1", "created_at": "2013-01-01T11:00:00Z", "user": "cnn", "text": "refetch"}\n',
    )
    corpus = load_jsonl(path)
    assert len(corpus) == 2
    kept = {t.id: t.text for t in corpus.tweets}
    assert kept == {"t1": "first", "t2": "mid"}


def test_load_jsonl_missing_file(tmp_path):
    with pytest.raises(DataError, match="not found"):
        load_jsonl(tmp_path / "nope.jsonl")


def test_load_jsonl_malformed_line_reports_number(tmp_path):
    path = write(
        tmp_path,
        "t.jsonl",
        '{"id": "a", "created_at": "2013-01-01T00:00:00Z", "user": "u", "text": "ok"}\n'
        "{broken\n",
    )
    with pytest.raises(DataError, match="line 2"):
        load_jsonl(path)


def test_load_jsonl_bad_timestamp(tmp_path):
    path = write(
        tmp_path,
        "t.jsonl",
        '{"id": "a", "created_at": "yesterday", "user": "u", "text": "ok"}\n',
    )
    with pytest.raises(DataError, match="timestamp"):
        load_jsonl(path)


def test_load_jsonl_missing_field(tmp_path):
    path = write(tmp_path, "t.jsonl", '{"id": "a", "user": "u", "text": "ok"}\n')
    with pytest.raises(DataError, match="created_at"):
        load_jsonl(path)


def test_load_jsonl_naive_timestamp_is_utc(tmp_path):
    path = write(
        tmp_path,
        "t.jsonl",
        '{"id": "a", "created_at": "2013-01-01T12:30:00", "user": "u", "text": "ok"}\n',
    )
    assert load_jsonl(path).tweets[0].timestamp == datetime(2013, 1, 1, 12, 30, tzinfo=UTC)


def test_load_jsonl_blank_lines_skipped(tmp_path):
    path = write(
        tmp_path,
        "t.jsonl",
        '\n{"id": "a", "created_at": "2013-01-01T00:00:00Z", "user": "u", "text": "x"}\n\n',
    )
    assert len(load_jsonl(path)) == 1


def test_load_jsonl_overlong_text_rejected(tmp_path):
    record = f'{{"id": "a", "created_at": "2013-01-01T00:00:00Z", "user": "u", "text": "{"x" * 1001}"}}\n'
    with pytest.raises(DataError, match="1000"):
        load_jsonl(write(tmp_path, "t.jsonl", record))


def test_load_csv_fallback(tmp_path):
    path = write(
        tmp_path,
        "t.csv",
        "id,created_at,user,text\n"
        'a,2013-01-01T00:00:00Z,cnn,"hello, quoted world"\n'
        "b,2013-01-02T00:00:00Z,wsj,plain\n",
    )
    corpus = load_csv(path)
    assert [t.id for t in corpus.tweets] == ["a", "b"]
    assert corpus.tweets[0].text == "hello, quoted world"


def test_load_csv_wrong_header(tmp_path):
    path = write(tmp_path, "t.csv", "identifier,when,who,what\n")
    with pytest.raises(DataError, match="header"):
        load_csv(path)


def test_load_corpus_dispatches_on_extension(tmp_path):
    csv_path = write(tmp_path, "t.csv", "id,created_at,user,text\na,2013-01-01,u,x\n")
    assert len(load_corpus(csv_path)) == 1


def _corpus(rows):
    """rows: (id, iso timestamp, user, text)"""
    records = [
        (f"mem {i}", {"id": r[0], "created_at": r[1], "user": r[2], "text": r[3]})
        for i, r in enumerate(rows)
    ]
    return corpus_from_records(records, "test-digest")


FIXTURE = _corpus(
    [
        ("1", "2013-01-01T10:00:00Z", "cnn", "Stock rally today"),
        ("2", "2013-01-01T23:59:59Z", "wsj", "stockings on sale"),
        ("3", "2013-01-02T00:00:01Z", "cnn", "apple market news"),
        ("4", "2013-01-03T12:00:00Z", "reuters", "nothing relevant"),
    ]
)


def test_filter_keyword_matches_token():
    out = apply_filter(FIXTURE, CorpusFilter(keywords=frozenset({"stock", "market"})))
    assert [t.id for t in out.tweets] == ["1", "3"]


def test_filter_keyword_token_boundary():
    out = apply_filter(FIXTURE, CorpusFilter(keywords=frozenset({"stock"})))
    assert [t.id for t in out.tweets] == ["1"]  # "stockings" must not match


def test_filter_empty_is_identity():
    assert apply_filter(FIXTURE, CorpusFilter()).tweets == FIXTURE.tweets


def test_filter_users_and_dates():
    out = apply_filter(FIXTURE, CorpusFilter(users=frozenset({"cnn"})))
    assert [t.id for t in out.tweets] == ["1", "3"]
    window = (
        datetime(2013, 1, 1, tzinfo=UTC),
        datetime(2013, 1, 1, 23, 59, 59, tzinfo=UTC),
    )
    out = apply_filter(FIXTURE, CorpusFilter(date_range=window))
    assert [t.id for t in out.tweets] == ["1", "2"]  # inclusive upper bound


def test_filter_bad_date_range():
    with pytest.raises(ValueError):
        CorpusFilter(date_range=(datetime(2013, 1, 2, tzinfo=UTC), datetime(2013, 1, 1, tzinfo=UTC)))


def test_bucket_by_day_partitions():
    buckets = bucket_by_day(FIXTURE)
    assert [d.isoformat() for d in buckets] == ["2013-01-01", "2013-01-02", "2013-01-03"]
    assert [len(v) for v in buckets.values()] == [2, 1, 1]
    flattened = [t for bucket in buckets.values() for t in bucket]
    assert flattened == list(FIXTURE.tweets)


def test_bucket_by_day_empty():
    assert bucket_by_day(Corpus(tweets=(), source_digest="d")) == {}


def test_bucket_midnight_boundary():
    buckets = bucket_by_day(FIXTURE)
    assert FIXTURE.tweets[1].id == "2"
    assert FIXTURE.tweets[1].timestamp.date() == date(2013, 1, 1)
    assert FIXTURE.tweets[2].timestamp.date() == date(2013, 1, 2)
    assert len(buckets[date(2013, 1, 1)]) == 2


# --- properties --------------------------------------------------------------

WORDS = ["apple", "stock", "market", "rally", "tech", "news", "ipad"]


@st.composite
def corpora(draw):
    n = draw(st.integers(min_value=0, max_value=15))
    rows = []
    for i in range(n):
        words = draw(st.lists(st.sampled_from(WORDS), min_size=0, max_size=5))
        day = draw(st.integers(min_value=1, max_value=9))
        hour = draw(st.integers(min_value=0, max_value=23))
        rows.append(
            (f"id{i}", f"2013-01-0{day}T{hour:02d}:00:00Z", draw(st.sampled_from(["cnn", "wsj"])), " ".join(words))
        )
    return _corpus(rows)


@given(corpora(), st.frozensets(st.sampled_from(WORDS), max_size=3))
def test_filter_idempotent(corpus, keywords):
    f = CorpusFilter(keywords=keywords)
    once = apply_filter(corpus, f)
    assert apply_filter(once, f).tweets == once.tweets


@given(
    corpora(),
    st.frozensets(st.sampled_from(WORDS), min_size=1, max_size=2),
    st.frozensets(st.sampled_from(WORDS), min_size=1, max_size=2),
)
def test_filter_union_is_match_any(corpus, kw_a, kw_b):
    ids = lambda c: {t.id for t in c.tweets}
    union = apply_filter(corpus, CorpusFilter(keywords=kw_a | kw_b))
    assert ids(union) == ids(apply_filter(corpus, CorpusFilter(keywords=kw_a))) | ids(
        apply_filter(corpus, CorpusFilter(keywords=kw_b))
    )


@given(corpora())
def test_bucket_partition_property(corpus):
    buckets = bucket_by_day(corpus)
    assert sum(len(v) for v in buckets.values()) == len(corpus)
    assert [t for b in buckets.values() for t in b] == list(corpus.tweets)
    assert list(buckets) == sorted(buckets)
