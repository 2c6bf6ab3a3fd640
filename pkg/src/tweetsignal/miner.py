"""Frequent-itemset mining, association rules, and semantic graph exports.

The miner is a level-wise Apriori over transactions encoded as fixed-width
bitsets: each transaction is a row of uint64 words, one bit per dictionary
term, so candidate support counting is a word-parallel AND + compare over
the packed matrix (see ``_accel`` for the numba / numpy kernels).

The frequency threshold is strict: an itemset is frequent iff
``count / total > min_support``.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from . import _accel
from .tokenizer import Transaction


@dataclass(frozen=True, order=True)
class Itemset:
    """Non-empty, lexicographically sorted, duplicate-free set of terms."""

    terms: tuple[str, ...]

    def __post_init__(self):
        if not self.terms:
            raise ValueError("itemset must be non-empty")
        if list(self.terms) != sorted(set(self.terms)):
            raise ValueError(f"itemset terms must be sorted and unique: {self.terms}")
        if any(not t or t != t.lower() or any(c.isspace() for c in t) for t in self.terms):
            raise ValueError(f"itemset terms must be lowercase, non-empty, no whitespace: {self.terms}")

    @classmethod
    def of(cls, terms: Iterable[str]) -> "Itemset":
        return cls(tuple(sorted(set(terms))))

    def label(self) -> str:
        return " ".join(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)


@dataclass(frozen=True)
class FrequentItemset:
    itemset: Itemset
    support: float
    count: int


@dataclass
class MiningResult:
    frequent: list[FrequentItemset]
    total_transactions: int
    min_support: float

    def support_of(self, itemset: Itemset) -> FrequentItemset | None:
        return self._index.get(itemset.terms)

    @property
    def _index(self) -> dict[tuple[str, ...], FrequentItemset]:
        if not hasattr(self, "_index_cache"):
            self._index_cache = {fi.itemset.terms: fi for fi in self.frequent}
        return self._index_cache


@dataclass(frozen=True)
class AssociationRule:
    antecedent: Itemset
    consequent: Itemset
    support: float
    confidence: float
    lift: float


def support(itemset: Itemset, transactions: Sequence[Transaction]) -> tuple[float, int]:
    """Fraction and count of transactions whose term set contains ``itemset``.

    This is the plain set-membership definition; the miner's bitset kernel
    is validated against it.
    """
    if not transactions:
        raise ValueError("support is undefined for an empty transaction list")
    wanted = frozenset(itemset.terms)
    count = sum(1 for tx in transactions if wanted <= tx.terms)
    return count / len(transactions), count


@dataclass
class TransactionMatrix:
    """Transactions packed as bitsets over a term dictionary."""

    terms: tuple[str, ...]
    index: dict[str, int]
    matrix: np.ndarray  # (n_transactions, n_words) uint64
    n_transactions: int

    def masks_for(self, index_tuples: Sequence[tuple[int, ...]]) -> np.ndarray:
        n_words = self.matrix.shape[1]
        masks = np.zeros((len(index_tuples), n_words), dtype=np.uint64)
        for row, idxs in enumerate(index_tuples):
            for i in idxs:
                masks[row, i >> 6] |= np.uint64(1) << np.uint64(i & 63)
        return masks


def _pack(transactions: Sequence[Transaction], terms: Sequence[str]) -> TransactionMatrix:
    index = {t: i for i, t in enumerate(terms)}
    n_words = max(1, (len(terms) + 63) >> 6)
    matrix = np.zeros((len(transactions), n_words), dtype=np.uint64)
    for row, tx in enumerate(transactions):
        for term in tx.terms:
            i = index.get(term)
            if i is not None:
                matrix[row, i >> 6] |= np.uint64(1) << np.uint64(i & 63)
    return TransactionMatrix(
        terms=tuple(terms), index=index, matrix=matrix, n_transactions=len(transactions)
    )


def encode_transactions(
    transactions: Sequence[Transaction], min_count: int = 2
) -> TransactionMatrix:
    """Pack transactions into a bitset matrix.

    Only terms occurring in at least ``min_count`` transactions enter the
    dictionary; rarer terms cannot matter to callers that pick thresholds
    above that count.
    """
    counts = Counter(term for tx in transactions for term in tx.terms)
    vocab = sorted(t for t, c in counts.items() if c >= min_count)
    return _pack(transactions, vocab)


def _document_counts(transactions: Sequence[Transaction]) -> Counter:
    counts: Counter = Counter()
    for tx in transactions:
        counts.update(tx.terms)
    return counts


def mine_frequent(
    transactions: Sequence[Transaction], min_support: float, max_len: int = 4
) -> MiningResult:
    """Level-wise Apriori: all itemsets of size <= max_len with support
    strictly above ``min_support``.

    Output order is fixed: descending support, then ascending size, then
    lexicographic, so identical input gives byte-identical output.
    """
    if not transactions:
        raise ValueError("cannot mine an empty transaction list")
    if not 0.0 <= min_support < 1.0:
        raise ValueError(f"min_support must be in [0, 1), got {min_support}")
    if max_len < 1:
        raise ValueError(f"max_len must be >= 1, got {max_len}")

    n = len(transactions)

    def frequent_enough(count: int) -> bool:
        return count / n > min_support

    doc_counts = _document_counts(transactions)
    # The dictionary cutoff is the singleton frequency test itself, so the
    # packed matrix only carries terms that can still appear in the output.
    vocab = sorted(t for t, c in doc_counts.items() if frequent_enough(c))
    packed = _pack(transactions, vocab)

    found: dict[tuple[int, ...], int] = {}
    level: list[tuple[int, ...]] = []
    for i, term in enumerate(vocab):
        found[(i,)] = doc_counts[term]
        level.append((i,))

    size = 1
    while level and size < max_len:
        size += 1
        candidates = _join_level(level)
        if not candidates:
            break
        prior = set(level)
        candidates = [c for c in candidates if _all_subsets_frequent(c, prior)]
        if not candidates:
            break
        counts = _accel.count_supports(packed.matrix, packed.masks_for(candidates))
        level = []
        for cand, count in zip(candidates, counts):
            if frequent_enough(int(count)):
                found[cand] = int(count)
                level.append(cand)

    frequent = [
        FrequentItemset(
            itemset=Itemset(tuple(vocab[i] for i in idxs)),
            support=count / n,
            count=count,
        )
        for idxs, count in found.items()
    ]
    frequent.sort(key=lambda fi: (-fi.support, len(fi.itemset.terms), fi.itemset.terms))
    return MiningResult(frequent=frequent, total_transactions=n, min_support=min_support)


def _join_level(level: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Classic sorted prefix join: merge two k-sets sharing their first k-1 items."""
    level = sorted(level)
    out = []
    for a_pos in range(len(level)):
        a = level[a_pos]
        for b_pos in range(a_pos + 1, len(level)):
            b = level[b_pos]
            if a[:-1] != b[:-1]:
                break
            out.append(a + (b[-1],))
    return out


def _all_subsets_frequent(candidate: tuple[int, ...], prior: set[tuple[int, ...]]) -> bool:
    return all(
        candidate[:skip] + candidate[skip + 1 :] in prior for skip in range(len(candidate))
    )


def generate_rules(result: MiningResult, min_confidence: float) -> list[AssociationRule]:
    """Every split X -> Y of each frequent itemset (|F| >= 2) whose
    confidence reaches ``min_confidence``."""
    if not 0.0 <= min_confidence <= 1.0:
        raise ValueError(f"min_confidence must be in [0, 1], got {min_confidence}")
    by_terms = {fi.itemset.terms: fi for fi in result.frequent}
    rules = []
    for fi in result.frequent:
        terms = fi.itemset.terms
        if len(terms) < 2:
            continue
        for k in range(1, len(terms)):
            for antecedent in combinations(terms, k):
                consequent = tuple(t for t in terms if t not in antecedent)
                fi_x = by_terms[antecedent]
                confidence = fi.count / fi_x.count
                if confidence < min_confidence:
                    continue
                fi_y = by_terms[consequent]
                rules.append(
                    AssociationRule(
                        antecedent=Itemset(antecedent),
                        consequent=Itemset(consequent),
                        support=fi.support,
                        confidence=confidence,
                        lift=confidence / fi_y.support,
                    )
                )
    rules.sort(
        key=lambda r: (-r.confidence, -r.support, r.antecedent.terms, r.consequent.terms)
    )
    return rules


def term_associations(
    transactions: Sequence[Transaction], term: str, min_corr: float
) -> list[tuple[str, float]]:
    """Pearson correlation between the 0/1 occurrence vectors of ``term``
    and every other term, keeping pairs at or above ``min_corr``.

    Candidates with zero variance are skipped; a zero-variance anchor term
    (present in every transaction) has no defined correlations at all.
    """
    n = len(transactions)
    vocab = sorted({t for tx in transactions for t in tx.terms})
    if term not in vocab:
        raise ValueError(f"term {term!r} does not occur in any transaction")
    occur = np.zeros((n, len(vocab)), dtype=np.float64)
    col = {t: j for j, t in enumerate(vocab)}
    for row, tx in enumerate(transactions):
        for t in tx.terms:
            occur[row, col[t]] = 1.0

    anchor = occur[:, col[term]]
    n1 = anchor.sum()
    if n1 == 0 or n1 == n:
        return []
    totals = occur.sum(axis=0)
    co = anchor @ occur
    # phi coefficient == Pearson on binary vectors
    denom = np.sqrt(n1 * (n - n1) * totals * (n - totals))
    with np.errstate(invalid="ignore", divide="ignore"):
        corr = (n * co - n1 * totals) / denom

    pairs = []
    for j, other in enumerate(vocab):
        if other == term or denom[j] == 0:
            continue
        if corr[j] >= min_corr:
            pairs.append((other, float(corr[j])))
    pairs.sort(key=lambda p: (-p[1], p[0]))
    return pairs


@dataclass
class GraphNode:
    id: str
    kind: str
    attrs: dict


@dataclass
class GraphEdge:
    source: str
    target: str


@dataclass
class Graph:
    nodes: list[GraphNode] = field(default_factory=list)
    edges: list[GraphEdge] = field(default_factory=list)

    def to_json_dict(self) -> dict:
        return {
            "nodes": [{"id": n.id, "kind": n.kind, "attrs": n.attrs} for n in self.nodes],
            "edges": [{"from": e.source, "to": e.target} for e in self.edges],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    def to_dot(self) -> str:
        def quote(s: str) -> str:
            return '"' + s.replace('"', '\\"') + '"'

        lines = ["digraph G {"]
        for node in self.nodes:
            attrs = ", ".join(
                f"{k}={quote(str(v))}" for k, v in sorted(node.attrs.items())
            )
            lines.append(f"  {quote(node.id)} [{attrs}];")
        for edge in self.edges:
            lines.append(f"  {quote(edge.source)} -> {quote(edge.target)};")
        lines.append("}")
        return "\n".join(lines)


def itemset_graph(result: MiningResult) -> Graph:
    """Hasse-diagram view: edge F1 -> F2 whenever F2 extends F1 by one term."""
    graph = Graph()
    listed = {fi.itemset.terms for fi in result.frequent}
    for fi in result.frequent:
        graph.nodes.append(
            GraphNode(
                id=fi.itemset.label(),
                kind="itemset",
                attrs={"label": fi.itemset.label(), "support": fi.support},
            )
        )
    for fi in result.frequent:
        terms = fi.itemset.terms
        if len(terms) < 2:
            continue
        for skip in range(len(terms)):
            parent = terms[:skip] + terms[skip + 1 :]
            if parent in listed:
                graph.edges.append(GraphEdge(" ".join(parent), " ".join(terms)))
    return graph


def rule_graph(rules: Sequence[AssociationRule]) -> Graph:
    """Bipartite-style view: term nodes feed rule nodes feed term nodes."""
    graph = Graph()
    term_nodes: set[str] = set()

    def ensure_term(term: str):
        if term not in term_nodes:
            term_nodes.add(term)
            graph.nodes.append(GraphNode(id=term, kind="term", attrs={"label": term}))

    for i, rule in enumerate(rules, start=1):
        rule_id = f"r{i}"
        graph.nodes.append(
            GraphNode(
                id=rule_id,
                kind="rule",
                attrs={
                    "label": f"{rule.antecedent.label()} -> {rule.consequent.label()}",
                    "support": rule.support,
                    "confidence": rule.confidence,
                },
            )
        )
        for term in rule.antecedent:
            ensure_term(term)
            graph.edges.append(GraphEdge(term, rule_id))
        for term in rule.consequent:
            ensure_term(term)
            graph.edges.append(GraphEdge(rule_id, term))
    return graph
