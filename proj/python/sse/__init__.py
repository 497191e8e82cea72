"""Desk-scale search engine model: positional inverted index, hit counts,
Jaccard similarity and property verification."""

import json as _json

from ._core import (
    BagSemanticsUnsupported,
    Corpus,
    CorpusIndexMismatch,
    CorruptIndex,
    DuplicateDocumentId,
    DuplicateTerm,
    EmptyTerm,
    Error,
    Index,
    InvalidArgument,
    NotASubterm,
    SimilarityValue,
    Term,
    UnknownDocument,
    UnreadableSource,
    brute_force_doubleton_count,
    doubleton_event,
    extract_network,
    jaccard,
    occurs_in,
    pairwise_matrix,
    parse_term,
    proximity_event,
    run_suite_json,
    singleton_event,
    term_word_overlap,
    tokenize,
    union_cardinality,
)


def run_suite(index, corpus, seed=0, pairs=1000, terms=()):
    """Run the verification suite and return the report as a dict."""
    return _json.loads(run_suite_json(index, corpus, seed, pairs, list(terms)))


__all__ = [name for name in dir() if not name.startswith("_")]
