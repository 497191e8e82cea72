#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sse/corpus.hpp"

namespace sse {

enum class Semantics { phrase, bag };

std::string_view to_string(Semantics s);
// Throws InvalidArgument for anything other than "phrase" or "bag".
Semantics parse_semantics(std::string_view s);

// Position of a document in the index's doc table. Doc tables are sorted by
// id, so ordinal order and id order agree.
using DocOrdinal = std::uint32_t;
using Position = std::uint32_t;

struct Posting {
  DocOrdinal doc;
  std::vector<Position> positions;  // 0-based, strictly ascending

  friend bool operator==(const Posting&, const Posting&) = default;
};

using PostingList = std::vector<Posting>;

struct DocEntry {
  std::string id;
  std::size_t token_count;

  friend bool operator==(const DocEntry&, const DocEntry&) = default;
};

// The universe of indexed documents with positional postings per word.
// Immutable once constructed.
class Index {
 public:
  using PostingMap = std::map<std::string, PostingList, std::less<>>;

  Index() = default;
  // Validates the structural invariants and throws CorruptIndex on failure:
  // doc ids sorted and unique, posting docs in range and ascending,
  // positions strictly ascending and below the document length.
  Index(std::vector<DocEntry> docs, PostingMap postings, Semantics semantics,
        TokenizerConfig config);

  static Index build(const Corpus& corpus, Semantics semantics = Semantics::phrase);

  Semantics semantics() const noexcept { return semantics_; }
  const TokenizerConfig& config() const noexcept { return config_; }

  // |Ω|
  std::size_t universe_size() const noexcept { return docs_.size(); }
  std::size_t vocabulary_size() const noexcept { return postings_.size(); }
  std::size_t posting_count() const noexcept;
  std::size_t position_count() const noexcept;
  std::size_t max_document_length() const noexcept;

  const std::vector<DocEntry>& doc_table() const noexcept { return docs_; }
  const DocEntry& doc(DocOrdinal ordinal) const { return docs_.at(ordinal); }
  std::optional<DocOrdinal> find_doc(std::string_view id) const;

  const PostingMap& postings() const noexcept { return postings_; }
  // nullptr for a word that never occurs.
  const PostingList* postings(std::string_view word) const;

  Term parse_term(std::string_view raw) const { return sse::parse_term(raw, config_); }

 private:
  std::vector<DocEntry> docs_;
  PostingMap postings_;
  Semantics semantics_ = Semantics::phrase;
  TokenizerConfig config_;
};

// A set of documents (Ω_x, Ω_x∩Ω_y, ...) as sorted ordinals of one index.
struct EventSpace {
  std::vector<DocOrdinal> docs;

  std::size_t cardinality() const noexcept { return docs.size(); }
  bool empty() const noexcept { return docs.empty(); }
  bool contains(DocOrdinal d) const;

  friend bool operator==(const EventSpace&, const EventSpace&) = default;
};

EventSpace intersect(const EventSpace& a, const EventSpace& b);
EventSpace unite(const EventSpace& a, const EventSpace& b);
bool is_subset(const EventSpace& inner, const EventSpace& outer);
std::vector<std::string> doc_ids(const Index& index, const EventSpace& space);

// Start positions of every occurrence of a term, per document. Under bag
// semantics `starts` is left empty.
struct Occurrences {
  DocOrdinal doc;
  std::vector<Position> starts;
};

std::vector<Occurrences> term_occurrences(const Index& index, const Term& term);

// Per-page indicator: does `term` occur in the document? Throws UnknownDocument.
bool occurs_in(const Index& index, const Term& term, std::string_view doc_id);
bool occurs_in(const Index& index, const Term& term, DocOrdinal doc);

EventSpace singleton_event(const Index& index, const Term& term);
EventSpace doubleton_event(const Index& index, const Term& tx, const Term& ty);

// |Ω_x ∪ Ω_y| by inclusion-exclusion.
std::size_t union_cardinality(const Index& index, const Term& tx, const Term& ty);

// Documents with an occurrence of tx and an occurrence of ty whose start
// positions are at most `window` tokens apart. Needs phrase semantics
// (BagSemanticsUnsupported) and window >= 1 (InvalidArgument).
EventSpace proximity_event(const Index& index, const Term& tx, const Term& ty,
                           std::size_t window);

// Independent linear scan over the raw token sequences: counts documents in
// which both terms occur. Does not touch any index structure.
std::size_t brute_force_doubleton_count(const Corpus& corpus, const Term& tx, const Term& ty,
                                        Semantics semantics);

// Does the token sequence contain the term? Shared by the brute-force scans.
bool sequence_contains(std::span<const std::string> tokens, const Term& term,
                       Semantics semantics);

std::set<std::string> term_word_overlap(const Term& tx, const Term& ty);

// True when `sub` appears as a contiguous run inside `whole`.
bool is_contiguous_subterm(const Term& sub, const Term& whole);

}  // namespace sse
