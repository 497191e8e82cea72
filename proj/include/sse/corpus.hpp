#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace sse {

struct TokenizerConfig {
  bool lowercase = true;

  friend bool operator==(const TokenizerConfig&, const TokenizerConfig&) = default;
};

// Splits on Unicode whitespace, trims leading/trailing punctuation from every
// token and optionally applies simple case folding (Latin, Greek, Cyrillic).
// Tokens that end up empty are dropped. Input is treated as UTF-8; stray
// bytes that do not decode are kept verbatim as part of the token.
std::vector<std::string> tokenize(std::string_view text, const TokenizerConfig& config = {});

// A query unit: an ordered, non-empty sequence of normalized words.
class Term {
 public:
  Term() = default;
  explicit Term(std::vector<std::string> words);

  const std::vector<std::string>& words() const noexcept { return words_; }
  std::size_t size() const noexcept { return words_.size(); }

  // Words joined by single spaces. Used as the canonical ordering key.
  std::string joined() const;

  friend bool operator==(const Term&, const Term&) = default;
  friend auto operator<=>(const Term& a, const Term& b) { return a.words_ <=> b.words_; }

 private:
  std::vector<std::string> words_;
};

// Throws EmptyTerm when nothing survives tokenization.
Term parse_term(std::string_view raw, const TokenizerConfig& config = {});

struct Document {
  std::string id;
  std::vector<std::string> tokens;

  std::size_t token_count() const noexcept { return tokens.size(); }
};

// Dense word indices 1..K, assigned in byte-lexicographic word order so the
// numbering depends only on the set of words seen.
class Vocabulary {
 public:
  Vocabulary() = default;
  explicit Vocabulary(std::vector<std::string> words);

  std::size_t size() const noexcept { return words_.size(); }
  // 0 when the word was never seen, otherwise its index in 1..K.
  std::size_t index_of(std::string_view word) const;
  bool contains(std::string_view word) const { return index_of(word) != 0; }
  // Inverse of index_of; index must be in 1..K.
  const std::string& word(std::size_t index) const { return words_.at(index - 1); }
  const std::vector<std::string>& words() const noexcept { return words_; }

 private:
  std::vector<std::string> words_;
  std::unordered_map<std::string, std::size_t> lookup_;
};

// Immutable after construction. Documents are ordered by id.
class Corpus {
 public:
  Corpus() = default;
  // Sorts by id; throws DuplicateDocumentId. Tokens are taken as already
  // normalized under `config`.
  Corpus(std::vector<Document> documents, TokenizerConfig config);

  const std::vector<Document>& documents() const noexcept { return documents_; }
  const Vocabulary& vocabulary() const noexcept { return vocabulary_; }
  const TokenizerConfig& config() const noexcept { return config_; }
  std::size_t size() const noexcept { return documents_.size(); }
  std::size_t max_document_length() const;

 private:
  std::vector<Document> documents_;
  Vocabulary vocabulary_;
  TokenizerConfig config_;
};

struct RawDocument {
  std::string id;
  std::string text;
};

Corpus corpus_from_texts(std::vector<RawDocument> raw, const TokenizerConfig& config = {});

// Directory: every regular "*.txt" file is one document, id = file name
// without the ".txt" suffix. Regular file: line-delimited records, each a
// JSON object with string fields "id" and "text". Throws UnreadableSource,
// DuplicateDocumentId.
Corpus ingest(const std::filesystem::path& source, const TokenizerConfig& config = {});
Corpus ingest_records(std::istream& in, const TokenizerConfig& config = {});

// Writes the corpus as line-delimited records with the normalized tokens
// joined by spaces. Re-ingesting the output yields the same corpus.
void write_records(const Corpus& corpus, std::ostream& out);

}  // namespace sse
