#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "sse/corpus.hpp"

namespace sse {

// Seeded generator with platform-independent draws. std::mt19937_64's
// output sequence is fixed by the standard; the distributions are not, so
// the bounded draws are done here.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  // Uniform in [0, n); n must be > 0.
  std::uint64_t below(std::uint64_t n);
  // Uniform in [lo, hi].
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }
  // Uniform in [0, 1) with 53 bits.
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

struct SynthParams {
  std::size_t documents = 1000;
  std::size_t vocabulary = 2000;
  std::size_t min_length = 20;
  std::size_t max_length = 200;
  double zipf_exponent = 1.0;  // 0 gives a uniform word distribution
  std::uint64_t seed = 0;
};

// Word `rank` (0-based) of a generated vocabulary, e.g. "w0007".
std::string synth_word(const std::string& prefix, std::size_t rank);

// Documents "doc000000".. with Zipf-distributed words from "w0000"...
Corpus synthetic_corpus(const SynthParams& params);

// Two vocabularies placed in two disjoint halves of the document set: the
// first half only uses `left` words, the second half only `right` words.
struct DisjointCorpus {
  Corpus corpus;
  std::vector<std::string> left;
  std::vector<std::string> right;
};
DisjointCorpus disjoint_vocabulary_corpus(const SynthParams& params);

// A synthetic corpus plus alias word pairs that are always placed together:
// every document holding one member of a pair also holds the other.
struct AliasCorpus {
  Corpus corpus;
  std::vector<std::pair<std::string, std::string>> aliases;
};
AliasCorpus alias_corpus(const SynthParams& params, std::size_t alias_pairs,
                         double placement_rate = 0.3);

}  // namespace sse
