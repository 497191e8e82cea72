#include "sse/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "sse/errors.hpp"

namespace sse {

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw InvalidArgument("Rng::below(0)");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = next();
  } while (x >= limit);
  return x % n;
}

std::string synth_word(const std::string& prefix, std::size_t rank) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04zu", rank);
  return prefix + buf;
}

namespace {

std::string doc_name(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "doc%06zu", i);
  return buf;
}

class ZipfSampler {
 public:
  ZipfSampler(std::size_t n, double exponent) : cdf_(n) {
    double total = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      total += 1.0 / std::pow(static_cast<double>(k + 1), exponent);
      cdf_[k] = total;
    }
    for (auto& c : cdf_) c /= total;
  }

  std::size_t operator()(Rng& rng) const {
    const double u = rng.unit();
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    return it == cdf_.end() ? cdf_.size() - 1 : static_cast<std::size_t>(it - cdf_.begin());
  }

 private:
  std::vector<double> cdf_;
};

void check(const SynthParams& p) {
  if (p.vocabulary == 0) throw InvalidArgument("synthetic vocabulary must be non-empty");
  if (p.min_length == 0 || p.min_length > p.max_length) {
    throw InvalidArgument("synthetic lengths need 1 <= min_length <= max_length");
  }
}

std::vector<std::string> make_vocab(const std::string& prefix, std::size_t n) {
  std::vector<std::string> v;
  v.reserve(n);
  for (std::size_t k = 0; k < n; ++k) v.push_back(synth_word(prefix, k));
  return v;
}

std::vector<std::string> make_tokens(Rng& rng, const SynthParams& p, const ZipfSampler& zipf,
                                     const std::vector<std::string>& vocab) {
  const auto len = rng.between(p.min_length, p.max_length);
  std::vector<std::string> tokens;
  tokens.reserve(len);
  for (std::uint64_t i = 0; i < len; ++i) tokens.push_back(vocab[zipf(rng)]);
  return tokens;
}

}  // namespace

Corpus synthetic_corpus(const SynthParams& params) {
  check(params);
  Rng rng(params.seed);
  const ZipfSampler zipf(params.vocabulary, params.zipf_exponent);
  const auto vocab = make_vocab("w", params.vocabulary);

  std::vector<Document> docs;
  docs.reserve(params.documents);
  for (std::size_t d = 0; d < params.documents; ++d) {
    docs.push_back({doc_name(d), make_tokens(rng, params, zipf, vocab)});
  }
  return Corpus(std::move(docs), TokenizerConfig{});
}

DisjointCorpus disjoint_vocabulary_corpus(const SynthParams& params) {
  check(params);
  Rng rng(params.seed);
  const ZipfSampler zipf(params.vocabulary, params.zipf_exponent);
  DisjointCorpus out;
  out.left = make_vocab("y", params.vocabulary);
  out.right = make_vocab("z", params.vocabulary);

  std::vector<Document> docs;
  docs.reserve(params.documents);
  const std::size_t half = params.documents / 2;
  for (std::size_t d = 0; d < params.documents; ++d) {
    const auto& vocab = d < half ? out.left : out.right;
    docs.push_back({doc_name(d), make_tokens(rng, params, zipf, vocab)});
  }
  out.corpus = Corpus(std::move(docs), TokenizerConfig{});
  return out;
}

AliasCorpus alias_corpus(const SynthParams& params, std::size_t alias_pairs,
                         double placement_rate) {
  check(params);
  Rng rng(params.seed);
  const ZipfSampler zipf(params.vocabulary, params.zipf_exponent);
  const auto vocab = make_vocab("w", params.vocabulary);

  AliasCorpus out;
  for (std::size_t k = 0; k < alias_pairs; ++k) {
    out.aliases.emplace_back(synth_word("alpha", k), synth_word("beta", k));
  }

  std::vector<Document> docs;
  docs.reserve(params.documents);
  for (std::size_t d = 0; d < params.documents; ++d) {
    auto tokens = make_tokens(rng, params, zipf, vocab);
    for (const auto& [a, b] : out.aliases) {
      if (rng.unit() >= placement_rate) continue;
      // Insert each member at an independent random position.
      tokens.insert(tokens.begin() + static_cast<std::ptrdiff_t>(rng.below(tokens.size() + 1)), a);
      tokens.insert(tokens.begin() + static_cast<std::ptrdiff_t>(rng.below(tokens.size() + 1)), b);
    }
    docs.push_back({doc_name(d), std::move(tokens)});
  }
  out.corpus = Corpus(std::move(docs), TokenizerConfig{});
  return out;
}

}  // namespace sse
