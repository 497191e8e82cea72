#pragma once

#include <set>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "sse/corpus.hpp"
#include "sse/engine.hpp"

namespace fixtures {

inline sse::Corpus toy_corpus() {
  return sse::corpus_from_texts({{"d1", "a b c"}, {"d2", "b c d"}, {"d3", "a d"}});
}

inline sse::Corpus to_corpus(const oracle::Docs& docs) {
  std::vector<sse::Document> out;
  for (const auto& [id, tokens] : docs) out.push_back({id, tokens});
  return sse::Corpus(std::move(out), sse::TokenizerConfig{});
}

inline sse::Term term(const std::string& raw) { return sse::parse_term(raw); }

inline std::set<std::string> ids(const sse::Index& index, const sse::EventSpace& e) {
  auto v = sse::doc_ids(index, e);
  return {v.begin(), v.end()};
}

}  // namespace fixtures
