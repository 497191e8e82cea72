#include <sstream>

#include <nlohmann/json.hpp>

#include "doctest.h"
#include "fixtures.hpp"
#include "sse/errors.hpp"
#include "sse/index_io.hpp"
#include "sse/synth.hpp"
#include "sse/verifier.hpp"

using fixtures::term;

namespace {

const sse::Corpus& toy_corpus() {
  static const sse::Corpus corpus = fixtures::toy_corpus();
  return corpus;
}

const sse::Index& toy() {
  static const sse::Index index = sse::Index::build(toy_corpus());
  return index;
}

std::vector<sse::TermPair> all_single_word_pairs() {
  std::vector<sse::TermPair> pairs;
  const char* words[] = {"a", "b", "c", "d"};
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) pairs.emplace_back(term(words[i]), term(words[j]));
  }
  return pairs;
}

sse::TermPair pair(const char* x, const char* y) { return {term(x), term(y)}; }

// Toy index whose "a" occurrence in d1 was moved to "d": structurally valid,
// but no longer the index of the toy corpus.
sse::Index corrupted_toy() {
  auto text = sse::serialize_index(toy());
  const std::string a_old = "{\"word\":\"a\",\"post\":[[\"d1\",[0]],[\"d3\",[0]]]}";
  const std::string d_old = "{\"word\":\"d\",\"post\":[[\"d2\",[2]],[\"d3\",[1]]]}";
  text.replace(text.find(a_old), a_old.size(), "{\"word\":\"a\",\"post\":[[\"d3\",[0]]]}");
  text.replace(text.find(d_old), d_old.size(),
               "{\"word\":\"d\",\"post\":[[\"d1\",[0]],[\"d2\",[2]],[\"d3\",[1]]]}");
  std::istringstream in(text);
  return sse::read_index(in);
}

}  // namespace

TEST_CASE("theorem1") {
  const auto pairs = all_single_word_pairs();
  auto r = sse::check_theorem1(toy(), pairs);
  CHECK(r.pairs_tested == 6);
  CHECK(r.violations == 0);
  CHECK(r.verdict == sse::Verdict::pass);

  auto empty = sse::check_theorem1(sse::Index::build(sse::Corpus{}), {});
  CHECK(empty.pairs_tested == 0);
  CHECK(empty.verdict == sse::Verdict::pass);

  const std::vector<sse::TermPair> self = {pair("a", "a")};
  r = sse::check_theorem1(toy(), self);
  CHECK(r.pairs_tested == 1);
  CHECK(r.violations == 0);
}

TEST_CASE("oracle equivalence passes on the toy corpus and catches a corrupted index") {
  const auto pairs = all_single_word_pairs();
  auto r = sse::check_oracle_equivalence(toy(), toy_corpus(), pairs);
  CHECK(r.pairs_tested == 6);
  CHECK(r.verdict == sse::Verdict::pass);

  // Raw-case corpus read with the same (lowercasing) config as the index.
  const auto raw = sse::corpus_from_texts({{"d1", "A B c"}, {"d2", "b C d"}, {"d3", "a D"}});
  const auto folded = sse::Index::build(raw);
  CHECK(sse::check_oracle_equivalence(folded, raw, pairs).verdict == sse::Verdict::pass);

  r = sse::check_oracle_equivalence(corrupted_toy(), toy_corpus(), pairs);
  CHECK(r.verdict == sse::Verdict::fail);
  CHECK(r.violations > 0);
  REQUIRE_FALSE(r.witnesses.empty());
  CHECK(r.witnesses[0].tx.joined() == "a");
  CHECK(r.witnesses[0].ty.joined() == "b");
}

TEST_CASE("oracle equivalence rejects a mismatched corpus") {
  const auto other = sse::corpus_from_texts({{"d1", "a b c"}, {"d2", "b c d"}});
  CHECK_THROWS_AS(sse::check_oracle_equivalence(toy(), other, {}), sse::CorpusIndexMismatch);
  const auto longer = sse::corpus_from_texts({{"d1", "a b c"}, {"d2", "b c d"}, {"d3", "a d d"}});
  CHECK_THROWS_AS(sse::require_matching(toy(), longer), sse::CorpusIndexMismatch);
  const auto cased = sse::corpus_from_texts({{"d1", "a b c"}, {"d2", "b c d"}, {"d3", "a d"}},
                                            sse::TokenizerConfig{false});
  CHECK_THROWS_AS(sse::require_matching(toy(), cased), sse::CorpusIndexMismatch);
}

TEST_CASE("proximity subset") {
  const auto pairs = all_single_word_pairs();
  const std::vector<std::size_t> windows = {1, 2, 3};
  auto r = sse::check_proximity_subset(toy(), pairs, windows);
  CHECK(r.pairs_tested == 6);
  CHECK(r.verdict == sse::Verdict::pass);

  const std::vector<std::size_t> whole = {1, 2, toy().max_document_length()};
  CHECK(sse::check_proximity_subset(toy(), pairs, whole).verdict == sse::Verdict::pass);

  const auto bag = sse::Index::build(toy_corpus(), sse::Semantics::bag);
  CHECK_THROWS_AS(sse::check_proximity_subset(bag, pairs, windows), sse::BagSemanticsUnsupported);
}

TEST_CASE("similarity axioms") {
  auto r = sse::check_similarity_axioms(toy(), all_single_word_pairs());
  CHECK(r.verdict == sse::Verdict::pass);
  const std::vector<sse::TermPair> special = {pair("b", "c"), pair("a", "zzz"), pair("zzz", "yyy")};
  r = sse::check_similarity_axioms(toy(), special);
  CHECK(r.pairs_tested == 3);
  CHECK(r.violations == 0);
}

TEST_CASE("problem 1 contraposition") {
  const std::vector<sse::TermPair> pairs = {pair("a", "d"), pair("zzz", "yyy"), pair("b", "c")};
  const auto r = sse::check_problem1_contraposition(toy(), pairs);
  CHECK(r.pairs_tested == 3);
  CHECK(r.violations == 0);
  CHECK(r.metric("equality_cases") == 1);
}

TEST_CASE("lemma 1 subterm containment") {
  const std::vector<sse::TermPair> pairs = {pair("a b", "a"), pair("b c", "b")};
  const auto r = sse::check_lemma1_subterm(toy(), pairs);
  CHECK(r.pairs_tested == 2);
  CHECK(r.violations == 0);
  CHECK(r.verdict == sse::Verdict::pass);
  CHECK(r.metric("literal_reading_fails") == 2);
  CHECK(r.metric("literal_reading_holds") == 0);

  const std::vector<sse::TermPair> unseen = {pair("x y", "y")};
  CHECK(sse::check_lemma1_subterm(toy(), unseen).metric("literal_reading_holds") == 1);

  const std::vector<sse::TermPair> same = {pair("a b", "a b")};
  CHECK_THROWS_AS(sse::check_lemma1_subterm(toy(), same), sse::NotASubterm);
  const std::vector<sse::TermPair> gap = {pair("a b c", "a c")};
  CHECK_THROWS_AS(sse::check_lemma1_subterm(toy(), gap), sse::NotASubterm);
}

TEST_CASE("lemma 2 disjoint pairs") {
  const std::vector<sse::TermPair> ad = {pair("a", "d"), pair("a", "a"), pair("a b", "b c")};
  auto r = sse::check_lemma2_disjoint(toy(), ad);
  CHECK(r.check_class == sse::CheckClass::hypothesis);
  CHECK(r.verdict == sse::Verdict::hypothesis_report);
  CHECK(r.pairs_tested == 1);
  CHECK(r.violations == 1);
  CHECK(r.violation_rate().value() == 1.0);
  CHECK(r.metric("skipped_pairs") == 2);

  r = sse::check_lemma2_disjoint(sse::Index::build(sse::Corpus{}), {});
  CHECK_FALSE(r.violation_rate().has_value());

  // Two vocabularies that never share a document.
  sse::SynthParams p;
  p.documents = 60;
  p.vocabulary = 20;
  p.min_length = 3;
  p.max_length = 12;
  const auto split = sse::disjoint_vocabulary_corpus(p);
  const auto index = sse::Index::build(split.corpus);
  std::vector<sse::TermPair> cross;
  for (const auto& y : split.left) {
    for (const auto& z : split.right) cross.emplace_back(term(y), term(z));
  }
  r = sse::check_lemma2_disjoint(index, cross, sse::HypothesisMode::enforce);
  CHECK(r.pairs_tested == cross.size());
  CHECK(r.verdict == sse::Verdict::pass);
  CHECK(r.metric("additive_union") == cross.size());
}

TEST_CASE("lemma 3 alias pairs") {
  const std::vector<sse::TermPair> ad = {pair("a", "d"), pair("b", "zzz")};
  auto r = sse::check_lemma3_alias(toy(), ad);
  CHECK(r.pairs_tested == 1);
  CHECK(r.violations == 0);
  CHECK(r.metric("equal_cardinality") == 1);
  CHECK(r.metric("equal_sets") == 0);
  CHECK(r.metric("skipped_pairs") == 1);

  r = sse::check_lemma3_alias(toy(), ad, sse::HypothesisMode::enforce);
  CHECK(r.verdict == sse::Verdict::fail);

  const auto alias = sse::corpus_from_texts(
      {{"p1", "alpha x beta"}, {"p2", "beta y alpha"}, {"p3", "x y"}, {"p4", "alpha z beta z"}});
  const std::vector<sse::TermPair> ab = {pair("alpha", "beta")};
  r = sse::check_lemma3_alias(sse::Index::build(alias), ab, sse::HypothesisMode::enforce);
  CHECK(r.pairs_tested == 1);
  CHECK(r.verdict == sse::Verdict::pass);
}

TEST_CASE("pair sampling is deterministic") {
  const std::vector<sse::Term> extra = {term("b c")};
  const auto p1 = sse::sample_pairs(toy(), extra, 3, 50);
  const auto p2 = sse::sample_pairs(toy(), extra, 3, 50);
  CHECK(p1.size() == 50);
  CHECK(p1 == p2);
  CHECK(sse::sample_pairs(toy(), extra, 4, 50) != p1);
  CHECK(sse::sample_pairs(toy(), {}, 0, 0).empty());
  CHECK(sse::sample_pairs(sse::Index::build(sse::Corpus{}), {}, 0, 10).empty());

  const auto subs = sse::sample_subterm_pairs(toy_corpus(), extra, 1, 20);
  CHECK(subs.size() == 20);
  CHECK(subs[0].first.joined() == "b c");
  for (const auto& [whole, part] : subs) {
    CHECK(part.size() < whole.size());
    CHECK(sse::is_contiguous_subterm(part, whole));
  }
}

TEST_CASE("run_suite on the toy corpus") {
  sse::SuiteOptions options;
  const auto report = sse::run_suite(toy(), toy_corpus(), options);
  CHECK(report.checks.size() == 8);
  CHECK(report.passed());
  for (std::size_t i = 1; i < report.checks.size(); ++i) {
    CHECK(report.checks[i - 1].name < report.checks[i].name);
  }
  for (const auto& c : report.checks) {
    if (c.check_class == sse::CheckClass::invariant) CHECK(c.verdict == sse::Verdict::pass);
  }
  CHECK(report.index_fingerprint.rfind("sha256:", 0) == 0);
  CHECK(report.index_fingerprint.size() == 7 + 64);

  // Determinism.
  CHECK(sse::report_json(sse::run_suite(toy(), toy_corpus(), options)) == sse::report_json(report));

  const auto parsed = nlohmann::json::parse(sse::report_json(report));
  CHECK(parsed["format"] == "sse-verify-report");
  CHECK(parsed["checks"].size() == 8);
  CHECK(parsed["passed"] == true);
}

TEST_CASE("run_suite with a zero budget is vacuous") {
  sse::SuiteOptions options;
  options.pair_budget = 0;
  const auto report = sse::run_suite(toy(), toy_corpus(), options);
  CHECK(report.passed());
  for (const auto& c : report.checks) CHECK(c.pairs_tested == 0);
}

TEST_CASE("run_suite on a bag index skips the positional check") {
  const auto bag = sse::Index::build(toy_corpus(), sse::Semantics::bag);
  const auto report = sse::run_suite(bag, toy_corpus(), {});
  CHECK(report.checks.size() == 7);
  CHECK(report.passed());
}

TEST_CASE("run_suite fails on a corrupted index") {
  const auto report = sse::run_suite(corrupted_toy(), toy_corpus(), {});
  CHECK_FALSE(report.passed());
  const auto it = std::find_if(report.checks.begin(), report.checks.end(),
                               [](const sse::CheckResult& c) { return c.name == "oracle_equivalence"; });
  REQUIRE(it != report.checks.end());
  CHECK(it->verdict == sse::Verdict::fail);
  CHECK(it->witnesses.size() <= sse::kWitnessCap);
  CHECK_FALSE(it->witnesses.empty());
}
