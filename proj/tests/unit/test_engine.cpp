#include "doctest.h"
#include "fixtures.hpp"
#include "sse/engine.hpp"
#include "sse/errors.hpp"

using fixtures::ids;
using fixtures::term;
using Ids = std::set<std::string>;

namespace {

const sse::Index& toy_phrase() {
  static const sse::Index index = sse::Index::build(fixtures::toy_corpus(), sse::Semantics::phrase);
  return index;
}

const sse::Index& toy_bag() {
  static const sse::Index index = sse::Index::build(fixtures::toy_corpus(), sse::Semantics::bag);
  return index;
}

}  // namespace

// The frozen toy values below are produced by the linear-scan oracle first;
// the index is then checked against the same numbers.
TEST_CASE("oracle reproduces the frozen toy values") {
  const auto docs = oracle::toy();
  CHECK(oracle::singleton(docs, {"a"}, true) == Ids{"d1", "d3"});
  CHECK(oracle::singleton(docs, {"b", "c"}, true) == Ids{"d1", "d2"});
  CHECK(oracle::singleton(docs, {"c", "b"}, true) == Ids{});
  CHECK(oracle::singleton(docs, {"c", "b"}, false) == Ids{"d1", "d2"});
  CHECK(oracle::doubleton(docs, {"a"}, {"d"}, true) == Ids{"d3"});
  CHECK(oracle::doubleton(docs, {"b"}, {"c"}, true) == Ids{"d1", "d2"});
  CHECK(oracle::proximity(docs, {"a"}, {"c"}, 1) == Ids{});
  CHECK(oracle::proximity(docs, {"a"}, {"c"}, 2) == Ids{"d1"});
  CHECK(oracle::proximity(docs, {"a"}, {"d"}, 1) == Ids{"d3"});
}

TEST_CASE("build_index on the toy corpus") {
  const auto& index = toy_phrase();
  CHECK(index.universe_size() == 3);
  CHECK(index.vocabulary_size() == 4);
  const auto* a = index.postings("a");
  REQUIRE(a != nullptr);
  REQUIRE(a->size() == 2);
  CHECK(index.doc((*a)[0].doc).id == "d1");
  CHECK((*a)[0].positions == std::vector<sse::Position>{0});
  CHECK(index.doc((*a)[1].doc).id == "d3");
  CHECK((*a)[1].positions == std::vector<sse::Position>{0});
  CHECK(index.postings("zzz") == nullptr);
}

TEST_CASE("build_index edge cases") {
  const auto empty = sse::Index::build(sse::Corpus{});
  CHECK(empty.universe_size() == 0);
  CHECK(empty.vocabulary_size() == 0);
  CHECK(sse::singleton_event(empty, term("a")).empty());

  const auto repeat = sse::Index::build(sse::corpus_from_texts({{"d1", "a a"}}));
  const auto* a = repeat.postings("a");
  REQUIRE(a != nullptr);
  REQUIRE(a->size() == 1);
  CHECK((*a)[0].positions == std::vector<sse::Position>{0, 1});
}

TEST_CASE("occurs_in under phrase and bag semantics") {
  CHECK(sse::occurs_in(toy_phrase(), term("b c"), "d1"));
  CHECK_FALSE(sse::occurs_in(toy_phrase(), term("c b"), "d1"));
  CHECK(sse::occurs_in(toy_bag(), term("c b"), "d1"));
  CHECK_FALSE(sse::occurs_in(toy_phrase(), term("a zzz"), "d1"));
  CHECK_FALSE(sse::occurs_in(toy_bag(), term("a zzz"), "d1"));
  CHECK_THROWS_AS(sse::occurs_in(toy_phrase(), term("a"), "d9"), sse::UnknownDocument);
}

TEST_CASE("singleton_event") {
  const auto& index = toy_phrase();
  const auto a = sse::singleton_event(index, term("a"));
  CHECK(ids(index, a) == Ids{"d1", "d3"});
  CHECK(a.cardinality() == 2);
  CHECK(ids(index, sse::singleton_event(index, term("b c"))) == Ids{"d1", "d2"});
  CHECK(sse::singleton_event(index, term("zzz")).cardinality() == 0);
  CHECK(sse::singleton_event(index, term("a b c")).cardinality() == 1);
  CHECK(sse::singleton_event(toy_bag(), term("d b")).cardinality() == 1);
}

TEST_CASE("doubleton_event and union_cardinality") {
  const auto& index = toy_phrase();
  const auto ad = sse::doubleton_event(index, term("a"), term("d"));
  CHECK(ids(index, ad) == Ids{"d3"});
  CHECK(ad.cardinality() == 1);
  CHECK(ids(index, sse::doubleton_event(index, term("a"), term("a"))) == Ids{"d1", "d3"});
  CHECK(sse::doubleton_event(index, term("a"), term("zzz")).empty());

  CHECK(sse::union_cardinality(index, term("a"), term("d")) == 3);
  CHECK(sse::union_cardinality(index, term("a"), term("a")) == 2);
  CHECK(sse::union_cardinality(index, term("b"), term("c")) == 2);
}

TEST_CASE("proximity_event") {
  const auto& index = toy_phrase();
  CHECK(sse::proximity_event(index, term("a"), term("c"), 1).empty());
  CHECK(ids(index, sse::proximity_event(index, term("a"), term("c"), 2)) == Ids{"d1"});
  CHECK(ids(index, sse::proximity_event(index, term("a"), term("d"), 1)) == Ids{"d3"});
  const auto whole = index.max_document_length();
  for (const char* x : {"a", "b", "c", "d", "b c"}) {
    for (const char* y : {"a", "b", "c", "d", "c d"}) {
      CHECK(sse::proximity_event(index, term(x), term(y), whole) ==
            sse::doubleton_event(index, term(x), term(y)));
    }
  }
  CHECK_THROWS_AS(sse::proximity_event(toy_bag(), term("a"), term("c"), 2),
                  sse::BagSemanticsUnsupported);
  CHECK_THROWS_AS(sse::proximity_event(index, term("a"), term("c"), 0), sse::InvalidArgument);
}

TEST_CASE("brute_force_doubleton_count") {
  const auto corpus = fixtures::toy_corpus();
  CHECK(sse::brute_force_doubleton_count(corpus, term("a"), term("d"), sse::Semantics::phrase) == 1);
  CHECK(sse::brute_force_doubleton_count(corpus, term("b"), term("c"), sse::Semantics::phrase) == 2);
  CHECK(sse::brute_force_doubleton_count(sse::Corpus{}, term("a"), term("b"),
                                         sse::Semantics::phrase) == 0);
  CHECK(sse::brute_force_doubleton_count(corpus, term("c b"), term("d"), sse::Semantics::bag) == 1);
}

TEST_CASE("term_word_overlap and subterms") {
  CHECK(sse::term_word_overlap(term("b c"), term("c d")) == std::set<std::string>{"c"});
  CHECK(sse::term_word_overlap(term("a"), term("d")).empty());
  CHECK(sse::term_word_overlap(term("a b"), term("a b")) == std::set<std::string>{"a", "b"});
  CHECK(sse::is_contiguous_subterm(term("b c"), term("a b c d")));
  CHECK_FALSE(sse::is_contiguous_subterm(term("a c"), term("a b c d")));
}

TEST_CASE("event space set algebra") {
  sse::EventSpace a{{1, 3, 5}};
  sse::EventSpace b{{3, 4, 5, 6}};
  CHECK(sse::intersect(a, b).docs == std::vector<sse::DocOrdinal>{3, 5});
  CHECK(sse::unite(a, b).docs == std::vector<sse::DocOrdinal>{1, 3, 4, 5, 6});
  CHECK(sse::is_subset(sse::EventSpace{{3, 5}}, a));
  CHECK_FALSE(sse::is_subset(a, b));
  CHECK(sse::is_subset(sse::EventSpace{}, a));
}

TEST_CASE("Index constructor rejects broken invariants") {
  using Map = sse::Index::PostingMap;
  std::vector<sse::DocEntry> docs = {{"d1", 2}, {"d2", 1}};
  CHECK_NOTHROW(sse::Index(docs, Map{{"a", {{0, {0, 1}}, {1, {0}}}}}, sse::Semantics::phrase, {}));
  CHECK_THROWS_AS(sse::Index({{"d2", 1}, {"d1", 1}}, Map{}, sse::Semantics::phrase, {}),
                  sse::CorruptIndex);
  CHECK_THROWS_AS(sse::Index(docs, Map{{"a", {{0, {1, 0}}}}}, sse::Semantics::phrase, {}),
                  sse::CorruptIndex);
  CHECK_THROWS_AS(sse::Index(docs, Map{{"a", {{1, {0}}, {0, {0}}}}}, sse::Semantics::phrase, {}),
                  sse::CorruptIndex);
  CHECK_THROWS_AS(sse::Index(docs, Map{{"a", {{5, {0}}}}}, sse::Semantics::phrase, {}),
                  sse::CorruptIndex);
  CHECK_THROWS_AS(sse::Index(docs, Map{{"a", {{1, {3}}}}}, sse::Semantics::phrase, {}),
                  sse::CorruptIndex);
}

// Random small corpora over a tiny alphabet so that phrases and co-occurrences
// are frequent; every engine operation is compared with the linear scan.
TEST_CASE("property: engine agrees with the linear-scan oracle") {
  oracle::Gen gen(2024);
  for (int round = 0; round < 150; ++round) {
    const auto docs = gen.docs(gen.between(0, 12), 14, 4);
    const auto corpus = fixtures::to_corpus(docs);
    const auto phrase = sse::Index::build(corpus, sse::Semantics::phrase);
    const auto bag = sse::Index::build(corpus, sse::Semantics::bag);

    for (int q = 0; q < 12; ++q) {
      const auto wx = gen.words(gen.between(1, 3), 5);
      const auto wy = gen.words(gen.between(1, 3), 5);
      const sse::Term tx(wx), ty(wy);

      CHECK(ids(phrase, sse::singleton_event(phrase, tx)) == oracle::singleton(docs, wx, true));
      CHECK(ids(bag, sse::singleton_event(bag, tx)) == oracle::singleton(docs, wx, false));
      CHECK(ids(phrase, sse::doubleton_event(phrase, tx, ty)) == oracle::doubleton(docs, wx, wy, true));
      CHECK(ids(bag, sse::doubleton_event(bag, tx, ty)) == oracle::doubleton(docs, wx, wy, false));
      CHECK(sse::brute_force_doubleton_count(corpus, tx, ty, sse::Semantics::phrase) ==
            oracle::doubleton(docs, wx, wy, true).size());

      const auto sx = oracle::singleton(docs, wx, true);
      const auto sy = oracle::singleton(docs, wy, true);
      Ids both = sx;
      both.insert(sy.begin(), sy.end());
      CHECK(sse::union_cardinality(phrase, tx, ty) == both.size());

      const std::size_t window = gen.between(1, 6);
      CHECK(ids(phrase, sse::proximity_event(phrase, tx, ty, window)) ==
            oracle::proximity(docs, wx, wy, window));

      for (const auto& [id, tokens] : docs) {
        CHECK(sse::occurs_in(phrase, tx, id) == oracle::occurs(tokens, wx, true));
        CHECK(sse::occurs_in(bag, tx, id) == oracle::occurs(tokens, wx, false));
      }
    }
  }
}

TEST_CASE("property: proximity is monotone and bounded; subterm containment") {
  oracle::Gen gen(99);
  for (int round = 0; round < 100; ++round) {
    const auto docs = gen.docs(gen.between(1, 10), 16, 3);
    const auto index = sse::Index::build(fixtures::to_corpus(docs));
    const sse::Term tx(gen.words(gen.between(1, 3), 3));
    const sse::Term ty(gen.words(gen.between(1, 2), 3));
    const auto both = sse::doubleton_event(index, tx, ty);
    sse::EventSpace previous;
    for (std::size_t w = 1; w <= 17; ++w) {
      const auto near = sse::proximity_event(index, tx, ty, w);
      CHECK(sse::is_subset(previous, near));
      CHECK(sse::is_subset(near, both));
      previous = near;
    }
    CHECK(previous == both);

    // Any contiguous run of tx has an event space containing Ω_tx.
    const auto& w = tx.words();
    for (std::size_t len = 1; len <= w.size(); ++len) {
      for (std::size_t s = 0; s + len <= w.size(); ++s) {
        const sse::Term sub(std::vector<std::string>(w.begin() + s, w.begin() + s + len));
        CHECK(sse::is_subset(sse::singleton_event(index, tx), sse::singleton_event(index, sub)));
      }
    }
  }
}
