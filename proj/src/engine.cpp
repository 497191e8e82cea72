#include "sse/engine.hpp"

#include <algorithm>
#include <iterator>
#include <unordered_map>
#include <utility>

#include "sse/errors.hpp"

namespace sse {

std::string_view to_string(Semantics s) {
  return s == Semantics::phrase ? "phrase" : "bag";
}

Semantics parse_semantics(std::string_view s) {
  if (s == "phrase") return Semantics::phrase;
  if (s == "bag") return Semantics::bag;
  throw InvalidArgument("unknown semantics '" + std::string(s) + "' (expected phrase or bag)");
}

Index::Index(std::vector<DocEntry> docs, PostingMap postings, Semantics semantics,
             TokenizerConfig config)
    : docs_(std::move(docs)),
      postings_(std::move(postings)),
      semantics_(semantics),
      config_(config) {
  for (std::size_t i = 1; i < docs_.size(); ++i) {
    if (!(docs_[i - 1].id < docs_[i].id)) {
      throw CorruptIndex("doc table not strictly sorted at '" + docs_[i].id + "'");
    }
  }
  for (const auto& [word, list] : postings_) {
    if (word.empty()) throw CorruptIndex("empty word in postings");
    if (list.empty()) throw CorruptIndex("empty posting list for '" + word + "'");
    for (std::size_t i = 0; i < list.size(); ++i) {
      const Posting& p = list[i];
      if (p.doc >= docs_.size()) throw CorruptIndex("posting of '" + word + "' names unknown doc");
      if (i > 0 && list[i - 1].doc >= p.doc) {
        throw CorruptIndex("posting docs of '" + word + "' not strictly ascending");
      }
      if (p.positions.empty()) throw CorruptIndex("posting of '" + word + "' without positions");
      for (std::size_t k = 0; k < p.positions.size(); ++k) {
        if (k > 0 && p.positions[k - 1] >= p.positions[k]) {
          throw CorruptIndex("positions of '" + word + "' not strictly ascending");
        }
      }
      if (p.positions.back() >= docs_[p.doc].token_count) {
        throw CorruptIndex("position of '" + word + "' beyond document length");
      }
    }
  }
}

Index Index::build(const Corpus& corpus, Semantics semantics) {
  const auto& documents = corpus.documents();
  std::vector<DocEntry> docs;
  docs.reserve(documents.size());
  std::unordered_map<std::string_view, PostingList> scratch;
  scratch.reserve(corpus.vocabulary().size());

  for (std::size_t d = 0; d < documents.size(); ++d) {
    const auto& doc = documents[d];
    docs.push_back({doc.id, doc.token_count()});
    for (std::size_t pos = 0; pos < doc.tokens.size(); ++pos) {
      auto& list = scratch[doc.tokens[pos]];
      if (list.empty() || list.back().doc != d) list.push_back({static_cast<DocOrdinal>(d), {}});
      list.back().positions.push_back(static_cast<Position>(pos));
    }
  }

  PostingMap postings;
  for (auto& [word, list] : scratch) postings.emplace(std::string(word), std::move(list));
  return Index(std::move(docs), std::move(postings), semantics, corpus.config());
}

std::size_t Index::posting_count() const noexcept {
  std::size_t n = 0;
  for (const auto& [word, list] : postings_) n += list.size();
  return n;
}

std::size_t Index::position_count() const noexcept {
  std::size_t n = 0;
  for (const auto& [word, list] : postings_) {
    for (const auto& p : list) n += p.positions.size();
  }
  return n;
}

std::size_t Index::max_document_length() const noexcept {
  std::size_t longest = 0;
  for (const auto& d : docs_) longest = std::max(longest, d.token_count);
  return longest;
}

std::optional<DocOrdinal> Index::find_doc(std::string_view id) const {
  auto it = std::lower_bound(docs_.begin(), docs_.end(), id,
                             [](const DocEntry& e, std::string_view v) { return e.id < v; });
  if (it == docs_.end() || it->id != id) return std::nullopt;
  return static_cast<DocOrdinal>(it - docs_.begin());
}

const PostingList* Index::postings(std::string_view word) const {
  auto it = postings_.find(word);
  return it == postings_.end() ? nullptr : &it->second;
}

bool EventSpace::contains(DocOrdinal d) const {
  return std::binary_search(docs.begin(), docs.end(), d);
}

EventSpace intersect(const EventSpace& a, const EventSpace& b) {
  EventSpace out;
  std::set_intersection(a.docs.begin(), a.docs.end(), b.docs.begin(), b.docs.end(),
                        std::back_inserter(out.docs));
  return out;
}

EventSpace unite(const EventSpace& a, const EventSpace& b) {
  EventSpace out;
  std::set_union(a.docs.begin(), a.docs.end(), b.docs.begin(), b.docs.end(),
                 std::back_inserter(out.docs));
  return out;
}

bool is_subset(const EventSpace& inner, const EventSpace& outer) {
  return std::includes(outer.docs.begin(), outer.docs.end(), inner.docs.begin(), inner.docs.end());
}

std::vector<std::string> doc_ids(const Index& index, const EventSpace& space) {
  std::vector<std::string> ids;
  ids.reserve(space.docs.size());
  for (DocOrdinal d : space.docs) ids.push_back(index.doc(d).id);
  return ids;
}

namespace {

const Posting* find_posting(const PostingList& list, DocOrdinal doc) {
  auto it = std::lower_bound(list.begin(), list.end(), doc,
                             [](const Posting& p, DocOrdinal d) { return p.doc < d; });
  return (it == list.end() || it->doc != doc) ? nullptr : &*it;
}

// Keeps the starts s of `acc` for which word `list` has position s + offset.
std::vector<Occurrences> positional_join(std::vector<Occurrences> acc, const PostingList& list,
                                         Position offset) {
  std::vector<Occurrences> out;
  auto it = list.begin();
  for (auto& occ : acc) {
    while (it != list.end() && it->doc < occ.doc) ++it;
    if (it == list.end()) break;
    if (it->doc != occ.doc) continue;

    std::vector<Position> kept;
    auto pos = it->positions.begin();
    for (Position s : occ.starts) {
      const Position want = s + offset;
      while (pos != it->positions.end() && *pos < want) ++pos;
      if (pos == it->positions.end()) break;
      if (*pos == want) kept.push_back(s);
    }
    if (!kept.empty()) out.push_back({occ.doc, std::move(kept)});
  }
  return out;
}

std::vector<Occurrences> doc_join(std::vector<Occurrences> acc, const PostingList& list) {
  std::vector<Occurrences> out;
  auto it = list.begin();
  for (auto& occ : acc) {
    while (it != list.end() && it->doc < occ.doc) ++it;
    if (it == list.end()) break;
    if (it->doc == occ.doc) out.push_back(std::move(occ));
  }
  return out;
}

}  // namespace

std::vector<Occurrences> term_occurrences(const Index& index, const Term& term) {
  std::vector<const PostingList*> lists;
  lists.reserve(term.size());
  for (const auto& w : term.words()) {
    const PostingList* list = index.postings(w);
    if (list == nullptr) return {};
    lists.push_back(list);
  }

  std::vector<Occurrences> acc;
  if (index.semantics() == Semantics::phrase) {
    acc.reserve(lists[0]->size());
    for (const auto& p : *lists[0]) acc.push_back({p.doc, p.positions});
    for (std::size_t i = 1; i < lists.size() && !acc.empty(); ++i) {
      acc = positional_join(std::move(acc), *lists[i], static_cast<Position>(i));
    }
  } else {
    // Shortest list first keeps the merge cheap; the result is the same set.
    std::sort(lists.begin(), lists.end(),
              [](const PostingList* a, const PostingList* b) { return a->size() < b->size(); });
    acc.reserve(lists[0]->size());
    for (const auto& p : *lists[0]) acc.push_back({p.doc, {}});
    for (std::size_t i = 1; i < lists.size() && !acc.empty(); ++i) {
      acc = doc_join(std::move(acc), *lists[i]);
    }
  }
  return acc;
}

bool occurs_in(const Index& index, const Term& term, DocOrdinal doc) {
  if (doc >= index.universe_size()) throw UnknownDocument("#" + std::to_string(doc));

  std::vector<const Posting*> hits;
  for (const auto& w : term.words()) {
    const PostingList* list = index.postings(w);
    const Posting* p = list ? find_posting(*list, doc) : nullptr;
    if (p == nullptr) return false;
    hits.push_back(p);
  }
  if (index.semantics() == Semantics::bag) return true;

  for (Position start : hits[0]->positions) {
    bool all = true;
    for (std::size_t i = 1; i < hits.size() && all; ++i) {
      all = std::binary_search(hits[i]->positions.begin(), hits[i]->positions.end(),
                               static_cast<Position>(start + i));
    }
    if (all) return true;
  }
  return false;
}

bool occurs_in(const Index& index, const Term& term, std::string_view doc_id) {
  auto doc = index.find_doc(doc_id);
  if (!doc) throw UnknownDocument(std::string(doc_id));
  return occurs_in(index, term, *doc);
}

EventSpace singleton_event(const Index& index, const Term& term) {
  EventSpace out;
  auto occ = term_occurrences(index, term);
  out.docs.reserve(occ.size());
  for (const auto& o : occ) out.docs.push_back(o.doc);
  return out;
}

EventSpace doubleton_event(const Index& index, const Term& tx, const Term& ty) {
  return intersect(singleton_event(index, tx), singleton_event(index, ty));
}

std::size_t union_cardinality(const Index& index, const Term& tx, const Term& ty) {
  const auto nx = singleton_event(index, tx).cardinality();
  const auto ny = singleton_event(index, ty).cardinality();
  const auto nxy = doubleton_event(index, tx, ty).cardinality();
  return nx + ny - nxy;
}

EventSpace proximity_event(const Index& index, const Term& tx, const Term& ty,
                           std::size_t window) {
  if (index.semantics() != Semantics::phrase) throw BagSemanticsUnsupported();
  if (window < 1) throw InvalidArgument("proximity window must be >= 1");

  const auto ox = term_occurrences(index, tx);
  const auto oy = term_occurrences(index, ty);
  EventSpace out;
  auto iy = oy.begin();
  for (const auto& x : ox) {
    while (iy != oy.end() && iy->doc < x.doc) ++iy;
    if (iy == oy.end()) break;
    if (iy->doc != x.doc) continue;

    // Two-pointer scan for the closest pair of start positions.
    const auto& a = x.starts;
    const auto& b = iy->starts;
    std::size_t i = 0;
    std::size_t j = 0;
    bool near = false;
    while (i < a.size() && j < b.size() && !near) {
      const std::size_t gap = a[i] < b[j] ? b[j] - a[i] : a[i] - b[j];
      near = gap <= window;
      if (a[i] < b[j]) {
        ++i;
      } else {
        ++j;
      }
    }
    if (near) out.docs.push_back(x.doc);
  }
  return out;
}

bool sequence_contains(std::span<const std::string> tokens, const Term& term,
                       Semantics semantics) {
  const auto& words = term.words();
  if (semantics == Semantics::phrase) {
    return std::search(tokens.begin(), tokens.end(), words.begin(), words.end()) != tokens.end();
  }
  return std::all_of(words.begin(), words.end(), [&](const std::string& w) {
    return std::find(tokens.begin(), tokens.end(), w) != tokens.end();
  });
}

std::size_t brute_force_doubleton_count(const Corpus& corpus, const Term& tx, const Term& ty,
                                        Semantics semantics) {
  std::size_t count = 0;
  for (const auto& doc : corpus.documents()) {
    if (sequence_contains(doc.tokens, tx, semantics) && sequence_contains(doc.tokens, ty, semantics)) {
      ++count;
    }
  }
  return count;
}

std::set<std::string> term_word_overlap(const Term& tx, const Term& ty) {
  const std::set<std::string> a(tx.words().begin(), tx.words().end());
  std::set<std::string> out;
  for (const auto& w : ty.words()) {
    if (a.count(w)) out.insert(w);
  }
  return out;
}

bool is_contiguous_subterm(const Term& sub, const Term& whole) {
  const auto& s = sub.words();
  const auto& w = whole.words();
  return !s.empty() && std::search(w.begin(), w.end(), s.begin(), s.end()) != w.end();
}

}  // namespace sse
