#include "sse/verifier.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include "sse/errors.hpp"
#include "sse/index_io.hpp"
#include "sse/similarity.hpp"
#include "sse/synth.hpp"

namespace sse {

std::string_view to_string(CheckClass c) {
  return c == CheckClass::invariant ? "invariant" : "hypothesis";
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::pass:
      return "pass";
    case Verdict::fail:
      return "fail";
    case Verdict::hypothesis_report:
      return "hypothesis-report";
  }
  return "?";
}

std::optional<double> CheckResult::violation_rate() const {
  if (pairs_tested == 0) return std::nullopt;
  return static_cast<double>(violations) / static_cast<double>(pairs_tested);
}

std::uint64_t CheckResult::metric(std::string_view key) const {
  for (const auto& [k, v] : metrics) {
    if (k == key) return v;
  }
  return 0;
}

namespace {

using Observed = std::vector<std::pair<std::string, std::int64_t>>;

std::int64_t i64(std::size_t v) { return static_cast<std::int64_t>(v); }

// Accumulates a CheckResult pair by pair.
class Tally {
 public:
  Tally(std::string name, CheckClass cls) {
    result_.name = std::move(name);
    result_.check_class = cls;
  }

  void tested() { ++result_.pairs_tested; }

  void violation(const Term& tx, const Term& ty, Observed observed) {
    ++result_.violations;
    if (result_.witnesses.size() < kWitnessCap) {
      result_.witnesses.push_back({tx, ty, std::move(observed)});
    }
  }

  void metric(std::string key, std::uint64_t value) {
    result_.metrics.emplace_back(std::move(key), value);
  }

  CheckResult finish() {
    if (result_.check_class == CheckClass::hypothesis) {
      result_.verdict = Verdict::hypothesis_report;
    } else {
      result_.verdict = result_.violations == 0 ? Verdict::pass : Verdict::fail;
    }
    return std::move(result_);
  }

 private:
  CheckResult result_;
};

CheckClass class_for(HypothesisMode mode) {
  return mode == HypothesisMode::enforce ? CheckClass::invariant : CheckClass::hypothesis;
}

}  // namespace

CheckResult check_theorem1(const Index& index, std::span<const TermPair> pairs) {
  Tally t("theorem1", CheckClass::invariant);
  const std::size_t universe = index.universe_size();
  for (const auto& [tx, ty] : pairs) {
    t.tested();
    const auto ex = singleton_event(index, tx);
    const auto ey = singleton_event(index, ty);
    const auto nxy = doubleton_event(index, tx, ty).cardinality();
    const auto nx = ex.cardinality();
    const auto ny = ey.cardinality();
    if (nxy > std::min(nx, ny) || nx > universe || ny > universe) {
      t.violation(tx, ty, {{"nx", i64(nx)}, {"ny", i64(ny)}, {"nxy", i64(nxy)},
                           {"universe", i64(universe)}});
    }
  }
  return t.finish();
}

void require_matching(const Index& index, const Corpus& corpus) {
  if (index.config() != corpus.config()) {
    throw CorpusIndexMismatch("corpus and index were normalized with different tokenizer settings");
  }
  const auto& table = index.doc_table();
  const auto& docs = corpus.documents();
  if (table.size() != docs.size()) {
    throw CorpusIndexMismatch("index has " + std::to_string(table.size()) +
                              " documents, corpus has " + std::to_string(docs.size()));
  }
  for (std::size_t i = 0; i < docs.size(); ++i) {
    if (table[i].id != docs[i].id || table[i].token_count != docs[i].token_count()) {
      throw CorpusIndexMismatch("doc table differs at '" + docs[i].id + "'");
    }
  }
}

CheckResult check_oracle_equivalence(const Index& index, const Corpus& corpus,
                                     std::span<const TermPair> pairs) {
  require_matching(index, corpus);
  Tally t("oracle_equivalence", CheckClass::invariant);
  for (const auto& [tx, ty] : pairs) {
    t.tested();
    const auto indexed = doubleton_event(index, tx, ty).cardinality();
    const auto scanned = brute_force_doubleton_count(corpus, tx, ty, index.semantics());
    if (indexed != scanned) {
      t.violation(tx, ty, {{"indexed", i64(indexed)}, {"scanned", i64(scanned)}});
    }
  }
  return t.finish();
}

CheckResult check_proximity_subset(const Index& index, std::span<const TermPair> pairs,
                                   std::span<const std::size_t> windows) {
  if (index.semantics() != Semantics::phrase) throw BagSemanticsUnsupported();
  std::vector<std::size_t> ws(windows.begin(), windows.end());
  std::sort(ws.begin(), ws.end());
  ws.erase(std::unique(ws.begin(), ws.end()), ws.end());
  if (!ws.empty() && ws.front() == 0) throw InvalidArgument("proximity window must be >= 1");
  const std::size_t whole = index.max_document_length();

  Tally t("proximity_subset", CheckClass::invariant);
  for (const auto& [tx, ty] : pairs) {
    t.tested();
    const auto both = doubleton_event(index, tx, ty);
    EventSpace previous;
    std::size_t previous_window = 0;
    for (std::size_t w : ws) {
      auto near = proximity_event(index, tx, ty, w);
      const bool nested = is_subset(previous, near);
      const bool bounded = is_subset(near, both);
      const bool covers = w < whole || near == both;
      if (!nested || !bounded || !covers) {
        t.violation(tx, ty, {{"window", i64(w)}, {"previous_window", i64(previous_window)},
                             {"proximity", i64(near.cardinality())},
                             {"previous", i64(previous.cardinality())},
                             {"nxy", i64(both.cardinality())}});
        break;
      }
      previous = std::move(near);
      previous_window = w;
    }
  }
  return t.finish();
}

CheckResult check_similarity_axioms(const Index& index, std::span<const TermPair> pairs) {
  Tally t("similarity_axioms", CheckClass::invariant);
  for (const auto& [tx, ty] : pairs) {
    t.tested();
    const auto ex = singleton_event(index, tx);
    const auto ey = singleton_event(index, ty);
    const auto sxy = jaccard(index, tx, ty);
    const auto syx = jaccard(index, ty, tx);
    const auto sxx = jaccard(index, tx, tx);

    const bool in_range = sxy.denominator > 0 && sxy.numerator <= sxy.denominator &&
                          sxy.value() >= 0.0 && sxy.value() <= 1.0;
    const bool symmetric = exactly_equal(sxy, syx) && sxy.value() == syx.value();
    const int vs_self = compare(sxy, sxx);
    const bool dominated = vs_self <= 0;
    const bool equality_iff = (vs_self == 0) == (ex == ey);
    const bool counts_ok = sxy.nxy <= std::min(sxy.nx, sxy.ny);
    if (!in_range || !symmetric || !dominated || !equality_iff || !counts_ok) {
      t.violation(tx, ty, {{"num_xy", static_cast<std::int64_t>(sxy.numerator)},
                           {"den_xy", static_cast<std::int64_t>(sxy.denominator)},
                           {"num_yx", static_cast<std::int64_t>(syx.numerator)},
                           {"den_yx", static_cast<std::int64_t>(syx.denominator)},
                           {"num_xx", static_cast<std::int64_t>(sxx.numerator)},
                           {"den_xx", static_cast<std::int64_t>(sxx.denominator)},
                           {"same_events", ex == ey ? 1 : 0}});
    }
  }
  return t.finish();
}

CheckResult check_problem1_contraposition(const Index& index, std::span<const TermPair> pairs) {
  Tally t("problem1_contraposition", CheckClass::invariant);
  std::uint64_t equality_cases = 0;
  for (const auto& [tx, ty] : pairs) {
    t.tested();
    const auto nx = singleton_event(index, tx).cardinality();
    const auto ny = singleton_event(index, ty).cardinality();
    const auto lhs = doubleton_event(index, tx, ty).cardinality();
    const auto rhs = lhs + doubleton_event(index, tx, tx).cardinality() +
                     doubleton_event(index, ty, ty).cardinality();
    const bool equal = lhs == rhs;
    if (equal) ++equality_cases;
    if (rhs - lhs != nx + ny || equal != (nx == 0 && ny == 0)) {
      t.violation(tx, ty, {{"lhs", i64(lhs)}, {"rhs", i64(rhs)}, {"nx", i64(nx)}, {"ny", i64(ny)}});
    }
  }
  t.metric("equality_cases", equality_cases);
  return t.finish();
}

CheckResult check_lemma1_subterm(const Index& index, std::span<const TermPair> pairs) {
  for (const auto& [tx, ty] : pairs) {
    if (!(ty.size() < tx.size()) || term_word_overlap(tx, ty).empty() ||
        !is_contiguous_subterm(ty, tx)) {
      throw NotASubterm("'" + ty.joined() + "' is not a proper contiguous subterm of '" +
                        tx.joined() + "'");
    }
  }

  Tally t("lemma1_subterm", CheckClass::invariant);
  std::uint64_t literal_holds = 0;
  for (const auto& [tx, ty] : pairs) {
    t.tested();
    const auto ex = singleton_event(index, tx);
    const auto ey = singleton_event(index, ty);
    const auto merged = unite(ex, ey).cardinality();
    if (!is_subset(ex, ey) || merged != ey.cardinality()) {
      t.violation(tx, ty, {{"nx", i64(ex.cardinality())}, {"ny", i64(ey.cardinality())},
                           {"union", i64(merged)}});
    }
    if (ex.cardinality() == ex.cardinality() + ey.cardinality()) ++literal_holds;
  }
  t.metric("literal_reading_holds", literal_holds);
  t.metric("literal_reading_fails", pairs.size() - literal_holds);
  return t.finish();
}

CheckResult check_lemma2_disjoint(const Index& index, std::span<const TermPair> pairs,
                                  HypothesisMode mode) {
  Tally t("lemma2_disjoint", class_for(mode));
  std::uint64_t skipped = 0;
  std::uint64_t empty_doubleton = 0;
  std::uint64_t additive = 0;
  for (const auto& [ty, tz] : pairs) {
    if (ty == tz || !term_word_overlap(ty, tz).empty()) {
      ++skipped;
      continue;
    }
    t.tested();
    const auto ey = singleton_event(index, ty);
    const auto ez = singleton_event(index, tz);
    const auto both = intersect(ey, ez).cardinality();
    const auto merged = unite(ey, ez).cardinality();
    const bool empty = both == 0;
    const bool is_additive = merged == ey.cardinality() + ez.cardinality();
    empty_doubleton += empty;
    additive += is_additive;
    if (!empty || !is_additive) {
      t.violation(ty, tz, {{"ny", i64(ey.cardinality())}, {"nz", i64(ez.cardinality())},
                           {"nyz", i64(both)}, {"union", i64(merged)}});
    }
  }
  t.metric("empty_doubleton", empty_doubleton);
  t.metric("additive_union", additive);
  t.metric("skipped_pairs", skipped);
  return t.finish();
}

CheckResult check_lemma3_alias(const Index& index, std::span<const TermPair> pairs,
                               HypothesisMode mode) {
  Tally t("lemma3_alias", class_for(mode));
  std::uint64_t skipped = 0;
  std::uint64_t equal_cardinality = 0;
  std::uint64_t equal_sets = 0;
  for (const auto& [tx, tz] : pairs) {
    if (tx == tz || !term_word_overlap(tx, tz).empty()) {
      ++skipped;
      continue;
    }
    const auto ex = singleton_event(index, tx);
    const auto ez = singleton_event(index, tz);
    if (intersect(ex, ez).empty()) {
      ++skipped;
      continue;
    }
    t.tested();
    const bool same_count = ex.cardinality() == ez.cardinality();
    const bool same_set = ex == ez;
    equal_cardinality += same_count;
    equal_sets += same_set;
    const bool violated = mode == HypothesisMode::enforce ? !(same_count && same_set) : !same_count;
    if (violated) {
      t.violation(tx, tz, {{"nx", i64(ex.cardinality())}, {"nz", i64(ez.cardinality())},
                           {"same_set", same_set ? 1 : 0}});
    }
  }
  t.metric("equal_cardinality", equal_cardinality);
  t.metric("equal_sets", equal_sets);
  t.metric("skipped_pairs", skipped);
  return t.finish();
}

std::vector<TermPair> sample_pairs(const Index& index, std::span<const Term> supplied,
                                   std::uint64_t seed, std::size_t budget) {
  std::vector<Term> pool;
  std::set<Term> seen;
  for (const auto& [word, list] : index.postings()) {
    pool.emplace_back(std::vector<std::string>{word});
    seen.insert(pool.back());
  }
  for (const auto& t : supplied) {
    if (seen.insert(t).second) pool.push_back(t);
  }

  std::vector<TermPair> pairs;
  if (pool.empty()) return pairs;
  Rng rng(seed);
  pairs.reserve(budget);
  for (std::size_t i = 0; i < budget; ++i) {
    const auto a = rng.below(pool.size());
    const auto b = rng.below(pool.size());
    pairs.emplace_back(pool[a], pool[b]);
  }
  return pairs;
}

std::vector<TermPair> sample_subterm_pairs(const Corpus& corpus, std::span<const Term> supplied,
                                           std::uint64_t seed, std::size_t count) {
  std::vector<TermPair> pairs;
  for (const auto& t : supplied) {
    if (t.size() < 2) continue;
    std::set<Term> subs;
    const auto& w = t.words();
    for (std::size_t len = 1; len < w.size(); ++len) {
      for (std::size_t start = 0; start + len <= w.size(); ++start) {
        subs.insert(Term(std::vector<std::string>(w.begin() + static_cast<std::ptrdiff_t>(start),
                                                  w.begin() + static_cast<std::ptrdiff_t>(start + len))));
      }
    }
    for (const auto& s : subs) {
      if (pairs.size() == count) return pairs;
      pairs.emplace_back(t, s);
    }
  }

  std::vector<const Document*> usable;
  for (const auto& d : corpus.documents()) {
    if (d.token_count() >= 2) usable.push_back(&d);
  }
  if (usable.empty()) return pairs;

  Rng rng(seed);
  while (pairs.size() < count) {
    const auto& tokens = usable[rng.below(usable.size())]->tokens;
    const auto len = rng.between(2, std::min<std::size_t>(4, tokens.size()));
    const auto start = rng.below(tokens.size() - len + 1);
    const auto sub_len = rng.between(1, len - 1);
    const auto sub_start = start + rng.below(len - sub_len + 1);
    auto at = [&](std::uint64_t i) { return tokens.begin() + static_cast<std::ptrdiff_t>(i); };
    pairs.emplace_back(Term(std::vector<std::string>(at(start), at(start + len))),
                       Term(std::vector<std::string>(at(sub_start), at(sub_start + sub_len))));
  }
  return pairs;
}

bool VerificationReport::passed() const {
  return std::none_of(checks.begin(), checks.end(),
                      [](const CheckResult& c) { return c.verdict == Verdict::fail; });
}

std::string index_fingerprint(const Index& index) {
  const std::string bytes = serialize_index(index);
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
    throw Error("sha256 digest failed");
  }
  std::string hex = "sha256:";
  char buf[3];
  for (unsigned int i = 0; i < length; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

VerificationReport run_suite(const Index& index, const Corpus& corpus, const SuiteOptions& options) {
  require_matching(index, corpus);

  VerificationReport report;
  report.index_fingerprint = index_fingerprint(index);
  report.seed = options.seed;
  report.pair_budget = options.pair_budget;
  report.semantics = index.semantics();
  report.lowercase = index.config().lowercase;
  report.windows = {1, 2, 4, 8, 16, std::max<std::size_t>(1, index.max_document_length())};
  report.windows.insert(report.windows.end(), options.extra_windows.begin(),
                        options.extra_windows.end());
  std::sort(report.windows.begin(), report.windows.end());
  report.windows.erase(std::unique(report.windows.begin(), report.windows.end()),
                       report.windows.end());

  const auto pairs = sample_pairs(index, options.terms, options.seed, options.pair_budget);
  const auto sub_pairs = sample_subterm_pairs(corpus, options.terms,
                                              options.seed ^ 0x9E3779B97F4A7C15ULL,
                                              options.pair_budget);

  auto& checks = report.checks;
  checks.push_back(check_theorem1(index, pairs));
  checks.push_back(check_oracle_equivalence(index, corpus, pairs));
  if (index.semantics() == Semantics::phrase) {
    checks.push_back(check_proximity_subset(index, pairs, report.windows));
  }
  checks.push_back(check_similarity_axioms(index, pairs));
  checks.push_back(check_problem1_contraposition(index, pairs));
  checks.push_back(check_lemma1_subterm(index, sub_pairs));
  checks.push_back(check_lemma2_disjoint(index, pairs));
  checks.push_back(check_lemma3_alias(index, pairs));
  std::sort(checks.begin(), checks.end(),
            [](const CheckResult& a, const CheckResult& b) { return a.name < b.name; });
  return report;
}

void write_report_json(const VerificationReport& report, std::ostream& out) {
  using ordered_json = nlohmann::ordered_json;
  ordered_json j;
  j["format"] = "sse-verify-report";
  j["version"] = 1;
  j["index_fingerprint"] = report.index_fingerprint;
  j["seed"] = report.seed;
  j["pair_budget"] = report.pair_budget;
  j["semantics"] = std::string(to_string(report.semantics));
  j["lowercase"] = report.lowercase;
  j["windows"] = report.windows;
  j["passed"] = report.passed();

  ordered_json checks = ordered_json::array();
  for (const auto& c : report.checks) {
    ordered_json cj;
    cj["name"] = c.name;
    cj["class"] = std::string(to_string(c.check_class));
    cj["verdict"] = std::string(to_string(c.verdict));
    cj["pairs_tested"] = c.pairs_tested;
    cj["violations"] = c.violations;
    if (auto rate = c.violation_rate()) {
      cj["violation_rate"] = *rate;
    } else {
      cj["violation_rate"] = nullptr;
    }
    ordered_json metrics = ordered_json::object();
    for (const auto& [k, v] : c.metrics) metrics[k] = v;
    cj["metrics"] = std::move(metrics);
    ordered_json witnesses = ordered_json::array();
    for (const auto& w : c.witnesses) {
      ordered_json wj;
      wj["tx"] = w.tx.joined();
      wj["ty"] = w.ty.joined();
      ordered_json observed = ordered_json::object();
      for (const auto& [k, v] : w.observed) observed[k] = v;
      wj["observed"] = std::move(observed);
      witnesses.push_back(std::move(wj));
    }
    cj["witnesses"] = std::move(witnesses);
    checks.push_back(std::move(cj));
  }
  j["checks"] = std::move(checks);
  out << j.dump(2, ' ', false, nlohmann::json::error_handler_t::replace) << '\n';
}

std::string report_json(const VerificationReport& report) {
  std::ostringstream out;
  write_report_json(report, out);
  return out.str();
}

void write_report_table(const VerificationReport& report, std::ostream& out) {
  char line[160];
  std::snprintf(line, sizeof line, "%-26s %-10s %8s %10s  %s\n", "check", "class", "pairs",
                "violations", "verdict");
  out << line;
  for (const auto& c : report.checks) {
    std::snprintf(line, sizeof line, "%-26s %-10s %8zu %10zu  %s\n", c.name.c_str(),
                  std::string(to_string(c.check_class)).c_str(), c.pairs_tested, c.violations,
                  std::string(to_string(c.verdict)).c_str());
    out << line;
  }
  out << (report.passed() ? "all invariant checks passed" : "INVARIANT VIOLATIONS FOUND") << '\n';
}

}  // namespace sse
