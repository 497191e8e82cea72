#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "sse/corpus.hpp"
#include "sse/engine.hpp"

namespace sse {

using TermPair = std::pair<Term, Term>;

// Invariant checks must never find a violation. Hypothesis checks record how
// often a modelling assumption holds on the data; they never fail a suite.
enum class CheckClass { invariant, hypothesis };
enum class Verdict { pass, fail, hypothesis_report };

// Hypothesis checks can be promoted to invariants on corpora whose generator
// guarantees the hypothesis.
enum class HypothesisMode { report, enforce };

std::string_view to_string(CheckClass c);
std::string_view to_string(Verdict v);

inline constexpr std::size_t kWitnessCap = 5;

struct Witness {
  Term tx;
  Term ty;
  std::vector<std::pair<std::string, std::int64_t>> observed;
};

struct CheckResult {
  std::string name;
  CheckClass check_class = CheckClass::invariant;
  std::size_t pairs_tested = 0;
  std::size_t violations = 0;
  std::vector<Witness> witnesses;  // first kWitnessCap violations in input order
  std::vector<std::pair<std::string, std::uint64_t>> metrics;
  Verdict verdict = Verdict::pass;

  // violations / pairs_tested, or nullopt when no pair qualified.
  std::optional<double> violation_rate() const;
  std::uint64_t metric(std::string_view key) const;
};

// |Ω_x∩Ω_y| <= min(|Ω_x|, |Ω_y|) and max(|Ω_x|, |Ω_y|) <= |Ω|.
CheckResult check_theorem1(const Index& index, std::span<const TermPair> pairs);

// Indexed doubleton cardinality against the linear scan of the corpus.
// Throws CorpusIndexMismatch when the corpus is not the one indexed.
CheckResult check_oracle_equivalence(const Index& index, const Corpus& corpus,
                                     std::span<const TermPair> pairs);

// Proximity events must nest as the window grows, stay inside the doubleton,
// and equal it once the window spans the longest document.
CheckResult check_proximity_subset(const Index& index, std::span<const TermPair> pairs,
                                   std::span<const std::size_t> windows);

// Range, symmetry, self-dominance, and equality iff the event sets coincide;
// all compared exactly.
CheckResult check_similarity_axioms(const Index& index, std::span<const TermPair> pairs);

// With LHS = |Ω_x∩Ω_y| and RHS = |Ω_x∩Ω_y| + |Ω_x∩Ω_x| + |Ω_y∩Ω_y|:
// RHS - LHS = |Ω_x| + |Ω_y|, and LHS = RHS iff both singletons are empty.
CheckResult check_problem1_contraposition(const Index& index, std::span<const TermPair> pairs);

// Pairs (tx, ty) with ty a strictly shorter contiguous subterm of tx.
// Asserts Ω_x ⊆ Ω_y, hence |Ω_x ∪ Ω_y| = |Ω_y|. Also counts how often the
// literal cardinality reading |Ω_x| = |Ω_x| + |Ω_y| holds (only when Ω_y is
// empty). Throws NotASubterm for a pair that is not of that shape.
CheckResult check_lemma1_subterm(const Index& index, std::span<const TermPair> pairs);

// Word-disjoint pairs: how often the doubleton is empty and the union is
// additive. Pairs sharing a word are skipped.
CheckResult check_lemma2_disjoint(const Index& index, std::span<const TermPair> pairs,
                                  HypothesisMode mode = HypothesisMode::report);

// Word-disjoint pairs with a non-empty doubleton: how often |Ω_x| = |Ω_z|
// (and, enforced, Ω_x = Ω_z).
CheckResult check_lemma3_alias(const Index& index, std::span<const TermPair> pairs,
                               HypothesisMode mode = HypothesisMode::report);

// Throws CorpusIndexMismatch unless doc tables and tokenizer config agree.
void require_matching(const Index& index, const Corpus& corpus);

// `budget` pairs drawn uniformly (with replacement, both members
// independently) from the index's single-word terms plus the supplied terms.
std::vector<TermPair> sample_pairs(const Index& index, std::span<const Term> supplied,
                                   std::uint64_t seed, std::size_t budget);

// (term, proper contiguous subterm) pairs: every subterm of the supplied
// multi-word terms first, then random phrases of 2..4 words cut from the
// corpus, up to `count` pairs in total.
std::vector<TermPair> sample_subterm_pairs(const Corpus& corpus, std::span<const Term> supplied,
                                           std::uint64_t seed, std::size_t count);

struct SuiteOptions {
  std::vector<Term> terms;
  std::uint64_t seed = 0;
  std::size_t pair_budget = 1000;
  std::vector<std::size_t> extra_windows;  // added to 1,2,4,8,16 and whole-document
};

struct VerificationReport {
  std::string index_fingerprint;
  std::uint64_t seed = 0;
  std::size_t pair_budget = 0;
  Semantics semantics = Semantics::phrase;
  bool lowercase = true;
  std::vector<std::size_t> windows;
  std::vector<CheckResult> checks;  // sorted by name

  bool passed() const;
};

// "sha256:<hex>" of the serialized index.
std::string index_fingerprint(const Index& index);

VerificationReport run_suite(const Index& index, const Corpus& corpus, const SuiteOptions& options);

void write_report_json(const VerificationReport& report, std::ostream& out);
std::string report_json(const VerificationReport& report);
void write_report_table(const VerificationReport& report, std::ostream& out);

}  // namespace sse
