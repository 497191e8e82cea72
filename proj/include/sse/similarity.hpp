#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "sse/engine.hpp"

namespace sse {

enum class Measure { jaccard };

std::string_view to_string(Measure m);

// A similarity value together with the hit counts it was computed from.
// The value is held as an exact fraction; `value()` is for presentation.
struct SimilarityValue {
  Measure measure = Measure::jaccard;
  std::size_t nx = 0;
  std::size_t ny = 0;
  std::size_t nxy = 0;
  std::uint64_t numerator = 0;
  std::uint64_t denominator = 1;

  double value() const noexcept {
    return static_cast<double>(numerator) / static_cast<double>(denominator);
  }
};

// Exact comparison by cross-multiplication.
int compare(const SimilarityValue& a, const SimilarityValue& b) noexcept;
bool exactly_equal(const SimilarityValue& a, const SimilarityValue& b) noexcept;

// Jaccard from hit counts: nxy / (nx + ny - nxy). Both events empty gives
// 1 (the two event spaces are equal); exactly one empty gives 0.
SimilarityValue jaccard_from_counts(std::size_t nx, std::size_t ny, std::size_t nxy);
SimilarityValue jaccard(const Index& index, const Term& tx, const Term& ty);

using SimilarityMatrix = std::vector<std::vector<SimilarityValue>>;

// Symmetric matrix in input order. Throws InvalidArgument for an empty list
// and DuplicateTerm when two inputs normalize to the same term.
SimilarityMatrix pairwise_matrix(const Index& index, std::span<const Term> terms);

struct NetworkEdge {
  Term term_a;  // term_a.joined() < term_b.joined()
  Term term_b;
  SimilarityValue weight;
};

// All unordered pairs with jaccard >= threshold, by descending weight, then
// canonical term order. Self-pairs are excluded.
std::vector<NetworkEdge> extract_network(const Index& index, std::span<const Term> terms,
                                         double threshold);

// Comma-separated output. The matrix has a header row and a label column
// carrying `labels`; values have six decimals. Edge rows are
// term_a,term_b,weight with no header.
void write_matrix_csv(const SimilarityMatrix& matrix, std::span<const std::string> labels,
                      std::ostream& out);
void write_edges_csv(std::span<const NetworkEdge> edges, std::ostream& out);

std::string csv_field(const std::string& s);
std::string format_value(double v);

}  // namespace sse
