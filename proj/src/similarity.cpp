#include "sse/similarity.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <set>

#include "sse/errors.hpp"

namespace sse {

std::string_view to_string(Measure) { return "jaccard"; }

int compare(const SimilarityValue& a, const SimilarityValue& b) noexcept {
  // Counts are bounded by the document count, so the products fit in 64 bits.
  const std::uint64_t lhs = a.numerator * b.denominator;
  const std::uint64_t rhs = b.numerator * a.denominator;
  return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
}

bool exactly_equal(const SimilarityValue& a, const SimilarityValue& b) noexcept {
  return compare(a, b) == 0;
}

SimilarityValue jaccard_from_counts(std::size_t nx, std::size_t ny, std::size_t nxy) {
  SimilarityValue s{Measure::jaccard, nx, ny, nxy, 0, 1};
  if (nx == 0 && ny == 0) {
    s.numerator = 1;
  } else if (nx == 0 || ny == 0) {
    s.numerator = 0;
  } else {
    s.numerator = nxy;
    s.denominator = nx + ny - nxy;
  }
  return s;
}

SimilarityValue jaccard(const Index& index, const Term& tx, const Term& ty) {
  const auto ex = singleton_event(index, tx);
  const auto ey = singleton_event(index, ty);
  return jaccard_from_counts(ex.cardinality(), ey.cardinality(), intersect(ex, ey).cardinality());
}

namespace {

void require_distinct(std::span<const Term> terms) {
  std::set<Term> seen;
  for (const auto& t : terms) {
    if (!seen.insert(t).second) throw DuplicateTerm(t.joined());
  }
}

std::vector<EventSpace> events_for(const Index& index, std::span<const Term> terms) {
  std::vector<EventSpace> events;
  events.reserve(terms.size());
  for (const auto& t : terms) events.push_back(singleton_event(index, t));
  return events;
}

SimilarityValue jaccard_of(const EventSpace& a, const EventSpace& b) {
  return jaccard_from_counts(a.cardinality(), b.cardinality(), intersect(a, b).cardinality());
}

}  // namespace

SimilarityMatrix pairwise_matrix(const Index& index, std::span<const Term> terms) {
  if (terms.empty()) throw InvalidArgument("pairwise_matrix needs at least one term");
  require_distinct(terms);

  const auto events = events_for(index, terms);
  const std::size_t n = terms.size();
  SimilarityMatrix m(n, std::vector<SimilarityValue>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      m[i][j] = jaccard_of(events[i], events[j]);
      if (i != j) {
        m[j][i] = m[i][j];
        std::swap(m[j][i].nx, m[j][i].ny);
      }
    }
  }
  return m;
}

std::vector<NetworkEdge> extract_network(const Index& index, std::span<const Term> terms,
                                         double threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw InvalidArgument("threshold must lie in [0, 1]");
  }
  require_distinct(terms);

  const auto events = events_for(index, terms);
  std::vector<NetworkEdge> edges;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    for (std::size_t j = i + 1; j < terms.size(); ++j) {
      auto w = jaccard_of(events[i], events[j]);
      if (w.value() < threshold) continue;
      if (terms[j].joined() < terms[i].joined()) {
        std::swap(w.nx, w.ny);
        edges.push_back({terms[j], terms[i], w});
      } else {
        edges.push_back({terms[i], terms[j], w});
      }
    }
  }

  std::sort(edges.begin(), edges.end(), [](const NetworkEdge& a, const NetworkEdge& b) {
    if (int c = compare(a.weight, b.weight); c != 0) return c > 0;
    const auto ka = a.term_a.joined();
    const auto kb = b.term_a.joined();
    if (ka != kb) return ka < kb;
    return a.term_b.joined() < b.term_b.joined();
  });
  return edges;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string format_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

void write_matrix_csv(const SimilarityMatrix& matrix, std::span<const std::string> labels,
                      std::ostream& out) {
  if (labels.size() != matrix.size()) throw InvalidArgument("label count does not match matrix");
  for (const auto& l : labels) out << ',' << csv_field(l);
  out << '\n';
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    out << csv_field(labels[i]);
    for (const auto& v : matrix[i]) out << ',' << format_value(v.value());
    out << '\n';
  }
}

void write_edges_csv(std::span<const NetworkEdge> edges, std::ostream& out) {
  for (const auto& e : edges) {
    out << csv_field(e.term_a.joined()) << ',' << csv_field(e.term_b.joined()) << ','
        << format_value(e.weight.value()) << '\n';
  }
}

}  // namespace sse
