#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>
#include <variant>

#include "sse/corpus.hpp"
#include "sse/engine.hpp"
#include "sse/errors.hpp"
#include "sse/index_io.hpp"
#include "sse/similarity.hpp"
#include "sse/verifier.hpp"

namespace py = pybind11;

namespace {

// Python callers may pass either a Term or a raw string; strings are parsed
// with the index's tokenizer settings.
using TermLike = std::variant<sse::Term, std::string>;

sse::Term resolve(const sse::Index& index, const TermLike& t) {
  if (const auto* term = std::get_if<sse::Term>(&t)) return *term;
  return index.parse_term(std::get<std::string>(t));
}

std::vector<sse::Term> resolve_all(const sse::Index& index, const std::vector<TermLike>& ts) {
  std::vector<sse::Term> out;
  out.reserve(ts.size());
  for (const auto& t : ts) out.push_back(resolve(index, t));
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Positional inverted index, hit-count similarity and property verification";

  auto base = py::register_exception<sse::Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<sse::EmptyTerm>(m, "EmptyTerm", base);
  py::register_exception<sse::DuplicateDocumentId>(m, "DuplicateDocumentId", base);
  py::register_exception<sse::UnreadableSource>(m, "UnreadableSource", base);
  py::register_exception<sse::UnknownDocument>(m, "UnknownDocument", base);
  py::register_exception<sse::BagSemanticsUnsupported>(m, "BagSemanticsUnsupported", base);
  py::register_exception<sse::InvalidArgument>(m, "InvalidArgument", base);
  py::register_exception<sse::DuplicateTerm>(m, "DuplicateTerm", base);
  py::register_exception<sse::CorruptIndex>(m, "CorruptIndex", base);
  py::register_exception<sse::CorpusIndexMismatch>(m, "CorpusIndexMismatch", base);
  py::register_exception<sse::NotASubterm>(m, "NotASubterm", base);

  m.def("tokenize",
        [](const std::string& text, bool lowercase) {
          return sse::tokenize(text, sse::TokenizerConfig{lowercase});
        },
        py::arg("text"), py::arg("lowercase") = true);

  py::class_<sse::Term>(m, "Term")
      .def(py::init<std::vector<std::string>>(), py::arg("words"))
      .def_property_readonly("words", &sse::Term::words)
      .def_property_readonly("size", &sse::Term::size)
      .def("joined", &sse::Term::joined)
      .def("__len__", &sse::Term::size)
      .def("__eq__", [](const sse::Term& a, const sse::Term& b) { return a == b; })
      .def("__hash__", [](const sse::Term& t) { return py::hash(py::str(t.joined())); })
      .def("__repr__", [](const sse::Term& t) { return "Term('" + t.joined() + "')"; });

  m.def("parse_term",
        [](const std::string& raw, bool lowercase) {
          return sse::parse_term(raw, sse::TokenizerConfig{lowercase});
        },
        py::arg("raw"), py::arg("lowercase") = true);

  py::class_<sse::Corpus>(m, "Corpus")
      .def_static(
          "from_texts",
          [](const std::vector<std::pair<std::string, std::string>>& docs, bool lowercase) {
            std::vector<sse::RawDocument> raw;
            for (const auto& [id, text] : docs) raw.push_back({id, text});
            return sse::corpus_from_texts(std::move(raw), sse::TokenizerConfig{lowercase});
          },
          py::arg("docs"), py::arg("lowercase") = true)
      .def_static(
          "ingest",
          [](const std::filesystem::path& source, bool lowercase) {
            return sse::ingest(source, sse::TokenizerConfig{lowercase});
          },
          py::arg("source"), py::arg("lowercase") = true)
      .def_property_readonly("size", &sse::Corpus::size)
      .def_property_readonly("vocabulary_size",
                             [](const sse::Corpus& c) { return c.vocabulary().size(); })
      .def_property_readonly("vocabulary",
                             [](const sse::Corpus& c) { return c.vocabulary().words(); })
      .def_property_readonly("lowercase", [](const sse::Corpus& c) { return c.config().lowercase; })
      .def("documents",
           [](const sse::Corpus& c) {
             std::vector<std::pair<std::string, std::vector<std::string>>> out;
             for (const auto& d : c.documents()) out.emplace_back(d.id, d.tokens);
             return out;
           })
      .def("records", [](const sse::Corpus& c) {
        std::ostringstream out;
        sse::write_records(c, out);
        return out.str();
      });

  py::class_<sse::Index>(m, "Index")
      .def_static(
          "build",
          [](const sse::Corpus& corpus, const std::string& semantics) {
            return sse::Index::build(corpus, sse::parse_semantics(semantics));
          },
          py::arg("corpus"), py::arg("semantics") = "phrase")
      .def_static("load", &sse::load_index, py::arg("path"))
      .def_static(
          "loads",
          [](const std::string& text) {
            std::istringstream in(text);
            return sse::read_index(in);
          },
          py::arg("text"))
      .def("save", [](const sse::Index& i, const std::filesystem::path& p) { sse::save_index(i, p); },
           py::arg("path"))
      .def("dumps", &sse::serialize_index)
      .def("fingerprint", &sse::index_fingerprint)
      .def_property_readonly("universe_size", &sse::Index::universe_size)
      .def_property_readonly("vocabulary_size", &sse::Index::vocabulary_size)
      .def_property_readonly("semantics",
                             [](const sse::Index& i) { return std::string(sse::to_string(i.semantics())); })
      .def_property_readonly("lowercase", [](const sse::Index& i) { return i.config().lowercase; })
      .def_property_readonly("doc_ids",
                             [](const sse::Index& i) {
                               std::vector<std::string> ids;
                               for (const auto& d : i.doc_table()) ids.push_back(d.id);
                               return ids;
                             })
      .def("parse_term", &sse::Index::parse_term, py::arg("raw"));

  m.def("occurs_in",
        [](const sse::Index& index, const TermLike& t, const std::string& doc_id) {
          return sse::occurs_in(index, resolve(index, t), std::string_view(doc_id));
        },
        py::arg("index"), py::arg("term"), py::arg("doc_id"));
  m.def("singleton_event",
        [](const sse::Index& index, const TermLike& t) {
          return sse::doc_ids(index, sse::singleton_event(index, resolve(index, t)));
        },
        py::arg("index"), py::arg("term"));
  m.def("doubleton_event",
        [](const sse::Index& index, const TermLike& x, const TermLike& y) {
          return sse::doc_ids(index,
                              sse::doubleton_event(index, resolve(index, x), resolve(index, y)));
        },
        py::arg("index"), py::arg("tx"), py::arg("ty"));
  m.def("union_cardinality",
        [](const sse::Index& index, const TermLike& x, const TermLike& y) {
          return sse::union_cardinality(index, resolve(index, x), resolve(index, y));
        },
        py::arg("index"), py::arg("tx"), py::arg("ty"));
  m.def("proximity_event",
        [](const sse::Index& index, const TermLike& x, const TermLike& y, std::size_t window) {
          return sse::doc_ids(
              index, sse::proximity_event(index, resolve(index, x), resolve(index, y), window));
        },
        py::arg("index"), py::arg("tx"), py::arg("ty"), py::arg("window"));
  m.def("brute_force_doubleton_count",
        [](const sse::Corpus& corpus, const TermLike& x, const TermLike& y,
           const std::string& semantics) {
          auto parse = [&](const TermLike& t) {
            if (const auto* term = std::get_if<sse::Term>(&t)) return *term;
            return sse::parse_term(std::get<std::string>(t), corpus.config());
          };
          return sse::brute_force_doubleton_count(corpus, parse(x), parse(y),
                                                  sse::parse_semantics(semantics));
        },
        py::arg("corpus"), py::arg("tx"), py::arg("ty"), py::arg("semantics") = "phrase");
  m.def("term_word_overlap", &sse::term_word_overlap, py::arg("tx"), py::arg("ty"));

  py::class_<sse::SimilarityValue>(m, "SimilarityValue")
      .def_property_readonly("value", &sse::SimilarityValue::value)
      .def_readonly("nx", &sse::SimilarityValue::nx)
      .def_readonly("ny", &sse::SimilarityValue::ny)
      .def_readonly("nxy", &sse::SimilarityValue::nxy)
      .def_readonly("numerator", &sse::SimilarityValue::numerator)
      .def_readonly("denominator", &sse::SimilarityValue::denominator)
      .def("__float__", &sse::SimilarityValue::value)
      .def("__repr__", [](const sse::SimilarityValue& s) {
        return "SimilarityValue(" + std::to_string(s.numerator) + "/" +
               std::to_string(s.denominator) + ")";
      });

  m.def("jaccard",
        [](const sse::Index& index, const TermLike& x, const TermLike& y) {
          return sse::jaccard(index, resolve(index, x), resolve(index, y));
        },
        py::arg("index"), py::arg("tx"), py::arg("ty"));
  m.def("pairwise_matrix",
        [](const sse::Index& index, const std::vector<TermLike>& terms) {
          const auto matrix = sse::pairwise_matrix(index, resolve_all(index, terms));
          std::vector<std::vector<double>> out;
          for (const auto& row : matrix) {
            auto& r = out.emplace_back();
            for (const auto& v : row) r.push_back(v.value());
          }
          return out;
        },
        py::arg("index"), py::arg("terms"));
  m.def("extract_network",
        [](const sse::Index& index, const std::vector<TermLike>& terms, double threshold) {
          std::vector<std::tuple<std::string, std::string, double>> out;
          for (const auto& e : sse::extract_network(index, resolve_all(index, terms), threshold)) {
            out.emplace_back(e.term_a.joined(), e.term_b.joined(), e.weight.value());
          }
          return out;
        },
        py::arg("index"), py::arg("terms"), py::arg("threshold"));

  m.def("run_suite_json",
        [](const sse::Index& index, const sse::Corpus& corpus, std::uint64_t seed,
           std::size_t pairs, const std::vector<TermLike>& terms) {
          sse::SuiteOptions options;
          options.seed = seed;
          options.pair_budget = pairs;
          options.terms = resolve_all(index, terms);
          return sse::report_json(sse::run_suite(index, corpus, options));
        },
        py::arg("index"), py::arg("corpus"), py::arg("seed") = 0, py::arg("pairs") = 1000,
        py::arg("terms") = std::vector<TermLike>{});
}
