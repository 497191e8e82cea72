#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <ostream>

#include "CLI11.hpp"
#include "sse/corpus.hpp"
#include "sse/errors.hpp"
#include "sse/index_io.hpp"
#include "sse/similarity.hpp"
#include "sse/verifier.hpp"

namespace sse::cli {

void print_hits(const Index& index, std::span<const std::string> raw_terms, std::ostream& out) {
  for (const auto& raw : raw_terms) {
    const auto term = index.parse_term(raw);
    out << csv_field(raw) << ',' << singleton_event(index, term).cardinality() << '\n';
  }
}

void print_doubleton(const Index& index, const std::string& raw_x, const std::string& raw_y,
                     std::optional<std::size_t> window, std::ostream& out) {
  const auto tx = index.parse_term(raw_x);
  const auto ty = index.parse_term(raw_y);
  // Reject a window on a bag index before printing anything.
  std::optional<EventSpace> near;
  if (window) near = proximity_event(index, tx, ty, *window);

  out << "hits_x=" << singleton_event(index, tx).cardinality() << '\n';
  out << "hits_y=" << singleton_event(index, ty).cardinality() << '\n';
  out << "hits_xy=" << doubleton_event(index, tx, ty).cardinality() << '\n';
  if (near) out << "hits_xy_window_" << *window << '=' << near->cardinality() << '\n';
}

void print_sim(const Index& index, const std::string& raw_x, const std::string& raw_y,
               std::ostream& out) {
  const auto s = jaccard(index, index.parse_term(raw_x), index.parse_term(raw_y));
  out << "jaccard=" << format_value(s.value()) << '\n';
  out << "hits_xy=" << s.nxy << '\n';
  out << "hits_x=" << s.nx << '\n';
  out << "hits_y=" << s.ny << '\n';
}

void print_stats(const Index& index, std::ostream& out) {
  out << "doc_count: " << index.universe_size() << '\n';
  out << "vocabulary: " << index.vocabulary_size() << '\n';
  out << "postings: " << index.posting_count() << '\n';
  out << "positions: " << index.position_count() << '\n';
  out << "semantics: " << to_string(index.semantics()) << '\n';
  out << "lowercase: " << (index.config().lowercase ? "true" : "false") << '\n';
}

namespace {

std::vector<std::string> read_term_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw UnreadableSource("cannot read terms file " + path);
  std::vector<std::string> terms;
  std::string line;
  while (std::getline(f, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    terms.push_back(line);
  }
  return terms;
}

std::vector<Term> parse_all(const Index& index, const std::vector<std::string>& raw) {
  std::vector<Term> terms;
  terms.reserve(raw.size());
  for (const auto& r : raw) terms.push_back(index.parse_term(r));
  return terms;
}

struct Options {
  std::string input;
  std::string output;
  std::string index;
  std::string term_x;
  std::string term_y;
  std::vector<std::string> terms;
  std::size_t window = 10;
  double threshold = 0.0;
  std::string semantics = "phrase";
  bool no_lowercase = false;
  std::uint64_t seed = 0;
  std::size_t pairs = 1000;
  std::string report;
};

int cmd_index(const Options& o, std::ostream& out) {
  const TokenizerConfig config{!o.no_lowercase};
  const auto semantics = parse_semantics(o.semantics);
  const auto corpus = ingest(o.input, config);
  const auto index = Index::build(corpus, semantics);
  save_index(index, o.output);
  out << "documents: " << corpus.size() << '\n';
  out << "vocabulary: " << corpus.vocabulary().size() << '\n';
  out << "universe: " << index.universe_size() << '\n';
  return kOk;
}

int cmd_matrix(const Options& o, bool has_threshold, std::ostream& out) {
  const auto index = load_index(o.index);
  auto raw = o.terms;
  if (!o.input.empty()) {
    auto from_file = read_term_file(o.input);
    raw.insert(raw.end(), from_file.begin(), from_file.end());
  }
  if (raw.empty()) throw InvalidArgument("matrix needs --terms or a terms file via --input");
  const auto terms = parse_all(index, raw);
  const auto matrix = pairwise_matrix(index, terms);

  if (o.output.empty()) {
    write_matrix_csv(matrix, raw, out);
  } else {
    std::ofstream f(o.output, std::ios::binary | std::ios::trunc);
    if (!f) throw UnreadableSource("cannot write " + o.output);
    write_matrix_csv(matrix, raw, f);
  }
  if (has_threshold) {
    if (o.output.empty()) out << '\n';
    write_edges_csv(extract_network(index, terms, o.threshold), out);
  }
  return kOk;
}

int cmd_verify(const Options& o, std::ostream& out) {
  const auto index = load_index(o.index);
  const auto corpus = ingest(o.input, index.config());
  SuiteOptions suite;
  suite.terms = parse_all(index, o.terms);
  suite.seed = o.seed;
  suite.pair_budget = o.pairs;
  if (index.semantics() == Semantics::phrase) suite.extra_windows = {o.window};
  const auto report = run_suite(index, corpus, suite);

  if (!o.report.empty()) {
    std::ofstream f(o.report, std::ios::binary | std::ios::trunc);
    if (!f) throw UnreadableSource("cannot write " + o.report);
    write_report_json(report, f);
  }
  write_report_table(report, out);
  return report.passed() ? kOk : kVerificationFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Desk-scale search engine model: positional index, hit counts, "
               "co-occurrence similarity and property verification",
               "sse"};
  app.require_subcommand(1);
  Options o;

  auto* index_cmd = app.add_subcommand("index", "Build an index file from a corpus");
  index_cmd->add_option("--input", o.input, "Directory of .txt files or a JSONL record file")
      ->required();
  index_cmd->add_option("--output", o.output, "Index file to write")->required();
  index_cmd->add_option("--semantics", o.semantics, "Term semantics: phrase or bag")
      ->check(CLI::IsMember({"phrase", "bag"}));
  index_cmd->add_flag("--no-lowercase", o.no_lowercase, "Keep the original letter case");

  auto* hits_cmd = app.add_subcommand("hits", "Print |Ω_t| for each term");
  hits_cmd->add_option("--index", o.index)->required();
  hits_cmd->add_option("--terms", o.terms, "Terms; quote multi-word terms")->required();

  auto* doubleton_cmd = app.add_subcommand("doubleton", "Print singleton and doubleton counts");
  doubleton_cmd->add_option("--index", o.index)->required();
  doubleton_cmd->add_option("--term-x", o.term_x)->required();
  doubleton_cmd->add_option("--term-y", o.term_y)->required();
  auto* window_opt = doubleton_cmd->add_option("--window", o.window, "Proximity window in tokens")
                         ->check(CLI::PositiveNumber);

  auto* sim_cmd = app.add_subcommand("sim", "Jaccard similarity of two terms");
  sim_cmd->add_option("--index", o.index)->required();
  sim_cmd->add_option("--term-x", o.term_x)->required();
  sim_cmd->add_option("--term-y", o.term_y)->required();

  auto* matrix_cmd = app.add_subcommand("matrix", "Pairwise similarity matrix and edge list");
  matrix_cmd->add_option("--index", o.index)->required();
  matrix_cmd->add_option("--terms", o.terms, "Terms; quote multi-word terms");
  matrix_cmd->add_option("--input", o.input, "Terms file, one term per line");
  matrix_cmd->add_option("--output", o.output, "Matrix CSV file (default: stdout)");
  auto* threshold_opt =
      matrix_cmd->add_option("--threshold", o.threshold, "Emit edges with weight >= threshold")
          ->check(CLI::Range(0.0, 1.0));

  auto* verify_cmd = app.add_subcommand("verify", "Run the property suite over an index");
  verify_cmd->add_option("--index", o.index)->required();
  verify_cmd->add_option("--input", o.input, "The corpus the index was built from")->required();
  verify_cmd->add_option("--terms", o.terms, "Extra (multi-word) terms to include");
  verify_cmd->add_option("--window", o.window, "Extra proximity window")
      ->check(CLI::PositiveNumber);
  verify_cmd->add_option("--seed", o.seed, "Pair sampling seed");
  verify_cmd->add_option("--pairs", o.pairs, "Pair budget")->check(CLI::NonNegativeNumber);
  verify_cmd->add_option("--report", o.report, "Write the JSON report here");

  auto* stats_cmd = app.add_subcommand("stats", "Summarize an index file");
  stats_cmd->add_option("--index", o.index)->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "sse: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*index_cmd) return cmd_index(o, out);
    if (*hits_cmd) {
      print_hits(load_index(o.index), o.terms, out);
      return kOk;
    }
    if (*doubleton_cmd) {
      std::optional<std::size_t> window;
      if (*window_opt) window = o.window;
      print_doubleton(load_index(o.index), o.term_x, o.term_y, window, out);
      return kOk;
    }
    if (*sim_cmd) {
      print_sim(load_index(o.index), o.term_x, o.term_y, out);
      return kOk;
    }
    if (*matrix_cmd) return cmd_matrix(o, static_cast<bool>(*threshold_opt), out);
    if (*verify_cmd) return cmd_verify(o, out);
    if (*stats_cmd) {
      print_stats(load_index(o.index), out);
      return kOk;
    }
  } catch (const EmptyTerm& e) {
    err << "sse: " << e.what() << '\n';
    return kUsage;
  } catch (const DuplicateTerm& e) {
    err << "sse: " << e.what() << '\n';
    return kUsage;
  } catch (const InvalidArgument& e) {
    err << "sse: " << e.what() << '\n';
    return kUsage;
  } catch (const BagSemanticsUnsupported& e) {
    err << "sse: " << e.what() << '\n';
    return kUsage;
  } catch (const Error& e) {
    err << "sse: " << e.what() << '\n';
    return kDataError;
  }
  return kUsage;
}

}  // namespace sse::cli
