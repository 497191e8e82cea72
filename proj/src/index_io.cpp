#include "sse/index_io.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "sse/errors.hpp"

namespace sse {
namespace {

using ordered_json = nlohmann::ordered_json;

constexpr const char* kFormat = "sse-index";
constexpr int kVersion = 1;

std::string dump(const ordered_json& j) {
  return j.dump(-1, ' ', false, nlohmann::json::error_handler_t::strict);
}

[[noreturn]] void corrupt(std::size_t line_no, const std::string& what) {
  throw CorruptIndex("index line " + std::to_string(line_no) + ": " + what);
}

// Each token position of each document must be claimed by exactly one word.
void check_coverage(const std::vector<DocEntry>& docs, const Index::PostingMap& postings) {
  std::vector<std::size_t> offset(docs.size() + 1, 0);
  for (std::size_t d = 0; d < docs.size(); ++d) offset[d + 1] = offset[d] + docs[d].token_count;
  std::vector<bool> seen(offset.back(), false);
  std::size_t claimed = 0;
  for (const auto& [word, list] : postings) {
    for (const auto& p : list) {
      for (Position pos : p.positions) {
        if (p.doc >= docs.size() || pos >= docs[p.doc].token_count) continue;  // ctor reports
        auto bit = seen[offset[p.doc] + pos];
        if (bit) {
          throw CorruptIndex("position " + std::to_string(pos) + " of '" + docs[p.doc].id +
                             "' claimed by more than one word");
        }
        bit = true;
        ++claimed;
      }
    }
  }
  if (claimed != offset.back()) {
    throw CorruptIndex("postings cover " + std::to_string(claimed) + " of " +
                       std::to_string(offset.back()) + " token positions (truncated file?)");
  }
}

}  // namespace

void write_index(const Index& index, std::ostream& out) {
  ordered_json header;
  header["format"] = kFormat;
  header["version"] = kVersion;
  header["semantics"] = std::string(to_string(index.semantics()));
  header["lowercase"] = index.config().lowercase;
  header["doc_count"] = index.universe_size();
  out << dump(header) << '\n';

  for (const auto& d : index.doc_table()) {
    ordered_json rec;
    rec["doc"] = d.id;
    rec["len"] = d.token_count;
    out << dump(rec) << '\n';
  }

  for (const auto& [word, list] : index.postings()) {
    ordered_json post = ordered_json::array();
    for (const auto& p : list) {
      post.push_back(ordered_json::array({index.doc(p.doc).id, p.positions}));
    }
    ordered_json rec;
    rec["word"] = word;
    rec["post"] = std::move(post);
    out << dump(rec) << '\n';
  }
}

std::string serialize_index(const Index& index) {
  std::ostringstream out;
  write_index(index, out);
  return out.str();
}

void save_index(const Index& index, const std::filesystem::path& path) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw UnreadableSource("cannot write " + path.string());
  write_index(index, f);
  f.flush();
  if (!f) throw UnreadableSource("write failed for " + path.string());
}

Index read_index(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;

  auto next = [&](ordered_json& j) -> bool {
    if (!std::getline(in, line)) return false;
    ++line_no;
    if (in.eof()) corrupt(line_no, "missing trailing newline (truncated file?)");
    try {
      j = ordered_json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      corrupt(line_no, e.what());
    }
    if (!j.is_object()) corrupt(line_no, "expected an object");
    return true;
  };

  ordered_json header;
  if (!next(header)) throw CorruptIndex("empty index file");
  if (header.value("format", "") != kFormat) corrupt(line_no, "not an sse-index file");
  if (!header.contains("version") || header["version"] != kVersion) {
    corrupt(line_no, "unsupported version");
  }
  if (!header.contains("semantics") || !header["semantics"].is_string()) {
    corrupt(line_no, "missing semantics");
  }
  if (!header.contains("lowercase") || !header["lowercase"].is_boolean()) {
    corrupt(line_no, "missing lowercase flag");
  }
  if (!header.contains("doc_count") || !header["doc_count"].is_number_unsigned()) {
    corrupt(line_no, "missing doc_count");
  }

  Semantics semantics;
  try {
    semantics = parse_semantics(header["semantics"].get<std::string>());
  } catch (const InvalidArgument& e) {
    corrupt(line_no, e.what());
  }
  TokenizerConfig config{header["lowercase"].get<bool>()};
  const auto doc_count = header["doc_count"].get<std::size_t>();

  std::vector<DocEntry> docs;
  for (std::size_t i = 0; i < doc_count; ++i) {
    ordered_json rec;
    if (!next(rec)) throw CorruptIndex("expected " + std::to_string(doc_count) +
                                       " document records, found " + std::to_string(i));
    if (!rec.contains("doc") || !rec["doc"].is_string() || !rec.contains("len") ||
        !rec["len"].is_number_unsigned()) {
      corrupt(line_no, "expected a document record");
    }
    docs.push_back({rec["doc"].get<std::string>(), rec["len"].get<std::size_t>()});
  }

  std::map<std::string, DocOrdinal, std::less<>> ordinal;
  for (std::size_t d = 0; d < docs.size(); ++d) {
    if (!ordinal.emplace(docs[d].id, static_cast<DocOrdinal>(d)).second) {
      throw CorruptIndex("duplicate document '" + docs[d].id + "'");
    }
  }

  Index::PostingMap postings;
  std::string previous;
  ordered_json rec;
  while (next(rec)) {
    if (!rec.contains("word") || !rec["word"].is_string() || !rec.contains("post") ||
        !rec["post"].is_array()) {
      corrupt(line_no, "expected a word record");
    }
    auto word = rec["word"].get<std::string>();
    if (!postings.empty() && !(previous < word)) corrupt(line_no, "words not strictly sorted");

    PostingList list;
    for (const auto& entry : rec["post"]) {
      if (!entry.is_array() || entry.size() != 2 || !entry[0].is_string() || !entry[1].is_array()) {
        corrupt(line_no, "malformed posting for '" + word + "'");
      }
      auto it = ordinal.find(entry[0].get<std::string>());
      if (it == ordinal.end()) corrupt(line_no, "posting names unknown document");
      Posting p{it->second, {}};
      for (const auto& pos : entry[1]) {
        if (!pos.is_number_unsigned()) corrupt(line_no, "non-integer position");
        p.positions.push_back(pos.get<Position>());
      }
      list.push_back(std::move(p));
    }
    previous = word;
    postings.emplace(std::move(word), std::move(list));
  }
  if (in.bad()) throw UnreadableSource("read error in index stream");

  check_coverage(docs, postings);
  return Index(std::move(docs), std::move(postings), semantics, config);
}

Index load_index(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw UnreadableSource("cannot read index " + path.string());
  return read_index(f);
}

}  // namespace sse
