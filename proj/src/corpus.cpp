#include "sse/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <utility>

#include <nlohmann/json.hpp>

#include "sse/errors.hpp"

namespace sse {
namespace {

struct Decoded {
  char32_t cp;
  std::size_t len;
  bool valid;
};

Decoded decode_utf8(std::string_view s, std::size_t i) {
  const auto b0 = static_cast<unsigned char>(s[i]);
  if (b0 < 0x80) return {b0, 1, true};

  std::size_t len = 0;
  char32_t cp = 0;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    return {0xFFFD, 1, false};
  }
  if (i + len > s.size()) return {0xFFFD, 1, false};
  for (std::size_t k = 1; k < len; ++k) {
    const auto b = static_cast<unsigned char>(s[i + k]);
    if ((b & 0xC0) != 0x80) return {0xFFFD, 1, false};
    cp = (cp << 6) | (b & 0x3F);
  }
  return {cp, len, true};
}

void encode_utf8(char32_t cp, std::string& out) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

// Unicode White_Space property.
bool is_space(char32_t cp) {
  return (cp >= 0x09 && cp <= 0x0D) || cp == 0x20 || cp == 0x85 || cp == 0xA0 ||
         cp == 0x1680 || (cp >= 0x2000 && cp <= 0x200A) || cp == 0x2028 ||
         cp == 0x2029 || cp == 0x202F || cp == 0x205F || cp == 0x3000;
}

bool is_punct(char32_t cp) {
  if (cp < 0x80) {
    return (cp >= 0x21 && cp <= 0x2F) || (cp >= 0x3A && cp <= 0x40) ||
           (cp >= 0x5B && cp <= 0x60) || (cp >= 0x7B && cp <= 0x7E);
  }
  if (cp >= 0xA1 && cp <= 0xBF) {
    // ª ² ³ µ ¹ º ¼ ½ ¾ are letters or numbers.
    return cp != 0xAA && cp != 0xB2 && cp != 0xB3 && cp != 0xB5 && cp != 0xB9 &&
           cp != 0xBA && !(cp >= 0xBC && cp <= 0xBE);
  }
  return cp == 0xD7 || cp == 0xF7 || (cp >= 0x2010 && cp <= 0x2027) ||
         (cp >= 0x2030 && cp <= 0x205E) || (cp >= 0x3001 && cp <= 0x3003) ||
         (cp >= 0x3008 && cp <= 0x3011) || (cp >= 0x3014 && cp <= 0x301F) ||
         (cp >= 0xFF01 && cp <= 0xFF0F) || (cp >= 0xFF1A && cp <= 0xFF20) ||
         (cp >= 0xFF3B && cp <= 0xFF40) || (cp >= 0xFF5B && cp <= 0xFF65);
}

// Simple one-to-one lowercase mapping. Never maps a lowercase letter, so
// folding is idempotent.
char32_t fold_case(char32_t cp) {
  if (cp >= 'A' && cp <= 'Z') return cp + 0x20;
  if (cp < 0xC0) return cp;
  if (cp <= 0xDE) return cp == 0xD7 ? cp : cp + 0x20;
  if (cp >= 0x100 && cp <= 0x137) return (cp % 2 == 0) ? cp + 1 : cp;
  if (cp >= 0x139 && cp <= 0x148) return (cp % 2 == 1) ? cp + 1 : cp;
  if (cp >= 0x14A && cp <= 0x177) return (cp % 2 == 0) ? cp + 1 : cp;
  if (cp == 0x178) return 0xFF;
  if (cp >= 0x179 && cp <= 0x17E) return (cp % 2 == 1) ? cp + 1 : cp;
  if (cp >= 0x391 && cp <= 0x3A9 && cp != 0x3A2) return cp + 0x20;
  if (cp >= 0x400 && cp <= 0x40F) return cp + 0x50;
  if (cp >= 0x410 && cp <= 0x42F) return cp + 0x20;
  return cp;
}

struct Unit {
  std::size_t begin;
  std::size_t len;
  char32_t cp;
  bool valid;
};

void flush_token(std::string_view text, const std::vector<Unit>& units,
                 const TokenizerConfig& config, std::vector<std::string>& out) {
  std::size_t first = 0;
  std::size_t last = units.size();
  while (first < last && units[first].valid && is_punct(units[first].cp)) ++first;
  while (last > first && units[last - 1].valid && is_punct(units[last - 1].cp)) --last;
  if (first == last) return;

  std::string token;
  for (std::size_t k = first; k < last; ++k) {
    const Unit& u = units[k];
    if (config.lowercase && u.valid) {
      encode_utf8(fold_case(u.cp), token);
    } else {
      token.append(text.substr(u.begin, u.len));
    }
  }
  out.push_back(std::move(token));
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text, const TokenizerConfig& config) {
  std::vector<std::string> out;
  std::vector<Unit> units;
  std::size_t i = 0;
  while (i < text.size()) {
    const Decoded d = decode_utf8(text, i);
    if (d.valid && is_space(d.cp)) {
      flush_token(text, units, config, out);
      units.clear();
    } else {
      units.push_back({i, d.len, d.cp, d.valid});
    }
    i += d.len;
  }
  flush_token(text, units, config, out);
  return out;
}

Term::Term(std::vector<std::string> words) : words_(std::move(words)) {
  if (words_.empty()) throw EmptyTerm("");
}

std::string Term::joined() const {
  std::string s;
  for (const auto& w : words_) {
    if (!s.empty()) s.push_back(' ');
    s += w;
  }
  return s;
}

Term parse_term(std::string_view raw, const TokenizerConfig& config) {
  auto words = tokenize(raw, config);
  if (words.empty()) throw EmptyTerm(std::string(raw));
  return Term(std::move(words));
}

Vocabulary::Vocabulary(std::vector<std::string> words) : words_(std::move(words)) {
  std::sort(words_.begin(), words_.end());
  words_.erase(std::unique(words_.begin(), words_.end()), words_.end());
  lookup_.reserve(words_.size());
  for (std::size_t k = 0; k < words_.size(); ++k) lookup_.emplace(words_[k], k + 1);
}

std::size_t Vocabulary::index_of(std::string_view word) const {
  auto it = lookup_.find(std::string(word));
  return it == lookup_.end() ? 0 : it->second;
}

Corpus::Corpus(std::vector<Document> documents, TokenizerConfig config)
    : documents_(std::move(documents)), config_(config) {
  std::sort(documents_.begin(), documents_.end(),
            [](const Document& a, const Document& b) { return a.id < b.id; });
  auto dup = std::adjacent_find(documents_.begin(), documents_.end(),
                                [](const Document& a, const Document& b) { return a.id == b.id; });
  if (dup != documents_.end()) throw DuplicateDocumentId(dup->id);

  std::vector<std::string> words;
  for (const auto& doc : documents_) words.insert(words.end(), doc.tokens.begin(), doc.tokens.end());
  vocabulary_ = Vocabulary(std::move(words));
}

std::size_t Corpus::max_document_length() const {
  std::size_t longest = 0;
  for (const auto& doc : documents_) longest = std::max(longest, doc.token_count());
  return longest;
}

Corpus corpus_from_texts(std::vector<RawDocument> raw, const TokenizerConfig& config) {
  std::vector<Document> docs;
  docs.reserve(raw.size());
  for (auto& r : raw) docs.push_back({std::move(r.id), tokenize(r.text, config)});
  return Corpus(std::move(docs), config);
}

Corpus ingest_records(std::istream& in, const TokenizerConfig& config) {
  std::vector<RawDocument> raw;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json rec;
    try {
      rec = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw UnreadableSource("record " + std::to_string(line_no) + ": " + e.what());
    }
    if (!rec.is_object() || !rec.contains("id") || !rec["id"].is_string() ||
        !rec.contains("text") || !rec["text"].is_string()) {
      throw UnreadableSource("record " + std::to_string(line_no) +
                             ": expected string fields \"id\" and \"text\"");
    }
    raw.push_back({rec["id"].get<std::string>(), rec["text"].get<std::string>()});
  }
  if (in.bad()) throw UnreadableSource("read error in record stream");
  return corpus_from_texts(std::move(raw), config);
}

Corpus ingest(const std::filesystem::path& source, const TokenizerConfig& config) {
  namespace fs = std::filesystem;
  std::error_code ec;
  const auto status = fs::status(source, ec);
  if (ec || !fs::exists(status)) throw UnreadableSource("no such input: " + source.string());

  if (fs::is_directory(status)) {
    std::vector<RawDocument> raw;
    for (const auto& entry : fs::directory_iterator(source, ec)) {
      if (!entry.is_regular_file() || entry.path().extension() != ".txt") continue;
      std::ifstream f(entry.path(), std::ios::binary);
      if (!f) throw UnreadableSource("cannot read " + entry.path().string());
      std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
      raw.push_back({entry.path().stem().string(), std::move(text)});
    }
    if (ec) throw UnreadableSource("cannot list " + source.string() + ": " + ec.message());
    return corpus_from_texts(std::move(raw), config);
  }

  std::ifstream f(source, std::ios::binary);
  if (!f) throw UnreadableSource("cannot read " + source.string());
  return ingest_records(f, config);
}

void write_records(const Corpus& corpus, std::ostream& out) {
  for (const auto& doc : corpus.documents()) {
    std::string text;
    for (const auto& t : doc.tokens) {
      if (!text.empty()) text.push_back(' ');
      text += t;
    }
    nlohmann::ordered_json rec;
    rec["id"] = doc.id;
    rec["text"] = text;
    out << rec.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace) << '\n';
  }
}

}  // namespace sse
