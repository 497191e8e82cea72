#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "sse/engine.hpp"

namespace sse {

// Line-delimited index file:
//
//   {"format":"sse-index","version":1,"semantics":"phrase","lowercase":true,"doc_count":N}
//   {"doc":"<id>","len":<token_count>}                       x N, sorted by id
//   {"word":"<w>","post":[["<doc>",[p0,p1,...]],...]}        one per word, sorted
//
// Every line ends with '\n'. Writing is canonical, so write -> read -> write
// reproduces the same bytes.
void write_index(const Index& index, std::ostream& out);
std::string serialize_index(const Index& index);
void save_index(const Index& index, const std::filesystem::path& path);

// Throws CorruptIndex on malformed or inconsistent input (including postings
// that do not cover every token position exactly once), UnreadableSource when
// the file cannot be opened.
Index read_index(std::istream& in);
Index load_index(const std::filesystem::path& path);

}  // namespace sse
