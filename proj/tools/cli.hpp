#pragma once

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sse/engine.hpp"

namespace sse::cli {

enum ExitStatus : int {
  kOk = 0,
  kUsage = 1,
  kDataError = 2,
  kVerificationFailed = 3,
};

// Entry point of the `sse` executable; args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Query printers shared by the subcommands. They take an index directly so
// results from a loaded file can be compared against an in-memory build.
void print_hits(const Index& index, std::span<const std::string> raw_terms, std::ostream& out);
void print_doubleton(const Index& index, const std::string& raw_x, const std::string& raw_y,
                     std::optional<std::size_t> window, std::ostream& out);
void print_sim(const Index& index, const std::string& raw_x, const std::string& raw_y,
               std::ostream& out);
void print_stats(const Index& index, std::ostream& out);

}  // namespace sse::cli
