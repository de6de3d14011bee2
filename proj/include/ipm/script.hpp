#pragma once

#include <istream>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ipm/compression.hpp"
#include "ipm/ipm.hpp"

namespace ipm {

// Malformed or failing script line; line numbers are 1-based.
class ScriptError : public std::runtime_error {
 public:
  ScriptError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct QueryLine {
  std::size_t line = 0;
  std::string verb;
  std::vector<Pos> args;
};

// Parses one script line. Returns false for blank and '#' lines; throws
// ScriptError on an unknown verb or a wrong argument count.
bool parse_query_line(std::string_view text, std::size_t line_no, QueryLine& out);

std::string format_progression(const ArithProgression& ap);
std::string format_progressions(const std::vector<ArithProgression>& parts);

// Answers query lines over one index. BLCP and GSC need the range-successor
// structure, built on demand in the constructor.
class QueryEngine {
 public:
  explicit QueryEngine(IpmIndex idx, bool with_compression = true);

  const IpmIndex& index() const { return idx_; }
  bool has_compression() const { return rs_ != nullptr; }
  // Throws ScriptError for invalid fragments, constraint violations and
  // verbs that need the missing compression structure.
  std::string answer(const QueryLine& q) const;

 private:
  IpmIndex idx_;
  std::unique_ptr<RangeSuccessorIndex> rs_;
};

bool needs_compression(const std::vector<QueryLine>& lines);

std::vector<QueryLine> parse_script(std::istream& in);

// Answers every line, splitting the work over `threads` threads. Results
// are in input order; the first failing line (by line number) is rethrown
// after the answers before it are stored in `out`.
void run_script(const QueryEngine& engine, const std::vector<QueryLine>& lines, int threads,
                std::vector<std::string>& out);

}  // namespace ipm
