#include "ipm/script.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <exception>
#include <optional>
#include <sstream>
#include <thread>

#include "ipm/errors.hpp"
#include "ipm/internal_queries.hpp"

namespace ipm {
namespace {

struct VerbSpec {
  std::string_view verb;
  std::size_t arity;
  bool compression;
};

constexpr VerbSpec kVerbs[] = {
    {"IPM", 4, false},  {"IPML", 4, false},  {"PS", 5, false},  {"PERIOD", 2, false},
    {"TWOPER", 2, false}, {"CYC", 4, false}, {"BLCP", 4, true}, {"GSC", 4, true},
};

const VerbSpec* find_verb(std::string_view v) {
  for (const auto& s : kVerbs) {
    if (s.verb == v) return &s;
  }
  return nullptr;
}

}  // namespace

bool parse_query_line(std::string_view text, std::size_t line_no, QueryLine& out) {
  std::vector<std::string_view> tok;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    const std::size_t b = i;
    while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i > b) tok.push_back(text.substr(b, i - b));
  }
  if (tok.empty() || tok[0].front() == '#') return false;
  const VerbSpec* spec = find_verb(tok[0]);
  if (spec == nullptr) throw ScriptError(line_no, "unknown verb '" + std::string(tok[0]) + "'");
  if (tok.size() - 1 != spec->arity) {
    throw ScriptError(line_no, std::string(spec->verb) + " takes " + std::to_string(spec->arity) +
                                   " arguments, got " + std::to_string(tok.size() - 1));
  }
  out.line = line_no;
  out.verb = std::string(spec->verb);
  out.args.clear();
  for (std::size_t j = 1; j < tok.size(); ++j) {
    Pos v = 0;
    const auto [p, ec] = std::from_chars(tok[j].data(), tok[j].data() + tok[j].size(), v);
    if (ec != std::errc{} || p != tok[j].data() + tok[j].size()) {
      throw ScriptError(line_no, "not an integer: '" + std::string(tok[j]) + "'");
    }
    out.args.push_back(v);
  }
  return true;
}

std::string format_progression(const ArithProgression& ap) {
  if (ap.empty()) return "NONE";
  return "PROG " + std::to_string(ap.first) + " " + std::to_string(ap.diff) + " " + std::to_string(ap.count);
}

std::string format_progressions(const std::vector<ArithProgression>& parts) {
  if (parts.empty()) return "NONE";
  std::string s = "PROGS " + std::to_string(parts.size());
  for (const auto& ap : parts) {
    s += "; " + std::to_string(ap.first) + " " + std::to_string(ap.diff) + " " + std::to_string(ap.count);
  }
  return s;
}

QueryEngine::QueryEngine(IpmIndex idx, bool with_compression) : idx_(std::move(idx)) {
  if (with_compression) rs_ = std::make_unique<RangeSuccessorIndex>(idx_.text_index());
}

std::string QueryEngine::answer(const QueryLine& q) const {
  const auto& a = q.args;
  auto frag = [&](std::size_t i) {
    const Fragment f{a[i], a[i + 1]};
    if (f.start < 1 || f.end < f.start || f.end > idx_.size()) {
      throw ScriptError(q.line, "invalid fragment [" + std::to_string(f.start) + "," +
                                    std::to_string(f.end) + "] for text of length " +
                                    std::to_string(idx_.size()));
    }
    return f;
  };
  try {
    if (q.verb == "IPM") return format_progression(idx_.query(frag(0), frag(2)));
    if (q.verb == "IPML") return format_progressions(idx_.query_long(frag(0), frag(2)));
    if (q.verb == "PS") {
      if (a[4] < 1) throw ScriptError(q.line, "PS needs d >= 1");
      return format_progression(prefix_suffix(idx_, frag(0), frag(2), a[4]));
    }
    if (q.verb == "PERIOD") return format_progressions(period_query(idx_, frag(0)).progressions);
    if (q.verb == "TWOPER") {
      const TwoPeriod tp = two_period_query(idx_.runs(), frag(0));
      return tp.periodic ? "PERIODIC " + std::to_string(tp.period) : "APERIODIC";
    }
    if (q.verb == "CYC") return format_progression(cyclic_equivalence(idx_, frag(0), frag(2)));
    if (!rs_) throw ScriptError(q.line, q.verb + " needs the range-successor structure");
    if (q.verb == "BLCP") return "LEN " + std::to_string(blcp(idx_, *rs_, frag(0), frag(2)).length);
    if (q.verb == "GSC") {
      std::string s;
      for (const LzPhrase& p : gsc(idx_, *rs_, frag(0), frag(2))) {
        if (!s.empty()) s += ' ';
        s += p.literal ? "LIT " + std::to_string(p.symbol)
                       : "COPY " + std::to_string(p.ref) + " " + std::to_string(p.len);
      }
      return s;
    }
  } catch (const ConstraintViolation& e) {
    throw ScriptError(q.line, e.what());
  }
  throw ScriptError(q.line, "unhandled verb " + q.verb);
}

bool needs_compression(const std::vector<QueryLine>& lines) {
  return std::any_of(lines.begin(), lines.end(), [](const QueryLine& q) {
    const VerbSpec* s = find_verb(q.verb);
    return s != nullptr && s->compression;
  });
}

std::vector<QueryLine> parse_script(std::istream& in) {
  std::vector<QueryLine> out;
  std::string line;
  std::size_t no = 0;
  QueryLine q;
  while (std::getline(in, line)) {
    ++no;
    if (parse_query_line(line, no, q)) out.push_back(q);
  }
  return out;
}

void run_script(const QueryEngine& engine, const std::vector<QueryLine>& lines, int threads,
                std::vector<std::string>& out) {
  const std::size_t n = lines.size();
  std::vector<std::string> res(n);
  std::vector<std::exception_ptr> err(n);
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      try {
        res[i] = engine.answer(lines[i]);
      } catch (...) {
        err[i] = std::current_exception();
        return;
      }
    }
  };
  const std::size_t t = std::clamp<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), 1,
                                                std::max<std::size_t>(n, 1));
  if (t == 1) {
    work(0, n);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (n + t - 1) / t;
    for (std::size_t b = 0; b < n; b += chunk) pool.emplace_back(work, b, std::min(n, b + chunk));
    for (auto& th : pool) th.join();
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (err[i]) std::rethrow_exception(err[i]);
    out.push_back(std::move(res[i]));
  }
}

}  // namespace ipm
