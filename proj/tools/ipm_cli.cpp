// ipm: build, query, bench and selftest front end.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "ipm/bench.hpp"
#include "ipm/errors.hpp"
#include "ipm/ipm.hpp"
#include "ipm/script.hpp"
#include "ipm/selftest.hpp"

namespace {

std::vector<std::uint8_t> read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read " + path);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

bool is_index(const std::vector<std::uint8_t>& b) {
  return b.size() >= 4 && b[0] == 'I' && b[1] == 'P' && b[2] == 'M' && b[3] == 'X';
}

ipm::Text read_text(const std::string& path) {
  auto bytes = read_file(path);
  if (bytes.empty()) throw std::runtime_error(path + " is empty");
  return ipm::Text(std::move(bytes));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Internal pattern matching index"};
  app.require_subcommand(1);

  auto* build = app.add_subcommand("build", "Build an index file from a text");
  std::string build_text, build_out;
  ipm::BuildConfig cfg;
  build->add_option("text", build_text, "Text file (raw bytes)")->required();
  build->add_option("--seed", cfg.seed, "Random seed");
  build->add_flag("--deterministic", cfg.deterministic, "Identity permutations");
  build->add_option("--out", build_out, "Output path (default: <text>.ipmx)");
  build->add_option("--threshold", cfg.threshold, "Candidate retry threshold per symbol");
  build->add_option("--attempt-cap", cfg.attempt_cap, "Maximum build attempts");

  auto* query = app.add_subcommand("query", "Answer a query script");
  std::string query_in, script_path;
  int threads = 1;
  query->add_option("input", query_in, "Text or index file")->required();
  query->add_option("--script", script_path, "Script file (default: stdin)");
  query->add_option("--threads", threads, "Worker threads");

  auto* bench = app.add_subcommand("bench", "Time construction and queries");
  std::string bench_text;
  std::vector<ipm::Pos> sizes, xlens;
  ipm::BenchOptions bopt;
  bench->add_option("text", bench_text, "Text file; prefixes of it are benchmarked")->required();
  bench->add_option("--sizes", sizes, "Prefix lengths (default: whole text)")->delimiter(',');
  bench->add_option("--queries", bopt.queries, "Queries per family");
  bench->add_option("--seed", bopt.seed, "Seed for the index and the queries");
  bench->add_option("--period-lengths", bopt.period_lengths, "Fixed |x| values for PERIOD")->delimiter(',');

  auto* selftest = app.add_subcommand("selftest", "Oracle and reference-instance checks");
  ipm::SelftestOptions sopt;
  selftest->add_option("--max-n", sopt.max_n, "Largest random text length")->check(CLI::PositiveNumber);
  selftest->add_option("--seed", sopt.seed, "Seed");
  selftest->add_option("--texts", sopt.texts, "Random texts per suite");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*build) {
      const auto idx = ipm::IpmIndex::build(read_text(build_text), cfg);
      const std::string out = build_out.empty() ? build_text + ".ipmx" : build_out;
      idx.save(out);
      const auto& st = idx.stats();
      std::cerr << "n " << idx.size() << " runs " << idx.runs().runs().size() << " attempts " << st.attempts
                << " candidates " << st.candidates << " sample_steps " << st.sample_steps << " -> " << out
                << "\n";
      return 0;
    }
    if (*query) {
      auto bytes = read_file(query_in);
      ipm::IpmIndex idx = is_index(bytes) ? ipm::IpmIndex::deserialize(bytes)
                                          : ipm::IpmIndex::build(ipm::Text(std::move(bytes)));
      std::vector<ipm::QueryLine> lines;
      if (script_path.empty()) {
        lines = ipm::parse_script(std::cin);
      } else {
        std::ifstream f(script_path);
        if (!f) throw std::runtime_error("cannot read " + script_path);
        lines = ipm::parse_script(f);
      }
      const ipm::QueryEngine engine(std::move(idx), ipm::needs_compression(lines));
      std::vector<std::string> out;
      int rc = 0;
      try {
        ipm::run_script(engine, lines, threads, out);
      } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        rc = 2;
      }
      std::string all;
      for (const auto& s : out) {
        all += s;
        all += '\n';
      }
      std::cout << all << std::flush;
      return rc;
    }
    if (*bench) {
      const ipm::Text text = read_text(bench_text);
      if (sizes.empty()) sizes.push_back(text.size());
      for (ipm::Pos n : sizes) {
        if (n < 1 || n > text.size()) throw std::runtime_error("size " + std::to_string(n) + " outside the text");
        const auto b = text.bytes().first(static_cast<std::size_t>(n));
        ipm::print_bench(ipm::bench_text(ipm::Text(std::vector<std::uint8_t>(b.begin(), b.end())), bopt),
                         std::cout);
      }
      return 0;
    }
    if (*selftest) {
      bool ok = true;
      for (const auto& r : ipm::run_selftest(sopt)) {
        std::cout << (r.pass ? "PASS " : "FAIL ") << r.name << " (" << r.checks << " checks)";
        if (!r.pass) std::cout << ": " << r.detail;
        std::cout << "\n";
        ok = ok && r.pass;
      }
      return ok ? 0 : 1;
    }
  } catch (const ipm::ScriptError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
