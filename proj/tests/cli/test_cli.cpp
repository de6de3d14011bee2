#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <algorithm>
#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>

#ifndef IPM_CLI_PATH
#error "IPM_CLI_PATH must point at the ipm executable"
#endif

namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code = -1;
  std::string out;
};

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("ipm_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

fs::path write(const std::string& name, const std::string& content) {
  const fs::path p = scratch() / name;
  std::ofstream(p, std::ios::binary) << content;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

Outcome run(const std::string& args) {
  const std::string cmd = std::string(IPM_CLI_PATH) + " " + args + " 2>/dev/null";
  Outcome o;
  FILE* p = ::popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf{};
  std::size_t got;
  while ((got = std::fread(buf.data(), 1, buf.size(), p)) > 0) o.out.append(buf.data(), got);
  const int status = ::pclose(p);
  o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return o;
}

}  // namespace

TEST_CASE("query verbs on the example words") {
  const auto sample_word = write("sample_word.txt", "cabacabcbacbcabcbaca");
  const auto periodic_word = write("periodic_word.txt", "caabaabaabaabaabaabac");
  const auto s1 = write("s1.txt", "IPM 13 16 5 12\n\n# comment\nPERIOD 1 1\nBLCP 13 16 5 12\n");
  const auto r1 = run("query " + sample_word.string() + " --script " + s1.string());
  CHECK(r1.code == 0);
  CHECK(r1.out == "PROG 5 0 1\nPROGS 1; 1 0 1\nLEN 4\n");

  const auto s2 = write("s2.txt", "TWOPER 2 7\nTWOPER 1 2\nIPM 2 7 5 16\nPERIOD 2 7\nCYC 2 4 5 7\nPS 2 7 2 7 3\n");
  const auto r2 = run("query " + periodic_word.string() + " --script " + s2.string());
  CHECK(r2.code == 0);
  CHECK(r2.out == "PERIODIC 3\nAPERIODIC\nPROG 5 3 3\nPROGS 1; 3 3 2\nPROG 0 0 1\nPROG 3 3 2\n");
}

TEST_CASE("long and compression verbs") {
  const auto t = write("ab.txt", "ababab");
  const auto s = write("s3.txt", "IPML 1 2 1 6\nGSC 3 6 1 2\nIPML 1 6 1 2\n");
  const auto r = run("query " + t.string() + " --script " + s.string());
  CHECK(r.code == 0);
  CHECK(r.out == "PROGS 1; 1 2 3\nCOPY 1 2 COPY 1 2\nNONE\n");
  const auto u = write("a.txt", "aaaaa");
  const auto s4 = write("s4.txt", "GSC 2 5 1 1\n");
  CHECK(run("query " + u.string() + " --script " + s4.string()).out == "COPY 1 1 COPY 3 3\n");
  const auto v = write("abc.txt", "abc");
  const auto s5 = write("s5.txt", "GSC 3 3 1 2\n");
  CHECK(run("query " + v.string() + " --script " + s5.string()).out == "LIT 99\n");
}

TEST_CASE("build is byte-identical and index files answer queries") {
  const auto t = write("build.txt", "abaababaabaababaababaabaababaabaab");
  const auto a = scratch() / "a.ipmx", b = scratch() / "b.ipmx", c = scratch() / "c.ipmx";
  CHECK(run("build " + t.string() + " --seed 7 --out " + a.string()).code == 0);
  CHECK(run("build " + t.string() + " --seed 7 --out " + b.string()).code == 0);
  CHECK(run("build " + t.string() + " --deterministic --out " + c.string()).code == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(slurp(a).substr(0, 4) == "IPMX");
  const auto s = write("s6.txt", "IPM 1 3 4 9\nTWOPER 1 5\n");
  const auto from_index = run("query " + a.string() + " --script " + s.string());
  const auto from_text = run("query " + t.string() + " --script " + s.string());
  CHECK(from_index.code == 0);
  CHECK(from_index.out == from_text.out);
  CHECK(run("query " + c.string() + " --script " + s.string()).out == from_text.out);
}

TEST_CASE("malformed scripts fail with a nonzero exit") {
  const auto t = write("e.txt", "abcabc");
  CHECK(run("query " + t.string() + " --script " + write("bad1.txt", "IPM 1 2 3\n").string()).code != 0);
  CHECK(run("query " + t.string() + " --script " + write("bad2.txt", "NOPE 1 2\n").string()).code != 0);
  CHECK(run("query " + t.string() + " --script " + write("bad3.txt", "IPM 1 2 x 4\n").string()).code != 0);
  CHECK(run("query " + t.string() + " --script " + write("bad4.txt", "IPM 1 9 1 2\n").string()).code != 0);
  const auto partial = run("query " + t.string() + " --script " + write("bad5.txt", "IPM 1 1 1 2\nIPM 1 1 1 6\n").string());
  CHECK(partial.code != 0);
  CHECK(partial.out == "PROG 1 0 1\n");
  const auto garbage = write("garbage.ipmx", std::string("IPMX\x07\0\0\0", 8));
  CHECK(run("query " + garbage.string() + " --script " + write("ok.txt", "IPM 1 1 1 1\n").string()).code != 0);
}

TEST_CASE("threads do not change the answers") {
  std::string text, script;
  for (int i = 0; i < 300; ++i) text += "abaab"[(i * 7 + i / 11) % 5];
  for (int i = 1; i + 20 <= 300; i += 3) {
    script += "IPM " + std::to_string(i) + " " + std::to_string(i + 4) + " " + std::to_string(i + 2) +
              " " + std::to_string(i + 11) + "\nPERIOD " + std::to_string(i) + " " + std::to_string(i + 19) + "\n";
  }
  const auto t = write("th.txt", text);
  const auto s = write("th_script.txt", script);
  const auto one = run("query " + t.string() + " --script " + s.string());
  const auto four = run("query " + t.string() + " --script " + s.string() + " --threads 4");
  CHECK(one.code == 0);
  CHECK(one.out == four.out);
  CHECK(std::count(one.out.begin(), one.out.end(), '\n') == std::count(script.begin(), script.end(), '\n'));
}

TEST_CASE("selftest and bench run") {
  const auto st = run("selftest --max-n 24 --texts 8 --seed 3");
  CHECK(st.code == 0);
  CHECK(st.out.find("FAIL") == std::string::npos);
  std::string text;
  for (int i = 0; i < 5000; ++i) text += static_cast<char>('a' + (i * i + i / 3) % 3);
  const auto t = write("bench.txt", text);
  const auto b = run("bench " + t.string() + " --sizes 1000,5000 --queries 200 --period-lengths 64");
  CHECK(b.code == 0);
  CHECK(b.out.find("size 1000 ") != std::string::npos);
  CHECK(b.out.find("size 5000 ") != std::string::npos);
  CHECK(b.out.find("family PERIOD xlen 64") != std::string::npos);
}
