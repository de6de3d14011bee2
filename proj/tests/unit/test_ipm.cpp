#include <doctest.h>

#include <random>

#include "ipm/errors.hpp"
#include "ipm/ipm.hpp"
#include "ipm/oracle.hpp"
#include "test_util.hpp"

using namespace ipm;

namespace {

const char* kSampleWord = "cabacabcbacbcabcbaca";
const char* kPeriodicWord = "caabaabaabaabaabaabac";

void check_all_pairs(const IpmIndex& idx) {
  const Text& t = idx.text();
  const Pos n = t.size();
  for (Pos xs = 1; xs <= n; ++xs) {
    for (Pos xe = xs; xe <= n; ++xe) {
      const Fragment x{xs, xe};
      for (Pos ys = 1; ys <= n; ++ys) {
        for (Pos ye = ys; ye <= std::min(n, ys + 2 * x.length() - 1); ++ye) {
          const Fragment y{ys, ye};
          const auto want = oracle::naive_ipm(t, x, y);
          REQUIRE(idx.query(x, y).elements() == want);
          REQUIRE(idx.query_indexed(x, y).elements() == want);
        }
      }
    }
  }
}

std::vector<Pos> expand(const std::vector<ArithProgression>& parts) {
  std::vector<Pos> out;
  for (const auto& ap : parts) {
    for (Pos v : ap.elements()) out.push_back(v);
  }
  return out;
}

std::string fibonacci(std::size_t n) {
  std::string a = "a", b = "ab";
  while (b.size() < n) {
    std::string c = b + a;
    a = std::move(b);
    b = std::move(c);
  }
  return b.substr(0, n);
}

}  // namespace

TEST_CASE("ipm query examples") {
  const auto a = IpmIndex::build(Text(kSampleWord), {.deterministic = true});
  CHECK(a.query({13, 16}, {5, 12}) == ArithProgression::make(5, 0, 1));
  CHECK(a.query({1, 3}, {1, 3}) == ArithProgression::make(1, 0, 1));
  const auto b = IpmIndex::build(Text(kPeriodicWord));
  CHECK(b.query({2, 7}, {5, 16}) == ArithProgression::make(5, 3, 3));
  CHECK_THROWS_AS(b.query({2, 3}, {1, 5}), ConstraintViolation);
  CHECK_THROWS_AS(b.query({2, 30}, {1, 5}), std::out_of_range);
  CHECK(b.query({1, 6}, {1, 5}).empty());

  const auto one = IpmIndex::build(Text("a"));
  CHECK(one.levels() == 0);
  CHECK(one.query({1, 1}, {1, 1}) == ArithProgression::make(1, 0, 1));
}

TEST_CASE("ipm long query examples") {
  const auto idx = IpmIndex::build(Text("abababab"));
  const auto parts = idx.query_long({1, 2}, {1, 8});
  CHECK(expand(parts) == std::vector<Pos>{1, 3, 5, 7});
  CHECK(parts.size() == 1);
  CHECK(idx.query_long({1, 8}, {1, 8}) == std::vector<ArithProgression>{ArithProgression::make(1, 0, 1)});
  CHECK(idx.query_long({1, 5}, {2, 4}).empty());
}

TEST_CASE("append_chained") {
  std::vector<ArithProgression> v;
  append_chained(v, ArithProgression::make(1, 0, 1));
  append_chained(v, ArithProgression::make(4, 0, 1));
  append_chained(v, ArithProgression::make(7, 3, 2));
  REQUIRE(v.size() == 1);
  CHECK(v[0] == ArithProgression::make(1, 3, 4));
  append_chained(v, ArithProgression::make(11, 0, 1));
  append_chained(v, ArithProgression{});
  CHECK(v.size() == 2);
}

TEST_CASE("ipm exhaustive on small texts") {
  std::mt19937_64 rng(5);
  for (int rep = 0; rep < 60; ++rep) {
    const std::size_t n = 1 + rng() % 24;
    const Text t = rep % 2 ? testutil::random_text(rng, n, 2) : testutil::periodic_text(rng, n, 2);
    check_all_pairs(IpmIndex::build(t, {.seed = rng()}));
  }
  check_all_pairs(IpmIndex::build(Text(kSampleWord), {.deterministic = true}));
  check_all_pairs(IpmIndex::build(Text(std::string(30, 'a'))));
  check_all_pairs(IpmIndex::build(Text(fibonacci(34))));
}

TEST_CASE("ipm random queries against the oracle") {
  std::mt19937_64 rng(17);
  for (std::size_t sigma : {2, 3, 26}) {
    for (int variant = 0; variant < 2; ++variant) {
      const Text t = variant ? testutil::periodic_text(rng, 1000, sigma) : testutil::random_text(rng, 1000, sigma);
      const auto idx = IpmIndex::build(t, {.seed = rng()});
      const Pos n = t.size();
      for (int q = 0; q < 4000; ++q) {
        const Pos xl = 1 + static_cast<Pos>(rng() % (q % 4 == 0 ? 300 : 20));
        const Pos xs = 1 + static_cast<Pos>(rng() % static_cast<std::uint64_t>(n - xl + 1));
        // y often around a known occurrence so that matches are common
        const Pos yl = 1 + static_cast<Pos>(rng() % static_cast<std::uint64_t>(2 * xl));
        Pos ys = 1 + static_cast<Pos>(rng() % static_cast<std::uint64_t>(n));
        if (q % 2 == 0) ys = std::max<Pos>(1, xs - static_cast<Pos>(rng() % static_cast<std::uint64_t>(yl)));
        const Fragment x{xs, xs + xl - 1};
        const Fragment y{ys, std::min(n, ys + yl - 1)};
        const auto want = oracle::naive_ipm(t, x, y);
        REQUIRE(idx.query(x, y).elements() == want);
        REQUIRE(idx.query_indexed(x, y).elements() == want);
      }
      for (int q = 0; q < 300; ++q) {
        const Fragment x = testutil::random_fragment(rng, std::min<Pos>(n, 40));
        const Fragment y = testutil::random_fragment(rng, n);
        REQUIRE(expand(idx.query_long(x, y)) == oracle::naive_ipm(t, x, y));
      }
    }
  }
}

TEST_CASE("ipm dispatch matches periodic basic factors") {
  std::mt19937_64 rng(23);
  for (int rep = 0; rep < 20; ++rep) {
    const Text t = testutil::periodic_text(rng, 200, 2);
    const auto idx = IpmIndex::build(t, {.seed = rng()});
    const auto& tables = idx.runs().tables();
    for (Pos xs = 1; xs <= t.size(); ++xs) {
      for (Pos xe = xs + 1; xe <= t.size(); ++xe) {
        const Fragment x{xs, xe};
        const int k = layer(x.length());
        bool periodic = false;
        for (Pos i = xs; i <= xs + (Pos{1} << k); ++i) periodic = periodic || tables.is_periodic(k, i);
        REQUIRE(idx.uses_periodic_path(x) == periodic);
      }
    }
  }
}

TEST_CASE("ipm serialization round trip") {
  std::mt19937_64 rng(31);
  for (int rep = 0; rep < 10; ++rep) {
    const std::size_t n = 1 + rng() % 3000;
    const Text t = rep % 2 ? testutil::periodic_text(rng, n, 2) : testutil::random_text(rng, n, 4);
    const auto idx = IpmIndex::build(t, {.seed = rng()});
    const auto bytes = idx.serialize();
    CHECK(static_cast<Pos>(bytes.size()) <= 64 * std::max<Pos>(t.size(), 16));
    const auto back = IpmIndex::deserialize(bytes);
    CHECK(back.serialize() == bytes);
    CHECK(back.stats() == idx.stats());
    CHECK(back.runs().runs() == idx.runs().runs());
    for (int q = 0; q < 500; ++q) {
      const Fragment x = testutil::random_fragment(rng, t.size());
      const Pos ys = 1 + static_cast<Pos>(rng() % static_cast<std::uint64_t>(t.size()));
      const Fragment y{ys, std::min(t.size(), ys + 2 * x.length() - 1)};
      REQUIRE(back.query_indexed(x, y) == idx.query_indexed(x, y));
    }
  }
}

TEST_CASE("ipm build is deterministic per seed") {
  std::mt19937_64 rng(37);
  const Text t = testutil::random_text(rng, 2000, 2);
  const auto a = IpmIndex::build(t, {.seed = 99}).serialize();
  const auto b = IpmIndex::build(t, {.seed = 99}).serialize();
  CHECK(a == b);
}

TEST_CASE("ipm deserialize rejects malformed input") {
  const auto bytes = IpmIndex::build(Text(kPeriodicWord)).serialize();
  std::vector<std::uint8_t> bad = bytes;
  bad[0] = 'J';
  CHECK_THROWS_AS(IpmIndex::deserialize(bad), FormatError);
  bad = bytes;
  bad[4] = 2;
  CHECK_THROWS_AS(IpmIndex::deserialize(bad), FormatError);
  for (std::size_t cut : {std::size_t{3}, std::size_t{9}, bytes.size() / 2, bytes.size() - 1}) {
    std::vector<std::uint8_t> part(bytes.begin(), bytes.begin() + static_cast<std::ptrdiff_t>(cut));
    CHECK_THROWS_AS(IpmIndex::deserialize(part), FormatError);
  }
  bad = bytes;
  bad.push_back(0);
  CHECK_THROWS_AS(IpmIndex::deserialize(bad), FormatError);
  // flipping single bytes must never crash; it either loads or throws FormatError
  std::mt19937_64 rng(41);
  for (int rep = 0; rep < 300; ++rep) {
    bad = bytes;
    bad[8 + rng() % (bad.size() - 8)] ^= static_cast<std::uint8_t>(1 + rng() % 255);
    try {
      (void)IpmIndex::deserialize(bad);
    } catch (const FormatError&) {
    }
  }
}
