#include <doctest.h>

#include <random>

#include "ipm/internal_queries.hpp"
#include "ipm/oracle.hpp"
#include "test_util.hpp"

using namespace ipm;

namespace {

IpmIndex index_of(const std::string& s) { return IpmIndex::build(Text(s)); }

void check_fragment_queries(const IpmIndex& idx, Fragment x) {
  const Text& t = idx.text();
  const auto periods = oracle::naive_periods(t, x);
  const auto got = period_query(idx, x);
  REQUIRE(got.elements() == periods);
  REQUIRE(got.progressions.size() <= static_cast<std::size_t>(floor_log2(x.length() + 1) + 1));
  const TwoPeriod tp = two_period_query(idx.runs(), x);
  REQUIRE(tp.periodic == (2 * periods.front() <= x.length()));
  if (tp.periodic) REQUIRE(tp.period == periods.front());
  const bool power = std::any_of(periods.begin(), periods.end() - 1,
                                 [&](Pos p) { return x.length() % p == 0; });
  REQUIRE(is_primitive(idx.runs(), x) == !power);
}

}  // namespace

TEST_CASE("prefix_suffix examples") {
  const auto a = index_of("abaababa");
  CHECK(prefix_suffix(a, {1, 8}, {1, 8}, 2) == ArithProgression::make(3, 0, 1));
  CHECK(prefix_suffix(a, {1, 8}, {1, 8}, 9).empty());
  CHECK_THROWS_AS(prefix_suffix(a, {1, 8}, {1, 8}, 0), std::invalid_argument);
  const auto b = index_of("aaaaaa");
  CHECK(prefix_suffix(b, {1, 6}, {1, 6}, 2) == ArithProgression::make(2, 1, 3));
}

TEST_CASE("period and two-period examples") {
  const auto a = index_of("abaababa");
  CHECK(period_query(a, {1, 8}).elements() == std::vector<Pos>{5, 7, 8});
  CHECK(period_query(a, {1, 1}).progressions == std::vector<ArithProgression>{ArithProgression::single(1)});
  const auto u = index_of("aaaa");
  CHECK(period_query(u, {1, 4}).progressions == std::vector<ArithProgression>{ArithProgression::make(1, 1, 4)});
  const auto f2 = index_of("caabaabaabaabaabaabac");
  CHECK(two_period_query(f2.runs(), {2, 7}) == TwoPeriod{true, 3});
  const auto ab = index_of("abab");
  CHECK(two_period_query(ab.runs(), {1, 2}) == TwoPeriod{});
  CHECK(two_period_query(ab.runs(), {1, 4}) == TwoPeriod{true, 2});
  CHECK(!is_primitive(ab.runs(), {1, 4}));
  CHECK(is_primitive(ab.runs(), {1, 3}));
}

TEST_CASE("cyclic equivalence examples") {
  const auto a = index_of("abaabaabab");
  CHECK(cyclic_equivalence(a, {1, 5}, {6, 10}) == ArithProgression::single(3));
  const auto b = index_of("aaaaaa");
  CHECK(cyclic_equivalence(b, {1, 3}, {4, 6}) == ArithProgression::make(0, 1, 3));
  const auto c = index_of("abba");
  CHECK(cyclic_equivalence(c, {1, 2}, {2, 3}).empty());
  CHECK(cyclic_equivalence(c, {1, 2}, {3, 4}) == ArithProgression::single(1));
  CHECK(cyclic_equivalence(c, {1, 2}, {1, 3}).empty());
}

TEST_CASE("internal queries exhaustive on small texts") {
  std::mt19937_64 rng(71);
  for (int rep = 0; rep < 40; ++rep) {
    const std::size_t n = 1 + rng() % 18;
    const Text t = rep % 2 ? testutil::random_text(rng, n, 2) : testutil::periodic_text(rng, n, 2);
    const auto idx = IpmIndex::build(t, {.seed = rng()});
    const Pos len = t.size();
    for (Pos xs = 1; xs <= len; ++xs) {
      for (Pos xe = xs; xe <= len; ++xe) {
        const Fragment x{xs, xe};
        check_fragment_queries(idx, x);
        for (Pos ys = 1; ys <= len; ++ys) {
          for (Pos ye = ys; ye <= len; ++ye) {
            const Fragment y{ys, ye};
            for (Pos d = 1; d <= std::min(x.length(), y.length()); ++d) {
              REQUIRE(prefix_suffix(idx, x, y, d).elements() == oracle::naive_prefix_suffix(t, x, y, d));
            }
            if (y.length() == x.length()) {
              REQUIRE(cyclic_equivalence(idx, x, y).elements() == oracle::naive_rotations(t, x, y));
            }
          }
        }
      }
    }
  }
}

TEST_CASE("internal queries on random larger texts") {
  std::mt19937_64 rng(73);
  for (std::size_t sigma : {2, 3, 26}) {
    const Text t = sigma == 26 ? testutil::random_text(rng, 800, sigma) : testutil::periodic_text(rng, 800, sigma);
    const auto idx = IpmIndex::build(t, {.seed = rng()});
    const Pos n = t.size();
    for (int q = 0; q < 2000; ++q) {
      const Fragment x = testutil::random_fragment(rng, n);
      check_fragment_queries(idx, x);
      const Pos d = 1 + static_cast<Pos>(rng() % static_cast<std::uint64_t>(x.length()));
      const Fragment y = testutil::random_fragment(rng, n);
      REQUIRE(prefix_suffix(idx, x, y, d).elements() == oracle::naive_prefix_suffix(t, x, y, d));
      // rotations of equal length, biased towards actual rotations
      const Pos m = x.length();
      Pos ys = 1 + static_cast<Pos>(rng() % static_cast<std::uint64_t>(n - m + 1));
      if (q % 2 == 0) {
        const Pos shifted = x.start + static_cast<Pos>(rng() % 7) - 3;
        if (shifted >= 1 && shifted + m - 1 <= n) ys = shifted;
      }
      const Fragment y2{ys, ys + m - 1};
      REQUIRE(cyclic_equivalence(idx, x, y2).elements() == oracle::naive_rotations(t, x, y2));
    }
  }
}
