#include <doctest.h>

#include <random>

#include "ipm/ipm_periodic.hpp"
#include "ipm/oracle.hpp"
#include "test_util.hpp"

using namespace ipm;

namespace {

void check_pair(const Text& t, const TextIndex& ix, const RunsIndex& runs, Fragment x, Fragment y) {
  const int k = testutil::layer(x.length());
  const auto got = query_periodic(ix, runs, x, y, k);
  REQUIRE(got.elements() == oracle::naive_ipm(t, x, y));
  if (got.count >= 3) REQUIRE(got.diff == oracle::naive_shortest_period(t, x));
}

bool has_periodic(const RunsIndex& runs, Fragment x) {
  return x.length() >= 2 && runs.tables().find_periodic_kbasic(testutil::layer(x.length()), x) != kNone;
}

// Every (x, y) pair with |y| <= 2|x| whose x has a periodic basic fragment
// at its layer.
long check_all_pairs(const Text& t) {
  TextIndex ix(t);
  RunsIndex runs(ix);
  const Pos n = t.size();
  long checked = 0;
  for (Pos xs = 1; xs <= n; ++xs) {
    for (Pos xe = xs + 1; xe <= n; ++xe) {
      const Fragment x{xs, xe};
      if (!has_periodic(runs, x)) continue;
      for (Pos ys = 1; ys <= n; ++ys) {
        for (Pos ye = ys; ye <= std::min(n, ys + 2 * x.length() - 1); ++ye) {
          check_pair(t, ix, runs, x, {ys, ye});
          ++checked;
        }
      }
    }
  }
  return checked;
}

long check_random_pairs(const Text& t, std::mt19937_64& rng, long queries) {
  TextIndex ix(t);
  RunsIndex runs(ix);
  const Pos n = t.size();
  long checked = 0;
  while (checked < queries) {
    const Fragment x = testutil::random_fragment(rng, n);
    if (!has_periodic(runs, x)) continue;
    const Pos ys = 1 + static_cast<Pos>(rng() % static_cast<std::uint64_t>(n));
    const Pos ye = std::min(n, ys + static_cast<Pos>(rng() % static_cast<std::uint64_t>(2 * x.length())));
    check_pair(t, ix, runs, x, {ys, ye});
    ++checked;
  }
  return checked;
}

}  // namespace

TEST_CASE("periodic query examples") {
  Text t("caabaabaabaabaabaabac");
  TextIndex ix(t);
  RunsIndex runs(ix);
  CHECK(query_periodic(ix, runs, {2, 7}, {5, 16}, 1) == ArithProgression{5, 3, 3});
  CHECK(query_periodic(ix, runs, {2, 7}, {13, 20}, 1) == ArithProgression{14, 0, 1});

  Text u("aabaaXaabaa");
  TextIndex iu(u);
  RunsIndex ru(iu);
  // "aabaa" contains the periodic "aa" at level 1 only
  CHECK(query_periodic(iu, ru, {1, 5}, {5, 11}, 1) == ArithProgression{7, 0, 1});
  CHECK_THROWS_AS(query_periodic(ix, runs, {1, 4}, {1, 4}, 2), std::logic_error);
}

TEST_CASE("periodic query equals naive matching") {
  std::mt19937_64 rng(29);
  long total = 0;
  for (int trial = 0; trial < 60; ++trial) {
    total += check_all_pairs(testutil::periodic_text(rng, 8 + rng() % 33, 2));
  }
  for (int trial = 0; trial < 6; ++trial) {
    total += check_random_pairs(testutil::periodic_text(rng, 1000, 2), rng, 20000);
  }
  total += check_all_pairs(Text(std::string(40, 'a')));
  CHECK(total > 10000);
}
