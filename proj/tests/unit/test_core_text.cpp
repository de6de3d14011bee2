#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "ipm/core_text.hpp"
#include "ipm/errors.hpp"
#include "test_util.hpp"

using namespace ipm;

TEST_CASE("suffix array examples") {
  TextIndex b{Text("banana")};
  CHECK(b.suffix_array() == std::vector<Pos>{6, 4, 2, 1, 5, 3});
  TextIndex a{Text("a")};
  CHECK(a.suffix_array() == std::vector<Pos>{1});
  CHECK(a.lcp_array().empty());
  TextIndex aaa{Text("aaa")};
  CHECK(aaa.suffix_array() == std::vector<Pos>{3, 2, 1});
  CHECK(aaa.lcp_array() == std::vector<Pos>{1, 2});
  CHECK_THROWS_AS(TextIndex{Text("")}, std::invalid_argument);
}

TEST_CASE("suffix array matches brute force sort") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const Text t = testutil::random_text(rng, 1 + rng() % 300, 1 + rng() % 4);
    TextIndex ix(t);
    std::vector<Pos> ref(static_cast<std::size_t>(t.size()));
    for (Pos i = 0; i < t.size(); ++i) ref[static_cast<std::size_t>(i)] = i + 1;
    std::sort(ref.begin(), ref.end(), [&](Pos a, Pos b) {
      return t.view().substr(static_cast<std::size_t>(a - 1)) <
             t.view().substr(static_cast<std::size_t>(b - 1));
    });
    REQUIRE(ix.suffix_array() == ref);
    for (Pos r = 1; r <= t.size(); ++r) REQUIRE(ix.isa(ix.sa(r)) == r);
  }
}

TEST_CASE("lcp over fragment concatenations") {
  const Text sample_word("cabacabcbacbcabcbaca");
  TextIndex ix(sample_word);
  CHECK(lcp_fragments(ix, Fragment{1, 4}, Fragment{5, 8}) == 3);
  CHECK(lcp_fragments(ix, Fragment{3, 9}, Fragment{3, 9}) == 7);
  CHECK_FALSE(fragments_equal(ix, Fragment{1, 4}, Fragment{5, 8}));
  CHECK_FALSE(fragments_equal(ix, Fragment{1, 4}, Fragment{1, 5}));
  CHECK(fragments_equal(ix, Fragment{2, 2}, Fragment{4, 4}));

  TextIndex ab{Text("abab")};
  CHECK(lcp_fragments(ab, FragmentSeq{{1, 2}, {1, 2}}, Fragment{1, 4}) == 4);
  CHECK(fragments_equal(ab, FragmentSeq{{1, 2}, {1, 2}}, Fragment{1, 4}));
}

TEST_CASE("lcp_fragments equals character scan") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 30; ++trial) {
    const Pos n = 1 + static_cast<Pos>(rng() % 512);
    const Text t = testutil::random_text(rng, n, 1 + rng() % 3);
    TextIndex ix(t);
    for (int q = 0; q < 400; ++q) {
      FragmentSeq xs, ys;
      std::string wx, wy;
      for (int part = 0, parts = 1 + rng() % 3; part < parts; ++part) {
        const Fragment f = testutil::random_fragment(rng, n);
        xs.push(f);
        wx += testutil::word(t, f);
      }
      for (int part = 0, parts = 1 + rng() % 3; part < parts; ++part) {
        const Fragment f = testutil::random_fragment(rng, n);
        ys.push(f);
        wy += testutil::word(t, f);
      }
      std::size_t l = 0;
      while (l < wx.size() && l < wy.size() && wx[l] == wy[l]) ++l;
      REQUIRE(lcp_fragments(ix, xs, ys) == static_cast<Pos>(l));
    }
  }
}

TEST_CASE("longest prefix with period") {
  TextIndex a{Text("aabaabaa")};
  CHECK(longest_prefix_with_period(a, Fragment{1, 8}, 3) == 8);
  TextIndex b{Text("ab")};
  CHECK(longest_prefix_with_period(b, Fragment{1, 2}, 2) == 2);
  TextIndex c{Text("abcabd")};
  CHECK(longest_prefix_with_period(c, Fragment{1, 6}, 3) == 5);
  CHECK_THROWS_AS(longest_prefix_with_period(c, Fragment{1, 6}, 7), std::invalid_argument);

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const Pos n = 1 + static_cast<Pos>(rng() % 200);
    const Text t = testutil::random_text(rng, n, 2);
    TextIndex ix(t);
    for (int q = 0; q < 100; ++q) {
      const Fragment f = testutil::random_fragment(rng, n);
      const Pos p = 1 + static_cast<Pos>(rng() % static_cast<std::uint64_t>(f.length()));
      Pos l = p;
      while (l < f.length() && t[f.start + l] == t[f.start + l - p]) ++l;
      REQUIRE(longest_prefix_with_period(ix, f, p) == l);
    }
  }
}

TEST_CASE("merge progressions") {
  std::vector<ArithProgression> p1{{5, 3, 2}, {11, 0, 1}};
  CHECK(merge_progressions(p1, 3) == ArithProgression{5, 3, 3});
  CHECK(merge_progressions({}, 3) == ArithProgression{});
  std::vector<ArithProgression> p2{{2, 3, 2}, {8, 3, 2}};
  CHECK(merge_progressions(p2, 3) == ArithProgression{2, 3, 4});
  std::vector<ArithProgression> bad{{2, 3, 2}, {9, 3, 2}};
  CHECK_THROWS_AS(merge_progressions(bad, 3), ChainViolation);
  // two isolated elements form a progression with any gap
  std::vector<ArithProgression> two{{4, 0, 1}, {19, 0, 1}};
  CHECK(merge_progressions(two, 3) == ArithProgression{4, 15, 2});
}

TEST_CASE("merge progressions preserves the element set") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 2000; ++trial) {
    const Pos diff = 1 + static_cast<Pos>(rng() % 7);
    const Pos first = 1 + static_cast<Pos>(rng() % 50);
    const Pos count = static_cast<Pos>(rng() % 40);
    const auto whole = ArithProgression::make(first, diff, count);
    // cut into random consecutive pieces
    std::vector<ArithProgression> parts;
    Pos t = 0;
    while (t < count) {
      const Pos take = 1 + static_cast<Pos>(rng() % static_cast<std::uint64_t>(count - t));
      parts.push_back(ArithProgression::make(whole.at(t), diff, take));
      t += take;
    }
    const auto merged = merge_progressions(parts, diff);
    std::set<Pos> expect, got;
    for (const auto& p : parts)
      for (Pos v : p.elements()) expect.insert(v);
    for (Pos v : merged.elements()) got.insert(v);
    REQUIRE(expect == got);
    REQUIRE(merged == whole);
  }
}

TEST_CASE("progression helpers") {
  CHECK(ArithProgression::make(3, 5, 1) == ArithProgression{3, 0, 1});
  CHECK(ArithProgression::make(3, 5, 0) == ArithProgression{});
  CHECK(clip(ArithProgression{1, 3, 10}, 5, 20) == ArithProgression{7, 3, 5});
  CHECK(clip(ArithProgression{1, 3, 10}, 2, 3) == ArithProgression{});
  const std::vector<Pos> s{2, 6, 10};
  CHECK(progression_from_sorted(s) == ArithProgression{2, 4, 3});
  CHECK(union_progressions({0, 1, 3}, {1, 1, 3}) == ArithProgression{0, 1, 4});
  CHECK(union_progressions({0, 0, 1}, {2, 0, 1}) == ArithProgression{0, 2, 2});
  CHECK(union_progressions({4, 0, 1}, {0, 2, 2}) == ArithProgression{0, 2, 3});
  CHECK_THROWS_AS(union_progressions({0, 2, 2}, {1, 2, 2}), ChainViolation);
}

TEST_CASE("range minimum matches scan") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + rng() % 700;
    std::vector<std::uint32_t> v(n);
    for (auto& x : v) x = static_cast<std::uint32_t>(rng() % 20);
    RangeMinimum rmq(v);
    for (int q = 0; q < 2000; ++q) {
      std::size_t l = rng() % n, r = rng() % n;
      if (l > r) std::swap(l, r);
      REQUIRE(rmq.min(l, r) == *std::min_element(v.begin() + static_cast<std::ptrdiff_t>(l),
                                                  v.begin() + static_cast<std::ptrdiff_t>(r) + 1));
    }
  }
}
