#include "ipm/selftest.hpp"

#include <functional>
#include <random>

#include "ipm/compression.hpp"
#include "ipm/corpus.hpp"
#include "ipm/internal_queries.hpp"
#include "ipm/ipm.hpp"
#include "ipm/oracle.hpp"
#include "ipm/sampling.hpp"

namespace ipm {
namespace {

class Checker {
 public:
  explicit Checker(std::string name) { r_.name = std::move(name); }
  void expect(bool ok, const std::function<std::string()>& what) {
    ++r_.checks;
    if (!ok && r_.pass) {
      r_.pass = false;
      r_.detail = what();
    }
  }
  bool failed() const { return !r_.pass; }
  SuiteResult result() const { return r_; }

 private:
  SuiteResult r_;
};

std::string show(Fragment f) { return "[" + std::to_string(f.start) + "," + std::to_string(f.end) + "]"; }

std::string show_text(const Text& t) {
  std::string s(t.view().substr(0, 80));
  return t.size() > 80 ? s + "..." : s;
}

using Pairs = std::vector<std::pair<Pos, Pos>>;

Pairs pairs_of(const StepFunction<SampleRef>& s) {
  Pairs out;
  for (std::size_t i = 0; i < s.size(); ++i) out.push_back({s.breakpoints[i], s.values[i].pos});
  return out;
}

std::vector<Text> corpus_texts(const SelftestOptions& opt, std::mt19937_64& rng) {
  std::vector<Text> out;
  const int sigmas[] = {2, 3, 26};
  for (int i = 0; i < opt.texts; ++i) {
    const Pos n = 1 + static_cast<Pos>(rng() % static_cast<std::uint64_t>(opt.max_n));
    if (i % 4 == 3) {
      out.push_back(corpus::periodic_text(rng, n, 2));
    } else {
      out.push_back(corpus::random_text(rng, n, sigmas[i % 3]));
    }
  }
  out.push_back(corpus::unary(opt.max_n));
  out.push_back(corpus::alternating(opt.max_n));
  out.push_back(corpus::fibonacci(opt.max_n));
  out.push_back(corpus::thue_morse(opt.max_n));
  return out;
}

Fragment random_fragment(std::mt19937_64& rng, Pos n) {
  Pos a = 1 + static_cast<Pos>(rng() % static_cast<std::uint64_t>(n));
  Pos b = 1 + static_cast<Pos>(rng() % static_cast<std::uint64_t>(n));
  if (a > b) std::swap(a, b);
  return {a, b};
}

SuiteResult reference_instances() {
  Checker c("reference_instances");
  const auto idx = IpmIndex::build(Text("cabacabcbacbcabcbaca"), {.deterministic = true});
  const Pairs expect[] = {
      {{1, 2}, {3, 4}, {5, 6}, {7, 7}, {8, 9}, {9, 10}, {11, 12}, {13, 14}, {15, 15}, {16, 17}, {17, 18}, {19, 20}},
      {{1, 2}, {3, 4}, {4, 6}, {7, 9}, {8, 10}, {11, 12}, {12, 14}, {15, 17}, {16, 18}},
      {{1, 2}, {3, 6}, {7, 10}, {10, 14}},
      {{1, 2}, {3, 6}},
  };
  c.expect(idx.levels() == 4, [&] { return "expected 4 sample levels, got " + std::to_string(idx.levels()); });
  for (int k = 0; k < std::min(4, idx.levels()); ++k) {
    c.expect(pairs_of(idx.level(k).eval.step()) == expect[k],
             [&] { return "sample_" + std::to_string(k) + " differs from the printed list"; });
  }
  const std::uint32_t pi[] = {0, 3, 2, 1, 4};
  const std::uint32_t a[] = {4, 3, 1, 2, 4, 1, 2, 4, 1, 2, 3, 4, 2};
  std::vector<Candidate> cand;
  for (std::size_t j = 0; j < std::size(a); ++j) cand.push_back({static_cast<Pos>(j + 1), pi[a[j]]});
  c.expect(pairs_of(slider(cand, 4, 13)) == Pairs{{1, 2}, {3, 4}, {5, 7}, {7, 11}},
           [] { return "slider instance differs"; });
  const std::vector<Pos> gaps{7, 9, 13, 20, 21, 26, 32, 34};
  const auto filled = fill_gaps(gaps, 4, {1, 34});
  c.expect(filled.size() == gaps.size() + 17 && filled == oracle::naive_fillgaps(gaps, 4, 1, 34),
           [] { return "fill-gaps instance differs"; });
  return c.result();
}

SuiteResult ipm_oracle(const std::vector<Text>& texts, std::mt19937_64& rng) {
  Checker c("ipm_oracle");
  for (const Text& t : texts) {
    const auto idx = IpmIndex::build(t, {.seed = rng()});
    const Pos n = t.size();
    auto one = [&](Fragment x, Fragment y) {
      const auto want = oracle::naive_ipm(t, x, y);
      c.expect(idx.query(x, y).elements() == want,
               [&] { return "IPM " + show(x) + " " + show(y) + " on " + show_text(t); });
      c.expect(idx.query_indexed(x, y).elements() == want,
               [&] { return "indexed IPM " + show(x) + " " + show(y) + " on " + show_text(t); });
    };
    if (n <= 20) {
      for (Pos xs = 1; xs <= n; ++xs)
        for (Pos xe = xs; xe <= n; ++xe)
          for (Pos ys = 1; ys <= n; ++ys)
            for (Pos ye = ys; ye <= std::min(n, ys + 2 * (xe - xs + 1) - 1); ++ye) one({xs, xe}, {ys, ye});
    } else {
      for (int q = 0; q < 3000; ++q) {
        const Fragment x = random_fragment(rng, n);
        const Pos yl = 1 + static_cast<Pos>(rng() % static_cast<std::uint64_t>(std::min(n, 2 * x.length())));
        const Pos ys = q % 2 ? std::max<Pos>(1, std::min(x.start - static_cast<Pos>(rng() % static_cast<std::uint64_t>(yl)), n - yl + 1))
                             : 1 + static_cast<Pos>(rng() % static_cast<std::uint64_t>(n - yl + 1));
        one(x, {ys, ys + yl - 1});
      }
    }
    for (int q = 0; q < 100; ++q) {
      const Fragment x = random_fragment(rng, n), y = random_fragment(rng, n);
      std::vector<Pos> got;
      for (const auto& ap : idx.query_long(x, y)) {
        for (Pos v : ap.elements()) got.push_back(v);
      }
      c.expect(got == oracle::naive_ipm(t, x, y),
               [&] { return "IPML " + show(x) + " " + show(y) + " on " + show_text(t); });
    }
    if (c.failed()) break;
  }
  return c.result();
}

SuiteResult applications(const std::vector<Text>& texts, std::mt19937_64& rng) {
  Checker c("applications");
  for (const Text& t : texts) {
    const auto idx = IpmIndex::build(t, {.seed = rng()});
    const RangeSuccessorIndex rs(idx.text_index());
    const Pos n = t.size();
    for (int q = 0; q < 400; ++q) {
      const Fragment x = random_fragment(rng, n), y = random_fragment(rng, n);
      const auto where = [&](const char* what) {
        return [&, what] { return std::string(what) + " " + show(x) + " " + show(y) + " on " + show_text(t); };
      };
      const Pos d = 1 + static_cast<Pos>(rng() % static_cast<std::uint64_t>(x.length()));
      c.expect(prefix_suffix(idx, x, y, d).elements() == oracle::naive_prefix_suffix(t, x, y, d), where("PS"));
      const auto periods = oracle::naive_periods(t, x);
      c.expect(period_query(idx, x).elements() == periods, where("PERIOD"));
      const TwoPeriod tp = two_period_query(idx.runs(), x);
      c.expect(tp.periodic == (2 * periods.front() <= x.length()) && (!tp.periodic || tp.period == periods.front()),
               where("TWOPER"));
      const Pos ys = std::min(y.start, n - x.length() + 1);
      const Fragment y2{ys, ys + x.length() - 1};
      c.expect(cyclic_equivalence(idx, x, y2).elements() == oracle::naive_rotations(t, x, y2), where("CYC"));
      c.expect(occurs_in(idx.text_index(), rs, x, y) == oracle::naive_occurs(t, x, y), where("OCC"));
      c.expect(ilcp(idx.text_index(), rs, y.start, y.end, x).length == oracle::naive_ilcp(t, y.start, y.end, x),
               where("ILCP"));
      c.expect(blcp(idx, rs, x, y).length == oracle::naive_blcp(t, x, y), where("BLCP"));
      if (q % 8 == 0) {
        const auto phrases = gsc(idx, rs, x, y);
        std::vector<oracle::NaivePhrase> mine;
        for (const auto& p : phrases) mine.push_back({p.literal, p.symbol, p.ref, p.len});
        c.expect(mine == oracle::naive_lz(t, x, y), where("GSC"));
        const auto back = lz_decode(t, y, phrases);
        c.expect(std::equal(back.begin(), back.end(), t.bytes().begin() + (x.start - 1)) &&
                     static_cast<Pos>(back.size()) == x.length(),
                 where("GSC decode"));
      }
    }
    if (c.failed()) break;
  }
  return c.result();
}

SuiteResult persistence(const std::vector<Text>& texts, std::uint64_t seed) {
  Checker c("serialization");
  for (const Text& t : texts) {
    const auto a = IpmIndex::build(t, {.seed = seed});
    const auto bytes = a.serialize();
    c.expect(IpmIndex::build(t, {.seed = seed}).serialize() == bytes,
             [&] { return "rebuild with seed " + std::to_string(seed) + " differs on " + show_text(t); });
    c.expect(IpmIndex::deserialize(bytes).serialize() == bytes, [&] { return "round trip differs on " + show_text(t); });
  }
  return c.result();
}

}  // namespace

std::vector<SuiteResult> run_selftest(const SelftestOptions& opt) {
  std::mt19937_64 rng(opt.seed);
  const auto texts = corpus_texts(opt, rng);
  std::vector<SuiteResult> out;
  out.push_back(reference_instances());
  out.push_back(ipm_oracle(texts, rng));
  out.push_back(applications(texts, rng));
  out.push_back(persistence(texts, opt.seed));
  return out;
}

}  // namespace ipm
