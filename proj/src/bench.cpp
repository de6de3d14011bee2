#include "ipm/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <random>

#include "ipm/internal_queries.hpp"

namespace ipm {
namespace {

using Clock = std::chrono::steady_clock;

struct Pair {
  Fragment x, y;
};

volatile Pos g_sink = 0;

template <typename F>
LatencyStats measure(std::string family, Pos x_len, const std::vector<Pair>& qs, F&& run) {
  LatencyStats s;
  s.family = std::move(family);
  s.x_len = x_len;
  s.queries = qs.size();
  if (qs.empty()) return s;
  // warm-up and per-query samples for the percentiles
  std::vector<double> lat(qs.size());
  Pos acc = 0;
  for (std::size_t i = 0; i < qs.size(); ++i) {
    const auto t0 = Clock::now();
    acc += run(qs[i]);
    lat[i] = std::chrono::duration<double, std::nano>(Clock::now() - t0).count();
  }
  // the mean comes from one batch without per-query clock reads
  const auto t0 = Clock::now();
  for (const Pair& q : qs) acc += run(q);
  s.mean_ns = std::chrono::duration<double, std::nano>(Clock::now() - t0).count() /
              static_cast<double>(qs.size());
  g_sink = g_sink + acc;
  std::sort(lat.begin(), lat.end());
  auto pct = [&](double p) { return lat[std::min(lat.size() - 1, static_cast<std::size_t>(p * static_cast<double>(lat.size())))]; };
  s.p50_ns = pct(0.5);
  s.p90_ns = pct(0.9);
  s.p99_ns = pct(0.99);
  return s;
}

Pos uniform(std::mt19937_64& rng, Pos lo, Pos hi) {
  return std::uniform_int_distribution<Pos>(lo, hi)(rng);
}

std::vector<Pair> ipm_queries(Pos n, std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Pair> qs;
  qs.reserve(count);
  const Pos cap = std::max<Pos>(1, n / 2);
  for (std::size_t i = 0; i < count; ++i) {
    const int e = static_cast<int>(uniform(rng, 1, 10));
    const Pos xl = std::min(cap, (Pos{1} << e) + uniform(rng, 0, (Pos{1} << e) - 1));
    const Pos xs = uniform(rng, 1, n - xl + 1);
    const Pos yl = std::min(n, uniform(rng, xl, 2 * xl));
    Pos ys = i % 2 == 0 ? xs - uniform(rng, 0, yl - xl) : uniform(rng, 1, n - yl + 1);
    ys = std::clamp<Pos>(ys, 1, n - yl + 1);
    qs.push_back({{xs, xs + xl - 1}, {ys, ys + yl - 1}});
  }
  return qs;
}

}  // namespace

LatencyStats bench_ipm(const IpmIndex& idx, std::size_t queries, std::uint64_t seed) {
  const auto qs = ipm_queries(idx.size(), queries, seed);
  return measure("IPM", 0, qs, [&](const Pair& q) { return idx.query(q.x, q.y).count; });
}

LatencyStats bench_period(const IpmIndex& idx, Pos x_len, std::size_t queries, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Pair> qs;
  const Pos n = idx.size();
  if (x_len <= n) {
    for (std::size_t i = 0; i < queries; ++i) {
      const Pos xs = uniform(rng, 1, n - x_len + 1);
      qs.push_back({{xs, xs + x_len - 1}, {}});
    }
  }
  return measure("PERIOD", x_len, qs, [&](const Pair& q) {
    return static_cast<Pos>(period_query(idx, q.x).progressions.size());
  });
}

BenchPoint bench_text(const Text& t, const BenchOptions& opt) {
  BenchPoint p;
  p.n = t.size();
  const auto t0 = Clock::now();
  const IpmIndex idx = IpmIndex::build(t, {.seed = opt.seed});
  p.build_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  p.serialized_bytes = idx.serialize().size();
  p.memory_bytes = idx.memory_bytes();
  p.families.push_back(bench_ipm(idx, opt.queries, opt.seed + 1));
  if (opt.applications) {
    const auto qs = ipm_queries(idx.size(), opt.queries, opt.seed + 2);
    p.families.push_back(measure("PS", 0, qs, [&](const Pair& q) {
      return prefix_suffix(idx, q.x, q.y, std::max<Pos>(1, q.x.length() / 2)).count;
    }));
    p.families.push_back(measure("TWOPER", 0, qs, [&](const Pair& q) {
      return two_period_query(idx.runs(), q.x).period;
    }));
    p.families.push_back(measure("CYC", 0, qs, [&](const Pair& q) {
      const Fragment y{q.y.start, q.y.start + q.x.length() - 1};
      return cyclic_equivalence(idx, q.x, y).count;
    }));
  }
  for (Pos len : opt.period_lengths) p.families.push_back(bench_period(idx, len, opt.queries, opt.seed + 3));
  return p;
}

void print_bench(const BenchPoint& p, std::ostream& out) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "size %lld build_ms %.1f index_bytes %zu index_words %zu memory_bytes %zu\n",
                static_cast<long long>(p.n), p.build_ms, p.serialized_bytes, (p.serialized_bytes + 7) / 8,
                p.memory_bytes);
  out << buf;
  for (const auto& f : p.families) {
    std::snprintf(buf, sizeof buf,
                  "family %s xlen %lld queries %zu mean_ns %.1f p50_ns %.1f p90_ns %.1f p99_ns %.1f\n",
                  f.family.c_str(), static_cast<long long>(f.x_len), f.queries, f.mean_ns, f.p50_ns,
                  f.p90_ns, f.p99_ns);
    out << buf;
  }
}

}  // namespace ipm
