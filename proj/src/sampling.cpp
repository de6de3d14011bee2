#include "ipm/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ipm/errors.hpp"

namespace ipm {

std::vector<Pos> fill_gaps(std::span<const Pos> a, Pos delta, Fragment interval) {
  std::vector<Pos> out;
  out.reserve(a.size());
  Pos prev = interval.start - 1;
  auto gap = [&](Pos until) {
    if (until - prev - 1 > delta) {
      for (Pos j = prev + 1; j < until; ++j) out.push_back(j);
    }
  };
  for (Pos v : a) {
    gap(v);
    out.push_back(v);
    prev = v;
  }
  gap(interval.end + 1);
  return out;
}

StepFunction<SampleRef> slider(std::span<const Candidate> sorted, Pos d, Pos m) {
  StepFunction<SampleRef> step;
  const Pos last = m - d;
  if (last < 1) return step;
  step.last = last;
  const std::size_t n = sorted.size();
  auto enter = [&](std::size_t j) { return std::max<Pos>(1, sorted[j].pos - d); };
  // monotone queue of window minima, increasing in (id, pos)
  std::vector<Candidate> q;
  q.reserve(n);
  std::size_t head = 0, ie = 0, ix = 0;
  Pos t = 1;
  while (true) {
    for (; ie < n && enter(ie) <= t; ++ie) {
      const Candidate c = sorted[ie];
      while (q.size() > head && q.back().id > c.id) q.pop_back();
      q.push_back(c);
    }
    while (head < q.size() && q[head].pos < t) ++head;
    step.append(t, head < q.size() ? SampleRef{static_cast<std::uint32_t>(q[head].pos), q[head].id}
                                   : SampleRef{});
    while (ix < n && sorted[ix].pos < t) ++ix;
    Pos next = last + 1;
    if (ie < n) next = std::min(next, enter(ie));
    if (ix < n) next = std::min(next, sorted[ix].pos + 1);
    if (next > last) break;
    t = next;
  }
  return step;
}

CandidateSet build_candidates(const Text& t, const PeriodicTables& tables, std::mt19937_64* rng) {
  const Pos n = t.size();
  const int levels = sample_levels(n);
  CandidateSet out;
  out.levels.resize(static_cast<std::size_t>(levels));
  if (levels == 0) return out;
  DbfLevel lv = DbfLevel::first(t, rng);
  std::vector<char> mark;
  std::vector<Pos> block;
  for (int k = 0; k < levels; ++k) {
    if (k > 0) lv = DbfLevel::next(lv, rng);
    const Pos m = lv.count();
    const Pos ell = k == 0 ? m : std::min(m, (static_cast<Pos>(k) * m) >> (k - 1));
    const Pos nk = lv.size();
    mark.assign(static_cast<std::size_t>(nk) + 1, 0);
    for (Pos id = 1; id <= ell; ++id) {
      for (std::uint32_t pos : lv.occurrences(static_cast<std::uint32_t>(id))) {
        if (!tables.is_periodic(k, pos)) mark[pos] = 1;
      }
    }
    auto& ck = out.levels[static_cast<std::size_t>(k)];
    for (Fragment b : tables.level(k).nonperiodic) {
      block.clear();
      for (Pos j = b.start; j <= b.end; ++j) {
        if (mark[static_cast<std::size_t>(j)]) block.push_back(j);
      }
      for (Pos j : fill_gaps(block, Pos{1} << k, b)) ck.push_back({j, lv.id(j)});
    }
  }
  return out;
}

RetryResult retry_until_small(const std::function<CandidateSet(int)>& builder, Pos limit, int cap) {
  RetryResult r;
  for (int attempt = 0; attempt < cap; ++attempt) {
    CandidateSet c = builder(attempt);
    const Pos total = c.total();
    r.totals.push_back(total);
    r.attempts = attempt + 1;
    if (total <= limit) {
      r.candidates = std::move(c);
      return r;
    }
  }
  std::string seen;
  for (Pos v : r.totals) seen += (seen.empty() ? "" : ",") + std::to_string(v);
  throw AttemptCap("candidate total stayed above " + std::to_string(limit) + " for " +
                   std::to_string(cap) + " attempts (totals " + seen + ")");
}

std::uint64_t attempt_seed(std::uint64_t seed, int attempt) {
  // splitmix64 of the pair
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (static_cast<std::uint64_t>(attempt) + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

RetryResult sample_candidates(const Text& t, const PeriodicTables& tables, const BuildConfig& cfg) {
  const Pos limit = static_cast<Pos>(std::floor(cfg.threshold * static_cast<double>(t.size())));
  if (cfg.deterministic) {
    return retry_until_small([&](int) { return build_candidates(t, tables, nullptr); }, limit, 1);
  }
  return retry_until_small(
      [&](int attempt) {
        std::mt19937_64 rng(attempt_seed(cfg.seed, attempt));
        return build_candidates(t, tables, &rng);
      },
      limit, cfg.attempt_cap);
}

std::vector<StepFunction<SampleRef>> assemble_assignment(const CandidateSet& c,
                                                         const PeriodicTables& tables, Pos n) {
  std::vector<StepFunction<SampleRef>> out;
  for (std::size_t lk = 0; lk < c.levels.size(); ++lk) {
    const int k = static_cast<int>(lk);
    const Pos d = Pos{1} << k;
    const Pos nk = n - d + 1;
    const Pos domain = nk - d;  // n_{k+1}
    const auto g = slider(c.levels[lk], d, nk);
    StepFunction<SampleRef> f;
    f.last = domain;
    f.append(1, SampleRef{});
    std::size_t piece = 0;
    for (Fragment b : tables.level(k).nonperiodic) {
      if (b.length() <= d) continue;
      const Fragment def{b.start, b.end - d};
      while (piece + 1 < g.breakpoints.size() && g.breakpoints[piece + 1] <= def.start) ++piece;
      f.append(def.start, g.values[piece]);
      while (piece + 1 < g.breakpoints.size() && g.breakpoints[piece + 1] <= def.end) {
        ++piece;
        f.append(g.breakpoints[piece], g.values[piece]);
      }
      if (def.end < domain) f.append(def.end + 1, SampleRef{});
    }
    out.push_back(std::move(f));
  }
  return out;
}

LevelStructures build_level_structures(StepFunction<SampleRef> step, int k, Pos n) {
  const Pos d = k == 0 ? 1 : Pos{1} << (k - 1);
  std::vector<std::pair<std::uint64_t, Pos>> entries;
  for (const SampleRef& s : step.values) {
    if (s.defined()) entries.push_back({s.id, s.pos});
  }
  std::sort(entries.begin(), entries.end());
  entries.erase(std::unique(entries.begin(), entries.end()), entries.end());
  const Pos universe = n - (Pos{2} << k) + 1;
  LevelStructures out;
  out.locator = Locator(std::move(entries), d, k == 0 ? 1 : d + 1);
  out.eval = Evaluator<SampleRef>(std::move(step), universe);
  return out;
}

}  // namespace ipm
