#include "ipm/ipm_periodic.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace ipm {

ArithProgression query_periodic(const TextIndex& ix, const RunsIndex& runs, Fragment x, Fragment y,
                                int k) {
  const Pos xl = x.length();
  if (xl > y.length()) return {};
  // leftmost periodic basic fragment of x
  const Pos i = runs.tables().find_periodic_kbasic(k, x);
  if (i == kNone) throw std::logic_error("pattern has no periodic basic fragment at this level");
  // the run that extends it
  const Run* alpha = runs.run_of(basic_fragment(k, i));
  if (alpha == nullptr) throw std::logic_error("periodic basic fragment without a run");
  const Pos p = alpha->period;
  // compatible runs meeting y
  thread_local std::vector<std::uint32_t> ids;
  ids.clear();
  runs.kruns().locate(runs.runs(), k, p, y.start, y.end, ids);
  std::array<const Run*, 16> compatible{};
  std::size_t nc = 0;
  for (auto id : ids) {
    const Run& r = runs.runs()[id];
    if (runs_compatible(ix, *alpha, r)) {
      if (nc == compatible.size()) throw std::logic_error("too many compatible runs in window");
      compatible[nc++] = &r;
    }
  }
  std::sort(compatible.begin(), compatible.begin() + static_cast<std::ptrdiff_t>(nc),
            [](const Run* a, const Run* b) { return a->frag.start < b->frag.start; });

  if (!alpha->frag.contains(x)) {
    // the run boundary inside x pins each occurrence
    std::array<Pos, 32> cand{};
    std::size_t m = 0;
    for (std::size_t t = 0; t < nc; ++t) {
      const Run& r = *compatible[t];
      std::array<Pos, 2> s{};
      std::size_t ns = 0;
      if (alpha->frag.end < x.end) s[ns++] = r.frag.end - (alpha->frag.end - x.start);
      if (alpha->frag.start > x.start) s[ns++] = r.frag.start - (alpha->frag.start - x.start);
      for (std::size_t u = 0; u < ns; ++u) {
        const Pos st = s[u];
        if (st < y.start || st + xl - 1 > y.end) continue;
        if (fragments_equal(ix, x, Fragment{st, st + xl - 1})) cand[m++] = st;
      }
    }
    std::sort(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(m));
    m = static_cast<std::size_t>(std::unique(cand.begin(), cand.begin() + static_cast<std::ptrdiff_t>(m)) - cand.begin());
    return progression_from_sorted(std::span<const Pos>(cand.data(), m));
  }

  // x lies inside alpha, so occurrences follow the Lyndon root phase
  const LyndonRep xr = lyndon_rep_within(*alpha, x);
  std::array<ArithProgression, 16> parts{};
  std::size_t np = 0;
  for (std::size_t t = 0; t < nc; ++t) {
    const Run& r = *compatible[t];
    const Fragment u{std::max(y.start, r.frag.start), std::min(y.end, r.frag.end)};
    if (u.length() < xl) continue;
    const LyndonRep ur = lyndon_rep_within(r, u);
    const ArithProgression rel = lyndon_occurrences(xr, ur, p, xl, u.length());
    if (rel.empty()) continue;
    parts[np++] = ArithProgression::make(rel.first + u.start - 1, rel.diff, rel.count);
  }
  // one progression over all compatible runs
  return merge_progressions(std::span<const ArithProgression>(parts.data(), np), p);
}

}  // namespace ipm
