#include "ipm/internal_queries.hpp"

#include <limits>
#include <stdexcept>

namespace ipm {
namespace {

constexpr Pos kInf = std::numeric_limits<Pos>::max() / 4;

// Lengths y.end - s + 1 for the starts s in `starts`, ascending.
ArithProgression starts_to_lengths(const ArithProgression& starts, Pos y_end) {
  if (starts.empty()) return {};
  return ArithProgression::make(y_end - starts.last() + 1, starts.diff, starts.count);
}

// y rotated left by r, i.e. the length-|y| window of yy at offset r.
FragmentSeq rotated(Fragment y, Pos r) {
  FragmentSeq z;
  z.push({y.start + r, y.end});
  z.push({y.start, y.start + r - 1});
  return z;
}

// Offsets r in [0, |y| - ceil(|y|/2)] with x == (yy)[r+1 .. r+|x|].
ArithProgression offsets_in_square(const IpmIndex& idx, Fragment x, Fragment y) {
  const TextIndex& ix = idx.text_index();
  const Pos d = x.length();
  const Pos h = (d + 1) / 2;
  const ArithProgression hits = idx.query({x.start, x.start + h - 1}, y);
  if (hits.count <= 2) {
    std::array<Pos, 2> keep{};
    std::size_t m = 0;
    for (Pos s : hits.elements()) {
      if (fragments_equal(ix, x, rotated(y, s - y.start))) keep[m++] = s - y.start;
    }
    return progression_from_sorted(std::span<const Pos>(keep.data(), m));
  }
  // the prefix has shortest period q; both sides continue with period q
  // as far as their periodic extents reach
  const Pos q = hits.diff;
  const Pos r1 = hits.first - y.start;
  const FragmentSeq square{y, y};
  const Pos ext = longest_prefix_with_period(ix, square.drop_prefix(r1), q);
  const Pos dx = longest_prefix_with_period(ix, x, q);
  const ArithProgression offs = ArithProgression::make(r1, q, hits.count);
  if (dx >= d) return clip(offs, 0, r1 + ext - d);
  const Pos r = r1 + ext - dx;
  if (offs.contains(r) && fragments_equal(ix, x, rotated(y, r))) return ArithProgression::single(r);
  return {};
}

}  // namespace

std::vector<Pos> PeriodSet::elements() const {
  std::vector<Pos> out;
  for (const auto& ap : progressions) {
    for (Pos v : ap.elements()) out.push_back(v);
  }
  return out;
}

ArithProgression prefix_suffix(const IpmIndex& idx, Fragment x, Fragment y, Pos d) {
  if (d < 1) throw std::invalid_argument("prefix_suffix needs d >= 1");
  const TextIndex& ix = idx.text_index();
  check_fragment(x, ix.size());
  check_fragment(y, ix.size());
  if (x.length() < d || y.length() < d) return {};
  const Pos win = std::min(2 * d, y.length());
  const ArithProgression hits = idx.query({x.start, x.start + d - 1}, {y.end - win + 1, y.end});
  if (hits.count <= 2) {
    std::array<Pos, 2> keep{};
    std::size_t m = 0;
    for (Pos s : hits.elements()) {
      const Pos len = y.end - s + 1;
      if (len <= x.length() && lcp_fragments(ix, x, Fragment{s, y.end}) >= len) keep[m++] = s;
    }
    return starts_to_lengths(progression_from_sorted(std::span<const Pos>(keep.data(), m)), y.end);
  }
  const Pos q = hits.diff;
  const Pos s1 = hits.first;
  const Pos dx = longest_prefix_with_period(ix, x, q);
  const Pos ey = longest_prefix_with_period(ix, Fragment{s1, y.end}, q);
  if (s1 + ey - 1 == y.end) {
    // y stays q-periodic to its end: a start fits iff x stays periodic as long
    return starts_to_lengths(clip(hits, y.end - dx + 1, kInf), y.end);
  }
  const Pos s = s1 + ey - dx;
  const Pos len = y.end - s + 1;
  if (hits.contains(s) && len <= x.length() && lcp_fragments(ix, x, Fragment{s, y.end}) >= len) {
    return ArithProgression::single(len);
  }
  return {};
}

PeriodSet period_query(const IpmIndex& idx, Fragment x) {
  check_fragment(x, idx.size());
  const Pos m = x.length();
  // borders in windows [2^k - 1, 2^{k+1} - 2], collected from the top so
  // that the periods m - b come out ascending
  std::vector<ArithProgression> borders;
  for (int k = 1; (Pos{1} << k) - 1 <= m - 1; ++k) {
    const Pos d = (Pos{1} << k) - 1;
    borders.push_back(clip(prefix_suffix(idx, x, x, d), d, std::min(2 * d, m - 1)));
  }
  PeriodSet out;
  for (auto it = borders.rbegin(); it != borders.rend(); ++it) {
    if (it->empty()) continue;
    append_chained(out.progressions, ArithProgression::make(m - it->last(), it->diff, it->count));
  }
  append_chained(out.progressions, ArithProgression::single(m));
  return out;
}

TwoPeriod two_period_query(const RunsIndex& runs, Fragment x) {
  const Run* r = runs.run_of(x);
  if (r == nullptr) return {};
  return {true, r->period};
}

bool is_primitive(const RunsIndex& runs, Fragment x) {
  const TwoPeriod tp = two_period_query(runs, x);
  return !tp.periodic || x.length() % tp.period != 0;
}

ArithProgression cyclic_equivalence(const IpmIndex& idx, Fragment x, Fragment y) {
  check_fragment(x, idx.size());
  check_fragment(y, idx.size());
  const Pos d = x.length();
  if (y.length() != d) return {};
  // small shifts: x inside yy; large shifts: y inside xx, r <-> d - r
  Pos any = -1;
  const ArithProgression fwd = offsets_in_square(idx, x, y);
  if (!fwd.empty()) {
    any = fwd.first;
  } else {
    const ArithProgression back = offsets_in_square(idx, y, x);
    if (!back.empty()) any = (d - back.first) % d;
  }
  if (any < 0) return {};
  // the shift set is a coset of the primitive root length
  const TwoPeriod tp = two_period_query(idx.runs(), x);
  const Pos root = tp.periodic && d % tp.period == 0 ? tp.period : d;
  const Pos r0 = any % root;
  return ArithProgression::make(r0, root, (d - 1 - r0) / root + 1);
}

}  // namespace ipm
