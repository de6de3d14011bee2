#include "ipm/compression.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace ipm {

WaveletMatrix::WaveletMatrix(std::vector<std::uint32_t> values) : n_(values.size()) {
  std::uint32_t top = 0;
  for (auto v : values) top = std::max(top, v);
  bits_ = std::max(1, static_cast<int>(std::bit_width(top)));
  std::vector<std::uint32_t> next(n_);
  for (int level = 0; level < bits_; ++level) {
    const int shift = bits_ - 1 - level;
    std::vector<Pos> ones;
    for (std::size_t i = 0; i < n_; ++i) {
      if ((values[i] >> shift) & 1) ones.push_back(static_cast<Pos>(i) + 1);
    }
    levels_.push_back(BitVector::from_positions(static_cast<Pos>(n_), ones));
    zeros_.push_back(n_ - ones.size());
    // stable partition: zeros first
    std::size_t z = 0, o = zeros_.back();
    for (std::size_t i = 0; i < n_; ++i) {
      if ((values[i] >> shift) & 1) next[o++] = values[i]; else next[z++] = values[i];
    }
    values.swap(next);
  }
}

std::uint64_t WaveletMatrix::next_rec(int level, std::size_t l, std::size_t r, std::uint32_t v,
                                      std::uint32_t acc, bool tight) const {
  if (l >= r) return npos;
  if (level == bits_) return acc;
  const BitVector& bv = levels_[static_cast<std::size_t>(level)];
  const auto l1 = static_cast<std::size_t>(bv.rank(static_cast<Pos>(l)));
  const auto r1 = static_cast<std::size_t>(bv.rank(static_cast<Pos>(r)));
  const std::size_t l0 = l - l1, r0 = r - r1, z = zeros_[static_cast<std::size_t>(level)];
  const std::uint32_t one = std::uint32_t{1} << (bits_ - 1 - level);
  if (!tight) {
    if (l0 < r0) return next_rec(level + 1, l0, r0, v, acc, false);
    return next_rec(level + 1, z + l1, z + r1, v, acc | one, false);
  }
  if (v & one) return next_rec(level + 1, z + l1, z + r1, v, acc | one, true);
  const std::uint64_t left = next_rec(level + 1, l0, r0, v, acc, true);
  if (left != npos) return left;
  return next_rec(level + 1, z + l1, z + r1, v, acc | one, false);
}

std::uint64_t WaveletMatrix::prev_rec(int level, std::size_t l, std::size_t r, std::uint32_t v,
                                      std::uint32_t acc, bool tight) const {
  if (l >= r) return npos;
  if (level == bits_) return acc;
  const BitVector& bv = levels_[static_cast<std::size_t>(level)];
  const auto l1 = static_cast<std::size_t>(bv.rank(static_cast<Pos>(l)));
  const auto r1 = static_cast<std::size_t>(bv.rank(static_cast<Pos>(r)));
  const std::size_t l0 = l - l1, r0 = r - r1, z = zeros_[static_cast<std::size_t>(level)];
  const std::uint32_t one = std::uint32_t{1} << (bits_ - 1 - level);
  if (!tight) {
    if (l1 < r1) return prev_rec(level + 1, z + l1, z + r1, v, acc | one, false);
    return prev_rec(level + 1, l0, r0, v, acc, false);
  }
  if (!(v & one)) return prev_rec(level + 1, l0, r0, v, acc, true);
  const std::uint64_t right = prev_rec(level + 1, z + l1, z + r1, v, acc | one, true);
  if (right != npos) return right;
  return prev_rec(level + 1, l0, r0, v, acc, false);
}

std::uint64_t WaveletMatrix::next_value(std::size_t l, std::size_t r, std::uint32_t v) const {
  if (bits_ < 32 && v >> bits_) return npos;
  return next_rec(0, l, std::min(r, n_), v, 0, true);
}

std::uint64_t WaveletMatrix::prev_value(std::size_t l, std::size_t r, std::uint32_t v) const {
  if (bits_ < 32 && v >> bits_) v = (std::uint32_t{1} << bits_) - 1;
  return prev_rec(0, l, std::min(r, n_), v, 0, true);
}

std::size_t WaveletMatrix::memory_bytes() const {
  std::size_t b = zeros_.size() * sizeof(std::size_t);
  for (const auto& bv : levels_) b += bv.memory_bytes();
  return b;
}

RangeSuccessorIndex::RangeSuccessorIndex(const TextIndex& ix) : n_(ix.size()) {
  std::vector<std::uint32_t> by_pos(static_cast<std::size_t>(n_)), by_rank(static_cast<std::size_t>(n_));
  for (Pos i = 1; i <= n_; ++i) {
    by_pos[static_cast<std::size_t>(i - 1)] = static_cast<std::uint32_t>(ix.isa(i) - 1);
    by_rank[static_cast<std::size_t>(i - 1)] = static_cast<std::uint32_t>(ix.sa(i) - 1);
  }
  by_pos_ = WaveletMatrix(std::move(by_pos));
  by_rank_ = WaveletMatrix(std::move(by_rank));
}

Pos RangeSuccessorIndex::successor(Pos l, Pos r, Pos v) const {
  l = std::max<Pos>(l, 1);
  r = std::min(r, n_);
  if (l > r || v > n_) return kNone;
  v = std::max<Pos>(v, 1);
  const auto got = by_pos_.next_value(static_cast<std::size_t>(l - 1), static_cast<std::size_t>(r),
                                      static_cast<std::uint32_t>(v - 1));
  return got == WaveletMatrix::npos ? kNone : static_cast<Pos>(got) + 1;
}

Pos RangeSuccessorIndex::predecessor(Pos l, Pos r, Pos v) const {
  l = std::max<Pos>(l, 1);
  r = std::min(r, n_);
  if (l > r || v < 1) return kNone;
  v = std::min(v, n_);
  const auto got = by_pos_.prev_value(static_cast<std::size_t>(l - 1), static_cast<std::size_t>(r),
                                      static_cast<std::uint32_t>(v - 1));
  return got == WaveletMatrix::npos ? kNone : static_cast<Pos>(got) + 1;
}

Pos RangeSuccessorIndex::leftmost(Fragment ranks, Pos from) const {
  ranks.start = std::max<Pos>(ranks.start, 1);
  ranks.end = std::min(ranks.end, n_);
  if (ranks.start > ranks.end || from > n_) return kNone;
  from = std::max<Pos>(from, 1);
  const auto got = by_rank_.next_value(static_cast<std::size_t>(ranks.start - 1),
                                       static_cast<std::size_t>(ranks.end),
                                       static_cast<std::uint32_t>(from - 1));
  return got == WaveletMatrix::npos ? kNone : static_cast<Pos>(got) + 1;
}

std::size_t RangeSuccessorIndex::memory_bytes() const {
  return by_pos_.memory_bytes() + by_rank_.memory_bytes();
}

Fragment sa_interval(const TextIndex& ix, Fragment f) {
  check_fragment(f, ix.size());
  const Pos len = f.length();
  const Pos r0 = ix.isa(f.start);
  // smallest lo (largest hi) whose lcp with r0 still covers f
  Pos a = 1, b = r0;
  while (a < b) {
    const Pos mid = a + (b - a) / 2;
    if (ix.lcp_ranks(mid, r0) >= len) b = mid; else a = mid + 1;
  }
  const Pos lo = a;
  a = r0;
  b = ix.size();
  while (a < b) {
    const Pos mid = a + (b - a + 1) / 2;
    if (ix.lcp_ranks(r0, mid) >= len) a = mid; else b = mid - 1;
  }
  return {lo, a};
}

bool occurs_in(const TextIndex& ix, const RangeSuccessorIndex& rs, Fragment x, Fragment y) {
  if (x.length() > y.length()) return false;
  const Fragment iv = sa_interval(ix, x);
  const Pos r = rs.successor(y.start, y.end - x.length() + 1, iv.start);
  return r != kNone && r <= iv.end;
}

PrefixMatch ilcp(const TextIndex& ix, const RangeSuccessorIndex& rs, Pos l, Pos r, Fragment x) {
  if (l > r) return {};
  const Pos v = ix.isa(x.start);
  PrefixMatch best;
  for (Pos rank : {rs.predecessor(l, r, v), rs.successor(l, r, v)}) {
    if (rank == kNone) continue;
    const Pos pos = ix.sa(rank);
    const Pos len = std::min(ix.lcp_suffixes(pos, x.start), x.length());
    if (best.witness == kNone || len > best.length || (len == best.length && pos < best.witness)) {
      best = {len, pos};
    }
  }
  return best;
}

PrefixMatch blcp(const IpmIndex& idx, const RangeSuccessorIndex& rs, Fragment x, Fragment y) {
  const TextIndex& ix = idx.text_index();
  check_fragment(x, ix.size());
  check_fragment(y, ix.size());
  auto prefix = [&](Pos len) { return Fragment{x.start, x.start + len - 1}; };
  if (!occurs_in(ix, rs, prefix(1), y)) return {};
  // largest K with the 2^K-prefix inside y
  int lo = 0, hi = floor_log2(static_cast<std::uint64_t>(std::min(x.length(), y.length())));
  while (lo < hi) {
    const int mid = (lo + hi + 1) / 2;
    if (occurs_in(ix, rs, prefix(Pos{1} << mid), y)) lo = mid; else hi = mid - 1;
  }
  const Pos base = Pos{1} << lo;
  PrefixMatch best;
  // starts with 2^{K+1} symbols of room: the y boundary cannot cut the match
  if (y.end - 2 * base + 1 >= y.start) best = ilcp(ix, rs, y.start, y.end - 2 * base + 1, x);
  auto consider = [&](Pos s) {
    const Pos len = lcp_fragments(ix, x, Fragment{s, y.end});
    if (len > best.length) best = {len, s};
  };
  const Fragment tail{std::max(y.start, y.end - 2 * base + 2), y.end};
  const ArithProgression hits = idx.query(prefix(base), tail);
  if (hits.count <= 2) {
    for (Pos s : hits.elements()) consider(s);
  } else {
    // hits are q-periodic; only the first one and the one where both
    // periodic extents end together can win
    const Pos q = hits.diff;
    const Pos dx = longest_prefix_with_period(ix, x, q);
    const Pos ey = longest_prefix_with_period(ix, Fragment{hits.first, y.end}, q);
    consider(hits.first);
    const Pos s = hits.first + ey - dx;
    if (hits.contains(s)) consider(s);
  }
  return best;
}

std::vector<LzPhrase> gsc(const IpmIndex& idx, const RangeSuccessorIndex& rs, Fragment x, Fragment y) {
  const TextIndex& ix = idx.text_index();
  check_fragment(x, ix.size());
  check_fragment(y, ix.size());
  std::vector<LzPhrase> out;
  const Pos x_base = y.length() + 1;  // offset of x inside y$x, minus one
  for (Pos cur = x.start; cur <= x.end;) {
    const Fragment rest{cur, x.end};
    const Pos in_y = blcp(idx, rs, rest, y).length;
    const Pos in_x = cur > x.start ? ilcp(ix, rs, x.start, cur - 1, rest).length : 0;
    const Pos len = std::max(in_y, in_x);
    if (len == 0) {
      out.push_back({true, idx.text()[cur], 0, 0});
      ++cur;
      continue;
    }
    const Fragment iv = sa_interval(ix, {cur, cur + len - 1});
    Pos ref;
    if (in_y >= in_x) {
      ref = rs.leftmost(iv, y.start) - y.start + 1;
    } else {
      ref = x_base + rs.leftmost(iv, x.start) - x.start + 1;
    }
    out.push_back({false, 0, ref, len});
    cur += len;
  }
  return out;
}

std::vector<std::uint8_t> lz_decode(const Text& t, Fragment y, const std::vector<LzPhrase>& phrases) {
  std::vector<int> w;
  for (Pos i = y.start; i <= y.end; ++i) w.push_back(t[i]);
  w.push_back(256);
  const std::size_t base = w.size();
  for (const LzPhrase& p : phrases) {
    if (p.literal) {
      w.push_back(p.symbol);
      continue;
    }
    if (p.ref < 1 || static_cast<std::size_t>(p.ref) > w.size()) {
      throw std::invalid_argument("phrase reference outside the decoded prefix");
    }
    for (Pos j = 0; j < p.len; ++j) w.push_back(w[static_cast<std::size_t>(p.ref - 1 + j)]);
  }
  std::vector<std::uint8_t> x;
  for (std::size_t i = base; i < w.size(); ++i) {
    if (w[i] > 255) throw std::invalid_argument("phrase copies the separator");
    x.push_back(static_cast<std::uint8_t>(w[i]));
  }
  return x;
}

}  // namespace ipm
