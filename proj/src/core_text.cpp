#include "ipm/core_text.hpp"

#include <algorithm>
#include <stdexcept>

#include "ipm/errors.hpp"

namespace ipm {

void fragment_out_of_range(Fragment f, Pos n) {
  throw std::out_of_range("fragment [" + std::to_string(f.start) + "," + std::to_string(f.end) +
                          "] outside [1," + std::to_string(n) + "]");
}

// ---------------------------------------------------------------------------
// FragmentSeq

void FragmentSeq::push(Fragment f) {
  if (f.length() <= 0) return;
  if (size_ == max_parts) throw std::length_error("fragment concatenation limited to 3 parts");
  parts_[size_++] = f;
}

Pos FragmentSeq::length() const {
  Pos total = 0;
  for (std::size_t i = 0; i < size_; ++i) total += parts_[i].length();
  return total;
}

FragmentSeq FragmentSeq::drop_prefix(Pos count) const {
  FragmentSeq out;
  for (std::size_t i = 0; i < size_; ++i) {
    Fragment f = parts_[i];
    if (count >= f.length()) {
      count -= f.length();
      continue;
    }
    f.start += count;
    count = 0;
    out.push(f);
  }
  return out;
}

FragmentSeq FragmentSeq::take_prefix(Pos count) const {
  FragmentSeq out;
  for (std::size_t i = 0; i < size_ && count > 0; ++i) {
    Fragment f = parts_[i];
    if (f.length() > count) f.end = f.start + count - 1;
    count -= f.length();
    out.push(f);
  }
  return out;
}

// ---------------------------------------------------------------------------
// ArithProgression

ArithProgression ArithProgression::make(Pos first, Pos diff, Pos count) {
  if (count <= 0) return {};
  if (count == 1) return single(first);
  if (diff <= 0) throw ChainViolation("progression with count >= 2 needs a positive difference");
  return {first, diff, count};
}

bool ArithProgression::contains(Pos p) const {
  if (count == 0 || p < first || p > last()) return false;
  return diff == 0 ? p == first : (p - first) % diff == 0;
}

std::vector<Pos> ArithProgression::elements() const {
  std::vector<Pos> out;
  out.reserve(static_cast<std::size_t>(count));
  for (Pos t = 0; t < count; ++t) out.push_back(at(t));
  return out;
}

ArithProgression clip(const ArithProgression& ap, Pos lo, Pos hi) {
  if (ap.empty() || lo > hi || ap.last() < lo || ap.first > hi) return {};
  if (ap.count == 1) return ap;
  Pos t0 = ap.first >= lo ? 0 : (lo - ap.first + ap.diff - 1) / ap.diff;
  Pos t1 = ap.last() <= hi ? ap.count - 1 : (hi - ap.first) / ap.diff;
  return ArithProgression::make(ap.at(t0), ap.diff, t1 - t0 + 1);
}

ArithProgression progression_from_sorted(std::span<const Pos> sorted) {
  if (sorted.empty()) return {};
  if (sorted.size() == 1) return ArithProgression::single(sorted[0]);
  const Pos diff = sorted[1] - sorted[0];
  for (std::size_t i = 2; i < sorted.size(); ++i) {
    if (sorted[i] - sorted[i - 1] != diff) {
      throw ChainViolation("occurrence list is not an arithmetic progression");
    }
  }
  return ArithProgression::make(sorted[0], diff, static_cast<Pos>(sorted.size()));
}

ArithProgression merge_progressions(std::span<const ArithProgression> parts, Pos per_hint) {
  Pos total = 0;
  for (const auto& p : parts) total += p.count;
  if (total == 0) return {};
  if (total <= 2) {
    std::vector<Pos> elems;
    for (const auto& p : parts)
      for (Pos t = 0; t < p.count; ++t) elems.push_back(p.at(t));
    if (elems.size() == 2 && elems[1] <= elems[0]) {
      throw ChainViolation("progression parts are not sorted and disjoint");
    }
    return progression_from_sorted(elems);
  }
  ArithProgression acc;
  for (const auto& p : parts) {
    if (p.empty()) continue;
    if (p.count >= 2 && p.diff != per_hint) {
      throw ChainViolation("progression part has difference " + std::to_string(p.diff) +
                           ", expected " + std::to_string(per_hint));
    }
    if (acc.empty()) {
      acc = p;
      continue;
    }
    if (p.first - acc.last() != per_hint) {
      throw ChainViolation("progression parts do not chain with gap " + std::to_string(per_hint));
    }
    acc = ArithProgression::make(acc.first, per_hint, acc.count + p.count);
  }
  return acc;
}

ArithProgression union_progressions(const ArithProgression& a, const ArithProgression& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  if (a.count >= 2 && b.count >= 2 && a.diff != b.diff) {
    throw ChainViolation("union of progressions with different differences");
  }
  const ArithProgression& lo = a.first <= b.first ? a : b;
  const ArithProgression& hi = a.first <= b.first ? b : a;
  const Pos lo_end = std::max(a.last(), b.last());
  Pos diff = a.count >= 2 ? a.diff : (b.count >= 2 ? b.diff : 0);
  if (diff == 0) {
    if (a.first == b.first) return a;
    return ArithProgression::make(lo.first, hi.first - lo.first, 2);
  }
  if ((hi.first - lo.first) % diff != 0 || (lo_end - lo.first) % diff != 0 ||
      hi.first > lo.last() + diff) {
    throw ChainViolation("union of progressions is not a single progression");
  }
  return ArithProgression::make(lo.first, diff, (lo_end - lo.first) / diff + 1);
}

// ---------------------------------------------------------------------------
// RangeMinimum

RangeMinimum::RangeMinimum(std::vector<std::uint32_t> values) : values_(std::move(values)) {
  const std::size_t n = values_.size();
  masks_.assign(n, 0);
  const std::size_t blocks = (n + block - 1) / block;
  std::vector<std::uint32_t> block_min(blocks, UINT32_MAX);
  for (std::size_t b = 0; b < blocks; ++b) {
    std::uint32_t cur = 0;
    const std::size_t lo = b * block;
    const std::size_t hi = std::min(n, lo + block);
    for (std::size_t i = lo; i < hi; ++i) {
      // pop stack entries whose value is not smaller than values_[i]
      while (cur) {
        const int top = 31 - std::countl_zero(cur);
        if (values_[lo + static_cast<std::size_t>(top)] >= values_[i]) {
          cur &= ~(1u << top);
        } else {
          break;
        }
      }
      cur |= 1u << (i - lo);
      masks_[i] = cur;
      block_min[b] = std::min(block_min[b], values_[i]);
    }
  }
  sparse_.push_back(std::move(block_min));
  for (std::size_t w = 1; 2 * w <= blocks; w *= 2) {
    const auto& prev = sparse_.back();
    std::vector<std::uint32_t> next(blocks - 2 * w + 1);
    for (std::size_t i = 0; i < next.size(); ++i) next[i] = std::min(prev[i], prev[i + w]);
    sparse_.push_back(std::move(next));
  }
}

std::uint32_t RangeMinimum::in_block(std::size_t l, std::size_t r) const {
  const std::size_t base = l - l % block;
  const std::uint32_t m = masks_[r] & (~0u << (l - base));
  return values_[base + static_cast<std::size_t>(std::countr_zero(m))];
}

std::uint32_t RangeMinimum::min(std::size_t l, std::size_t r) const {
  assert(l <= r && r < values_.size());
  const std::size_t bl = l / block;
  const std::size_t br = r / block;
  if (bl == br) return in_block(l, r);
  std::uint32_t best =
      std::min(in_block(l, bl * block + block - 1), in_block(br * block, r));
  if (bl + 1 < br) {
    const std::size_t span = br - bl - 1;
    const int lg = floor_log2(span);
    const auto& row = sparse_[static_cast<std::size_t>(lg)];
    best = std::min({best, row[bl + 1], row[br - (std::size_t{1} << lg)]});
  }
  return best;
}

std::size_t RangeMinimum::memory_bytes() const {
  std::size_t bytes = (values_.size() + masks_.size()) * sizeof(std::uint32_t);
  for (const auto& row : sparse_) bytes += row.size() * sizeof(std::uint32_t);
  return bytes;
}

// ---------------------------------------------------------------------------
// Suffix array / TextIndex

std::vector<std::uint32_t> build_suffix_array(std::span<const std::uint8_t> s) {
  const std::size_t n = s.size();
  std::vector<std::uint32_t> sa(n), rank(n), tmp(n);
  if (n == 0) return sa;
  std::vector<std::uint32_t> cnt(std::max<std::size_t>(256, n) + 1, 0);
  for (std::size_t i = 0; i < n; ++i) ++cnt[s[i]];
  for (std::size_t c = 1; c < 256; ++c) cnt[c] += cnt[c - 1];
  for (std::size_t i = n; i-- > 0;) sa[--cnt[s[i]]] = static_cast<std::uint32_t>(i);
  rank[sa[0]] = 0;
  for (std::size_t i = 1; i < n; ++i) {
    rank[sa[i]] = rank[sa[i - 1]] + (s[sa[i]] != s[sa[i - 1]] ? 1 : 0);
  }
  std::size_t classes = rank[sa[n - 1]] + 1;
  for (std::size_t k = 1; classes < n; k <<= 1) {
    // order by second key: suffixes without a second half come first
    std::size_t p = 0;
    for (std::size_t i = n - std::min(k, n); i < n; ++i) tmp[p++] = static_cast<std::uint32_t>(i);
    for (std::size_t j = 0; j < n; ++j) {
      if (sa[j] >= k) tmp[p++] = static_cast<std::uint32_t>(sa[j] - k);
    }
    std::fill(cnt.begin(), cnt.begin() + static_cast<std::ptrdiff_t>(classes), 0);
    for (std::size_t i = 0; i < n; ++i) ++cnt[rank[i]];
    for (std::size_t c = 1; c < classes; ++c) cnt[c] += cnt[c - 1];
    for (std::size_t j = n; j-- > 0;) sa[--cnt[rank[tmp[j]]]] = tmp[j];
    auto second = [&](std::uint32_t i) -> std::int64_t {
      return i + k < n ? static_cast<std::int64_t>(rank[i + k]) : -1;
    };
    tmp[sa[0]] = 0;
    for (std::size_t i = 1; i < n; ++i) {
      const std::uint32_t a = sa[i - 1], b = sa[i];
      const bool same = rank[a] == rank[b] && second(a) == second(b);
      tmp[b] = tmp[a] + (same ? 0 : 1);
    }
    rank.swap(tmp);
    classes = rank[sa[n - 1]] + 1;
  }
  return sa;
}

TextIndex::TextIndex(Text text) : TextIndex(text, build_suffix_array(text.bytes())) {}

TextIndex::TextIndex(Text text, std::vector<std::uint32_t> sa0)
    : text_(std::move(text)), sa_(std::move(sa0)) {
  const std::size_t n = text_.bytes().size();
  if (n == 0) throw std::invalid_argument("text must be non-empty");
  if (sa_.size() != n) throw std::invalid_argument("suffix array size mismatch");
  isa_.assign(n, 0);
  std::vector<char> seen(n, 0);
  for (std::size_t r = 0; r < n; ++r) {
    if (sa_[r] >= n || seen[sa_[r]]) throw std::invalid_argument("suffix array is not a permutation");
    seen[sa_[r]] = 1;
    isa_[sa_[r]] = static_cast<std::uint32_t>(r);
  }
  // Kasai et al.
  const auto s = text_.bytes();
  std::vector<std::uint32_t> lcp(n, 0);
  std::size_t h = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = isa_[i];
    if (r == 0) {
      h = 0;
      continue;
    }
    const std::size_t j = sa_[r - 1];
    while (i + h < n && j + h < n && s[i + h] == s[j + h]) ++h;
    lcp[r] = static_cast<std::uint32_t>(h);
    if (h > 0) --h;
  }
  rmq_ = RangeMinimum(std::move(lcp));
}

std::vector<Pos> TextIndex::suffix_array() const {
  std::vector<Pos> out(sa_.size());
  for (std::size_t i = 0; i < sa_.size(); ++i) out[i] = static_cast<Pos>(sa_[i]) + 1;
  return out;
}

std::vector<Pos> TextIndex::lcp_array() const {
  const auto& v = rmq_.values();
  return std::vector<Pos>(v.begin() + 1, v.end());
}

Pos TextIndex::lcp_ranks(Pos lo, Pos hi) const {
  assert(lo < hi);
  return rmq_.min(static_cast<std::size_t>(lo), static_cast<std::size_t>(hi - 1));
}

Pos TextIndex::lcp_suffixes(Pos a, Pos b) const {
  if (a == b) return size() - a + 1;
  Pos ra = isa_[static_cast<std::size_t>(a - 1)];
  Pos rb = isa_[static_cast<std::size_t>(b - 1)];
  if (ra > rb) std::swap(ra, rb);
  // 0-based ranks ra < rb: min over lcp entries ra+1..rb
  return rmq_.min(static_cast<std::size_t>(ra + 1), static_cast<std::size_t>(rb));
}

std::size_t TextIndex::memory_bytes() const {
  return text_.bytes().size() + (sa_.size() + isa_.size()) * sizeof(std::uint32_t) +
         rmq_.memory_bytes();
}

Pos lcp_fragments(const TextIndex& ix, const FragmentSeq& x, const FragmentSeq& y) {
  std::size_t px = 0, py = 0;
  Pos ox = 0, oy = 0, total = 0;
  while (px < x.parts() && py < y.parts()) {
    const Fragment& fx = x[px];
    const Fragment& fy = y[py];
    const Pos rx = fx.length() - ox;
    const Pos ry = fy.length() - oy;
    const Pos cap = std::min(rx, ry);
    const Pos l = std::min(ix.lcp_suffixes(fx.start + ox, fy.start + oy), cap);
    total += l;
    if (l < cap) return total;
    ox += l;
    oy += l;
    if (ox == fx.length()) {
      ++px;
      ox = 0;
    }
    if (oy == fy.length()) {
      ++py;
      oy = 0;
    }
  }
  return total;
}

bool fragments_equal(const TextIndex& ix, const FragmentSeq& x, const FragmentSeq& y) {
  const Pos len = x.length();
  return len == y.length() && lcp_fragments(ix, x, y) == len;
}

Pos longest_prefix_with_period(const TextIndex& ix, const FragmentSeq& x, Pos p) {
  const Pos len = x.length();
  if (p < 1 || p > len) throw std::invalid_argument("period must lie in [1, |x|]");
  return p + lcp_fragments(ix, x, x.drop_prefix(p));
}

}  // namespace ipm
