#include "ipm/succinct.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "ipm/errors.hpp"

namespace ipm {

BitVector::BitVector(Pos n_bits)
    : n_(n_bits), lines_(static_cast<std::size_t>((n_bits + 63) / 64) / line_words + 1) {
  finalize();
}

BitVector::BitVector(const std::vector<bool>& bits) : BitVector(static_cast<Pos>(bits.size())) {
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i]) word(i >> 6) |= std::uint64_t{1} << (i & 63);
  }
  finalize();
}

BitVector BitVector::from_positions(Pos n_bits, std::span<const Pos> ones) {
  BitVector bv;
  bv.n_ = n_bits;
  bv.lines_.assign(static_cast<std::size_t>((n_bits + 63) / 64) / line_words + 1, Line{});
  for (Pos p : ones) bv.set(p);
  bv.finalize();
  return bv;
}

void BitVector::set(Pos i) {
  if (i < 1 || i > n_) throw std::out_of_range("bit position outside vector");
  const auto b = static_cast<std::uint64_t>(i - 1);
  word(b >> 6) |= std::uint64_t{1} << (b & 63);
}

void BitVector::finalize() {
  std::uint64_t acc = 0;
  for (Line& l : lines_) {
    l.base = acc;
    for (auto w : l.w) acc += static_cast<std::uint64_t>(std::popcount(w));
  }
  total_ = static_cast<Pos>(acc);
}

Pos BitVector::rank(Pos i) const {
  if (i <= 0) return 0;
  if (i > n_) i = n_;
  const auto bits = static_cast<std::uint64_t>(i);
  const std::uint64_t g = bits >> 6;
  const Line& l = lines_[g / line_words];
  const std::size_t in = g % line_words;
  std::uint64_t r = l.base;
  for (std::size_t w = 0; w < in; ++w) r += static_cast<std::uint64_t>(std::popcount(l.w[w]));
  if (bits & 63) r += static_cast<std::uint64_t>(std::popcount(l.w[in] & ((std::uint64_t{1} << (bits & 63)) - 1)));
  return static_cast<Pos>(r);
}

Pos BitVector::select(Pos i) const {
  if (i < 1 || i > total_) return kNone;
  const auto target = static_cast<std::uint64_t>(i);
  // last line whose base is < target
  std::size_t lo = 0, hi = lines_.size();
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    if (lines_[mid].base < target) lo = mid; else hi = mid;
  }
  const Line& l = lines_[lo];
  std::uint64_t left = target - l.base;
  std::size_t w = 0;
  for (;; ++w) {
    const auto c = static_cast<std::uint64_t>(std::popcount(l.w[w]));
    if (c >= left) break;
    left -= c;
  }
  std::uint64_t bits = l.w[w];
  for (std::uint64_t t = 1; t < left; ++t) bits &= bits - 1;
  return static_cast<Pos>((lo * line_words + w) * 64 + static_cast<std::size_t>(std::countr_zero(bits))) + 1;
}

Pos BitVector::successor(Pos i) const {
  if (i < 1 || i > n_) {
    throw std::out_of_range("successor argument " + std::to_string(i) + " outside [1," +
                            std::to_string(n_) + "]");
  }
  // scan the rest of the current line first; most successor queries end there
  const auto b = static_cast<std::uint64_t>(i - 1);
  std::uint64_t g = b >> 6;
  const Line& l = lines_[g / line_words];
  std::uint64_t cur = l.w[g % line_words] & (~std::uint64_t{0} << (b & 63));
  for (std::size_t w = g % line_words;;) {
    if (cur) return static_cast<Pos>(g * 64 + static_cast<std::uint64_t>(std::countr_zero(cur))) + 1;
    if (++w == line_words) break;
    ++g;
    cur = l.w[w];
  }
  return select(rank(i - 1) + 1);
}

Locator::Locator(std::vector<std::pair<std::uint64_t, Pos>> entries, Pos d, Pos min_gap)
    : d_(d), bw_(d * block_factor) {
  if (d < 1) throw std::invalid_argument("locator width must be positive");
  if (min_gap == 0) min_gap = d + 1;
  if (min_gap < d) throw std::invalid_argument("locator gap smaller than its width");
  std::sort(entries.begin(), entries.end());
  pos_.reserve(entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto [set, pos] = entries[i];
    if (i > 0 && entries[i - 1].first == set && pos - entries[i - 1].second < min_gap) {
      throw SparsityViolation("set " + std::to_string(set) + " has positions " +
                              std::to_string(entries[i - 1].second) + " and " +
                              std::to_string(pos) + " closer than " + std::to_string(min_gap));
    }
    if (pos < 1 || pos > UINT32_MAX) throw std::out_of_range("locator position outside [1, 2^32)");
    const std::uint64_t k = key((pos + bw_ - 1) / bw_, set);
    auto [it, fresh] = map_.try_emplace(k, static_cast<std::uint64_t>(pos_.size()) << 32);
    ++it->second;
    pos_.push_back(static_cast<std::uint32_t>(pos));
  }
}

}  // namespace ipm
