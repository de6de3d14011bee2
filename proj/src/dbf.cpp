#include "ipm/dbf.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <stdexcept>

namespace ipm {

std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

std::span<const std::uint32_t> DbfLevel::occurrences(std::uint32_t id) const {
  if (id < 1 || id > static_cast<std::uint64_t>(m_)) return {};
  return std::span<const std::uint32_t>(positions_).subspan(offsets_[id - 1], offsets_[id] - offsets_[id - 1]);
}

DbfLevel DbfLevel::first(const Text& t, std::mt19937_64* rng) {
  DbfLevel lv;
  lv.n_ = t.size();
  std::array<std::uint32_t, 256> code{};
  for (auto c : t.bytes()) code[c] = 1;
  std::uint32_t next = 0;
  for (auto& c : code) c = c ? ++next : 0;
  lv.ids_.reserve(t.bytes().size());
  for (auto c : t.bytes()) lv.ids_.push_back(code[c]);
  lv.m_ = next;
  lv.finish(rng);
  return lv;
}

DbfLevel DbfLevel::next(const DbfLevel& prev, std::mt19937_64* rng) {
  const Pos half = Pos{1} << prev.k_;
  const Pos nk = prev.n_ - 2 * half + 1;
  if (nk < 1) throw std::invalid_argument("no basic factors at the next level");
  const std::size_t n = static_cast<std::size_t>(nk);
  const std::size_t m = static_cast<std::size_t>(prev.m_);
  const auto& ids = prev.ids_;
  // radix sort positions by (ids[i], ids[i + 2^k])
  std::vector<std::uint32_t> cnt(m + 2, 0), tmp(n), order(n);
  for (std::size_t i = 0; i < n; ++i) ++cnt[ids[i + static_cast<std::size_t>(half)]];
  for (std::size_t c = 1; c < cnt.size(); ++c) cnt[c] += cnt[c - 1];
  for (std::size_t i = n; i-- > 0;) tmp[--cnt[ids[i + static_cast<std::size_t>(half)]]] = static_cast<std::uint32_t>(i);
  std::fill(cnt.begin(), cnt.end(), 0);
  for (std::size_t i = 0; i < n; ++i) ++cnt[ids[i]];
  for (std::size_t c = 1; c < cnt.size(); ++c) cnt[c] += cnt[c - 1];
  for (std::size_t j = n; j-- > 0;) order[--cnt[ids[tmp[j]]]] = tmp[j];

  DbfLevel lv;
  lv.k_ = prev.k_ + 1;
  lv.n_ = prev.n_;
  lv.ids_.assign(n, 0);
  std::uint32_t cur = 0;
  for (std::size_t j = 0; j < n; ++j) {
    const std::uint32_t i = order[j];
    if (j == 0 || ids[i] != ids[order[j - 1]] ||
        ids[i + static_cast<std::size_t>(half)] != ids[order[j - 1] + static_cast<std::size_t>(half)]) {
      ++cur;
    }
    lv.ids_[i] = cur;
  }
  lv.m_ = cur;
  lv.finish(rng);
  return lv;
}

void DbfLevel::finish(std::mt19937_64* rng) {
  const std::size_t m = static_cast<std::size_t>(m_);
  perm_.resize(m);
  std::iota(perm_.begin(), perm_.end(), 1u);
  if (rng != nullptr) {
    for (std::size_t i = m; i > 1; --i) {
      std::swap(perm_[i - 1], perm_[bounded_draw(*rng, i)]);
    }
  }
  // bucket of id is [offsets_[id - 1], offsets_[id])
  offsets_.assign(m + 1, 0);
  for (auto r : ids_) ++offsets_[perm_[r - 1]];
  for (std::size_t c = 1; c <= m; ++c) offsets_[c] += offsets_[c - 1];
  positions_.assign(ids_.size(), 0);
  std::vector<std::uint32_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    positions_[fill[perm_[ids_[i] - 1] - 1]++] = static_cast<std::uint32_t>(i + 1);
  }
}

}  // namespace ipm
