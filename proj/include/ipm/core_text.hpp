#pragma once

#include <array>
#include <bit>
#include <cassert>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ipm {

// Positions, lengths and counts of the public API. Positions are 1-based and
// fragments are inclusive intervals, so v[i,j] is Fragment{i, j}.
using Pos = std::int64_t;

class Text {
 public:
  Text() = default;
  explicit Text(std::string_view s) : bytes_(s.begin(), s.end()) {}
  explicit Text(std::vector<std::uint8_t> bytes) : bytes_(std::move(bytes)) {}

  Pos size() const { return static_cast<Pos>(bytes_.size()); }
  bool empty() const { return bytes_.empty(); }

  // 1-based symbol access.
  std::uint8_t operator[](Pos i) const {
    assert(i >= 1 && i <= size());
    return bytes_[static_cast<std::size_t>(i - 1)];
  }

  std::span<const std::uint8_t> bytes() const { return bytes_; }
  std::string_view view() const {
    return {reinterpret_cast<const char*>(bytes_.data()), bytes_.size()};
  }

  bool operator==(const Text&) const = default;

 private:
  std::vector<std::uint8_t> bytes_;
};

struct Fragment {
  Pos start = 1;
  Pos end = 0;

  constexpr Pos length() const { return end - start + 1; }
  constexpr bool contains(Fragment other) const {
    return start <= other.start && other.end <= end;
  }
  bool operator==(const Fragment&) const = default;
};

// Throws std::out_of_range unless 1 <= f.start <= f.end <= n.
[[noreturn]] void fragment_out_of_range(Fragment f, Pos n);
inline void check_fragment(Fragment f, Pos n) {
  if (f.start < 1 || f.end < f.start || f.end > n) [[unlikely]] fragment_out_of_range(f, n);
}

// The k-basic fragment BF_k(i).
constexpr Fragment basic_fragment(int k, Pos i) { return {i, i + (Pos{1} << k) - 1}; }

// Word given as a concatenation of at most three fragments of the host text.
class FragmentSeq {
 public:
  static constexpr std::size_t max_parts = 3;

  FragmentSeq() = default;
  FragmentSeq(Fragment f) { push(f); }  // NOLINT: implicit on purpose
  FragmentSeq(std::initializer_list<Fragment> fs) {
    for (Fragment f : fs) push(f);
  }

  void push(Fragment f);

  std::size_t parts() const { return size_; }
  const Fragment& operator[](std::size_t i) const { return parts_[i]; }
  Pos length() const;

  // The word with its first `count` symbols removed.
  FragmentSeq drop_prefix(Pos count) const;
  // The prefix of length `count` (count <= length()).
  FragmentSeq take_prefix(Pos count) const;

 private:
  std::array<Fragment, max_parts> parts_{};
  std::size_t size_ = 0;
};

// {first + t*diff : 0 <= t < count}. Canonical form: diff == 0 whenever
// count <= 1, and first == 0 for the empty progression, so equality of
// outputs is structural.
struct ArithProgression {
  Pos first = 0;
  Pos diff = 0;
  Pos count = 0;

  static ArithProgression make(Pos first, Pos diff, Pos count);
  static ArithProgression single(Pos p) { return {p, 0, 1}; }

  bool empty() const { return count == 0; }
  Pos last() const { return first + (count - 1) * diff; }
  Pos at(Pos t) const { return first + t * diff; }
  bool contains(Pos p) const;
  std::vector<Pos> elements() const;

  bool operator==(const ArithProgression&) const = default;
};

// Elements of `ap` that lie in [lo, hi].
ArithProgression clip(const ArithProgression& ap, Pos lo, Pos hi);

// Canonical progression of a strictly increasing list; throws ChainViolation
// if the gaps differ.
ArithProgression progression_from_sorted(std::span<const Pos> sorted);

// Merges parts sorted by first element whose union is known to be a single
// progression with difference per_hint (when it has at least three
// elements). Throws ChainViolation if the structure does not hold.
ArithProgression merge_progressions(std::span<const ArithProgression> parts, Pos per_hint);

// Union of two progressions (overlap allowed) whose union is known to be a
// single progression. Throws ChainViolation otherwise.
ArithProgression union_progressions(const ArithProgression& a, const ArithProgression& b);

// Range minimum over a static array with O(n) words and O(1) queries:
// in-block stack masks for blocks of 32 plus a sparse table over block minima.
class RangeMinimum {
 public:
  RangeMinimum() = default;
  explicit RangeMinimum(std::vector<std::uint32_t> values);

  // min(values[l..r]), 0-based inclusive, l <= r.
  std::uint32_t min(std::size_t l, std::size_t r) const;
  std::size_t size() const { return values_.size(); }
  const std::vector<std::uint32_t>& values() const { return values_; }
  std::size_t memory_bytes() const;

 private:
  static constexpr std::size_t block = 32;
  std::uint32_t in_block(std::size_t l, std::size_t r) const;

  std::vector<std::uint32_t> values_;
  std::vector<std::uint32_t> masks_;
  std::vector<std::vector<std::uint32_t>> sparse_;
};

// Suffix array over 8-bit symbols by prefix doubling with radix sorting.
// Returns 0-based suffix starts in lexicographic order.
std::vector<std::uint32_t> build_suffix_array(std::span<const std::uint8_t> s);

// Suffix array, its inverse, LCP table and an RMQ over it; answers lcp and
// equality of fragment concatenations with O(1) RMQ probes per piece.
class TextIndex {
 public:
  TextIndex() = default;
  // Throws std::invalid_argument on an empty text.
  explicit TextIndex(Text text);
  // Rebuilds the index from a stored suffix array (used by deserialization).
  TextIndex(Text text, std::vector<std::uint32_t> sa0);

  const Text& text() const { return text_; }
  Pos size() const { return text_.size(); }

  // 1-based rank -> 1-based position.
  Pos sa(Pos rank) const { return sa_[static_cast<std::size_t>(rank - 1)] + 1; }
  // 1-based position -> 1-based rank.
  Pos isa(Pos pos) const { return isa_[static_cast<std::size_t>(pos - 1)] + 1; }
  // lcp of ranks rank-1 and rank, for rank in [2, n].
  Pos lcp_at(Pos rank) const { return rmq_.values()[static_cast<std::size_t>(rank - 1)]; }

  std::vector<Pos> suffix_array() const;
  // The n-1 entries lcp(sa[i-1], sa[i]) for i = 2..n.
  std::vector<Pos> lcp_array() const;
  const std::vector<std::uint32_t>& raw_sa() const { return sa_; }

  // Longest common prefix of the suffixes starting at a and b.
  Pos lcp_suffixes(Pos a, Pos b) const;
  // Minimum of the LCP table over ranks (lo, hi], i.e. the lcp of the
  // suffixes of rank lo and rank hi (lo < hi).
  Pos lcp_ranks(Pos lo, Pos hi) const;

  std::size_t memory_bytes() const;

 private:
  Text text_;
  std::vector<std::uint32_t> sa_;
  std::vector<std::uint32_t> isa_;
  RangeMinimum rmq_;
};

Pos lcp_fragments(const TextIndex& ix, const FragmentSeq& x, const FragmentSeq& y);
bool fragments_equal(const TextIndex& ix, const FragmentSeq& x, const FragmentSeq& y);
inline bool fragments_equal(const TextIndex& ix, Fragment x, Fragment y) {
  const Pos len = x.length();
  if (len != y.length()) return false;
  if (x.start == y.start || len == 0) return true;
  const Text& t = ix.text();
  return t[x.start] == t[y.start] && ix.lcp_suffixes(x.start, y.start) >= len;
}
// Length of the longest prefix of x having period p; requires 1 <= p <= |x|.
Pos longest_prefix_with_period(const TextIndex& ix, const FragmentSeq& x, Pos p);

// Floor of log2 for v >= 1.
constexpr int floor_log2(std::uint64_t v) { return static_cast<int>(std::bit_width(v)) - 1; }

}  // namespace ipm
