#pragma once

#include <cstdint>
#include <vector>

#include "ipm/core_text.hpp"
#include "ipm/ipm.hpp"
#include "ipm/succinct.hpp"

namespace ipm {

// Wavelet matrix over a sequence of values < 2^32.
class WaveletMatrix {
 public:
  static constexpr std::uint64_t npos = UINT64_MAX;

  WaveletMatrix() = default;
  explicit WaveletMatrix(std::vector<std::uint32_t> values);

  std::size_t size() const { return n_; }
  // Smallest value >= v among values[l, r) (0-based), npos if none.
  std::uint64_t next_value(std::size_t l, std::size_t r, std::uint32_t v) const;
  // Largest value <= v among values[l, r), npos if none.
  std::uint64_t prev_value(std::size_t l, std::size_t r, std::uint32_t v) const;
  std::size_t memory_bytes() const;

 private:
  std::uint64_t next_rec(int level, std::size_t l, std::size_t r, std::uint32_t v, std::uint32_t acc,
                         bool tight) const;
  std::uint64_t prev_rec(int level, std::size_t l, std::size_t r, std::uint32_t v, std::uint32_t acc,
                         bool tight) const;

  std::size_t n_ = 0;
  int bits_ = 0;
  std::vector<BitVector> levels_;
  std::vector<std::size_t> zeros_;
};

// Points (position i, rank isa[i]). Ranks and positions are 1-based; kNone is
// returned when no point qualifies.
class RangeSuccessorIndex {
 public:
  RangeSuccessorIndex() = default;
  explicit RangeSuccessorIndex(const TextIndex& ix);

  // Smallest rank >= v among positions [l, r].
  Pos successor(Pos l, Pos r, Pos v) const;
  // Largest rank <= v among positions [l, r].
  Pos predecessor(Pos l, Pos r, Pos v) const;
  // Smallest position >= from among ranks [ranks.start, ranks.end].
  Pos leftmost(Fragment ranks, Pos from) const;
  std::size_t memory_bytes() const;

 private:
  Pos n_ = 0;
  WaveletMatrix by_pos_;   // position -> rank
  WaveletMatrix by_rank_;  // rank -> position
};

// Maximal rank interval of suffixes that start with word(f).
Fragment sa_interval(const TextIndex& ix, Fragment f);

// word(x) occurs somewhere inside y.
bool occurs_in(const TextIndex& ix, const RangeSuccessorIndex& rs, Fragment x, Fragment y);

struct PrefixMatch {
  Pos length = 0;
  Pos witness = kNone;
  bool operator==(const PrefixMatch&) const = default;
};

// max over t in [l, r] of min(lcp(t, x.start), |x|). The witness is the
// smaller position on ties; (0, kNone) for an empty range.
PrefixMatch ilcp(const TextIndex& ix, const RangeSuccessorIndex& rs, Pos l, Pos r, Fragment x);

// Longest prefix of x that occurs inside y, with a start of one occurrence.
PrefixMatch blcp(const IpmIndex& idx, const RangeSuccessorIndex& rs, Fragment x, Fragment y);

// A phrase of LZ(y$x) inside x. Copy refs are 1-based positions of y$x.
struct LzPhrase {
  bool literal = false;
  std::uint8_t symbol = 0;
  Pos ref = 0;
  Pos len = 0;
  bool operator==(const LzPhrase&) const = default;
};

// Greedy self-referential LZ77 phrases of x in the context y$x; longest
// match, smallest reference on ties.
std::vector<LzPhrase> gsc(const IpmIndex& idx, const RangeSuccessorIndex& rs, Fragment x, Fragment y);

// Rebuilds x from the phrases given y (inverse of gsc).
std::vector<std::uint8_t> lz_decode(const Text& t, Fragment y, const std::vector<LzPhrase>& phrases);

}  // namespace ipm
