#pragma once

#include <absl/container/flat_hash_map.h>

#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ipm/core_text.hpp"

namespace ipm {

// Returned by select/successor when no such position exists.
inline constexpr Pos kNone = 0;

// Static bit vector, 1-based. Each 64-byte line holds the number of ones
// before it followed by 448 payload bits, so rank touches one cache line;
// select binary-searches the line counts.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(Pos n_bits);
  explicit BitVector(const std::vector<bool>& bits);
  // Vector of length n_bits with exactly the given positions set.
  static BitVector from_positions(Pos n_bits, std::span<const Pos> ones);

  void set(Pos i);  // only before finalize()
  void finalize();

  Pos size() const { return n_; }
  Pos ones() const { return total_; }
  bool get(Pos i) const {
    const auto b = static_cast<std::uint64_t>(i - 1);
    return (word(b >> 6) >> (b & 63)) & 1;
  }
  // #{j <= i : bit j set}, for 0 <= i <= n.
  Pos rank(Pos i) const;
  // Position of the i-th set bit, kNone past the last one.
  Pos select(Pos i) const;
  // Smallest set position >= i, kNone if none. Requires 1 <= i <= n.
  Pos successor(Pos i) const;

  std::size_t memory_bytes() const { return lines_.size() * sizeof(Line); }

 private:
  static constexpr std::size_t line_words = 7;
  struct alignas(64) Line {
    std::uint64_t base = 0;
    std::uint64_t w[line_words] = {};
  };
  std::uint64_t word(std::uint64_t g) const { return lines_[g / line_words].w[g % line_words]; }
  std::uint64_t& word(std::uint64_t g) { return lines_[g / line_words].w[g % line_words]; }

  Pos n_ = 0;
  Pos total_ = 0;
  std::vector<Line> lines_;
};

// Piecewise-constant function given by breakpoints l_1 < ... < l_q and
// values; g(x) = values[i] on [l_i, l_{i+1} - 1], domain [l_1, last].
template <class T>
struct StepFunction {
  std::vector<Pos> breakpoints;
  std::vector<T> values;
  Pos last = 0;

  std::size_t size() const { return breakpoints.size(); }
  bool empty() const { return breakpoints.empty(); }
  bool in_domain(Pos i) const { return !breakpoints.empty() && i >= breakpoints.front() && i <= last; }

  // Appends a piece starting at `at`; merges with the previous piece when
  // the value is unchanged and overrides a piece starting at the same point.
  void append(Pos at, const T& v) {
    if (!breakpoints.empty() && breakpoints.back() == at) {
      breakpoints.pop_back();
      values.pop_back();
    }
    if (!values.empty() && values.back() == v) return;
    breakpoints.push_back(at);
    values.push_back(v);
  }
};

template <class T>
class Evaluator {
 public:
  Evaluator() = default;
  Evaluator(StepFunction<T> step, Pos universe) : step_(std::move(step)) {
    if (!step_.empty() && (step_.last > universe || step_.breakpoints.front() < 1)) {
      throw std::invalid_argument("step function exceeds its universe");
    }
    marks_ = BitVector::from_positions(universe, step_.breakpoints);
  }

  bool in_domain(Pos i) const { return step_.in_domain(i); }
  const T& evaluate(Pos i) const {
    if (!step_.in_domain(i)) throw std::out_of_range("evaluator argument outside domain");
    return step_.values[static_cast<std::size_t>(marks_.rank(i) - 1)];
  }
  const StepFunction<T>& step() const { return step_; }
  std::size_t memory_bytes() const {
    return marks_.memory_bytes() + step_.breakpoints.size() * sizeof(Pos) +
           step_.values.size() * sizeof(T);
  }

 private:
  StepFunction<T> step_;
  BitVector marks_;
};

// Family of d-sparse sets A_i; locate(i, P) returns A_i ∩ P for |P| = O(d)
// with one hash probe per block of width 8d touched by P. Positions of one
// (set, block) pair sit contiguously in a shared array.
class Locator {
 public:
  Locator() = default;
  // entries are (set index, position); throws SparsityViolation when two
  // positions of one set are less than min_gap apart. min_gap defaults to
  // d + 1 and may not be smaller than d.
  Locator(std::vector<std::pair<std::uint64_t, Pos>> entries, Pos d, Pos min_gap = 0);

  Pos width() const { return d_; }
  std::size_t size() const { return pos_.size(); }
  // Appends A_i ∩ [lo, hi] to out in increasing order.
  template <typename Out>
  void locate_into(std::uint64_t set, Pos lo, Pos hi, Out&& push) const {
    if (lo < 1) lo = 1;
    if (lo > hi) return;
    for (Pos b = (lo + bw_ - 1) / bw_, last = (hi + bw_ - 1) / bw_; b <= last; ++b) {
      auto it = map_.find(key(b, set));
      if (it == map_.end()) continue;
      const auto off = static_cast<std::size_t>(it->second >> 32);
      const auto cnt = static_cast<std::size_t>(it->second & 0xffffffffu);
      for (std::size_t j = off; j < off + cnt; ++j) {
        const Pos p = pos_[j];
        if (p >= lo && p <= hi) push(p);
      }
    }
  }
  void locate(std::uint64_t set, Pos lo, Pos hi, std::vector<Pos>& out) const {
    locate_into(set, lo, hi, [&](Pos p) { out.push_back(p); });
  }
  std::vector<Pos> locate(std::uint64_t set, Pos lo, Pos hi) const {
    std::vector<Pos> out;
    locate(set, lo, hi, out);
    return out;
  }
  std::size_t memory_bytes() const {
    return map_.capacity() * (2 * sizeof(std::uint64_t) + 1) + pos_.capacity() * sizeof(std::uint32_t);
  }

 private:
  static constexpr Pos block_factor = 8;
  static std::uint64_t key(Pos block, std::uint64_t set) {
    return (static_cast<std::uint64_t>(block) << 32) ^ set;
  }
  Pos d_ = 1;
  Pos bw_ = block_factor;
  std::vector<std::uint32_t> pos_;
  absl::flat_hash_map<std::uint64_t, std::uint64_t> map_;  // key -> offset << 32 | count
};

}  // namespace ipm
