#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "ipm/core_text.hpp"

namespace ipm {

// Uniform draw from [0, bound) that does not depend on the standard
// library's distribution implementation.
std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t bound);

// One level of the dictionary of basic factors: rank-ordered identifiers of
// all k-basic factors, a random bijection on them and occurrence buckets.
class DbfLevel {
 public:
  int k() const { return k_; }
  Pos size() const { return static_cast<Pos>(ids_.size()); }  // n_k
  Pos count() const { return m_; }                            // m_k
  // DBF_k[i]: rank-ordered identifier.
  std::uint32_t rank_id(Pos i) const { return ids_[static_cast<std::size_t>(i - 1)]; }
  // ID_k[i] = pi_k(DBF_k[i]).
  std::uint32_t id(Pos i) const { return perm_[ids_[static_cast<std::size_t>(i - 1)] - 1]; }
  // Positions i with ID_k[i] == id, ascending; empty for unknown ids.
  std::span<const std::uint32_t> occurrences(std::uint32_t id) const;

  // Level 0. With rng == nullptr the permutation is the identity.
  static DbfLevel first(const Text& t, std::mt19937_64* rng);
  // Level k+1 from level k; requires 2^{k+1} <= n.
  static DbfLevel next(const DbfLevel& prev, std::mt19937_64* rng);

 private:
  void finish(std::mt19937_64* rng);

  int k_ = 0;
  Pos m_ = 0;
  Pos n_ = 0;  // text length
  std::vector<std::uint32_t> ids_;
  std::vector<std::uint32_t> perm_;
  std::vector<std::uint32_t> offsets_;  // bucket starts by permuted id
  std::vector<std::uint32_t> positions_;
};

}  // namespace ipm
