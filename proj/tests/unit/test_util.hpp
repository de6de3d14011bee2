#pragma once

#include <random>
#include <string>

#include "ipm/core_text.hpp"

namespace testutil {

inline ipm::Text random_text(std::mt19937_64& rng, std::size_t n, std::size_t sigma) {
  std::string s(n, 'a');
  for (auto& c : s) c = static_cast<char>('a' + rng() % sigma);
  return ipm::Text(s);
}

inline ipm::Fragment random_fragment(std::mt19937_64& rng, ipm::Pos n) {
  ipm::Pos a = 1 + static_cast<ipm::Pos>(rng() % static_cast<std::uint64_t>(n));
  ipm::Pos b = 1 + static_cast<ipm::Pos>(rng() % static_cast<std::uint64_t>(n));
  if (a > b) std::swap(a, b);
  return {a, b};
}

inline std::string word(const ipm::Text& t, ipm::Fragment f) {
  return std::string(t.view().substr(static_cast<std::size_t>(f.start - 1),
                                     static_cast<std::size_t>(f.length())));
}

// Concatenation of random powers of short random roots; rich in runs.
inline ipm::Text periodic_text(std::mt19937_64& rng, std::size_t n, std::size_t sigma) {
  std::string s;
  while (s.size() < n) {
    std::string root(1 + rng() % 5, 'a');
    for (auto& c : root) c = static_cast<char>('a' + rng() % sigma);
    const std::size_t reps = 1 + rng() % 8;
    for (std::size_t r = 0; r < reps; ++r) s += root;
    if (rng() % 3 == 0) s += static_cast<char>('a' + rng() % sigma);
  }
  s.resize(n);
  return ipm::Text(s);
}

inline int layer(ipm::Pos m) { return ipm::floor_log2(static_cast<std::uint64_t>(m)) - 1; }

}  // namespace testutil
