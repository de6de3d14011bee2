#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "ipm/ipm.hpp"

namespace ipm {

struct LatencyStats {
  std::string family;
  Pos x_len = 0;  // fixed pattern length, 0 for mixed lengths
  std::size_t queries = 0;
  double mean_ns = 0;
  double p50_ns = 0;
  double p90_ns = 0;
  double p99_ns = 0;
};

struct BenchOptions {
  std::size_t queries = 100000;
  std::uint64_t seed = 1;
  // fixed |x| values for the PERIOD family; empty skips it
  std::vector<Pos> period_lengths;
  bool applications = true;  // PS, TWOPER, CYC besides IPM
};

struct BenchPoint {
  Pos n = 0;
  double build_ms = 0;
  std::size_t serialized_bytes = 0;
  std::size_t memory_bytes = 0;
  std::vector<LatencyStats> families;
};

// IPM queries with |x| = 2^e + r for e uniform in [1, 10], r < 2^e (capped
// at n/2), and |x| <= |y| <= 2|x|; half of the y windows contain x's start.
LatencyStats bench_ipm(const IpmIndex& idx, std::size_t queries, std::uint64_t seed);
LatencyStats bench_period(const IpmIndex& idx, Pos x_len, std::size_t queries, std::uint64_t seed);

BenchPoint bench_text(const Text& t, const BenchOptions& opt);
void print_bench(const BenchPoint& p, std::ostream& out);

}  // namespace ipm
