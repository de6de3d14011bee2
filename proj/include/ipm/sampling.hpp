#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "ipm/core_text.hpp"
#include "ipm/dbf.hpp"
#include "ipm/runs.hpp"
#include "ipm/succinct.hpp"

namespace ipm {

struct BuildConfig {
  std::uint64_t seed = 1;
  // Identity permutations; reproduces the lexicographic assignment.
  bool deterministic = false;
  // Retry while the total candidate count exceeds threshold * n.
  double threshold = 40.0;
  int attempt_cap = 32;
  bool operator==(const BuildConfig&) const = default;
};

// Sample of a (k+1)-basic fragment; pos == 0 means undefined.
struct SampleRef {
  std::uint32_t pos = 0;
  std::uint32_t id = 0;
  bool defined() const { return pos != 0; }
  bool operator==(const SampleRef&) const = default;
};

struct Candidate {
  Pos pos;
  std::uint32_t id;
};

// A plus every maximal sub-interval of interval \ A longer than delta.
std::vector<Pos> fill_gaps(std::span<const Pos> a, Pos delta, Fragment interval);

// G(i) = lexicographically smallest (id, pos) with pos in [i, i+d], for i in
// [1, m-d]; input sorted by position. Runs in O(|input|).
StepFunction<SampleRef> slider(std::span<const Candidate> sorted, Pos d, Pos m);

struct CandidateSet {
  std::vector<std::vector<Candidate>> levels;  // C_k with ID_k, sorted by pos
  Pos total() const {
    Pos t = 0;
    for (const auto& l : levels) t += static_cast<Pos>(l.size());
    return t;
  }
};

// Number of sample levels: k in [0, floor(log n) - 1].
inline int sample_levels(Pos n) { return n >= 2 ? floor_log2(static_cast<std::uint64_t>(n)) : 0; }

// One pass over the DBF levels; rng == nullptr selects identity permutations.
CandidateSet build_candidates(const Text& t, const PeriodicTables& tables, std::mt19937_64* rng);

struct RetryResult {
  CandidateSet candidates;
  int attempts = 0;
  std::vector<Pos> totals;  // candidate count of every attempt
};

// Calls builder(attempt) for attempt = 0, 1, ... until the total is at most
// limit; throws AttemptCap after `cap` failures.
RetryResult retry_until_small(const std::function<CandidateSet(int)>& builder, Pos limit, int cap);

// Per-attempt RNG seed derived from the configured seed.
std::uint64_t attempt_seed(std::uint64_t seed, int attempt);

// Candidate construction with retries as configured.
RetryResult sample_candidates(const Text& t, const PeriodicTables& tables, const BuildConfig& cfg);

// sample_k for every level as step functions over [1, n_{k+1}].
std::vector<StepFunction<SampleRef>> assemble_assignment(const CandidateSet& c,
                                                         const PeriodicTables& tables, Pos n);

struct LevelStructures {
  Evaluator<SampleRef> eval;
  Locator locator;
};

// Evaluator over sample_k and the locator of sample positions keyed by id
// (block width max(1, 2^{k-1})).
LevelStructures build_level_structures(StepFunction<SampleRef> step, int k, Pos n);

}  // namespace ipm
