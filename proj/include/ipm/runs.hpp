#pragma once

#include <absl/container/flat_hash_map.h>

#include <array>
#include <cstdint>
#include <vector>

#include "ipm/core_text.hpp"
#include "ipm/succinct.hpp"

namespace ipm {

// (lead, reps, trail): the run is root' root^reps root'' where root is the
// Lyndon root, root' a proper suffix and root'' a proper prefix of it.
struct LyndonRep {
  Pos lead = 0;
  Pos reps = 0;
  Pos trail = 0;
  bool operator==(const LyndonRep&) const = default;
};

struct Run {
  Fragment frag;
  Pos period = 0;
  LyndonRep lyndon;

  Pos root_start() const { return frag.start + lyndon.lead; }
  Fragment root() const { return {root_start(), root_start() + period - 1}; }
  bool operator==(const Run&) const = default;
};

// All maximal repetitions, sorted by (start, end). Uses Lyndon arrays for
// both symbol orders and LCE extension.
std::vector<Run> compute_runs(const TextIndex& ix);

// Lyndon representation of a periodic fragment u that lies inside run a.
LyndonRep lyndon_rep_within(const Run& a, Fragment u);

// Equal period and equal Lyndon roots.
bool runs_compatible(const TextIndex& ix, const Run& a, const Run& b);

// Occurrences (1-based within y) of x in y when both are periodic with the
// same Lyndon root of length root_len.
ArithProgression lyndon_occurrences(LyndonRep x, LyndonRep y, Pos root_len, Pos x_len, Pos y_len);

// Number of levels k in [0, floor(log n)].
inline int level_count(Pos n) { return floor_log2(static_cast<std::uint64_t>(n)) + 1; }

// P_k = {i in [1, n_k] : BF_k(i) periodic} per level, as sorted disjoint
// blocks plus a bit vector; N_k is the complement inside [1, n_k].
class PeriodicTables {
 public:
  struct Level {
    std::vector<Fragment> periodic;
    std::vector<Fragment> nonperiodic;
    BitVector bits;
  };

  PeriodicTables() = default;
  PeriodicTables(const std::vector<Run>& runs, Pos n);
  // Rebuilds from stored P_k blocks.
  PeriodicTables(std::vector<std::vector<Fragment>> periodic_blocks, Pos n);

  int levels() const { return static_cast<int>(levels_.size()); }
  const Level& level(int k) const { return levels_[static_cast<std::size_t>(k)]; }
  bool is_periodic(int k, Pos i) const { return level(k).bits.get(i); }
  // Smallest i in P_k with BF_k(i) inside f, kNone otherwise.
  Pos find_periodic_kbasic(int k, Fragment f) const;
  std::size_t memory_bytes() const;

 private:
  void finish(Pos n);
  std::vector<Level> levels_;
};

// Up to two run indices; unused slots hold npos.
struct RunPair {
  static constexpr std::uint32_t npos = UINT32_MAX;
  std::array<std::uint32_t, 2> ids{npos, npos};
  bool operator==(const RunPair&) const = default;
  int size() const { return (ids[0] != npos) + (ids[1] != npos); }
};

// R_k per level as a step function over [1, n].
class RunExtensionTable {
 public:
  RunExtensionTable() = default;
  RunExtensionTable(const std::vector<Run>& runs, Pos n);
  RunExtensionTable(std::vector<StepFunction<RunPair>> steps, Pos n);

  int levels() const { return static_cast<int>(levels_.size()); }
  const RunPair& at(int k, Pos i) const { return levels_[static_cast<std::size_t>(k)].evaluate(i); }
  const StepFunction<RunPair>& step(int k) const { return levels_[static_cast<std::size_t>(k)].step(); }
  std::size_t memory_bytes() const;

  // Run indices of R_k(i'), i.e. the interval of positions where run r is
  // listed at level k; empty when r is not a k-run.
  static Fragment interval(const Run& r, int k);

 private:
  std::vector<Evaluator<RunPair>> levels_;
};

// Per level k: (block ceil(pos/2^k), period) -> k-runs meeting that block.
class KRunLocator {
 public:
  static constexpr std::size_t max_per_key = 4;

  KRunLocator() = default;
  KRunLocator(const std::vector<Run>& runs, Pos n);

  // Appends indices of k-runs with the given period that intersect [lo, hi].
  void locate(const std::vector<Run>& runs, int k, Pos period, Pos lo, Pos hi,
              std::vector<std::uint32_t>& out) const;
  std::size_t entries() const;
  std::size_t memory_bytes() const;

 private:
  struct Slot {
    std::array<std::uint32_t, max_per_key> ids{};
    std::uint32_t count = 0;
  };
  std::vector<absl::flat_hash_map<std::uint64_t, Slot>> levels_;
};

// The runs-based half of the index (the periodic query path is built on top of it).
class RunsIndex {
 public:
  RunsIndex() = default;
  RunsIndex(const TextIndex& ix);
  RunsIndex(std::vector<Run> runs, PeriodicTables tables, RunExtensionTable ext, Pos n);

  const std::vector<Run>& runs() const { return runs_; }
  const PeriodicTables& tables() const { return tables_; }
  const RunExtensionTable& extension() const { return ext_; }
  const KRunLocator& kruns() const { return kruns_; }

  // The run extending u with the same shortest period, or nullptr
  // when u is not periodic.
  const Run* run_of(Fragment u) const;
  // k-runs of the given period meeting p.
  std::vector<const Run*> locate_kruns(int k, Pos period, Fragment p) const;
  std::size_t memory_bytes() const;

 private:
  std::vector<Run> runs_;
  PeriodicTables tables_;
  RunExtensionTable ext_;
  KRunLocator kruns_;
};

}  // namespace ipm
