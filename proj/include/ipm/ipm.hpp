#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "ipm/core_text.hpp"
#include "ipm/runs.hpp"
#include "ipm/sampling.hpp"

namespace ipm {

struct BuildStats {
  int attempts = 0;
  std::vector<Pos> attempt_totals;  // sum of |C_k| per attempt
  Pos candidates = 0;               // sum of |C_k| of the accepted attempt
  Pos sample_steps = 0;             // total step-representation size of sample_k
  bool operator==(const BuildStats&) const = default;
};

inline constexpr std::uint32_t kFormatVersion = 1;

// layer(m) = floor(log2 m) - 1 for m >= 2.
inline int layer(Pos m) { return floor_log2(static_cast<std::uint64_t>(m)) - 1; }

class IpmIndex {
 public:
  IpmIndex() = default;
  // Throws std::invalid_argument on an empty text and AttemptCap when the
  // candidate retry budget runs out.
  static IpmIndex build(Text text, const BuildConfig& cfg = {});

  const Text& text() const { return ix_.text(); }
  Pos size() const { return ix_.size(); }
  const TextIndex& text_index() const { return ix_; }
  const RunsIndex& runs() const { return runs_; }
  int levels() const { return static_cast<int>(levels_.size()); }
  const LevelStructures& level(int k) const { return levels_[static_cast<std::size_t>(k)]; }
  const BuildConfig& config() const { return cfg_; }
  const BuildStats& stats() const { return stats_; }

  // All starts of word(x) inside y as one progression; |y| <= 2|x|,
  // otherwise ConstraintViolation.
  ArithProgression query(Fragment x, Fragment y) const;
  // Same answer, but never falls back to scanning y for short x (|x| >= 2
  // still goes through the samples or the runs). Used to test the index.
  ArithProgression query_indexed(Fragment x, Fragment y) const;
  // Any |y|: windows of length 2|x| with step |x|; adjacent results are
  // merged when they chain.
  std::vector<ArithProgression> query_long(Fragment x, Fragment y) const;
  // True when query_indexed(x, y) takes the runs-based path.
  bool uses_periodic_path(Fragment x) const;

  std::vector<std::uint8_t> serialize() const;
  static IpmIndex deserialize(std::span<const std::uint8_t> bytes);
  void save(const std::filesystem::path& path) const;
  static IpmIndex load(const std::filesystem::path& path);

  std::size_t memory_bytes() const;

 private:
  ArithProgression indexed(Fragment x, Fragment y) const;
  BuildConfig cfg_;
  BuildStats stats_;
  TextIndex ix_;
  RunsIndex runs_;
  std::vector<LevelStructures> levels_;
};

// Appends b to parts, merging it into the last progression when the union
// is still a single progression.
void append_chained(std::vector<ArithProgression>& parts, const ArithProgression& b);

}  // namespace ipm
