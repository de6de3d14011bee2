#pragma once

#include <vector>

#include "ipm/core_text.hpp"
#include "ipm/ipm.hpp"
#include "ipm/runs.hpp"

namespace ipm {

// Disjoint progressions of period values, ascending.
struct PeriodSet {
  std::vector<ArithProgression> progressions;

  std::vector<Pos> elements() const;
  bool operator==(const PeriodSet&) const = default;
};

struct TwoPeriod {
  bool periodic = false;
  Pos period = 0;  // shortest period when periodic, 0 otherwise
  bool operator==(const TwoPeriod&) const = default;
};

// Lengths L in [d, 2d] such that the length-L prefix of x equals the
// length-L suffix of y. Throws std::invalid_argument when d < 1.
ArithProgression prefix_suffix(const IpmIndex& idx, Fragment x, Fragment y, Pos d);

// Every period of word(x), including |x|.
PeriodSet period_query(const IpmIndex& idx, Fragment x);

// Whether x is periodic (shortest period p with 2p <= |x|), and p if so.
TwoPeriod two_period_query(const RunsIndex& runs, Fragment x);

// word(x) is not a proper power.
bool is_primitive(const RunsIndex& runs, Fragment x);

// Shifts r in [0, |x|-1] with word(y) == Rot^r(word(x)), where Rot moves the
// last symbol to the front. Empty when |x| != |y|.
ArithProgression cyclic_equivalence(const IpmIndex& idx, Fragment x, Fragment y);

}  // namespace ipm
