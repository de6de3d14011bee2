#pragma once

#include "ipm/core_text.hpp"
#include "ipm/runs.hpp"

namespace ipm {

// Occurrences of word(x) starting inside y (absolute positions) when x
// contains a periodic k-basic fragment; |y| <= 2|x| and 2^{k+1} <= |x|.
// Throws std::logic_error if x has no periodic k-basic fragment.
ArithProgression query_periodic(const TextIndex& ix, const RunsIndex& runs, Fragment x, Fragment y,
                                int k);

}  // namespace ipm
