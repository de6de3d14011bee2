#pragma once

#include <random>
#include <string>

#include "ipm/core_text.hpp"

namespace ipm::corpus {

// Uniform symbols from 'a', 'a'+1, ..., 'a'+sigma-1.
Text random_text(std::mt19937_64& rng, Pos n, int sigma);
// Concatenated random powers of short roots; dense in runs.
Text periodic_text(std::mt19937_64& rng, Pos n, int sigma);
Text unary(Pos n);
// (ab)^{n/2}, cut to length n.
Text alternating(Pos n);
Text fibonacci(Pos n);
Text thue_morse(Pos n);

}  // namespace ipm::corpus
