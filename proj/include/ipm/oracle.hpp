#pragma once

// Brute-force reference implementations. They share nothing with the index
// beyond Text and Fragment and are meant for tests and the selftest command.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ipm/core_text.hpp"

namespace ipm::oracle {

inline constexpr Pos default_cap = 5000;

struct NaiveRun {
  Pos start;
  Pos end;
  Pos period;
  bool operator==(const NaiveRun&) const = default;
};

struct NaivePhrase {
  bool literal = false;
  std::uint8_t symbol = 0;
  Pos ref = 0;
  Pos len = 0;
  bool operator==(const NaivePhrase&) const = default;
};

// (id, pos) pair; pos == 0 encodes an undefined value.
struct NaiveSample {
  Pos pos = 0;
  Pos id = 0;
  bool operator==(const NaiveSample&) const = default;
};

// Start positions of word(x) inside y.
std::vector<Pos> naive_ipm(const Text& t, Fragment x, Fragment y, Pos cap = default_cap);
bool naive_occurs(const Text& t, Fragment x, Fragment y, Pos cap = default_cap);
// All periods of word(x), ascending.
std::vector<Pos> naive_periods(const Text& t, Fragment x, Pos cap = default_cap);
Pos naive_shortest_period(const Text& t, Fragment x, Pos cap = default_cap);
std::vector<NaiveRun> naive_runs(const Text& t, Pos cap = default_cap);
// Shifts r in [0, d-1] with word(y) == Rot^r(word(x)), Rot moving the last
// symbol to the front.
std::vector<Pos> naive_rotations(const Text& t, Fragment x, Fragment y, Pos cap = default_cap);
// Lengths L in [d, 2d] with x[1..L] == suffix of y of length L.
std::vector<Pos> naive_prefix_suffix(const Text& t, Fragment x, Fragment y, Pos d,
                                     Pos cap = default_cap);
// Longest prefix of x that occurs in y.
Pos naive_blcp(const Text& t, Fragment x, Fragment y, Pos cap = default_cap);
// max over s in [l, r] of lcp(t[s..n], x), capped at |x|.
Pos naive_ilcp(const Text& t, Pos l, Pos r, Fragment x, Pos cap = default_cap);
// Greedy LZ77 phrases of x inside y$x with the leftmost-reference tie-break.
std::vector<NaivePhrase> naive_lz(const Text& t, Fragment x, Fragment y, Pos cap = default_cap);

std::vector<Pos> naive_fillgaps(const std::vector<Pos>& a, Pos delta, Pos lo, Pos hi);
// G(i) = min (id, pos) with pos in [i, i+d], for i in [1, m-d].
std::vector<NaiveSample> naive_slider(const std::vector<std::pair<Pos, Pos>>& id_pos, Pos d,
                                      Pos m);
// Identifiers of all k-basic factors by direct sorting, rank ordered from 1.
std::vector<Pos> naive_basic_ids(const Text& t, int k, Pos cap = default_cap);
// sample_k(i) for i in [1, n - 2^{k+1} + 1] given ids[j-1] = ID_k[j].
std::vector<NaiveSample> naive_argmin_assignment(const Text& t, int k,
                                                 const std::vector<Pos>& ids,
                                                 Pos cap = default_cap);

}  // namespace ipm::oracle
