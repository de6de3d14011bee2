#include "ipm/corpus.hpp"

#include <bit>

namespace ipm::corpus {

Text random_text(std::mt19937_64& rng, Pos n, int sigma) {
  std::string s(static_cast<std::size_t>(n), 'a');
  for (auto& c : s) c = static_cast<char>('a' + rng() % static_cast<std::uint64_t>(sigma));
  return Text(s);
}

Text periodic_text(std::mt19937_64& rng, Pos n, int sigma) {
  std::string s;
  while (static_cast<Pos>(s.size()) < n) {
    std::string root(1 + rng() % 5, 'a');
    for (auto& c : root) c = static_cast<char>('a' + rng() % static_cast<std::uint64_t>(sigma));
    const std::size_t reps = 1 + rng() % 8;
    for (std::size_t r = 0; r < reps; ++r) s += root;
    if (rng() % 3 == 0) s += static_cast<char>('a' + rng() % static_cast<std::uint64_t>(sigma));
  }
  s.resize(static_cast<std::size_t>(n));
  return Text(s);
}

Text unary(Pos n) { return Text(std::string(static_cast<std::size_t>(n), 'a')); }

Text alternating(Pos n) {
  std::string s(static_cast<std::size_t>(n), 'a');
  for (std::size_t i = 1; i < s.size(); i += 2) s[i] = 'b';
  return Text(s);
}

Text fibonacci(Pos n) {
  std::string a = "a", b = "ab";
  while (static_cast<Pos>(b.size()) < n) {
    std::string c = b + a;
    a = std::move(b);
    b = std::move(c);
  }
  b.resize(static_cast<std::size_t>(n));
  return Text(b);
}

Text thue_morse(Pos n) {
  std::string s(static_cast<std::size_t>(n), 'a');
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (std::popcount(i) % 2) s[i] = 'b';
  }
  return Text(s);
}

}  // namespace ipm::corpus
