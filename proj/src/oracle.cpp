#include "ipm/oracle.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

namespace ipm::oracle {
namespace {

void check_cap(const Text& t, Pos cap) {
  if (t.size() > cap) {
    throw std::length_error("oracle input of length " + std::to_string(t.size()) +
                            " exceeds cap " + std::to_string(cap));
  }
}

std::vector<int> symbols(const Text& t, Fragment f) {
  check_fragment(f, t.size());
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(f.length()));
  for (Pos i = f.start; i <= f.end; ++i) out.push_back(t[i]);
  return out;
}

std::vector<Pos> z_function(const std::vector<int>& s) {
  const Pos n = static_cast<Pos>(s.size());
  std::vector<Pos> z(s.size(), 0);
  if (n == 0) return z;
  z[0] = n;
  Pos l = 0, r = 0;
  for (Pos i = 1; i < n; ++i) {
    Pos k = 0;
    if (i < r) k = std::min(r - i, z[static_cast<std::size_t>(i - l)]);
    while (i + k < n && s[static_cast<std::size_t>(k)] == s[static_cast<std::size_t>(i + k)]) ++k;
    z[static_cast<std::size_t>(i)] = k;
    if (i + k > r) {
      l = i;
      r = i + k;
    }
  }
  return z;
}

// z values of `text` against `pattern`: lcp(text[j..], pattern) for each j.
std::vector<Pos> match_lengths(const std::vector<int>& pattern, const std::vector<int>& text) {
  std::vector<int> s = pattern;
  s.push_back(-1);
  s.insert(s.end(), text.begin(), text.end());
  auto z = z_function(s);
  return std::vector<Pos>(z.begin() + static_cast<std::ptrdiff_t>(pattern.size()) + 1, z.end());
}

std::vector<Pos> failure(const std::vector<int>& s) {
  std::vector<Pos> f(s.size() + 1, 0);
  if (s.empty()) return f;
  f[0] = -1;
  Pos k = -1;
  for (std::size_t i = 0; i < s.size(); ++i) {
    while (k >= 0 && s[static_cast<std::size_t>(k)] != s[i]) k = f[static_cast<std::size_t>(k)];
    ++k;
    f[i + 1] = k;
  }
  return f;
}

}  // namespace

std::vector<Pos> naive_ipm(const Text& t, Fragment x, Fragment y, Pos cap) {
  (void)cap;
  const auto px = symbols(t, x);
  const auto py = symbols(t, y);
  std::vector<Pos> out;
  if (px.size() > py.size()) return out;
  const auto m = match_lengths(px, py);
  for (std::size_t j = 0; j < m.size(); ++j) {
    if (m[j] >= x.length()) out.push_back(y.start + static_cast<Pos>(j));
  }
  return out;
}

bool naive_occurs(const Text& t, Fragment x, Fragment y, Pos cap) {
  return !naive_ipm(t, x, y, cap).empty();
}

std::vector<Pos> naive_periods(const Text& t, Fragment x, Pos cap) {
  (void)cap;
  const auto s = symbols(t, x);
  const auto f = failure(s);
  const Pos len = x.length();
  std::vector<Pos> out;
  for (Pos b = f[s.size()]; b > 0; b = f[static_cast<std::size_t>(b)]) out.push_back(len - b);
  out.push_back(len);
  std::sort(out.begin(), out.end());
  return out;
}

Pos naive_shortest_period(const Text& t, Fragment x, Pos cap) {
  return naive_periods(t, x, cap).front();
}

std::vector<NaiveRun> naive_runs(const Text& t, Pos cap) {
  check_cap(t, cap);
  const Pos n = t.size();
  std::vector<NaiveRun> out;
  for (Pos p = 1; 2 * p <= n; ++p) {
    Pos j = 1;
    while (j + p <= n) {
      if (t[j] != t[j + p]) {
        ++j;
        continue;
      }
      Pos b = j;
      while (b + 1 + p <= n && t[b + 1] == t[b + 1 + p]) ++b;
      const Fragment f{j, b + p};
      if (f.length() >= 2 * p && naive_shortest_period(t, f, cap) == p) {
        out.push_back({f.start, f.end, p});
      }
      j = b + 1;
    }
  }
  std::sort(out.begin(), out.end(), [](const NaiveRun& a, const NaiveRun& b) {
    return a.start != b.start ? a.start < b.start : a.end < b.end;
  });
  return out;
}

std::vector<Pos> naive_rotations(const Text& t, Fragment x, Fragment y, Pos cap) {
  (void)cap;
  std::vector<Pos> out;
  if (x.length() != y.length()) return out;
  const auto px = symbols(t, x);
  const auto py = symbols(t, y);
  const Pos d = x.length();
  // Rot^r(x) = x[d-r+1..d] x[1..d-r]
  const auto head = match_lengths(px, py);  // lcp(y[j+1..], x)
  const auto tail = match_lengths(py, px);  // lcp(x[j+1..], y)
  for (Pos r = 0; r < d; ++r) {
    const bool second = head[static_cast<std::size_t>(r)] >= d - r;
    const bool first = r == 0 || tail[static_cast<std::size_t>(d - r)] >= r;
    if (first && second) out.push_back(r);
  }
  return out;
}

std::vector<Pos> naive_prefix_suffix(const Text& t, Fragment x, Fragment y, Pos d, Pos cap) {
  (void)cap;
  std::vector<Pos> out;
  const auto px = symbols(t, x);
  const auto py = symbols(t, y);
  const auto m = match_lengths(px, py);
  const Pos ly = y.length();
  for (Pos len = d; len <= 2 * d; ++len) {
    if (len > x.length() || len > ly || len < 1) continue;
    if (m[static_cast<std::size_t>(ly - len)] >= len) out.push_back(len);
  }
  return out;
}

Pos naive_blcp(const Text& t, Fragment x, Fragment y, Pos cap) {
  (void)cap;
  const auto m = match_lengths(symbols(t, x), symbols(t, y));
  Pos best = 0;
  for (Pos v : m) best = std::max(best, v);
  return std::min(best, x.length());
}

Pos naive_ilcp(const Text& t, Pos l, Pos r, Fragment x, Pos cap) {
  (void)cap;
  if (l > r) return 0;
  const auto m = match_lengths(symbols(t, x), symbols(t, Fragment{l, t.size()}));
  Pos best = 0;
  for (Pos s = l; s <= r; ++s) best = std::max(best, m[static_cast<std::size_t>(s - l)]);
  return std::min(best, x.length());
}

std::vector<NaivePhrase> naive_lz(const Text& t, Fragment x, Fragment y, Pos cap) {
  check_cap(t, cap);
  std::vector<int> w = symbols(t, y);
  w.push_back(256);  // separator, distinct from every byte
  const Pos base = static_cast<Pos>(w.size());
  const auto px = symbols(t, x);
  w.insert(w.end(), px.begin(), px.end());
  const Pos total = static_cast<Pos>(w.size());
  std::vector<NaivePhrase> out;
  Pos pos = base;  // 0-based index into w
  while (pos < total) {
    std::vector<int> s(w.begin() + pos, w.end());
    s.push_back(-1);
    s.insert(s.end(), w.begin(), w.end());
    const auto z = z_function(s);
    const Pos off = total - pos + 1;
    Pos best = 0, ref = 0;
    for (Pos src = 0; src < pos; ++src) {
      const Pos len = z[static_cast<std::size_t>(off + src)];
      if (len > best) {
        best = len;
        ref = src;
      }
    }
    if (best == 0) {
      out.push_back({true, static_cast<std::uint8_t>(w[static_cast<std::size_t>(pos)]), 0, 0});
      pos += 1;
    } else {
      out.push_back({false, 0, ref + 1, best});
      pos += best;
    }
  }
  return out;
}

std::vector<Pos> naive_fillgaps(const std::vector<Pos>& a, Pos delta, Pos lo, Pos hi) {
  std::vector<char> in(static_cast<std::size_t>(std::max<Pos>(0, hi - lo + 1)), 0);
  for (Pos v : a) in[static_cast<std::size_t>(v - lo)] = 1;
  std::vector<char> add(in.size(), 0);
  for (Pos i = lo; i + delta <= hi; ++i) {
    bool free = true;
    for (Pos j = i; j <= i + delta && free; ++j) free = !in[static_cast<std::size_t>(j - lo)];
    if (free) {
      for (Pos j = i; j <= i + delta; ++j) add[static_cast<std::size_t>(j - lo)] = 1;
    }
  }
  std::vector<Pos> out;
  for (std::size_t i = 0; i < in.size(); ++i) {
    if (in[i] || add[i]) out.push_back(lo + static_cast<Pos>(i));
  }
  return out;
}

std::vector<NaiveSample> naive_slider(const std::vector<std::pair<Pos, Pos>>& id_pos, Pos d,
                                      Pos m) {
  std::vector<NaiveSample> out;
  for (Pos i = 1; i <= m - d; ++i) {
    NaiveSample best;
    for (const auto& [id, pos] : id_pos) {
      if (pos < i || pos > i + d) continue;
      if (best.pos == 0 || id < best.id || (id == best.id && pos < best.pos)) best = {pos, id};
    }
    out.push_back(best);
  }
  return out;
}

std::vector<Pos> naive_basic_ids(const Text& t, int k, Pos cap) {
  check_cap(t, cap);
  const Pos len = Pos{1} << k;
  const Pos nk = t.size() - len + 1;
  std::map<std::string, Pos> rank;
  const std::string_view s = t.view();
  for (Pos i = 1; i <= nk; ++i) {
    rank.emplace(std::string(s.substr(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(len))), 0);
  }
  Pos next = 0;
  for (auto& [word, id] : rank) id = ++next;
  std::vector<Pos> out;
  for (Pos i = 1; i <= nk; ++i) {
    out.push_back(rank[std::string(s.substr(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(len)))]);
  }
  return out;
}

std::vector<NaiveSample> naive_argmin_assignment(const Text& t, int k, const std::vector<Pos>& ids,
                                                 Pos cap) {
  check_cap(t, cap);
  const Pos len = Pos{1} << k;
  const Pos nk = t.size() - len + 1;
  const Pos nk1 = t.size() - 2 * len + 1;
  std::vector<char> periodic(static_cast<std::size_t>(std::max<Pos>(nk, 0)), 0);
  for (Pos j = 1; j <= nk; ++j) {
    periodic[static_cast<std::size_t>(j - 1)] =
        2 * naive_shortest_period(t, Fragment{j, j + len - 1}, cap) <= len;
  }
  std::vector<NaiveSample> out;
  for (Pos i = 1; i <= nk1; ++i) {
    NaiveSample best;
    bool undefined = false;
    for (Pos j = i; j <= i + len; ++j) {
      if (periodic[static_cast<std::size_t>(j - 1)]) {
        undefined = true;
        break;
      }
      const Pos id = ids[static_cast<std::size_t>(j - 1)];
      if (best.pos == 0 || id < best.id) best = {j, id};
    }
    out.push_back(undefined ? NaiveSample{} : best);
  }
  return out;
}

}  // namespace ipm::oracle
