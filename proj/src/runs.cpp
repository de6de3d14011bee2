#include "ipm/runs.hpp"

#include <algorithm>
#include <stdexcept>

namespace ipm {
namespace {

// lambda[i] = smallest j > i with isa[j] < isa[i], or n (0-based).
std::vector<std::uint32_t> next_smaller(const std::vector<std::uint32_t>& isa) {
  const std::size_t n = isa.size();
  std::vector<std::uint32_t> out(n);
  std::vector<std::uint32_t> stack;
  for (std::size_t i = n; i-- > 0;) {
    while (!stack.empty() && isa[stack.back()] > isa[i]) stack.pop_back();
    out[i] = stack.empty() ? static_cast<std::uint32_t>(n) : stack.back();
    stack.push_back(static_cast<std::uint32_t>(i));
  }
  return out;
}

Pos mod_floor(Pos a, Pos m) { return ((a % m) + m) % m; }

}  // namespace

std::vector<Run> compute_runs(const TextIndex& ix) {
  const Pos n = ix.size();
  const auto s = ix.text().bytes();
  std::vector<std::uint8_t> rev(s.rbegin(), s.rend());
  const TextIndex back{Text(std::move(rev))};

  std::vector<std::uint32_t> isa0(static_cast<std::size_t>(n));
  for (Pos i = 1; i <= n; ++i) isa0[static_cast<std::size_t>(i - 1)] = static_cast<std::uint32_t>(ix.isa(i));
  std::vector<std::uint8_t> inv(s.begin(), s.end());
  for (auto& c : inv) c = static_cast<std::uint8_t>(255 - c);
  const auto sa1 = build_suffix_array(inv);
  std::vector<std::uint32_t> isa1(static_cast<std::size_t>(n));
  for (std::size_t r = 0; r < sa1.size(); ++r) isa1[sa1[r]] = static_cast<std::uint32_t>(r);

  std::vector<Run> found;
  for (const auto* isa : {&isa0, &isa1}) {
    const auto lambda = next_smaller(*isa);
    for (Pos i = 1; i <= n; ++i) {
      const Pos p = static_cast<Pos>(lambda[static_cast<std::size_t>(i - 1)]) + 1 - i;
      const Pos r = i + p <= n ? ix.lcp_suffixes(i, i + p) : 0;
      const Pos l = i > 1 ? back.lcp_suffixes(n - i + 2, n - i - p + 2) : 0;
      if (l + r >= p) found.push_back({{i - l, i + p + r - 1}, p, {}});
    }
  }
  std::sort(found.begin(), found.end(), [](const Run& a, const Run& b) {
    return a.frag.start != b.frag.start ? a.frag.start < b.frag.start : a.frag.end < b.frag.end;
  });
  found.erase(std::unique(found.begin(), found.end(),
                          [](const Run& a, const Run& b) { return a.frag == b.frag; }),
              found.end());

  for (Run& run : found) {
    // the minimal rotation starts where the suffix rank is smallest
    Pos best = run.frag.start;
    for (Pos q = run.frag.start + 1; q < run.frag.start + run.period; ++q) {
      if (isa0[static_cast<std::size_t>(q - 1)] < isa0[static_cast<std::size_t>(best - 1)]) best = q;
    }
    const Pos lead = best - run.frag.start;
    const Pos rest = run.frag.length() - lead;
    run.lyndon = {lead, rest / run.period, rest % run.period};
  }
  return found;
}

LyndonRep lyndon_rep_within(const Run& a, Fragment u) {
  const Pos p = a.period;
  const Pos lead = mod_floor(a.root_start() - u.start, p);
  const Pos rest = u.length() - lead;
  if (rest < 0) return {u.length(), 0, 0};
  return {lead, rest / p, rest % p};
}

bool runs_compatible(const TextIndex& ix, const Run& a, const Run& b) {
  if (&a == &b) return true;
  return a.period == b.period && fragments_equal(ix, a.root(), b.root());
}

ArithProgression lyndon_occurrences(LyndonRep x, LyndonRep y, Pos root_len, Pos x_len, Pos y_len) {
  const Pos last = y_len - x_len + 1;
  if (last < 1) return {};
  const Pos first = mod_floor(y.lead - x.lead, root_len) + 1;
  if (first > last) return {};
  return ArithProgression::make(first, root_len, (last - first) / root_len + 1);
}

// ---------------------------------------------------------------------------
// PeriodicTables

PeriodicTables::PeriodicTables(const std::vector<Run>& runs, Pos n) {
  const int levels = level_count(n);
  levels_.resize(static_cast<std::size_t>(levels));
  for (const Run& r : runs) {
    for (int k = 1; k < levels; ++k) {
      const Pos len = Pos{1} << k;
      if (2 * r.period > len) continue;
      if (len > r.frag.length()) break;
      levels_[static_cast<std::size_t>(k)].periodic.push_back({r.frag.start, r.frag.end - len + 1});
    }
  }
  for (auto& lv : levels_) {
    auto& v = lv.periodic;
    std::sort(v.begin(), v.end(), [](Fragment a, Fragment b) { return a.start < b.start; });
    std::vector<Fragment> merged;
    for (Fragment f : v) {
      if (!merged.empty() && f.start <= merged.back().end + 1) {
        merged.back().end = std::max(merged.back().end, f.end);
      } else {
        merged.push_back(f);
      }
    }
    v = std::move(merged);
  }
  finish(n);
}

PeriodicTables::PeriodicTables(std::vector<std::vector<Fragment>> periodic_blocks, Pos n) {
  if (static_cast<int>(periodic_blocks.size()) != level_count(n)) {
    throw std::invalid_argument("periodic tables level count mismatch");
  }
  levels_.resize(periodic_blocks.size());
  for (std::size_t k = 0; k < periodic_blocks.size(); ++k) levels_[k].periodic = std::move(periodic_blocks[k]);
  finish(n);
}

void PeriodicTables::finish(Pos n) {
  for (std::size_t k = 0; k < levels_.size(); ++k) {
    auto& lv = levels_[k];
    const Pos nk = n - (Pos{1} << k) + 1;
    lv.bits = BitVector(nk);
    lv.nonperiodic.clear();
    Pos next = 1;
    for (Fragment f : lv.periodic) {
      check_fragment(f, nk);
      if (f.start > next) lv.nonperiodic.push_back({next, f.start - 1});
      for (Pos i = f.start; i <= f.end; ++i) lv.bits.set(i);
      next = f.end + 1;
    }
    if (next <= nk) lv.nonperiodic.push_back({next, nk});
    lv.bits.finalize();
  }
}

Pos PeriodicTables::find_periodic_kbasic(int k, Fragment f) const {
  if (k < 0 || k >= levels()) return kNone;
  const Pos len = Pos{1} << k;
  if (f.length() < len) return kNone;
  const Pos i = level(k).bits.successor(f.start);
  return i != kNone && i + len - 1 <= f.end ? i : kNone;
}

std::size_t PeriodicTables::memory_bytes() const {
  std::size_t b = 0;
  for (const auto& lv : levels_) {
    b += lv.bits.memory_bytes() + (lv.periodic.size() + lv.nonperiodic.size()) * sizeof(Fragment);
  }
  return b;
}

// ---------------------------------------------------------------------------
// RunExtensionTable

Fragment RunExtensionTable::interval(const Run& r, int k) {
  const Pos len = Pos{1} << k;
  if (r.period >= len || r.frag.length() < len) return {1, 0};
  return {r.frag.start, std::min(r.frag.end - 2 * r.period, r.frag.end - len) + 1};
}

RunExtensionTable::RunExtensionTable(const std::vector<Run>& runs, Pos n) {
  const int levels = level_count(n);
  struct Event {
    Pos pos;
    int level;
    bool add;
    std::uint32_t run;
  };
  std::vector<Event> events;
  for (std::size_t id = 0; id < runs.size(); ++id) {
    for (int k = 1; k < levels; ++k) {
      const Fragment f = interval(runs[id], k);
      if (f.length() <= 0) continue;
      events.push_back({f.start, k, true, static_cast<std::uint32_t>(id)});
      events.push_back({f.end + 1, k, false, static_cast<std::uint32_t>(id)});
    }
  }
  // counting sort of all levels' events by position
  std::vector<std::size_t> bucket(static_cast<std::size_t>(n) + 3, 0);
  for (const Event& e : events) ++bucket[static_cast<std::size_t>(e.pos) + 1];
  for (std::size_t i = 1; i < bucket.size(); ++i) bucket[i] += bucket[i - 1];
  std::vector<Event> sorted(events.size());
  for (const Event& e : events) sorted[bucket[static_cast<std::size_t>(e.pos)]++] = e;

  std::vector<std::vector<Event>> per_level(static_cast<std::size_t>(levels));
  for (const Event& e : sorted) per_level[static_cast<std::size_t>(e.level)].push_back(e);

  for (int k = 0; k < levels; ++k) {
    const auto& ev = per_level[static_cast<std::size_t>(k)];
    StepFunction<RunPair> step;
    step.append(1, RunPair{});
    RunPair active;
    std::size_t i = 0;
    while (i < ev.size()) {
      const Pos at = ev[i].pos;
      std::size_t j = i;
      while (j < ev.size() && ev[j].pos == at) ++j;
      auto& ids = active.ids;
      for (std::size_t t = i; t < j; ++t) {
        if (ev[t].add) continue;
        if (ids[0] == ev[t].run) ids[0] = ids[1];
        ids[1] = RunPair::npos;
      }
      for (std::size_t t = i; t < j; ++t) {
        if (!ev[t].add) continue;
        if (ids[1] != RunPair::npos) throw std::logic_error("more than two runs in R_k(i)");
        ids[ids[0] == RunPair::npos ? 0 : 1] = ev[t].run;
        if (ids[1] != RunPair::npos && ids[1] < ids[0]) std::swap(ids[0], ids[1]);
      }
      i = j;
      if (at <= n) step.append(at, active);
    }
    step.last = n;
    levels_.emplace_back(std::move(step), n);
  }
}

RunExtensionTable::RunExtensionTable(std::vector<StepFunction<RunPair>> steps, Pos n) {
  if (static_cast<int>(steps.size()) != level_count(n)) {
    throw std::invalid_argument("run extension level count mismatch");
  }
  for (auto& s : steps) levels_.emplace_back(std::move(s), n);
}

std::size_t RunExtensionTable::memory_bytes() const {
  std::size_t b = 0;
  for (const auto& e : levels_) b += e.memory_bytes();
  return b;
}

// ---------------------------------------------------------------------------
// KRunLocator

KRunLocator::KRunLocator(const std::vector<Run>& runs, Pos n) {
  const int levels = level_count(n);
  levels_.resize(static_cast<std::size_t>(levels));
  for (std::size_t id = 0; id < runs.size(); ++id) {
    const Run& r = runs[id];
    for (int k = 1; k < levels; ++k) {
      const Pos len = Pos{1} << k;
      if (r.period >= len) continue;
      if (r.frag.length() < len) break;
      auto& map = levels_[static_cast<std::size_t>(k)];
      for (Pos b = (r.frag.start + len - 1) >> k, last = (r.frag.end + len - 1) >> k; b <= last; ++b) {
        Slot& slot = map[(static_cast<std::uint64_t>(b) << 32) | static_cast<std::uint64_t>(r.period)];
        if (slot.count == max_per_key) throw std::logic_error("more than four k-runs per locator key");
        slot.ids[slot.count++] = static_cast<std::uint32_t>(id);
      }
    }
  }
}

void KRunLocator::locate(const std::vector<Run>& runs, int k, Pos period, Pos lo, Pos hi,
                         std::vector<std::uint32_t>& out) const {
  if (k < 1 || k >= static_cast<int>(levels_.size()) || lo > hi) return;
  const auto& map = levels_[static_cast<std::size_t>(k)];
  const Pos len = Pos{1} << k;
  const std::size_t before = out.size();
  for (Pos b = (lo + len - 1) >> k, last = (hi + len - 1) >> k; b <= last; ++b) {
    auto it = map.find((static_cast<std::uint64_t>(b) << 32) | static_cast<std::uint64_t>(period));
    if (it == map.end()) continue;
    for (std::uint32_t t = 0; t < it->second.count; ++t) {
      const std::uint32_t id = it->second.ids[t];
      const Fragment f = runs[id].frag;
      if (f.end < lo || f.start > hi) continue;
      if (std::find(out.begin() + static_cast<std::ptrdiff_t>(before), out.end(), id) == out.end()) {
        out.push_back(id);
      }
    }
  }
}

std::size_t KRunLocator::entries() const {
  std::size_t e = 0;
  for (const auto& m : levels_) e += m.size();
  return e;
}

std::size_t KRunLocator::memory_bytes() const {
  std::size_t b = 0;
  for (const auto& m : levels_) b += m.capacity() * (sizeof(std::uint64_t) + sizeof(Slot) + 1);
  return b;
}

// ---------------------------------------------------------------------------
// RunsIndex

RunsIndex::RunsIndex(const TextIndex& ix)
    : runs_(compute_runs(ix)),
      tables_(runs_, ix.size()),
      ext_(runs_, ix.size()),
      kruns_(runs_, ix.size()) {}

RunsIndex::RunsIndex(std::vector<Run> runs, PeriodicTables tables, RunExtensionTable ext, Pos n)
    : runs_(std::move(runs)), tables_(std::move(tables)), ext_(std::move(ext)), kruns_(runs_, n) {}

const Run* RunsIndex::run_of(Fragment u) const {
  const Pos len = u.length();
  if (len < 2) return nullptr;
  const int k = floor_log2(static_cast<std::uint64_t>(len));
  if (k >= ext_.levels()) return nullptr;
  const RunPair& rp = ext_.at(k, u.start);
  for (std::uint32_t id : rp.ids) {
    if (id == RunPair::npos) continue;
    const Run& r = runs_[id];
    if (r.frag.contains(u) && 2 * r.period <= len) return &r;
  }
  return nullptr;
}

std::vector<const Run*> RunsIndex::locate_kruns(int k, Pos period, Fragment p) const {
  std::vector<std::uint32_t> ids;
  kruns_.locate(runs_, k, period, p.start, p.end, ids);
  std::vector<const Run*> out;
  for (auto id : ids) out.push_back(&runs_[id]);
  return out;
}

std::size_t RunsIndex::memory_bytes() const {
  return runs_.size() * sizeof(Run) + tables_.memory_bytes() + ext_.memory_bytes() +
         kruns_.memory_bytes();
}

}  // namespace ipm
