#include "ipm/ipm.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

#include "ipm/errors.hpp"
#include "ipm/ipm_periodic.hpp"

namespace ipm {
namespace {

// Patterns up to this length are matched by scanning y directly.
constexpr Pos kDirectScan = 32;

constexpr char kMagic[4] = {'I', 'P', 'M', 'X'};

constexpr std::uint32_t tag(const char (&s)[5]) {
  return static_cast<std::uint32_t>(static_cast<unsigned char>(s[0])) |
         static_cast<std::uint32_t>(static_cast<unsigned char>(s[1])) << 8 |
         static_cast<std::uint32_t>(static_cast<unsigned char>(s[2])) << 16 |
         static_cast<std::uint32_t>(static_cast<unsigned char>(s[3])) << 24;
}

class Writer {
 public:
  void u8(std::uint8_t v) { buf_.push_back(v); }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) buf_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  void var(std::uint64_t v) {
    while (v >= 0x80) {
      buf_.push_back(static_cast<std::uint8_t>(v | 0x80));
      v >>= 7;
    }
    buf_.push_back(static_cast<std::uint8_t>(v));
  }
  void bytes(std::span<const std::uint8_t> b) { buf_.insert(buf_.end(), b.begin(), b.end()); }
  void section(std::uint32_t t, const Writer& payload) {
    u32(t);
    u64(payload.buf_.size());
    bytes(payload.buf_);
  }
  std::vector<std::uint8_t>& data() { return buf_; }

 private:
  std::vector<std::uint8_t> buf_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> b) : b_(b) {}
  bool done() const { return at_ == b_.size(); }
  std::uint8_t u8() {
    need(1);
    return b_[at_++];
  }
  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(b_[at_++]) << (8 * i);
    return v;
  }
  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b_[at_++]) << (8 * i);
    return v;
  }
  double f64() { return std::bit_cast<double>(u64()); }
  std::uint64_t var() {
    std::uint64_t v = 0;
    for (int shift = 0; shift < 64; shift += 7) {
      const std::uint8_t c = u8();
      v |= static_cast<std::uint64_t>(c & 0x7f) << shift;
      if (!(c & 0x80)) return v;
    }
    throw FormatError("varint too long");
  }
  Pos pos(Pos limit) {
    const std::uint64_t v = var();
    if (v > static_cast<std::uint64_t>(limit)) throw FormatError("value out of range");
    return static_cast<Pos>(v);
  }
  std::span<const std::uint8_t> take(std::size_t len) {
    need(len);
    auto s = b_.subspan(at_, len);
    at_ += len;
    return s;
  }
  Reader section(std::uint32_t expect) {
    if (u32() != expect) throw FormatError("unexpected section tag");
    const std::uint64_t len = u64();
    if (len > b_.size() - at_) throw FormatError("truncated section");
    return Reader(take(static_cast<std::size_t>(len)));
  }
  void finish() const {
    if (!done()) throw FormatError("trailing bytes in section");
  }

 private:
  void need(std::size_t len) const {
    if (len > b_.size() - at_) throw FormatError("truncated input");
  }
  std::span<const std::uint8_t> b_;
  std::size_t at_ = 0;
};

bool try_chain(const ArithProgression& a, const ArithProgression& b, ArithProgression& out) {
  const Pos gap = b.first - a.last();
  if (gap <= 0) return false;
  if (a.count >= 2 && gap != a.diff) return false;
  if (b.count >= 2 && gap != b.diff) return false;
  out = ArithProgression::make(a.first, gap, a.count + b.count);
  return true;
}

}  // namespace

void append_chained(std::vector<ArithProgression>& parts, const ArithProgression& b) {
  if (b.empty()) return;
  ArithProgression merged;
  if (!parts.empty() && try_chain(parts.back(), b, merged)) {
    parts.back() = merged;
  } else {
    parts.push_back(b);
  }
}

IpmIndex IpmIndex::build(Text text, const BuildConfig& cfg) {
  IpmIndex idx;
  idx.cfg_ = cfg;
  idx.ix_ = TextIndex(std::move(text));
  idx.runs_ = RunsIndex(idx.ix_);
  const Pos n = idx.size();
  auto sampled = sample_candidates(idx.text(), idx.runs_.tables(), cfg);
  idx.stats_.attempts = sampled.attempts;
  idx.stats_.attempt_totals = sampled.totals;
  idx.stats_.candidates = sampled.candidates.total();
  auto steps = assemble_assignment(sampled.candidates, idx.runs_.tables(), n);
  sampled.candidates = {};
  for (std::size_t k = 0; k < steps.size(); ++k) {
    idx.stats_.sample_steps += static_cast<Pos>(steps[k].size());
    idx.levels_.push_back(build_level_structures(std::move(steps[k]), static_cast<int>(k), n));
  }
  return idx;
}

bool IpmIndex::uses_periodic_path(Fragment x) const {
  if (x.length() < 2) return false;
  return !level(layer(x.length())).eval.evaluate(x.start).defined();
}

ArithProgression IpmIndex::query(Fragment x, Fragment y) const {
  const Pos n = size();
  check_fragment(x, n);
  check_fragment(y, n);
  const Pos xl = x.length();
  if (y.length() > 2 * xl) {
    throw ConstraintViolation("|y| = " + std::to_string(y.length()) + " exceeds 2|x| = " +
                              std::to_string(2 * xl));
  }
  if (xl > y.length()) return {};
  const auto& s = text();
  if (xl <= kDirectScan) {
    // short patterns: |y| <= 2 * kDirectScan, so a scan over y is constant work
    const auto* base = s.bytes().data() - 1;
    const auto* px = base + x.start;
    Pos first = 0, prev = 0, diff = 0, count = 0;
    for (Pos p = y.start; p + xl - 1 <= y.end; ++p) {
      Pos j = 0;
      while (j < xl && base[p + j] == px[j]) ++j;
      if (j < xl) continue;
      if (count == 0) {
        first = p;
      } else if (count == 1) {
        diff = p - first;
      } else if (p - prev != diff) {
        throw ChainViolation("occurrence list is not an arithmetic progression");
      }
      prev = p;
      ++count;
    }
    return count == 0 ? ArithProgression{} : ArithProgression::make(first, diff, count);
  }
  return indexed(x, y);
}

ArithProgression IpmIndex::query_indexed(Fragment x, Fragment y) const {
  const Pos n = size();
  check_fragment(x, n);
  check_fragment(y, n);
  if (y.length() > 2 * x.length()) {
    throw ConstraintViolation("|y| = " + std::to_string(y.length()) + " exceeds 2|x| = " +
                              std::to_string(2 * x.length()));
  }
  if (x.length() > y.length()) return {};
  if (x.length() == 1) return query(x, y);
  return indexed(x, y);
}

ArithProgression IpmIndex::indexed(Fragment x, Fragment y) const {
  const auto& s = text();
  const Pos xl = x.length();
  const int k = layer(xl);
  const LevelStructures& lv = level(k);
  const SampleRef sample = lv.eval.evaluate(x.start);
  if (!sample.defined()) return query_periodic(ix_, runs_, x, y, k);

  const Pos delta = static_cast<Pos>(sample.pos) - x.start;
  // at most 17 candidates: the range spans <= 2^{k+3} positions of a
  // 2^{k-1}-sparse set
  std::array<Pos, 20> found;
  std::size_t m = 0;
  const auto bytes = s.bytes();
  const Pos head = std::min<Pos>(xl, 16);
  lv.locator.locate_into(sample.id, y.start + delta, y.end - xl + 1 + delta, [&](Pos h) {
    const Pos st = h - delta;
    // cheap rejection on the first symbols before the LCE probe
    if (std::memcmp(bytes.data() + (x.start - 1), bytes.data() + (st - 1), static_cast<std::size_t>(head)) != 0) return;
    if (xl <= head || fragments_equal(ix_, x, Fragment{st, st + xl - 1})) {
      assert(m < found.size());
      found[m++] = st;
    }
  });
  return progression_from_sorted(std::span<const Pos>(found.data(), m));
}

std::vector<ArithProgression> IpmIndex::query_long(Fragment x, Fragment y) const {
  check_fragment(x, size());
  check_fragment(y, size());
  const Pos xl = x.length();
  std::vector<ArithProgression> out;
  for (Pos w = y.start; w + xl - 1 <= y.end; w += xl) {
    const Fragment win{w, std::min(y.end, w + 2 * xl - 1)};
    ArithProgression got = query(x, win);
    if (w + xl + xl - 1 <= y.end) got = clip(got, w, w + xl - 1);
    append_chained(out, got);
  }
  return out;
}

// ---------------------------------------------------------------------------
// serialization

std::vector<std::uint8_t> IpmIndex::serialize() const {
  Writer out;
  for (char c : kMagic) out.u8(static_cast<std::uint8_t>(c));
  out.u32(kFormatVersion);
  const Pos n = size();

  Writer conf;
  conf.u64(cfg_.seed);
  conf.u8(cfg_.deterministic ? 1 : 0);
  conf.f64(cfg_.threshold);
  conf.var(static_cast<std::uint64_t>(cfg_.attempt_cap));
  conf.var(static_cast<std::uint64_t>(stats_.attempts));
  conf.var(stats_.attempt_totals.size());
  for (Pos v : stats_.attempt_totals) conf.var(static_cast<std::uint64_t>(v));
  conf.var(static_cast<std::uint64_t>(stats_.candidates));
  conf.var(static_cast<std::uint64_t>(stats_.sample_steps));
  out.section(tag("CONF"), conf);

  Writer txt;
  txt.var(static_cast<std::uint64_t>(n));
  txt.bytes(text().bytes());
  out.section(tag("TEXT"), txt);

  Writer sa;
  for (auto v : ix_.raw_sa()) sa.var(v);
  out.section(tag("SARR"), sa);

  Writer runs;
  runs.var(runs_.runs().size());
  Pos prev = 0;
  for (const Run& r : runs_.runs()) {
    runs.var(static_cast<std::uint64_t>(r.frag.start - prev));
    runs.var(static_cast<std::uint64_t>(r.frag.length()));
    runs.var(static_cast<std::uint64_t>(r.period));
    runs.var(static_cast<std::uint64_t>(r.lyndon.lead));
    prev = r.frag.start;
  }
  out.section(tag("RUNS"), runs);

  Writer peri;
  const auto& tables = runs_.tables();
  peri.var(static_cast<std::uint64_t>(tables.levels()));
  for (int k = 0; k < tables.levels(); ++k) {
    const auto& blocks = tables.level(k).periodic;
    peri.var(blocks.size());
    Pos end = 0;
    for (Fragment f : blocks) {
      peri.var(static_cast<std::uint64_t>(f.start - end));
      peri.var(static_cast<std::uint64_t>(f.length()));
      end = f.end;
    }
  }
  out.section(tag("PERI"), peri);

  Writer rext;
  const auto& ext = runs_.extension();
  rext.var(static_cast<std::uint64_t>(ext.levels()));
  for (int k = 0; k < ext.levels(); ++k) {
    const auto& st = ext.step(k);
    rext.var(st.size());
    Pos bp = 0;
    for (std::size_t i = 0; i < st.size(); ++i) {
      rext.var(static_cast<std::uint64_t>(st.breakpoints[i] - bp));
      bp = st.breakpoints[i];
      for (auto id : st.values[i].ids) rext.var(id == RunPair::npos ? 0 : std::uint64_t{id} + 1);
    }
  }
  out.section(tag("REXT"), rext);

  Writer samp;
  samp.var(levels_.size());
  for (const auto& lv : levels_) {
    const auto& st = lv.eval.step();
    samp.var(st.size());
    Pos bp = 0;
    for (std::size_t i = 0; i < st.size(); ++i) {
      samp.var(static_cast<std::uint64_t>(st.breakpoints[i] - bp));
      bp = st.breakpoints[i];
      const SampleRef& v = st.values[i];
      samp.var(v.defined() ? static_cast<std::uint64_t>(v.pos - bp + 1) : 0);
      if (v.defined()) samp.var(v.id);
    }
  }
  out.section(tag("SAMP"), samp);
  return std::move(out.data());
}

IpmIndex IpmIndex::deserialize(std::span<const std::uint8_t> bytes) {
  Reader in(bytes);
  for (char c : kMagic) {
    if (in.u8() != static_cast<std::uint8_t>(c)) throw FormatError("not an index file (bad magic)");
  }
  const std::uint32_t version = in.u32();
  if (version != kFormatVersion) {
    throw FormatError("unsupported index format version " + std::to_string(version));
  }
  IpmIndex idx;
  {
    Reader r = in.section(tag("CONF"));
    idx.cfg_.seed = r.u64();
    idx.cfg_.deterministic = r.u8() != 0;
    idx.cfg_.threshold = r.f64();
    idx.cfg_.attempt_cap = static_cast<int>(r.pos(1 << 30));
    idx.stats_.attempts = static_cast<int>(r.pos(1 << 30));
    const Pos count = r.pos(1 << 30);
    for (Pos i = 0; i < count; ++i) idx.stats_.attempt_totals.push_back(r.pos(INT64_MAX));
    idx.stats_.candidates = r.pos(INT64_MAX);
    idx.stats_.sample_steps = r.pos(INT64_MAX);
    r.finish();
  }
  Pos n = 0;
  Text text;
  {
    Reader r = in.section(tag("TEXT"));
    n = r.pos(UINT32_MAX);
    if (n < 1) throw FormatError("empty text");
    auto b = r.take(static_cast<std::size_t>(n));
    text = Text(std::vector<std::uint8_t>(b.begin(), b.end()));
    r.finish();
  }
  {
    Reader r = in.section(tag("SARR"));
    std::vector<std::uint32_t> sa(static_cast<std::size_t>(n));
    for (auto& v : sa) v = static_cast<std::uint32_t>(r.pos(n - 1));
    r.finish();
    try {
      idx.ix_ = TextIndex(std::move(text), std::move(sa));
    } catch (const std::invalid_argument& e) {
      throw FormatError(std::string("bad suffix array: ") + e.what());
    }
  }
  std::vector<Run> runs;
  {
    Reader r = in.section(tag("RUNS"));
    const Pos count = r.pos(n);
    Pos prev = 0;
    for (Pos i = 0; i < count; ++i) {
      Run run;
      run.frag.start = prev + r.pos(n);
      run.frag.end = run.frag.start + r.pos(n) - 1;
      run.period = r.pos(n);
      const Pos lead = r.pos(n);
      if (run.frag.end > n || run.period < 1 || 2 * run.period > run.frag.length() || lead >= run.period) {
        throw FormatError("invalid run record");
      }
      const Pos rest = run.frag.length() - lead;
      run.lyndon = {lead, rest / run.period, rest % run.period};
      runs.push_back(run);
      prev = run.frag.start;
    }
    r.finish();
  }
  const int levels = level_count(n);
  std::vector<std::vector<Fragment>> blocks;
  {
    Reader r = in.section(tag("PERI"));
    if (r.pos(64) != levels) throw FormatError("periodic table level count mismatch");
    for (int k = 0; k < levels; ++k) {
      std::vector<Fragment> lv;
      const Pos count = r.pos(n);
      Pos end = 0;
      for (Pos i = 0; i < count; ++i) {
        Fragment f;
        f.start = end + r.pos(n);
        f.end = f.start + r.pos(n) - 1;
        if (f.end > n - (Pos{1} << k) + 1 || f.start <= end || f.length() < 1) throw FormatError("invalid periodic block");
        end = f.end;
        lv.push_back(f);
      }
      blocks.push_back(std::move(lv));
    }
    r.finish();
  }
  std::vector<StepFunction<RunPair>> ext;
  {
    Reader r = in.section(tag("REXT"));
    if (r.pos(64) != levels) throw FormatError("run extension level count mismatch");
    for (int k = 0; k < levels; ++k) {
      StepFunction<RunPair> st;
      const Pos count = r.pos(n);
      Pos bp = 0;
      for (Pos i = 0; i < count; ++i) {
        const Pos at = bp + r.pos(n);
        if (at <= bp || at > n) throw FormatError("invalid run extension breakpoint");
        RunPair rp;
        for (auto& id : rp.ids) {
          const Pos v = r.pos(static_cast<Pos>(runs.size()));
          id = v == 0 ? RunPair::npos : static_cast<std::uint32_t>(v - 1);
        }
        st.breakpoints.push_back(at);
        st.values.push_back(rp);
        bp = at;
      }
      if (count == 0 || st.breakpoints.front() != 1) throw FormatError("run extension must start at 1");
      st.last = n;
      ext.push_back(std::move(st));
    }
    r.finish();
  }
  idx.runs_ = RunsIndex(std::move(runs), PeriodicTables(std::move(blocks), n),
                        RunExtensionTable(std::move(ext), n), n);
  {
    Reader r = in.section(tag("SAMP"));
    const Pos count = r.pos(64);
    if (count != sample_levels(n)) throw FormatError("sample level count mismatch");
    for (int k = 0; k < count; ++k) {
      StepFunction<SampleRef> st;
      const Pos domain = n - (Pos{2} << k) + 1;
      const Pos pieces = r.pos(n);
      Pos bp = 0;
      for (Pos i = 0; i < pieces; ++i) {
        const Pos at = bp + r.pos(n);
        if (at <= bp || at > domain) throw FormatError("invalid sample breakpoint");
        SampleRef v;
        const Pos off = r.pos(Pos{2} << k);
        if (off != 0) {
          v.pos = static_cast<std::uint32_t>(at + off - 1);
          v.id = static_cast<std::uint32_t>(r.pos(n));
        }
        st.breakpoints.push_back(at);
        st.values.push_back(v);
        bp = at;
      }
      if (pieces == 0 || st.breakpoints.front() != 1) throw FormatError("sample step must start at 1");
      st.last = domain;
      try {
        idx.levels_.push_back(build_level_structures(std::move(st), k, n));
      } catch (const SparsityViolation& e) {
        throw FormatError(std::string("inconsistent samples: ") + e.what());
      }
    }
    r.finish();
  }
  if (!in.done()) throw FormatError("trailing bytes after last section");
  return idx;
}

void IpmIndex::save(const std::filesystem::path& path) const {
  const auto bytes = serialize();
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!f) throw std::runtime_error("write failed for " + path.string());
}

IpmIndex IpmIndex::load(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot read " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
  return deserialize(bytes);
}

std::size_t IpmIndex::memory_bytes() const {
  std::size_t b = ix_.memory_bytes() + runs_.memory_bytes();
  for (const auto& lv : levels_) b += lv.eval.memory_bytes() + lv.locator.memory_bytes();
  return b;
}

}  // namespace ipm
