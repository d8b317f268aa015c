#include "grig/coset_algebra.hpp"

#include "grig/errors.hpp"

#include <charconv>
#include <cstdlib>
#include <map>
#include <set>
#include <sstream>

namespace grig {

namespace {

// Edges z_i * a, z_i * b, z_i * d of the Schreier graph of K.
constexpr SchreierTable kSchreier = {{
    {7, 8, 1},   {2, 9, 0},   {1, 10, 3},  {4, 11, 2},
    {3, 12, 5},  {6, 13, 4},  {5, 14, 7},  {0, 15, 6},
    {15, 0, 9},  {10, 1, 8},  {9, 2, 11},  {12, 3, 10},
    {11, 4, 13}, {14, 5, 12}, {13, 6, 15}, {8, 7, 14},
}};

constexpr LiftTable::Entry kLiftEntries[] = {
    {0, 0, 0},   {0, 8, 1},   {1, 7, 13},  {1, 15, 12},
    {2, 6, 4},   {2, 14, 5},  {3, 5, 9},   {3, 13, 8},
    {8, 0, 5},   {8, 8, 4},   {9, 7, 8},   {9, 15, 9},
    {10, 6, 1},  {10, 14, 0}, {11, 5, 12}, {11, 13, 13},
    {4, 4, 0},   {4, 12, 1},  {5, 3, 13},  {5, 11, 12},
    {6, 2, 4},   {6, 10, 5},  {7, 1, 9},   {7, 9, 8},
    {12, 4, 5},  {12, 12, 4}, {13, 3, 8},  {13, 11, 9},
    {14, 2, 1},  {14, 10, 0}, {15, 1, 12}, {15, 9, 13},
};

std::size_t node_index(int level, std::uint32_t path) {
  return (std::size_t{1} << level) - 1 + path;
}

struct CayleyTable {
  std::array<std::array<std::uint8_t, kKIndex>, kKIndex> mul{};
  std::array<std::uint8_t, kKIndex> inv{};
};

const CayleyTable &cayley() {
  static const CayleyTable table = [] {
    const CosetPartition &part = k_partition();
    CayleyTable t;
    for (int i = 0; i < kKIndex; ++i) {
      GrigElement gi = GrigElement::parse(kCosetRepresentatives[i]);
      for (int j = 0; j < kKIndex; ++j) {
        GrigElement gj = GrigElement::parse(kCosetRepresentatives[j]);
        t.mul[i][j] = static_cast<std::uint8_t>(part.label_of(gi * gj));
      }
      t.inv[i] = static_cast<std::uint8_t>(part.label_of(gi.inverse()));
    }
    return t;
  }();
  return table;
}

} // namespace

KCoset KCoset::parse(std::string_view name) {
  std::string_view digits = name;
  if (!digits.empty() && (digits.front() == 'z' || digits.front() == 'Z'))
    digits.remove_prefix(1);
  int value = -1;
  auto [ptr, ec] =
      std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc{} || ptr != digits.data() + digits.size() ||
      value < 0 || value >= kKIndex)
    throw InputError("bad K-coset name \"" + std::string(name) + "\"");
  return KCoset(value);
}

const SchreierTable &schreier_table() { return kSchreier; }

const CosetPartition &k_partition() {
  static const CosetPartition partition = [] {
    auto q = enumerate(3);
    std::vector<std::uint32_t> seeds;
    for (const char *w : {"(ab)^2", "(bada)^2", "(abad)^2"})
      seeds.push_back(q->index_of(GrigElement::parse(w)));
    auto k = subgroup_closure(*q, seeds);
    CosetPartition part(q, k);
    if (part.coset_count() != kKIndex)
      throw InternalError("K does not have index 16 in Gamma/Stab(3)");
    std::vector<std::uint32_t> new_ids(kKIndex, kKIndex);
    for (int i = 0; i < kKIndex; ++i) {
      auto old = part.label_of(GrigElement::parse(kCosetRepresentatives[i]));
      if (new_ids[old] != kKIndex)
        throw InternalError("coset representatives are not distinct");
      new_ids[old] = static_cast<std::uint32_t>(i);
    }
    part.relabel(new_ids);
    return part;
  }();
  return partition;
}

SchreierTable derive_schreier_table() {
  const CosetPartition &part = k_partition();
  SchreierTable t{};
  const char gens[3] = {'a', 'b', 'd'};
  for (int i = 0; i < kKIndex; ++i) {
    GrigElement rep = GrigElement::parse(kCosetRepresentatives[i]);
    for (int e = 0; e < 3; ++e)
      t[i][e] = static_cast<std::uint8_t>(
          part.label_of(rep * GrigElement::generator(gens[e])));
  }
  return t;
}

KCoset coset_of(const GrigElement &g) {
  std::uint8_t z = 0;
  for (char ch : g.str()) {
    switch (ch) {
    case 'a': z = kSchreier[z][0]; break;
    case 'b': z = kSchreier[z][1]; break;
    case 'c': z = kSchreier[kSchreier[z][1]][2]; break;
    case 'd': z = kSchreier[z][2]; break;
    }
  }
  return KCoset(z);
}

KCoset kcoset_mul(KCoset x, KCoset y) {
  return KCoset(cayley().mul[x.index][y.index]);
}

KCoset kcoset_inv(KCoset x) { return KCoset(cayley().inv[x.index]); }

LiftTable::LiftTable(std::span<const Entry> entries) {
  for (const Entry &e : entries)
    table_[e.left * kKIndex + e.right] = static_cast<std::int8_t>(e.lift);
}

const LiftTable &LiftTable::standard() {
  static const LiftTable table{std::span<const Entry>(kLiftEntries)};
  return table;
}

std::vector<LiftTable::Entry> LiftTable::entries() const {
  std::vector<Entry> out;
  for (int j = 0; j < kKIndex; ++j)
    for (int k = 0; k < kKIndex; ++k)
      if (auto v = table_[j * kKIndex + k]; v >= 0)
        out.push_back({static_cast<std::uint8_t>(j),
                       static_cast<std::uint8_t>(k),
                       static_cast<std::uint8_t>(v)});
  return out;
}

std::size_t LiftTable::size() const {
  std::size_t n = 0;
  for (auto v : table_)
    n += v >= 0;
  return n;
}

void LiftTable::set(KCoset left, KCoset right, std::optional<KCoset> value) {
  table_[left.index * kKIndex + right.index] =
      value ? static_cast<std::int8_t>(value->index) : std::int8_t{-1};
}

std::optional<KCoset> lift(KCoset left, KCoset right) {
  return LiftTable::standard().lift(left, right);
}

LiftReport verify_lift_table(int depth, const LiftTable &table) {
  // Section cosets of K are only determined from depth 4 on (K >= Stab(3)).
  if (depth < 4)
    throw InputError("lift table verification needs depth >= 4");
  LiftReport report;
  report.depth = depth;
  report.table_entries = table.size();
  const CosetPartition &kpart = k_partition();
  auto q = enumerate(depth);

  auto describe = [](int j, int k, int i) {
    return "(" + std::to_string(j) + "," + std::to_string(k) + ") -> " +
           std::to_string(i);
  };

  // observed[(j,k)] = set of lifts seen for that section pair.
  std::map<std::pair<int, int>, std::set<int>> observed;
  for (std::size_t x = 0; x < q->size(); ++x) {
    LevelPermutation p = q->element(x);
    if (p.twist())
      continue;
    int j = static_cast<int>(kpart.label_of(p.child(0)));
    int k = static_cast<int>(kpart.label_of(p.child(1)));
    int i = static_cast<int>(kpart.label_of(p));
    observed[{j, k}].insert(i);
  }
  for (const auto &[pair, lifts] : observed) {
    auto [j, k] = pair;
    if (lifts.size() > 1)
      report.problems.push_back("pair (" + std::to_string(j) + "," +
                                std::to_string(k) +
                                ") has several lifts");
    auto expected = table.lift(KCoset(j), KCoset(k));
    for (int i : lifts) {
      if (!expected)
        report.problems.push_back("observed " + describe(j, k, i) +
                                  " missing from table");
      else if (expected->index != i)
        report.problems.push_back("table says " +
                                  describe(j, k, expected->index) +
                                  ", observed " + std::to_string(i));
      else
        ++report.witnessed;
    }
  }
  for (const auto &e : table.entries())
    if (!observed.contains({e.left, e.right}))
      report.problems.push_back("entry " +
                                describe(e.left, e.right, e.lift) +
                                " never witnessed");
  report.pass = report.problems.empty();
  return report;
}

std::string schreier_dot() {
  std::ostringstream out;
  out << "digraph schreier_K {\n";
  for (int i = 0; i < kKIndex; ++i)
    out << "  z" << i << " [label=\"z" << i << " = K"
        << (kCosetRepresentatives[i].empty() ? "" : kCosetRepresentatives[i])
        << "\"];\n";
  const char gens[3] = {'a', 'b', 'd'};
  for (int i = 0; i < kKIndex; ++i)
    for (int e = 0; e < 3; ++e)
      out << "  z" << i << " -> z" << int(kSchreier[i][e]) << " [label=\""
          << gens[e] << "\"];\n";
  out << "}\n";
  return out.str();
}

KmCosetDescriptor::KmCosetDescriptor(int level)
    : level_(level), twists_((std::size_t{1} << level) - 1, 0),
      leaves_(std::size_t{1} << level, 0) {
  if (level < 0 || level > 16)
    throw InputError("descriptor level out of range");
}

KmCosetDescriptor KmCosetDescriptor::join(bool twist,
                                          const KmCosetDescriptor &left,
                                          const KmCosetDescriptor &right) {
  if (left.level_ != right.level_)
    throw InputError("descriptor level mismatch");
  KmCosetDescriptor d(left.level_ + 1);
  d.twists_[0] = twist ? 1 : 0;
  for (int j = 0; j < left.level_; ++j) {
    std::uint32_t width = 1u << j;
    for (std::uint32_t p = 0; p < width; ++p) {
      d.twists_[node_index(j + 1, p)] = left.twists_[node_index(j, p)];
      d.twists_[node_index(j + 1, width + p)] =
          right.twists_[node_index(j, p)];
    }
  }
  std::copy(left.leaves_.begin(), left.leaves_.end(), d.leaves_.begin());
  std::copy(right.leaves_.begin(), right.leaves_.end(),
            d.leaves_.begin() + static_cast<std::ptrdiff_t>(left.leaves_.size()));
  return d;
}

KmCosetDescriptor KmCosetDescriptor::child(int i) const {
  if (level_ == 0)
    throw InputError("level-0 descriptor has no children");
  KmCosetDescriptor d(level_ - 1);
  for (int j = 0; j < d.level_; ++j) {
    std::uint32_t width = 1u << j;
    for (std::uint32_t p = 0; p < width; ++p)
      d.twists_[node_index(j, p)] =
          twists_[node_index(j + 1, static_cast<std::uint32_t>(i) * width + p)];
  }
  std::size_t half = leaves_.size() / 2;
  std::copy(leaves_.begin() + static_cast<std::ptrdiff_t>(i * half),
            leaves_.begin() + static_cast<std::ptrdiff_t>((i + 1) * half),
            d.leaves_.begin());
  return d;
}

namespace {

std::optional<KCoset> project_rec(const KmCosetDescriptor &d, int j,
                                  std::uint32_t p) {
  if (j == d.level())
    return KCoset(d.leaves()[p]);
  auto l = project_rec(d, j + 1, 2 * p);
  if (!l)
    return std::nullopt;
  auto r = project_rec(d, j + 1, 2 * p + 1);
  if (!r)
    return std::nullopt;
  auto c = lift(*l, *r);
  if (!c)
    return std::nullopt;
  if (d.twists()[node_index(j, p)])
    return kcoset_mul(*c, KCoset(7));
  return c;
}

void to_string_rec(const KmCosetDescriptor &d, int j, std::uint32_t p,
                   std::string &out) {
  if (j == d.level()) {
    out += "z" + std::to_string(d.leaves()[p]);
    return;
  }
  out += '(';
  to_string_rec(d, j + 1, 2 * p, out);
  out += ',';
  to_string_rec(d, j + 1, 2 * p + 1, out);
  out += ')';
  if (d.twists()[node_index(j, p)])
    out += 'a';
}

} // namespace

std::optional<KCoset> KmCosetDescriptor::base_projection() const {
  return project_rec(*this, 0, 0);
}

std::string KmCosetDescriptor::to_string() const {
  std::string out;
  to_string_rec(*this, 0, 0, out);
  return out;
}

std::size_t KmCosetDescriptor::hash() const noexcept {
  std::size_t h = static_cast<std::size_t>(level_) * 0x9E3779B97F4A7C15ull;
  for (auto t : twists_)
    h = (h ^ t) * 0x100000001B3ull;
  for (auto l : leaves_)
    h = (h ^ l) * 0x100000001B3ull;
  return h;
}

int km_level_guard() {
  if (const char *env = std::getenv("GRIG_MAX_KM_LEVEL")) {
    char *end = nullptr;
    long value = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && value >= 0 && value <= 16)
      return static_cast<int>(value);
  }
  return 4;
}

namespace {

void km_coset_rec(const GrigElement &g, int m, int j, std::uint32_t p,
                  KmCosetDescriptor &out) {
  if (j == m) {
    out.leaves()[p] = coset_of(g).index;
    return;
  }
  SectionTriple t = first_level(g);
  out.twists()[node_index(j, p)] = t.twist ? 1 : 0;
  // Sections of g*a are those of g swapped.
  const GrigElement &y0 = t.twist ? t.right : t.left;
  const GrigElement &y1 = t.twist ? t.left : t.right;
  km_coset_rec(y0, m, j + 1, 2 * p, out);
  km_coset_rec(y1, m, j + 1, 2 * p + 1, out);
}

void km_portrait_rec(const LevelPermutation &p, int m, int j, std::uint32_t pos,
                     KmCosetDescriptor &out) {
  if (j == m) {
    out.leaves()[pos] = static_cast<std::uint8_t>(k_partition().label_of(p));
    return;
  }
  bool t = p.twist();
  out.twists()[node_index(j, pos)] = t ? 1 : 0;
  km_portrait_rec(p.child(t ? 1 : 0), m, j + 1, 2 * pos, out);
  km_portrait_rec(p.child(t ? 0 : 1), m, j + 1, 2 * pos + 1, out);
}

void km_mul_rec(const KmCosetDescriptor &x, const KmCosetDescriptor &y, int j,
                std::uint32_t px, std::uint32_t py, KmCosetDescriptor &out) {
  if (j == x.level()) {
    out.leaves()[px] =
        kcoset_mul(KCoset(x.leaves()[px]), KCoset(y.leaves()[py])).index;
    return;
  }
  std::uint8_t s = x.twists()[node_index(j, px)];
  std::uint8_t t = y.twists()[node_index(j, py)];
  out.twists()[node_index(j, px)] = s ^ t;
  for (std::uint32_t i = 0; i < 2; ++i)
    km_mul_rec(x, y, j + 1, 2 * px + i, 2 * py + (i ^ s), out);
}

void km_inv_rec(const KmCosetDescriptor &x, int j, std::uint32_t px,
                std::uint32_t po, KmCosetDescriptor &out) {
  if (j == x.level()) {
    out.leaves()[po] = kcoset_inv(KCoset(x.leaves()[px])).index;
    return;
  }
  std::uint8_t s = x.twists()[node_index(j, px)];
  out.twists()[node_index(j, po)] = s;
  for (std::uint32_t i = 0; i < 2; ++i)
    km_inv_rec(x, j + 1, 2 * px + (i ^ s), 2 * po + i, out);
}

} // namespace

KmCosetDescriptor km_coset_of(const GrigElement &g, int m) {
  if (m < 0)
    throw InputError("K_m level must be non-negative");
  if (m > km_level_guard())
    throw ResourceError("K_m level " + std::to_string(m) + " exceeds guard " +
                        std::to_string(km_level_guard()));
  KmCosetDescriptor out(m);
  km_coset_rec(g, m, 0, 0, out);
  return out;
}

KmCosetDescriptor km_coset_of(const LevelPermutation &p, int m) {
  if (m < 0)
    throw InputError("K_m level must be non-negative");
  if (p.depth() < m + 3)
    throw InputError("portrait too shallow for a K_" + std::to_string(m) +
                     " coset");
  KmCosetDescriptor out(m);
  km_portrait_rec(p, m, 0, 0, out);
  return out;
}

KmCosetDescriptor km_mul(const KmCosetDescriptor &x,
                         const KmCosetDescriptor &y) {
  if (x.level() != y.level())
    throw InputError("km_mul: level mismatch");
  KmCosetDescriptor out(x.level());
  km_mul_rec(x, y, 0, 0, 0, out);
  return out;
}

KmCosetDescriptor km_inv(const KmCosetDescriptor &x) {
  KmCosetDescriptor out(x.level());
  km_inv_rec(x, 0, 0, 0, out);
  return out;
}

std::optional<KmCosetDescriptor> km_lift(const KmCosetDescriptor &left,
                                         const KmCosetDescriptor &right) {
  auto l = left.base_projection();
  auto r = right.base_projection();
  if (!l || !r || !lift(*l, *r))
    return std::nullopt;
  return KmCosetDescriptor::join(false, left, right);
}

} // namespace grig
