#include "grig/conjugacy.hpp"

#include "grig/errors.hpp"
#include "grig/lru_cache.hpp"
#include "grig/quotient.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <sstream>

namespace grig {

// ---------------------------------------------------------------- QSet

std::size_t QSet::size() const {
  return level_ == 0 ? static_cast<std::size_t>(std::popcount(mask_))
                     : members_.size();
}

std::uint16_t QSet::mask() const {
  if (level_ != 0)
    throw InputError("QSet::mask needs a level-0 set");
  return mask_;
}

bool QSet::contains(KCoset c) const {
  if (level_ != 0)
    return contains(KmCosetDescriptor::from_kcoset(c));
  return (mask_ >> c.index) & 1u;
}

void QSet::insert(KCoset c) {
  if (level_ != 0)
    throw InputError("QSet::insert: level mismatch");
  mask_ = static_cast<std::uint16_t>(mask_ | (1u << c.index));
}

bool QSet::contains(const KmCosetDescriptor &d) const {
  if (d.level() != level_)
    return false;
  if (level_ == 0)
    return (mask_ >> d.kcoset().index) & 1u;
  return members_.contains(d);
}

void QSet::insert(const KmCosetDescriptor &d) {
  if (d.level() != level_)
    throw InputError("QSet::insert: level mismatch");
  if (level_ == 0) {
    insert(d.kcoset());
    return;
  }
  members_.insert(d);
  if (members_.size() > kMaxQSetWork)
    throw ResourceError("Q-set exceeds " + std::to_string(kMaxQSetWork) +
                        " cosets");
}

std::vector<KmCosetDescriptor> QSet::members() const {
  std::vector<KmCosetDescriptor> out;
  if (level_ == 0) {
    for (int i = 0; i < kKIndex; ++i)
      if ((mask_ >> i) & 1u)
        out.push_back(KmCosetDescriptor::from_kcoset(KCoset(i)));
    return out;
  }
  out.assign(members_.begin(), members_.end());
  std::sort(out.begin(), out.end(),
            [](const KmCosetDescriptor &x, const KmCosetDescriptor &y) {
              if (x.twists() != y.twists())
                return x.twists() < y.twists();
              return x.leaves() < y.leaves();
            });
  return out;
}

std::vector<KCoset> QSet::kcosets() const {
  std::vector<KCoset> out;
  for (int i = 0; i < kKIndex; ++i)
    if ((mask() >> i) & 1u)
      out.emplace_back(i);
  return out;
}

std::vector<std::string> QSet::names() const {
  std::vector<std::string> out;
  for (const auto &d : members())
    out.push_back(d.to_string());
  return out;
}

std::string QSet::to_string() const {
  std::string out = "{";
  bool first = true;
  for (const auto &name : names()) {
    if (!first)
      out += ", ";
    out += name;
    first = false;
  }
  return out + "}";
}

bool QSet::operator==(const QSet &other) const {
  if (level_ != other.level_)
    return false;
  if (level_ == 0)
    return mask_ == other.mask_;
  return members_ == other.members_;
}

// ---------------------------------------------------------------- recursion

namespace {

LruCache<std::string, QSet> &memo() {
  static LruCache<std::string, QSet> cache(std::size_t{1} << 18);
  return cache;
}

std::string memo_key(const GrigElement &g, const GrigElement &h, int n,
                     int m) {
  return g.str() + '|' + h.str() + '|' + std::to_string(n) + '|' +
         std::to_string(m);
}

// Sections of g, or of g*a when g swaps the first level.
struct Split {
  bool twist;
  GrigElement s0;
  GrigElement s1;
};

Split split(const GrigElement &g) {
  SectionTriple t = first_level(g);
  if (t.twist)
    return {true, std::move(t.right), std::move(t.left)};
  return {false, std::move(t.left), std::move(t.right)};
}

const KCoset kA(7);

QSet base_case(const GrigElement &g, const GrigElement &h) {
  std::uint16_t mask = 0;
  for (std::uint32_t id : brute_Q(3, g, h, k_partition()))
    mask = static_cast<std::uint16_t>(mask | (1u << id));
  return QSet::from_mask(mask);
}

// All lifts of pairs in left x right, times a when `twisted`.
QSet lift_product(const QSet &left, const QSet &right, bool twisted,
                  int level) {
  if (level == 0) {
    QSet out(0);
    for (KCoset j : left.kcosets())
      for (KCoset k : right.kcosets())
        if (auto c = lift(j, k))
          out.insert(twisted ? kcoset_mul(*c, kA) : *c);
    return out;
  }
  if (left.size() * right.size() > kMaxQSetWork)
    throw ResourceError("Q-set product exceeds " +
                        std::to_string(kMaxQSetWork) + " pairs");
  auto lm = left.members();
  auto rm = right.members();
  std::vector<KCoset> lp;
  std::vector<KCoset> rp;
  for (const auto &d : lm)
    lp.push_back(*d.base_projection());
  for (const auto &d : rm)
    rp.push_back(*d.base_projection());
  QSet out(level);
  for (std::size_t i = 0; i < lm.size(); ++i)
    for (std::size_t k = 0; k < rm.size(); ++k)
      if (lift(lp[i], rp[k]))
        out.insert(KmCosetDescriptor::join(twisted, lm[i], rm[k]));
  return out;
}

// Pairs (j, u * j * v) for j in s, lifted; times a when `twisted`.
QSet lift_constrained(const QSet &s, const GrigElement &u,
                      const GrigElement &v, bool twisted, int level) {
  if (level == 0) {
    KCoset cu = coset_of(u);
    KCoset cv = coset_of(v);
    QSet out(0);
    for (KCoset j : s.kcosets())
      if (auto c = lift(j, kcoset_mul(kcoset_mul(cu, j), cv)))
        out.insert(twisted ? kcoset_mul(*c, kA) : *c);
    return out;
  }
  KmCosetDescriptor cu = km_coset_of(u, level - 1);
  KmCosetDescriptor cv = km_coset_of(v, level - 1);
  QSet out(level);
  for (const auto &j : s.members()) {
    KmCosetDescriptor k = km_mul(km_mul(cu, j), cv);
    auto pj = j.base_projection();
    auto pk = k.base_projection();
    if (pj && pk && lift(*pj, *pk))
      out.insert(KmCosetDescriptor::join(twisted, j, k));
  }
  return out;
}

QSet q_rec(const GrigElement &g, const GrigElement &h, int n, int m);

QSet q_step(const GrigElement &g, const GrigElement &h, int n, int m) {
  if (m == 0 && n == 3)
    return base_case(g, h);
  Split sg = split(g);
  Split sh = split(h);
  if (sg.twist != sh.twist)
    return QSet(m);
  const GrigElement &g0 = sg.s0, &g1 = sg.s1;
  const GrigElement &h0 = sh.s0, &h1 = sh.s1;
  int lower = m == 0 ? 0 : m - 1;
  QSet out(m);
  auto merge = [&out](const QSet &part) {
    if (out.level() == 0) {
      out = QSet::from_mask(
          static_cast<std::uint16_t>(out.mask() | part.mask()));
      return;
    }
    for (const auto &d : part.members())
      out.insert(d);
  };
  if (!sg.twist) {
    // x fixes the first level: x_i^-1 g_i x_i = h_i.
    QSet s00 = q_rec(g0, h0, n - 1, lower);
    if (!s00.empty()) {
      QSet s11 = q_rec(g1, h1, n - 1, lower);
      merge(lift_product(s00, s11, false, m));
    }
    // x = x' a: x'_0 conjugates g_0 to h_1 and x'_1 conjugates g_1 to h_0.
    QSet s01 = q_rec(g0, h1, n - 1, lower);
    if (!s01.empty()) {
      QSet s10 = q_rec(g1, h0, n - 1, lower);
      merge(lift_product(s01, s10, true, m));
    }
  } else {
    // g = (g0,g1)a, h = (h0,h1)a.
    // x fixes the first level: x_0 conjugates g0 g1 to h0 h1 and
    // x_1 = g1 x_0 h1^-1.
    QSet fixed = q_rec(g0 * g1, h0 * h1, n - 1, lower);
    merge(lift_constrained(fixed, g1, h1.inverse(), false, m));
    // x = x' a: x'_0 conjugates g0 g1 to h1 h0 and x'_1 = g0^-1 x'_0 h1.
    QSet swapped = q_rec(g0 * g1, h1 * h0, n - 1, lower);
    merge(lift_constrained(swapped, g0.inverse(), h1, true, m));
  }
  return out;
}

QSet q_rec(const GrigElement &g, const GrigElement &h, int n, int m) {
  std::string key = memo_key(g, h, n, m);
  if (auto hit = memo().get(key))
    return *hit;
  QSet result = q_step(g, h, n, m);
  memo().put(key, result);
  return result;
}

int ceil_log2(std::uint64_t x) {
  return x <= 1 ? 0 : static_cast<int>(std::bit_width(x - 1));
}

void require_level(int m) {
  if (m < 0)
    throw InputError("K_m level must be non-negative");
  if (m > km_level_guard())
    throw ResourceError("K_m level " + std::to_string(m) + " exceeds guard " +
                        std::to_string(km_level_guard()) +
                        " (set GRIG_MAX_KM_LEVEL to raise it)");
}

} // namespace

QSet q_fin(const GrigElement &g, const GrigElement &h, int n) {
  return q_fin_km(g, h, n, 0);
}

QSet q_fin_km(const GrigElement &g, const GrigElement &h, int n, int m) {
  require_level(m);
  if (n < m + 3)
    throw InputError("Q^{K_" + std::to_string(m) + "}_n needs n >= " +
                     std::to_string(m + 3));
  return q_rec(g, h, n, m);
}

int exact_depth(const GrigElement &g, const GrigElement &h) {
  std::size_t len = std::max(g.length(), h.length());
  if (len <= 1)
    return 6;
  if (len <= 2)
    return 10;
  return 4 * ceil_log2(2 * len) + 10;
}

int exact_depth_km(const GrigElement &g, const GrigElement &h, int m) {
  if (m == 0)
    return exact_depth(g, h);
  std::size_t r = std::max<std::size_t>({g.length(), h.length(), 1});
  return 4 * ceil_log2(2 * (r + static_cast<std::size_t>(m))) + 10 + m;
}

QSet q_exact(const GrigElement &g, const GrigElement &h) {
  return q_fin(g, h, exact_depth(g, h));
}

QSet q_exact_km(const GrigElement &g, const GrigElement &h, int m) {
  require_level(m);
  if (m == 0)
    return q_exact(g, h);
  return q_fin_km(g, h, exact_depth_km(g, h, m), m);
}

ConjugacyResult is_conjugate(const GrigElement &g, const GrigElement &h) {
  ConjugacyResult r;
  r.depth = exact_depth(g, h);
  r.witnesses = q_fin(g, h, r.depth);
  r.conjugate = !r.witnesses.empty();
  return r;
}

QSet subgroup_image(std::span<const GrigElement> gens, int m) {
  require_level(m);
  std::vector<KmCosetDescriptor> seeds;
  for (const auto &g : gens)
    seeds.push_back(km_coset_of(g, m));
  QSet image(m);
  KmCosetDescriptor one(m);
  image.insert(one);
  std::vector<KmCosetDescriptor> frontier{one};
  while (!frontier.empty()) {
    std::vector<KmCosetDescriptor> next;
    for (const auto &x : frontier)
      for (const auto &s : seeds) {
        KmCosetDescriptor y = km_mul(x, s);
        if (!image.contains(y)) {
          image.insert(y);
          next.push_back(std::move(y));
        }
      }
    frontier = std::move(next);
  }
  return image;
}

QSet conjugators_in_subgroup(const GrigElement &g, const GrigElement &h,
                             std::span<const GrigElement> gens, int m) {
  QSet q = q_exact_km(g, h, m);
  QSet out(m);
  if (q.empty())
    return out;
  QSet image = subgroup_image(gens, m);
  for (const auto &d : q.members())
    if (image.contains(d))
      out.insert(d);
  return out;
}

bool is_conjugate_in_subgroup(const GrigElement &g, const GrigElement &h,
                              std::span<const GrigElement> gens, int m) {
  return !conjugators_in_subgroup(g, h, gens, m).empty();
}

StabilizationReport stabilization_depth(const GrigElement &g,
                                        const GrigElement &h, int n_max) {
  if (n_max < 4)
    throw InputError("stabilization needs a maximum depth of at least 4");
  StabilizationReport r;
  r.n_max = n_max;
  r.bound = exact_depth(g, h);
  for (int n = 3; n <= n_max; ++n)
    r.by_depth.push_back(q_fin(g, h, n));
  r.depth = n_max;
  while (r.depth > 3 && r.by_depth[static_cast<std::size_t>(r.depth - 4)] ==
                            r.by_depth.back())
    --r.depth;
  r.within_bound = r.depth <= r.bound;
  return r;
}

// ---------------------------------------------------------------- trees

std::size_t SplittingTree::depth() const {
  std::size_t best = 0;
  std::vector<std::pair<std::size_t, std::size_t>> stack{{0, 0}};
  while (!stack.empty()) {
    auto [node, d] = stack.back();
    stack.pop_back();
    best = std::max(best, d);
    for (std::size_t c : nodes[node].children)
      stack.emplace_back(c, d + 1);
  }
  return best;
}

SplittingTree build_splitting_tree(const GrigElement &g, const GrigElement &h,
                                   int m) {
  if (m < 3)
    throw InputError("splitting tree needs m >= 3");
  SplittingTree tree;
  std::function<std::size_t(int, const GrigElement &, const GrigElement &)>
      grow = [&](int n, const GrigElement &x, const GrigElement &y) {
        if (tree.nodes.size() >= kMaxSplittingNodes)
          throw ResourceError("splitting tree exceeds " +
                              std::to_string(kMaxSplittingNodes) + " nodes");
        std::size_t id = tree.nodes.size();
        tree.nodes.push_back({n, x, y, SplittingTree::Kind::Base, {}});
        if (n == 3)
          return id;
        Split sx = split(x);
        Split sy = split(y);
        std::vector<std::size_t> kids;
        SplittingTree::Kind kind;
        if (sx.twist != sy.twist) {
          kind = SplittingTree::Kind::Mismatch;
        } else if (!sx.twist) {
          kind = SplittingTree::Kind::Fixed;
          kids.push_back(grow(n - 1, sx.s0, sy.s0));
          kids.push_back(grow(n - 1, sx.s1, sy.s1));
          kids.push_back(grow(n - 1, sx.s0, sy.s1));
          kids.push_back(grow(n - 1, sx.s1, sy.s0));
        } else {
          kind = SplittingTree::Kind::Swapped;
          kids.push_back(grow(n - 1, sx.s0 * sx.s1, sy.s0 * sy.s1));
          kids.push_back(grow(n - 1, sx.s0 * sx.s1, sy.s1 * sy.s0));
        }
        tree.nodes[id].kind = kind;
        tree.nodes[id].children = std::move(kids);
        return id;
      };
  grow(m, g, h);
  return tree;
}

QSet evaluate(const SplittingTree &tree) {
  std::function<QSet(std::size_t)> eval = [&](std::size_t id) -> QSet {
    const auto &node = tree.nodes[id];
    switch (node.kind) {
    case SplittingTree::Kind::Base:
      return base_case(node.x, node.y);
    case SplittingTree::Kind::Mismatch:
      return QSet(0);
    case SplittingTree::Kind::Fixed: {
      const auto &c = node.children;
      QSet a = lift_product(eval(c[0]), eval(c[1]), false, 0);
      QSet b = lift_product(eval(c[2]), eval(c[3]), true, 0);
      return QSet::from_mask(static_cast<std::uint16_t>(a.mask() | b.mask()));
    }
    case SplittingTree::Kind::Swapped: {
      Split sx = split(node.x);
      Split sy = split(node.y);
      QSet a = lift_constrained(eval(node.children[0]), sx.s1,
                                sy.s1.inverse(), false, 0);
      QSet b = lift_constrained(eval(node.children[1]), sx.s0.inverse(),
                                sy.s1, true, 0);
      return QSet::from_mask(static_cast<std::uint16_t>(a.mask() | b.mask()));
    }
    }
    throw InternalError("unknown splitting node kind");
  };
  return eval(0);
}

std::string export_dot(const SplittingTree &tree) {
  auto word = [](const GrigElement &w) {
    return w.str().empty() ? std::string("1") : w.str();
  };
  std::ostringstream out;
  out << "digraph splitting_tree {\n  node [shape=box];\n";
  for (std::size_t i = 0; i < tree.nodes.size(); ++i) {
    const auto &node = tree.nodes[i];
    out << "  n" << i << " [label=\"(" << node.n << "; " << word(node.x)
        << ", " << word(node.y) << ")\"";
    if (node.kind == SplittingTree::Kind::Mismatch)
      out << ", style=dashed";
    out << "];\n";
  }
  for (std::size_t i = 0; i < tree.nodes.size(); ++i)
    for (std::size_t c : tree.nodes[i].children)
      out << "  n" << i << " -> n" << c << ";\n";
  out << "}\n";
  return out.str();
}

void set_memo_capacity(std::size_t entries) { memo().set_capacity(entries); }

void clear_memo() { memo().clear(); }

} // namespace grig
