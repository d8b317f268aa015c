#include "grig/wreath.hpp"

#include "grig/errors.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <set>
#include <sstream>

namespace grig {

WreathProduct::WreathProduct(FiniteGroup a, FiniteGroup b)
    : a_(std::move(a)), b_(std::move(b)) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t n = static_cast<std::uint64_t>(b_.order());
  for (int i = 0; i < b_.order() && n != kMax; ++i)
    n = n > kMax / static_cast<std::uint64_t>(a_.order())
            ? kMax
            : n * static_cast<std::uint64_t>(a_.order());
  order_ = n;
}

WreathElement WreathProduct::identity() const {
  return {std::vector<int>(b_.order(), a_.identity()), b_.identity()};
}

WreathElement WreathProduct::mul(const WreathElement &x,
                                 const WreathElement &y) const {
  WreathElement out;
  out.f.resize(x.f.size());
  for (int p = 0; p < b_.order(); ++p)
    out.f[p] = a_.mul(x.f[p], y.f[b_.mul(x.b, p)]);
  out.b = b_.mul(x.b, y.b);
  return out;
}

WreathElement WreathProduct::inv(const WreathElement &x) const {
  // (f b)^-1 = (p -> f(b^-1 p)^-1) b^-1
  WreathElement out;
  out.b = b_.inv(x.b);
  out.f.resize(x.f.size());
  for (int p = 0; p < b_.order(); ++p)
    out.f[p] = a_.inv(x.f[b_.mul(out.b, p)]);
  return out;
}

bool WreathProduct::is_identity(const WreathElement &x) const {
  if (x.b != b_.identity())
    return false;
  return std::all_of(x.f.begin(), x.f.end(),
                     [&](int v) { return v == a_.identity(); });
}

void WreathProduct::require_enumerable() const {
  if (order_ > kMaxWreathOrder)
    throw ResourceError(label() + " has more than " +
                        std::to_string(kMaxWreathOrder) + " elements");
}

std::uint64_t WreathProduct::index(const WreathElement &x) const {
  require_enumerable();
  std::uint64_t code = 0;
  for (int p = b_.order() - 1; p >= 0; --p)
    code = code * static_cast<std::uint64_t>(a_.order()) +
           static_cast<std::uint64_t>(x.f[p]);
  return code * static_cast<std::uint64_t>(b_.order()) +
         static_cast<std::uint64_t>(x.b);
}

WreathElement WreathProduct::element(std::uint64_t index) const {
  require_enumerable();
  if (index >= order_)
    throw InputError("wreath element index out of range");
  WreathElement out;
  out.b = static_cast<int>(index % static_cast<std::uint64_t>(b_.order()));
  std::uint64_t code = index / static_cast<std::uint64_t>(b_.order());
  out.f.resize(b_.order());
  for (int p = 0; p < b_.order(); ++p) {
    out.f[p] = static_cast<int>(code % static_cast<std::uint64_t>(a_.order()));
    code /= static_cast<std::uint64_t>(a_.order());
  }
  return out;
}

std::string WreathProduct::to_string(const WreathElement &x) const {
  std::ostringstream out;
  out << "f=(";
  for (std::size_t p = 0; p < x.f.size(); ++p)
    out << (p ? "," : "") << a_.name(x.f[p]);
  out << ") b=" << b_.name(x.b);
  return out.str();
}

int fbar(const FiniteGroup &a, const FiniteGroup &b, const std::vector<int> &h,
         int d, int x) {
  int out = a.identity();
  int y = x;
  do {
    out = a.mul(out, h[y]);
    y = b.mul(d, y);
  } while (y != x);
  return out;
}

namespace {

std::vector<std::uint64_t> sorted(std::vector<std::uint64_t> v) {
  std::sort(v.begin(), v.end());
  return v;
}

// Every function B -> A, in index order.
template <class Visit>
void for_each_function(const WreathProduct &w, Visit visit) {
  const int na = w.base().order();
  const int nb = w.top().order();
  std::vector<int> g(nb, 0);
  for (;;) {
    visit(g);
    int p = 0;
    while (p < nb && ++g[p] == na)
      g[p++] = 0;
    if (p == nb)
      return;
  }
}

void require_abelian(const WreathProduct &w) {
  if (!w.base().is_abelian())
    throw InputError("this operation needs an abelian base group");
}

// <b>x for each x, as the least element of the coset.
std::vector<int> coset_reps(const FiniteGroup &b, int d) {
  std::vector<int> rep(b.order(), -1);
  for (int x = 0; x < b.order(); ++x) {
    if (rep[x] >= 0)
      continue;
    int y = x;
    do {
      rep[y] = x;
      y = b.mul(d, y);
    } while (y != x);
  }
  return rep;
}

bool commutes(const FiniteGroup &b, int x, int y) {
  return b.mul(x, y) == b.mul(y, x);
}

} // namespace

std::vector<std::uint64_t> centralizer_brute(const WreathProduct &w,
                                             const WreathElement &x) {
  w.require_enumerable();
  std::vector<std::uint64_t> out;
  for (std::uint64_t i = 0; i < w.order(); ++i) {
    WreathElement y = w.element(i);
    if (w.mul(x, y) == w.mul(y, x))
      out.push_back(i);
  }
  return out;
}

std::vector<std::uint64_t> centralizer_meldrum(const WreathProduct &w,
                                               const WreathElement &x) {
  w.require_enumerable();
  const FiniteGroup &A = w.base();
  const FiniteGroup &B = w.top();
  const auto &f = x.f;
  const int b = x.b;
  std::vector<int> fb(B.order());
  for (int p = 0; p < B.order(); ++p)
    fb[p] = fbar(A, B, f, b, p);
  std::vector<std::uint64_t> out;
  for (int c = 0; c < B.order(); ++c) {
    // (i) c in C_B(b)
    if (!commutes(B, b, c))
      continue;
    // (ii) fbar(b, cx) ~ fbar(b, x)
    bool ok = true;
    for (int p = 0; p < B.order() && ok; ++p)
      ok = A.conjugate(fb[B.mul(c, p)], fb[p]);
    if (!ok)
      continue;
    for_each_function(w, [&](const std::vector<int> &g) {
      for (int p = 0; p < B.order(); ++p) {
        // (iii) fbar(b, cx) = g(x)^-1 fbar(b, x) g(x)
        if (fb[B.mul(c, p)] != A.mul(A.mul(A.inv(g[p]), fb[p]), g[p]))
          return;
        // (iv) g(bx) = f(x)^-1 g(x) f(cx)
        if (g[B.mul(b, p)] !=
            A.mul(A.mul(A.inv(f[p]), g[p]), f[B.mul(c, p)]))
          return;
      }
      out.push_back(w.index({g, c}));
    });
  }
  return sorted(std::move(out));
}

bool is_reduced(const WreathProduct &w, const WreathElement &x) {
  auto rep = coset_reps(w.top(), x.b);
  std::set<int> seen;
  for (int p = 0; p < w.top().order(); ++p)
    if (x.f[p] != w.base().identity() && !seen.insert(rep[p]).second)
      return false;
  return true;
}

std::vector<int> cbfb(const WreathProduct &w, const WreathElement &x) {
  require_abelian(w);
  const FiniteGroup &A = w.base();
  const FiniteGroup &B = w.top();
  // <b> f^-1(a) for each non-trivial value a.
  std::map<int, std::set<int>> saturated;
  for (int p = 0; p < B.order(); ++p)
    if (x.f[p] != A.identity())
      saturated[x.f[p]];
  for (auto &[a, s] : saturated)
    for (int p = 0; p < B.order(); ++p)
      if (x.f[p] == a)
        for (int e = 0, y = p; e < B.element_order(x.b);
             ++e, y = B.mul(x.b, y))
          s.insert(y);
  std::vector<int> out;
  for (int c = 0; c < B.order(); ++c) {
    if (!commutes(B, c, x.b))
      continue;
    bool ok = true;
    for (const auto &[a, s] : saturated) {
      // <b> c f^-1(a) as a set, compared with <b> f^-1(a).
      std::set<int> moved;
      for (int y : s)
        moved.insert(B.mul(c, y));
      if (moved != s) {
        ok = false;
        break;
      }
    }
    if (ok)
      out.push_back(c);
  }
  return out;
}

std::vector<std::uint64_t> centralizer_abelian(const WreathProduct &w,
                                               const WreathElement &x) {
  require_abelian(w);
  w.require_enumerable();
  if (!is_reduced(w, x))
    throw InputError("element is not reduced: " + w.to_string(x));
  const FiniteGroup &A = w.base();
  const FiniteGroup &B = w.top();
  std::vector<std::uint64_t> out;
  for (int c : cbfb(w, x))
    for_each_function(w, [&](const std::vector<int> &g) {
      for (int p = 0; p < B.order(); ++p)
        if (g[B.mul(x.b, p)] !=
            A.mul(A.mul(g[p], A.inv(x.f[p])), x.f[B.mul(c, p)]))
          return;
      out.push_back(w.index({g, c}));
    });
  return sorted(std::move(out));
}

Reduction reduce_element(const WreathProduct &w, const WreathElement &x) {
  require_abelian(w);
  const FiniteGroup &A = w.base();
  const FiniteGroup &B = w.top();
  auto rep = coset_reps(B, x.b);
  std::vector<int> h(B.order(), A.identity());
  for (int r = 0; r < B.order(); ++r) {
    if (rep[r] != r)
      continue;
    // h(b^k r) = f(b^k r) ... f(b^{n-1} r) for 0 < k < n, h(r) = 1.
    std::vector<int> orbit;
    for (int y = r;;) {
      orbit.push_back(y);
      y = B.mul(x.b, y);
      if (y == r)
        break;
    }
    int acc = A.identity();
    for (std::size_t k = orbit.size(); k-- > 1;) {
      acc = A.mul(x.f[orbit[k]], acc);
      h[orbit[k]] = acc;
    }
  }
  WreathElement conj{h, B.identity()};
  Reduction out{w.mul(w.mul(w.inv(conj), x), conj), conj};
  return out;
}

SigmaReport sigma(const WreathProduct &w, const WreathElement &x) {
  require_abelian(w);
  if (!is_reduced(w, x))
    throw InputError("element is not reduced: " + w.to_string(x));
  const FiniteGroup &A = w.base();
  const FiniteGroup &B = w.top();
  SigmaReport r;
  for (int p = 0; p < B.order(); ++p)
    if (x.f[p] != A.identity())
      r.support.push_back(p);
  auto rep = coset_reps(B, x.b);
  std::map<int, int> support_of_coset;
  for (std::size_t i = 0; i < r.support.size(); ++i)
    support_of_coset[rep[r.support[i]]] = static_cast<int>(i);

  auto c_b = cbfb(w, x);
  r.cbfb_order = c_b.size();
  std::set<std::vector<int>> image;
  for (int c : c_b) {
    std::vector<int> perm(r.support.size());
    for (std::size_t i = 0; i < r.support.size(); ++i) {
      auto it = support_of_coset.find(rep[B.mul(c, r.support[i])]);
      if (it == support_of_coset.end())
        throw InternalError("C_B(f,b) moved a support coset off the support");
      perm[i] = it->second;
    }
    bool trivial = true;
    for (std::size_t i = 0; i < perm.size(); ++i)
      trivial = trivial && perm[i] == static_cast<int>(i);
    if (trivial)
      r.kernel.push_back(c);
    image.insert(std::move(perm));
  }
  r.image.assign(image.begin(), image.end());

  std::map<int, std::size_t> level;
  for (int s : r.support)
    ++level[x.f[s]];
  r.level_set_permutations = 1;
  for (const auto &[a, count] : level)
    for (std::size_t k = 2; k <= count; ++k)
      r.level_set_permutations *= k;

  std::vector<int> cyclic;
  for (int e = 0, y = B.identity(); e < B.element_order(x.b);
       ++e, y = B.mul(x.b, y))
    cyclic.push_back(y);
  std::sort(cyclic.begin(), cyclic.end());
  r.kernel_is_cyclic_b = r.kernel == cyclic;
  r.exact = r.cbfb_order == r.kernel.size() * r.image.size();
  return r;
}

CentralizerReport check_centralizer_structure(const WreathProduct &w,
                                              const WreathElement &x,
                                              int exponent_adjust) {
  require_abelian(w);
  w.require_enumerable();
  if (!is_reduced(w, x))
    throw InputError("element is not reduced: " + w.to_string(x));
  const FiniteGroup &A = w.base();
  const FiniteGroup &B = w.top();
  CentralizerReport r;
  r.element = x;
  r.order_b = static_cast<std::size_t>(B.element_order(x.b));
  auto rep = coset_reps(B, x.b);
  std::vector<int> reps;
  for (int p = 0; p < B.order(); ++p)
    if (rep[p] == p)
      reps.push_back(p);

  auto c_b = cbfb(w, x);
  r.cbfb_order = c_b.size();
  r.sigma_order = sigma(w, x).image.size();

  std::vector<std::uint64_t> predicted;
  for (int c : c_b) {
    // g'(r) = 1 on each coset representative, then
    // g'(b^{e+1} r) = g'(b^e r) f(b^e r)^-1 f(c b^e r).
    std::vector<int> gp(B.order(), A.identity());
    for (int r0 : reps)
      for (int y = r0;;) {
        int next = B.mul(x.b, y);
        if (next == r0)
          break;
        gp[next] = A.mul(A.mul(gp[y], A.inv(x.f[y])), x.f[B.mul(c, y)]);
        y = next;
      }
    // h constant on cosets: one value of A per representative.
    std::vector<int> values(reps.size(), 0);
    for (;;) {
      std::vector<int> g(B.order());
      for (std::size_t i = 0; i < reps.size(); ++i)
        for (int y = reps[i];;) {
          g[y] = A.mul(values[i], gp[y]);
          y = B.mul(x.b, y);
          if (y == reps[i])
            break;
        }
      predicted.push_back(w.index({g, c}));
      std::size_t i = 0;
      while (i < values.size() && ++values[i] == A.order())
        values[i++] = 0;
      if (i == values.size())
        break;
    }
  }
  r.predicted = sorted(std::move(predicted));
  r.brute = centralizer_brute(w, x);
  r.match = r.predicted == r.brute;
  r.centralizer_order = r.brute.size();
  long long exponent = static_cast<long long>(reps.size()) + exponent_adjust;
  std::uint64_t p = 1;
  for (long long i = 0; i < exponent; ++i)
    p *= static_cast<std::uint64_t>(A.order());
  r.predicted_order = exponent < 0 ? 0 : p * r.cbfb_order;
  r.order_identity = r.predicted_order == r.centralizer_order;
  return r;
}

ProjectionReport project_abelian(const FiniteGroup &a, const FiniteGroup &b,
                                 const std::vector<int> &n) {
  if (!a.is_abelian())
    throw InputError("projection needs an abelian base group");
  if (!b.is_normal(n))
    throw InputError("N is not a normal subgroup of B");
  // B/N with cosets numbered by first appearance.
  std::vector<int> coset(b.order(), -1);
  std::vector<int> reps;
  for (int x = 0; x < b.order(); ++x) {
    if (coset[x] >= 0)
      continue;
    for (int m : n)
      coset[b.mul(x, m)] = static_cast<int>(reps.size());
    reps.push_back(x);
  }
  const int q = static_cast<int>(reps.size());
  std::vector<std::vector<int>> table(q, std::vector<int>(q));
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j)
      table[i][j] = coset[b.mul(reps[i], reps[j])];
  WreathProduct src(a, b);
  WreathProduct dst(a, FiniteGroup(std::move(table), {}, b.label() + "/N"));
  src.require_enumerable();

  auto pi = [&](const WreathElement &x) {
    WreathElement y{std::vector<int>(q, a.identity()), coset[x.b]};
    for (int p = 0; p < b.order(); ++p)
      y.f[coset[p]] = a.mul(y.f[coset[p]], x.f[p]);
    return y;
  };

  ProjectionReport r;
  r.homomorphism = dst.is_identity(pi(src.identity()));
  // Products against a generating set suffice once pi(1) = 1; all pairs are
  // checked when that is cheap.
  std::vector<WreathElement> gens;
  if (src.order() <= 3000) {
    for (std::uint64_t i = 0; i < src.order(); ++i)
      gens.push_back(src.element(i));
  } else {
    for (int v = 0; v < a.order(); ++v) {
      WreathElement g = src.identity();
      g.f[b.identity()] = v;
      gens.push_back(g);
    }
    for (int c = 0; c < b.order(); ++c) {
      WreathElement g = src.identity();
      g.b = c;
      gens.push_back(g);
    }
  }
  for (std::uint64_t i = 0; i < src.order() && r.homomorphism; ++i) {
    WreathElement x = src.element(i);
    WreathElement px = pi(x);
    for (const auto &g : gens)
      if (pi(src.mul(x, g)) != dst.mul(px, pi(g))) {
        r.homomorphism = false;
        break;
      }
  }

  std::set<int> in_n(n.begin(), n.end());
  std::uint64_t k_n = 0;
  r.kernel_matches = true;
  for (std::uint64_t i = 0; i < src.order(); ++i) {
    WreathElement x = src.element(i);
    bool in_kernel = dst.is_identity(pi(x));
    // K_N: prod_{m in N} f(y m) = 1 for every y.
    bool in_kn = true;
    for (int y = 0; y < b.order() && in_kn; ++y) {
      int prod = a.identity();
      for (int m : n)
        prod = a.mul(prod, x.f[b.mul(y, m)]);
      in_kn = prod == a.identity();
    }
    if (in_kn && x.b == b.identity())
      ++k_n;
    bool expected = in_kn && in_n.contains(x.b);
    if (in_kernel)
      ++r.kernel_order;
    if (in_kernel != expected)
      r.kernel_matches = false;
  }
  r.expected_kernel_order = k_n * n.size();
  r.kernel_matches = r.kernel_matches && r.kernel_order == r.expected_kernel_order;
  return r;
}

std::optional<std::vector<int>>
factor_through_base(const WreathProduct &w, const std::vector<std::uint64_t> &k,
                    std::optional<int> p) {
  const FiniteGroup &A = w.base();
  const FiniteGroup &B = w.top();
  if (p && !B.is_p_group(*p))
    throw InputError("B must be a p-group for the given prime");
  std::set<std::uint64_t> in_k(k.begin(), k.end());
  auto subgroups = A.normal_subgroups();
  for (auto it = subgroups.rbegin(); it != subgroups.rend(); ++it) {
    const auto &l = *it;
    if (p) {
      int index = A.order() / static_cast<int>(l.size());
      bool p_power = true;
      while (index > 1 && p_power) {
        p_power = index % *p == 0;
        index /= *p;
      }
      if (!p_power)
        continue;
    }
    // (L)^B is generated by the point functions with values in L.
    bool inside = true;
    for (int v : l)
      for (int y = 0; y < B.order() && inside; ++y) {
        WreathElement g = w.identity();
        g.f[y] = v;
        inside = in_k.contains(w.index(g));
      }
    if (inside)
      return l;
  }
  return std::nullopt;
}

std::vector<std::uint64_t>
wreath_normal_closure(const WreathProduct &w,
                      const std::vector<WreathElement> &gens) {
  w.require_enumerable();
  std::set<std::uint64_t> conj;
  for (const auto &g : gens)
    for (std::uint64_t i = 0; i < w.order(); ++i) {
      WreathElement z = w.element(i);
      conj.insert(w.index(w.mul(w.mul(w.inv(z), g), z)));
    }
  std::vector<WreathElement> seeds;
  for (auto i : conj)
    seeds.push_back(w.element(i));
  std::set<std::uint64_t> out{w.index(w.identity())};
  std::vector<WreathElement> frontier{w.identity()};
  while (!frontier.empty()) {
    std::vector<WreathElement> next;
    for (const auto &x : frontier)
      for (const auto &s : seeds) {
        WreathElement y = w.mul(x, s);
        if (out.insert(w.index(y)).second)
          next.push_back(std::move(y));
      }
    frontier = std::move(next);
  }
  return {out.begin(), out.end()};
}

} // namespace grig
