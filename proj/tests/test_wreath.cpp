#include "grig/errors.hpp"
#include "grig/finite_group.hpp"
#include "grig/verify.hpp"
#include "grig/wreath.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <set>

using namespace grig;

namespace {

std::mt19937_64 &rng() {
  static std::mt19937_64 r(7);
  return r;
}

WreathElement random_element(const WreathProduct &w) {
  return w.element(std::uniform_int_distribution<std::uint64_t>(
      0, w.order() - 1)(rng()));
}

WreathElement random_reduced(const WreathProduct &w) {
  for (;;) {
    WreathElement x = random_element(w);
    if (is_reduced(w, x))
      return x;
  }
}

bool is_subgroup_of(const std::vector<int> &sub, const std::vector<int> &of) {
  return std::includes(of.begin(), of.end(), sub.begin(), sub.end());
}

} // namespace

TEST(FiniteGroup, Constructors) {
  EXPECT_EQ(FiniteGroup::cyclic(5).order(), 5);
  EXPECT_TRUE(FiniteGroup::cyclic(5).is_abelian());
  EXPECT_EQ(FiniteGroup::dihedral(4).order(), 8);
  EXPECT_FALSE(FiniteGroup::dihedral(4).is_abelian());
  EXPECT_EQ(FiniteGroup::symmetric(3).order(), 6);
  EXPECT_EQ(FiniteGroup::symmetric(4).order(), 24);
  EXPECT_EQ(FiniteGroup::by_name("D3").order(), 6);
  EXPECT_THROW(FiniteGroup::by_name("Q8"), InputError);
  EXPECT_THROW(FiniteGroup::by_name("C"), InputError);
  EXPECT_TRUE(FiniteGroup::dihedral(4).is_p_group(2));
  EXPECT_FALSE(FiniteGroup::symmetric(3).is_p_group(2));
}

TEST(FiniteGroup, TableLaws) {
  for (const char *name : {"C6", "D4", "S3", "S4", "D6"}) {
    FiniteGroup g = FiniteGroup::by_name(name);
    int e = g.identity();
    for (int x = 0; x < g.order(); ++x) {
      ASSERT_EQ(g.mul(e, x), x);
      ASSERT_EQ(g.mul(x, g.inv(x)), e);
      for (int y = 0; y < g.order(); ++y)
        for (int z = 0; z < g.order(); ++z)
          ASSERT_EQ(g.mul(g.mul(x, y), z), g.mul(x, g.mul(y, z)));
    }
  }
}

TEST(FiniteGroup, RejectsBrokenTables) {
  EXPECT_THROW(FiniteGroup({{0, 1}, {1, 1}}), InputError);
  EXPECT_THROW(FiniteGroup({{0, 1}, {1}}), InputError);
  // A Latin square that is not associative (no identity-compatible law).
  EXPECT_THROW(FiniteGroup({{0, 2, 1}, {2, 1, 0}, {1, 0, 2}}), InputError);
}

TEST(FiniteGroup, JsonInput) {
  FiniteGroup c3 = FiniteGroup::from_json(
      R"({"order": 3, "table": [[0,1,2],[1,2,0],[2,0,1]],
          "names": ["e","r","rr"], "label": "C3"})");
  EXPECT_EQ(c3.order(), 3);
  EXPECT_EQ(c3.name(2), "rr");
  EXPECT_EQ(c3.label(), "C3");
  EXPECT_THROW(FiniteGroup::from_json(R"({"order": 2, "table": [[0,1]]})"),
               InputError);
  EXPECT_THROW(FiniteGroup::from_json("not json"), InputError);
  WreathProduct w(c3, FiniteGroup::cyclic(2));
  EXPECT_EQ(w.order(), 18u);
}

TEST(FiniteGroup, NormalSubgroups) {
  EXPECT_EQ(FiniteGroup::symmetric(3).normal_subgroups().size(), 3u);
  EXPECT_EQ(FiniteGroup::dihedral(4).normal_subgroups().size(), 6u);
  EXPECT_EQ(FiniteGroup::symmetric(4).normal_subgroups().size(), 4u);
  FiniteGroup s3 = FiniteGroup::symmetric(3);
  for (const auto &n : s3.normal_subgroups())
    EXPECT_TRUE(s3.is_normal(n));
}

TEST(Wreath, MultiplicationLaws) {
  WreathProduct w(FiniteGroup::cyclic(2), FiniteGroup::cyclic(3));
  EXPECT_EQ(w.order(), 24u);
  // (f,1)(g,1) is pointwise.
  WreathElement f{{1, 0, 1}, 0}, g{{1, 1, 0}, 0};
  EXPECT_EQ(w.mul(f, g), (WreathElement{{0, 1, 1}, 0}));
  for (std::uint64_t i = 0; i < w.order(); ++i) {
    WreathElement x = w.element(i);
    ASSERT_EQ(w.index(x), i);
    ASSERT_EQ(w.mul(w.identity(), x), x);
    ASSERT_EQ(w.mul(x, w.identity()), x);
    ASSERT_TRUE(w.is_identity(w.mul(x, w.inv(x))));
  }
}

TEST(Wreath, Associativity) {
  for (auto [a, b] : default_wreath_groups()) {
    WreathProduct w(FiniteGroup::by_name(a), FiniteGroup::by_name(b));
    if (w.order() <= 100) {
      for (std::uint64_t i = 0; i < w.order(); ++i)
        for (std::uint64_t j = 0; j < w.order(); ++j)
          for (std::uint64_t k = 0; k < w.order(); ++k) {
            auto x = w.element(i), y = w.element(j), z = w.element(k);
            ASSERT_EQ(w.mul(w.mul(x, y), z), w.mul(x, w.mul(y, z)));
          }
    } else {
      for (int t = 0; t < 20000; ++t) {
        auto x = random_element(w), y = random_element(w),
             z = random_element(w);
        ASSERT_EQ(w.mul(w.mul(x, y), z), w.mul(x, w.mul(y, z)));
      }
    }
  }
}

TEST(Wreath, TranslationAction) {
  // b f b^-1 = (x -> f(bx)) under the left translation action.
  WreathProduct w(FiniteGroup::cyclic(3), FiniteGroup::cyclic(4));
  for (int t = 0; t < 200; ++t) {
    WreathElement x = random_element(w);
    WreathElement f{x.f, 0};
    WreathElement b{std::vector<int>(4, 0), x.b};
    WreathElement moved = w.mul(w.mul(b, f), w.inv(b));
    for (int y = 0; y < 4; ++y)
      ASSERT_EQ(moved.f[y], f.f[w.top().mul(x.b, y)]);
  }
}

TEST(Wreath, ResourceGuard) {
  WreathProduct big(FiniteGroup::cyclic(10), FiniteGroup::cyclic(6));
  EXPECT_THROW(big.require_enumerable(), ResourceError);
  EXPECT_THROW(centralizer_brute(big, big.identity()), ResourceError);
}

TEST(Fbar, Examples) {
  FiniteGroup c4 = FiniteGroup::cyclic(4), c2 = FiniteGroup::cyclic(2);
  EXPECT_EQ(fbar(c4, c2, {0, 0}, 1, 0), 0);
  EXPECT_EQ(fbar(c4, c2, {3, 2}, 0, 1), 2);
  EXPECT_EQ(fbar(c4, c2, {1, 3}, 1, 0), 0);
  EXPECT_EQ(fbar(c4, c2, {1, 1}, 1, 0), 2);
  // Nonabelian A: the product runs along the orbit from x.
  FiniteGroup s3 = FiniteGroup::symmetric(3), c3 = FiniteGroup::cyclic(3);
  std::vector<int> h{1, 2, 3};
  EXPECT_EQ(fbar(s3, c3, h, 1, 0), s3.mul(s3.mul(1, 2), 3));
  EXPECT_EQ(fbar(s3, c3, h, 1, 1), s3.mul(s3.mul(2, 3), 1));
}

TEST(Meldrum, Examples) {
  WreathProduct w(FiniteGroup::symmetric(3), FiniteGroup::cyclic(3));
  EXPECT_EQ(centralizer_meldrum(w, w.identity()).size(), w.order());
  // w = (1, b): g c centralizes iff c in C_B(b) and g is constant along
  // <b>-orbits, i.e. f(cx) = f(x) in the remark's notation.
  WreathElement b{{0, 0, 0}, 1};
  auto cent = centralizer_meldrum(w, b);
  for (auto i : cent) {
    WreathElement y = w.element(i);
    ASSERT_EQ(y.f[0], y.f[1]);
    ASSERT_EQ(y.f[1], y.f[2]);
  }
  EXPECT_EQ(cent.size(), 6u * 3u);
  EXPECT_EQ(cent, centralizer_brute(w, b));
  for (int t = 0; t < 40; ++t) {
    WreathElement x = random_element(w);
    ASSERT_EQ(centralizer_meldrum(w, x), centralizer_brute(w, x))
        << w.to_string(x);
  }
}

TEST(Meldrum, EveryElementOfTheSuite) {
  SuiteResult r = verify_wreath_suite(default_wreath_groups(), 4);
  EXPECT_TRUE(r.pass) << (r.problems.empty() ? "" : r.problems.front());
  EXPECT_NE(r.summary.find("784 elements"), std::string::npos) << r.summary;
}

TEST(SimplifiedCentralizer, Examples) {
  WreathProduct w(FiniteGroup::cyclic(2), FiniteGroup::cyclic(4));
  // f = 1: C_B(1, b) = C_B(b), with g constant on <b>-cosets.
  WreathElement b2{{0, 0, 0, 0}, 2};
  auto cent = centralizer_abelian(w, b2);
  EXPECT_EQ(cent, centralizer_brute(w, b2));
  EXPECT_EQ(cent.size(), 4u * 4u);
  // b = 1: c must fix each level set of f.
  WreathElement f{{1, 0, 0, 0}, 0};
  EXPECT_EQ(cbfb(w, f), (std::vector<int>{0}));
  WreathElement f2{{1, 0, 1, 0}, 0};
  EXPECT_EQ(cbfb(w, f2), (std::vector<int>{0, 2}));
  EXPECT_EQ(centralizer_abelian(w, f2), centralizer_brute(w, f2));
  for (int t = 0; t < 60; ++t) {
    WreathElement x = random_reduced(w);
    ASSERT_EQ(centralizer_abelian(w, x), centralizer_brute(w, x))
        << w.to_string(x);
  }
}

TEST(SimplifiedCentralizer, Preconditions) {
  WreathProduct nonabelian(FiniteGroup::symmetric(3), FiniteGroup::cyclic(2));
  EXPECT_THROW(centralizer_abelian(nonabelian, nonabelian.identity()),
               InputError);
  WreathProduct w(FiniteGroup::cyclic(2), FiniteGroup::cyclic(4));
  WreathElement unreduced{{1, 1, 0, 0}, 1};
  ASSERT_FALSE(is_reduced(w, unreduced));
  EXPECT_THROW(centralizer_abelian(w, unreduced), InputError);
}

TEST(Reduction, Examples) {
  WreathProduct w(FiniteGroup::cyclic(3), FiniteGroup::cyclic(4));
  WreathElement reduced{{1, 0, 0, 0}, 1};
  EXPECT_EQ(reduce_element(w, reduced).reduced.f, reduced.f);
  WreathElement trivial_f{{0, 0, 0, 0}, 2};
  EXPECT_EQ(reduce_element(w, trivial_f).reduced, trivial_f);
  // Support {x, bx} with values u, v collapses to one point carrying u + v.
  WreathElement two{{1, 1, 0, 0}, 1};
  Reduction r = reduce_element(w, two);
  EXPECT_TRUE(is_reduced(w, r.reduced));
  int nonzero = 0, total = 0;
  for (int v : r.reduced.f) {
    nonzero += v != 0;
    total += v;
  }
  EXPECT_EQ(nonzero, 1);
  EXPECT_EQ(total % 3, 2);
  EXPECT_EQ(w.mul(w.mul(w.inv(r.conjugator), two), r.conjugator), r.reduced);
}

TEST(Reduction, ConjugateAndReduced) {
  for (auto [a, b] : {std::pair{"C2", "C4"}, {"C3", "S3"}, {"C2", "D4"}}) {
    WreathProduct w(FiniteGroup::by_name(a), FiniteGroup::by_name(b));
    for (int t = 0; t < 100; ++t) {
      WreathElement x = random_element(w);
      if (x.b == w.top().identity())
        continue;
      Reduction r = reduce_element(w, x);
      ASSERT_TRUE(is_reduced(w, r.reduced));
      ASSERT_EQ(r.conjugator.b, w.top().identity());
      ASSERT_EQ(w.mul(w.mul(w.inv(r.conjugator), x), r.conjugator), r.reduced);
    }
  }
}

TEST(Sigma, ExactSequence) {
  for (auto [a, b] : {std::pair{"C2", "C4"}, {"C2", "D4"}, {"C3", "S3"}}) {
    WreathProduct w(FiniteGroup::by_name(a), FiniteGroup::by_name(b));
    int tested = 0;
    while (tested < 50) {
      WreathElement x = random_reduced(w);
      bool f_trivial =
          std::all_of(x.f.begin(), x.f.end(), [](int v) { return v == 0; });
      if (f_trivial || x.b == w.top().identity())
        continue;
      ++tested;
      SigmaReport s = sigma(w, x);
      ASSERT_TRUE(s.exact) << w.to_string(x);
      ASSERT_TRUE(s.kernel_is_cyclic_b) << w.to_string(x);
      ASSERT_EQ(s.cbfb_order, s.kernel.size() * s.image.size());
      ASSERT_LE(s.image.size(), s.level_set_permutations);
    }
  }
}

TEST(Sigma, SinglePointSupport) {
  WreathProduct w(FiniteGroup::cyclic(2), FiniteGroup::cyclic(4));
  WreathElement x{{1, 0, 0, 0}, 2};
  SigmaReport s = sigma(w, x);
  EXPECT_EQ(s.support, (std::vector<int>{0}));
  EXPECT_EQ(s.image.size(), 1u);
  // C_B(f,b) is the stabilizer of the coset <b>: here <b> itself.
  EXPECT_EQ(cbfb(w, x), (std::vector<int>{0, 2}));
}

TEST(CentralizerStructure, OrderIdentity) {
  WreathProduct w(FiniteGroup::cyclic(2), FiniteGroup::cyclic(4));
  WreathElement b{{0, 0, 0, 0}, 1};
  auto rb = check_centralizer_structure(w, b);
  EXPECT_TRUE(rb.match);
  EXPECT_TRUE(rb.order_identity);
  EXPECT_EQ(rb.centralizer_order, 2u * 4u);
  for (auto [a, bn] : {std::pair{"C2", "C4"}, {"C2", "D4"}, {"C3", "S3"}}) {
    WreathProduct wp(FiniteGroup::by_name(a), FiniteGroup::by_name(bn));
    for (int t = 0; t < 50; ++t) {
      WreathElement x = random_reduced(wp);
      auto r = check_centralizer_structure(wp, x);
      ASSERT_TRUE(r.match) << wp.to_string(x);
      ASSERT_TRUE(r.order_identity) << wp.to_string(x);
      ASSERT_EQ(r.predicted_order, r.centralizer_order);
    }
  }
}

TEST(CentralizerStructure, WrongExponentIsCaught) {
  WreathProduct w(FiniteGroup::cyclic(2), FiniteGroup::cyclic(4));
  for (int t = 0; t < 20; ++t) {
    WreathElement x = random_reduced(w);
    auto r = check_centralizer_structure(w, x, 1);
    ASSERT_FALSE(r.order_identity);
    ASSERT_TRUE(r.match);
  }
}

TEST(ProjectAbelian, Examples) {
  FiniteGroup c2 = FiniteGroup::cyclic(2), c4 = FiniteGroup::cyclic(4);
  auto iso = project_abelian(c2, c4, {0});
  EXPECT_TRUE(iso.homomorphism);
  EXPECT_TRUE(iso.kernel_matches);
  EXPECT_EQ(iso.kernel_order, 1u);
  auto whole = project_abelian(c2, c4, {0, 1, 2, 3});
  EXPECT_TRUE(whole.homomorphism);
  EXPECT_TRUE(whole.kernel_matches);
  EXPECT_EQ(whole.kernel_order, 8u * 4u);
  auto half = project_abelian(c2, c4, {0, 2});
  EXPECT_TRUE(half.homomorphism);
  EXPECT_TRUE(half.kernel_matches);
  EXPECT_EQ(half.kernel_order, half.expected_kernel_order);
  EXPECT_EQ(half.kernel_order, 8u);
  auto d4 = project_abelian(FiniteGroup::cyclic(3), FiniteGroup::dihedral(2),
                            {0, 1});
  EXPECT_TRUE(d4.homomorphism);
  EXPECT_TRUE(d4.kernel_matches);
}

TEST(ProjectAbelian, Preconditions) {
  FiniteGroup s3 = FiniteGroup::symmetric(3);
  std::vector<int> transposition;
  for (int x = 0; x < s3.order(); ++x)
    if (s3.element_order(x) == 2) {
      transposition = s3.generate({x});
      break;
    }
  EXPECT_THROW(project_abelian(FiniteGroup::cyclic(2), s3, transposition),
               InputError);
  EXPECT_THROW(project_abelian(s3, FiniteGroup::cyclic(2), {0}), InputError);
}

TEST(FactorThroughBase, Examples) {
  WreathProduct w(FiniteGroup::cyclic(4), FiniteGroup::cyclic(2));
  std::vector<std::uint64_t> all(w.order());
  for (std::uint64_t i = 0; i < w.order(); ++i)
    all[i] = i;
  auto whole = factor_through_base(w, all, 2);
  ASSERT_TRUE(whole.has_value());
  EXPECT_EQ(whole->size(), 4u);
  auto trivial = factor_through_base(w, {w.index(w.identity())}, 2);
  ASSERT_TRUE(trivial.has_value());
  EXPECT_EQ(*trivial, (std::vector<int>{0}));
}

TEST(FactorThroughBase, RandomNormalSubgroups) {
  WreathProduct w(FiniteGroup::cyclic(4), FiniteGroup::cyclic(2));
  const FiniteGroup &a = w.base();
  for (int t = 0; t < 30; ++t) {
    auto k = wreath_normal_closure(w, {random_element(w)});
    auto ka = factor_through_base(w, k, 2);
    ASSERT_TRUE(ka.has_value());
    ASSERT_TRUE(a.is_normal(*ka));
    ASSERT_EQ(a.order() % static_cast<int>(ka->size()), 0);
    // (K_A)^B lies in K.
    std::set<std::uint64_t> kset(k.begin(), k.end());
    for (int u : *ka)
      for (int v : *ka)
        ASSERT_TRUE(kset.count(w.index(WreathElement{{u, v}, 0})));
    // K_A is the largest such normal subgroup.
    for (const auto &n : a.normal_subgroups()) {
      bool inside = true;
      for (int u : n)
        for (int v : n)
          inside = inside && kset.count(w.index(WreathElement{{u, v}, 0}));
      if (inside)
        ASSERT_TRUE(is_subgroup_of(n, *ka));
    }
  }
}

TEST(FactorThroughBase, PrimeNeedsPGroupTop) {
  WreathProduct w(FiniteGroup::cyclic(2), FiniteGroup::cyclic(3));
  EXPECT_THROW(factor_through_base(w, {0}, 2), InputError);
}
