#pragma once

// Finite wreath products A wr B = A^B x| B with B acting by left translation,
// (b.f)(x) = f(bx). An element fb is stored as the pair (f, b) and
//   (f b)(g c) = (x -> f(x) g(bx)) bc.
// Everything here is exhaustive and meant for groups of a few thousand
// elements at most.

#include "grig/finite_group.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace grig {

struct WreathElement {
  std::vector<int> f;  ///< f[x] in A for each x in B
  int b = 0;

  auto operator<=>(const WreathElement &) const = default;
};

/// Largest |A wr B| the brute-force routines accept.
inline constexpr std::uint64_t kMaxWreathOrder = 100000;

class WreathProduct {
public:
  WreathProduct(FiniteGroup a, FiniteGroup b);

  const FiniteGroup &base() const noexcept { return a_; }
  const FiniteGroup &top() const noexcept { return b_; }
  /// |A|^|B| * |B|; saturates at UINT64_MAX.
  std::uint64_t order() const noexcept { return order_; }
  std::string label() const { return a_.label() + " wr " + b_.label(); }

  WreathElement identity() const;
  WreathElement mul(const WreathElement &x, const WreathElement &y) const;
  WreathElement inv(const WreathElement &x) const;
  bool is_identity(const WreathElement &x) const;

  /// index = code(f) * |B| + b with code(f) = sum f(x) |A|^x.
  /// Both throw ResourceError past kMaxWreathOrder.
  std::uint64_t index(const WreathElement &x) const;
  WreathElement element(std::uint64_t index) const;
  void require_enumerable() const;

  std::string to_string(const WreathElement &x) const;

private:
  FiniteGroup a_;
  FiniteGroup b_;
  std::uint64_t order_ = 0;
};

/// h(x) h(dx) ... h(d^{n-1} x), n = ord(d).
int fbar(const FiniteGroup &a, const FiniteGroup &b, const std::vector<int> &h,
         int d, int x);

/// Centralizer by testing every element; sorted indices.
std::vector<std::uint64_t> centralizer_brute(const WreathProduct &w,
                                             const WreathElement &x);
/// Candidates (g, c) filtered by Meldrum's four conditions.
std::vector<std::uint64_t> centralizer_meldrum(const WreathProduct &w,
                                               const WreathElement &x);

/// supp(f) meets every right coset <b>x at most once.
bool is_reduced(const WreathProduct &w, const WreathElement &x);
/// Candidates filtered by c in C_B(f,b) and g(bx) = g(x) f(x)^-1 f(cx).
/// Throws InputError unless A is abelian and x is reduced.
std::vector<std::uint64_t> centralizer_abelian(const WreathProduct &w,
                                               const WreathElement &x);

struct Reduction {
  WreathElement reduced;
  WreathElement conjugator;  ///< h with h^-1 x h = reduced, h in A^B
};

/// Collapses each <b>-orbit of supp(f) onto its least element. A abelian.
Reduction reduce_element(const WreathProduct &w, const WreathElement &x);

/// C_B(f,b) = C+_B(f,b) intersected with C_B(b); sorted. A abelian.
std::vector<int> cbfb(const WreathProduct &w, const WreathElement &x);

struct SigmaReport {
  std::vector<int> support;                  ///< supp(f), sorted
  std::vector<std::vector<int>> image;       ///< permutations of support indices
  std::vector<int> kernel;                   ///< elements acting trivially
  std::size_t cbfb_order = 0;
  /// Number of permutations of supp(f) preserving every level set f^-1(a).
  std::size_t level_set_permutations = 0;
  bool kernel_is_cyclic_b = false;           ///< kernel == <b>
  bool exact = false;                        ///< |C_B(f,b)| = |kernel| |image|
};

/// The action of C_B(f,b) on the <b>-cosets meeting supp(f). Requires f != 1,
/// b != 1, reduced input and abelian A.
SigmaReport sigma(const WreathProduct &w, const WreathElement &x);

struct CentralizerReport {
  WreathElement element;
  std::vector<std::uint64_t> predicted;  ///< h g'_c c over the factorization
  std::vector<std::uint64_t> brute;
  bool match = false;
  std::size_t order_b = 0;
  std::size_t sigma_order = 0;
  std::size_t cbfb_order = 0;
  std::size_t centralizer_order = 0;
  std::uint64_t predicted_order = 0;     ///< |A|^{#cosets + adjust} |C_B(f,b)|
  bool order_identity = false;
};

/// Rebuilds C_G(fb) from the constructive factorization and compares with
/// brute force. `exponent_adjust` perturbs the predicted order (fault tests).
CentralizerReport check_centralizer_structure(const WreathProduct &w,
                                              const WreathElement &x,
                                              int exponent_adjust = 0);

struct ProjectionReport {
  bool homomorphism = false;
  bool kernel_matches = false;
  std::uint64_t kernel_order = 0;
  std::uint64_t expected_kernel_order = 0;  ///< |K_N| |N|
};

/// pi(f b) = (xN -> prod_{y in xN} f(y)) bN, checked on all pairs and against
/// K_N x| N. Throws InputError for non-abelian A or non-normal N.
ProjectionReport project_abelian(const FiniteGroup &a, const FiniteGroup &b,
                                 const std::vector<int> &n);

/// Largest normal K_A of A with (K_A)^B inside `k` (element indices of
/// A wr B) and, when p is given, A/K_A a p-group.
std::optional<std::vector<int>>
factor_through_base(const WreathProduct &w, const std::vector<std::uint64_t> &k,
                    std::optional<int> p = std::nullopt);

/// Normal closure of some elements of A wr B, as sorted indices.
std::vector<std::uint64_t>
wreath_normal_closure(const WreathProduct &w,
                      const std::vector<WreathElement> &gens);

} // namespace grig
