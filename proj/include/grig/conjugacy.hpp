#pragma once

// Conjugacy decisions through the sets
//   Q^N(g,h) = { xN : x^-1 g x = h }   and   Q^N_n(g,h) (same, mod Stab(n)),
// for N = K_m. Q^K_n is computed by recursion on first-level sections down to
// n = 3, where Stab(3) <= K makes a brute-force search over Gamma/Stab(3)
// exact. The exact set Q^K is Q^K_n for n past an explicit length bound.

#include "grig/coset_algebra.hpp"
#include "grig/grig_core.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

namespace grig {

/// A finite set of K_m-cosets. Level 0 uses a 16-bit mask over z_0..z_15.
class QSet {
public:
  explicit QSet(int level = 0) : level_(level) {}
  static QSet from_mask(std::uint16_t mask) {
    QSet s(0);
    s.mask_ = mask;
    return s;
  }
  static QSet all_kcosets() { return from_mask(0xFFFF); }

  int level() const noexcept { return level_; }
  std::size_t size() const;
  bool empty() const { return size() == 0; }

  /// Level-0 only.
  std::uint16_t mask() const;
  bool contains(KCoset c) const;
  void insert(KCoset c);

  bool contains(const KmCosetDescriptor &d) const;
  void insert(const KmCosetDescriptor &d);

  /// Members in canonical order (level 0: by index).
  std::vector<KmCosetDescriptor> members() const;
  std::vector<KCoset> kcosets() const;
  std::vector<std::string> names() const;
  /// "{z0, z3}" style.
  std::string to_string() const;

  bool operator==(const QSet &other) const;

private:
  int level_ = 0;
  std::uint16_t mask_ = 0;
  std::unordered_set<KmCosetDescriptor> members_;
};

/// Largest level-m QSet (or pair product) the recursion will build.
inline constexpr std::size_t kMaxQSetWork = std::size_t{1} << 24;

/// Q^K_n(g,h), n >= 3.
QSet q_fin(const GrigElement &g, const GrigElement &h, int n);

/// Q^{K_m}_n(g,h), n >= m + 3; m = 0 is q_fin.
QSet q_fin_km(const GrigElement &g, const GrigElement &h, int n, int m);

/// Depth at which Q^K_n(g,h) = Q^K(g,h) is guaranteed: 6 for lengths <= 1,
/// 10 for lengths <= 2, otherwise 4*ceil(log2(2r)) + 10, r = max length.
int exact_depth(const GrigElement &g, const GrigElement &h);
/// The K_m version: 4*ceil(log2(2(r+m))) + 10 + m.
int exact_depth_km(const GrigElement &g, const GrigElement &h, int m);

QSet q_exact(const GrigElement &g, const GrigElement &h);
QSet q_exact_km(const GrigElement &g, const GrigElement &h, int m);

struct ConjugacyResult {
  bool conjugate = false;
  QSet witnesses;
  int depth = 0;
};

ConjugacyResult is_conjugate(const GrigElement &g, const GrigElement &h);

/// Image of <gens> in Gamma/K_m. Throws ResourceError past kMaxQSetWork.
QSet subgroup_image(std::span<const GrigElement> gens, int m);

/// Q^{K_m}(g,h) restricted to the image of H = <gens> in Gamma/K_m.
QSet conjugators_in_subgroup(const GrigElement &g, const GrigElement &h,
                             std::span<const GrigElement> gens, int m);

/// Decides conjugacy inside H = <gens>, trusting the caller that K_m <= H.
bool is_conjugate_in_subgroup(const GrigElement &g, const GrigElement &h,
                              std::span<const GrigElement> gens, int m);

struct StabilizationReport {
  int depth = 0;        ///< least n with Q_n = ... = Q_{n_max}
  int n_max = 0;
  int bound = 0;        ///< exact_depth(g, h)
  bool within_bound = false;
  std::vector<QSet> by_depth;  ///< Q_3 .. Q_{n_max}
};

StabilizationReport stabilization_depth(const GrigElement &g,
                                        const GrigElement &h, int n_max);

/// The recursion tree of Q^K_m(g,h). Node 0 is the root.
struct SplittingTree {
  enum class Kind { Base, Mismatch, Fixed, Swapped };
  struct Node {
    int n = 0;
    GrigElement x;
    GrigElement y;
    Kind kind = Kind::Base;
    std::vector<std::size_t> children;
  };
  std::vector<Node> nodes;

  std::size_t depth() const;
};

inline constexpr std::size_t kMaxSplittingNodes = std::size_t{1} << 20;

SplittingTree build_splitting_tree(const GrigElement &g, const GrigElement &h,
                                   int m);
/// Re-runs the recursion along the tree (no memo); equals q_fin(g, h, m).
QSet evaluate(const SplittingTree &tree);
std::string export_dot(const SplittingTree &tree);

/// Memo for q_fin / q_fin_km.
void set_memo_capacity(std::size_t entries);
void clear_memo();

} // namespace grig
