#pragma once

// Finite congruence quotients Gamma/Stab(n) as permutation groups on the 2^n
// level-n vertices, plus the brute-force oracles built on them.
//
// A depth-n automorphism is stored as its portrait: one swap bit per internal
// vertex, in heap order (root = bit 0, children of vertex i at 2i+1, 2i+2).
// Depth n needs 2^n - 1 bits, so depths up to 6 fit in a 64-bit word.

#include "grig/grig_core.hpp"

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

namespace grig {

inline constexpr int kMaxPortraitDepth = 6;

/// Default depth guard for enumerate(); GRIG_MAX_DEPTH overrides it.
int quotient_depth_guard();

/// A permutation of the level-n vertices induced by a tree automorphism.
class LevelPermutation {
public:
  LevelPermutation() = default;
  LevelPermutation(int depth, std::uint64_t portrait);

  static LevelPermutation identity(int depth) { return {depth, 0}; }
  /// Builds from a vertex image table; throws InputError when the table is
  /// not a permutation or is not prefix-compatible.
  static LevelPermutation from_images(int depth,
                                      std::span<const std::uint32_t> images);

  int depth() const noexcept { return depth_; }
  std::uint64_t portrait() const noexcept { return portrait_; }
  bool is_identity() const noexcept { return portrait_ == 0; }

  /// images()[v] is the image of the vertex whose binary expansion
  /// (most significant bit = first letter) is v.
  std::vector<std::uint32_t> images() const;
  std::uint32_t apply(std::uint32_t vertex) const noexcept;

  /// Composition: (*this * other)(v) = this(other(v)).
  LevelPermutation operator*(const LevelPermutation &other) const;
  LevelPermutation inverse() const;

  /// The induced permutation on level k <= depth().
  LevelPermutation restrict_to(int k) const;
  /// Section at first-level vertex 0 or 1, as a depth-1 shallower portrait.
  LevelPermutation child(int i) const;
  bool twist() const noexcept { return (portrait_ & 1u) != 0; }

  auto operator<=>(const LevelPermutation &) const = default;

private:
  int depth_ = 0;
  std::uint64_t portrait_ = 0;
};

/// Portrait of g acting on the first n levels.
LevelPermutation project(const GrigElement &g, int n);

/// Gamma/Stab(n) with deterministic element order: BFS layers by word length
/// in {a,b,c,d}, ordered by portrait code within a layer. Index 0 is the
/// identity.
class FiniteQuotient {
public:
  int depth() const noexcept { return depth_; }
  std::size_t size() const noexcept { return codes_.size(); }

  LevelPermutation element(std::size_t index) const {
    return {depth_, codes_[index]};
  }
  std::uint64_t code(std::size_t index) const noexcept {
    return codes_[index];
  }
  std::optional<std::uint32_t> index_of(const LevelPermutation &p) const;
  /// Index of the image of g; always present.
  std::uint32_t index_of(const GrigElement &g) const;

  std::uint32_t multiply(std::uint32_t i, std::uint32_t j) const;
  std::uint32_t inverse(std::uint32_t i) const;

  /// Images of a, b, c, d.
  const std::array<LevelPermutation, 4> &generators() const noexcept {
    return generators_;
  }

private:
  friend std::shared_ptr<const FiniteQuotient> enumerate(int n);

  // Open-addressing map from portrait code to element index.
  struct CodeIndex {
    std::vector<std::uint64_t> keys;
    std::vector<std::uint32_t> values;
    std::uint64_t mask = 0;
    void reserve(std::size_t n);
    std::optional<std::uint32_t> find(std::uint64_t key) const;
    /// Inserts if absent; returns false when the key is already present.
    bool insert(std::uint64_t key, std::uint32_t value);
    /// Overwrites the value of a present key.
    void assign(std::uint64_t key, std::uint32_t value);
  };

  int depth_ = 0;
  std::vector<std::uint64_t> codes_;
  CodeIndex index_;
  std::array<LevelPermutation, 4> generators_;
};

/// BFS closure of the generator images. Results are cached per depth and
/// shared. Throws ResourceError when n exceeds the depth guard.
std::shared_ptr<const FiniteQuotient> enumerate(int n);

/// The subgroup generated by `seeds` (element indices), as sorted indices.
std::vector<std::uint32_t>
subgroup_closure(const FiniteQuotient &q, std::span<const std::uint32_t> seeds);

/// Left cosets x*H of a subgroup H of q. Coset ids are numbered by first
/// appearance in element order, so the coset of the identity is 0.
class CosetPartition {
public:
  CosetPartition(std::shared_ptr<const FiniteQuotient> q,
                 std::span<const std::uint32_t> subgroup);

  int depth() const noexcept { return quotient_->depth(); }
  std::size_t coset_count() const noexcept { return representatives_.size(); }
  std::size_t subgroup_order() const noexcept { return subgroup_order_; }
  std::uint32_t label(std::uint32_t element) const { return labels_[element]; }
  /// Coset of a permutation of depth >= depth(), via restriction.
  std::uint32_t label_of(const LevelPermutation &p) const;
  std::uint32_t label_of(const GrigElement &g) const;
  /// First element (in quotient order) of the coset.
  std::uint32_t representative(std::uint32_t coset) const {
    return representatives_[coset];
  }
  const FiniteQuotient &quotient() const noexcept { return *quotient_; }

  /// Renumbers coset ids by a permutation: new_id = order[old_id].
  void relabel(std::span<const std::uint32_t> new_ids);

private:
  std::shared_ptr<const FiniteQuotient> quotient_;
  std::vector<std::uint32_t> labels_;
  std::vector<std::uint32_t> representatives_;
  std::size_t subgroup_order_ = 0;
};

/// { xN : x in Gamma/Stab(n), x^-1 g x = h mod Stab(n) } as sorted coset ids
/// of `cosets`. Requires cosets.depth() <= n (so Stab(n) <= N).
std::vector<std::uint32_t> brute_Q(int n, const GrigElement &g,
                                   const GrigElement &h,
                                   const CosetPartition &cosets);

/// True iff g and h are conjugate in Gamma/Stab(n).
bool brute_conjugate(int n, const GrigElement &g, const GrigElement &h);

/// True iff some x in the subgroup H (element indices of enumerate(n))
/// satisfies x^-1 g x = h mod Stab(n).
bool brute_conjugate_in(int n, const GrigElement &g, const GrigElement &h,
                        std::span<const std::uint32_t> subgroup);

} // namespace grig
