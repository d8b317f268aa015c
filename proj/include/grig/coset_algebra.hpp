#pragma once

// The finite coset algebra of the subgroup K = <<(ab)^2>> (index 16):
// coset identification through the Schreier graph over {a,b,d}, the group
// Gamma/K, the lifting map for pairs of section cosets, and recursive coset
// descriptors for the tower K_0 = K, K_{m+1} = Psi^-1(K_m x K_m).

#include "grig/grig_core.hpp"
#include "grig/quotient.hpp"

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace grig {

/// One of the 16 cosets z_0 .. z_15 of K.
struct KCoset {
  std::uint8_t index = 0;

  constexpr KCoset() = default;
  constexpr explicit KCoset(int i) : index(static_cast<std::uint8_t>(i)) {}

  std::string name() const { return "z" + std::to_string(index); }
  static KCoset parse(std::string_view name);

  auto operator<=>(const KCoset &) const = default;
};

inline constexpr int kKIndex = 16;

/// Representative words: z_i = K * representative[i].
inline constexpr std::array<std::string_view, kKIndex> kCosetRepresentatives = {
    "",  "d",  "da",    "dad",  "adad", "ada", "ad",  "a",
    "b", "c",  "ca",    "cad",  "badad", "bada", "bad", "ab"};

/// Right-multiplication edges z_i -> z_i * x for x in {a, b, d}.
using SchreierTable = std::array<std::array<std::uint8_t, 3>, kKIndex>;
const SchreierTable &schreier_table();
/// The same table rebuilt from the depth-3 quotient oracle.
SchreierTable derive_schreier_table();

/// Coset of g, walking the Schreier graph from z_0 (c read as bd).
KCoset coset_of(const GrigElement &g);

KCoset kcoset_mul(KCoset x, KCoset y);
KCoset kcoset_inv(KCoset x);

/// The subgroup K inside Gamma/Stab(3) with cosets labelled z_0 .. z_15.
const CosetPartition &k_partition();

/// Partial map (coset of g|_0, coset of g|_1) -> coset of g, g in Stab(1).
class LiftTable {
public:
  struct Entry {
    std::uint8_t left;
    std::uint8_t right;
    std::uint8_t lift;
  };

  LiftTable() = default;
  explicit LiftTable(std::span<const Entry> entries);

  /// The 32-entry lifting table.
  static const LiftTable &standard();

  std::optional<KCoset> lift(KCoset left, KCoset right) const {
    auto v = table_[left.index * kKIndex + right.index];
    if (v < 0)
      return std::nullopt;
    return KCoset(v);
  }
  std::vector<Entry> entries() const;
  std::size_t size() const;

  /// Replaces (or adds) an entry; used for fault-injection fixtures.
  void set(KCoset left, KCoset right, std::optional<KCoset> lift);

private:
  std::array<std::int8_t, kKIndex * kKIndex> table_ = filled();
  static constexpr std::array<std::int8_t, kKIndex * kKIndex> filled() {
    std::array<std::int8_t, kKIndex * kKIndex> t{};
    t.fill(-1);
    return t;
  }
};

std::optional<KCoset> lift(KCoset left, KCoset right);

struct LiftReport {
  int depth = 0;
  bool pass = false;
  std::size_t witnessed = 0;            ///< table entries seen in Stab(1)
  std::size_t table_entries = 0;
  std::vector<std::string> problems;    ///< counterexamples, human readable
};

/// Checks a lifting table against every element of Stab(1)/Stab(depth),
/// depth >= 4.
LiftReport verify_lift_table(int depth = 4,
                             const LiftTable &table = LiftTable::standard());

/// DOT digraph of the Schreier graph with edges labelled a, b, d.
std::string schreier_dot();

/// A coset of K_m. Level 0 holds one K-coset; level m >= 1 holds a twist bit
/// per internal node of a depth-m binary tree plus 2^m K-cosets at the
/// leaves. For g with twist t, the children describe the sections of g*a^t.
class KmCosetDescriptor {
public:
  KmCosetDescriptor() = default;
  /// Identity coset at the given level.
  explicit KmCosetDescriptor(int level);
  static KmCosetDescriptor from_kcoset(KCoset c) {
    KmCosetDescriptor d(0);
    d.leaves_[0] = c.index;
    return d;
  }
  static KmCosetDescriptor join(bool twist, const KmCosetDescriptor &left,
                                const KmCosetDescriptor &right);

  int level() const noexcept { return level_; }
  bool twist() const { return level_ > 0 && twists_[0] != 0; }
  KmCosetDescriptor child(int i) const;
  /// Leaf coset of a level-0 descriptor.
  KCoset kcoset() const { return KCoset(leaves_[0]); }

  /// Image in Gamma/K; nullopt when some node has no lift.
  std::optional<KCoset> base_projection() const;
  bool realizable() const { return base_projection().has_value(); }

  /// "z7" at level 0, "(L,R)" or "(L,R)a" above.
  std::string to_string() const;

  auto operator<=>(const KmCosetDescriptor &) const = default;

  std::size_t hash() const noexcept;

  // Flat storage; exposed for the arithmetic routines.
  const std::vector<std::uint8_t> &twists() const noexcept { return twists_; }
  const std::vector<std::uint8_t> &leaves() const noexcept { return leaves_; }
  std::vector<std::uint8_t> &twists() noexcept { return twists_; }
  std::vector<std::uint8_t> &leaves() noexcept { return leaves_; }

private:
  int level_ = 0;
  std::vector<std::uint8_t> twists_;  // heap order, 2^level - 1 entries
  std::vector<std::uint8_t> leaves_ = std::vector<std::uint8_t>(1, 0);
};

/// Guard on K_m levels; GRIG_MAX_KM_LEVEL overrides the default of 4.
int km_level_guard();

KmCosetDescriptor km_coset_of(const GrigElement &g, int m);
/// The same from a portrait of depth >= m + 3 (K_m contains Stab(m + 3)).
KmCosetDescriptor km_coset_of(const LevelPermutation &p, int m);
KmCosetDescriptor km_mul(const KmCosetDescriptor &x,
                         const KmCosetDescriptor &y);
KmCosetDescriptor km_inv(const KmCosetDescriptor &x);
/// Lift of a pair of level-(m-1) cosets to the level-m coset of an element
/// of Stab(1) with those sections; nullopt if no such element exists.
std::optional<KmCosetDescriptor> km_lift(const KmCosetDescriptor &left,
                                         const KmCosetDescriptor &right);

} // namespace grig

template <> struct std::hash<grig::KmCosetDescriptor> {
  std::size_t operator()(const grig::KmCosetDescriptor &d) const noexcept {
    return d.hash();
  }
};
