#pragma once

// Small finite groups given by Cayley tables. Elements are 0..order-1.

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace grig {

class FiniteGroup {
public:
  /// Validates closure, associativity, identity and inverses; throws
  /// InputError on failure.
  FiniteGroup(std::vector<std::vector<int>> table,
              std::vector<std::string> names = {}, std::string label = {});

  static FiniteGroup cyclic(int n);
  /// Symmetries of the n-gon, order 2n.
  static FiniteGroup dihedral(int n);
  /// Sym(n) for n <= 4.
  static FiniteGroup symmetric(int n);
  /// {"order": n, "table": [[...]], "names": [...]}.
  static FiniteGroup from_json(std::string_view text);
  /// "C4", "D3", "S3".
  static FiniteGroup by_name(std::string_view name);

  int order() const noexcept { return static_cast<int>(table_.size()); }
  int identity() const noexcept { return identity_; }
  int mul(int x, int y) const { return table_[x][y]; }
  int inv(int x) const { return inverse_[x]; }
  int pow(int x, long long e) const;
  int element_order(int x) const;
  bool is_abelian() const noexcept { return abelian_; }
  /// True when the order is a power of p.
  bool is_p_group(int p) const;
  bool conjugate(int x, int y) const;

  const std::string &label() const noexcept { return label_; }
  const std::string &name(int x) const { return names_[x]; }

  /// Subgroup generated by `gens`, sorted.
  std::vector<int> generate(const std::vector<int> &gens) const;
  std::vector<int> normal_closure(const std::vector<int> &gens) const;
  bool is_normal(const std::vector<int> &subgroup) const;
  /// Every normal subgroup, sorted by order then lexicographically.
  std::vector<std::vector<int>> normal_subgroups() const;

  const std::vector<std::vector<int>> &table() const noexcept {
    return table_;
  }

private:
  std::vector<std::vector<int>> table_;
  std::vector<int> inverse_;
  std::vector<std::string> names_;
  std::string label_;
  int identity_ = 0;
  bool abelian_ = true;
};

} // namespace grig
