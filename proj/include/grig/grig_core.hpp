#pragma once

// Arithmetic in the first Grigorchuk group acting on the binary rooted tree.
//
// Elements are words over {a,b,c,d} kept in Klein-four reduced form. Group
// elements act on the left: (g*h)(v) = g(h(v)), and sections compose as
// (g*h)|_i = g|_{h(i)} * h|_i. Generators satisfy
//   a = (1,1)s,  b = (a,c),  c = (a,d),  d = (1,b).

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>

namespace grig {

/// A reduced word: no "aa", and no two adjacent letters from {b,c,d}.
class GenWord {
public:
  GenWord() = default;

  /// Reduces an arbitrary letter sequence. Throws InputError on letters
  /// outside {a,b,c,d}.
  static GenWord reduce(std::string_view letters);

  const std::string &str() const noexcept { return letters_; }
  std::size_t length() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }

  /// Number of occurrences of `a`; parity gives the level-1 permutation.
  std::size_t count_a() const noexcept;

  auto operator<=>(const GenWord &) const = default;

private:
  explicit GenWord(std::string reduced) : letters_(std::move(reduced)) {}
  std::string letters_;
};

/// An element of the group, represented by its reduced word. Word equality
/// implies group equality; the converse is decided by `equal`.
class GrigElement {
public:
  GrigElement() = default;
  explicit GrigElement(GenWord word) : word_(std::move(word)) {}

  /// Parses the CLI word syntax: letters, parenthesised groups and integer
  /// powers, e.g. "(ab)^16", "a(bad)^-1". Whitespace and '1' are ignored.
  static GrigElement parse(std::string_view text);

  static GrigElement identity() { return {}; }
  static GrigElement generator(char letter);

  const GenWord &word() const noexcept { return word_; }
  const std::string &str() const noexcept { return word_.str(); }
  std::size_t length() const noexcept { return word_.length(); }
  bool fixes_level_one() const noexcept { return word_.count_a() % 2 == 0; }

  friend GrigElement operator*(const GrigElement &g, const GrigElement &h);
  GrigElement inverse() const;
  GrigElement pow(std::int64_t exponent) const;

  auto operator<=>(const GrigElement &) const = default;

private:
  GenWord word_;
};

/// First-level decomposition g = (left, right) * twist, where left/right are
/// the sections at vertices 0 and 1 and twist is the root permutation.
struct SectionTriple {
  GrigElement left;
  GrigElement right;
  bool twist = false;
};

GrigElement multiply(const GrigElement &g, const GrigElement &h);
GrigElement invert(const GrigElement &g);

SectionTriple first_level(const GrigElement &g);

/// Section g|_v along a binary vertex string.
GrigElement section(const GrigElement &g, std::string_view vertex);

/// Image of a binary vertex string; same length as the input.
std::string act(const GrigElement &g, std::string_view vertex);

/// Word problem: true iff g acts trivially on the whole tree.
bool is_trivial(const GrigElement &g);
bool equal(const GrigElement &g, const GrigElement &h);
std::size_t length(const GrigElement &g);

/// True iff g fixes every vertex of depth <= n.
bool in_stab(const GrigElement &g, int n);

/// Least power of two k with g^k trivial. Throws InternalError past 2^24.
std::uint64_t order(const GrigElement &g);

/// Checks a string is a binary vertex; throws InputError otherwise.
void require_vertex(std::string_view vertex);

} // namespace grig

template <> struct std::hash<grig::GrigElement> {
  std::size_t operator()(const grig::GrigElement &g) const noexcept {
    return std::hash<std::string>{}(g.str());
  }
};
