#pragma once

// Seeded random words for property tests.

#include "grig/grig_core.hpp"

#include <random>
#include <string>
#include <vector>

namespace grig::testing {

inline std::mt19937_64 &rng() {
  static std::mt19937_64 engine(20240611);
  return engine;
}

/// A uniformly chosen reduced word of length exactly n.
inline GrigElement random_word(std::size_t n, std::mt19937_64 &r = rng()) {
  std::string w;
  bool start_with_a = std::uniform_int_distribution<int>(0, 1)(r) == 1;
  const char bcd[3] = {'b', 'c', 'd'};
  for (std::size_t i = 0; i < n; ++i) {
    bool a_slot = (i % 2 == 0) == start_with_a;
    w += a_slot ? 'a' : bcd[std::uniform_int_distribution<int>(0, 2)(r)];
  }
  return GrigElement::parse(w);
}

/// Length uniform in [0, max_len].
inline GrigElement random_word_upto(std::size_t max_len,
                                    std::mt19937_64 &r = rng()) {
  return random_word(
      std::uniform_int_distribution<std::size_t>(0, max_len)(r), r);
}

/// All reduced words of length <= n, shortest first.
inline std::vector<GrigElement> all_words(std::size_t n) {
  std::vector<std::string> out{""};
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (out[i].size() == n)
      continue;
    for (char ch : {'a', 'b', 'c', 'd'}) {
      std::string w = out[i] + ch;
      if (GenWord::reduce(w).length() == w.size())
        out.push_back(std::move(w));
    }
  }
  std::vector<GrigElement> elems;
  for (const auto &w : out)
    elems.push_back(GrigElement::parse(w));
  return elems;
}

} // namespace grig::testing
