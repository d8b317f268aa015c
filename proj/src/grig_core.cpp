#include "grig/grig_core.hpp"

#include "grig/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <string>
#include <utility>

namespace grig {

namespace {

// b, c, d as the non-trivial elements of the Klein four-group: b^c = d etc.
int klein_code(char letter) {
  switch (letter) {
  case 'b': return 1;
  case 'c': return 2;
  case 'd': return 3;
  default: return 0;
  }
}

char klein_letter(int code) { return "\0bcd"[code]; }

bool is_bcd(char letter) { return klein_code(letter) != 0; }

// Section of a single generator at first-level vertex `i`, or '\0' if trivial.
char letter_section(char letter, int i) {
  switch (letter) {
  case 'b': return i == 0 ? 'a' : 'c';
  case 'c': return i == 0 ? 'a' : 'd';
  case 'd': return i == 0 ? '\0' : 'b';
  default: return '\0';
  }
}

// Recursive-descent parser for words with parentheses and powers.
class WordParser {
public:
  explicit WordParser(std::string_view text) : text_(text) {}

  GrigElement parse() {
    GrigElement result = sequence();
    skip_space();
    if (pos_ != text_.size())
      fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return result;
  }

private:
  static constexpr std::size_t kMaxLetters = std::size_t{1} << 22;

  GrigElement sequence() {
    GrigElement acc;
    for (;;) {
      skip_space();
      if (pos_ == text_.size() || text_[pos_] == ')')
        return acc;
      acc = acc * power();
    }
  }

  GrigElement power() {
    GrigElement base = atom();
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == '^') {
      ++pos_;
      skip_space();
      std::int64_t exponent = integer();
      if (base.length() > 0 &&
          static_cast<std::size_t>(exponent < 0 ? -exponent : exponent) >
              kMaxLetters / base.length())
        fail("power too large");
      base = base.pow(exponent);
    }
    return base;
  }

  GrigElement atom() {
    skip_space();
    if (pos_ == text_.size())
      fail("unexpected end of word");
    char ch = text_[pos_];
    if (ch == '(') {
      ++pos_;
      GrigElement inner = sequence();
      if (pos_ == text_.size() || text_[pos_] != ')')
        fail("missing ')'");
      ++pos_;
      return inner;
    }
    if (ch == '1') {
      ++pos_;
      return {};
    }
    if (ch >= 'a' && ch <= 'd') {
      ++pos_;
      return GrigElement::generator(ch);
    }
    fail("invalid letter '" + std::string(1, ch) + "'");
  }

  std::int64_t integer() {
    std::size_t start = pos_;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+'))
      ++pos_;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
    std::string digits(text_.substr(start, pos_ - start));
    if (!digits.empty() && digits.front() == '+')
      digits.erase(0, 1);
    std::int64_t value = 0;
    auto [ptr, ec] =
        std::from_chars(digits.data(), digits.data() + digits.size(), value);
    if (ec != std::errc{} || ptr != digits.data() + digits.size() ||
        digits.empty() || digits == "-")
      fail("bad exponent");
    return value;
  }

  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  [[noreturn]] void fail(const std::string &msg) const {
    throw InputError("word \"" + std::string(text_) + "\": " + msg);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

} // namespace

GenWord GenWord::reduce(std::string_view letters) {
  std::string out;
  out.reserve(letters.size());
  for (char ch : letters) {
    if (ch < 'a' || ch > 'd')
      throw InputError("invalid letter '" + std::string(1, ch) + "'");
    if (out.empty()) {
      out.push_back(ch);
    } else if (ch == 'a') {
      if (out.back() == 'a')
        out.pop_back();
      else
        out.push_back(ch);
    } else if (is_bcd(out.back())) {
      int merged = klein_code(out.back()) ^ klein_code(ch);
      if (merged == 0)
        out.pop_back();
      else
        out.back() = klein_letter(merged);
    } else {
      out.push_back(ch);
    }
  }
  return GenWord(std::move(out));
}

std::size_t GenWord::count_a() const noexcept {
  return static_cast<std::size_t>(
      std::count(letters_.begin(), letters_.end(), 'a'));
}

GrigElement GrigElement::parse(std::string_view text) {
  return WordParser(text).parse();
}

GrigElement GrigElement::generator(char letter) {
  if (letter < 'a' || letter > 'd')
    throw InputError("invalid generator '" + std::string(1, letter) + "'");
  return GrigElement(GenWord::reduce(std::string_view(&letter, 1)));
}

GrigElement operator*(const GrigElement &g, const GrigElement &h) {
  return GrigElement(GenWord::reduce(g.str() + h.str()));
}

GrigElement GrigElement::inverse() const {
  // Every generator is an involution.
  std::string reversed(str().rbegin(), str().rend());
  return GrigElement(GenWord::reduce(reversed));
}

GrigElement GrigElement::pow(std::int64_t exponent) const {
  GrigElement base = exponent < 0 ? inverse() : *this;
  std::uint64_t e = exponent < 0 ? static_cast<std::uint64_t>(-exponent)
                                 : static_cast<std::uint64_t>(exponent);
  GrigElement result;
  while (e > 0) {
    if (e & 1u)
      result = result * base;
    e >>= 1u;
    if (e > 0)
      base = base * base;
  }
  return result;
}

GrigElement multiply(const GrigElement &g, const GrigElement &h) {
  return g * h;
}

GrigElement invert(const GrigElement &g) { return g.inverse(); }

SectionTriple first_level(const GrigElement &g) {
  const std::string &w = g.str();
  std::string sections[2];
  bool twist = false;
  for (int i = 0; i < 2; ++i) {
    int vertex = i;
    std::string &sec = sections[i];
    sec.reserve(w.size());
    // Letters act right to left; the section word keeps word order.
    for (auto it = w.rbegin(); it != w.rend(); ++it) {
      if (char s = letter_section(*it, vertex))
        sec.push_back(s);
      if (*it == 'a')
        vertex ^= 1;
    }
    std::reverse(sec.begin(), sec.end());
    if (i == 0)
      twist = vertex != 0;
  }
  return {GrigElement(GenWord::reduce(sections[0])),
          GrigElement(GenWord::reduce(sections[1])), twist};
}

void require_vertex(std::string_view vertex) {
  for (char ch : vertex)
    if (ch != '0' && ch != '1')
      throw InputError("vertex must be a binary string, got \"" +
                       std::string(vertex) + "\"");
}

GrigElement section(const GrigElement &g, std::string_view vertex) {
  require_vertex(vertex);
  GrigElement current = g;
  for (char ch : vertex) {
    SectionTriple t = first_level(current);
    current = ch == '0' ? std::move(t.left) : std::move(t.right);
  }
  return current;
}

std::string act(const GrigElement &g, std::string_view vertex) {
  require_vertex(vertex);
  std::string v(vertex);
  const std::string &w = g.str();
  for (auto it = w.rbegin(); it != w.rend(); ++it) {
    char state = *it;
    for (std::size_t pos = 0; pos < v.size() && state != '\0'; ++pos) {
      bool one = v[pos] == '1';
      switch (state) {
      case 'a':
        v[pos] = one ? '0' : '1';
        state = '\0';
        break;
      case 'b': state = one ? 'c' : 'a'; break;
      case 'c': state = one ? 'd' : 'a'; break;
      case 'd': state = one ? 'b' : '\0'; break;
      }
    }
  }
  return v;
}

bool is_trivial(const GrigElement &g) {
  if (g.length() <= 1)
    return g.length() == 0;
  if (!g.fixes_level_one())
    return false;
  SectionTriple t = first_level(g);
  return is_trivial(t.left) && is_trivial(t.right);
}

bool equal(const GrigElement &g, const GrigElement &h) {
  if (g == h)
    return true;
  return is_trivial(g * h.inverse());
}

std::size_t length(const GrigElement &g) { return g.length(); }

bool in_stab(const GrigElement &g, int n) {
  if (n <= 0 || g.length() == 0)
    return true;
  if (!g.fixes_level_one())
    return false;
  SectionTriple t = first_level(g);
  return in_stab(t.left, n - 1) && in_stab(t.right, n - 1);
}

std::uint64_t order(const GrigElement &g) {
  constexpr std::uint64_t kCap = std::uint64_t{1} << 24;
  GrigElement power = g;
  std::uint64_t k = 1;
  while (!is_trivial(power)) {
    if (k >= kCap)
      throw InternalError("order of " + g.str() + " exceeds 2^24");
    power = power * power;
    k *= 2;
  }
  return k;
}

} // namespace grig
