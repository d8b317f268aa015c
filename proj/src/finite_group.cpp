#include "grig/finite_group.hpp"

#include "grig/errors.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <set>

#include "json.hpp"

namespace grig {

FiniteGroup::FiniteGroup(std::vector<std::vector<int>> table,
                         std::vector<std::string> names, std::string label)
    : table_(std::move(table)), names_(std::move(names)),
      label_(std::move(label)) {
  const int n = static_cast<int>(table_.size());
  if (n == 0)
    throw InputError("group table is empty");
  for (const auto &row : table_) {
    if (static_cast<int>(row.size()) != n)
      throw InputError("group table is not square");
    for (int v : row)
      if (v < 0 || v >= n)
        throw InputError("group table entry out of range");
  }
  identity_ = -1;
  for (int e = 0; e < n && identity_ < 0; ++e) {
    bool ok = true;
    for (int x = 0; x < n && ok; ++x)
      ok = table_[e][x] == x && table_[x][e] == x;
    if (ok)
      identity_ = e;
  }
  if (identity_ < 0)
    throw InputError("group table has no identity");
  inverse_.assign(n, -1);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (table_[x][y] == identity_ && table_[y][x] == identity_)
        inverse_[x] = y;
  if (std::find(inverse_.begin(), inverse_.end(), -1) != inverse_.end())
    throw InputError("group table lacks inverses");
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z)
        if (table_[table_[x][y]][z] != table_[x][table_[y][z]])
          throw InputError("group table is not associative");
  for (int x = 0; x < n && abelian_; ++x)
    for (int y = 0; y < n && abelian_; ++y)
      abelian_ = table_[x][y] == table_[y][x];
  if (names_.empty())
    for (int x = 0; x < n; ++x)
      names_.push_back(std::to_string(x));
  if (static_cast<int>(names_.size()) != n)
    throw InputError("group names do not match the order");
}

FiniteGroup FiniteGroup::cyclic(int n) {
  if (n < 1 || n > 64)
    throw InputError("cyclic group order must be in [1, 64]");
  std::vector<std::vector<int>> t(n, std::vector<int>(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      t[x][y] = (x + y) % n;
  return FiniteGroup(std::move(t), {}, "C" + std::to_string(n));
}

FiniteGroup FiniteGroup::dihedral(int n) {
  if (n < 1 || n > 32)
    throw InputError("dihedral parameter must be in [1, 32]");
  // Element r^i s^j has index i + n*j.
  const int order = 2 * n;
  std::vector<std::vector<int>> t(order, std::vector<int>(order));
  std::vector<std::string> names;
  for (int x = 0; x < order; ++x) {
    int i = x % n, j = x / n;
    names.push_back((i ? "r" + std::to_string(i) : std::string()) +
                    (j ? "s" : "") + (x == 0 ? "1" : ""));
    for (int y = 0; y < order; ++y) {
      int k = y % n, l = y / n;
      // r^i s^j r^k s^l = r^(i + (-1)^j k) s^(j + l)
      int r = ((i + (j ? -k : k)) % n + n) % n;
      t[x][y] = r + n * ((j + l) % 2);
    }
  }
  return FiniteGroup(std::move(t), std::move(names), "D" + std::to_string(n));
}

FiniteGroup FiniteGroup::symmetric(int n) {
  if (n < 1 || n > 4)
    throw InputError("symmetric group degree must be in [1, 4]");
  std::vector<std::array<int, 4>> perms;
  std::array<int, 4> p{0, 1, 2, 3};
  do
    perms.push_back(p);
  while (std::next_permutation(p.begin(), p.begin() + n));
  const int order = static_cast<int>(perms.size());
  auto index = [&](const std::array<int, 4> &q) {
    return static_cast<int>(std::find(perms.begin(), perms.end(), q) -
                            perms.begin());
  };
  std::vector<std::vector<int>> t(order, std::vector<int>(order));
  std::vector<std::string> names;
  for (int x = 0; x < order; ++x) {
    std::string name = "[";
    for (int i = 0; i < n; ++i)
      name += std::to_string(perms[x][i] + 1);
    names.push_back(name + "]");
    for (int y = 0; y < order; ++y) {
      // (x*y)(i) = x(y(i))
      std::array<int, 4> q{0, 1, 2, 3};
      for (int i = 0; i < n; ++i)
        q[i] = perms[x][perms[y][i]];
      t[x][y] = index(q);
    }
  }
  return FiniteGroup(std::move(t), std::move(names), "S" + std::to_string(n));
}

FiniteGroup FiniteGroup::from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception &e) {
    throw InputError(std::string("group JSON: ") + e.what());
  }
  try {
    auto table = j.at("table").get<std::vector<std::vector<int>>>();
    if (j.contains("order") && j["order"].get<std::size_t>() != table.size())
      throw InputError("group JSON: order does not match table");
    std::vector<std::string> names;
    if (j.contains("names"))
      names = j["names"].get<std::vector<std::string>>();
    return FiniteGroup(std::move(table), std::move(names),
                       j.value("label", std::string("G")));
  } catch (const nlohmann::json::exception &e) {
    throw InputError(std::string("group JSON: ") + e.what());
  }
}

FiniteGroup FiniteGroup::by_name(std::string_view name) {
  if (name.size() < 2)
    throw InputError("unknown group \"" + std::string(name) + "\"");
  int n = 0;
  for (char ch : name.substr(1)) {
    if (ch < '0' || ch > '9' || n > 1000)
      throw InputError("unknown group \"" + std::string(name) + "\"");
    n = 10 * n + (ch - '0');
  }
  switch (name[0]) {
  case 'C': return cyclic(n);
  case 'D': return dihedral(n);
  case 'S': return symmetric(n);
  default: throw InputError("unknown group \"" + std::string(name) + "\"");
  }
}

int FiniteGroup::pow(int x, long long e) const {
  int ord = element_order(x);
  e %= ord;
  if (e < 0)
    e += ord;
  int out = identity_;
  for (long long i = 0; i < e; ++i)
    out = mul(out, x);
  return out;
}

int FiniteGroup::element_order(int x) const {
  int k = 1;
  for (int y = x; y != identity_; y = mul(y, x))
    ++k;
  return k;
}

bool FiniteGroup::is_p_group(int p) const {
  if (p < 2)
    return false;
  int n = order();
  while (n % p == 0)
    n /= p;
  return n == 1;
}

bool FiniteGroup::conjugate(int x, int y) const {
  for (int z = 0; z < order(); ++z)
    if (mul(mul(inv(z), x), z) == y)
      return true;
  return false;
}

std::vector<int> FiniteGroup::generate(const std::vector<int> &gens) const {
  std::vector<char> in(order(), 0);
  std::vector<int> out{identity_};
  in[identity_] = 1;
  for (std::size_t i = 0; i < out.size(); ++i)
    for (int g : gens) {
      int y = mul(out[i], g);
      if (!in[y]) {
        in[y] = 1;
        out.push_back(y);
      }
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int>
FiniteGroup::normal_closure(const std::vector<int> &gens) const {
  std::set<int> conj;
  for (int g : gens)
    for (int z = 0; z < order(); ++z)
      conj.insert(mul(mul(inv(z), g), z));
  return generate({conj.begin(), conj.end()});
}

bool FiniteGroup::is_normal(const std::vector<int> &subgroup) const {
  std::vector<char> in(order(), 0);
  for (int h : subgroup)
    in[h] = 1;
  std::set<int> members(subgroup.begin(), subgroup.end());
  if (generate(subgroup) != std::vector<int>(members.begin(), members.end()))
    return false;
  for (int h : subgroup)
    for (int z = 0; z < order(); ++z)
      if (!in[mul(mul(inv(z), h), z)])
        return false;
  return true;
}

std::vector<std::vector<int>> FiniteGroup::normal_subgroups() const {
  // Every normal subgroup is a join of normal closures of single elements.
  std::set<std::vector<int>> found;
  std::vector<std::vector<int>> minimal;
  for (int x = 0; x < order(); ++x)
    minimal.push_back(normal_closure({x}));
  std::vector<std::vector<int>> frontier;
  for (const auto &m : minimal)
    if (found.insert(m).second)
      frontier.push_back(m);
  while (!frontier.empty()) {
    std::vector<std::vector<int>> next;
    for (const auto &s : frontier)
      for (const auto &m : minimal) {
        std::vector<int> gens = s;
        gens.insert(gens.end(), m.begin(), m.end());
        auto joined = generate(gens);
        if (found.insert(joined).second)
          next.push_back(std::move(joined));
      }
    frontier = std::move(next);
  }
  std::vector<std::vector<int>> out(found.begin(), found.end());
  std::stable_sort(out.begin(), out.end(),
                   [](const auto &x, const auto &y) {
                     return x.size() < y.size();
                   });
  return out;
}

} // namespace grig
