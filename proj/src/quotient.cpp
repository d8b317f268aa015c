#include "grig/quotient.hpp"

#include "grig/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <mutex>
#include <string>

namespace grig {

namespace {

constexpr std::uint64_t bit_at(std::uint64_t code, int level,
                               std::uint32_t path) noexcept {
  return (code >> ((std::uint64_t{1} << level) - 1 + path)) & 1u;
}

constexpr std::uint64_t mask_for_depth(int depth) noexcept {
  int bits = (1 << depth) - 1;
  return bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
}

std::uint64_t compose(int n, std::uint64_t g, std::uint64_t h) noexcept {
  // Image of each vertex of the current level under h.
  std::array<std::uint32_t, 64> buf_a{};
  std::array<std::uint32_t, 64> buf_b{};
  std::uint32_t *img = buf_a.data();
  std::uint32_t *next = buf_b.data();
  std::uint64_t out = 0;
  for (int k = 0; k < n; ++k) {
    std::uint32_t width = 1u << k;
    std::uint64_t hs = h >> (width - 1);
    std::uint64_t gs = g >> (width - 1);
    for (std::uint32_t p = 0; p < width; ++p) {
      std::uint32_t hb = static_cast<std::uint32_t>(hs >> p) & 1u;
      std::uint32_t gb = static_cast<std::uint32_t>(gs >> img[p]) & 1u;
      out |= std::uint64_t{hb ^ gb} << (width - 1 + p);
      next[2 * p] = 2 * img[p] + hb;
      next[2 * p + 1] = 2 * img[p] + (hb ^ 1u);
    }
    std::swap(img, next);
  }
  return out;
}

std::uint64_t invert_code(int n, std::uint64_t g) noexcept {
  std::array<std::uint32_t, 64> img{};
  std::array<std::uint32_t, 64> next{};
  std::uint64_t out = 0;
  for (int k = 0; k < n; ++k) {
    std::uint32_t width = 1u << k;
    for (std::uint32_t p = 0; p < width; ++p) {
      std::uint64_t gb = bit_at(g, k, p);
      out |= gb << (width - 1 + img[p]);
      next[2 * p] = 2 * img[p] + static_cast<std::uint32_t>(gb);
      next[2 * p + 1] = 2 * img[p] + static_cast<std::uint32_t>(gb ^ 1u);
    }
    std::swap(img, next);
  }
  return out;
}

std::uint32_t apply_code(int n, std::uint64_t code,
                         std::uint32_t vertex) noexcept {
  std::uint32_t p = 0;
  std::uint32_t q = 0;
  for (int k = 0; k < n; ++k) {
    std::uint32_t s = (vertex >> (n - 1 - k)) & 1u;
    std::uint32_t b = static_cast<std::uint32_t>(bit_at(code, k, p));
    q = 2 * q + (s ^ b);
    p = 2 * p + s;
  }
  return q;
}

// Portrait with root bit `twist` and the given depth-(n-1) subtrees.
std::uint64_t join(int n, bool twist, std::uint64_t left,
                   std::uint64_t right) noexcept {
  std::uint64_t out = twist ? 1u : 0u;
  for (int k = 0; k + 1 < n; ++k) {
    std::uint32_t width = 1u << k;
    for (std::uint32_t p = 0; p < width; ++p) {
      std::uint32_t base = (2u << k) - 1;
      out |= bit_at(left, k, p) << (base + p);
      out |= bit_at(right, k, p) << (base + width + p);
    }
  }
  return out;
}

std::uint64_t project_code(const GrigElement &g, int n) {
  if (n <= 0 || g.length() == 0)
    return 0;
  SectionTriple t = first_level(g);
  return join(n, t.twist, project_code(t.left, n - 1),
              project_code(t.right, n - 1));
}

void require_depth(int n) {
  if (n < 0 || n > kMaxPortraitDepth)
    throw ResourceError("portrait depth " + std::to_string(n) +
                        " outside [0, " + std::to_string(kMaxPortraitDepth) +
                        "]");
}

} // namespace

int quotient_depth_guard() {
  if (const char *env = std::getenv("GRIG_MAX_DEPTH")) {
    char *end = nullptr;
    long value = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && value > 0)
      return static_cast<int>(std::min<long>(value, kMaxPortraitDepth));
  }
  return 5;
}

LevelPermutation::LevelPermutation(int depth, std::uint64_t portrait)
    : depth_(depth), portrait_(portrait & mask_for_depth(depth)) {
  require_depth(depth);
}

LevelPermutation
LevelPermutation::from_images(int depth,
                              std::span<const std::uint32_t> images) {
  require_depth(depth);
  std::uint32_t count = 1u << depth;
  if (images.size() != count)
    throw InputError("image table has wrong size");
  std::vector<char> seen(count, 0);
  for (std::uint32_t v : images) {
    if (v >= count || seen[v])
      throw InputError("image table is not a permutation");
    seen[v] = 1;
  }
  std::uint64_t code = 0;
  for (int k = 0; k < depth; ++k) {
    for (std::uint32_t p = 0; p < (1u << k); ++p) {
      int shift = depth - k - 1;
      std::uint32_t leaf = (2 * p) << shift;
      std::uint32_t bit = (images[leaf] >> shift) & 1u;
      code |= std::uint64_t{bit} << ((1u << k) - 1 + p);
    }
  }
  LevelPermutation result(depth, code);
  for (std::uint32_t v = 0; v < count; ++v)
    if (result.apply(v) != images[v])
      throw InputError("image table is not induced by a tree automorphism");
  return result;
}

std::vector<std::uint32_t> LevelPermutation::images() const {
  std::vector<std::uint32_t> out(std::size_t{1} << depth_);
  for (std::uint32_t v = 0; v < out.size(); ++v)
    out[v] = apply(v);
  return out;
}

std::uint32_t LevelPermutation::apply(std::uint32_t vertex) const noexcept {
  return apply_code(depth_, portrait_, vertex);
}

LevelPermutation
LevelPermutation::operator*(const LevelPermutation &other) const {
  if (other.depth_ != depth_)
    throw InputError("depth mismatch in composition");
  return {depth_, compose(depth_, portrait_, other.portrait_)};
}

LevelPermutation LevelPermutation::inverse() const {
  return {depth_, invert_code(depth_, portrait_)};
}

LevelPermutation LevelPermutation::restrict_to(int k) const {
  if (k < 0 || k > depth_)
    throw InputError("restriction depth out of range");
  return {k, portrait_ & mask_for_depth(k)};
}

LevelPermutation LevelPermutation::child(int i) const {
  if (depth_ == 0)
    return {0, 0};
  std::uint64_t out = 0;
  for (int k = 0; k + 1 < depth_; ++k) {
    std::uint32_t width = 1u << k;
    for (std::uint32_t p = 0; p < width; ++p)
      out |= bit_at(portrait_, k + 1, static_cast<std::uint32_t>(i) * width + p)
             << (width - 1 + p);
  }
  return {depth_ - 1, out};
}

LevelPermutation project(const GrigElement &g, int n) {
  require_depth(n);
  return {n, project_code(g, n)};
}

void FiniteQuotient::CodeIndex::reserve(std::size_t n) {
  std::size_t cap = 16;
  while (cap < 2 * n)
    cap <<= 1;
  std::vector<std::uint64_t> old_keys = std::move(keys);
  std::vector<std::uint32_t> old_values = std::move(values);
  keys.assign(cap, ~std::uint64_t{0});
  values.assign(cap, 0);
  mask = cap - 1;
  for (std::size_t i = 0; i < old_keys.size(); ++i)
    if (old_keys[i] != ~std::uint64_t{0})
      insert(old_keys[i], old_values[i]);
}

std::optional<std::uint32_t>
FiniteQuotient::CodeIndex::find(std::uint64_t key) const {
  if (keys.empty())
    return std::nullopt;
  std::uint64_t slot = (key * 0x9E3779B97F4A7C15ull) >> 17 & mask;
  while (keys[slot] != ~std::uint64_t{0}) {
    if (keys[slot] == key)
      return values[slot];
    slot = (slot + 1) & mask;
  }
  return std::nullopt;
}

void FiniteQuotient::CodeIndex::assign(std::uint64_t key,
                                       std::uint32_t value) {
  std::uint64_t slot = (key * 0x9E3779B97F4A7C15ull) >> 17 & mask;
  while (keys[slot] != key)
    slot = (slot + 1) & mask;
  values[slot] = value;
}

bool FiniteQuotient::CodeIndex::insert(std::uint64_t key,
                                       std::uint32_t value) {
  std::uint64_t slot = (key * 0x9E3779B97F4A7C15ull) >> 17 & mask;
  while (keys[slot] != ~std::uint64_t{0}) {
    if (keys[slot] == key)
      return false;
    slot = (slot + 1) & mask;
  }
  keys[slot] = key;
  values[slot] = value;
  return true;
}

std::optional<std::uint32_t>
FiniteQuotient::index_of(const LevelPermutation &p) const {
  if (p.depth() != depth_)
    return std::nullopt;
  return index_.find(p.portrait());
}

std::uint32_t FiniteQuotient::index_of(const GrigElement &g) const {
  auto found = index_.find(project_code(g, depth_));
  if (!found)
    throw InternalError("projection of " + g.str() + " missing from quotient");
  return *found;
}

std::uint32_t FiniteQuotient::multiply(std::uint32_t i,
                                       std::uint32_t j) const {
  return *index_.find(compose(depth_, codes_[i], codes_[j]));
}

std::uint32_t FiniteQuotient::inverse(std::uint32_t i) const {
  return *index_.find(invert_code(depth_, codes_[i]));
}

std::shared_ptr<const FiniteQuotient> enumerate(int n) {
  if (n < 1)
    throw InputError("quotient depth must be at least 1");
  if (n > quotient_depth_guard())
    throw ResourceError("quotient depth " + std::to_string(n) +
                        " exceeds guard " +
                        std::to_string(quotient_depth_guard()) +
                        " (set GRIG_MAX_DEPTH to raise it)");

  static std::mutex mutex;
  static std::map<int, std::shared_ptr<const FiniteQuotient>> cache;
  std::lock_guard lock(mutex);
  if (auto it = cache.find(n); it != cache.end())
    return it->second;

  auto q = std::make_shared<FiniteQuotient>();
  q->depth_ = n;
  const char letters[4] = {'a', 'b', 'c', 'd'};
  for (int i = 0; i < 4; ++i)
    q->generators_[i] = project(GrigElement::generator(letters[i]), n);

  q->index_.reserve(1024);
  q->codes_.push_back(0);
  q->index_.insert(0, 0);
  std::size_t layer_begin = 0;
  std::size_t layer_end = 1;
  while (layer_begin < layer_end) {
    std::vector<std::uint64_t> fresh;
    for (std::size_t i = layer_begin; i < layer_end; ++i) {
      for (const auto &gen : q->generators_) {
        std::uint64_t c = compose(n, q->codes_[i], gen.portrait());
        if (4 * (q->codes_.size() + fresh.size()) > q->index_.keys.size())
          q->index_.reserve(2 * (q->codes_.size() + fresh.size()));
        if (q->index_.insert(c, 0))
          fresh.push_back(c);
      }
    }
    std::sort(fresh.begin(), fresh.end());
    layer_begin = q->codes_.size();
    for (std::uint64_t c : fresh) {
      q->index_.assign(c, static_cast<std::uint32_t>(q->codes_.size()));
      q->codes_.push_back(c);
    }
    layer_end = q->codes_.size();
  }
  cache.emplace(n, q);
  return q;
}

std::vector<std::uint32_t>
subgroup_closure(const FiniteQuotient &q,
                 std::span<const std::uint32_t> seeds) {
  std::vector<char> member(q.size(), 0);
  std::vector<std::uint32_t> queue{0};
  member[0] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (std::uint32_t s : seeds) {
      if (s >= q.size())
        throw InputError("seed index out of range");
      std::uint32_t next = q.multiply(queue[head], s);
      if (!member[next]) {
        member[next] = 1;
        queue.push_back(next);
      }
    }
  }
  std::sort(queue.begin(), queue.end());
  return queue;
}

CosetPartition::CosetPartition(std::shared_ptr<const FiniteQuotient> q,
                               std::span<const std::uint32_t> subgroup)
    : quotient_(std::move(q)), subgroup_order_(subgroup.size()) {
  constexpr std::uint32_t kUnset = ~std::uint32_t{0};
  labels_.assign(quotient_->size(), kUnset);
  for (std::uint32_t x = 0; x < quotient_->size(); ++x) {
    if (labels_[x] != kUnset)
      continue;
    auto id = static_cast<std::uint32_t>(representatives_.size());
    representatives_.push_back(x);
    for (std::uint32_t h : subgroup) {
      std::uint32_t y = quotient_->multiply(x, h);
      if (labels_[y] != kUnset && labels_[y] != id)
        throw InputError("coset partition: element set is not a subgroup");
      labels_[y] = id;
    }
  }
  if (representatives_.size() * subgroup_order_ != quotient_->size())
    throw InputError("coset partition: element set is not a subgroup");
}

std::uint32_t CosetPartition::label_of(const LevelPermutation &p) const {
  auto idx = quotient_->index_of(p.restrict_to(depth()));
  if (!idx)
    throw InputError("permutation is not in the quotient");
  return labels_[*idx];
}

std::uint32_t CosetPartition::label_of(const GrigElement &g) const {
  return labels_[quotient_->index_of(g)];
}

void CosetPartition::relabel(std::span<const std::uint32_t> new_ids) {
  if (new_ids.size() != representatives_.size())
    throw InputError("relabel: wrong number of ids");
  std::vector<std::uint32_t> reps(representatives_.size());
  for (std::size_t old = 0; old < new_ids.size(); ++old)
    reps[new_ids[old]] = representatives_[old];
  for (auto &l : labels_)
    l = new_ids[l];
  representatives_ = std::move(reps);
}

namespace {

// x^-1 g x = h  <=>  g(x(v)) = x(h(v)) on every leaf v; exits early.
bool conjugates(int n, std::uint64_t x, std::span<const std::uint32_t> g_img,
                std::span<const std::uint32_t> h_img) noexcept {
  std::uint32_t leaves = 1u << n;
  for (std::uint32_t v = 0; v < leaves; ++v)
    if (g_img[apply_code(n, x, v)] != apply_code(n, x, h_img[v]))
      return false;
  return true;
}

} // namespace

std::vector<std::uint32_t> brute_Q(int n, const GrigElement &g,
                                   const GrigElement &h,
                                   const CosetPartition &cosets) {
  if (cosets.depth() > n)
    throw InputError("brute_Q: subgroup must contain Stab(" +
                     std::to_string(n) + ")");
  auto q = enumerate(n);
  auto g_img = project(g, n).images();
  auto h_img = project(h, n).images();
  std::vector<char> hit(cosets.coset_count(), 0);
  for (std::size_t i = 0; i < q->size(); ++i) {
    std::uint64_t x = q->code(i);
    if (conjugates(n, x, g_img, h_img))
      hit[cosets.label_of(LevelPermutation(n, x))] = 1;
  }
  std::vector<std::uint32_t> out;
  for (std::uint32_t c = 0; c < hit.size(); ++c)
    if (hit[c])
      out.push_back(c);
  return out;
}

bool brute_conjugate(int n, const GrigElement &g, const GrigElement &h) {
  auto q = enumerate(n);
  auto g_img = project(g, n).images();
  auto h_img = project(h, n).images();
  for (std::size_t i = 0; i < q->size(); ++i)
    if (conjugates(n, q->code(i), g_img, h_img))
      return true;
  return false;
}

bool brute_conjugate_in(int n, const GrigElement &g, const GrigElement &h,
                        std::span<const std::uint32_t> subgroup) {
  auto q = enumerate(n);
  auto g_img = project(g, n).images();
  auto h_img = project(h, n).images();
  for (std::uint32_t i : subgroup)
    if (conjugates(n, q->code(i), g_img, h_img))
      return true;
  return false;
}

} // namespace grig
