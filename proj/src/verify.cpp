#include "grig/verify.hpp"

#include "grig/coset_algebra.hpp"
#include "grig/conjugacy.hpp"
#include "grig/errors.hpp"
#include "grig/wreath.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <thread>

namespace grig {

namespace {

// Reduced words of length <= n, shortest first.
std::vector<GrigElement> words_up_to(std::size_t n) {
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

std::string show(const GrigElement &g) {
  return g.str().empty() ? std::string("1") : g.str();
}

SuiteResult finish(SuiteResult r, const std::string &summary) {
  r.pass = r.problems.empty();
  r.summary = summary;
  return r;
}

} // namespace

SuiteResult verify_lift_suite() {
  SuiteResult r{"lift-table", false, {}, {}};
  LiftReport report = verify_lift_table(4);
  r.problems = report.problems;
  return finish(std::move(r), std::to_string(report.witnessed) + "/" +
                                  std::to_string(report.table_entries) +
                                  " entries verified");
}

SuiteResult verify_schreier_suite() {
  SuiteResult r{"schreier", false, {}, {}};
  const SchreierTable &embedded = schreier_table();
  SchreierTable derived = derive_schreier_table();
  const char letters[3] = {'a', 'b', 'd'};
  for (int i = 0; i < kKIndex; ++i)
    for (int x = 0; x < 3; ++x)
      if (embedded[i][x] != derived[i][x])
        r.problems.push_back("edge z" + std::to_string(i) + " -" +
                             letters[x] + "-> z" +
                             std::to_string(embedded[i][x]) +
                             " but the quotient gives z" +
                             std::to_string(derived[i][x]));
  auto words = words_up_to(8);
  for (const auto &g : words)
    if (coset_of(g).index != k_partition().label_of(g))
      r.problems.push_back("coset of " + show(g) + " disagrees");
  return finish(std::move(r), "48 edges, " + std::to_string(words.size()) +
                                  " words checked");
}

SuiteResult verify_base_cong_suite() {
  SuiteResult r{"base-cong", false, {}, {}};
  const std::map<std::string, std::uint16_t> expected = {
      {"", 0xFFFF},
      {"a", (1u << 0) | (1u << 3) | (1u << 4) | (1u << 7)},
      {"b", (1u << 0) | (1u << 1) | (1u << 8) | (1u << 9)},
      {"c", (1u << 0) | (1u << 1) | (1u << 8) | (1u << 9)},
      {"d", (1u << 0) | (1u << 1) | (1u << 4) | (1u << 5) | (1u << 8) |
                (1u << 9) | (1u << 12) | (1u << 13)},
  };
  for (const auto &[x, mx] : expected)
    for (const auto &[y, my] : expected) {
      std::uint16_t want = x == y ? mx : 0;
      QSet got = q_exact(GrigElement::parse(x), GrigElement::parse(y));
      if (got.mask() != want)
        r.problems.push_back("Q(" + (x.empty() ? "1" : x) + "," +
                             (y.empty() ? "1" : y) + ") = " + got.to_string() +
                             ", expected " + QSet::from_mask(want).to_string());
    }
  return finish(std::move(r), "25 pairs checked");
}

SuiteResult verify_q_agreement_suite() {
  SuiteResult r{"q-agreement", false, {}, {}};
  auto words = words_up_to(2);
  int worst1 = 0, worst2 = 0;
  for (const auto &g : words)
    for (const auto &h : words) {
      int limit = std::max(g.length(), h.length()) <= 1 ? 6 : 10;
      auto rep = stabilization_depth(g, h, 14);
      int &worst = limit == 6 ? worst1 : worst2;
      worst = std::max(worst, rep.depth);
      if (rep.depth > limit)
        r.problems.push_back("(" + show(g) + "," + show(h) +
                             ") stabilizes at depth " +
                             std::to_string(rep.depth) + " > " +
                             std::to_string(limit));
    }
  return finish(std::move(r),
                std::to_string(words.size() * words.size()) +
                    " pairs; worst depth " + std::to_string(worst1) +
                    " for generators, " + std::to_string(worst2) +
                    " for length 2");
}

std::vector<std::pair<std::string, std::string>> default_wreath_groups() {
  return {{"C2", "C2"}, {"C2", "C3"}, {"C4", "C2"}, {"S3", "C2"}, {"S3", "C3"}};
}

SuiteResult
verify_wreath_suite(const std::vector<std::pair<std::string, std::string>> &groups,
                    unsigned threads) {
  SuiteResult r{"wreath", false, {}, {}};
  std::mutex mutex;
  std::size_t checked = 0;
  for (const auto &[an, bn] : groups) {
    WreathProduct w(FiniteGroup::by_name(an), FiniteGroup::by_name(bn));
    w.require_enumerable();
    bool abelian = w.base().is_abelian();
    auto report = [&](const WreathElement &x, const std::string &what) {
      std::lock_guard lock(mutex);
      r.problems.push_back(w.label() + ": " + what + " at " + w.to_string(x));
    };
    auto check = [&](std::uint64_t i) {
      WreathElement x = w.element(i);
      auto brute = centralizer_brute(w, x);
      if (centralizer_meldrum(w, x) != brute)
        report(x, "Meldrum centralizer differs from brute force");
      if (!abelian)
        return;
      Reduction red = reduce_element(w, x);
      if (!is_reduced(w, red.reduced) ||
          w.mul(w.mul(w.inv(red.conjugator), x), red.conjugator) !=
              red.reduced)
        report(x, "reduction failed");
      if (!is_reduced(w, x))
        return;
      if (centralizer_abelian(w, x) != brute)
        report(x, "simplified centralizer differs from brute force");
      auto structure = check_centralizer_structure(w, x);
      if (!structure.match || !structure.order_identity)
        report(x, "centralizer factorization fails");
      bool f_trivial = std::all_of(x.f.begin(), x.f.end(), [&](int v) {
        return v == w.base().identity();
      });
      if (!f_trivial && x.b != w.top().identity()) {
        auto s = sigma(w, x);
        if (!s.exact || !s.kernel_is_cyclic_b)
          report(x, "coset action is not exact with kernel <b>");
      }
    };
    unsigned workers = std::max(1u, threads);
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t)
      pool.emplace_back([&] {
        for (std::uint64_t i; (i = next++) < w.order();) {
          try {
            check(i);
          } catch (const std::exception &e) {
            report(w.element(i), e.what());
          }
        }
      });
    for (auto &t : pool)
      t.join();
    checked += w.order();
  }
  std::sort(r.problems.begin(), r.problems.end());
  return finish(std::move(r), std::to_string(groups.size()) + " groups, " +
                                  std::to_string(checked) +
                                  " elements checked");
}

} // namespace grig
