#include "grig/cli.hpp"

#include "grig/coset_algebra.hpp"
#include "grig/conjugacy.hpp"
#include "grig/errors.hpp"
#include "grig/quotient.hpp"
#include "grig/verify.hpp"

#include <fstream>
#include <functional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

namespace grig {

namespace {

using nlohmann::json;

struct Options {
  bool pretty = false;
  unsigned threads = 1;
  std::string out_path;
};

std::vector<std::string> split_list(const std::string &text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep))
    if (!item.empty())
      out.push_back(item);
  return out;
}

json qset_json(const QSet &q) { return q.names(); }

void write_file(const std::string &path, const std::string &text) {
  std::ofstream f(path);
  if (!f)
    throw InputError("cannot write " + path);
  f << text;
}

json suite_json(const SuiteResult &r) {
  return {{"suite", r.name},
          {"pass", r.pass},
          {"summary", r.summary},
          {"problems", r.problems}};
}

} // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out,
            std::ostream &err) {
  CLI::App app{"Conjugacy in the first Grigorchuk group, and wreath product "
               "centralizers"};
  app.name("grig");
  app.require_subcommand(1);
  Options opt;
  app.add_flag("--pretty", opt.pretty, "Indent JSON output");
  app.add_option("--threads", opt.threads, "Worker cap")
      ->check(CLI::Range(1u, 256u));
  app.add_option("--out", opt.out_path, "Write DOT output to this file");

  // Each verb stores its action; it runs after parsing succeeds.
  std::function<int(json &)> action;
  auto verb = [&](const std::string &name, const std::string &help) {
    CLI::App *sub = app.add_subcommand(name, help);
    sub->fallthrough();
    return sub;
  };

  std::string w1, w2, vertex, groups, gens;
  int level = 0, depth = 0, max_depth = 14;
  bool dot = false;

  auto parse = [](const std::string &w) { return GrigElement::parse(w); };

  auto *reduce = verb("reduce", "Reduced form of a word");
  reduce->add_option("word", w1)->required();
  reduce->callback([&] {
    action = [&](json &j) {
      j = parse(w1).str();
      return 0;
    };
  });

  auto *mul = verb("mul", "Product of two words");
  mul->add_option("first", w1)->required();
  mul->add_option("second", w2)->required();
  mul->callback([&] {
    action = [&](json &j) {
      j = (parse(w1) * parse(w2)).str();
      return 0;
    };
  });

  auto *inv = verb("inv", "Inverse of a word");
  inv->add_option("word", w1)->required();
  inv->callback([&] {
    action = [&](json &j) {
      j = parse(w1).inverse().str();
      return 0;
    };
  });

  auto *sec = verb("section", "Section at a binary vertex");
  sec->add_option("word", w1)->required();
  sec->add_option("vertex", vertex)->required();
  sec->callback([&] {
    action = [&](json &j) {
      j = section(parse(w1), vertex).str();
      return 0;
    };
  });

  auto *actv = verb("act", "Image of a binary vertex");
  actv->add_option("word", w1)->required();
  actv->add_option("vertex", vertex)->required();
  actv->callback([&] {
    action = [&](json &j) {
      j = act(parse(w1), vertex);
      return 0;
    };
  });

  auto *ord = verb("order", "Order of an element");
  ord->add_option("word", w1)->required();
  ord->callback([&] {
    action = [&](json &j) {
      j = order(parse(w1));
      return 0;
    };
  });

  auto *coset = verb("coset", "Coset of K containing an element");
  coset->add_option("word", w1)->required();
  coset->callback([&] {
    action = [&](json &j) {
      j = coset_of(parse(w1)).name();
      return 0;
    };
  });

  auto *kmc = verb("km-coset", "Coset descriptor modulo K_m");
  kmc->add_option("word", w1)->required();
  kmc->add_option("--level", level, "m")->default_val(1);
  kmc->callback([&] {
    action = [&](json &j) {
      j = km_coset_of(parse(w1), level).to_string();
      return 0;
    };
  });

  auto *conj = verb("conj", "Decide conjugacy in the whole group");
  conj->add_option("first", w1)->required();
  conj->add_option("second", w2)->required();
  conj->callback([&] {
    action = [&](json &j) {
      ConjugacyResult r = is_conjugate(parse(w1), parse(w2));
      j = {{"conjugate", r.conjugate},
           {"level", 0},
           {"witness_cosets", qset_json(r.witnesses)},
           {"depth_used", r.depth}};
      return r.conjugate ? 0 : 1;
    };
  });

  auto *conj_sub = verb("conj-sub", "Decide conjugacy in a subgroup H >= K_m");
  conj_sub->add_option("first", w1)->required();
  conj_sub->add_option("second", w2)->required();
  conj_sub->add_option("--subgroup-gens", gens, "Comma-separated words")
      ->required();
  conj_sub->add_option("--km-level", level, "m with K_m <= H (trusted)")
      ->default_val(0);
  conj_sub->callback([&] {
    action = [&](json &j) {
      std::vector<GrigElement> hs;
      for (const auto &w : split_list(gens, ','))
        hs.push_back(parse(w));
      if (hs.empty())
        throw InputError("--subgroup-gens is empty");
      GrigElement g = parse(w1), h = parse(w2);
      QSet q = conjugators_in_subgroup(g, h, hs, level);
      j = {{"conjugate", !q.empty()},
           {"level", level},
           {"witness_cosets", qset_json(q)},
           {"depth_used", exact_depth_km(g, h, level)}};
      return q.empty() ? 1 : 0;
    };
  });

  auto *qfin = verb("qfin", "Q^{K_m}_n(g,h)");
  qfin->add_option("first", w1)->required();
  qfin->add_option("second", w2)->required();
  qfin->add_option("--depth", depth, "n")->required();
  qfin->add_option("--km-level", level, "m")->default_val(0);
  qfin->callback([&] {
    action = [&](json &j) {
      QSet q = q_fin_km(parse(w1), parse(w2), depth, level);
      j = {{"level", level}, {"depth", depth}, {"cosets", qset_json(q)}};
      return 0;
    };
  });

  auto *stab = verb("stabilize", "Depth from which Q^K_n stops shrinking");
  stab->add_option("first", w1)->required();
  stab->add_option("second", w2)->required();
  stab->add_option("--max-depth", max_depth, "n_max")->default_val(14);
  stab->callback([&] {
    action = [&](json &j) {
      auto r = stabilization_depth(parse(w1), parse(w2), max_depth);
      json by_depth = json::array();
      for (std::size_t i = 0; i < r.by_depth.size(); ++i)
        by_depth.push_back({{"depth", i + 3}, {"cosets", qset_json(r.by_depth[i])}});
      j = {{"depth", r.depth},
           {"max_depth", r.n_max},
           {"bound", r.bound},
           {"within_bound", r.within_bound},
           {"by_depth", by_depth}};
      return 0;
    };
  });

  auto *tree = verb("splitting-tree", "Recursion tree of Q^K_m(g,h)");
  tree->add_option("first", w1)->required();
  tree->add_option("second", w2)->required();
  tree->add_option("--depth", depth, "m")->required();
  tree->add_flag("--dot", dot, "Emit DOT instead of JSON");
  tree->callback([&] {
    action = [&](json &j) {
      SplittingTree t = build_splitting_tree(parse(w1), parse(w2), depth);
      std::string text = export_dot(t);
      if (!opt.out_path.empty())
        write_file(opt.out_path, text);
      if (dot && opt.out_path.empty()) {
        j = nullptr;
        out << text;
        return 0;
      }
      j = {{"nodes", t.nodes.size()},
           {"depth", t.depth()},
           {"result", qset_json(evaluate(t))}};
      if (!opt.out_path.empty())
        j["dot"] = opt.out_path;
      return 0;
    };
  });

  auto *quot = verb("quotient", "Finite quotients Gamma/Stab(n)");
  auto *qenum = quot->add_subcommand("enumerate", "Order of Gamma/Stab(n)");
  qenum->fallthrough();
  qenum->add_option("--depth", depth, "n")->required();
  quot->require_subcommand(1);
  qenum->callback([&] {
    action = [&](json &j) {
      auto q = enumerate(depth);
      j = {{"depth", depth}, {"order", q->size()}};
      return 0;
    };
  });

  auto *ver = verb("verify", "Run a verification suite");
  std::string suite;
  ver->add_option("suite", suite)
      ->required()
      ->check(CLI::IsMember({"lift-table", "schreier", "base-cong",
                             "q-agreement", "wreath", "all"}));
  ver->add_option("--groups", groups,
                  "Wreath suite groups, e.g. C2:C3,S3:C2");
  ver->callback([&] {
    action = [&](json &j) {
      auto wreath_groups = default_wreath_groups();
      if (!groups.empty()) {
        wreath_groups.clear();
        for (const auto &pair : split_list(groups, ',')) {
          auto parts = split_list(pair, ':');
          if (parts.size() != 2)
            throw InputError("group pair must look like A:B, got " + pair);
          wreath_groups.emplace_back(parts[0], parts[1]);
        }
      }
      std::vector<SuiteResult> results;
      if (suite == "lift-table" || suite == "all")
        results.push_back(verify_lift_suite());
      if (suite == "schreier" || suite == "all") {
        results.push_back(verify_schreier_suite());
        if (!opt.out_path.empty())
          write_file(opt.out_path, schreier_dot());
      }
      if (suite == "base-cong" || suite == "all")
        results.push_back(verify_base_cong_suite());
      if (suite == "q-agreement" || suite == "all")
        results.push_back(verify_q_agreement_suite());
      if (suite == "wreath" || suite == "all")
        results.push_back(verify_wreath_suite(wreath_groups, opt.threads));
      bool pass = true;
      for (const auto &r : results)
        pass = pass && r.pass;
      if (results.size() == 1) {
        j = suite_json(results.front());
      } else {
        j = {{"pass", pass}, {"suites", json::array()}};
        for (const auto &r : results)
          j["suites"].push_back(suite_json(r));
      }
      return pass ? 0 : 1;
    };
  });

  std::vector<std::string> argv_storage{"grig"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char *> argv;
  for (const auto &a : argv_storage)
    argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp &) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError &e) {
    err << "grig: " << e.what() << "\n";
    return 2;
  }

  try {
    json j;
    int code = action(j);
    if (!j.is_null())
      out << (opt.pretty ? j.dump(2) : j.dump()) << "\n";
    return code;
  } catch (const InputError &e) {
    err << "grig: " << e.what() << "\n";
    return 2;
  } catch (const ResourceError &e) {
    err << "grig: resource limit: " << e.what() << "\n";
    return 3;
  } catch (const std::exception &e) {
    err << "grig: internal error: " << e.what() << "\n";
    return 4;
  }
}

} // namespace grig
