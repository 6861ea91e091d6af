#pragma once

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "staraut/serialize.hpp"

namespace staraut::cli {

/// Exit code and JSON document of one invocation.
struct Outcome {
  int code = 0;
  Json body;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Enumeration bounds; STARAUT_MAX_GROUP_ORDER replaces all of them.
struct Bounds {
  int form = kDefaultFormBound;
  int aut = kDefaultAutBound;
  int equivalence = kDefaultEquivalenceBound;

  static Bounds from_env() {
    Bounds b;
    const char* v = std::getenv("STARAUT_MAX_GROUP_ORDER");
    if (v == nullptr) return b;
    char* end = nullptr;
    long n = std::strtol(v, &end, 10);
    if (end == v || *end != '\0' || n < 1 || n > kMaxParsedGroupOrder)
      throw UsageError(std::string("STARAUT_MAX_GROUP_ORDER: expected an integer in [1, ") +
                       std::to_string(kMaxParsedGroupOrder) + "], got '" + v + "'");
    b.form = b.aut = b.equivalence = static_cast<int>(n);
    return b;
  }
};

namespace detail {

/// Inline JSON, or @path to read it from a file.
inline Json load_json(const std::string& arg, const std::string& name) {
  std::string text = arg;
  if (!arg.empty() && arg[0] == '@') {
    std::ifstream in(arg.substr(1));
    if (!in) throw IoError(name + ": cannot read " + arg.substr(1));
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(name + ": invalid JSON: " + e.what());
  }
}

inline Json elements_json(const FinAbGroup& G, const std::vector<int>& gs) {
  Json a = Json::array();
  for (int g : gs) a.push_back(io::element_json(G, g));
  return a;
}

/// First failing axiom of s, in the order pentagon, triangle, hexagons, twist, ribbon.
inline std::optional<Json> structure_counterexample(const SkeletalStructure& s) {
  const auto& G = s.group;
  Cochain d = coboundary(s.psi);
  for (std::size_t i = 0; i < d.table.size(); ++i)
    if (!d.table[i].is_one())
      return Json{{"check", "pentagon"}, {"args", elements_json(G, d.args(i))}, {"value", io::to_json(d.table[i])}};
  for (int g = 0; g < G.order(); ++g)
    for (int h = 0; h < G.order(); ++h)
      if (!s.psi(g, 0, h).is_one())
        return Json{{"check", "triangle"}, {"args", elements_json(G, {g, h})}, {"value", io::to_json(s.psi(g, 0, h))}};
  if (auto f = first_hexagon_failure(s.psi, s.omega))
    return Json{{"check", "hexagon"}, {"hexagon", f->hexagon}, {"args", elements_json(G, {f->a, f->b, f->c})}};
  if (auto f = first_twist_failure(s.omega, s.theta))
    return Json{{"check", "twist"}, {"args", elements_json(G, {f->first, f->second})}};
  if (auto g = first_ribbon_failure(G, s.theta, s.g0))
    return Json{{"check", "ribbon"}, {"args", elements_json(G, {*g})}};
  return std::nullopt;
}

inline Json bilinearity_json(const FinAbGroup& G, const BilinearityFailure& f) {
  return Json{{"check", "bilinear"}, {"slot", f.slot}, {"args", elements_json(G, {f.x, f.y, f.z})}};
}

inline Json chu_checks(const ChuReport& r) {
  return Json{{"dual_involution", r.dual_involution}, {"internal_homs_valid", r.internal_homs_valid},
              {"hom_unit", r.hom_unit},               {"hom_exchange", r.hom_exchange},
              {"hom_transpose", r.hom_transpose},     {"dual_as_hom", r.dual_as_hom},
              {"tensor_adjunction", r.tensor_adjunction}, {"adjunction_natural", r.adjunction_natural},
              {"tensor_unit", r.tensor_unit},         {"tensor_symmetry", r.tensor_symmetry},
              {"tensor_associator", r.tensor_associator}, {"ihom_functorial", r.ihom_functorial}};
}

inline Json graded_checks(const GradedReport& r) {
  return Json{{"dual_reindex", r.dual_reindex},         {"double_dual_iso", r.double_dual_iso},
              {"double_dual_general", r.double_dual_general}, {"tensor_shift", r.tensor_shift},
              {"curry_round_trip", r.curry_round_trip}, {"star_adjunction", r.star_adjunction}};
}

inline Json functor_json(const FinFunctor& F) {
  Json obs = Json::object(), ms = Json::object();
  for (int a = 0; a < F.source.num_objects(); ++a) obs[F.source.objects[a]] = F.target.objects[F.on_objects[a]];
  for (int f = 0; f < F.source.num_morphisms(); ++f) ms[F.source.labels[f]] = F.target.labels[F.on_morphisms[f]];
  return Json{{"objects", std::move(obs)}, {"morphisms", std::move(ms)}};
}

inline FinCategory named_category(const std::string& arg) {
  if (arg == "z2") return cyclic_group_category(2);
  if (arg == "chain3") return chain_category(3);
  if (arg == "three") return three_object_category();
  return io::category_from_json(load_json(arg, "--category"), "category");
}

inline constexpr std::size_t kMaxReportedFailures = 20;

inline Json failures_json(const std::vector<std::string>& fs) {
  Json a = Json::array();
  for (std::size_t i = 0; i < fs.size() && i < kMaxReportedFailures; ++i) a.push_back(fs[i]);
  return a;
}

// ---------------------------------------------------------------------------
// Commands.

inline Outcome qf_enumerate(const FinAbGroup& G, const std::string& kind, const Bounds& b) {
  Json out{{"group", io::to_json(G)}, {"kind", kind}};
  Json items = Json::array();
  if (kind == "weak" || kind == "quadratic") {
    auto forms = kind == "weak" ? enumerate_wqf(G, b.form) : enumerate_qf(G, b.form);
    for (const auto& q : forms) items.push_back(io::to_json(q));
    out["count"] = forms.size();
    out["forms"] = std::move(items);
  } else if (kind == "wsqf") {
    auto data = enumerate_wsqf(G, b.form);
    for (const auto& d : data) items.push_back(io::to_json(d));
    out["count"] = data.size();
    out["data"] = std::move(items);
  } else {
    auto data = enumerate_wrqf(G, b.form);
    for (const auto& d : data) items.push_back(io::to_json(d));
    out["count"] = data.size();
    out["data"] = std::move(items);
  }
  return {0, std::move(out)};
}

inline Outcome qf_classify(const FinAbGroup& G, const std::string& kind, const Bounds& b) {
  Json orbits;
  if (kind == "weak") {
    orbits = io::orbits_json(classify(enumerate_wqf(G, b.form), b.aut));
  } else if (kind == "quadratic") {
    orbits = io::orbits_json(classify(enumerate_qf(G, b.form), b.aut));
  } else if (kind == "wsqf") {
    orbits = io::orbits_json(G, classify_wsqf(enumerate_wsqf(G, b.form), b.aut));
  } else {
    orbits = io::orbits_json(G, classify_wrqf(enumerate_wrqf(G, b.form), b.aut));
  }
  Json out{{"group", io::to_json(G)}, {"kind", kind}, {"count", orbits["orbits"].size()}};
  out["orbits"] = std::move(orbits["orbits"]);
  return {0, std::move(out)};
}

inline Outcome qf_decompose(const WeakQuadraticForm& q) {
  if (auto f = first_bilinearity_failure(defect(q)))
    return {1, Json{{"form", io::to_json(q)}, {"weak_qform", false}, {"counterexample", bilinearity_json(q.group, *f)}}};
  Decomposition d = decompose(q);
  Json checks{{"product", d.qtilde * d.eta == q},
              {"qtilde_symmetric", is_symmetric_wrt(d.qtilde, q.group.zero())},
              {"same_bihom", defect(d.qtilde) == defect(q)}};
  bool ok = checks["product"].get<bool>() && checks["qtilde_symmetric"].get<bool>() && checks["same_bihom"].get<bool>();
  return {ok ? 0 : 1, Json{{"form", io::to_json(q)},
                           {"qtilde", io::to_json(d.qtilde)},
                           {"eta", io::to_json(d.eta)},
                           {"checks", std::move(checks)}}};
}

inline Outcome qf_check(const WeakQuadraticForm& q, std::optional<int> g0) {
  const auto& G = q.group;
  auto bil = first_bilinearity_failure(defect(q));
  auto sym0 = first_symmetry_failure(q, G.zero());
  Json out{{"weak_qform", !bil}, {"qform", !bil && !sym0}};
  int code = bil ? 1 : 0;
  std::optional<Json> cex;
  if (bil) cex = bilinearity_json(G, *bil);
  if (g0) {
    auto sym = first_symmetry_failure(q, *g0);
    out["symmetric_wrt"] = !sym;
    if (sym) {
      code = 1;
      if (!cex)
        cex = Json{{"check", "symmetric_wrt"}, {"g0", io::element_json(G, *g0)}, {"args", elements_json(G, {*sym})}};
    }
  }
  if (!cex && sym0 && !bil)
    out["qform_counterexample"] = Json{{"check", "symmetric"}, {"args", elements_json(G, {*sym0})}};
  if (cex) out["counterexample"] = std::move(*cex);
  return {code, std::move(out)};
}

inline Outcome cocycle_check(const AbelianCocycle3& c) {
  const auto& G = c.group();
  std::optional<Json> cex;
  auto first_unnormalized = [&](const Cochain& k, const char* name) -> std::optional<Json> {
    for (std::size_t i = 0; i < k.table.size(); ++i) {
      auto a = k.args(i);
      for (int x : a)
        if (x == 0 && !k.table[i].is_one())
          return Json{{"check", std::string("normalized_") + name}, {"args", elements_json(G, a)}};
    }
    return std::nullopt;
  };
  auto un = first_unnormalized(c.psi, "psi");
  if (!un) un = first_unnormalized(c.omega, "omega");
  Cochain d = coboundary(c.psi);
  std::optional<Json> pent;
  for (std::size_t i = 0; i < d.table.size() && !pent; ++i)
    if (!d.table[i].is_one())
      pent = Json{{"check", "pentagon"}, {"args", elements_json(G, d.args(i))}, {"value", io::to_json(d.table[i])}};
  auto hex = first_hexagon_failure(c.psi, c.omega);
  Json out{{"normalized", !un}, {"pentagon", !pent}, {"hexagons", !hex}, {"abelian_3cocycle", !un && !pent && !hex}};
  if (un) {
    cex = *un;
  } else if (pent) {
    cex = *pent;
  } else if (hex) {
    cex = Json{{"check", "hexagon"}, {"hexagon", hex->hexagon}, {"args", elements_json(G, {hex->a, hex->b, hex->c})}};
  }
  if (!cex) {
    out["em_qform"] = io::to_json(em_qform(c));
    return {0, std::move(out)};
  }
  out["counterexample"] = std::move(*cex);
  return {1, std::move(out)};
}

inline Outcome cocycle_from_qform_cmd(const WeakQuadraticForm& q, const Bounds& b) {
  const auto& G = q.group;
  if (auto f = first_bilinearity_failure(defect(q)))
    return {1, Json{{"form", io::to_json(q)}, {"qform", false}, {"counterexample", bilinearity_json(G, *f)}}};
  if (auto g = first_symmetry_failure(q, G.zero()))
    return {1, Json{{"form", io::to_json(q)},
                    {"qform", false},
                    {"counterexample", Json{{"check", "symmetric"}, {"args", elements_json(G, {*g})}}}}};
  AbelianCocycle3 c = cocycle_from_qform(q, b.form);
  return {0, Json{{"form", io::to_json(q)}, {"cocycle", io::to_json(c)}, {"em_qform_matches", em_qform(c) == q}}};
}

inline Outcome ribbon_build(const WRQFDatum& d, const Bounds& b) {
  if (!is_wrqf(d)) {
    Json cex{{"check", "wrqf"}};
    const auto& G = d.q.group;
    if (auto f = first_bilinearity_failure(defect(d.q))) {
      cex = bilinearity_json(G, *f);
    } else if (auto g = first_symmetry_failure(d.q, G.zero())) {
      cex = Json{{"check", "symmetric"}, {"args", elements_json(G, {*g})}};
    } else {
      BiHom beta = defect(d.q);
      for (int g = 0; g < G.order(); ++g)
        if (d.eta(g) != beta(g, d.g0)) {
          cex = Json{{"check", "eta"}, {"args", elements_json(G, {g})}};
          break;
        }
    }
    return {1, Json{{"datum", io::to_json(d)}, {"wrqf", false}, {"counterexample", std::move(cex)}}};
  }
  SkeletalStructure s = build_from_wrqf(d, b.form);
  AxiomReport r = check_structure(s);
  Json out{{"datum", io::to_json(d)}, {"structure", io::to_json(s)}, {"checks", io::to_json(r)}};
  if (auto cex = structure_counterexample(s)) out["counterexample"] = std::move(*cex);
  return {r.all() ? 0 : 1, std::move(out)};
}

inline Outcome ribbon_check(const SkeletalStructure& s) {
  AxiomReport r = check_structure(s);
  Json out{{"checks", io::to_json(r)}};
  if (auto cex = structure_counterexample(s)) out["counterexample"] = std::move(*cex);
  return {r.all() ? 0 : 1, std::move(out)};
}

inline Outcome ribbon_enumerate(const FinAbGroup& G, bool with_classes, const Bounds& b) {
  auto ss = enumerate_structures(G, b.form);
  Json items = Json::array();
  for (const auto& s : ss) items.push_back(io::to_json(s));
  Json out{{"group", io::to_json(G)}, {"count", ss.size()}, {"structures", std::move(items)}};
  if (with_classes) out["classes"] = classify_structures(ss, b.equivalence);
  return {0, std::move(out)};
}

inline Outcome ribbon_equivalent(const SkeletalStructure& s1, const SkeletalStructure& s2, const Bounds& b) {
  auto w = equivalent_structures(s1, s2, b.equivalence);
  Json out{{"equivalent", w.has_value()}};
  if (w) out["witness"] = Json{{"automorphism", io::to_json(w->f)}, {"kappa", io::cochain_json(w->kappa)}};
  return {0, std::move(out)};
}

inline constexpr std::int64_t kMaxGradedSpaces = 65536;

inline Outcome gvect_verify(const FinAbGroup& G, std::uint64_t seed, int max_dim) {
  std::int64_t count = 1;
  for (int i = 0; i < G.order() && count <= kMaxGradedSpaces; ++i) count *= max_dim + 1;
  if (count > kMaxGradedSpaces)
    throw BoundExceeded("gvect verify: more than " + std::to_string(kMaxGradedSpaces) + " graded spaces");
  GradedReport r = verify_graded(G, max_dim, seed);
  Json out{{"group", io::to_json(G)}, {"seed", seed}, {"max_dim", max_dim}, {"spaces", count},
           {"checks", graded_checks(r)}};
  if (!r.all()) out["counterexamples"] = failures_json(r.failures);
  return {r.all() ? 0 : 1, std::move(out)};
}

inline Outcome chu_verify(std::uint64_t seed, int max_dim, int trials) {
  std::mt19937_64 rng(seed);
  ChuReport total;
  bool* flags[] = {&total.dual_involution, &total.internal_homs_valid, &total.hom_unit,      &total.hom_exchange,
                   &total.hom_transpose,   &total.dual_as_hom,         &total.tensor_adjunction,
                   &total.adjunction_natural, &total.tensor_unit,      &total.tensor_symmetry,
                   &total.tensor_associator, &total.ihom_functorial};
  for (bool* f : flags) *f = true;
  for (int t = 0; t < trials; ++t) {
    auto dim = [&] { return 1 + static_cast<std::size_t>(rng() % static_cast<std::uint64_t>(max_dim)); };
    ChuPair u = random_valid_pair(rng, dim());
    ChuPair v = random_valid_pair(rng, dim());
    ChuPair w = random_valid_pair(rng, dim());
    ChuReport r = verify_identities(u, v, w, seed + static_cast<std::uint64_t>(t));
    const bool* got[] = {&r.dual_involution, &r.internal_homs_valid, &r.hom_unit,          &r.hom_exchange,
                         &r.hom_transpose,   &r.dual_as_hom,         &r.tensor_adjunction, &r.adjunction_natural,
                         &r.tensor_unit,     &r.tensor_symmetry,     &r.tensor_associator, &r.ihom_functorial};
    for (std::size_t i = 0; i < std::size(flags); ++i) *flags[i] = *flags[i] && *got[i];
    for (const auto& f : r.failures)
      total.failures.push_back("trial " + std::to_string(t) + ": " + f);
    if (!r.all() && total.failures.size() <= kMaxReportedFailures) {
      total.failures.push_back("trial " + std::to_string(t) + " pairs: " +
                               Json::array({io::to_json(u), io::to_json(v), io::to_json(w)}).dump());
    }
  }
  Json out{{"seed", seed}, {"max_dim", max_dim}, {"trials", trials}, {"checks", chu_checks(total)}};
  if (!total.all()) out["counterexamples"] = failures_json(total.failures);
  return {total.all() ? 0 : 1, std::move(out)};
}

inline Outcome prof_demo(const FinCategory& C) {
  auto fs = enumerate_functors(C, C);
  bool yoneda = check_coend_yoneda(C);
  std::optional<Json> cex;
  if (!yoneda) cex = Json{{"check", "coend_yoneda"}};
  bool nat_ok = true;
  for (const auto& f : fs)
    for (const auto& g : fs)
      if (nat_ok && nat_via_end(f, g) != natural_transformations(f, g)) {
        nat_ok = false;
        if (!cex) cex = Json{{"check", "nat_via_end"}, {"first", functor_json(f)}, {"second", functor_json(g)}};
      }
  bool adj_ok = true;
  for (const auto& f : fs) {
    AdjunctionReport r = check_adjunction(f);
    if (!r.all() && adj_ok) {
      adj_ok = false;
      if (!cex) cex = Json{{"check", "adjunction"}, {"functor", functor_json(f)}, {"failures", failures_json(r.failures)}};
    }
  }
  Json out{{"category", io::to_json(C)},
           {"endofunctors", fs.size()},
           {"coend_yoneda", yoneda},
           {"nat_via_end", nat_ok},
           {"adjunctions", adj_ok}};
  if (cex) out["counterexample"] = std::move(*cex);
  return {cex ? 1 : 0, std::move(out)};
}

inline Json error_json(const std::string& type, const std::string& message) {
  return Json{{"error", Json{{"type", type}, {"message", message}}}};
}

inline const CLI::App* deepest_parsed(const CLI::App* app) {
  for (const auto* sub : app->get_subcommands()) return deepest_parsed(sub);
  return app;
}

}  // namespace detail

/// Parses args (without the program name) and runs the selected command.
inline Outcome execute(const std::vector<std::string>& args) {
  CLI::App app{"Exact verification of quadratic forms, ribbon structures, Chu pairs and profunctors", "staraut"};
  app.require_subcommand(1);
  std::string output;
  app.add_option("--output", output, "Also write the JSON result to this file");

  std::string group_arg, form_arg, kind = "weak", wrt_arg, cocycle_arg, datum_arg, structure_arg, second_arg,
                                    category_arg;
  std::uint64_t seed = 0;
  int max_dim = 2, trials = 100;
  bool with_classes = false;
  const std::vector<std::string> kinds{"weak", "quadratic", "wsqf", "wrqf"};
  std::function<Outcome(const Bounds&)> action;

  auto* qf = app.add_subcommand("qf", "Weak quadratic forms");
  qf->require_subcommand(1);
  auto* qf_enum = qf->add_subcommand("enumerate", "List all forms or data on a group");
  qf_enum->add_option("--group", group_arg, "Group JSON or @file")->required();
  qf_enum->add_option("--kind", kind, "weak, quadratic, wsqf or wrqf")->check(CLI::IsMember(kinds));
  qf_enum->callback([&] {
    action = [&](const Bounds& b) {
      return detail::qf_enumerate(io::group_from_json(detail::load_json(group_arg, "--group"), "group"), kind, b);
    };
  });
  auto* qf_dec = qf->add_subcommand("decompose", "Split a weak quadratic form as qtilde * eta");
  qf_dec->add_option("--form", form_arg, "Form JSON or @file")->required();
  qf_dec->callback([&] {
    action = [&](const Bounds&) {
      return detail::qf_decompose(io::form_from_json(detail::load_json(form_arg, "--form"), "form"));
    };
  });
  auto* qf_cls = qf->add_subcommand("classify", "Orbits under Aut(G)");
  qf_cls->add_option("--group", group_arg, "Group JSON or @file")->required();
  qf_cls->add_option("--kind", kind, "weak, quadratic, wsqf or wrqf")->check(CLI::IsMember(kinds));
  qf_cls->callback([&] {
    action = [&](const Bounds& b) {
      return detail::qf_classify(io::group_from_json(detail::load_json(group_arg, "--group"), "group"), kind, b);
    };
  });
  auto* qf_chk = qf->add_subcommand("check", "Test the defining conditions of a form");
  qf_chk->add_option("--form", form_arg, "Form JSON or @file")->required();
  qf_chk->add_option("--symmetric-wrt", wrt_arg, "Element JSON g0");
  qf_chk->callback([&] {
    action = [&](const Bounds&) {
      WeakQuadraticForm q = io::form_from_json(detail::load_json(form_arg, "--form"), "form");
      std::optional<int> g0;
      if (!wrt_arg.empty())
        g0 = io::element_from_json(q.group, detail::load_json(wrt_arg, "--symmetric-wrt"), "symmetric-wrt");
      return detail::qf_check(q, g0);
    };
  });

  auto* co = app.add_subcommand("cocycle", "Abelian 3-cocycles");
  co->require_subcommand(1);
  auto* co_chk = co->add_subcommand("check", "Normalization, pentagon and hexagons");
  co_chk->add_option("--cocycle", cocycle_arg, "Cocycle JSON or @file")->required();
  co_chk->callback([&] {
    action = [&](const Bounds&) {
      return detail::cocycle_check(io::cocycle_from_json(detail::load_json(cocycle_arg, "--cocycle"), "cocycle"));
    };
  });
  auto* co_q = co->add_subcommand("from-qform", "Solve for a cocycle with Omega(g, g) = q(g)");
  co_q->add_option("--form", form_arg, "Form JSON or @file")->required();
  co_q->callback([&] {
    action = [&](const Bounds& b) {
      return detail::cocycle_from_qform_cmd(io::form_from_json(detail::load_json(form_arg, "--form"), "form"), b);
    };
  });

  auto* rb = app.add_subcommand("ribbon", "Skeletal ribbon structures");
  rb->require_subcommand(1);
  auto* rb_build = rb->add_subcommand("build", "Structure from a WRQF datum");
  rb_build->add_option("--datum", datum_arg, "WRQF datum JSON or @file")->required();
  rb_build->callback([&] {
    action = [&](const Bounds& b) {
      return detail::ribbon_build(io::wrqf_from_json(detail::load_json(datum_arg, "--datum"), "datum"), b);
    };
  });
  auto* rb_chk = rb->add_subcommand("check", "Axiom checks on a structure");
  rb_chk->add_option("--structure", structure_arg, "Structure JSON or @file")->required();
  rb_chk->callback([&] {
    action = [&](const Bounds&) {
      return detail::ribbon_check(
          io::structure_from_json(detail::load_json(structure_arg, "--structure"), "structure"));
    };
  });
  auto* rb_enum = rb->add_subcommand("enumerate", "Structures built from every WRQF datum");
  rb_enum->add_option("--group", group_arg, "Group JSON or @file")->required();
  rb_enum->add_flag("--classes", with_classes, "Also partition into equivalence classes");
  rb_enum->callback([&] {
    action = [&](const Bounds& b) {
      return detail::ribbon_enumerate(io::group_from_json(detail::load_json(group_arg, "--group"), "group"),
                                      with_classes, b);
    };
  });
  auto* rb_eq = rb->add_subcommand("equivalent", "Search for an equivalence witness");
  rb_eq->add_option("--first", structure_arg, "Structure JSON or @file")->required();
  rb_eq->add_option("--second", second_arg, "Structure JSON or @file")->required();
  rb_eq->callback([&] {
    action = [&](const Bounds& b) {
      return detail::ribbon_equivalent(
          io::structure_from_json(detail::load_json(structure_arg, "--first"), "first"),
          io::structure_from_json(detail::load_json(second_arg, "--second"), "second"), b);
    };
  });

  auto* gv = app.add_subcommand("gvect", "G-graded vector spaces");
  gv->require_subcommand(1);
  auto* gv_ver = gv->add_subcommand("verify", "Graded identities over all spaces with bounded dims");
  gv_ver->add_option("--group", group_arg, "Group JSON or @file")->required();
  gv_ver->add_option("--seed", seed, "Seed for the random maps");
  gv_ver->add_option("--max-dim", max_dim, "Largest dimension per degree")->check(CLI::Range(0, 8));
  gv_ver->callback([&] {
    action = [&](const Bounds&) {
      return detail::gvect_verify(io::group_from_json(detail::load_json(group_arg, "--group"), "group"), seed,
                                  max_dim);
    };
  });

  auto* ch = app.add_subcommand("chu", "Chu pairs");
  ch->require_subcommand(1);
  auto* ch_ver = ch->add_subcommand("verify", "Identities on seeded random valid pairs");
  ch_ver->add_option("--seed", seed, "Seed for the random pairs");
  ch_ver->add_option("--max-dim", max_dim, "Largest pair dimension")->check(CLI::Range(1, 4));
  ch_ver->add_option("--trials", trials, "Number of random triples")->check(CLI::Range(1, 10000));
  ch_ver->callback([&] { action = [&](const Bounds&) { return detail::chu_verify(seed, max_dim, trials); }; });

  auto* pr = app.add_subcommand("prof", "Profunctors over finite categories");
  pr->require_subcommand(1);
  auto* pr_demo = pr->add_subcommand("demo", "Coend, end and adjunction checks on a category");
  pr_demo->add_option("--category", category_arg, "z2, chain3, three, or category JSON or @file")->required();
  pr_demo->callback([&] { action = [&](const Bounds&) { return detail::prof_demo(detail::named_category(category_arg)); }; });

  Outcome result;
  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
    result = action(Bounds::from_env());
  } catch (const CLI::CallForHelp&) {
    return {0, Json{{"help", detail::deepest_parsed(&app)->help()}}};
  } catch (const CLI::CallForAllHelp&) {
    return {0, Json{{"help", app.help("", CLI::AppFormatMode::All)}}};
  } catch (const CLI::ParseError& e) {
    return {2, detail::error_json("usage", e.what())};
  } catch (const ParseError& e) {
    return {2, detail::error_json("parse", e.what())};
  } catch (const BoundExceeded& e) {
    return {2, detail::error_json("bound", e.what())};
  } catch (const GroupMismatch& e) {
    return {2, detail::error_json("mismatch", e.what())};
  } catch (const DimensionMismatch& e) {
    return {2, detail::error_json("mismatch", e.what())};
  } catch (const CategoryMismatch& e) {
    return {2, detail::error_json("mismatch", e.what())};
  } catch (const UsageError& e) {
    return {2, detail::error_json("usage", e.what())};
  } catch (const IoError& e) {
    return {2, detail::error_json("io", e.what())};
  } catch (const InvariantViolation& e) {
    return {1, detail::error_json("invariant", e.what())};
  } catch (const InternalError& e) {
    return {1, detail::error_json("internal", e.what())};
  } catch (const std::invalid_argument& e) {
    return {2, detail::error_json("usage", e.what())};
  }
  if (!output.empty()) {
    std::ofstream out(output);
    if (!out || !(out << result.body.dump(2) << '\n'))
      return {2, detail::error_json("io", "--output: cannot write " + output)};
  }
  return result;
}

/// Writes the JSON result to out and returns the exit code.
inline int run(const std::vector<std::string>& args, std::ostream& out) {
  Outcome r = execute(args);
  out << r.body.dump(2) << '\n';
  return r.code;
}

}  // namespace staraut::cli
