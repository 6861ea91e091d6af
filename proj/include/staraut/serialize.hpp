#pragma once

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "staraut/chu.hpp"
#include "staraut/cohomology.hpp"
#include "staraut/error.hpp"
#include "staraut/groups.hpp"
#include "staraut/gvect.hpp"
#include "staraut/prof.hpp"
#include "staraut/qforms.hpp"
#include "staraut/ribbon.hpp"

namespace staraut {

using Json = nlohmann::ordered_json;

/// Malformed JSON input; the message names the offending field.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Largest group order accepted from JSON input.
inline constexpr std::int64_t kMaxParsedGroupOrder = 4096;

namespace io {

inline const Json& field(const Json& j, const std::string& name, const std::string& path) {
  if (!j.is_object()) throw ParseError(path + ": expected an object");
  auto it = j.find(name);
  if (it == j.end()) throw ParseError(path + "." + name + ": missing field");
  return *it;
}

inline std::int64_t get_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ParseError(path + ": expected an integer");
  return j.get<std::int64_t>();
}

inline const Json& get_array(const Json& j, const std::string& path) {
  if (!j.is_array()) throw ParseError(path + ": expected an array");
  return j;
}

// RootOfUnity: {"num": a, "den": N}, reduced.
inline Json to_json(const RootOfUnity& z) { return Json{{"num", z.num()}, {"den", z.den()}}; }

inline RootOfUnity root_from_json(const Json& j, const std::string& path) {
  std::int64_t num = get_int(field(j, "num", path), path + ".num");
  std::int64_t den = get_int(field(j, "den", path), path + ".den");
  if (den <= 0) throw ParseError(path + ".den: must be positive");
  return RootOfUnity::from_fraction(num, den);
}

// RationalMatrix: {"rows": r, "cols": c, "entries": [["p/q", ...], ...]}.
inline Json to_json(const RationalMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(rational_to_string(m(i, j)));
    rows.push_back(std::move(row));
  }
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(rows)}};
}

inline RationalMatrix matrix_from_json(const Json& j, const std::string& path) {
  std::int64_t r = get_int(field(j, "rows", path), path + ".rows");
  std::int64_t c = get_int(field(j, "cols", path), path + ".cols");
  if (r < 0 || c < 0) throw ParseError(path + ": negative shape");
  const Json& e = get_array(field(j, "entries", path), path + ".entries");
  if (static_cast<std::int64_t>(e.size()) != r) throw ParseError(path + ".entries: expected " + std::to_string(r) + " rows");
  RationalMatrix m(r, c);
  for (std::int64_t i = 0; i < r; ++i) {
    std::string rp = path + ".entries[" + std::to_string(i) + "]";
    const Json& row = get_array(e[i], rp);
    if (static_cast<std::int64_t>(row.size()) != c) throw ParseError(rp + ": expected " + std::to_string(c) + " entries");
    for (std::int64_t k = 0; k < c; ++k) {
      std::string ep = rp + "[" + std::to_string(k) + "]";
      if (row[k].is_number_integer()) {
        m(i, k) = Rational(row[k].get<long>());
      } else if (row[k].is_string()) {
        try {
          m(i, k) = rational_from_string(row[k].get<std::string>());
        } catch (const std::invalid_argument&) {
          throw ParseError(ep + ": not a rational");
        }
      } else {
        throw ParseError(ep + ": expected a rational string");
      }
    }
  }
  return m;
}

// Group: {"cyclic_orders": [n1, ...]}; element: [k1, ...].
inline Json to_json(const FinAbGroup& G) { return Json{{"cyclic_orders", G.cyclic_orders()}}; }

inline FinAbGroup group_from_json(const Json& j, const std::string& path) {
  const Json& o = get_array(field(j, "cyclic_orders", path), path + ".cyclic_orders");
  std::vector<int> orders;
  std::int64_t order = 1;
  for (std::size_t i = 0; i < o.size(); ++i) {
    std::int64_t n = get_int(o[i], path + ".cyclic_orders[" + std::to_string(i) + "]");
    if (n < 2 || n > 1000000) throw ParseError(path + ".cyclic_orders[" + std::to_string(i) + "]: must be in [2, 10^6]");
    orders.push_back(static_cast<int>(n));
    order *= n;
    if (order > kMaxParsedGroupOrder) throw ParseError(path + ": group order exceeds " + std::to_string(kMaxParsedGroupOrder));
  }
  return FinAbGroup(orders);
}

inline Json element_json(const FinAbGroup& G, int g) { return Json(G.element(g).residues); }

inline int element_from_json(const FinAbGroup& G, const Json& j, const std::string& path) {
  const Json& a = get_array(j, path);
  if (static_cast<int>(a.size()) != G.rank()) throw ParseError(path + ": expected " + std::to_string(G.rank()) + " residues");
  std::vector<int> r;
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::int64_t k = get_int(a[i], path + "[" + std::to_string(i) + "]");
    std::int64_t n = G.cyclic_orders()[i];
    r.push_back(static_cast<int>(((k % n) + n) % n));
  }
  return G.index(r);
}

// Character: {"images": [RootOfUnity, ...]} on the standard generators.
inline Json to_json(const Character& c) {
  Json a = Json::array();
  for (const auto& z : c.generator_images()) a.push_back(to_json(z));
  return Json{{"images", std::move(a)}};
}

inline Character character_from_json(const FinAbGroup& G, const Json& j, const std::string& path) {
  const Json& a = get_array(field(j, "images", path), path + ".images");
  std::vector<RootOfUnity> imgs;
  for (std::size_t i = 0; i < a.size(); ++i) imgs.push_back(root_from_json(a[i], path + ".images[" + std::to_string(i) + "]"));
  if (static_cast<int>(imgs.size()) != G.rank()) throw ParseError(path + ".images: expected " + std::to_string(G.rank()) + " images");
  try {
    return Character(G, imgs);
  } catch (const InvariantViolation& e) {
    throw ParseError(path + ".images: " + e.what());
  }
}

inline Json table_json(const FinAbGroup& G, const RootTable& t) {
  Json a = Json::array();
  for (int g = 0; g < G.order(); ++g) a.push_back(Json::array({element_json(G, g), to_json(t[g])}));
  return a;
}

inline RootTable table_from_json(const FinAbGroup& G, const Json& j, const std::string& path) {
  const Json& a = get_array(j, path);
  RootTable t(G.order());
  std::vector<bool> seen(G.order(), false);
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::string p = path + "[" + std::to_string(i) + "]";
    const Json& e = get_array(a[i], p);
    if (e.size() != 2) throw ParseError(p + ": expected [element, root]");
    int g = element_from_json(G, e[0], p + "[0]");
    if (seen[g]) throw ParseError(p + ": duplicate element");
    seen[g] = true;
    t[g] = root_from_json(e[1], p + "[1]");
  }
  for (int g = 0; g < G.order(); ++g)
    if (!seen[g]) throw ParseError(path + ": table is not total");
  return t;
}

// Form: {"group": ..., "values": [[element, RootOfUnity], ...]} in element order.
inline Json to_json(const WeakQuadraticForm& q) {
  return Json{{"group", to_json(q.group)}, {"values", table_json(q.group, q.values)}};
}

inline WeakQuadraticForm form_from_json(const Json& j, const std::string& path) {
  FinAbGroup G = group_from_json(field(j, "group", path), path + ".group");
  return WeakQuadraticForm(G, table_from_json(G, field(j, "values", path), path + ".values"));
}

inline Json to_json(const WSQFDatum& d) {
  return Json{{"form", to_json(d.q)}, {"g0", element_json(d.q.group, d.g0)}};
}

inline Json to_json(const WRQFDatum& d) {
  return Json{{"form", to_json(d.q)}, {"eta", to_json(d.eta)}, {"g0", element_json(d.q.group, d.g0)}};
}

inline WRQFDatum wrqf_from_json(const Json& j, const std::string& path) {
  WeakQuadraticForm q = form_from_json(field(j, "form", path), path + ".form");
  Character eta = character_from_json(q.group, field(j, "eta", path), path + ".eta");
  int g0 = element_from_json(q.group, field(j, "g0", path), path + ".g0");
  return {std::move(q), std::move(eta), g0};
}

inline Json orbits_json(const std::vector<FormOrbit>& orbits) {
  Json a = Json::array();
  for (const auto& o : orbits) a.push_back(Json{{"representative", to_json(o.representative)}, {"size", o.size()}});
  return Json{{"orbits", std::move(a)}};
}

inline Json orbits_json(const FinAbGroup& G, const std::vector<PointedOrbit>& orbits) {
  Json a = Json::array();
  for (const auto& o : orbits)
    a.push_back(Json{{"representative", Json{{"form", to_json(WeakQuadraticForm(G, o.table))}, {"g0", element_json(G, o.g0)}}},
                     {"size", o.members.size()}});
  return Json{{"orbits", std::move(a)}};
}

// Cochains as total sorted tables [[g1, ..., gk, RootOfUnity], ...].
inline Json cochain_json(const Cochain& c) {
  Json a = Json::array();
  for (std::size_t i = 0; i < c.table.size(); ++i) {
    Json row = Json::array();
    for (int g : c.args(i)) row.push_back(element_json(c.group, g));
    row.push_back(to_json(c.table[i]));
    a.push_back(std::move(row));
  }
  return a;
}

inline Cochain cochain_from_json(const FinAbGroup& G, int arity, const Json& j, const std::string& path) {
  const Json& a = get_array(j, path);
  Cochain c = Cochain::trivial(G, arity);
  std::vector<bool> seen(c.table.size(), false);
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::string p = path + "[" + std::to_string(i) + "]";
    const Json& row = get_array(a[i], p);
    if (static_cast<int>(row.size()) != arity + 1) throw ParseError(p + ": expected " + std::to_string(arity) + " elements and a root");
    std::vector<int> args;
    for (int k = 0; k < arity; ++k) args.push_back(element_from_json(G, row[k], p + "[" + std::to_string(k) + "]"));
    std::size_t idx = c.index(args);
    if (seen[idx]) throw ParseError(p + ": duplicate entry");
    seen[idx] = true;
    c.table[idx] = root_from_json(row[arity], p + "[" + std::to_string(arity) + "]");
  }
  for (bool s : seen)
    if (!s) throw ParseError(path + ": table is not total");
  return c;
}

// Cocycle: {"group": ..., "psi": [...], "omega": [...]}.
inline Json to_json(const AbelianCocycle3& c) {
  return Json{{"group", to_json(c.group())}, {"psi", cochain_json(c.psi)}, {"omega", cochain_json(c.omega)}};
}

inline AbelianCocycle3 cocycle_from_json(const Json& j, const std::string& path) {
  FinAbGroup G = group_from_json(field(j, "group", path), path + ".group");
  return {cochain_from_json(G, 3, field(j, "psi", path), path + ".psi"),
          cochain_from_json(G, 2, field(j, "omega", path), path + ".omega")};
}

// Structure: {"group", "psi", "omega", "theta": [[g, RootOfUnity], ...], "g0"}.
inline Json to_json(const SkeletalStructure& s) {
  return Json{{"group", to_json(s.group)},
              {"psi", cochain_json(s.psi)},
              {"omega", cochain_json(s.omega)},
              {"theta", table_json(s.group, s.theta)},
              {"g0", element_json(s.group, s.g0)}};
}

inline SkeletalStructure structure_from_json(const Json& j, const std::string& path) {
  FinAbGroup G = group_from_json(field(j, "group", path), path + ".group");
  return {G, cochain_from_json(G, 3, field(j, "psi", path), path + ".psi"),
          cochain_from_json(G, 2, field(j, "omega", path), path + ".omega"),
          table_from_json(G, field(j, "theta", path), path + ".theta"),
          element_from_json(G, field(j, "g0", path), path + ".g0")};
}

inline Json to_json(const AxiomReport& r) {
  return Json{{"pentagon", r.pentagon}, {"triangle", r.triangle}, {"hexagons", r.hexagons}, {"twist", r.twist},
              {"ribbon", r.ribbon}};
}

inline Json to_json(const GroupAutomorphism& f) {
  Json a = Json::array();
  for (int g : f.generator_images()) a.push_back(element_json(f.group(), g));
  return Json{{"generator_images", std::move(a)}};
}

// GradedSpace: {"group", "dims": [[element, d], ...]}; GradedMap: {"degree", "blocks": [[element, matrix], ...]}.
inline Json to_json(const GradedSpace& V) {
  Json a = Json::array();
  for (int g = 0; g < V.group.order(); ++g) a.push_back(Json::array({element_json(V.group, g), V.dim(g)}));
  return Json{{"group", to_json(V.group)}, {"dims", std::move(a)}};
}

inline Json to_json(const GradedMap& f) {
  const auto& G = f.group();
  Json a = Json::array();
  for (int g = 0; g < G.order(); ++g) a.push_back(Json::array({element_json(G, g), to_json(f.blocks[g])}));
  return Json{{"degree", element_json(G, f.degree)}, {"blocks", std::move(a)}};
}

// Chu pair: {"dimV", "dimW", "pairing"}.
inline Json to_json(const ChuPair& p) {
  return Json{{"dimV", p.dim_v}, {"dimW", p.dim_w}, {"pairing", to_json(p.pairing)}};
}

inline ChuPair chu_pair_from_json(const Json& j, const std::string& path) {
  std::int64_t a = get_int(field(j, "dimV", path), path + ".dimV");
  std::int64_t b = get_int(field(j, "dimW", path), path + ".dimW");
  RationalMatrix m = matrix_from_json(field(j, "pairing", path), path + ".pairing");
  if (static_cast<std::int64_t>(m.rows()) != a || static_cast<std::int64_t>(m.cols()) != b)
    throw ParseError(path + ".pairing: shape does not match dimV x dimW");
  return ChuPair(std::move(m));
}

// Category: {"objects": [...], "homs": {"(a,b)": [labels]}, "comp": [[g, f, g o f], ...], "ids": {object: label}}.
inline Json to_json(const FinCategory& c) {
  Json homs = Json::object();
  std::vector<int> order;
  for (int a = 0; a < c.num_objects(); ++a)
    for (int b = 0; b < c.num_objects(); ++b) {
      Json ls = Json::array();
      for (int f : c.hom(a, b)) {
        ls.push_back(c.labels[f]);
        order.push_back(f);
      }
      homs["(" + c.objects[a] + "," + c.objects[b] + ")"] = std::move(ls);
    }
  Json comp = Json::array();
  for (int g : order)
    for (int f : order)
      if (c.comp[g][f] >= 0) comp.push_back(Json::array({c.labels[g], c.labels[f], c.labels[c.comp[g][f]]}));
  Json ids = Json::object();
  for (int a = 0; a < c.num_objects(); ++a) ids[c.objects[a]] = c.labels[c.ids[a]];
  return Json{{"objects", c.objects}, {"homs", std::move(homs)}, {"comp", std::move(comp)}, {"ids", std::move(ids)}};
}

inline FinCategory category_from_json(const Json& j, const std::string& path) {
  const Json& obs = get_array(field(j, "objects", path), path + ".objects");
  std::vector<std::string> objects;
  std::map<std::string, int> obj_index;
  for (std::size_t i = 0; i < obs.size(); ++i) {
    if (!obs[i].is_string()) throw ParseError(path + ".objects[" + std::to_string(i) + "]: expected a string");
    if (!obj_index.emplace(obs[i].get<std::string>(), static_cast<int>(i)).second)
      throw ParseError(path + ".objects: duplicate object " + obs[i].get<std::string>());
    objects.push_back(obs[i].get<std::string>());
  }
  const Json& homs = field(j, "homs", path);
  if (!homs.is_object()) throw ParseError(path + ".homs: expected an object");
  std::vector<MorphismSpec> ms;
  std::map<std::string, int> mor_index;
  for (int a = 0; a < static_cast<int>(objects.size()); ++a)
    for (int b = 0; b < static_cast<int>(objects.size()); ++b) {
      std::string key = "(" + objects[a] + "," + objects[b] + ")";
      auto it = homs.find(key);
      if (it == homs.end()) continue;
      std::string p = path + ".homs." + key;
      const Json& ls = get_array(*it, p);
      for (const auto& l : ls) {
        if (!l.is_string()) throw ParseError(p + ": expected string labels");
        if (!mor_index.emplace(l.get<std::string>(), static_cast<int>(ms.size())).second)
          throw ParseError(p + ": duplicate morphism label " + l.get<std::string>());
        ms.push_back({l.get<std::string>(), a, b});
      }
    }
  for (auto it = homs.begin(); it != homs.end(); ++it) {
    bool known = false;
    for (const auto& a : objects)
      for (const auto& b : objects) known = known || it.key() == "(" + a + "," + b + ")";
    if (!known) throw ParseError(path + ".homs." + it.key() + ": unknown object pair");
  }
  auto lookup = [&](const Json& l, const std::string& p) {
    if (!l.is_string()) throw ParseError(p + ": expected a morphism label");
    auto it = mor_index.find(l.get<std::string>());
    if (it == mor_index.end()) throw ParseError(p + ": unknown morphism " + l.get<std::string>());
    return it->second;
  };
  const Json& idj = field(j, "ids", path);
  std::vector<int> ids;
  for (const auto& o : objects) ids.push_back(lookup(field(idj, o, path + ".ids"), path + ".ids." + o));
  const int n = static_cast<int>(ms.size());
  std::vector<std::vector<int>> table(n, std::vector<int>(n, -1));
  const Json& comp = get_array(field(j, "comp", path), path + ".comp");
  for (std::size_t i = 0; i < comp.size(); ++i) {
    std::string p = path + ".comp[" + std::to_string(i) + "]";
    const Json& row = get_array(comp[i], p);
    if (row.size() != 3) throw ParseError(p + ": expected [g, f, g o f]");
    table[lookup(row[0], p + "[0]")][lookup(row[1], p + "[1]")] = lookup(row[2], p + "[2]");
  }
  auto compose_fn = [&](int g, int f) {
    if (f == ids[ms[f].dst] || g == ids[ms[g].src]) {
      if (table[g][f] < 0) return f == ids[ms[f].dst] ? g : f;
    }
    if (table[g][f] < 0) throw ParseError(path + ".comp: missing " + ms[g].label + " o " + ms[f].label);
    return table[g][f];
  };
  return make_category(objects, ms, ids, compose_fn);
}

}  // namespace io
}  // namespace staraut
