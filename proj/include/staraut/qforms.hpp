#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "staraut/error.hpp"
#include "staraut/exact/root_of_unity.hpp"
#include "staraut/groups.hpp"

namespace staraut {

/// Default bound on |G| for form enumeration.
inline constexpr int kDefaultFormBound = 16;

using RootTable = std::vector<RootOfUnity>;

/// A map G -> roots of unity stored as its total value table. Whether the
/// table is a weak quadratic form (or a quadratic form) is decided by
/// is_weak_qform / is_qform; the table itself is the source of truth.
struct WeakQuadraticForm {
  FinAbGroup group;
  RootTable values;

  WeakQuadraticForm() = default;
  WeakQuadraticForm(FinAbGroup g, RootTable v) : group(std::move(g)), values(std::move(v)) {
    if (static_cast<int>(values.size()) != group.order()) throw GroupMismatch("form table size does not match |G|");
  }
  static WeakQuadraticForm trivial(const FinAbGroup& G) { return {G, RootTable(G.order())}; }
  static WeakQuadraticForm from_character(const Character& chi) { return {chi.group(), chi.table()}; }

  const RootOfUnity& operator()(int g) const { return values[g]; }

  WeakQuadraticForm operator*(const WeakQuadraticForm& o) const {
    require_same_group(group, o.group, "form product");
    RootTable t(values.size());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = values[i] * o.values[i];
    return {group, std::move(t)};
  }
  WeakQuadraticForm operator*(const Character& chi) const { return *this * from_character(chi); }

  friend bool operator==(const WeakQuadraticForm& a, const WeakQuadraticForm& b) {
    return a.group == b.group && a.values == b.values;
  }
};

/// Same representation; is_qform additionally demands q(g) = q(-g).
using QuadraticForm = WeakQuadraticForm;

/// Map G x G -> roots of unity, table indexed by a * |G| + b.
struct BiHom {
  FinAbGroup group;
  RootTable table;

  const RootOfUnity& operator()(int a, int b) const { return table[a * group.order() + b]; }
  friend bool operator==(const BiHom& a, const BiHom& b) { return a.group == b.group && a.table == b.table; }
};

/// beta_q(a, b) = q(a + b) q(a)^-1 q(b)^-1, without any validity check.
inline BiHom defect(const WeakQuadraticForm& q) {
  const auto& G = q.group;
  BiHom b{G, RootTable(static_cast<std::size_t>(G.order()) * G.order())};
  for (int x = 0; x < G.order(); ++x)
    for (int y = 0; y < G.order(); ++y) b.table[x * G.order() + y] = q(G.add(x, y)) / (q(x) * q(y));
  return b;
}

struct BilinearityFailure {
  int slot;  // 1 for b(x + y, z), 2 for b(z, x + y)
  int x, y, z;
};

/// First (x, y, z) in table order where b is not additive in one slot.
inline std::optional<BilinearityFailure> first_bilinearity_failure(const BiHom& b) {
  const auto& G = b.group;
  const int n = G.order();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      for (int z = 0; z < n; ++z) {
        if (b(G.add(x, y), z) != b(x, z) * b(y, z)) return BilinearityFailure{1, x, y, z};
        if (b(z, G.add(x, y)) != b(z, x) * b(z, y)) return BilinearityFailure{2, x, y, z};
      }
  return std::nullopt;
}

/// Exhaustive bilinearity check in both arguments.
inline bool is_bihomomorphism(const BiHom& b) { return !first_bilinearity_failure(b).has_value(); }

inline BiHom assoc_bihom(const WeakQuadraticForm& q) {
  BiHom b = defect(q);
  if (!is_bihomomorphism(b)) throw InvariantViolation("assoc_bihom: beta_q is not bilinear");
  return b;
}

inline bool is_weak_qform(const WeakQuadraticForm& q) { return is_bihomomorphism(defect(q)); }

/// First g with q(g) != q(g0 - g).
inline std::optional<int> first_symmetry_failure(const WeakQuadraticForm& q, int g0) {
  const auto& G = q.group;
  for (int g = 0; g < G.order(); ++g)
    if (q(g) != q(G.add(G.neg(g), g0))) return g;
  return std::nullopt;
}

inline bool is_symmetric_wrt(const WeakQuadraticForm& q, int g0) { return !first_symmetry_failure(q, g0).has_value(); }

inline bool is_qform(const WeakQuadraticForm& q) { return is_symmetric_wrt(q, q.group.zero()) && is_weak_qform(q); }

/// (f*q)(g) = q(f(g)).
inline WeakQuadraticForm pullback(const WeakQuadraticForm& q, const GroupAutomorphism& f) {
  require_same_group(q.group, f.group(), "pullback");
  RootTable t(q.values.size());
  for (int g = 0; g < q.group.order(); ++g) t[g] = q(f(g));
  return {q.group, std::move(t)};
}

namespace detail {

inline std::int64_t binom2(std::int64_t k) { return k * (k - 1) / 2; }

/// Generator data of a weak quadratic form on a product of cyclic groups:
/// q(e_i), beta(e_i, e_i) and the cross terms beta(e_i, e_j), i < j.
struct GeneratorData {
  std::vector<RootOfUnity> c;                // q(e_i)
  std::vector<RootOfUnity> b;                // beta(e_i, e_i)
  std::vector<std::vector<RootOfUnity>> x;   // beta(e_i, e_j), i < j
};

/// q(k_1..k_r) = prod_i q_i(k_i) prod_{i<j} beta(k_i e_i, k_j e_j), with
/// q_i(k) = q(e_i)^k beta(e_i,e_i)^(k choose 2).
inline WeakQuadraticForm table_from_generators(const FinAbGroup& G, const GeneratorData& d) {
  RootTable t(G.order());
  for (int g = 0; g < G.order(); ++g) {
    const auto& k = G.element(g).residues;
    RootOfUnity v;
    for (int i = 0; i < G.rank(); ++i) v *= d.c[i].pow(k[i]) * d.b[i].pow(binom2(k[i]));
    for (int i = 0; i < G.rank(); ++i)
      for (int j = i + 1; j < G.rank(); ++j) v *= d.x[i][j].pow(static_cast<std::int64_t>(k[i]) * k[j]);
    t[g] = v;
  }
  return {G, std::move(t)};
}

inline bool lex_less(const RootTable& a, const RootTable& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace detail

/// All weak quadratic forms on G, sorted by value table.
///
/// Parameterized by q(e_i) in mu_{n_i^2}, beta(e_i,e_i) in mu_{n_i} and
/// beta(e_i,e_j) in mu_{gcd(n_i,n_j)}, subject to the cyclic constraint
/// q(e_i)^{n_i} beta(e_i,e_i)^{n_i(n_i-1)/2} = 1. Each candidate table is
/// rebuilt by the product formula and re-verified.
inline std::vector<WeakQuadraticForm> enumerate_wqf(const FinAbGroup& G, int bound = kDefaultFormBound) {
  if (G.order() > bound)
    throw BoundExceeded("enumerate_wqf: |G| = " + std::to_string(G.order()) + " exceeds bound " +
                        std::to_string(bound));
  const int r = G.rank();
  const auto& ns = G.cyclic_orders();

  // Per-factor admissible (C, B) pairs.
  std::vector<std::vector<std::pair<RootOfUnity, RootOfUnity>>> diag(r);
  for (int i = 0; i < r; ++i) {
    const std::int64_t n = ns[i];
    for (std::int64_t bn = 0; bn < n; ++bn) {
      RootOfUnity B = RootOfUnity::from_fraction(bn, n);
      for (std::int64_t cn = 0; cn < n * n; ++cn) {
        RootOfUnity C = RootOfUnity::from_fraction(cn, n * n);
        if ((C.pow(n) * B.pow(detail::binom2(n))).is_one()) diag[i].emplace_back(C, B);
      }
    }
  }
  std::vector<std::pair<int, int>> cross;
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) cross.emplace_back(i, j);

  std::vector<std::size_t> dpick(r, 0);
  std::vector<int> xpick(cross.size(), 0);
  std::vector<WeakQuadraticForm> out;
  detail::GeneratorData data;
  data.c.resize(r);
  data.b.resize(r);
  data.x.assign(r, std::vector<RootOfUnity>(r));

  // Odometer over diagonal choices then cross terms.
  const int slots = r + static_cast<int>(cross.size());
  auto slot_size = [&](int s) -> int {
    if (s < r) return static_cast<int>(diag[s].size());
    auto [i, j] = cross[s - r];
    return std::gcd(ns[i], ns[j]);
  };
  std::vector<int> pick(slots, 0);
  while (true) {
    for (int i = 0; i < r; ++i) {
      data.c[i] = diag[i][pick[i]].first;
      data.b[i] = diag[i][pick[i]].second;
    }
    for (std::size_t s = 0; s < cross.size(); ++s) {
      auto [i, j] = cross[s];
      data.x[i][j] = RootOfUnity::from_fraction(pick[r + s], std::gcd(ns[i], ns[j]));
    }
    WeakQuadraticForm q = detail::table_from_generators(G, data);
    if (!is_weak_qform(q)) throw InternalError("enumerate_wqf: generated table is not a weak quadratic form");
    out.push_back(std::move(q));
    int s = slots - 1;
    while (s >= 0 && ++pick[s] == slot_size(s)) pick[s--] = 0;
    if (s < 0) break;
  }
  std::sort(out.begin(), out.end(),
            [](const WeakQuadraticForm& a, const WeakQuadraticForm& b) { return detail::lex_less(a.values, b.values); });
  return out;
}

/// Quadratic forms on G: the symmetric members of enumerate_wqf.
inline std::vector<QuadraticForm> enumerate_qf(const FinAbGroup& G, int bound = kDefaultFormBound) {
  std::vector<QuadraticForm> out;
  for (auto& q : enumerate_wqf(G, bound))
    if (is_symmetric_wrt(q, G.zero())) out.push_back(std::move(q));
  return out;
}

struct Decomposition {
  QuadraticForm qtilde;
  Character eta;
};

/// Splits a weak quadratic form as q = qtilde * eta with qtilde symmetric
/// and beta_q = beta_qtilde.
///
/// Factorwise, with B = beta(e_i,e_i) and C = q(e_i) on Z_n:
///   n even: eta(e_i) = C B^{-1/2},  qtilde_i(k) = (B^{1/2})^k B^(k choose 2)
///   n odd:  eta(e_i) = C B^{-m},    qtilde_i(k) = (B^m)^k B^(k choose 2), 2m = n+1
/// where B^{1/2} is the principal square root and B^m is the square root of
/// B inside mu_n. Cross terms of qtilde are the
/// cross terms of beta_q.
inline Decomposition decompose(const WeakQuadraticForm& q) {
  const auto& G = q.group;
  BiHom beta = assoc_bihom(q);
  const int r = G.rank();
  const auto& ns = G.cyclic_orders();

  std::vector<RootOfUnity> eta_images(r);
  detail::GeneratorData data;
  data.c.resize(r);
  data.b.resize(r);
  data.x.assign(r, std::vector<RootOfUnity>(r));
  for (int i = 0; i < r; ++i) {
    int e = G.generator(i);
    RootOfUnity B = beta(e, e);
    RootOfUnity C = q(e);
    RootOfUnity base = ns[i] % 2 == 0 ? B.principal_sqrt() : B.pow((ns[i] + 1) / 2);
    eta_images[i] = C / base;
    data.c[i] = base;
    data.b[i] = B;
    for (int j = i + 1; j < r; ++j) data.x[i][j] = beta(e, G.generator(j));
  }
  Character eta(G, std::move(eta_images));
  QuadraticForm qt = detail::table_from_generators(G, data);
  if (!(qt * eta == q) || !is_symmetric_wrt(qt, G.zero()))
    throw InternalError("decompose: qtilde * eta does not reproduce q or qtilde is not symmetric");
  return {std::move(qt), std::move(eta)};
}

/// q(kg) = q(g)^k beta(g,g)^(k choose 2), k >= 0.
inline bool weakeq_holds(const WeakQuadraticForm& q, int g, std::int64_t k) {
  const auto& G = q.group;
  BiHom beta = defect(q);
  return q(G.times(k, g)) == q(g).pow(k) * beta(g, g).pow(detail::binom2(k));
}

/// With n = ord(g): q(ng) = 1 and, through the power formula,
/// q(g)^n beta(g,g)^(n choose 2) = 1.
inline bool weakeq2_holds(const WeakQuadraticForm& q, int g) {
  const auto& G = q.group;
  std::int64_t n = G.element_order(g);
  BiHom beta = defect(q);
  return q(G.times(n, g)).is_one() && (q(g).pow(n) * beta(g, g).pow(detail::binom2(n))).is_one();
}

/// For (q, g0) symmetric w.r.t. g0, with s = k(k-1)/2:
///   q(kg)  = q(g)^(k^2 - s) q(g + g0)^s
///   q(-kg) = q(g)^s q(g + g0)^(k^2 - s)
inline bool weakhochk_holds(const WeakQuadraticForm& q, int g0, int g, std::int64_t k) {
  const auto& G = q.group;
  std::int64_t s = detail::binom2(k);
  RootOfUnity a = q(g), b = q(G.add(g, g0));
  return q(G.times(k, g)) == a.pow(k * k - s) * b.pow(s) && q(G.times(-k, g)) == a.pow(s) * b.pow(k * k - s);
}

/// Both power identities for weak quadratic forms at (g, k).
inline bool power_identity_check(const WeakQuadraticForm& q, int g, std::int64_t k) {
  return weakeq_holds(q, g, k) && weakeq2_holds(q, g);
}

/// Adds the shifted-symmetry power identity; (q, g0) must be symmetric
/// w.r.t. g0.
inline bool power_identity_check(const WeakQuadraticForm& q, int g, std::int64_t k, int g0) {
  if (!is_symmetric_wrt(q, g0)) throw InvariantViolation("power_identity_check: q is not symmetric w.r.t. g0");
  return power_identity_check(q, g, k) && weakhochk_holds(q, g0, g, k);
}

// ---------------------------------------------------------------------------
// Shifted symmetry and representable data.

struct WSQFDatum {
  WeakQuadraticForm q;
  int g0 = 0;
  friend bool operator==(const WSQFDatum&, const WSQFDatum&) = default;
};

struct WRQFDatum {
  QuadraticForm q;
  Character eta;
  int g0 = 0;
  friend bool operator==(const WRQFDatum&, const WRQFDatum&) = default;
};

inline bool is_wsqf(const WSQFDatum& d) { return is_weak_qform(d.q) && is_symmetric_wrt(d.q, d.g0); }

/// q a quadratic form, eta(g) = beta_q(g, g0) for all g.
inline bool is_wrqf(const WRQFDatum& d) {
  const auto& G = d.q.group;
  if (!(d.eta.group() == G) || !is_qform(d.q)) return false;
  BiHom beta = defect(d.q);
  for (int g = 0; g < G.order(); ++g)
    if (d.eta(g) != beta(g, d.g0)) return false;
  return true;
}

/// (q, eta, g0) -> (q eta, -2 g0).
inline WSQFDatum wrqf_to_wsqf(const WRQFDatum& d) {
  if (!is_wrqf(d)) throw InvariantViolation("wrqf_to_wsqf: input is not a WRQF datum");
  const auto& G = d.q.group;
  WSQFDatum out{d.q * d.eta, G.times(-2, d.g0)};
  if (!is_wsqf(out)) throw InternalError("wrqf_to_wsqf: output is not symmetric");
  return out;
}

/// (q, g0) -> (qtilde, eta, -sqrt(g0)) with q = qtilde * eta from decompose.
/// Requires odd |G| so that the square root is unique.
inline WRQFDatum wsqf_to_wrqf(const WSQFDatum& d) {
  const auto& G = d.q.group;
  if (!G.has_square_roots()) throw InvariantViolation("wsqf_to_wrqf: group has an even-order cyclic factor");
  if (!is_wsqf(d)) throw InvariantViolation("wsqf_to_wrqf: input is not a WSQF datum");
  Decomposition dec = decompose(d.q);
  int root = *square_root(G, d.g0);
  WRQFDatum out{std::move(dec.qtilde), std::move(dec.eta), G.neg(root)};
  if (!is_wrqf(out)) throw InternalError("wsqf_to_wrqf: output violates eta = beta(-, g0)");
  return out;
}

/// Every (q, g0) with q in WQF(G) symmetric w.r.t. g0; ordered by form, then g0.
inline std::vector<WSQFDatum> enumerate_wsqf(const FinAbGroup& G, int bound = kDefaultFormBound) {
  std::vector<WSQFDatum> out;
  for (const auto& q : enumerate_wqf(G, bound))
    for (int g0 = 0; g0 < G.order(); ++g0)
      if (is_symmetric_wrt(q, g0)) out.push_back({q, g0});
  return out;
}

/// Every (q, eta, g0) with q in QF(G); eta is forced to beta_q(-, g0).
inline std::vector<WRQFDatum> enumerate_wrqf(const FinAbGroup& G, int bound = kDefaultFormBound) {
  std::vector<WRQFDatum> out;
  for (const auto& q : enumerate_qf(G, bound)) {
    BiHom beta = defect(q);
    for (int g0 = 0; g0 < G.order(); ++g0) {
      RootTable t(G.order());
      for (int g = 0; g < G.order(); ++g) t[g] = beta(g, g0);
      auto eta = character_from_table(G, t);
      if (!eta) throw InternalError("enumerate_wrqf: beta(-, g0) is not a character");
      out.push_back({q, std::move(*eta), g0});
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Classification under Aut(G).

struct FormOrbit {
  WeakQuadraticForm representative;   // least table in the whole Aut(G)-orbit
  std::vector<std::size_t> members;   // indices into the input list
  std::size_t size() const { return members.size(); }
};

/// Least table among the pullbacks f*q over f in auts.
inline RootTable canonical_table(const WeakQuadraticForm& q, const std::vector<GroupAutomorphism>& auts) {
  RootTable best;
  for (const auto& f : auts) {
    RootTable t = pullback(q, f).values;
    if (best.empty() || detail::lex_less(t, best)) best = std::move(t);
  }
  return best;
}

/// Partitions forms into Aut(G)-pullback orbits, ordered by representative.
inline std::vector<FormOrbit> classify(const std::vector<WeakQuadraticForm>& forms, int aut_bound = kDefaultAutBound) {
  if (forms.empty()) return {};
  const FinAbGroup& G = forms.front().group;
  for (const auto& q : forms) require_same_group(G, q.group, "classify");
  auto auts = automorphisms(G, aut_bound);
  std::map<RootTable, FormOrbit, decltype(&detail::lex_less)> orbits(&detail::lex_less);
  for (std::size_t i = 0; i < forms.size(); ++i) {
    RootTable key = canonical_table(forms[i], auts);
    auto it = orbits.find(key);
    if (it == orbits.end()) it = orbits.emplace(key, FormOrbit{WeakQuadraticForm(G, key), {}}).first;
    it->second.members.push_back(i);
  }
  std::vector<FormOrbit> out;
  for (auto& [k, o] : orbits) out.push_back(std::move(o));
  return out;
}

/// Orbits of (table, g0) pairs under (t, g0) ~ (t o f, f^-1(g0)); used for
/// both WSQF (t = q) and WRQF (t = q eta) equivalence.
struct PointedOrbit {
  RootTable table;
  int g0 = 0;
  std::vector<std::size_t> members;
};

inline std::vector<PointedOrbit> classify_pointed(const FinAbGroup& G,
                                                  const std::vector<std::pair<RootTable, int>>& items,
                                                  int aut_bound = kDefaultAutBound) {
  auto auts = automorphisms(G, aut_bound);
  using Key = std::pair<RootTable, int>;
  auto less = [](const Key& a, const Key& b) {
    if (a.first != b.first) return detail::lex_less(a.first, b.first);
    return a.second < b.second;
  };
  std::map<Key, PointedOrbit, decltype(less)> orbits(less);
  for (std::size_t i = 0; i < items.size(); ++i) {
    std::optional<Key> best;
    for (const auto& f : auts) {
      Key k{RootTable(G.order()), f.inverse()(items[i].second)};
      for (int g = 0; g < G.order(); ++g) k.first[g] = items[i].first[f(g)];
      if (!best || less(k, *best)) best = std::move(k);
    }
    auto it = orbits.find(*best);
    if (it == orbits.end()) it = orbits.emplace(*best, PointedOrbit{best->first, best->second, {}}).first;
    it->second.members.push_back(i);
  }
  std::vector<PointedOrbit> out;
  for (auto& [k, o] : orbits) out.push_back(std::move(o));
  return out;
}

inline std::vector<PointedOrbit> classify_wsqf(const std::vector<WSQFDatum>& data, int aut_bound = kDefaultAutBound) {
  if (data.empty()) return {};
  std::vector<std::pair<RootTable, int>> items;
  for (const auto& d : data) items.emplace_back(d.q.values, d.g0);
  return classify_pointed(data.front().q.group, items, aut_bound);
}

inline std::vector<PointedOrbit> classify_wrqf(const std::vector<WRQFDatum>& data, int aut_bound = kDefaultAutBound) {
  if (data.empty()) return {};
  std::vector<std::pair<RootTable, int>> items;
  for (const auto& d : data) items.emplace_back((d.q * d.eta).values, d.g0);
  return classify_pointed(data.front().q.group, items, aut_bound);
}

}  // namespace staraut
