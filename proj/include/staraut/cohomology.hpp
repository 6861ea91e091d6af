#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "staraut/error.hpp"
#include "staraut/exact/root_of_unity.hpp"
#include "staraut/exact/zmod_solver.hpp"
#include "staraut/groups.hpp"
#include "staraut/qforms.hpp"

namespace staraut {

/// Default bound on |G| for cohomologous-witness searches.
inline constexpr int kDefaultWitnessBound = 9;

/// Common denominator used by every witness search: 2 exp(G)^2.
inline std::int64_t search_denominator(const FinAbGroup& G) {
  return 2LL * G.exponent() * G.exponent();
}

/// A k-cochain G^k -> roots of unity. Entry (g_1, ..., g_k) lives at the
/// mixed-radix index ((g_1 |G| + g_2) |G| + ...) + g_k.
struct Cochain {
  FinAbGroup group;
  int arity = 0;
  RootTable table;

  Cochain() = default;
  Cochain(FinAbGroup g, int k, RootTable t) : group(std::move(g)), arity(k), table(std::move(t)) {
    if (table.size() != size_for(group, arity)) throw GroupMismatch("cochain table size does not match |G|^k");
  }
  static Cochain trivial(const FinAbGroup& G, int k) { return {G, k, RootTable(size_for(G, k))}; }

  static std::size_t size_for(const FinAbGroup& G, int k) {
    std::size_t s = 1;
    for (int i = 0; i < k; ++i) s *= static_cast<std::size_t>(G.order());
    return s;
  }

  std::size_t index(const std::vector<int>& args) const {
    std::size_t idx = 0;
    for (int a : args) idx = idx * group.order() + a;
    return idx;
  }
  std::vector<int> args(std::size_t idx) const {
    std::vector<int> a(arity);
    for (int i = arity - 1; i >= 0; --i) {
      a[i] = static_cast<int>(idx % group.order());
      idx /= group.order();
    }
    return a;
  }

  const RootOfUnity& operator()(const std::vector<int>& a) const { return table[index(a)]; }
  const RootOfUnity& operator()(int a, int b) const { return table[static_cast<std::size_t>(a) * group.order() + b]; }
  const RootOfUnity& operator()(int a, int b, int c) const {
    return table[(static_cast<std::size_t>(a) * group.order() + b) * group.order() + c];
  }

  bool is_trivial() const {
    for (const auto& v : table)
      if (!v.is_one()) return false;
    return true;
  }

  Cochain operator*(const Cochain& o) const {
    require_same_group(group, o.group, "cochain product");
    if (arity != o.arity) throw DimensionMismatch("cochain product: arity mismatch");
    RootTable t(table.size());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = table[i] * o.table[i];
    return {group, arity, std::move(t)};
  }
  Cochain inverse() const {
    RootTable t(table.size());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = table[i].inverse();
    return {group, arity, std::move(t)};
  }

  friend bool operator==(const Cochain& a, const Cochain& b) {
    return a.group == b.group && a.arity == b.arity && a.table == b.table;
  }
};

/// Value 1 whenever some argument is 0.
inline bool is_normalized(const Cochain& c) {
  for (std::size_t i = 0; i < c.table.size(); ++i) {
    auto a = c.args(i);
    for (int x : a)
      if (x == 0 && !c.table[i].is_one()) return false;
  }
  return true;
}

/// (f*c)(g_1, ..., g_k) = c(f g_1, ..., f g_k).
inline Cochain pullback(const Cochain& c, const GroupAutomorphism& f) {
  require_same_group(c.group, f.group(), "cochain pullback");
  RootTable t(c.table.size());
  for (std::size_t i = 0; i < t.size(); ++i) {
    auto a = c.args(i);
    for (int& x : a) x = f(x);
    t[i] = c(a);
  }
  return {c.group, c.arity, std::move(t)};
}

/// dk(g_1..g_{k+1}) = k(g_2..g_{k+1}) prod_{i=1..k} k(.., g_i + g_{i+1}, ..)^{(-1)^i}
///                   k(g_1..g_k)^{(-1)^{k+1}}
inline Cochain coboundary(const Cochain& c) {
  const auto& G = c.group;
  const int k = c.arity;
  if (k < 1 || k > 3) throw std::invalid_argument("coboundary: arity must be 1, 2 or 3");
  Cochain out = Cochain::trivial(G, k + 1);
  std::vector<int> sub(k);
  for (std::size_t idx = 0; idx < out.table.size(); ++idx) {
    auto g = out.args(idx);
    RootOfUnity v = c(std::vector<int>(g.begin() + 1, g.end()));
    for (int i = 1; i <= k; ++i) {
      for (int j = 0, s = 0; j < k + 1; ++j, ++s) {
        if (j == i - 1) {
          sub[s] = G.add(g[j], g[j + 1]);
          ++j;
        } else {
          sub[s] = g[j];
        }
      }
      RootOfUnity t = c(sub);
      v *= i % 2 == 0 ? t : t.inverse();
    }
    RootOfUnity last = c(std::vector<int>(g.begin(), g.begin() + k));
    v *= (k + 1) % 2 == 0 ? last : last.inverse();
    out.table[idx] = v;
  }
  return out;
}

/// (psi, Omega): a normalized 3-cochain and 2-cochain.
struct AbelianCocycle3 {
  Cochain psi;
  Cochain omega;

  static AbelianCocycle3 trivial(const FinAbGroup& G) { return {Cochain::trivial(G, 3), Cochain::trivial(G, 2)}; }
  const FinAbGroup& group() const { return psi.group; }

  AbelianCocycle3 operator*(const AbelianCocycle3& o) const { return {psi * o.psi, omega * o.omega}; }
  friend bool operator==(const AbelianCocycle3& a, const AbelianCocycle3& b) {
    return a.psi == b.psi && a.omega == b.omega;
  }
};

inline AbelianCocycle3 pullback(const AbelianCocycle3& c, const GroupAutomorphism& f) {
  return {pullback(c.psi, f), pullback(c.omega, f)};
}

/// kappa_comm(a, b) = kappa(a, b) kappa(b, a)^-1.
inline Cochain commutator(const Cochain& kappa) {
  if (kappa.arity != 2) throw std::invalid_argument("commutator: expects a 2-cochain");
  const auto& G = kappa.group;
  Cochain out = Cochain::trivial(G, 2);
  for (int a = 0; a < G.order(); ++a)
    for (int b = 0; b < G.order(); ++b) out.table[a * G.order() + b] = kappa(a, b) / kappa(b, a);
  return out;
}

/// d_ab(kappa) = (d kappa, kappa_comm).
inline AbelianCocycle3 ab_coboundary(const Cochain& kappa) {
  if (kappa.arity != 2) throw std::invalid_argument("ab_coboundary: expects a 2-cochain");
  return {coboundary(kappa), commutator(kappa)};
}

inline bool check_pentagon(const Cochain& psi) { return coboundary(psi).is_trivial(); }

inline bool check_triangle(const Cochain& psi) {
  const auto& G = psi.group;
  for (int g = 0; g < G.order(); ++g)
    for (int h = 0; h < G.order(); ++h)
      if (!psi(g, 0, h).is_one()) return false;
  return true;
}

struct HexagonFailure {
  int hexagon;  // 1 or 2
  int a, b, c;
};

/// psi(g2,g3,g1)^-1 Omega(g1,g2+g3) psi(g1,g2,g3)^-1 = Omega(g1,g3) psi(g2,g1,g3)^-1 Omega(g1,g2)
/// psi(g3,g1,g2) Omega(g1+g2,g3) psi(g1,g2,g3) = Omega(g1,g3) psi(g1,g3,g2) Omega(g2,g3)
/// First failing triple in table order, or nullopt.
inline std::optional<HexagonFailure> first_hexagon_failure(const Cochain& psi, const Cochain& omega) {
  require_same_group(psi.group, omega.group, "check_hexagons");
  const auto& G = psi.group;
  const int n = G.order();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        RootOfUnity l1 = omega(a, G.add(b, c)) / (psi(b, c, a) * psi(a, b, c));
        RootOfUnity r1 = omega(a, c) * omega(a, b) / psi(b, a, c);
        if (l1 != r1) return HexagonFailure{1, a, b, c};
        RootOfUnity l2 = psi(c, a, b) * omega(G.add(a, b), c) * psi(a, b, c);
        RootOfUnity r2 = omega(a, c) * psi(a, c, b) * omega(b, c);
        if (l2 != r2) return HexagonFailure{2, a, b, c};
      }
  return std::nullopt;
}

inline bool check_hexagons(const Cochain& psi, const Cochain& omega) {
  return !first_hexagon_failure(psi, omega).has_value();
}

inline bool is_abelian_3cocycle(const Cochain& psi, const Cochain& omega) {
  if (psi.arity != 3 || omega.arity != 2) return false;
  return is_normalized(psi) && is_normalized(omega) && check_pentagon(psi) && check_hexagons(psi, omega);
}
inline bool is_abelian_3cocycle(const AbelianCocycle3& c) { return is_abelian_3cocycle(c.psi, c.omega); }

/// q(g) = Omega(g, g); the result must be a quadratic form with
/// beta_q(a, b) = Omega(a, b) Omega(b, a).
inline QuadraticForm em_qform(const AbelianCocycle3& c) {
  const auto& G = c.group();
  RootTable t(G.order());
  for (int g = 0; g < G.order(); ++g) t[g] = c.omega(g, g);
  QuadraticForm q(G, std::move(t));
  if (!is_qform(q)) throw InvariantViolation("em_qform: diagonal of Omega is not a quadratic form");
  BiHom beta = defect(q);
  for (int a = 0; a < G.order(); ++a)
    for (int b = 0; b < G.order(); ++b)
      if (beta(a, b) != c.omega(a, b) * c.omega(b, a))
        throw InvariantViolation("em_qform: beta_q differs from the symmetrized Omega");
  return q;
}

namespace detail {

/// Linear system in unknown exponents x_j / D (mod 1).
class ExponentSystem {
 public:
  explicit ExponentSystem(std::int64_t D) : D_(D) {}

  int add_var() { return num_vars_++; }

  /// Unknowns of a normalized cochain: -1 marks entries fixed to 1.
  std::vector<int> add_cochain_vars(const FinAbGroup& G, int arity) {
    Cochain shape = Cochain::trivial(G, arity);
    std::vector<int> vars(shape.table.size(), -1);
    for (std::size_t i = 0; i < vars.size(); ++i) {
      auto a = shape.args(i);
      bool has_zero = false;
      for (int x : a) has_zero = has_zero || x == 0;
      if (!has_zero) vars[i] = add_var();
    }
    return vars;
  }

  /// sum_i coeff_i x_{var_i} / D + c == 0 (mod 1). Entries with var -1 drop out.
  void add(const std::vector<std::pair<int, std::int64_t>>& terms, const RootOfUnity& c) {
    if (infeasible_) return;
    if (D_ % c.den() != 0) {
      infeasible_ = true;
      return;
    }
    CongruenceRow row;
    for (auto [v, k] : terms)
      if (v >= 0) row.terms.emplace_back(v, k);
    row.rhs = -c.numerator_over(D_);
    if (row.terms.empty()) {
      if (mod_norm(row.rhs, D_) != 0) infeasible_ = true;
      return;
    }
    rows_.push_back(std::move(row));
  }

  std::optional<std::vector<RootOfUnity>> solve() const {
    if (infeasible_) return std::nullopt;
    auto x = solve_congruences(rows_, num_vars_, D_);
    if (!x) return std::nullopt;
    std::vector<RootOfUnity> out(num_vars_);
    for (int j = 0; j < num_vars_; ++j) out[j] = RootOfUnity::from_fraction((*x)[j], D_);
    return out;
  }

  static Cochain assemble(const FinAbGroup& G, int arity, const std::vector<int>& vars,
                          const std::vector<RootOfUnity>& sol) {
    Cochain c = Cochain::trivial(G, arity);
    for (std::size_t i = 0; i < vars.size(); ++i)
      if (vars[i] >= 0) c.table[i] = sol[vars[i]];
    return c;
  }

 private:
  std::int64_t D_;
  int num_vars_ = 0;
  bool infeasible_ = false;
  std::vector<CongruenceRow> rows_;
};

inline std::size_t idx2(const FinAbGroup& G, int a, int b) { return static_cast<std::size_t>(a) * G.order() + b; }
inline std::size_t idx3(const FinAbGroup& G, int a, int b, int c) {
  return (static_cast<std::size_t>(a) * G.order() + b) * G.order() + c;
}

/// Adds dpsi = 1 and both hexagons for unknown (or fixed trivial) psi and
/// unknown Omega, with right-hand side 1.
inline void add_cocycle_equations(ExponentSystem& sys, const FinAbGroup& G, const std::vector<int>& psi,
                                  const std::vector<int>& om) {
  const int n = G.order();
  auto P = [&](int a, int b, int c) { return psi.empty() ? -1 : psi[idx3(G, a, b, c)]; };
  auto O = [&](int a, int b) { return om[idx2(G, a, b)]; };
  if (!psi.empty())
    for (int a = 1; a < n; ++a)
      for (int b = 1; b < n; ++b)
        for (int c = 1; c < n; ++c)
          for (int d = 1; d < n; ++d)
            sys.add({{P(b, c, d), 1},
                     {P(G.add(a, b), c, d), -1},
                     {P(a, G.add(b, c), d), 1},
                     {P(a, b, G.add(c, d)), -1},
                     {P(a, b, c), 1}},
                    RootOfUnity::one());
  for (int a = 1; a < n; ++a)
    for (int b = 1; b < n; ++b)
      for (int c = 1; c < n; ++c) {
        sys.add({{P(b, c, a), -1},
                 {O(a, G.add(b, c)), 1},
                 {P(a, b, c), -1},
                 {O(a, c), -1},
                 {P(b, a, c), 1},
                 {O(a, b), -1}},
                RootOfUnity::one());
        sys.add({{P(c, a, b), 1},
                 {O(G.add(a, b), c), 1},
                 {P(a, b, c), 1},
                 {O(a, c), -1},
                 {P(a, c, b), -1},
                 {O(b, c), -1}},
                RootOfUnity::one());
      }
}

}  // namespace detail

/// Some abelian 3-cocycle (psi, Omega) with Omega(g, g) = q(g), as the
/// lexicographically least solution of the exponent-linear cocycle system
/// over denominators dividing 2 exp(G)^2 (psi entries first, then Omega).
/// Solutions with psi = 1 are tried first; when one exists it is also the
/// least overall.
inline AbelianCocycle3 cocycle_from_qform(const QuadraticForm& q, int bound = kDefaultFormBound) {
  const auto& G = q.group;
  if (G.order() > bound)
    throw BoundExceeded("cocycle_from_qform: |G| = " + std::to_string(G.order()) + " exceeds bound " +
                        std::to_string(bound));
  if (!is_qform(q)) throw InvariantViolation("cocycle_from_qform: input is not a quadratic form");
  const std::int64_t D = search_denominator(G);

  for (bool with_psi : {false, true}) {
    detail::ExponentSystem sys(D);
    std::vector<int> psi = with_psi ? sys.add_cochain_vars(G, 3) : std::vector<int>{};
    std::vector<int> om = sys.add_cochain_vars(G, 2);
    detail::add_cocycle_equations(sys, G, psi, om);
    for (int g = 0; g < G.order(); ++g) sys.add({{om[detail::idx2(G, g, g)], 1}}, q(g).inverse());
    auto sol = sys.solve();
    if (!sol) continue;
    AbelianCocycle3 c{with_psi ? detail::ExponentSystem::assemble(G, 3, psi, *sol) : Cochain::trivial(G, 3),
                      detail::ExponentSystem::assemble(G, 2, om, *sol)};
    if (!is_abelian_3cocycle(c) || !(em_qform(c) == q))
      throw InternalError("cocycle_from_qform: solver output fails verification");
    return c;
  }
  throw InternalError("cocycle_from_qform: no cocycle found for " + G.to_string());
}

/// Lexicographically least normalized kappa (denominators dividing
/// 2 exp(G)^2) with c1 = c2 * d_ab(kappa), or nullopt.
inline std::optional<Cochain> cohomologous_witness(const AbelianCocycle3& c1, const AbelianCocycle3& c2,
                                                   int bound = kDefaultWitnessBound) {
  const auto& G = c1.group();
  require_same_group(G, c2.group(), "cohomologous_witness");
  if (G.order() > bound)
    throw BoundExceeded("cohomologous_witness: |G| = " + std::to_string(G.order()) + " exceeds bound " +
                        std::to_string(bound));
  const int n = G.order();
  detail::ExponentSystem sys(search_denominator(G));
  std::vector<int> k = sys.add_cochain_vars(G, 2);
  auto K = [&](int a, int b) { return k[detail::idx2(G, a, b)]; };
  // psi1 / psi2 = d kappa
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        sys.add({{K(b, c), 1}, {K(G.add(a, b), c), -1}, {K(a, G.add(b, c)), 1}, {K(a, b), -1}},
                c2.psi(a, b, c) / c1.psi(a, b, c));
  // Omega1 / Omega2 = kappa_comm
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) sys.add({{K(a, b), 1}, {K(b, a), -1}}, c2.omega(a, b) / c1.omega(a, b));
  auto sol = sys.solve();
  if (!sol) return std::nullopt;
  Cochain kappa = detail::ExponentSystem::assemble(G, 2, k, *sol);
  if (!(c1 == c2 * ab_coboundary(kappa))) throw InternalError("cohomologous_witness: witness fails verification");
  return kappa;
}

}  // namespace staraut
