#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "staraut/cohomology.hpp"
#include "staraut/error.hpp"
#include "staraut/groups.hpp"
#include "staraut/qforms.hpp"

namespace staraut {

/// Default bound on |G| for structure equivalence searches.
inline constexpr int kDefaultEquivalenceBound = 6;

/// Skeletal data on the simple objects k_g: associator psi, braiding Omega,
/// twist theta and the dualizing degree g0.
struct SkeletalStructure {
  FinAbGroup group;
  Cochain psi;
  Cochain omega;
  RootTable theta;
  int g0 = 0;

  AbelianCocycle3 cocycle() const { return {psi, omega}; }

  friend bool operator==(const SkeletalStructure& a, const SkeletalStructure& b) {
    return a.group == b.group && a.psi == b.psi && a.omega == b.omega && a.theta == b.theta && a.g0 == b.g0;
  }
};

/// First (g1, g2) violating theta(g1 + g2) = Omega(g2, g1) Omega(g1, g2) theta(g1) theta(g2).
inline std::optional<std::pair<int, int>> first_twist_failure(const Cochain& omega, const RootTable& theta) {
  const auto& G = omega.group;
  if (static_cast<int>(theta.size()) != G.order()) throw GroupMismatch("check_twist: theta size");
  for (int a = 0; a < G.order(); ++a)
    for (int b = 0; b < G.order(); ++b)
      if (theta[G.add(a, b)] != omega(b, a) * omega(a, b) * theta[a] * theta[b]) return std::make_pair(a, b);
  return std::nullopt;
}

inline bool check_twist(const Cochain& omega, const RootTable& theta) {
  return !first_twist_failure(omega, theta).has_value();
}

/// First g violating theta(-g + g0) = theta(g).
inline std::optional<int> first_ribbon_failure(const FinAbGroup& G, const RootTable& theta, int g0) {
  if (static_cast<int>(theta.size()) != G.order()) throw GroupMismatch("check_ribbon_wrt: theta size");
  for (int g = 0; g < G.order(); ++g)
    if (theta[G.add(G.neg(g), g0)] != theta[g]) return g;
  return std::nullopt;
}

inline bool check_ribbon_wrt(const FinAbGroup& G, const RootTable& theta, int g0) {
  return !first_ribbon_failure(G, theta, g0).has_value();
}

struct AxiomReport {
  bool pentagon = false;
  bool triangle = false;
  bool hexagons = false;
  bool twist = false;
  bool ribbon = false;

  bool all() const { return pentagon && triangle && hexagons && twist && ribbon; }
};

inline AxiomReport check_structure(const SkeletalStructure& s) {
  AxiomReport r;
  r.pentagon = check_pentagon(s.psi);
  r.triangle = check_triangle(s.psi);
  r.hexagons = check_hexagons(s.psi, s.omega);
  r.twist = check_twist(s.omega, s.theta);
  r.ribbon = check_ribbon_wrt(s.group, s.theta, s.g0);
  return r;
}

/// (q, eta, g0) |-> (psi_q, Omega_q, q eta, -2 g0) with (psi_q, Omega_q) from
/// cocycle_from_qform.
inline SkeletalStructure build_from_wrqf(const WRQFDatum& d, int bound = kDefaultFormBound) {
  if (!is_wrqf(d)) throw InvariantViolation("build_from_wrqf: input is not a WRQF datum");
  const auto& G = d.q.group;
  AbelianCocycle3 c = cocycle_from_qform(d.q, bound);
  return {G, std::move(c.psi), std::move(c.omega), (d.q * d.eta).values, G.times(-2, d.g0)};
}

/// q = diagonal of Omega, eta = theta / q, returned g0 = -sqrt(s.g0).
inline WRQFDatum extract_wrqf(const SkeletalStructure& s) {
  const auto& G = s.group;
  if (!check_structure(s).all()) throw InvariantViolation("extract_wrqf: structure fails an axiom check");
  if (!G.has_square_roots()) throw InvariantViolation("extract_wrqf: group has an even-order cyclic factor");
  QuadraticForm q = em_qform(s.cocycle());
  RootTable ratio(G.order());
  for (int g = 0; g < G.order(); ++g) ratio[g] = s.theta[g] / q(g);
  auto eta = character_from_table(G, ratio);
  if (!eta) throw InvariantViolation("extract_wrqf: theta / q is not a character");
  WRQFDatum d{std::move(q), std::move(*eta), G.neg(*square_root(G, s.g0))};
  if (!is_wrqf(d)) throw InternalError("extract_wrqf: output violates eta = beta(-, g0)");
  return d;
}

/// All structures built from WRQF(G), in enumerate_wrqf order.
inline std::vector<SkeletalStructure> enumerate_structures(const FinAbGroup& G, int bound = kDefaultFormBound) {
  std::vector<SkeletalStructure> out;
  for (const auto& d : enumerate_wrqf(G, bound)) out.push_back(build_from_wrqf(d, bound));
  return out;
}

struct StructureEquivalence {
  GroupAutomorphism f;
  Cochain kappa;
};

/// Braided monoidal functor axioms for F = f on objects with monoidal
/// structure phi = kappa, plus twist and dualizing-degree compatibility:
///   psi1(a,b,c) kappa(a+b,c) kappa(a,b) = kappa(a,b+c) kappa(b,c) psi2(fa,fb,fc)
///   Omega1(a,b) = Omega2(fa,fb) kappa(a,b) / kappa(b,a)
///   theta1(a) = theta2(fa),  f(g0_1) = g0_2
inline bool verify_equivalence(const SkeletalStructure& s1, const SkeletalStructure& s2,
                               const StructureEquivalence& w) {
  const auto& G = s1.group;
  const auto& f = w.f;
  const auto& k = w.kappa;
  if (!is_normalized(k)) return false;
  for (int a = 0; a < G.order(); ++a) {
    if (s1.theta[a] != s2.theta[f(a)]) return false;
    for (int b = 0; b < G.order(); ++b) {
      if (s1.omega(a, b) != s2.omega(f(a), f(b)) * k(a, b) / k(b, a)) return false;
      for (int c = 0; c < G.order(); ++c)
        if (s1.psi(a, b, c) * k(G.add(a, b), c) * k(a, b) !=
            k(a, G.add(b, c)) * k(b, c) * s2.psi(f(a), f(b), f(c)))
          return false;
    }
  }
  return f(s1.g0) == s2.g0;
}

/// First automorphism admitting a kappa (the identity first, then the
/// automorphisms(G) order), with the lexicographically least kappa for it;
/// nullopt if none exists within denominators 2 exp(G)^2. The witness is re-verified against the functor
/// axioms before it is returned.
inline std::optional<StructureEquivalence> equivalent_structures(const SkeletalStructure& s1,
                                                                 const SkeletalStructure& s2,
                                                                 int bound = kDefaultEquivalenceBound) {
  const auto& G = s1.group;
  require_same_group(G, s2.group, "equivalent_structures");
  if (G.order() > bound)
    throw BoundExceeded("equivalent_structures: |G| = " + std::to_string(G.order()) + " exceeds bound " +
                        std::to_string(bound));
  std::vector<GroupAutomorphism> auts{GroupAutomorphism::identity(G)};
  for (auto& f : automorphisms(G))
    if (!(f == auts.front())) auts.push_back(std::move(f));
  for (const auto& f : auts) {
    if (f(s1.g0) != s2.g0) continue;
    bool theta_ok = true;
    for (int g = 0; g < G.order() && theta_ok; ++g) theta_ok = s1.theta[g] == s2.theta[f(g)];
    if (!theta_ok) continue;
    auto kappa = cohomologous_witness(s1.cocycle(), pullback(s2.cocycle(), f), bound);
    if (!kappa) continue;
    StructureEquivalence w{f, std::move(*kappa)};
    if (!verify_equivalence(s1, s2, w)) throw InternalError("equivalent_structures: witness fails functor axioms");
    return w;
  }
  return std::nullopt;
}

/// Partition into equivalence classes; each class is listed by input index,
/// classes ordered by their first member.
inline std::vector<std::vector<std::size_t>> classify_structures(const std::vector<SkeletalStructure>& ss,
                                                                 int bound = kDefaultEquivalenceBound) {
  std::vector<std::vector<std::size_t>> classes;
  for (std::size_t i = 0; i < ss.size(); ++i) {
    bool placed = false;
    for (auto& cls : classes)
      if (equivalent_structures(ss[i], ss[cls.front()], bound)) {
        cls.push_back(i);
        placed = true;
        break;
      }
    if (!placed) classes.push_back({i});
  }
  return classes;
}

}  // namespace staraut
