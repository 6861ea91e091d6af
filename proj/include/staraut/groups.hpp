#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "staraut/error.hpp"
#include "staraut/exact/root_of_unity.hpp"

namespace staraut {

/// Default bound on |G| for brute-force automorphism enumeration.
inline constexpr int kDefaultAutBound = 64;

/// Element of a product of cyclic groups, as a residue vector.
struct GroupElement {
  std::vector<int> residues;

  friend bool operator==(const GroupElement&, const GroupElement&) = default;
  friend auto operator<=>(const GroupElement&, const GroupElement&) = default;
};

/// G = Z_{n_1} + ... + Z_{n_r}, written additively.
///
/// Elements are also addressed by an index in [0, |G|): the position in
/// lexicographic residue order (first factor most significant). Tables over
/// G throughout the library are indexed this way.
class FinAbGroup {
 public:
  FinAbGroup() { build(); }
  explicit FinAbGroup(std::vector<int> cyclic_orders) : orders_(std::move(cyclic_orders)) {
    for (int n : orders_)
      if (n < 2) throw std::invalid_argument("FinAbGroup: cyclic orders must be >= 2");
    build();
  }

  const std::vector<int>& cyclic_orders() const { return orders_; }
  int rank() const { return static_cast<int>(orders_.size()); }
  int order() const { return order_; }
  /// Least common multiple of the cyclic orders.
  int exponent() const { return exponent_; }

  int zero() const { return 0; }
  int add(int a, int b) const { return add_[a * order_ + b]; }
  int neg(int a) const { return neg_[a]; }
  int sub(int a, int b) const { return add(a, neg(b)); }
  int times(std::int64_t k, int a) const {
    const auto& r = elements_[a].residues;
    std::vector<int> out(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
      std::int64_t v = (k % orders_[i]) * r[i] % orders_[i];
      out[i] = static_cast<int>(v < 0 ? v + orders_[i] : v);
    }
    return index(out);
  }
  int element_order(int a) const {
    int k = 1;
    for (std::size_t i = 0; i < orders_.size(); ++i) {
      int n = orders_[i];
      k = std::lcm(k, n / std::gcd(n, elements_[a].residues[i]));
    }
    return k;
  }
  /// Canonical generator e_i.
  int generator(int i) const {
    std::vector<int> r(orders_.size(), 0);
    r[i] = 1;
    return index(r);
  }

  const GroupElement& element(int idx) const { return elements_[idx]; }
  int index(const GroupElement& g) const { return index(g.residues); }
  int index(const std::vector<int>& residues) const {
    if (residues.size() != orders_.size()) throw GroupMismatch("element has wrong number of residues");
    int idx = 0;
    for (std::size_t i = 0; i < orders_.size(); ++i) {
      if (residues[i] < 0 || residues[i] >= orders_[i]) throw GroupMismatch("residue out of range");
      idx = idx * orders_[i] + residues[i];
    }
    return idx;
  }
  bool contains(const GroupElement& g) const {
    if (g.residues.size() != orders_.size()) return false;
    for (std::size_t i = 0; i < orders_.size(); ++i)
      if (g.residues[i] < 0 || g.residues[i] >= orders_[i]) return false;
    return true;
  }

  /// True iff every element has a square root, i.e. every cyclic order is odd.
  bool has_square_roots() const {
    return std::all_of(orders_.begin(), orders_.end(), [](int n) { return n % 2 == 1; });
  }

  std::string to_string() const {
    if (orders_.empty()) return "Z_1";
    std::string s;
    for (std::size_t i = 0; i < orders_.size(); ++i) s += (i ? "+Z_" : "Z_") + std::to_string(orders_[i]);
    return s;
  }

  friend bool operator==(const FinAbGroup& a, const FinAbGroup& b) { return a.orders_ == b.orders_; }

 private:
  void build() {
    order_ = 1;
    exponent_ = 1;
    for (int n : orders_) {
      order_ *= n;
      exponent_ = std::lcm(exponent_, n);
    }
    elements_.resize(order_);
    for (int idx = 0; idx < order_; ++idx) {
      std::vector<int> r(orders_.size());
      int rest = idx;
      for (int i = static_cast<int>(orders_.size()) - 1; i >= 0; --i) {
        r[i] = rest % orders_[i];
        rest /= orders_[i];
      }
      elements_[idx].residues = std::move(r);
    }
    add_.resize(static_cast<std::size_t>(order_) * order_);
    neg_.resize(order_);
    for (int a = 0; a < order_; ++a) {
      std::vector<int> n(orders_.size());
      for (std::size_t i = 0; i < orders_.size(); ++i)
        n[i] = (orders_[i] - elements_[a].residues[i]) % orders_[i];
      neg_[a] = index(n);
      for (int b = 0; b < order_; ++b) {
        std::vector<int> s(orders_.size());
        for (std::size_t i = 0; i < orders_.size(); ++i)
          s[i] = (elements_[a].residues[i] + elements_[b].residues[i]) % orders_[i];
        add_[a * order_ + b] = index(s);
      }
    }
  }

  std::vector<int> orders_;
  int order_ = 1;
  int exponent_ = 1;
  std::vector<GroupElement> elements_;
  std::vector<int> add_;
  std::vector<int> neg_;
};

inline void require_same_group(const FinAbGroup& a, const FinAbGroup& b, const char* what) {
  if (!(a == b)) throw GroupMismatch(std::string(what) + ": " + a.to_string() + " vs " + b.to_string());
}

// Element-level operations on residue vectors.
inline GroupElement g_zero(const FinAbGroup& G) { return G.element(G.zero()); }
inline GroupElement g_add(const FinAbGroup& G, const GroupElement& a, const GroupElement& b) {
  return G.element(G.add(G.index(a), G.index(b)));
}
inline GroupElement g_neg(const FinAbGroup& G, const GroupElement& a) { return G.element(G.neg(G.index(a))); }
inline int g_order(const FinAbGroup& G, const GroupElement& a) { return G.element_order(G.index(a)); }
inline std::vector<GroupElement> g_all(const FinAbGroup& G) {
  std::vector<GroupElement> all;
  all.reserve(G.order());
  for (int i = 0; i < G.order(); ++i) all.push_back(G.element(i));
  return all;
}

/// Homomorphism G -> roots of unity, given on the canonical generators.
class Character {
 public:
  Character() = default;
  Character(FinAbGroup group, std::vector<RootOfUnity> generator_images)
      : group_(std::move(group)), images_(std::move(generator_images)) {
    if (static_cast<int>(images_.size()) != group_.rank()) throw GroupMismatch("Character: wrong number of images");
    for (int i = 0; i < group_.rank(); ++i)
      if (!images_[i].pow(group_.cyclic_orders()[i]).is_one())
        throw InvariantViolation("Character: image of e_" + std::to_string(i) + " has order not dividing n_i");
  }
  static Character trivial(const FinAbGroup& G) {
    return Character(G, std::vector<RootOfUnity>(G.rank()));
  }

  const FinAbGroup& group() const { return group_; }
  const std::vector<RootOfUnity>& generator_images() const { return images_; }

  RootOfUnity operator()(int g) const {
    RootOfUnity r;
    const auto& res = group_.element(g).residues;
    for (std::size_t i = 0; i < res.size(); ++i) r *= images_[i].pow(res[i]);
    return r;
  }

  /// Full value table indexed by element index.
  std::vector<RootOfUnity> table() const {
    std::vector<RootOfUnity> t(group_.order());
    for (int g = 0; g < group_.order(); ++g) t[g] = (*this)(g);
    return t;
  }

  Character operator*(const Character& o) const {
    require_same_group(group_, o.group_, "Character product");
    std::vector<RootOfUnity> im(images_.size());
    for (std::size_t i = 0; i < im.size(); ++i) im[i] = images_[i] * o.images_[i];
    return Character(group_, std::move(im));
  }

  friend bool operator==(const Character& a, const Character& b) {
    return a.group_ == b.group_ && a.images_ == b.images_;
  }

 private:
  FinAbGroup group_;
  std::vector<RootOfUnity> images_;
};

/// Recovers a character from a value table, or nullopt if the table is not
/// multiplicative.
inline std::optional<Character> character_from_table(const FinAbGroup& G, const std::vector<RootOfUnity>& t) {
  if (static_cast<int>(t.size()) != G.order()) throw GroupMismatch("character_from_table: table size");
  for (int a = 0; a < G.order(); ++a)
    for (int b = 0; b < G.order(); ++b)
      if (t[G.add(a, b)] != t[a] * t[b]) return std::nullopt;
  std::vector<RootOfUnity> im(G.rank());
  for (int i = 0; i < G.rank(); ++i) im[i] = t[G.generator(i)];
  return Character(G, std::move(im));
}

/// All |G| characters. Generator images run over mu_{n_i} with exponent
/// numerators in increasing order, first generator most significant.
inline std::vector<Character> characters(const FinAbGroup& G) {
  std::vector<Character> out;
  const auto& ns = G.cyclic_orders();
  std::vector<int> k(ns.size(), 0);
  while (true) {
    std::vector<RootOfUnity> im(ns.size());
    for (std::size_t i = 0; i < ns.size(); ++i) im[i] = RootOfUnity::from_fraction(k[i], ns[i]);
    out.emplace_back(G, std::move(im));
    int i = static_cast<int>(ns.size()) - 1;
    while (i >= 0 && ++k[i] == ns[i]) k[i--] = 0;
    if (i < 0) break;
  }
  return out;
}

/// Automorphism given by the images of the canonical generators; the full
/// element map is precomputed.
class GroupAutomorphism {
 public:
  GroupAutomorphism() = default;
  GroupAutomorphism(FinAbGroup group, std::vector<int> generator_images)
      : group_(std::move(group)), gens_(std::move(generator_images)) {
    if (static_cast<int>(gens_.size()) != group_.rank()) throw GroupMismatch("automorphism: wrong number of images");
    map_.resize(group_.order());
    for (int g = 0; g < group_.order(); ++g) {
      int img = group_.zero();
      const auto& r = group_.element(g).residues;
      for (std::size_t i = 0; i < r.size(); ++i) img = group_.add(img, group_.times(r[i], gens_[i]));
      map_[g] = img;
    }
    for (int i = 0; i < group_.rank(); ++i)
      if (group_.times(group_.cyclic_orders()[i], gens_[i]) != group_.zero())
        throw InvariantViolation("automorphism: generator image order does not divide n_i");
    std::vector<bool> hit(group_.order(), false);
    for (int v : map_) {
      if (hit[v]) throw InvariantViolation("automorphism: map is not bijective");
      hit[v] = true;
    }
  }
  static GroupAutomorphism identity(const FinAbGroup& G) {
    std::vector<int> gens(G.rank());
    for (int i = 0; i < G.rank(); ++i) gens[i] = G.generator(i);
    return GroupAutomorphism(G, std::move(gens));
  }

  const FinAbGroup& group() const { return group_; }
  const std::vector<int>& generator_images() const { return gens_; }
  int operator()(int g) const { return map_[g]; }
  const std::vector<int>& table() const { return map_; }

  /// (this o other)(g) = this(other(g)).
  GroupAutomorphism compose(const GroupAutomorphism& other) const {
    std::vector<int> gens(group_.rank());
    for (int i = 0; i < group_.rank(); ++i) gens[i] = map_[other.gens_[i]];
    return GroupAutomorphism(group_, std::move(gens));
  }
  GroupAutomorphism inverse() const {
    std::vector<int> inv(group_.order());
    for (int g = 0; g < group_.order(); ++g) inv[map_[g]] = g;
    std::vector<int> gens(group_.rank());
    for (int i = 0; i < group_.rank(); ++i) gens[i] = inv[group_.generator(i)];
    return GroupAutomorphism(group_, std::move(gens));
  }

  friend bool operator==(const GroupAutomorphism& a, const GroupAutomorphism& b) {
    return a.group_ == b.group_ && a.gens_ == b.gens_;
  }

 private:
  FinAbGroup group_;
  std::vector<int> gens_;
  std::vector<int> map_;
};

/// Aut(G) by brute force over generator-image tuples, filtered by order
/// divisibility and bijectivity. Lexicographic order of the image indices;
/// the identity is not necessarily first.
inline std::vector<GroupAutomorphism> automorphisms(const FinAbGroup& G, int bound = kDefaultAutBound) {
  if (G.order() > bound)
    throw BoundExceeded("automorphisms: |G| = " + std::to_string(G.order()) + " exceeds bound " +
                        std::to_string(bound));
  const int r = G.rank();
  std::vector<std::vector<int>> candidates(r);
  for (int i = 0; i < r; ++i)
    for (int g = 0; g < G.order(); ++g)
      if (G.times(G.cyclic_orders()[i], g) == G.zero()) candidates[i].push_back(g);

  std::vector<GroupAutomorphism> out;
  std::vector<std::size_t> pick(r, 0);
  if (r == 0) {
    out.push_back(GroupAutomorphism::identity(G));
    return out;
  }
  while (true) {
    std::vector<int> gens(r);
    for (int i = 0; i < r; ++i) gens[i] = candidates[i][pick[i]];
    // The images must generate G; check bijectivity of the induced map.
    std::vector<bool> hit(G.order(), false);
    bool ok = true;
    for (int g = 0; g < G.order() && ok; ++g) {
      int img = G.zero();
      const auto& res = G.element(g).residues;
      for (int i = 0; i < r; ++i) img = G.add(img, G.times(res[i], gens[i]));
      if (hit[img]) ok = false;
      hit[img] = true;
    }
    if (ok) out.emplace_back(G, std::move(gens));
    int i = r - 1;
    while (i >= 0 && ++pick[i] == candidates[i].size()) pick[i--] = 0;
    if (i < 0) break;
  }
  return out;
}

/// Solves 2x = g. Componentwise: odd n has the unique root (n+1)/2 * k; for
/// even n a root exists iff k is even, and the smaller of k/2 and k/2 + n/2
/// is returned.
inline std::optional<int> square_root(const FinAbGroup& G, int g) {
  const auto& ns = G.cyclic_orders();
  const auto& r = G.element(g).residues;
  std::vector<int> out(ns.size());
  for (std::size_t i = 0; i < ns.size(); ++i) {
    int n = ns[i];
    if (n % 2 == 1) {
      out[i] = static_cast<int>((static_cast<std::int64_t>(r[i]) * ((n + 1) / 2)) % n);
    } else {
      if (r[i] % 2 != 0) return std::nullopt;
      out[i] = r[i] / 2;
    }
  }
  return G.index(out);
}

inline std::optional<GroupElement> square_root(const FinAbGroup& G, const GroupElement& g) {
  auto r = square_root(G, G.index(g));
  if (!r) return std::nullopt;
  return G.element(*r);
}

inline bool has_square_roots(const FinAbGroup& G) { return G.has_square_roots(); }

}  // namespace staraut
