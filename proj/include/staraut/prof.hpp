#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "staraut/error.hpp"

namespace staraut {

/// Finite category: objects and morphisms are indices; comp[g][f] = g o f or
/// -1 when dst(f) != src(g).
struct FinCategory {
  std::vector<std::string> objects;
  std::vector<std::string> labels;
  std::vector<int> src;
  std::vector<int> dst;
  std::vector<int> ids;
  std::vector<std::vector<int>> comp;
  std::vector<std::vector<std::vector<int>>> homs;  // homs[a][b], ascending morphism index
  std::vector<int> position;                        // index of a morphism inside its hom-set

  int num_objects() const { return static_cast<int>(objects.size()); }
  int num_morphisms() const { return static_cast<int>(labels.size()); }
  const std::vector<int>& hom(int a, int b) const { return homs[a][b]; }
  int compose(int g, int f) const { return comp[g][f]; }

  friend bool operator==(const FinCategory& a, const FinCategory& b) {
    return a.objects == b.objects && a.labels == b.labels && a.src == b.src && a.dst == b.dst && a.ids == b.ids &&
           a.comp == b.comp;
  }

  /// Throws InvariantViolation unless composition is closed, associative and
  /// unital.
  void validate() const {
    const int n = num_morphisms();
    if (static_cast<int>(ids.size()) != num_objects()) throw InvariantViolation("FinCategory: one identity per object");
    for (int a = 0; a < num_objects(); ++a)
      if (src[ids[a]] != a || dst[ids[a]] != a) throw InvariantViolation("FinCategory: identity has wrong endpoints");
    for (int g = 0; g < n; ++g)
      for (int f = 0; f < n; ++f) {
        int gf = comp[g][f];
        if ((dst[f] == src[g]) != (gf >= 0)) throw InvariantViolation("FinCategory: composition table domain");
        if (gf >= 0 && (src[gf] != src[f] || dst[gf] != dst[g]))
          throw InvariantViolation("FinCategory: " + labels[g] + " o " + labels[f] + " has wrong endpoints");
      }
    for (int f = 0; f < n; ++f)
      if (comp[ids[dst[f]]][f] != f || comp[f][ids[src[f]]] != f)
        throw InvariantViolation("FinCategory: unit law fails at " + labels[f]);
    for (int h = 0; h < n; ++h)
      for (int g = 0; g < n; ++g) {
        if (comp[h][g] < 0) continue;
        for (int f = 0; f < n; ++f)
          if (comp[g][f] >= 0 && comp[comp[h][g]][f] != comp[h][comp[g][f]])
            throw InvariantViolation("FinCategory: associativity fails at " + labels[h] + ", " + labels[g] + ", " +
                                     labels[f]);
      }
  }
};

struct MorphismSpec {
  std::string label;
  int src;
  int dst;
};

/// Builds and validates a category; compose_fn(g, f) gives g o f for
/// composable pairs (morphism indices in the order of morphs).
template <class ComposeFn>
FinCategory make_category(std::vector<std::string> objects, const std::vector<MorphismSpec>& morphs,
                          std::vector<int> ids, ComposeFn compose_fn) {
  FinCategory c;
  c.objects = std::move(objects);
  const int no = c.num_objects();
  for (const auto& m : morphs) {
    if (m.src < 0 || m.src >= no || m.dst < 0 || m.dst >= no)
      throw InvariantViolation("make_category: endpoint out of range for " + m.label);
    c.labels.push_back(m.label);
    c.src.push_back(m.src);
    c.dst.push_back(m.dst);
  }
  c.ids = std::move(ids);
  const int n = c.num_morphisms();
  for (int f : c.ids)
    if (f < 0 || f >= n) throw InvariantViolation("make_category: identity index out of range");
  c.comp.assign(n, std::vector<int>(n, -1));
  for (int g = 0; g < n; ++g)
    for (int f = 0; f < n; ++f)
      if (c.dst[f] == c.src[g]) {
        int gf = compose_fn(g, f);
        if (gf < 0 || gf >= n) throw InvariantViolation("make_category: composite out of range");
        c.comp[g][f] = gf;
      }
  c.homs.assign(no, std::vector<std::vector<int>>(no));
  c.position.assign(n, 0);
  for (int f = 0; f < n; ++f) {
    auto& h = c.homs[c.src[f]][c.dst[f]];
    c.position[f] = static_cast<int>(h.size());
    h.push_back(f);
  }
  c.validate();
  return c;
}

/// One object, morphisms Z_n under addition.
inline FinCategory cyclic_group_category(int n) {
  std::vector<MorphismSpec> ms;
  for (int k = 0; k < n; ++k) ms.push_back({"g" + std::to_string(k), 0, 0});
  return make_category({"*"}, ms, {0}, [n](int g, int f) { return (g + f) % n; });
}

/// The chain 0 -> 1 -> ... -> n-1 with one morphism i -> j for i <= j.
inline FinCategory chain_category(int n) {
  std::vector<MorphismSpec> ms;
  std::vector<std::string> obs;
  std::map<std::pair<int, int>, int> idx;
  for (int i = 0; i < n; ++i) obs.push_back(std::to_string(i));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      idx[{i, j}] = static_cast<int>(ms.size());
      ms.push_back({std::to_string(i) + "<=" + std::to_string(j), i, j});
    }
  std::vector<int> ids;
  for (int i = 0; i < n; ++i) ids.push_back(idx[{i, i}]);
  return make_category(obs, ms, ids, [&](int g, int f) { return idx[{ms[f].src, ms[g].dst}]; });
}

inline FinCategory discrete_category(int n) {
  std::vector<MorphismSpec> ms;
  std::vector<std::string> obs;
  std::vector<int> ids;
  for (int i = 0; i < n; ++i) {
    obs.push_back(std::to_string(i));
    ids.push_back(i);
    ms.push_back({"1_" + std::to_string(i), i, i});
  }
  return make_category(obs, ms, ids, [](int g, int) { return g; });
}

/// A -u-> B -v-> C with an involution s on B (v s = v) and an idempotent e
/// on C (e v = v).
inline FinCategory three_object_category() {
  enum { kA, kB, kC, kS, kU, kSU, kV, kVU, kE };
  std::vector<MorphismSpec> ms{{"1A", 0, 0}, {"1B", 1, 1}, {"1C", 2, 2}, {"s", 1, 1}, {"u", 0, 1},
                               {"su", 0, 1}, {"v", 1, 2},  {"vu", 0, 2}, {"e", 2, 2}};
  auto comp = [&](int g, int f) -> int {
    if (g == kA || g == kB || g == kC) return f;
    if (f == kA || f == kB || f == kC) return g;
    if (g == kS) return f == kS ? kB : f == kU ? kSU : kU;
    if (g == kV) return f == kS ? kV : kVU;
    return f == kE ? kE : f;  // g == e
  };
  return make_category({"A", "B", "C"}, ms, {kA, kB, kC}, comp);
}

/// Functor between finite categories.
struct FinFunctor {
  FinCategory source;
  FinCategory target;
  std::vector<int> on_objects;
  std::vector<int> on_morphisms;

  int operator()(int f) const { return on_morphisms[f]; }

  bool is_valid() const {
    if (static_cast<int>(on_objects.size()) != source.num_objects() ||
        static_cast<int>(on_morphisms.size()) != source.num_morphisms())
      return false;
    for (int f = 0; f < source.num_morphisms(); ++f) {
      int m = on_morphisms[f];
      if (m < 0 || m >= target.num_morphisms()) return false;
      if (target.src[m] != on_objects[source.src[f]] || target.dst[m] != on_objects[source.dst[f]]) return false;
    }
    for (int a = 0; a < source.num_objects(); ++a)
      if (on_morphisms[source.ids[a]] != target.ids[on_objects[a]]) return false;
    for (int g = 0; g < source.num_morphisms(); ++g)
      for (int f = 0; f < source.num_morphisms(); ++f)
        if (source.comp[g][f] >= 0 && on_morphisms[source.comp[g][f]] != target.comp[on_morphisms[g]][on_morphisms[f]])
          return false;
    return true;
  }

  void validate() const {
    if (!is_valid()) throw InvariantViolation("FinFunctor: table is not a functor");
  }
};

inline FinFunctor identity_functor(const FinCategory& c) {
  std::vector<int> o(c.num_objects()), m(c.num_morphisms());
  std::iota(o.begin(), o.end(), 0);
  std::iota(m.begin(), m.end(), 0);
  return {c, c, o, m};
}

inline FinFunctor constant_functor(const FinCategory& c, const FinCategory& d, int d0) {
  return {c, d, std::vector<int>(c.num_objects(), d0), std::vector<int>(c.num_morphisms(), d.ids[d0])};
}

/// Every functor c -> d, in lexicographic order of (object map, morphism map).
inline std::vector<FinFunctor> enumerate_functors(const FinCategory& c, const FinCategory& d) {
  std::vector<FinFunctor> out;
  const int no = c.num_objects(), nm = c.num_morphisms();
  std::vector<int> ob(no, 0);
  while (true) {
    FinFunctor F{c, d, ob, std::vector<int>(nm, -1)};
    std::vector<int> choice(nm, 0);
    bool empty = false;
    for (int f = 0; f < nm; ++f) empty = empty || d.hom(ob[c.src[f]], ob[c.dst[f]]).empty();
    if (!empty) {
      while (true) {
        for (int f = 0; f < nm; ++f) F.on_morphisms[f] = d.hom(ob[c.src[f]], ob[c.dst[f]])[choice[f]];
        if (F.is_valid()) out.push_back(F);
        int f = nm - 1;
        while (f >= 0 && ++choice[f] == static_cast<int>(d.hom(ob[c.src[f]], ob[c.dst[f]]).size())) choice[f--] = 0;
        if (f < 0) break;
      }
    }
    int a = no - 1;
    while (a >= 0 && ++ob[a] == d.num_objects()) ob[a--] = 0;
    if (a < 0) break;
  }
  return out;
}

/// F: C -/-> D, i.e. a functor D^op x C -> FinSet. Elements of F(d, c) are
/// 0 .. sizes[d][c] - 1.
///   pull[phi][c]: F(d, c) -> F(d', c) for phi: d' -> d in D
///   push[f][d]:   F(d, c) -> F(d, c') for f: c -> c' in C
struct SetProfunctor {
  FinCategory source;  // C
  FinCategory target;  // D
  std::vector<std::vector<int>> sizes;
  std::vector<std::vector<std::vector<int>>> pull;
  std::vector<std::vector<std::vector<int>>> push;

  int size(int d, int c) const { return sizes[d][c]; }

  /// Throws InvariantViolation unless both actions are functorial and commute.
  void validate() const {
    const auto& C = source;
    const auto& D = target;
    for (int d = 0; d < D.num_objects(); ++d)
      for (int c = 0; c < C.num_objects(); ++c)
        for (int x = 0; x < sizes[d][c]; ++x) {
          if (pull[D.ids[d]][c][x] != x || push[C.ids[c]][d][x] != x)
            throw InvariantViolation("SetProfunctor: identity does not act trivially");
        }
    for (int p = 0; p < D.num_morphisms(); ++p)
      for (int q = 0; q < D.num_morphisms(); ++q) {
        int pq = D.comp[p][q];
        if (pq < 0) continue;
        for (int c = 0; c < C.num_objects(); ++c)
          for (int x = 0; x < sizes[D.dst[p]][c]; ++x)
            if (pull[pq][c][x] != pull[q][c][pull[p][c][x]])
              throw InvariantViolation("SetProfunctor: contravariant action is not functorial");
      }
    for (int g = 0; g < C.num_morphisms(); ++g)
      for (int f = 0; f < C.num_morphisms(); ++f) {
        int gf = C.comp[g][f];
        if (gf < 0) continue;
        for (int d = 0; d < D.num_objects(); ++d)
          for (int x = 0; x < sizes[d][C.src[f]]; ++x)
            if (push[gf][d][x] != push[g][d][push[f][d][x]])
              throw InvariantViolation("SetProfunctor: covariant action is not functorial");
      }
    for (int p = 0; p < D.num_morphisms(); ++p)
      for (int f = 0; f < C.num_morphisms(); ++f)
        for (int x = 0; x < sizes[D.dst[p]][C.src[f]]; ++x)
          if (push[f][D.src[p]][pull[p][C.src[f]][x]] != pull[p][C.dst[f]][push[f][D.dst[p]][x]])
            throw InvariantViolation("SetProfunctor: actions do not commute");
  }
};

/// Fills sizes and both action tables from callbacks:
///   size_fn(d, c), pull_fn(phi, c, x), push_fn(f, d, x).
template <class SizeFn, class PullFn, class PushFn>
SetProfunctor make_profunctor(const FinCategory& C, const FinCategory& D, SizeFn size_fn, PullFn pull_fn,
                              PushFn push_fn) {
  SetProfunctor F{C, D, {}, {}, {}};
  F.sizes.assign(D.num_objects(), std::vector<int>(C.num_objects(), 0));
  for (int d = 0; d < D.num_objects(); ++d)
    for (int c = 0; c < C.num_objects(); ++c) F.sizes[d][c] = size_fn(d, c);
  F.pull.assign(D.num_morphisms(), std::vector<std::vector<int>>(C.num_objects()));
  for (int p = 0; p < D.num_morphisms(); ++p)
    for (int c = 0; c < C.num_objects(); ++c)
      for (int x = 0; x < F.sizes[D.dst[p]][c]; ++x) F.pull[p][c].push_back(pull_fn(p, c, x));
  F.push.assign(C.num_morphisms(), std::vector<std::vector<int>>(D.num_objects()));
  for (int f = 0; f < C.num_morphisms(); ++f)
    for (int d = 0; d < D.num_objects(); ++d)
      for (int x = 0; x < F.sizes[d][C.src[f]]; ++x) F.push[f][d].push_back(push_fn(f, d, x));
  return F;
}

/// Hom_C(a, b) as a profunctor C -/-> C; elements indexed by hom-set position.
inline SetProfunctor hom_profunctor(const FinCategory& C) {
  return make_profunctor(
      C, C, [&](int a, int b) { return static_cast<int>(C.hom(a, b).size()); },
      [&](int p, int b, int x) { return C.position[C.compose(C.hom(C.dst[p], b)[x], p)]; },
      [&](int f, int a, int x) { return C.position[C.compose(f, C.hom(a, C.src[f])[x])]; });
}

/// Hom_D(F0 c, G0 c') as a profunctor C -/-> C.
inline SetProfunctor hom_profunctor(const FinFunctor& F0, const FinFunctor& G0) {
  if (!(F0.source == G0.source) || !(F0.target == G0.target)) throw CategoryMismatch("hom_profunctor: functor mismatch");
  const auto& C = F0.source;
  const auto& D = F0.target;
  return make_profunctor(
      C, C, [&](int c, int c2) { return static_cast<int>(D.hom(F0.on_objects[c], G0.on_objects[c2]).size()); },
      [&](int p, int c2, int x) {
        int m = D.hom(F0.on_objects[C.dst[p]], G0.on_objects[c2])[x];
        return D.position[D.compose(m, F0(p))];
      },
      [&](int f, int c, int x) {
        int m = D.hom(F0.on_objects[c], G0.on_objects[C.src[f]])[x];
        return D.position[D.compose(G0(f), m)];
      });
}

/// F_*(d, c) = Hom_D(d, F0 c): C -/-> D.
inline SetProfunctor representable_lower(const FinFunctor& F0) {
  F0.validate();
  const auto& C = F0.source;
  const auto& D = F0.target;
  return make_profunctor(
      C, D, [&](int d, int c) { return static_cast<int>(D.hom(d, F0.on_objects[c]).size()); },
      [&](int p, int c, int x) { return D.position[D.compose(D.hom(D.dst[p], F0.on_objects[c])[x], p)]; },
      [&](int f, int d, int x) { return D.position[D.compose(F0(f), D.hom(d, F0.on_objects[C.src[f]])[x])]; });
}

/// F^*(c, d) = Hom_D(F0 c, d): D -/-> C.
inline SetProfunctor representable_upper(const FinFunctor& F0) {
  F0.validate();
  const auto& C = F0.source;
  const auto& D = F0.target;
  return make_profunctor(
      D, C, [&](int c, int d) { return static_cast<int>(D.hom(F0.on_objects[c], d).size()); },
      [&](int f, int d, int x) { return D.position[D.compose(D.hom(F0.on_objects[C.dst[f]], d)[x], F0(f))]; },
      [&](int p, int c, int x) { return D.position[D.compose(p, D.hom(F0.on_objects[c], D.src[p])[x])]; });
}

/// Quotient of the diagonal sets T(c, c) by pull(f)(x) ~ push(f)(x).
/// Diagonal elements are numbered offsets[c] + x; each class is represented
/// by its least element and classes are numbered by representative.
struct CoendResult {
  std::vector<int> offsets;
  std::vector<int> class_of;
  std::vector<int> representatives;

  int num_classes() const { return static_cast<int>(representatives.size()); }
  int omega(int c, int x) const { return class_of[offsets[c] + x]; }
};

namespace detail {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent[b] = a;
  }
};

}  // namespace detail

/// reverse processes the relations in the opposite order; the result is the
/// same.
inline CoendResult coend(const SetProfunctor& T, bool reverse = false) {
  if (!(T.source == T.target)) throw CategoryMismatch("coend: profunctor is not an endo-profunctor");
  const auto& C = T.source;
  CoendResult r;
  int total = 0;
  for (int c = 0; c < C.num_objects(); ++c) {
    r.offsets.push_back(total);
    total += T.sizes[c][c];
  }
  std::vector<std::pair<int, int>> rel;
  for (int f = 0; f < C.num_morphisms(); ++f) {
    int c = C.src[f], c2 = C.dst[f];
    for (int x = 0; x < T.sizes[c2][c]; ++x)
      rel.emplace_back(r.offsets[c] + T.pull[f][c][x], r.offsets[c2] + T.push[f][c2][x]);
  }
  if (reverse) std::reverse(rel.begin(), rel.end());
  detail::UnionFind uf(total);
  for (auto [a, b] : rel) uf.unite(a, b);
  r.class_of.assign(total, -1);
  for (int e = 0; e < total; ++e) {
    int root = uf.find(e);
    if (root == e) {
      r.class_of[e] = static_cast<int>(r.representatives.size());
      r.representatives.push_back(e);
    } else {
      r.class_of[e] = r.class_of[root];
    }
  }
  return r;
}

/// All families (x_c in T(c, c)) with push(f)(x_c) = pull(f)(x_c') for every
/// f: c -> c'.
inline std::vector<std::vector<int>> end(const SetProfunctor& T) {
  if (!(T.source == T.target)) throw CategoryMismatch("end: profunctor is not an endo-profunctor");
  const auto& C = T.source;
  const int n = C.num_objects();
  std::vector<std::vector<int>> out;
  std::vector<int> x(n, 0);
  auto consistent_upto = [&](int k) {
    for (int f = 0; f < C.num_morphisms(); ++f) {
      int c = C.src[f], c2 = C.dst[f];
      if (std::max(c, c2) != k) continue;
      if (T.push[f][c][x[c]] != T.pull[f][c2][x[c2]]) return false;
    }
    return true;
  };
  int k = 0;
  std::vector<int> next(n, 0);
  while (true) {
    if (k == n) {
      out.push_back(x);
      --k;
      if (k < 0) break;
      continue;
    }
    if (next[k] >= T.sizes[k][k]) {
      next[k] = 0;
      --k;
      if (k < 0) break;
      continue;
    }
    x[k] = next[k]++;
    if (consistent_upto(k)) ++k;
  }
  return out;
}

/// Direct enumeration of natural transformations F0 => G0.
inline std::vector<std::vector<int>> natural_transformations(const FinFunctor& F0, const FinFunctor& G0) {
  const auto& C = F0.source;
  const auto& D = F0.target;
  const int n = C.num_objects();
  std::vector<std::vector<int>> out;
  std::vector<int> choice(n, 0);
  for (int c = 0; c < n; ++c)
    if (D.hom(F0.on_objects[c], G0.on_objects[c]).empty()) return out;
  while (true) {
    std::vector<int> alpha(n);
    for (int c = 0; c < n; ++c) alpha[c] = D.hom(F0.on_objects[c], G0.on_objects[c])[choice[c]];
    bool natural = true;
    for (int f = 0; f < C.num_morphisms() && natural; ++f)
      natural = D.compose(G0(f), alpha[C.src[f]]) == D.compose(alpha[C.dst[f]], F0(f));
    if (natural) {
      std::vector<int> positions(n);
      for (int c = 0; c < n; ++c) positions[c] = choice[c];
      out.push_back(positions);
    }
    int c = n - 1;
    while (c >= 0 && ++choice[c] == static_cast<int>(D.hom(F0.on_objects[c], G0.on_objects[c]).size()))
      choice[c--] = 0;
    if (c < 0) break;
  }
  return out;
}

/// Nat(F0, G0) computed as the end of Hom_D(F0 -, G0 -).
inline std::vector<std::vector<int>> nat_via_end(const FinFunctor& F0, const FinFunctor& G0) {
  return end(hom_profunctor(F0, G0));
}

/// compose(F, G) for F: A -/-> B, G: B -/-> C is
///   (G o F)(c, a) = coend over b of F(b, a) x G(c, b),
/// with the pair (x, y) at b numbered x * |G(c, b)| + y.
struct Composite {
  SetProfunctor first;
  SetProfunctor second;
  SetProfunctor result;
  std::vector<std::vector<CoendResult>> parts;  // parts[c][a]

  int class_of(int c, int a, int b, int x, int y) const {
    return parts[c][a].omega(b, x * second.size(c, b) + y);
  }
};

inline Composite compose_full(const SetProfunctor& F, const SetProfunctor& G) {
  if (!(F.target == G.source)) throw CategoryMismatch("compose: middle categories differ");
  const auto& A = F.source;
  const auto& B = F.target;
  const auto& C = G.target;
  Composite out{F, G, {}, {}};
  out.parts.assign(C.num_objects(), std::vector<CoendResult>(A.num_objects()));
  for (int c = 0; c < C.num_objects(); ++c)
    for (int a = 0; a < A.num_objects(); ++a) {
      SetProfunctor T = make_profunctor(
          B, B, [&](int b, int b2) { return F.size(b, a) * G.size(c, b2); },
          [&](int p, int b2, int e) {
            int gs = G.size(c, b2);
            return F.pull[p][a][e / gs] * gs + e % gs;
          },
          [&](int p, int, int e) {
            int gs = G.size(c, B.src[p]);
            return (e / gs) * G.size(c, B.dst[p]) + G.push[p][c][e % gs];
          });
      out.parts[c][a] = coend(T);
    }
  auto check_constant = [](std::vector<int>& img, int k, int v) {
    if (img[k] >= 0 && img[k] != v) throw InternalError("compose: induced action is not well defined");
    img[k] = v;
  };
  SetProfunctor R{A, C, {}, {}, {}};
  R.sizes.assign(C.num_objects(), std::vector<int>(A.num_objects()));
  for (int c = 0; c < C.num_objects(); ++c)
    for (int a = 0; a < A.num_objects(); ++a) R.sizes[c][a] = out.parts[c][a].num_classes();
  R.pull.assign(C.num_morphisms(), std::vector<std::vector<int>>(A.num_objects()));
  for (int p = 0; p < C.num_morphisms(); ++p)
    for (int a = 0; a < A.num_objects(); ++a) {
      int c = C.dst[p], c2 = C.src[p];
      std::vector<int> img(R.sizes[c][a], -1);
      for (int b = 0; b < B.num_objects(); ++b)
        for (int x = 0; x < F.size(b, a); ++x)
          for (int y = 0; y < G.size(c, b); ++y)
            check_constant(img, out.class_of(c, a, b, x, y), out.class_of(c2, a, b, x, G.pull[p][b][y]));
      R.pull[p][a] = std::move(img);
    }
  R.push.assign(A.num_morphisms(), std::vector<std::vector<int>>(C.num_objects()));
  for (int f = 0; f < A.num_morphisms(); ++f)
    for (int c = 0; c < C.num_objects(); ++c) {
      int a = A.src[f], a2 = A.dst[f];
      std::vector<int> img(R.sizes[c][a], -1);
      for (int b = 0; b < B.num_objects(); ++b)
        for (int x = 0; x < F.size(b, a); ++x)
          for (int y = 0; y < G.size(c, b); ++y)
            check_constant(img, out.class_of(c, a, b, x, y), out.class_of(c, a2, b, F.push[f][b][x], y));
      R.push[f][c] = std::move(img);
    }
  out.result = std::move(R);
  return out;
}

inline SetProfunctor compose(const SetProfunctor& F, const SetProfunctor& G) { return compose_full(F, G).result; }

/// Natural transformation between profunctors with the same source and
/// target: components[d][c] maps F(d, c) -> G(d, c).
struct ProfMap {
  std::vector<std::vector<std::vector<int>>> components;

  friend bool operator==(const ProfMap& a, const ProfMap& b) { return a.components == b.components; }
};

inline ProfMap identity_map(const SetProfunctor& F) {
  ProfMap m;
  m.components.assign(F.target.num_objects(), std::vector<std::vector<int>>(F.source.num_objects()));
  for (int d = 0; d < F.target.num_objects(); ++d)
    for (int c = 0; c < F.source.num_objects(); ++c) {
      m.components[d][c].resize(F.size(d, c));
      std::iota(m.components[d][c].begin(), m.components[d][c].end(), 0);
    }
  return m;
}

/// beta o alpha.
inline ProfMap vertical(const ProfMap& beta, const ProfMap& alpha) {
  ProfMap m = alpha;
  for (std::size_t d = 0; d < m.components.size(); ++d)
    for (std::size_t c = 0; c < m.components[d].size(); ++c)
      for (auto& x : m.components[d][c]) x = beta.components[d][c][x];
  return m;
}

inline bool is_natural(const SetProfunctor& F, const SetProfunctor& G, const ProfMap& m) {
  const auto& C = F.source;
  const auto& D = F.target;
  for (int p = 0; p < D.num_morphisms(); ++p)
    for (int c = 0; c < C.num_objects(); ++c)
      for (int x = 0; x < F.size(D.dst[p], c); ++x)
        if (m.components[D.src[p]][c][F.pull[p][c][x]] != G.pull[p][c][m.components[D.dst[p]][c][x]]) return false;
  for (int f = 0; f < C.num_morphisms(); ++f)
    for (int d = 0; d < D.num_objects(); ++d)
      for (int x = 0; x < F.size(d, C.src[f]); ++x)
        if (m.components[d][C.dst[f]][F.push[f][d][x]] != G.push[f][d][m.components[d][C.src[f]][x]]) return false;
  return true;
}

inline bool is_bijective(const SetProfunctor& F, const SetProfunctor& G, const ProfMap& m) {
  for (int d = 0; d < F.target.num_objects(); ++d)
    for (int c = 0; c < F.source.num_objects(); ++c) {
      if (F.size(d, c) != G.size(d, c)) return false;
      std::vector<bool> hit(G.size(d, c), false);
      for (int y : m.components[d][c]) {
        if (hit[y]) return false;
        hit[y] = true;
      }
    }
  return true;
}

inline ProfMap inverse(const ProfMap& m) {
  ProfMap inv = m;
  for (std::size_t d = 0; d < m.components.size(); ++d)
    for (std::size_t c = 0; c < m.components[d].size(); ++c)
      for (std::size_t x = 0; x < m.components[d][c].size(); ++x) inv.components[d][c][m.components[d][c][x]] = x;
  return inv;
}

namespace detail {

/// Collects (class, image) pairs and fails if a class receives two images.
class Descent {
 public:
  explicit Descent(const SetProfunctor& src) {
    map_.components.assign(src.target.num_objects(), std::vector<std::vector<int>>(src.source.num_objects()));
    for (int d = 0; d < src.target.num_objects(); ++d)
      for (int c = 0; c < src.source.num_objects(); ++c) map_.components[d][c].assign(src.size(d, c), -1);
  }
  void set(int d, int c, int k, int v) {
    int& slot = map_.components[d][c][k];
    if (slot >= 0 && slot != v) ok_ = false;
    slot = v;
  }
  std::optional<ProfMap> result() const {
    if (!ok_) return std::nullopt;
    for (const auto& row : map_.components)
      for (const auto& comp : row)
        for (int v : comp)
          if (v < 0) return std::nullopt;
    return map_;
  }

 private:
  ProfMap map_;
  bool ok_ = true;
};

}  // namespace detail

/// compose(Id_A, F) => F, [f, x] |-> push(f)(x); nullopt if not well defined.
inline std::optional<ProfMap> left_unitor(const Composite& idF) {
  const auto& A = idF.first.source;
  const auto& F = idF.second;
  detail::Descent out(idF.result);
  for (int b = 0; b < F.target.num_objects(); ++b)
    for (int a = 0; a < A.num_objects(); ++a)
      for (int a2 = 0; a2 < A.num_objects(); ++a2)
        for (int i = 0; i < static_cast<int>(A.hom(a2, a).size()); ++i)
          for (int x = 0; x < F.size(b, a2); ++x)
            out.set(b, a, idF.class_of(b, a, a2, i, x), F.push[A.hom(a2, a)[i]][b][x]);
  return out.result();
}

/// compose(F, Id_B) => F, [x, g] |-> pull(g)(x).
inline std::optional<ProfMap> right_unitor(const Composite& Fid) {
  const auto& F = Fid.first;
  const auto& B = F.target;
  detail::Descent out(Fid.result);
  for (int b = 0; b < B.num_objects(); ++b)
    for (int a = 0; a < F.source.num_objects(); ++a)
      for (int b2 = 0; b2 < B.num_objects(); ++b2)
        for (int x = 0; x < F.size(b2, a); ++x)
          for (int j = 0; j < static_cast<int>(B.hom(b, b2).size()); ++j)
            out.set(b, a, Fid.class_of(b, a, b2, x, j), F.pull[B.hom(b, b2)[j]][a][x]);
  return out.result();
}

/// compose(compose(F, G), H) => compose(F, compose(G, H)),
/// [[x, y], z] |-> [x, [y, z]].
inline std::optional<ProfMap> associator(const Composite& fg, const Composite& fg_h, const Composite& gh,
                                         const Composite& f_gh) {
  const auto& F = fg.first;
  const auto& G = fg.second;
  const auto& H = gh.second;
  detail::Descent out(fg_h.result);
  for (int d = 0; d < H.target.num_objects(); ++d)
    for (int a = 0; a < F.source.num_objects(); ++a)
      for (int b = 0; b < F.target.num_objects(); ++b)
        for (int c = 0; c < G.target.num_objects(); ++c)
          for (int x = 0; x < F.size(b, a); ++x)
            for (int y = 0; y < G.size(c, b); ++y)
              for (int z = 0; z < H.size(d, c); ++z)
                out.set(d, a, fg_h.class_of(d, a, c, fg.class_of(c, a, b, x, y), z),
                        f_gh.class_of(d, a, b, x, gh.class_of(d, b, c, y, z)));
  return out.result();
}

/// compose(alpha, G): compose(F, G) => compose(F', G), [x, y] |-> [alpha x, y].
inline std::optional<ProfMap> whisker_first(const Composite& src, const Composite& dst, const ProfMap& alpha) {
  detail::Descent out(src.result);
  const auto& F = src.first;
  const auto& G = src.second;
  for (int c = 0; c < G.target.num_objects(); ++c)
    for (int a = 0; a < F.source.num_objects(); ++a)
      for (int b = 0; b < F.target.num_objects(); ++b)
        for (int x = 0; x < F.size(b, a); ++x)
          for (int y = 0; y < G.size(c, b); ++y)
            out.set(c, a, src.class_of(c, a, b, x, y), dst.class_of(c, a, b, alpha.components[b][a][x], y));
  return out.result();
}

/// compose(F, beta): compose(F, G) => compose(F, G'), [x, y] |-> [x, beta y].
inline std::optional<ProfMap> whisker_second(const Composite& src, const Composite& dst, const ProfMap& beta) {
  detail::Descent out(src.result);
  const auto& F = src.first;
  const auto& G = src.second;
  for (int c = 0; c < G.target.num_objects(); ++c)
    for (int a = 0; a < F.source.num_objects(); ++a)
      for (int b = 0; b < F.target.num_objects(); ++b)
        for (int x = 0; x < F.size(b, a); ++x)
          for (int y = 0; y < G.size(c, b); ++y)
            out.set(c, a, src.class_of(c, a, b, x, y), dst.class_of(c, a, b, x, beta.components[c][b][y]));
  return out.result();
}

/// Composition Hom(u, x) x Hom(x, v) -> Hom(u, v) descends to a bijection
/// from the coend for every (u, v).
inline bool check_coend_yoneda(const FinCategory& C) {
  SetProfunctor I = hom_profunctor(C);
  Composite ii = compose_full(I, I);
  auto m = left_unitor(ii);
  return m && is_bijective(ii.result, I, *m) && is_natural(ii.result, I, *m);
}

/// Canonical comparison compose(F_*, G_*) => (G o F)_*, [f, g] |-> G(f) o g.
inline std::optional<ProfMap> representable_composite_map(const FinFunctor& F0, const FinFunctor& G0) {
  SetProfunctor Fl = representable_lower(F0), Gl = representable_lower(G0);
  Composite fg = compose_full(Fl, Gl);
  const auto& A = F0.source;
  const auto& B = F0.target;
  const auto& C = G0.target;
  detail::Descent out(fg.result);
  for (int c = 0; c < C.num_objects(); ++c)
    for (int a = 0; a < A.num_objects(); ++a)
      for (int b = 0; b < B.num_objects(); ++b)
        for (int x = 0; x < Fl.size(b, a); ++x)
          for (int y = 0; y < Gl.size(c, b); ++y) {
            int f = B.hom(b, F0.on_objects[a])[x];
            int g = C.hom(c, G0.on_objects[b])[y];
            out.set(c, a, fg.class_of(c, a, b, x, y), C.position[C.compose(G0(f), g)]);
          }
  return out.result();
}

inline FinFunctor compose_functors(const FinFunctor& G0, const FinFunctor& F0) {
  if (!(F0.target == G0.source)) throw CategoryMismatch("compose_functors: categories differ");
  FinFunctor H{F0.source, G0.target, F0.on_objects, F0.on_morphisms};
  for (auto& o : H.on_objects) o = G0.on_objects[o];
  for (auto& m : H.on_morphisms) m = G0.on_morphisms[m];
  return H;
}

struct AdjunctionReport {
  bool unit_natural = false;
  bool counit_natural = false;
  bool triangle_lower = false;  // F_* -> F_* F^* F_* -> F_* is the identity
  bool triangle_upper = false;  // F^* -> F^* F_* F^* -> F^* is the identity
  std::vector<std::string> failures;

  bool all() const { return unit_natural && counit_natural && triangle_lower && triangle_upper; }
};

/// Unit Id_C => F^* o F_*, f |-> [id_{F c}, F f]; counit F_* o F^* => Id_D,
/// [g, h] |-> g o h; both triangle composites compared with the identity.
inline AdjunctionReport check_adjunction(const FinFunctor& F0) {
  F0.validate();
  const auto& C = F0.source;
  const auto& D = F0.target;
  AdjunctionReport r;
  SetProfunctor L = representable_lower(F0), R = representable_upper(F0);
  SetProfunctor IC = hom_profunctor(C), ID = hom_profunctor(D);
  Composite LR = compose_full(L, R);  // C -/-> C
  Composite RL = compose_full(R, L);  // D -/-> D

  ProfMap eta;
  eta.components.assign(C.num_objects(), std::vector<std::vector<int>>(C.num_objects()));
  for (int c2 = 0; c2 < C.num_objects(); ++c2)
    for (int c = 0; c < C.num_objects(); ++c)
      for (int f : C.hom(c2, c)) {
        int fc = F0.on_objects[c];
        int x = D.position[D.ids[fc]];
        int y = D.position[F0(f)];
        eta.components[c2][c].push_back(LR.class_of(c2, c, fc, x, y));
      }
  r.unit_natural = is_natural(IC, LR.result, eta);
  if (!r.unit_natural) r.failures.push_back("unit is not natural");

  detail::Descent eps_d(RL.result);
  for (int d = 0; d < D.num_objects(); ++d)
    for (int d2 = 0; d2 < D.num_objects(); ++d2)
      for (int c = 0; c < C.num_objects(); ++c)
        for (int x = 0; x < R.size(c, d2); ++x)
          for (int y = 0; y < L.size(d, c); ++y) {
            int g = D.hom(F0.on_objects[c], d2)[x];
            int h = D.hom(d, F0.on_objects[c])[y];
            eps_d.set(d, d2, RL.class_of(d, d2, c, x, y), D.position[D.compose(g, h)]);
          }
  auto eps = eps_d.result();
  r.counit_natural = eps && is_natural(RL.result, ID, *eps);
  if (!r.counit_natural) r.failures.push_back("counit is not well defined or not natural");
  if (!eps) return r;

  auto fail = [&](const char* what) {
    r.failures.push_back(what);
    return false;
  };
  {
    Composite iL = compose_full(IC, L);
    Composite lr_l = compose_full(LR.result, L);
    Composite l_rl = compose_full(L, RL.result);
    Composite lI = compose_full(L, ID);
    auto lu = left_unitor(iL);
    auto w1 = whisker_first(iL, lr_l, eta);
    auto as = associator(LR, lr_l, RL, l_rl);
    auto w2 = whisker_second(l_rl, lI, *eps);
    auto ru = right_unitor(lI);
    if (!lu || !w1 || !as || !w2 || !ru || !is_bijective(iL.result, L, *lu))
      r.triangle_lower = fail("triangle_lower: a constituent map is not well defined");
    else
      r.triangle_lower = vertical(*ru, vertical(*w2, vertical(*as, vertical(*w1, inverse(*lu))))) == identity_map(L) ||
                         fail("triangle_lower: composite differs from the identity");
  }
  {
    Composite rI = compose_full(R, IC);
    Composite r_lr = compose_full(R, LR.result);
    Composite rl_r = compose_full(RL.result, R);
    Composite iR = compose_full(ID, R);
    auto ru = right_unitor(rI);
    auto w1 = whisker_second(rI, r_lr, eta);
    auto as = associator(RL, rl_r, LR, r_lr);
    auto w2 = whisker_first(rl_r, iR, *eps);
    auto lu = left_unitor(iR);
    if (!ru || !w1 || !as || !w2 || !lu || !is_bijective(rI.result, R, *ru) ||
        !is_bijective(rl_r.result, r_lr.result, *as))
      r.triangle_upper = fail("triangle_upper: a constituent map is not well defined");
    else
      r.triangle_upper = vertical(*lu, vertical(*w2, vertical(inverse(*as), vertical(*w1, inverse(*ru))))) ==
                             identity_map(R) ||
                         fail("triangle_upper: composite differs from the identity");
  }
  return r;
}

}  // namespace staraut
