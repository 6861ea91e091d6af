#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "staraut/error.hpp"
#include "staraut/exact/rational_matrix.hpp"

namespace staraut {

/// (V, W, <-,->) with <v, w> = v^T pairing w.
struct ChuPair {
  std::size_t dim_v = 0;
  std::size_t dim_w = 0;
  RationalMatrix pairing;

  ChuPair() = default;
  explicit ChuPair(RationalMatrix p) : dim_v(p.rows()), dim_w(p.cols()), pairing(std::move(p)) {}

  static ChuPair unit() { return ChuPair(RationalMatrix::identity(1)); }

  friend bool operator==(const ChuPair& a, const ChuPair& b) { return a.pairing == b.pairing; }
};

/// (f, g): f maps V1 -> V2 (dim_v2 x dim_v1), g maps W2 -> W1 (dim_w1 x dim_w2).
struct ChuMorphism {
  RationalMatrix f;
  RationalMatrix g;

  friend bool operator==(const ChuMorphism& a, const ChuMorphism& b) { return a.f == b.f && a.g == b.g; }
};

inline bool is_separated(const ChuPair& p) { return mat_rank(p.pairing) == p.dim_v; }
inline bool is_extensional(const ChuPair& p) { return mat_rank(p.pairing) == p.dim_w; }
inline bool is_valid(const ChuPair& p) { return is_separated(p) && is_extensional(p); }

inline void require_valid(const ChuPair& p, const char* where) {
  if (!is_valid(p)) throw InvariantViolation(std::string(where) + ": pair is not separated and extensional");
}

/// <f v, w>_2 = <v, g w>_1, i.e. f^T P2 = P1 g.
inline bool is_morphism(const ChuPair& p1, const ChuPair& p2, const ChuMorphism& m) {
  if (m.f.rows() != p2.dim_v || m.f.cols() != p1.dim_v || m.g.rows() != p1.dim_w || m.g.cols() != p2.dim_w)
    return false;
  return m.f.transpose() * p2.pairing == p1.pairing * m.g;
}

inline bool is_iso(const ChuMorphism& m) { return mat_is_iso(m.f) && mat_is_iso(m.g); }

inline ChuMorphism identity_morphism(const ChuPair& p) {
  return {RationalMatrix::identity(p.dim_v), RationalMatrix::identity(p.dim_w)};
}

/// b o a.
inline ChuMorphism compose(const ChuMorphism& b, const ChuMorphism& a) { return {b.f * a.f, a.g * b.g}; }

inline ChuPair dual(const ChuPair& p) { return ChuPair(p.pairing.transpose()); }
inline ChuMorphism dual_morphism(const ChuMorphism& m) { return {m.g, m.f}; }

/// The unique g with (f, g): p1 -> p2 when p1 is extensional, or nullopt if
/// f admits none.
inline std::optional<RationalMatrix> adjoint_of(const ChuPair& p1, const ChuPair& p2, const RationalMatrix& f) {
  if (f.rows() != p2.dim_v || f.cols() != p1.dim_v) throw DimensionMismatch("adjoint_of: f has the wrong shape");
  RationalMatrix rhs = f.transpose() * p2.pairing;
  RationalMatrix g(p1.dim_w, p2.dim_w);
  for (std::size_t j = 0; j < p2.dim_w; ++j) {
    auto x = mat_solve(p1.pairing, rhs.col(j));
    if (!x) return std::nullopt;
    for (std::size_t i = 0; i < p1.dim_w; ++i) g(i, j) = (*x)[i];
  }
  return g;
}

/// Basis of Hom(p1, p2), computed as the kernel of (f, g) |-> f^T P2 - P1 g
/// with the g unknowns ordered first, so the free unknowns are entries of f.
struct ChuHomSpace {
  ChuPair source;
  ChuPair target;
  std::vector<ChuMorphism> basis;
  RationalMatrix f_columns;  // column k = row-major vec of basis[k].f

  std::size_t dim() const { return basis.size(); }

  /// Coordinates of the morphism with first component f, or nullopt if f is
  /// not the first component of any morphism.
  std::optional<std::vector<Rational>> coords(const RationalMatrix& f) const {
    if (f.rows() != target.dim_v || f.cols() != source.dim_v) throw DimensionMismatch("ChuHomSpace::coords: shape");
    auto x = mat_solve(f_columns, f.data());
    if (!x) return std::nullopt;
    return x;
  }

  ChuMorphism element(const std::vector<Rational>& x) const {
    if (x.size() != basis.size()) throw DimensionMismatch("ChuHomSpace::element: coordinate length");
    ChuMorphism m{RationalMatrix(target.dim_v, source.dim_v), RationalMatrix(source.dim_w, target.dim_w)};
    for (std::size_t k = 0; k < basis.size(); ++k) {
      if (x[k] == 0) continue;
      m.f = m.f + basis[k].f.scaled(x[k]);
      m.g = m.g + basis[k].g.scaled(x[k]);
    }
    return m;
  }
};

inline ChuHomSpace hom_space(const ChuPair& p1, const ChuPair& p2) {
  const std::size_t a1 = p1.dim_v, b1 = p1.dim_w, a2 = p2.dim_v, b2 = p2.dim_w;
  const std::size_t ng = b1 * b2, nf = a2 * a1;
  // Equation (i, j): sum_r f(r, i) P2(r, j) - sum_s P1(i, s) g(s, j) = 0.
  RationalMatrix sys(a1 * b2, ng + nf);
  for (std::size_t i = 0; i < a1; ++i)
    for (std::size_t j = 0; j < b2; ++j) {
      std::size_t row = i * b2 + j;
      for (std::size_t r = 0; r < a2; ++r) sys(row, ng + r * a1 + i) += p2.pairing(r, j);
      for (std::size_t s = 0; s < b1; ++s) sys(row, s * b2 + j) -= p1.pairing(i, s);
    }
  ChuHomSpace h{p1, p2, {}, RationalMatrix(nf, 0)};
  auto ker = mat_kernel(sys);
  h.f_columns = RationalMatrix(nf, ker.size());
  for (std::size_t k = 0; k < ker.size(); ++k) {
    ChuMorphism m{RationalMatrix(a2, a1), RationalMatrix(b1, b2)};
    for (std::size_t s = 0; s < b1; ++s)
      for (std::size_t j = 0; j < b2; ++j) m.g(s, j) = ker[k][s * b2 + j];
    for (std::size_t r = 0; r < a2; ++r)
      for (std::size_t i = 0; i < a1; ++i) m.f(r, i) = h.f_columns(r * a1 + i, k) = ker[k][ng + r * a1 + i];
    h.basis.push_back(std::move(m));
  }
  return h;
}

/// (Hom(p1, p2), V1 (x) W2, <(f, g), v (x) w> = <f v, w>_2) against the
/// hom_space basis and the Kronecker basis i * dim_w2 + j.
inline ChuPair internal_hom(const ChuPair& p1, const ChuPair& p2) {
  require_valid(p1, "internal_hom");
  require_valid(p2, "internal_hom");
  ChuHomSpace h = hom_space(p1, p2);
  RationalMatrix pr(h.dim(), p1.dim_v * p2.dim_w);
  for (std::size_t k = 0; k < h.dim(); ++k) {
    RationalMatrix fp = h.basis[k].f.transpose() * p2.pairing;
    for (std::size_t i = 0; i < p1.dim_v; ++i)
      for (std::size_t j = 0; j < p2.dim_w; ++j) pr(k, i * p2.dim_w + j) = fp(i, j);
  }
  ChuPair out(std::move(pr));
  if (!is_valid(out)) throw InternalError("internal_hom: output is not separated and extensional");
  return out;
}

/// iHom(m1, m2): iHom(p1, p2) -> iHom(q1, q2) for m1: q1 -> p1, m2: p2 -> q2,
/// (f, g) |-> (m2 f m1, m1 g m2) on first components and m1 (x) m2 on second.
inline ChuMorphism internal_hom_map(const ChuPair& p1, const ChuPair& p2, const ChuPair& q1, const ChuPair& q2,
                                    const ChuMorphism& m1, const ChuMorphism& m2) {
  ChuHomSpace src = hom_space(p1, p2), dst = hom_space(q1, q2);
  ChuMorphism out{RationalMatrix(dst.dim(), src.dim()), mat_kron(m1.f, m2.g)};
  for (std::size_t k = 0; k < src.dim(); ++k) {
    auto x = dst.coords(m2.f * src.basis[k].f * m1.f);
    if (!x) throw InternalError("internal_hom_map: image is not a morphism");
    for (std::size_t r = 0; r < dst.dim(); ++r) out.f(r, k) = (*x)[r];
  }
  return out;
}

/// p1 (x) p2 := iHom(p1, p2*)*; its first component is V1 (x) V2 in
/// Kronecker order i * dim_v2 + j.
inline ChuPair tensor(const ChuPair& p1, const ChuPair& p2) { return dual(internal_hom(p1, dual(p2))); }

/// (f, adjoint of f) when it is an isomorphism p1 -> p2, else nullopt.
inline std::optional<ChuMorphism> certify_iso(const ChuPair& p1, const ChuPair& p2, const RationalMatrix& f) {
  if (p1.dim_v != p2.dim_v || p1.dim_w != p2.dim_w) return std::nullopt;
  if (f.rows() != p2.dim_v || f.cols() != p1.dim_v) return std::nullopt;
  auto g = adjoint_of(p1, p2, f);
  if (!g) return std::nullopt;
  ChuMorphism m{f, std::move(*g)};
  if (!is_morphism(p1, p2, m) || !is_iso(m)) return std::nullopt;
  return m;
}

namespace detail {

template <class F>
RationalMatrix linear_map_matrix(std::size_t in_dim, std::size_t out_dim, F map) {
  RationalMatrix m(out_dim, in_dim);
  for (std::size_t k = 0; k < in_dim; ++k) {
    std::vector<Rational> e(in_dim);
    e[k] = 1;
    auto y = map(e);
    if (y.size() != out_dim) throw InternalError("linear_map_matrix: output length");
    for (std::size_t r = 0; r < out_dim; ++r) m(r, k) = y[r];
  }
  return m;
}

inline std::vector<Rational> coords_or_throw(const ChuHomSpace& h, const RationalMatrix& f, const char* where) {
  auto x = h.coords(f);
  if (!x) throw InternalError(std::string(where) + ": map is not a Chu morphism");
  return *x;
}

inline RationalMatrix column_matrix(const std::vector<Rational>& v) { return RationalMatrix::column(v); }

}  // namespace detail

/// Hom(k, X) -> X, (f, g) |-> f(1), on first components.
inline RationalMatrix unit_hom_map(const ChuPair& x) {
  ChuHomSpace h = hom_space(ChuPair::unit(), x);
  RationalMatrix m(x.dim_v, h.dim());
  for (std::size_t k = 0; k < h.dim(); ++k)
    for (std::size_t r = 0; r < x.dim_v; ++r) m(r, k) = h.basis[k].f(r, 0);
  return m;
}

/// Hom(U, iHom(V, W)) -> Hom(V, iHom(U, W)), phi |-> (v |-> (u |-> phi(u)(v))).
inline RationalMatrix exchange_map(const ChuPair& u, const ChuPair& v, const ChuPair& w) {
  ChuHomSpace vw = hom_space(v, w), uw = hom_space(u, w);
  ChuPair ivw = internal_hom(v, w), iuw = internal_hom(u, w);
  ChuHomSpace src = hom_space(u, ivw), dst = hom_space(v, iuw);
  return detail::linear_map_matrix(src.dim(), dst.dim(), [&](const std::vector<Rational>& x) {
    RationalMatrix phi = src.element(x).f;  // dim(vw) x dim_v(u)
    std::vector<RationalMatrix> fi;
    for (std::size_t i = 0; i < u.dim_v; ++i) fi.push_back(vw.element(phi.col(i)).f);
    RationalMatrix out(uw.dim(), v.dim_v);
    for (std::size_t j = 0; j < v.dim_v; ++j) {
      RationalMatrix gj(w.dim_v, u.dim_v);
      for (std::size_t i = 0; i < u.dim_v; ++i)
        for (std::size_t r = 0; r < w.dim_v; ++r) gj(r, i) = fi[i](r, j);
      auto c = detail::coords_or_throw(uw, gj, "exchange_map");
      for (std::size_t r = 0; r < uw.dim(); ++r) out(r, j) = c[r];
    }
    return detail::coords_or_throw(dst, out, "exchange_map");
  });
}

/// Hom(V, W) -> Hom(W*, V*), (f, g) |-> (g, f).
inline RationalMatrix transpose_hom_map(const ChuPair& v, const ChuPair& w) {
  ChuHomSpace src = hom_space(v, w), dst = hom_space(dual(w), dual(v));
  return detail::linear_map_matrix(src.dim(), dst.dim(), [&](const std::vector<Rational>& x) {
    return detail::coords_or_throw(dst, dual_morphism(src.element(x)).f, "transpose_hom_map");
  });
}

/// W -> Hom(V, k), w |-> (<-, w>, w), i.e. the first component of V* to
/// that of iHom(V, k).
inline RationalMatrix dual_as_hom_map(const ChuPair& v) {
  ChuHomSpace dst = hom_space(v, ChuPair::unit());
  return detail::linear_map_matrix(v.dim_w, dst.dim(), [&](const std::vector<Rational>& w) {
    RationalMatrix f = (v.pairing * detail::column_matrix(w)).transpose();
    return detail::coords_or_throw(dst, f, "dual_as_hom_map");
  });
}

/// Hom(U (x) V, W) -> Hom(U, iHom(V, W)), f |-> (u |-> (v |-> f(u (x) v))),
/// in hom_space coordinates.
inline RationalMatrix curry_map(const ChuPair& u, const ChuPair& v, const ChuPair& w) {
  ChuHomSpace src = hom_space(tensor(u, v), w), vw = hom_space(v, w);
  ChuHomSpace dst = hom_space(u, internal_hom(v, w));
  return detail::linear_map_matrix(src.dim(), dst.dim(), [&](const std::vector<Rational>& x) {
    RationalMatrix f = src.element(x).f;
    RationalMatrix phi(vw.dim(), u.dim_v);
    for (std::size_t i = 0; i < u.dim_v; ++i) {
      RationalMatrix fi(w.dim_v, v.dim_v);
      for (std::size_t j = 0; j < v.dim_v; ++j)
        for (std::size_t r = 0; r < w.dim_v; ++r) fi(r, j) = f(r, i * v.dim_v + j);
      auto c = detail::coords_or_throw(vw, fi, "curry_map");
      for (std::size_t r = 0; r < vw.dim(); ++r) phi(r, i) = c[r];
    }
    return detail::coords_or_throw(dst, phi, "curry_map");
  });
}

/// Inverse direction of curry_map, f(u (x) v) := phi(u)(v).
inline RationalMatrix uncurry_map(const ChuPair& u, const ChuPair& v, const ChuPair& w) {
  ChuHomSpace dst = hom_space(tensor(u, v), w), vw = hom_space(v, w);
  ChuHomSpace src = hom_space(u, internal_hom(v, w));
  return detail::linear_map_matrix(src.dim(), dst.dim(), [&](const std::vector<Rational>& x) {
    RationalMatrix phi = src.element(x).f;
    RationalMatrix f(w.dim_v, u.dim_v * v.dim_v);
    for (std::size_t i = 0; i < u.dim_v; ++i) {
      RationalMatrix fi = vw.element(phi.col(i)).f;
      for (std::size_t j = 0; j < v.dim_v; ++j)
        for (std::size_t r = 0; r < w.dim_v; ++r) f(r, i * v.dim_v + j) = fi(r, j);
    }
    return detail::coords_or_throw(dst, f, "uncurry_map");
  });
}

/// Permutation V1 (x) V2 -> V2 (x) V1 on Kronecker bases.
inline RationalMatrix swap_map(std::size_t a1, std::size_t a2) {
  RationalMatrix m(a1 * a2, a1 * a2);
  for (std::size_t i = 0; i < a1; ++i)
    for (std::size_t j = 0; j < a2; ++j) m(j * a1 + i, i * a2 + j) = 1;
  return m;
}

/// Uniform integer entries in [-range, range], resampled until nondegenerate.
inline ChuPair random_valid_pair(std::mt19937_64& rng, std::size_t dim, int range = 2) {
  while (true) {
    RationalMatrix p(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j)
        p(i, j) = static_cast<long>(rng() % (2 * range + 1)) - range;
    ChuPair out(std::move(p));
    if (is_valid(out)) return out;
  }
}

/// Random first component with its adjoint; p1 must be extensional.
inline ChuMorphism random_morphism(std::mt19937_64& rng, const ChuPair& p1, const ChuPair& p2, int range = 2) {
  RationalMatrix f(p2.dim_v, p1.dim_v);
  for (std::size_t i = 0; i < f.rows(); ++i)
    for (std::size_t j = 0; j < f.cols(); ++j) f(i, j) = static_cast<long>(rng() % (2 * range + 1)) - range;
  auto g = adjoint_of(p1, p2, f);
  if (!g) throw InvariantViolation("random_morphism: source pair is not extensional");
  return {std::move(f), std::move(*g)};
}

struct ChuReport {
  bool dual_involution = false;
  bool internal_homs_valid = false;
  bool hom_unit = false;         // iHom(k, iHom(V, W)) = iHom(V, W)
  bool hom_exchange = false;     // iHom(U, iHom(V, W)) = iHom(V, iHom(U, W))
  bool hom_transpose = false;    // iHom(V, W) = iHom(W*, V*)
  bool dual_as_hom = false;      // V* = iHom(V, k)
  bool tensor_adjunction = false;  // Hom(U (x) V, W) = Hom(U, iHom(V, W))
  bool adjunction_natural = false;
  bool tensor_unit = false;
  bool tensor_symmetry = false;
  bool tensor_associator = false;
  bool ihom_functorial = false;
  std::vector<std::string> failures;

  bool all() const {
    return dual_involution && internal_homs_valid && hom_unit && hom_exchange && hom_transpose && dual_as_hom &&
           tensor_adjunction && adjunction_natural && tensor_unit && tensor_symmetry && tensor_associator &&
           ihom_functorial;
  }
};

/// Checks every identity on (U, V, W); each isomorphism is certified by an
/// explicit invertible ChuMorphism built from the canonical map on first
/// components. Naturality and functoriality use morphisms drawn from seed.
inline ChuReport verify_identities(const ChuPair& u, const ChuPair& v, const ChuPair& w, std::uint64_t seed = 0) {
  require_valid(u, "verify_identities");
  require_valid(v, "verify_identities");
  require_valid(w, "verify_identities");
  std::mt19937_64 rng(seed);
  ChuReport r;
  auto fail = [&](const std::string& what) { r.failures.push_back(what); };
  const ChuPair k = ChuPair::unit();

  r.dual_involution = true;
  for (const ChuPair* p : {&u, &v, &w}) {
    if (!(dual(dual(*p)) == *p)) r.dual_involution = false;
    ChuMorphism m = random_morphism(rng, *p, *p);
    if (!(dual_morphism(dual_morphism(m)) == m) || !is_morphism(dual(*p), dual(*p), dual_morphism(m)))
      r.dual_involution = false;
  }
  if (!r.dual_involution) fail("dual_involution");

  ChuPair vw = internal_hom(v, w), uw = internal_hom(u, w);
  r.internal_homs_valid = is_valid(vw) && is_valid(uw) && is_valid(internal_hom(u, vw));
  if (!r.internal_homs_valid) fail("internal_homs_valid");

  r.hom_unit = certify_iso(internal_hom(k, vw), vw, unit_hom_map(vw)).has_value();
  if (!r.hom_unit) fail("hom_unit");

  r.hom_exchange = certify_iso(internal_hom(u, vw), internal_hom(v, uw), exchange_map(u, v, w)).has_value();
  if (!r.hom_exchange) fail("hom_exchange");

  r.hom_transpose = certify_iso(vw, internal_hom(dual(w), dual(v)), transpose_hom_map(v, w)).has_value();
  if (!r.hom_transpose) fail("hom_transpose");

  r.dual_as_hom = certify_iso(dual(v), internal_hom(v, k), dual_as_hom_map(v)).has_value();
  if (!r.dual_as_hom) fail("dual_as_hom");

  RationalMatrix cur = curry_map(u, v, w), unc = uncurry_map(u, v, w);
  r.tensor_adjunction = mat_is_iso(cur) && unc * cur == RationalMatrix::identity(cur.cols()) &&
                        cur * unc == RationalMatrix::identity(cur.rows());
  if (!r.tensor_adjunction) fail("tensor_adjunction");

  {
    // Naturality in W along h: W -> W' and in U along a: U' -> U.
    ChuPair uv = tensor(u, v);
    ChuHomSpace src = hom_space(uv, w), dst = hom_space(u, vw);
    ChuPair w2 = random_valid_pair(rng, w.dim_v), u2 = random_valid_pair(rng, u.dim_v);
    ChuMorphism h = random_morphism(rng, w, w2), a = random_morphism(rng, u2, u);
    ChuPair vw2 = internal_hom(v, w2);
    ChuHomSpace src_w = hom_space(uv, w2), dst_w = hom_space(u, vw2);
    ChuPair u2v = tensor(u2, v);
    ChuHomSpace src_u = hom_space(u2v, w), dst_u = hom_space(u2, vw);
    RationalMatrix cur_w = curry_map(u, v, w2), cur_u = curry_map(u2, v, w);
    ChuMorphism post = internal_hom_map(v, w, v, w2, identity_morphism(v), h);
    RationalMatrix pre_f = mat_kron(a.f, RationalMatrix::identity(v.dim_v));
    bool ok = true;
    for (std::size_t t = 0; t < src.dim() && ok; ++t) {
      std::vector<Rational> e(src.dim());
      e[t] = 1;
      ChuMorphism f = src.element(e);
      ChuMorphism phi = dst.element((cur * detail::column_matrix(e)).col(0));
      auto lhs_w = src_w.coords(h.f * f.f);
      auto rhs_w = dst_w.coords(post.f * phi.f);
      ok = lhs_w && rhs_w && cur_w * detail::column_matrix(*lhs_w) == detail::column_matrix(*rhs_w);
      auto lhs_u = src_u.coords(f.f * pre_f);
      auto rhs_u = dst_u.coords(phi.f * a.f);
      ok = ok && lhs_u && rhs_u && cur_u * detail::column_matrix(*lhs_u) == detail::column_matrix(*rhs_u);
    }
    r.adjunction_natural = ok;
    if (!ok) fail("adjunction_natural");
  }

  r.tensor_unit = certify_iso(tensor(k, v), v, RationalMatrix::identity(v.dim_v)).has_value() &&
                  certify_iso(tensor(v, k), v, RationalMatrix::identity(v.dim_v)).has_value();
  if (!r.tensor_unit) fail("tensor_unit");

  r.tensor_symmetry = certify_iso(tensor(u, v), tensor(v, u), swap_map(u.dim_v, v.dim_v)).has_value();
  if (!r.tensor_symmetry) fail("tensor_symmetry");

  std::size_t n = u.dim_v * v.dim_v * w.dim_v;
  r.tensor_associator =
      certify_iso(tensor(tensor(u, v), w), tensor(u, tensor(v, w)), RationalMatrix::identity(n)).has_value();
  if (!r.tensor_associator) fail("tensor_associator");

  {
    // iHom(b o a, d o c) = iHom(a, d) o iHom(b, c) with a: U' -> U, b: U'' -> U',
    // c: V -> V', d: V' -> V''.
    ChuPair u1 = random_valid_pair(rng, u.dim_v), u2 = random_valid_pair(rng, u.dim_v);
    ChuPair v1 = random_valid_pair(rng, v.dim_v), v2 = random_valid_pair(rng, v.dim_v);
    ChuMorphism a = random_morphism(rng, u1, u), b = random_morphism(rng, u2, u1);
    ChuMorphism c = random_morphism(rng, v, v1), d = random_morphism(rng, v1, v2);
    ChuMorphism first = internal_hom_map(u, v, u1, v1, a, c);
    ChuMorphism second = internal_hom_map(u1, v1, u2, v2, b, d);
    ChuMorphism whole = internal_hom_map(u, v, u2, v2, compose(a, b), compose(d, c));
    r.ihom_functorial = whole == compose(second, first) &&
                        is_morphism(internal_hom(u, v), internal_hom(u1, v1), first) &&
                        internal_hom_map(u, v, u, v, identity_morphism(u), identity_morphism(v)) ==
                            identity_morphism(internal_hom(u, v));
    if (!r.ihom_functorial) fail("ihom_functorial");
  }
  return r;
}

}  // namespace staraut
