#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "staraut/error.hpp"

namespace staraut {

/// One linear congruence sum_j coeff_j * x_j == rhs (mod D).
struct CongruenceRow {
  std::vector<std::pair<int, std::int64_t>> terms;  // (variable, coefficient)
  std::int64_t rhs = 0;
};

namespace detail {

inline std::int64_t mod_norm(std::int64_t a, std::int64_t m) {
  a %= m;
  return a < 0 ? a + m : a;
}

inline std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
  std::int64_t r = mod_norm(a, m);
  std::int64_t old_r = m;
  std::int64_t old_s = 0, s = 1;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::int64_t t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1) throw InternalError("mod_inverse: not a unit");
  return mod_norm(old_s, m);
}

/// Echelon basis of a row module over Z/p^e, kept in Howell form: whenever a
/// row with pivot p^v is stored, its multiple by p^(e-v) is inserted too, so
/// every member of the span with leading zeros is spanned by the later rows.
class LocalEchelon {
 public:
  LocalEchelon(std::int64_t p, int e, int width) : p_(p), width_(width), rows_(width) {
    mod_ = 1;
    for (int i = 0; i < e; ++i) mod_ *= p;
  }

  void insert(std::vector<std::int64_t> row) {
    std::vector<std::vector<std::int64_t>> work;
    work.push_back(std::move(row));
    while (!work.empty()) {
      std::vector<std::int64_t> r = std::move(work.back());
      work.pop_back();
      for (int c = 0; c < width_; ++c) {
        if (r[c] == 0) continue;
        auto [v, unit] = split(r[c]);
        if (!rows_[c]) {
          normalize(r, c, unit);
          if (v > 0) work.push_back(scaled(r, mod_ / power(v)));
          rows_[c] = std::move(r);
          break;
        }
        auto& b = *rows_[c];
        int vb = split(b[c]).first;
        if (v >= vb) {
          std::int64_t f = r[c] / power(vb);
          for (int j = c; j < width_; ++j) r[j] = mod_norm(r[j] - f * b[j], mod_);
          continue;
        }
        normalize(r, c, unit);
        if (v > 0) work.push_back(scaled(r, mod_ / power(v)));
        work.push_back(std::move(b));
        rows_[c] = std::move(r);
        break;
      }
    }
  }

  bool inconsistent() const { return rows_[width_ - 1].has_value(); }

  /// Stored row whose pivot sits in column c, if any.
  const std::optional<std::vector<std::int64_t>>& row(int c) const { return rows_[c]; }

  std::int64_t modulus() const { return mod_; }

 private:
  std::int64_t power(int v) const {
    std::int64_t r = 1;
    for (int i = 0; i < v; ++i) r *= p_;
    return r;
  }
  std::pair<int, std::int64_t> split(std::int64_t a) const {
    int v = 0;
    while (a % p_ == 0) {
      a /= p_;
      ++v;
    }
    return {v, a};
  }
  void normalize(std::vector<std::int64_t>& r, int c, std::int64_t unit) const {
    std::int64_t inv = mod_inverse(unit, mod_);
    for (int j = c; j < width_; ++j) r[j] = mod_norm(r[j] * inv, mod_);
  }
  std::vector<std::int64_t> scaled(const std::vector<std::int64_t>& r, std::int64_t f) const {
    std::vector<std::int64_t> s(r.size());
    for (std::size_t j = 0; j < r.size(); ++j) s[j] = mod_norm(r[j] * f, mod_);
    return s;
  }

  std::int64_t p_;
  std::int64_t mod_;
  int width_;
  std::vector<std::optional<std::vector<std::int64_t>>> rows_;
};

inline std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
  std::vector<std::pair<std::int64_t, int>> f;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e > 0) f.emplace_back(p, e);
  }
  if (n > 1) f.emplace_back(n, 1);
  return f;
}

}  // namespace detail

/// Solves a system of linear congruences modulo `modulus` (>= 1) in
/// `num_vars` unknowns and returns the lexicographically least solution with
/// entries in [0, modulus), x_0 most significant, or nullopt.
///
/// Each prime-power component is brought to Howell form with the unknowns
/// in reverse order, so back-substitution fixes x_0 first. In Howell form
/// every admissible value of the current unknown extends to a full local
/// solution, and the admissible values form a single residue class; the
/// classes of all primes are merged by the Chinese remainder theorem and the
/// least representative is taken.
inline std::optional<std::vector<std::int64_t>> solve_congruences(const std::vector<CongruenceRow>& rows, int num_vars,
                                                                  std::int64_t modulus) {
  if (modulus < 1) throw std::invalid_argument("solve_congruences: modulus must be >= 1");
  std::vector<std::int64_t> x(num_vars, 0);
  if (modulus == 1) return x;
  const int rhs = num_vars;
  auto col_of = [&](int var) { return num_vars - 1 - var; };

  std::vector<detail::LocalEchelon> locals;
  for (auto [p, e] : detail::factorize(modulus)) {
    detail::LocalEchelon ech(p, e, num_vars + 1);
    std::int64_t m = ech.modulus();
    for (const auto& row : rows) {
      std::vector<std::int64_t> dense(num_vars + 1, 0);
      for (auto [var, coeff] : row.terms) {
        if (var < 0 || var >= num_vars) throw std::out_of_range("solve_congruences: variable index");
        dense[col_of(var)] = detail::mod_norm(dense[col_of(var)] + coeff, m);
      }
      dense[rhs] = detail::mod_norm(row.rhs, m);
      bool nonzero = false;
      for (auto v : dense) nonzero = nonzero || v != 0;
      if (nonzero) ech.insert(std::move(dense));
    }
    if (ech.inconsistent()) return std::nullopt;
    locals.push_back(std::move(ech));
  }

  for (int var = 0; var < num_vars; ++var) {
    const int c = col_of(var);
    // Merge x == a (mod m) over all primes.
    std::int64_t a = 0, m = 1;
    for (const auto& ech : locals) {
      const auto& r = ech.row(c);
      if (!r) continue;
      const std::int64_t pm = ech.modulus();
      std::int64_t s = (*r)[rhs];
      for (int j = c + 1; j < rhs; ++j) {
        // Column j belongs to an unknown with smaller index, already fixed.
        if ((*r)[j] != 0) s = detail::mod_norm(s - (*r)[j] * detail::mod_norm(x[num_vars - 1 - j], pm), pm);
      }
      std::int64_t pv = (*r)[c];  // a power of p after normalization
      if (s % pv != 0) throw InternalError("solve_congruences: Howell back-substitution failed");
      std::int64_t lm = pm / pv;
      std::int64_t la = detail::mod_norm(s / pv, lm);
      std::int64_t t = detail::mod_norm((la - a) % lm * detail::mod_inverse(m % lm, lm), lm);
      a += m * t;
      m *= lm;
    }
    x[var] = a;
  }
  return x;
}

}  // namespace staraut
