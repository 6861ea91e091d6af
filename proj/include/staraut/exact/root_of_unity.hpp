#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>

namespace staraut {

/// exp(2*pi*i * num/den), stored as the reduced exponent num/den in [0, 1).
///
/// The group law is addition of exponents mod 1, done in exact integer
/// arithmetic. The identity is 0/1.
class RootOfUnity {
 public:
  constexpr RootOfUnity() = default;

  /// Builds exp(2*pi*i * num/den) for any integer num and den >= 1.
  static RootOfUnity from_fraction(std::int64_t num, std::int64_t den) {
    if (den < 1) throw std::invalid_argument("RootOfUnity: denominator must be >= 1");
    RootOfUnity r;
    r.set(num, den);
    return r;
  }

  /// The primitive n-th root exp(2*pi*i/n).
  static RootOfUnity primitive(std::int64_t n) { return from_fraction(1, n); }

  static constexpr RootOfUnity one() { return RootOfUnity{}; }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }

  /// Multiplicative order; equals the reduced denominator.
  std::int64_t order() const { return den_; }
  bool is_one() const { return num_ == 0; }

  RootOfUnity operator*(const RootOfUnity& o) const {
    std::int64_t l = std::lcm(den_, o.den_);
    RootOfUnity r;
    r.set(num_ * (l / den_) + o.num_ * (l / o.den_), l);
    return r;
  }
  RootOfUnity& operator*=(const RootOfUnity& o) { return *this = *this * o; }

  RootOfUnity inverse() const {
    RootOfUnity r;
    r.set(-num_, den_);
    return r;
  }
  RootOfUnity operator/(const RootOfUnity& o) const { return *this * o.inverse(); }

  RootOfUnity pow(std::int64_t k) const {
    // k only matters modulo the order.
    std::int64_t kk = k % den_;
    if (kk < 0) kk += den_;
    RootOfUnity r;
    r.set(static_cast<std::int64_t>((static_cast<__int128>(num_) * kk) % den_), den_);
    return r;
  }

  /// Principal branch: halves the exponent in [0, 1), so the result lies on
  /// the upper half circle (or is 1). The square of the result is *this.
  RootOfUnity principal_sqrt() const {
    RootOfUnity r;
    r.set(num_, 2 * den_);
    return r;
  }

  /// Exponent numerator once written over denominator d (d must be a
  /// multiple of den()).
  std::int64_t numerator_over(std::int64_t d) const {
    if (d % den_ != 0) throw std::invalid_argument("RootOfUnity: denominator does not divide");
    return num_ * (d / den_);
  }

  friend bool operator==(const RootOfUnity&, const RootOfUnity&) = default;
  // Ordered by exponent value in [0, 1).
  friend std::strong_ordering operator<=>(const RootOfUnity& a, const RootOfUnity& b) {
    return static_cast<__int128>(a.num_) * b.den_ <=> static_cast<__int128>(b.num_) * a.den_;
  }

  std::string to_string() const { return std::to_string(num_) + "/" + std::to_string(den_); }

 private:
  void set(std::int64_t num, std::int64_t den) {
    num %= den;
    if (num < 0) num += den;
    std::int64_t g = std::gcd(num, den);
    if (num == 0) {
      num_ = 0;
      den_ = 1;
    } else {
      num_ = num / g;
      den_ = den / g;
    }
  }

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

inline std::ostream& operator<<(std::ostream& os, const RootOfUnity& r) { return os << r.to_string(); }

// Free-function spellings used throughout the tables code.
inline RootOfUnity ru_mul(const RootOfUnity& x, const RootOfUnity& y) { return x * y; }
inline RootOfUnity ru_pow(const RootOfUnity& x, std::int64_t k) { return x.pow(k); }
inline RootOfUnity ru_principal_sqrt(const RootOfUnity& x) { return x.principal_sqrt(); }

}  // namespace staraut
