#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "spectra/error.hpp"

namespace spectra {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Dense integer polynomial, coefficient i multiplies x^i. The zero
/// polynomial has no coefficients; otherwise the leading one is nonzero.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { trim(); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<BigInt>& coeffs() const { return c_; }
  const BigInt& operator[](int i) const { return c_.at(i); }
  const BigInt& leading() const { return c_.back(); }

  BigInt eval(const BigInt& x) const {
    BigInt v = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * x + *it;
    return v;
  }

  BigRational eval(const BigRational& x) const {
    BigRational v = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * x + BigRational(*it);
    return v;
  }

  /// 2^(k*deg) * p(a / 2^k), an exact integer whose sign is that of p(a / 2^k).
  BigInt eval_dyadic(const BigInt& a, unsigned k) const {
    if (c_.empty()) return 0;
    const int n = degree();
    BigInt v = c_[n];
    for (int i = n - 1; i >= 0; --i) v = v * a + (c_[i] << (k * static_cast<unsigned>(n - i)));
    return v;
  }

  int sign_at_dyadic(const BigInt& a, unsigned k) const {
    const BigInt v = eval_dyadic(a, k);
    return v > 0 ? 1 : (v < 0 ? -1 : 0);
  }

  IntPoly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<BigInt> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<long>(i);
    return IntPoly(std::move(d));
  }

  BigInt content() const {
    BigInt g = 0;
    for (const auto& x : c_) g = gcd(g, abs(x));
    return g;
  }

  // Divided by its content, with positive leading coefficient.
  IntPoly primitive() const {
    if (c_.empty()) return {};
    BigInt g = content();
    if (leading() < 0) g = -g;
    std::vector<BigInt> out(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) out[i] = c_[i] / g;
    return IntPoly(std::move(out));
  }

  /// Number of real roots strictly greater than a / 2^k, counted with
  /// multiplicity. Uses Descartes' rule on the shifted polynomial, which is
  /// exact when every root is real (the case for characteristic polynomials
  /// of symmetric matrices and their factors).
  int roots_above_dyadic(const BigInt& a, unsigned k) const {
    if (c_.empty()) throw InvalidParameter("roots of the zero polynomial");
    const int n = degree();
    // Scaled polynomial P(z) = 2^(k n) p(z / 2^k), then Taylor shift z -> z + a.
    std::vector<BigInt> s(c_.size());
    for (int i = 0; i <= n; ++i) s[i] = c_[i] << (k * static_cast<unsigned>(n - i));
    for (int i = 0; i < n; ++i)
      for (int j = n - 1; j >= i; --j) s[j] += a * s[j + 1];
    std::size_t lo = 0;
    while (lo < s.size() && s[lo] == 0) ++lo;
    int changes = 0, prev = 0;
    for (std::size_t i = lo; i < s.size(); ++i) {
      const int sg = s[i] > 0 ? 1 : (s[i] < 0 ? -1 : 0);
      if (sg == 0) continue;
      if (prev != 0 && sg != prev) ++changes;
      prev = sg;
    }
    return changes;
  }

  friend bool operator==(const IntPoly&, const IntPoly&) = default;

  friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<BigInt> out(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    return IntPoly(std::move(out));
  }

  // Constant term first, space separated.
  std::string to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < c_.size(); ++i) os << (i ? " " : "") << c_[i];
    return os.str();
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<BigInt> c_;
};

// Pseudo-remainder of a by b (b non-zero), made primitive.
inline IntPoly primitive_prem(const IntPoly& a, const IntPoly& b) {
  std::vector<BigInt> r = a.coeffs();
  const auto& bc = b.coeffs();
  const int db = b.degree();
  const BigInt& lb = b.leading();
  while (static_cast<int>(r.size()) - 1 >= db && !r.empty()) {
    const int dr = static_cast<int>(r.size()) - 1;
    const BigInt lr = r.back();
    for (auto& x : r) x *= lb;
    for (int i = 0; i <= db; ++i) r[dr - db + i] -= lr * bc[i];
    while (!r.empty() && r.back() == 0) r.pop_back();
    if (!r.empty()) {
      IntPoly tmp(r);
      r = tmp.primitive().coeffs();
    }
  }
  return IntPoly(std::move(r)).primitive();
}

// Primitive greatest common divisor with positive leading coefficient.
inline IntPoly poly_gcd(const IntPoly& a, const IntPoly& b) {
  IntPoly x = a.primitive(), y = b.primitive();
  if (x.degree() < y.degree()) std::swap(x, y);
  while (!y.is_zero()) {
    IntPoly r = primitive_prem(x, y);
    x = std::move(y);
    y = std::move(r);
  }
  return x;
}

// Quotient a / b when b divides a exactly over the integers.
inline IntPoly divide_exact(const IntPoly& a, const IntPoly& b) {
  if (b.is_zero()) throw InvalidParameter("division by the zero polynomial");
  std::vector<BigInt> r = a.coeffs();
  const int db = b.degree();
  const int da = a.degree();
  if (da < db) {
    if (a.is_zero()) return {};
    throw InvalidParameter("divide_exact: divisor does not divide");
  }
  std::vector<BigInt> q(da - db + 1);
  for (int i = da; i >= db; --i) {
    if (r[i] == 0) continue;
    BigInt quo, rem;
    divide_qr(r[i], b.leading(), quo, rem);
    if (rem != 0) throw InvalidParameter("divide_exact: non-integral quotient");
    q[i - db] = quo;
    for (int j = 0; j <= db; ++j) r[i - db + j] -= quo * b[j];
  }
  for (const auto& x : r)
    if (x != 0) throw InvalidParameter("divide_exact: divisor does not divide");
  return IntPoly(std::move(q));
}

inline BigRational dyadic(const BigInt& a, unsigned k) { return BigRational(a, BigInt(1) << k); }

inline std::string rational_to_string(const BigRational& r) {
  std::ostringstream os;
  os << numerator(r);
  if (denominator(r) != 1) os << '/' << denominator(r);
  return os.str();
}

}  // namespace spectra
