#pragma once
#include <boost/multiprecision/cpp_int.hpp>
#include <complex>
#include <map>
#include <optional>
#include <string>

#include "plectic/error.hpp"

namespace plectic {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

std::string rational_str(const Rational& r);

// Gaussian rational a + b*i.  A field, so division by any nonzero value is exact.
struct GaussRat {
  Rational re, im;

  GaussRat() : re(0), im(0) {}
  GaussRat(long n) : re(n), im(0) {}
  GaussRat(Rational r) : re(std::move(r)), im(0) {}
  GaussRat(Rational r, Rational j) : re(std::move(r)), im(std::move(j)) {}
  static GaussRat i() { return GaussRat(Rational(0), Rational(1)); }

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }
  GaussRat conj() const { return GaussRat(re, -im); }
  Rational norm() const { return re * re + im * im; }

  GaussRat operator-() const { return GaussRat(-re, -im); }
  GaussRat& operator+=(const GaussRat& o) { re += o.re; im += o.im; return *this; }
  GaussRat& operator-=(const GaussRat& o) { re -= o.re; im -= o.im; return *this; }
  friend GaussRat operator+(GaussRat a, const GaussRat& b) { a += b; return a; }
  friend GaussRat operator-(GaussRat a, const GaussRat& b) { a -= b; return a; }
  friend GaussRat operator*(const GaussRat& a, const GaussRat& b) {
    return GaussRat(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
  }
  friend GaussRat operator/(const GaussRat& a, const GaussRat& b) {
    require(!b.is_zero(), Errc::NotDivisible, "division of Gaussian rational by zero");
    Rational n = b.norm();
    GaussRat p = a * b.conj();
    return GaussRat(p.re / n, p.im / n);
  }
  bool operator==(const GaussRat& o) const = default;

  std::complex<double> numeric() const {
    return {static_cast<double>(re), static_cast<double>(im)};
  }
};

// Element of Q(i)[tau, tau^-1] where tau stands for 2*pi.  Stored as a sparse
// Laurent polynomial, exponent -> nonzero Gaussian rational coefficient.
// This ring is where every exact computation in the library lives: periods of
// Fourier modes contribute tau^-1 factors, derivatives of Fourier modes
// contribute i*tau factors, and everything else is rational.
class Scalar {
public:
  Scalar() = default;
  Scalar(long n) { if (n != 0) terms_[0] = GaussRat(n); }
  Scalar(Rational r) { if (r != 0) terms_[0] = GaussRat(std::move(r)); }
  Scalar(GaussRat g) { if (!g.is_zero()) terms_[0] = std::move(g); }
  static Scalar i() { return Scalar(GaussRat::i()); }
  static Scalar tau(int k = 1) {
    Scalar s;
    s.terms_[k] = GaussRat(1);
    return s;
  }
  static Scalar term(GaussRat c, int k) {
    Scalar s;
    if (!c.is_zero()) s.terms_[k] = std::move(c);
    return s;
  }

  bool is_zero() const { return terms_.empty(); }
  bool is_monomial() const { return terms_.size() == 1; }
  // True when the value lies in Q (a single tau^0 real term, or zero).
  bool is_rational() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && terms_.begin()->first == 0 && terms_.begin()->second.is_real();
  }
  bool is_integer() const {
    return is_rational() && (terms_.empty() || denominator(terms_.begin()->second.re) == 1);
  }
  Rational as_rational() const {
    require(is_rational(), Errc::NotRepresentable, "scalar " + str() + " is not rational");
    return terms_.empty() ? Rational(0) : terms_.begin()->second.re;
  }
  const std::map<int, GaussRat>& terms() const { return terms_; }
  int min_exp() const { return terms_.begin()->first; }
  int max_exp() const { return terms_.rbegin()->first; }

  Scalar operator-() const {
    Scalar r;
    for (auto& [k, c] : terms_) r.terms_[k] = -c;
    return r;
  }
  Scalar& operator+=(const Scalar& o) {
    for (auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
  }
  Scalar& operator-=(const Scalar& o) {
    for (auto& [k, c] : o.terms_) add_term(k, -c);
    return *this;
  }
  friend Scalar operator+(Scalar a, const Scalar& b) { a += b; return a; }
  friend Scalar operator-(Scalar a, const Scalar& b) { a -= b; return a; }
  friend Scalar operator*(const Scalar& a, const Scalar& b) {
    Scalar r;
    for (auto& [ka, ca] : a.terms_)
      for (auto& [kb, cb] : b.terms_) r.add_term(ka + kb, ca * cb);
    return r;
  }
  Scalar& operator*=(const Scalar& o) { *this = *this * o; return *this; }
  bool operator==(const Scalar& o) const { return terms_ == o.terms_; }

  Scalar conj() const {
    Scalar r;
    for (auto& [k, c] : terms_) r.terms_[k] = c.conj();
    return r;
  }

  Scalar pow(int e) const;

  // Units of the Laurent ring are the nonzero monomials.
  std::optional<Scalar> inverse() const {
    if (!is_monomial()) return std::nullopt;
    auto& [k, c] = *terms_.begin();
    return term(GaussRat(1) / c, -k);
  }

  // Exact quotient when the result stays inside Q(i)[tau, tau^-1].
  std::optional<Scalar> div_exact(const Scalar& den) const;

  std::string str() const;
  std::complex<double> numeric() const;

private:
  void add_term(int k, const GaussRat& c) {
    auto it = terms_.find(k);
    if (it == terms_.end()) {
      if (!c.is_zero()) terms_[k] = c;
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  std::map<int, GaussRat> terms_;
};

inline Scalar operator*(const Rational& r, const Scalar& s) { return Scalar(r) * s; }

}  // namespace plectic
