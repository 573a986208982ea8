#include "plectic/scalar.hpp"

#include <cmath>
#include <sstream>

namespace plectic {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::ChartMismatch: return "ChartMismatch";
    case Errc::DegreeMismatch: return "DegreeMismatch";
    case Errc::NotClosed: return "NotClosed";
    case Errc::NotHamiltonian: return "NotHamiltonian";
    case Errc::NonConstantOmega: return "NonConstantOmega";
    case Errc::NotACocycle: return "NotACocycle";
    case Errc::GluingFailure: return "GluingFailure";
    case Errc::NotAPrimitive: return "NotAPrimitive";
    case Errc::UnknownScenario: return "UnknownScenario";
    case Errc::InvalidOverride: return "InvalidOverride";
    case Errc::NotRepresentable: return "NotRepresentable";
    case Errc::NonPeriodicAxis: return "NonPeriodicAxis";
    case Errc::NotDivisible: return "NotDivisible";
    case Errc::UnsupportedComponents: return "UnsupportedComponents";
    case Errc::WrongNerve: return "WrongNerve";
    case Errc::NotAComplex: return "NotAComplex";
    case Errc::ParseError: return "ParseError";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

std::string rational_str(const Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

Scalar Scalar::pow(int e) const {
  if (e == 0) return Scalar(1);
  if (e < 0) {
    auto inv = inverse();
    require(inv.has_value(), Errc::NotDivisible,
            "negative power of non-invertible scalar " + str());
    return inv->pow(-e);
  }
  Scalar acc(1), base = *this;
  for (int b = e; b > 0; b >>= 1) {
    if (b & 1) acc *= base;
    if (b > 1) base *= base;
  }
  return acc;
}

std::optional<Scalar> Scalar::div_exact(const Scalar& den) const {
  if (den.is_zero()) return std::nullopt;
  if (is_zero()) return Scalar();
  // Long division from the top exponent.  An exact Laurent quotient q of
  // num/den has max_exp(q) = max(num)-max(den) and min_exp(q) = min(num)-min(den),
  // which bounds the loop.
  int qmin = min_exp() - den.min_exp();
  Scalar q, r = *this;
  const auto& dlead = *den.terms_.rbegin();
  while (!r.is_zero()) {
    int e = r.max_exp() - den.max_exp();
    if (e < qmin) return std::nullopt;
    Scalar t = term(r.terms_.rbegin()->second / dlead.second, e);
    q += t;
    r -= t * den;
  }
  return q;
}

namespace {

// Renders a Gaussian rational; mixed values are parenthesized so the result
// re-parses as one factor.
std::string gauss_str(const GaussRat& g) {
  if (g.im == 0) return rational_str(g.re);
  std::string im_part;
  Rational a = abs(g.im);
  if (a == 1)
    im_part = "i";
  else
    im_part = rational_str(a) + "*i";
  if (g.re == 0) return (g.im < 0 ? "-" : "") + im_part;
  return "(" + rational_str(g.re) + (g.im < 0 ? "-" : "+") + im_part + ")";
}

}  // namespace

std::string Scalar::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (auto& [k, c] : terms_) {
    std::string t;
    if (k == 0) {
      t = gauss_str(c);
    } else {
      std::string tp = "tau^" + std::to_string(k);
      if (c == GaussRat(1))
        t = tp;
      else if (c == GaussRat(-1))
        t = "-" + tp;
      else
        t = gauss_str(c) + "*" + tp;
    }
    if (out.empty()) {
      out = t;
    } else if (t[0] == '-') {
      out += " - " + t.substr(1);
    } else {
      out += " + " + t;
    }
  }
  return out;
}

std::complex<double> Scalar::numeric() const {
  std::complex<double> acc(0.0, 0.0);
  const double tau = 2.0 * M_PI;
  for (auto& [k, c] : terms_) acc += c.numeric() * std::pow(tau, k);
  return acc;
}

}  // namespace plectic
