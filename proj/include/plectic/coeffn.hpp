#pragma once
#include <map>
#include <vector>

#include "plectic/chart.hpp"
#include "plectic/scalar.hpp"

namespace plectic {

// One product of coordinate powers and Fourier modes on a chart:
//   x^alpha * E_wave   with   E_k(x) = exp(i*tau*(k.x)), tau = 2*pi.
struct Monomial {
  std::vector<int> alpha;
  std::vector<int> wave;
  auto operator<=>(const Monomial&) const = default;
};

// Returns exp(i*tau*q) as an exact scalar when q is a quarter integer.
std::optional<Scalar> quarter_phase(const Rational& q);

// Coefficient function: finite sum of monomials with Scalar coefficients.
// Chart invariants are enforced on every insertion: periodic manifold axes
// carry no polynomial powers, non-periodic axes carry no wave numbers, and
// patch charts are purely polynomial.
class CoefFn {
public:
  CoefFn() = default;
  explicit CoefFn(ChartPtr chart) : chart_(std::move(chart)) {}

  static CoefFn constant(ChartPtr chart, Scalar c) {
    CoefFn f(std::move(chart));
    f.add_term(Monomial{std::vector<int>(f.chart_->dim, 0), std::vector<int>(f.chart_->dim, 0)},
               std::move(c));
    return f;
  }
  static CoefFn coordinate(ChartPtr chart, int axis) {
    CoefFn f(std::move(chart));
    Monomial m{std::vector<int>(f.chart_->dim, 0), std::vector<int>(f.chart_->dim, 0)};
    m.alpha[axis] = 1;
    f.add_term(std::move(m), Scalar(1));
    return f;
  }
  static CoefFn fourier(ChartPtr chart, std::vector<int> wave) {
    CoefFn f(std::move(chart));
    f.add_term(Monomial{std::vector<int>(f.chart_->dim, 0), std::move(wave)}, Scalar(1));
    return f;
  }

  const ChartPtr& chart() const { return chart_; }
  const std::map<Monomial, Scalar>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(Monomial m, Scalar c);

  CoefFn operator-() const {
    CoefFn r(chart_);
    for (auto& [m, c] : terms_) r.terms_[m] = -c;
    return r;
  }
  CoefFn& operator+=(const CoefFn& o);
  CoefFn& operator-=(const CoefFn& o) { return *this += -o; }
  friend CoefFn operator+(CoefFn a, const CoefFn& b) { a += b; return a; }
  friend CoefFn operator-(CoefFn a, const CoefFn& b) { a -= b; return a; }
  friend CoefFn operator*(const CoefFn& a, const CoefFn& b);
  friend CoefFn operator*(const Scalar& s, const CoefFn& f) {
    CoefFn r(f.chart_);
    if (s.is_zero()) return r;
    for (auto& [m, c] : f.terms_) r.add_term(m, s * c);
    return r;
  }
  bool operator==(const CoefFn& o) const { return terms_ == o.terms_; }

  CoefFn derivative(int axis) const;

  // Composition with an affine map: this lives on map.dst, the result on
  // map.src.  Throws NotRepresentable when a Fourier mode would leave the
  // exact ring (non quarter-integer phase) or land on an axis that cannot
  // carry it.
  CoefFn pullback(const AffineMap& map) const;

  // Exact value; requires every accumulated phase to be a quarter integer.
  Scalar evaluate_exact(const std::vector<Rational>& x) const;
  std::complex<double> evaluate_numeric(const std::vector<double>& x) const;

  // Constant test; returns the value when no term depends on a coordinate.
  std::optional<Scalar> constant_value() const;

  int max_poly_degree() const;
  std::string str() const;

private:
  ChartPtr chart_;
  std::map<Monomial, Scalar> terms_;
};

}  // namespace plectic
