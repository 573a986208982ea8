#include "plectic/coeffn.hpp"

#include <cmath>
#include <sstream>

namespace plectic {

std::optional<Scalar> quarter_phase(const Rational& q) {
  Rational t = q * 4;
  if (denominator(t) != 1) return std::nullopt;
  Integer m = numerator(t) % 4;
  if (m < 0) m += 4;
  switch (static_cast<int>(m)) {
    case 0: return Scalar(1);
    case 1: return Scalar::i();
    case 2: return Scalar(-1);
    default: return -Scalar::i();
  }
}

namespace {

Scalar phase_or_throw(const Rational& q) {
  auto p = quarter_phase(q);
  require(p.has_value(), Errc::NotRepresentable,
          "phase exp(i*tau*" + rational_str(q) + ") is not a quarter turn");
  return *p;
}

Rational rational_pow(const Rational& base, int e) {
  Rational acc = 1;
  for (int t = 0; t < e; ++t) acc *= base;
  return acc;
}

Rational binom(int n, int k) {
  Rational acc = 1;
  for (int t = 1; t <= k; ++t) acc = acc * (n - k + t) / t;
  return acc;
}

}  // namespace

void CoefFn::add_term(Monomial m, Scalar c) {
  require(chart_ != nullptr, Errc::InvalidArgument, "CoefFn without a chart");
  require(static_cast<int>(m.alpha.size()) == chart_->dim &&
              static_cast<int>(m.wave.size()) == chart_->dim,
          Errc::InvalidArgument, "monomial arity != chart dimension");
  for (int j = 0; j < chart_->dim; ++j) {
    require(m.alpha[j] >= 0, Errc::InvalidArgument, "negative coordinate power");
    if (m.alpha[j] != 0)
      require(chart_->allows_poly(j), Errc::NotRepresentable,
              "polynomial data on periodic axis " + std::to_string(j) + " of " + chart_->name);
    if (m.wave[j] != 0)
      require(chart_->allows_fourier(j), Errc::NotRepresentable,
              "Fourier mode on non-periodic axis " + std::to_string(j) + " of " + chart_->name);
  }
  if (c.is_zero()) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(std::move(m), std::move(c));
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

CoefFn& CoefFn::operator+=(const CoefFn& o) {
  if (chart_ == nullptr) {
    *this = o;
    return *this;
  }
  require_compatible(chart_, o.chart_, "CoefFn::operator+=");
  for (auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

CoefFn operator*(const CoefFn& a, const CoefFn& b) {
  require_compatible(a.chart_, b.chart_, "CoefFn::operator*");
  CoefFn r(a.chart_);
  for (auto& [ma, ca] : a.terms_)
    for (auto& [mb, cb] : b.terms_) {
      Monomial m = ma;
      for (int j = 0; j < a.chart_->dim; ++j) {
        m.alpha[j] += mb.alpha[j];
        m.wave[j] += mb.wave[j];
      }
      r.add_term(std::move(m), ca * cb);
    }
  return r;
}

CoefFn CoefFn::derivative(int axis) const {
  CoefFn r(chart_);
  for (auto& [m, c] : terms_) {
    if (m.alpha[axis] != 0) {
      Monomial m2 = m;
      m2.alpha[axis] -= 1;
      r.add_term(std::move(m2), Scalar(static_cast<long>(m.alpha[axis])) * c);
    }
    if (m.wave[axis] != 0) {
      // d/dx E_k = i*tau*k_axis * E_k
      r.add_term(m, Scalar::i() * Scalar::tau() * Scalar(static_cast<long>(m.wave[axis])) * c);
    }
  }
  return r;
}

CoefFn CoefFn::pullback(const AffineMap& map) const {
  require_compatible(chart_, map.dst, "pullback: function does not live on the map target");
  const ChartPtr& src = map.src;
  require(static_cast<int>(map.axes.size()) == chart_->dim, Errc::InvalidArgument,
          "affine map arity != chart dimension");
  CoefFn out(src);
  std::vector<int> zeros(src->dim, 0);
  for (auto& [m, c] : terms_) {
    CoefFn acc = CoefFn::constant(src, c);
    for (int j = 0; j < chart_->dim && !acc.is_zero(); ++j) {
      int a = m.alpha[j], k = m.wave[j];
      if (a == 0 && k == 0) continue;
      const auto& rule = map.axes[j];
      CoefFn factor(src);
      if (rule.from < 0) {
        Scalar v(1);
        if (a != 0) v *= Scalar(rational_pow(rule.shift, a));
        if (k != 0) v *= phase_or_throw(Rational(k) * rule.shift);
        factor = CoefFn::constant(src, v);
      } else {
        int s = rule.from;
        factor = CoefFn::constant(src, Scalar(1));
        if (a != 0) {
          require(src->allows_poly(s), Errc::NotRepresentable,
                  "coordinate power lands on periodic axis " + std::to_string(s));
          CoefFn poly(src);
          for (int t = 0; t <= a; ++t) {
            Monomial mm{zeros, zeros};
            mm.alpha[s] = t;
            poly.add_term(std::move(mm), Scalar(binom(a, t) * rational_pow(rule.shift, a - t)));
          }
          factor = factor * poly;
        }
        if (k != 0) {
          require(src->allows_fourier(s), Errc::NotRepresentable,
                  "Fourier mode lands on non-periodic axis " + std::to_string(s) + " of " +
                      src->name);
          Monomial mm{zeros, zeros};
          mm.wave[s] = k;
          CoefFn wavef(src);
          wavef.add_term(std::move(mm), phase_or_throw(Rational(k) * rule.shift));
          factor = factor * wavef;
        }
      }
      acc = acc * factor;
    }
    out += acc;
  }
  return out;
}

Scalar CoefFn::evaluate_exact(const std::vector<Rational>& x) const {
  require(static_cast<int>(x.size()) == chart_->dim, Errc::InvalidArgument,
          "point arity != chart dimension");
  Scalar acc;
  for (auto& [m, c] : terms_) {
    Rational poly = 1, phase = 0;
    for (int j = 0; j < chart_->dim; ++j) {
      if (m.alpha[j] != 0) poly *= rational_pow(x[j], m.alpha[j]);
      if (m.wave[j] != 0) phase += Rational(m.wave[j]) * x[j];
    }
    acc += Scalar(poly) * phase_or_throw(phase) * c;
  }
  return acc;
}

std::complex<double> CoefFn::evaluate_numeric(const std::vector<double>& x) const {
  std::complex<double> acc(0, 0);
  const double tau = 2.0 * M_PI;
  for (auto& [m, c] : terms_) {
    double poly = 1, phase = 0;
    for (int j = 0; j < chart_->dim; ++j) {
      poly *= std::pow(x[j], m.alpha[j]);
      phase += m.wave[j] * x[j];
    }
    acc += c.numeric() * poly * std::exp(std::complex<double>(0, tau * phase));
  }
  return acc;
}

std::optional<Scalar> CoefFn::constant_value() const {
  if (terms_.empty()) return Scalar();
  if (terms_.size() > 1) return std::nullopt;
  auto& [m, c] = *terms_.begin();
  for (int j = 0; j < chart_->dim; ++j)
    if (m.alpha[j] != 0 || m.wave[j] != 0) return std::nullopt;
  return c;
}

int CoefFn::max_poly_degree() const {
  int deg = 0;
  for (auto& [m, c] : terms_) {
    int t = 0;
    for (int a : m.alpha) t += a;
    deg = std::max(deg, t);
  }
  return deg;
}

std::string CoefFn::str() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (auto& [m, c] : terms_) {
    std::string t = c.is_monomial() || c.is_zero() ? c.str() : "(" + c.str() + ")";
    for (int j = 0; j < chart_->dim; ++j) {
      if (m.alpha[j] != 0) {
        t += "*x" + std::to_string(j);
        if (m.alpha[j] != 1) t += "^" + std::to_string(m.alpha[j]);
      }
    }
    bool any_wave = false;
    for (int j = 0; j < chart_->dim; ++j) any_wave = any_wave || m.wave[j] != 0;
    if (any_wave) {
      t += "*E[";
      for (int j = 0; j < chart_->dim; ++j)
        t += (j ? "," : "") + std::to_string(m.wave[j]);
      t += "]";
    }
    out += out.empty() ? t : " + " + t;
  }
  return out;
}

}  // namespace plectic
