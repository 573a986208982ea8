#pragma once
#include <algorithm>
#include <map>
#include <vector>

#include "plectic/coeffn.hpp"

namespace plectic {

// Sorts idx ascending, returns the sign of the permutation, 0 on repeats.
inline int sort_sign(std::vector<int>& idx) {
  int sign = 1;
  for (size_t i = 1; i < idx.size(); ++i)
    for (size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
      if (idx[j - 1] == idx[j]) return 0;
      std::swap(idx[j - 1], idx[j]);
      sign = -sign;
    }
  return sign;
}

enum class Variance { Co, Contra };

// Alternating tensor of fixed degree with CoefFn components, stored on
// strictly increasing index tuples.  Covariant instances are differential
// forms (basis dx_T), contravariant ones are multivector fields.
template <Variance V>
class Alternating {
public:
  Alternating() = default;
  // Degrees above the chart dimension are allowed; those spaces are zero.
  Alternating(ChartPtr chart, int degree) : chart_(std::move(chart)), degree_(degree) {
    require(degree_ >= 0, Errc::DegreeMismatch, "negative tensor degree");
  }

  const ChartPtr& chart() const { return chart_; }
  int degree() const { return degree_; }
  bool is_zero() const { return comps_.empty(); }
  const std::map<std::vector<int>, CoefFn>& components() const { return comps_; }

  // Adds f on the (possibly unsorted) tuple idx, folding in the sort sign.
  void add_component(std::vector<int> idx, const CoefFn& f) {
    require(static_cast<int>(idx.size()) == degree_, Errc::DegreeMismatch,
            "component tuple length != degree");
    require_compatible(f.chart(), chart_, "add_component");
    if (f.is_zero()) return;
    int sign = sort_sign(idx);
    if (sign == 0) return;
    for (int a : idx)
      require(a >= 0 && a < chart_->dim, Errc::InvalidArgument, "axis index out of range");
    auto it = comps_.find(idx);
    CoefFn g = (sign > 0) ? f : -f;
    if (it == comps_.end()) {
      comps_.emplace(std::move(idx), std::move(g));
    } else {
      it->second += g;
      if (it->second.is_zero()) comps_.erase(it);
    }
  }

  const CoefFn component(const std::vector<int>& idx) const {
    auto it = comps_.find(idx);
    return it != comps_.end() ? it->second : CoefFn(chart_);
  }

  Alternating operator-() const {
    Alternating r(chart_, degree_);
    for (auto& [t, f] : comps_) r.comps_[t] = -f;
    return r;
  }
  // Zero tensors add and compare across degree labels: the zero lives in
  // every degree, and contraction below the bottom degree produces it.
  Alternating& operator+=(const Alternating& o) {
    require_compatible(chart_, o.chart_, "Alternating::operator+=");
    if (o.is_zero()) return *this;
    if (is_zero()) {
      *this = o;
      return *this;
    }
    require(degree_ == o.degree_, Errc::DegreeMismatch, "sum of different degrees");
    for (auto& [t, f] : o.comps_) add_component(t, f);
    return *this;
  }
  Alternating& operator-=(const Alternating& o) { return *this += -o; }
  friend Alternating operator+(Alternating a, const Alternating& b) { a += b; return a; }
  friend Alternating operator-(Alternating a, const Alternating& b) { a -= b; return a; }
  friend Alternating operator*(const Scalar& s, const Alternating& w) {
    Alternating r(w.chart_, w.degree_);
    if (s.is_zero()) return r;
    for (auto& [t, f] : w.comps_) r.comps_[t] = s * f;
    return r;
  }
  friend Alternating operator*(const CoefFn& g, const Alternating& w) {
    Alternating r(w.chart_, w.degree_);
    for (auto& [t, f] : w.comps_) r.add_component(t, g * f);
    return r;
  }
  bool operator==(const Alternating& o) const {
    if (is_zero() && o.is_zero()) return true;
    return degree_ == o.degree_ && comps_ == o.comps_;
  }

  friend Alternating wedge(const Alternating& a, const Alternating& b) {
    require_compatible(a.chart_, b.chart_, "wedge");
    Alternating r(a.chart_, a.degree_ + b.degree_);
    for (auto& [s, f] : a.comps_)
      for (auto& [t, g] : b.comps_) {
        std::vector<int> u = s;
        u.insert(u.end(), t.begin(), t.end());
        r.add_component(std::move(u), f * g);
      }
    return r;
  }
  friend Alternating operator^(const Alternating& a, const Alternating& b) {
    return wedge(a, b);
  }

  std::string str() const;

private:
  ChartPtr chart_;
  int degree_ = 0;
  std::map<std::vector<int>, CoefFn> comps_;
};

using Form = Alternating<Variance::Co>;
using MultiVector = Alternating<Variance::Contra>;

inline Form form_from_function(const CoefFn& f) {
  Form w(f.chart(), 0);
  w.add_component({}, f);
  return w;
}

// Basis covector dx_axis.
inline Form dx(const ChartPtr& chart, int axis) {
  Form w(chart, 1);
  w.add_component({axis}, CoefFn::constant(chart, Scalar(1)));
  return w;
}

// Basis field along one axis.
inline MultiVector basis_field(const ChartPtr& chart, int axis) {
  MultiVector v(chart, 1);
  v.add_component({axis}, CoefFn::constant(chart, Scalar(1)));
  return v;
}

}  // namespace plectic
