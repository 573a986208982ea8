#pragma once
#include <cstdint>
#include <random>
#include <vector>

#include "plectic/exterior.hpp"
#include "plectic/form.hpp"

namespace plectic::testing {

// All randomized tests draw through this wrapper: mt19937_64 plus modulo keeps
// every sequence identical across platforms and runs.
struct Rng {
  std::mt19937_64 gen;
  explicit Rng(uint64_t seed) : gen(seed) {}
  long below(long n) { return static_cast<long>(gen() % static_cast<uint64_t>(n)); }
  long range(long lo, long hi) { return lo + below(hi - lo + 1); }  // inclusive
  bool coin() { return below(2) == 1; }
};

inline Rational rand_rational(Rng& rng, long num_span = 6, long den_max = 4) {
  return Rational(rng.range(-num_span, num_span), rng.range(1, den_max));
}

inline Rational rand_nonzero_rational(Rng& rng, long num_span = 6, long den_max = 4) {
  Rational r = rand_rational(rng, num_span, den_max);
  return r == 0 ? Rational(1) : r;
}

inline CoefFn rand_coeffn(const ChartPtr& chart, Rng& rng, int max_deg = 2, int band = 1,
                          int nterms = 2) {
  CoefFn f(chart);
  for (int t = 0; t < nterms; ++t) {
    Monomial m{std::vector<int>(chart->dim, 0), std::vector<int>(chart->dim, 0)};
    for (int j = 0; j < chart->dim; ++j) {
      if (chart->allows_poly(j)) m.alpha[j] = static_cast<int>(rng.below(max_deg + 1));
      if (chart->allows_fourier(j)) m.wave[j] = static_cast<int>(rng.range(-band, band));
    }
    f.add_term(std::move(m), Scalar(rand_rational(rng)));
  }
  return f;
}

inline std::vector<std::vector<int>> sorted_tuples(int dim, int deg) {
  std::vector<std::vector<int>> out;
  if (deg > dim) return out;
  std::vector<int> idx(deg);
  for (int i = 0; i < deg; ++i) idx[i] = i;
  while (true) {
    out.push_back(idx);
    int i = deg - 1;
    while (i >= 0 && idx[i] == dim - deg + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < deg; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

inline Form rand_form(const ChartPtr& chart, int deg, Rng& rng, int max_deg = 2, int band = 1) {
  Form w(chart, deg);
  for (auto& t : sorted_tuples(chart->dim, deg))
    w.add_component(t, rand_coeffn(chart, rng, max_deg, band));
  return w;
}

inline MultiVector rand_field(const ChartPtr& chart, Rng& rng, int max_deg = 2, int band = 1) {
  MultiVector v(chart, 1);
  for (int j = 0; j < chart->dim; ++j)
    v.add_component({j}, rand_coeffn(chart, rng, max_deg, band));
  return v;
}

}  // namespace plectic::testing
