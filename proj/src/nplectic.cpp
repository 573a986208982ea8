#include "plectic/nplectic.hpp"

#include <algorithm>

namespace plectic {

PreNPlectic check_pre_nplectic(const Form& omega, int n) {
  require(n >= 1, Errc::InvalidArgument, "plectic degree must be at least 1");
  require(omega.chart() != nullptr, Errc::InvalidArgument, "form without a chart");
  require(omega.degree() == n + 1 || omega.is_zero(), Errc::DegreeMismatch,
          "omega has degree " + std::to_string(omega.degree()) + ", expected " +
              std::to_string(n + 1));
  Form dw = d(omega);
  require(dw.is_zero(), Errc::NotClosed, "d(omega) = " + dw.str());
  PreNPlectic p;
  p.chart = omega.chart();
  p.n = n;
  p.omega = omega;
  return p;
}

Form hamiltonian_residual(const PreNPlectic& p, const MultiVector& v, const Form& h) {
  require(v.degree() == 1, Errc::DegreeMismatch, "Hamiltonian field must have degree 1");
  require(h.degree() == p.n - 1 || h.is_zero(), Errc::DegreeMismatch,
          "Hamiltonian form has degree " + std::to_string(h.degree()) + ", expected " +
              std::to_string(p.n - 1));
  return contract(v, p.omega) + d(h);
}

HamiltonianPair make_hamiltonian_pair(const PreNPlectic& p, MultiVector v, Form h) {
  Form r = hamiltonian_residual(p, v, h);
  require(r.is_zero(), Errc::NotHamiltonian, "iota_v omega + dh = " + r.str());
  return HamiltonianPair{std::move(v), std::move(h)};
}

Observable Observable::pair(HamiltonianPair p) {
  Observable o;
  o.degree_ = 0;
  o.pair_ = std::move(p);
  return o;
}

Observable Observable::form(int degree, Form w) {
  require(degree >= 1, Errc::DegreeMismatch, "form observables have degree at least 1");
  Observable o;
  o.degree_ = degree;
  o.form_ = std::move(w);
  return o;
}

bool Observable::is_zero() const {
  if (degree_ < 0) return true;
  if (degree_ == 0) return pair_->v.is_zero() && pair_->h.is_zero();
  return form_.is_zero();
}

const HamiltonianPair& Observable::as_pair() const {
  require(degree_ == 0, Errc::DegreeMismatch, "observable is not a Hamiltonian pair");
  return *pair_;
}

const Form& Observable::as_form() const {
  require(degree_ >= 1, Errc::DegreeMismatch, "observable has no form payload");
  return form_;
}

Observable Observable::operator-() const {
  Observable o = *this;
  if (o.degree_ == 0) {
    o.pair_->v = -o.pair_->v;
    o.pair_->h = -o.pair_->h;
  } else if (o.degree_ > 0) {
    o.form_ = -o.form_;
  }
  return o;
}

Observable& Observable::operator+=(const Observable& o) {
  if (o.is_zero()) return *this;
  if (is_zero()) {
    *this = o;
    return *this;
  }
  require(degree_ == o.degree_, Errc::DegreeMismatch,
          "sum of observables in degrees " + std::to_string(degree_) + " and " +
              std::to_string(o.degree_));
  if (degree_ == 0) {
    pair_->v += o.pair_->v;
    pair_->h += o.pair_->h;
  } else {
    form_ += o.form_;
  }
  return *this;
}

Observable operator*(const Scalar& s, Observable o) {
  if (o.degree_ == 0) {
    o.pair_->v = s * o.pair_->v;
    o.pair_->h = s * o.pair_->h;
  } else if (o.degree_ > 0) {
    o.form_ = s * o.form_;
  }
  return o;
}

bool Observable::operator==(const Observable& o) const {
  if (is_zero() || o.is_zero()) return is_zero() && o.is_zero();
  if (degree_ != o.degree_) return false;
  if (degree_ == 0) return pair_->v == o.pair_->v && pair_->h == o.pair_->h;
  return form_ == o.form_;
}

std::string Observable::str() const {
  if (is_zero()) return "0";
  if (degree_ == 0) return "(v = " + pair_->v.str() + "; h = " + pair_->h.str() + ")";
  return "[deg " + std::to_string(degree_) + "] " + form_.str();
}

std::vector<MultiVector> kernel_at_point(const PreNPlectic& p, const std::vector<Rational>& x) {
  int dim = p.chart->dim;
  auto tuples = [&](int deg) {
    std::vector<std::vector<int>> out;
    std::vector<int> idx(deg);
    for (int i = 0; i < deg; ++i) idx[i] = i;
    if (deg > dim) return out;
    while (true) {
      out.push_back(idx);
      int i = deg - 1;
      while (i >= 0 && idx[i] == dim - deg + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < deg; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
  };
  auto rows = tuples(p.n);
  Matrix<Scalar> m(static_cast<int>(rows.size()), dim);
  for (int s = 0; s < dim; ++s) {
    Form c = contract(basis_field(p.chart, s), p.omega);
    for (size_t r = 0; r < rows.size(); ++r) m.at(static_cast<int>(r), s) = c.component(rows[r]).evaluate_exact(x);
  }
  std::vector<MultiVector> out;
  for (auto& vec : kernel_basis(m)) {
    MultiVector v(p.chart, 1);
    for (int s = 0; s < dim; ++s) v.add_component({s}, CoefFn::constant(p.chart, vec[s]));
    out.push_back(std::move(v));
  }
  return out;
}

bool nondegenerate_at(const PreNPlectic& p, const std::vector<Rational>& x) {
  return kernel_at_point(p, x).empty();
}

namespace {

std::vector<std::vector<int>> tuples_of(int dim, int deg) {
  std::vector<std::vector<int>> out;
  if (deg > dim || deg < 0) return out;
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

}  // namespace

HamiltonianSolution solve_hamiltonian(const PreNPlectic& p, const Form& h) {
  int dim = p.chart->dim;
  for (auto& [t, f] : p.omega.components())
    require(f.constant_value().has_value(), Errc::NonConstantOmega,
            "omega component on (" + std::to_string(t[0]) + ",...) is not constant");
  require(h.degree() == p.n - 1 || h.is_zero(), Errc::DegreeMismatch,
          "Hamiltonian form has degree " + std::to_string(h.degree()) + ", expected " +
              std::to_string(p.n - 1));
  auto rows = tuples_of(dim, p.n);
  Matrix<Scalar> m(static_cast<int>(rows.size()), dim);
  for (int s = 0; s < dim; ++s) {
    Form c = contract(basis_field(p.chart, s), p.omega);
    for (size_t r = 0; r < rows.size(); ++r)
      m.at(static_cast<int>(r), s) = c.component(rows[r]).constant_value().value();
  }
  Form dh = d(h);
  std::vector<CoefFn> rhs;
  rhs.reserve(rows.size());
  for (auto& t : rows) rhs.push_back(-dh.component(t));
  auto sol = solve(m, rhs);
  require(sol.has_value(), Errc::NotHamiltonian,
          "no field satisfies iota_v omega = -dh for h = " + h.str());
  MultiVector v(p.chart, 1);
  for (int s = 0; s < dim; ++s) v.add_component({s}, (*sol)[s]);
  HamiltonianSolution out{make_hamiltonian_pair(p, std::move(v), h), {}};
  for (auto& vec : kernel_basis(m)) {
    MultiVector k(p.chart, 1);
    for (int s = 0; s < dim; ++s) k.add_component({s}, CoefFn::constant(p.chart, vec[s]));
    out.kernel.push_back(std::move(k));
  }
  return out;
}

std::optional<std::string> hamiltonian_obstruction(const PreNPlectic& p, const MultiVector& v) {
  Form u = contract(v, p.omega);
  Form du = d(u);
  if (!du.is_zero()) return "iota_v omega is not closed: d gives " + du.str();
  std::vector<int> periodic;
  for (int j = 0; j < p.chart->dim; ++j)
    if (p.chart->allows_fourier(j)) periodic.push_back(j);
  if (static_cast<int>(periodic.size()) >= p.n) {
    // closed implies exact only when every subtorus period vanishes
    auto subsets = tuples_of(static_cast<int>(periodic.size()), p.n);
    for (auto& sub : subsets) {
      std::vector<int> axes;
      for (int i : sub) axes.push_back(periodic[i]);
      Scalar period = integrate_torus(u, axes);
      if (!period.is_zero())
        return "iota_v omega has period " + period.str() + " over a coordinate subtorus";
    }
  }
  return std::nullopt;
}

Observable l_infty_bracket(const PreNPlectic& p, const std::vector<Observable>& args,
                           SlotOrder order) {
  int k = static_cast<int>(args.size());
  require(k >= 1, Errc::InvalidArgument, "bracket needs at least one argument");
  for (auto& a : args) {
    if (a.is_zero()) continue;
    const ChartPtr& c = a.degree() == 0 ? a.as_pair().v.chart() : a.as_form().chart();
    require_compatible(c, p.chart, "l_infty_bracket");
  }
  if (k == 1) {
    const Observable& a = args[0];
    if (a.is_zero()) return {};
    if (a.degree() == 0) return {};
    if (a.degree() == 1) {
      // edge map into pairs: b |-> (0, db)
      MultiVector zero(p.chart, 1);
      return Observable::pair(make_hamiltonian_pair(p, std::move(zero), d(a.as_form())));
    }
    return Observable::form(a.degree() - 1, d(a.as_form()));
  }
  for (auto& a : args)
    if (a.is_zero() || a.degree() != 0) return {};
  MultiVector wedge_fields = args[0].as_pair().v;
  for (int t = 1; t < k; ++t) wedge_fields = wedge(wedge_fields, args[t].as_pair().v);
  Form contraction = contract(wedge_fields, p.omega, order);
  if (k == 2) {
    MultiVector field = field_bracket(args[0].as_pair().v, args[1].as_pair().v);
    return Observable::pair(make_hamiltonian_pair(p, std::move(field), contraction));
  }
  int s = ((k - 1) / 2) % 2 == 0 ? 1 : -1;
  if (k - 2 > p.n - 1 || contraction.is_zero()) return {};
  return Observable::form(k - 2, Scalar(s) * contraction);
}

Observable l_infty_bracket(const PreNPlectic& p, const std::vector<Observable>& args) {
  return l_infty_bracket(p, args, conventions().slot_order);
}

Form ks_cocycle(const PreNPlectic& p, const std::vector<MultiVector>& fields) {
  require(!fields.empty(), Errc::InvalidArgument, "cocycle needs at least one field");
  MultiVector acc = fields[0];
  for (auto& v : fields) {
    require(v.degree() == 1, Errc::DegreeMismatch, "cocycle fields must have degree 1");
    auto bad = hamiltonian_obstruction(p, v);
    require(!bad.has_value(), Errc::NotHamiltonian, bad.value_or(""));
  }
  for (size_t t = 1; t < fields.size(); ++t) acc = wedge(acc, fields[t]);
  return contract(acc, p.omega);
}

Observable jacobi_residual(const PreNPlectic& p, const std::vector<Observable>& args,
                           JacobiSign rule, SlotOrder order) {
  int k = static_cast<int>(args.size());
  for (auto& a : args)
    if (a.is_zero()) return {};
  std::vector<int> degrees;
  degrees.reserve(k);
  for (auto& a : args) degrees.push_back(a.degree());
  Observable acc;
  for (auto& term : homotopy_jacobi_terms(k, degrees, rule)) {
    std::vector<Observable> inner;
    inner.reserve(term.inner_arity);
    for (int t = 0; t < term.inner_arity; ++t) inner.push_back(args[term.perm[t]]);
    std::vector<Observable> outer;
    outer.reserve(k - term.inner_arity + 1);
    outer.push_back(l_infty_bracket(p, inner, order));
    for (int t = term.inner_arity; t < k; ++t) outer.push_back(args[term.perm[t]]);
    acc += Scalar(term.sign) * l_infty_bracket(p, outer, order);
  }
  return acc;
}

JacobiReport jacobi_report(const PreNPlectic& p, const std::vector<Observable>& elements,
                           int max_arity, JacobiSign rule, SlotOrder order) {
  require(max_arity >= 1 && max_arity <= 5, Errc::InvalidArgument,
          "identity arity must lie in 1..5");
  JacobiReport rep;
  rep.rule = rule;
  rep.slot_order = order;
  rep.max_arity = max_arity;
  int m = static_cast<int>(elements.size());
  if (m == 0) return rep;
  for (int k = 1; k <= max_arity; ++k) {
    // sorted index tuples with repetition
    std::vector<int> idx(k, 0);
    while (true) {
      std::vector<Observable> args;
      args.reserve(k);
      for (int i : idx) args.push_back(elements[i]);
      Observable r = jacobi_residual(p, args, rule, order);
      JacobiInstance inst{k, idx, r.is_zero(), r.str()};
      rep.checked += 1;
      if (!inst.passed) rep.failed += 1;
      rep.instances.push_back(std::move(inst));
      int t = k - 1;
      while (t >= 0 && idx[t] == m - 1) --t;
      if (t < 0) break;
      ++idx[t];
      for (int u = t + 1; u < k; ++u) idx[u] = idx[t];
    }
  }
  return rep;
}

JacobiReport jacobi_report(const PreNPlectic& p, const std::vector<Observable>& elements,
                           int max_arity) {
  return jacobi_report(p, elements, max_arity, conventions().jacobi_sign,
                       conventions().slot_order);
}

KernelComplexReport kernel_complex(const PreNPlectic& p, int band) {
  require(band >= 0, Errc::InvalidArgument, "band limit must be non-negative");
  int dim = p.chart->dim;
  for (int j = 0; j < dim; ++j)
    require(p.chart->allows_fourier(j), Errc::NonPeriodicAxis,
            "kernel complex needs a fully periodic chart, axis " + std::to_string(j) +
                " of " + p.chart->name + " is not");
  // The differential preserves the wave vector, so ranks add up mode by mode:
  // per mode the complex is a Koszul complex with contraction vector i*tau*k.
  std::vector<std::vector<int>> modes;
  {
    std::vector<int> k(dim, -band);
    while (true) {
      modes.push_back(k);
      int t = dim - 1;
      while (t >= 0 && k[t] == band) --t;
      if (t < 0) break;
      ++k[t];
      for (int u = t + 1; u < dim; ++u) k[u] = -band;
    }
  }
  int nmodes = static_cast<int>(modes.size());
  auto choose = [](int a, int b) {
    if (b < 0 || b > a) return 0;
    long r = 1;
    for (int t = 1; t <= b; ++t) r = r * (a - b + t) / t;
    return static_cast<int>(r);
  };
  // rank of d on mode k in form degree p: wedge by the covector i*tau*k
  auto mode_rank = [&](const std::vector<int>& k, int deg) {
    auto rows = tuples_of(dim, deg + 1);
    auto cols = tuples_of(dim, deg);
    Matrix<Scalar> m(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    std::map<std::vector<int>, int> row_of;
    for (size_t r = 0; r < rows.size(); ++r) row_of[rows[r]] = static_cast<int>(r);
    for (size_t c = 0; c < cols.size(); ++c)
      for (int j = 0; j < dim; ++j) {
        if (k[j] == 0) continue;
        std::vector<int> u = cols[c];
        u.push_back(j);
        int sign = sort_sign(u);
        if (sign == 0) continue;
        m.at(row_of[u], static_cast<int>(c)) +=
            Scalar(sign) * Scalar::i() * Scalar::tau() * Scalar(static_cast<long>(k[j]));
      }
    return rank(m);
  };
  std::vector<int> full_dim(p.n + 1), rank_d(p.n + 1, 0);
  for (int deg = 0; deg <= p.n; ++deg) full_dim[deg] = choose(dim, deg) * nmodes;
  for (int deg = 0; deg <= p.n - 1; ++deg)
    for (auto& k : modes) rank_d[deg] += mode_rank(k, deg);
  KernelComplexReport rep;
  rep.band = band;
  rep.dims.resize(p.n);
  rep.betti.resize(p.n);
  for (int deg = 0; deg < p.n; ++deg) {
    bool last = (deg == p.n - 1);
    // the last space is the closed forms, earlier ones the full band space
    rep.dims[deg] = last ? full_dim[deg] - rank_d[deg] : full_dim[deg];
    int cycles = full_dim[deg] - rank_d[deg];
    int boundaries = deg == 0 ? 0 : rank_d[deg - 1];
    rep.betti[deg] = cycles - boundaries;
  }
  return rep;
}

DwReport dw_check(const PreNPlectic& p, const Form& H, const std::vector<MultiVector>& fields) {
  require(static_cast<int>(fields.size()) == p.n, Errc::InvalidArgument,
          "field equation needs exactly n = " + std::to_string(p.n) + " fields");
  require(H.degree() == 0 || H.is_zero(), Errc::DegreeMismatch,
          "the covariant Hamiltonian is a function");
  MultiVector acc = fields[0];
  for (size_t t = 1; t < fields.size(); ++t) acc = wedge(acc, fields[t]);
  Form rhs = contract(acc, p.omega);
  if (p.n >= 3 && ((p.n - 1) / 2) % 2 == 1) rhs = -rhs;
  DwReport rep{true, rhs - d(H), ""};
  rep.passed = rep.residual.is_zero();
  if (p.n == 2)
    rep.note = "binary bracket is pair-valued; the comparison uses its form component";
  return rep;
}

}  // namespace plectic
