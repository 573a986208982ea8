#include "plectic/linfinity.hpp"

#include <functional>

#include "plectic/conventions.hpp"
#include "plectic/form.hpp"
#include "plectic/parser.hpp"

namespace plectic {

namespace {

void add_into(BasisVec& acc, int gen, const Scalar& c) {
  if (c.is_zero()) return;
  Scalar& slot = acc[gen];
  slot += c;
  if (slot.is_zero()) acc.erase(gen);
}

void add_scaled(BasisVec& acc, const BasisVec& v, const Scalar& c) {
  for (auto& [g, x] : v) add_into(acc, g, c * x);
}

}  // namespace

LInfinityData::LInfinityData(std::vector<Generator> gens, int max_arity)
    : gens_(std::move(gens)), max_arity_(max_arity) {
  require(max_arity_ >= 1, Errc::InvalidArgument, "max arity must be at least 1");
  brackets_.resize(static_cast<size_t>(max_arity_) + 1);
}

std::pair<std::vector<int>, int> LInfinityData::normal_order(std::vector<int> t) const {
  int sign = 1;
  for (size_t i = 1; i < t.size(); ++i)
    for (size_t j = i; j > 0 && t[j] < t[j - 1]; --j) {
      // antisymmetric Koszul swap: -(-1)^{pq}
      sign *= (degree(t[j - 1]) * degree(t[j])) % 2 == 0 ? -1 : 1;
      std::swap(t[j], t[j - 1]);
    }
  for (size_t i = 1; i < t.size(); ++i)
    if (t[i] == t[i - 1] && degree(t[i]) % 2 == 0) return {std::move(t), 0};
  return {std::move(t), sign};
}

void LInfinityData::set_bracket(int k, const std::vector<int>& tuple, const BasisVec& value) {
  require(k >= 1 && k <= max_arity_, Errc::InvalidArgument,
          "bracket arity " + std::to_string(k) + " outside the declared range");
  require(static_cast<int>(tuple.size()) == k, Errc::InvalidArgument,
          "tuple length does not match the arity");
  int total = k - 2;
  for (int i : tuple) {
    require(i >= 0 && i < dim(), Errc::InvalidArgument, "generator index out of range");
    total += degree(i);
  }
  auto [sorted, sign] = normal_order(tuple);
  bool all_zero = true;
  for (auto& [g, c] : value) {
    if (c.is_zero()) continue;
    all_zero = false;
    require(g >= 0 && g < dim(), Errc::InvalidArgument, "output index out of range");
    require(degree(g) == total, Errc::DegreeMismatch,
            "bracket output " + gens_[g].name + " has degree " +
                std::to_string(degree(g)) + ", expected " + std::to_string(total));
  }
  if (sign == 0) {
    require(all_zero, Errc::InvalidArgument,
            "value on a repeated even generator must vanish");
    return;
  }
  BasisVec& slot = brackets_[k][sorted];
  for (auto& [g, c] : value) add_into(slot, g, Scalar(sign) * c);
  if (slot.empty()) brackets_[k].erase(sorted);
}

BasisVec LInfinityData::bracket(int k, const std::vector<int>& tuple) const {
  if (k < 1 || k > max_arity_) return {};
  auto [sorted, sign] = normal_order(tuple);
  if (sign == 0) return {};
  auto it = brackets_[k].find(sorted);
  if (it == brackets_[k].end()) return {};
  BasisVec out;
  for (auto& [g, c] : it->second) out[g] = Scalar(sign) * c;
  return out;
}

BasisVec LInfinityData::apply(int k, const std::vector<BasisVec>& args) const {
  require(static_cast<int>(args.size()) == k, Errc::InvalidArgument,
          "argument count does not match the arity");
  BasisVec out;
  std::vector<int> tuple(k);
  std::function<void(int, const Scalar&)> expand = [&](int slot, const Scalar& coef) {
    if (slot == k) {
      add_scaled(out, bracket(k, tuple), coef);
      return;
    }
    for (auto& [g, c] : args[slot]) {
      tuple[slot] = g;
      expand(slot + 1, coef * c);
    }
  };
  expand(0, Scalar(1));
  return out;
}

const std::map<std::vector<int>, BasisVec>& LInfinityData::stored(int k) const {
  require(k >= 1 && k <= max_arity_, Errc::InvalidArgument, "arity outside declared range");
  return brackets_[k];
}

std::string basis_vec_str(const LInfinityData& L, const BasisVec& v) {
  if (v.empty()) return "0";
  std::string s;
  for (auto& [g, c] : v) {
    if (!s.empty()) s += " + ";
    s += "(" + c.str() + ")*" + L.generators()[g].name;
  }
  return s;
}

RelationReport verify_l_infinity(const LInfinityData& L, int max_arity, JacobiSign rule) {
  require(max_arity >= 1 && max_arity <= 5 && max_arity <= L.max_arity() + 2,
          Errc::InvalidArgument, "identity arity must lie in 1..min(5, K+2)");
  RelationReport rep;
  rep.rule = rule;
  rep.max_arity = max_arity;
  int n = L.dim();
  for (int k = 1; k <= max_arity; ++k) {
    std::vector<int> tuple(k, 0);
    while (true) {
      std::vector<int> degrees(k);
      for (int t = 0; t < k; ++t) degrees[t] = L.degree(tuple[t]);
      BasisVec residual;
      for (auto& term : homotopy_jacobi_terms(k, degrees, rule)) {
        std::vector<int> inner(term.inner_arity);
        for (int t = 0; t < term.inner_arity; ++t) inner[t] = tuple[term.perm[t]];
        std::vector<BasisVec> outer;
        outer.push_back(L.bracket(term.inner_arity, inner));
        for (int t = term.inner_arity; t < k; ++t)
          outer.push_back(BasisVec{{tuple[term.perm[t]], Scalar(1)}});
        add_scaled(residual, L.apply(k - term.inner_arity + 1, outer), Scalar(term.sign));
      }
      RelationInstance inst{k, tuple, residual.empty(), basis_vec_str(L, residual)};
      rep.checked += 1;
      if (!inst.passed) rep.failed += 1;
      rep.instances.push_back(std::move(inst));
      int t = k - 1;
      while (t >= 0 && tuple[t] == n - 1) --t;
      if (t < 0) break;
      ++tuple[t];
      for (int u = t + 1; u < k; ++u) tuple[u] = 0;
    }
  }
  return rep;
}

RelationReport verify_l_infinity(const LInfinityData& L, int max_arity) {
  return verify_l_infinity(L, max_arity, conventions().jacobi_sign);
}

void LieCocycle::set(std::vector<int> tuple, Scalar c) {
  require(static_cast<int>(tuple.size()) == arity_, Errc::InvalidArgument,
          "tuple length does not match the cocycle arity");
  int sign = sort_sign(tuple);
  if (sign == 0) {
    require(c.is_zero(), Errc::InvalidArgument, "skew value on a repeated index must vanish");
    return;
  }
  Scalar& slot = values_[tuple];
  slot += Scalar(sign) * c;
  if (slot.is_zero()) values_.erase(tuple);
}

Scalar LieCocycle::value(std::vector<int> tuple) const {
  int sign = sort_sign(tuple);
  if (sign == 0) return Scalar();
  auto it = values_.find(tuple);
  if (it == values_.end()) return Scalar();
  return Scalar(sign) * it->second;
}

namespace {

void require_plain_lie(const LInfinityData& g) {
  for (auto& gen : g.generators())
    require(gen.degree == 0, Errc::DegreeMismatch,
            "generator " + gen.name + " is not in degree 0");
  for (int k = 1; k <= g.max_arity(); ++k)
    require(k == 2 || g.stored(k).empty(), Errc::DegreeMismatch,
            "a plain Lie algebra carries only the binary bracket");
}

}  // namespace

CocycleReport is_cocycle(const LInfinityData& g, const LieCocycle& mu) {
  require_plain_lie(g);
  int m = mu.arity();
  for (auto& [tuple, c] : mu.stored())
    for (int i : tuple)
      require(i >= 0 && i < g.dim(), Errc::InvalidArgument, "cocycle index out of range");
  CocycleReport rep;
  int n = g.dim();
  if (m + 1 > n) return rep;  // no strictly increasing tuples to check
  std::vector<int> t(m + 1);
  for (int i = 0; i <= m; ++i) t[i] = i;
  while (true) {
    // Chevalley-Eilenberg: sum_{i<j} (-1)^{i+j} mu([x_i,x_j], rest)
    Scalar residual;
    for (int i = 0; i <= m; ++i)
      for (int j = i + 1; j <= m; ++j) {
        BasisVec br = g.bracket(2, {t[i], t[j]});
        if (br.empty()) continue;
        std::vector<int> rest;
        for (int u = 0; u <= m; ++u)
          if (u != i && u != j) rest.push_back(t[u]);
        Scalar term;
        for (auto& [gen, c] : br) {
          std::vector<int> args{gen};
          args.insert(args.end(), rest.begin(), rest.end());
          term += c * mu.value(args);
        }
        residual += Scalar((i + j) % 2 == 0 ? 1 : -1) * term;
      }
    if (!residual.is_zero()) {
      rep.passed = false;
      rep.residuals.emplace_back(t, residual);
    }
    int i = m;
    while (i >= 0 && t[i] == n - (m + 1) + i) --i;
    if (i < 0) break;
    ++t[i];
    for (int u = i + 1; u <= m; ++u) t[u] = t[u - 1] + 1;
  }
  return rep;
}

LInfinityData string_extension(const LInfinityData& g, const LieCocycle& mu,
                               const std::string& central_name) {
  int m = mu.arity();
  require(m >= 2, Errc::InvalidArgument, "extension cocycles have arity at least 2");
  auto rep = is_cocycle(g, mu);
  require(rep.passed, Errc::NotACocycle,
          "Chevalley-Eilenberg coboundary does not vanish on " +
              std::to_string(rep.residuals.size()) + " basis tuple(s)");
  std::vector<Generator> gens = g.generators();
  gens.push_back(Generator{central_name, m - 2});
  int central = static_cast<int>(gens.size()) - 1;
  LInfinityData ext(std::move(gens), std::max(g.max_arity(), m));
  for (int k = 1; k <= g.max_arity(); ++k)
    for (auto& [tuple, value] : g.stored(k)) ext.set_bracket(k, tuple, value);
  for (auto& [tuple, c] : mu.stored())
    ext.set_bracket(m, tuple, BasisVec{{central, c}});
  return ext;
}

namespace {

BasisVec mat_apply(const Matrix<Scalar>& m, const BasisVec& v) {
  BasisVec out;
  for (auto& [col, c] : v)
    for (int r = 0; r < m.rows; ++r) add_into(out, r, m.at(r, col) * c);
  return out;
}

}  // namespace

RelationReport verify_morphism(const MorphismData& F, const LInfinityData& src,
                               const LInfinityData& dst, int max_arity) {
  require(max_arity >= 1 && max_arity <= 5, Errc::InvalidArgument,
          "relation arity must lie in 1..5");
  for (auto& [k, mat] : F.components) {
    if (k == 1) continue;
    for (const Scalar& entry : mat.a)
      require(entry.is_zero(), Errc::UnsupportedComponents,
              "only strict morphisms (arity-1 component) are supported");
  }
  Matrix<Scalar> f1(dst.dim(), src.dim());
  if (auto it = F.components.find(1); it != F.components.end()) {
    require(it->second.rows == dst.dim() && it->second.cols == src.dim(),
            Errc::InvalidArgument, "arity-1 component has the wrong shape");
    f1 = it->second;
  }
  for (int r = 0; r < f1.rows; ++r)
    for (int c = 0; c < f1.cols; ++c)
      if (!f1.at(r, c).is_zero())
        require(dst.degree(r) == src.degree(c), Errc::DegreeMismatch,
                "morphism component does not preserve degree");

  RelationReport rep;
  rep.rule = conventions().jacobi_sign;
  rep.max_arity = max_arity;
  int n = src.dim();
  for (int k = 1; k <= max_arity; ++k) {
    std::vector<int> tuple(k, 0);
    while (true) {
      // strict relation: F(l_k(x...)) = l_k(Fx...)
      BasisVec lhs = mat_apply(f1, src.bracket(k, tuple));
      std::vector<BasisVec> imgs;
      for (int t = 0; t < k; ++t) imgs.push_back(mat_apply(f1, BasisVec{{tuple[t], Scalar(1)}}));
      BasisVec residual = lhs;
      add_scaled(residual, dst.apply(k, imgs), Scalar(-1));
      RelationInstance inst{k, tuple, residual.empty(), basis_vec_str(dst, residual)};
      rep.checked += 1;
      if (!inst.passed) rep.failed += 1;
      rep.instances.push_back(std::move(inst));
      int t = k - 1;
      while (t >= 0 && tuple[t] == n - 1) --t;
      if (t < 0) break;
      ++tuple[t];
      for (int u = t + 1; u < k; ++u) tuple[u] = 0;
    }
  }
  return rep;
}

std::vector<int> homology(const ChainComplex& c) {
  if (c.dims.empty()) return {};
  require(c.maps.size() + 1 == c.dims.size(), Errc::InvalidArgument,
          "expected one differential per adjacent pair of spaces");
  for (size_t i = 0; i < c.maps.size(); ++i)
    require(c.maps[i].cols == c.dims[i] && c.maps[i].rows == c.dims[i + 1],
            Errc::InvalidArgument, "differential shape does not match the graded dims");
  for (size_t i = 0; i + 1 < c.maps.size(); ++i) {
    const Matrix<Scalar>&a = c.maps[i + 1], &b = c.maps[i];
    for (int r = 0; r < a.rows; ++r)
      for (int col = 0; col < b.cols; ++col) {
        Scalar dot;
        for (int t = 0; t < a.cols; ++t) dot += a.at(r, t) * b.at(t, col);
        require(dot.is_zero(), Errc::NotAComplex, "d*d is nonzero");
      }
  }
  std::vector<int> ranks(c.maps.size());
  for (size_t i = 0; i < c.maps.size(); ++i) ranks[i] = rank(c.maps[i]);
  std::vector<int> betti(c.dims.size());
  for (size_t i = 0; i < c.dims.size(); ++i) {
    int out = i < ranks.size() ? ranks[i] : 0;
    int in = i > 0 ? ranks[i - 1] : 0;
    betti[i] = c.dims[i] - out - in;
  }
  return betti;
}

nlohmann::json linfinity_to_json(const LInfinityData& L) {
  nlohmann::json gens = nlohmann::json::array();
  for (auto& g : L.generators())
    gens.push_back(nlohmann::json{{"name", g.name}, {"degree", g.degree}});
  nlohmann::json brackets = nlohmann::json::array();
  for (int k = 1; k <= L.max_arity(); ++k)
    for (auto& [tuple, value] : L.stored(k)) {
      nlohmann::json out = nlohmann::json::array();
      for (auto& [g, c] : value)
        out.push_back(nlohmann::json{{"gen", g}, {"coef", c.str()}});
      brackets.push_back(nlohmann::json{{"arity", k}, {"tuple", tuple}, {"out", out}});
    }
  return nlohmann::json{
      {"generators", gens}, {"max_arity", L.max_arity()}, {"brackets", brackets}};
}

LInfinityData linfinity_from_json(const nlohmann::json& j) {
  std::vector<Generator> gens;
  for (auto& g : j.at("generators"))
    gens.push_back(Generator{g.at("name").get<std::string>(), g.at("degree").get<int>()});
  LInfinityData L(std::move(gens), j.at("max_arity").get<int>());
  for (auto& b : j.at("brackets")) {
    BasisVec value;
    for (auto& o : b.at("out"))
      value[o.at("gen").get<int>()] = parse_scalar(o.at("coef").get<std::string>());
    L.set_bracket(b.at("arity").get<int>(), b.at("tuple").get<std::vector<int>>(), value);
  }
  return L;
}

nlohmann::json relation_report_to_json(const RelationReport& r) {
  nlohmann::json instances = nlohmann::json::array();
  for (auto& i : r.instances)
    instances.push_back(nlohmann::json{{"arity", i.arity},
                                       {"tuple", i.tuple},
                                       {"passed", i.passed},
                                       {"residual", i.residual}});
  return nlohmann::json{{"rule", to_string(r.rule)},
                        {"max_arity", r.max_arity},
                        {"checked", r.checked},
                        {"failed", r.failed},
                        {"passed", r.passed()},
                        {"instances", instances}};
}

}  // namespace plectic
