#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "plectic/dglie.hpp"
#include "plectic/linfinity.hpp"
#include "plectic/parser.hpp"
#include "plectic/scenario.hpp"

using namespace plectic;

namespace {

// --------------------------------------------------------------------------
// shared plumbing

constexpr uint64_t kDefaultSeed = 1729;

uint64_t default_seed() {
  if (const char* env = std::getenv("PLECTIC_SEED")) {
    try {
      size_t pos = 0;
      unsigned long long v = std::stoull(env, &pos);
      require(pos == std::string(env).size(), Errc::InvalidArgument, "");
      return v;
    } catch (const std::exception&) {
      fail(Errc::InvalidArgument,
           std::string("PLECTIC_SEED must be an unsigned integer, got '") + env + "'");
    }
  }
  return kDefaultSeed;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), Errc::InvalidArgument, "cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const std::exception& e) {
    fail(Errc::ParseError, "bad JSON in '" + path + "': " + e.what());
  }
}

// "r<d>" star-shaped, "t<d>" torus, "m:<kinds>" mixed with 'a'ffine /
// 'p'eriodic letters, "@file.json" full descriptor.
ChartPtr chart_spec(const std::string& s) {
  require(!s.empty(), Errc::InvalidArgument, "empty chart spec");
  if (s[0] == '@') return chart_from_json(read_json_file(s.substr(1)));
  if (s.size() >= 3 && (s[0] == 'm' || s[0] == 'M') && s[1] == ':') {
    std::vector<bool> periodic;
    for (size_t i = 2; i < s.size(); ++i) {
      require(s[i] == 'a' || s[i] == 'p', Errc::InvalidArgument,
              "mixed chart letters are 'a' (line) or 'p' (circle): " + s);
      periodic.push_back(s[i] == 'p');
    }
    return mixed_chart(periodic, s.substr(2));
  }
  char kind = s[0];
  try {
    size_t pos = 0;
    int d = std::stoi(s.substr(1), &pos);
    require(pos + 1 == s.size() && d >= 1, Errc::InvalidArgument, "");
    if (kind == 'r' || kind == 'R') return affine_chart(d);
    if (kind == 't' || kind == 'T') return torus_chart(d);
  } catch (const std::exception&) {
  }
  fail(Errc::InvalidArgument,
       "chart spec '" + s + "' (want r<d>, t<d>, m:<a|p...>, or @file.json)");
}

// "s1", "t<d>", or "trivial:<chart-spec>".
NervePtr nerve_spec(const std::string& s) {
  if (s == "s1") return circle_cover();
  if (s.rfind("trivial:", 0) == 0) return trivial_cover(chart_spec(s.substr(8)));
  if (s.size() == 2 && (s[0] == 't' || s[0] == 'T') && s[1] >= '1' && s[1] <= '3')
    return torus_cover(s[1] - '0');
  fail(Errc::InvalidArgument, "nerve spec '" + s + "' (want s1, t1..t3, trivial:<chart>)");
}

Json nerve_wrapped(const DeligneCochain& c) {
  return Json{{"nerve", nerve_to_json(*c.nerve)}, {"cochain", deligne_to_json(c)}};
}

DeligneCochain cochain_from_file(const std::string& path, NervePtr* nerve_out = nullptr) {
  Json j = read_json_file(path);
  require(j.contains("nerve") && j.contains("cochain"), Errc::ParseError,
          "'" + path + "' wants {nerve, cochain}");
  NervePtr nv = nerve_from_json(j["nerve"]);
  if (nerve_out) *nerve_out = nv;
  return deligne_from_json(j["cochain"], nv);
}

SemidirectElement element_from_file(const std::string& path) {
  Json j = read_json_file(path);
  require(j.contains("nerve") && j.contains("element"), Errc::ParseError,
          "'" + path + "' wants {nerve, element}");
  NervePtr nv = nerve_from_json(j["nerve"]);
  const Json& e = j["element"];
  int degree = e.at("degree").get<int>();
  DeligneCochain b = deligne_from_json(e.at("b"), nv);
  if (degree == 0) {
    MultiVector v = multivector_from_json(e.at("v"), nv->manifold);
    return semidirect_pair(std::move(v), std::move(b));
  }
  return semidirect_cochain(degree, std::move(b));
}

// Report emission: stdout always, optional file copy; exit code mirrors the
// report's own verdict when it carries one.
int finish(Json report, const std::string& json_out, long long ms = -1) {
  if (ms >= 0) report["timing_ms"] = ms;
  std::string bytes = emit_report(report);
  if (!json_out.empty()) {
    std::ofstream out(json_out, std::ios::binary);
    require(out.good(), Errc::InvalidArgument, "cannot write '" + json_out + "'");
    out << bytes;
  }
  std::cout << bytes;
  if (report.contains("passed") && report["passed"].is_boolean())
    return report["passed"].get<bool>() ? 0 : 1;
  return 0;
}

struct Timer {
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
  long long ms() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - t0)
        .count();
  }
};

// --------------------------------------------------------------------------
// expression-grammar commands

struct GeometryArgs {
  std::string chart = "r2";
  std::string omega;
  int n = 1;
  std::string slot_order = "first";
  std::string json_out;
};

SlotOrder slot_order_of(const std::string& s) {
  if (s == "first") return SlotOrder::FirstSlotInnermost;
  if (s == "last") return SlotOrder::LastSlotInnermost;
  fail(Errc::InvalidArgument, "slot order '" + s + "' (want first|last)");
}

const char* slot_order_name(SlotOrder o) {
  return o == SlotOrder::FirstSlotInnermost ? "first-slot-innermost"
                                            : "last-slot-innermost";
}

JacobiSign jacobi_rule_of(const std::string& s) {
  if (s == "lada-stasheff") return JacobiSign::LadaStasheff;
  if (s == "alternate") return JacobiSign::Alternate;
  fail(Errc::InvalidArgument, "jacobi rule '" + s + "' (want lada-stasheff|alternate)");
}

PreNPlectic make_structure(const GeometryArgs& g, ChartPtr* chart_out) {
  ChartPtr ch = chart_spec(g.chart);
  require(!g.omega.empty(), Errc::InvalidArgument, "--omega is required");
  Form omega = parse_form(g.omega, ch);
  if (chart_out) *chart_out = ch;
  return check_pre_nplectic(omega, g.n);
}

// "h=<expr>" solves for the field; "v=<expr>;h=<expr>" checks the given
// pair; "form<k>=<expr>" injects a bare form in degree k.
Observable parse_observable(const std::string& spec, const PreNPlectic& p,
                            const ChartPtr& ch) {
  auto eq = spec.find('=');
  require(eq != std::string::npos, Errc::ParseError,
          "observable '" + spec + "' wants h=, v=..;h=, or form<k>=");
  std::string head = spec.substr(0, eq);
  if (head == "h") return Observable::pair(solve_hamiltonian(p, parse_form(spec.substr(eq + 1), ch)).pair);
  if (head == "v") {
    auto semi = spec.find(";h=", eq);
    require(semi != std::string::npos, Errc::ParseError,
            "pair observable wants v=<expr>;h=<expr>");
    MultiVector v = parse_field(spec.substr(eq + 1, semi - eq - 1), ch);
    Form h = parse_form(spec.substr(semi + 3), ch);
    return Observable::pair(make_hamiltonian_pair(p, v, h));
  }
  if (head.rfind("form", 0) == 0) {
    int deg = std::stoi(head.substr(4));
    return Observable::form(deg, parse_form(spec.substr(eq + 1), ch));
  }
  fail(Errc::ParseError, "observable '" + spec + "' wants h=, v=..;h=, or form<k>=");
}

Json echo_inputs(const GeometryArgs& g, const ChartPtr& ch, const PreNPlectic& p) {
  return Json{{"chart", chart_to_json(ch)},
              {"omega", form_to_json(p.omega)},
              {"n", p.n},
              {"slot_order", slot_order_name(slot_order_of(g.slot_order))}};
}

void add_geometry_options(CLI::App* cmd, GeometryArgs& g) {
  cmd->add_option("--chart", g.chart, "chart spec: r<d>, t<d>, m:<a|p...>, @file.json");
  cmd->add_option("--omega", g.omega, "closed (n+1)-form expression")->required();
  cmd->add_option("--n", g.n, "structure degree n")->required();
  cmd->add_option("--slot-order", g.slot_order, "contraction slot order: first|last");
  cmd->add_option("--json", g.json_out, "also write the report to this file");
}

// --------------------------------------------------------------------------

int run_bracket(const GeometryArgs& g, const std::vector<std::string>& specs) {
  Timer t;
  ChartPtr ch;
  PreNPlectic p = make_structure(g, &ch);
  std::vector<Observable> obs;
  Json echoed = Json::array();
  for (const auto& s : specs) {
    obs.push_back(parse_observable(s, p, ch));
    echoed.push_back(observable_to_json(obs.back()));
  }
  Observable result = l_infty_bracket(p, obs, slot_order_of(g.slot_order));
  Json rep = report_envelope("bracket");
  rep["inputs"] = echo_inputs(g, ch, p);
  rep["inputs"]["observables"] = echoed;
  rep["arity"] = obs.size();
  rep["output"] = observable_to_json(result);
  if (result.degree() == 0 && !result.is_zero())
    rep["residuals"] = Json{{"hamiltonian", form_to_json(hamiltonian_residual(
                                 p, result.as_pair().v, result.as_pair().h))}};
  return finish(rep, g.json_out, t.ms());
}

int run_jacobi(const GeometryArgs& g, const std::vector<std::string>& specs, int max_arity,
               const std::string& rule) {
  Timer t;
  ChartPtr ch;
  PreNPlectic p = make_structure(g, &ch);
  std::vector<Observable> obs;
  Json echoed = Json::array();
  for (const auto& s : specs) {
    obs.push_back(parse_observable(s, p, ch));
    echoed.push_back(observable_to_json(obs.back()));
  }
  JacobiReport jr =
      jacobi_report(p, obs, max_arity, jacobi_rule_of(rule), slot_order_of(g.slot_order));
  Json rep = report_envelope("jacobi");
  rep["inputs"] = echo_inputs(g, ch, p);
  rep["inputs"]["observables"] = echoed;
  rep["report"] = jacobi_report_to_json(jr);
  rep["passed"] = jr.passed();
  return finish(rep, g.json_out, t.ms());
}

int run_ks(const GeometryArgs& g, const std::vector<std::string>& field_exprs) {
  Timer t;
  ChartPtr ch;
  PreNPlectic p = make_structure(g, &ch);
  std::vector<MultiVector> fields;
  Json echoed = Json::array();
  for (const auto& s : field_exprs) {
    fields.push_back(parse_field(s, ch));
    echoed.push_back(multivector_to_json(fields.back()));
  }
  Form c = ks_cocycle(p, fields);
  Json rep = report_envelope("ks");
  rep["inputs"] = echo_inputs(g, ch, p);
  rep["inputs"]["fields"] = echoed;
  rep["cocycle"] = form_to_json(c);
  return finish(rep, g.json_out, t.ms());
}

int run_kernel(const GeometryArgs& g, int band) {
  Timer t;
  ChartPtr ch;
  PreNPlectic p = make_structure(g, &ch);
  KernelComplexReport kr = kernel_complex(p, band);
  Json rep = report_envelope("kernel");
  rep["inputs"] = echo_inputs(g, ch, p);
  rep["report"] = kernel_report_to_json(kr);
  return finish(rep, g.json_out, t.ms());
}

int run_dw(const GeometryArgs& g, const std::string& energy,
           const std::vector<std::string>& field_exprs) {
  Timer t;
  ChartPtr ch;
  PreNPlectic p = make_structure(g, &ch);
  Form H = parse_form(energy, ch);
  std::vector<MultiVector> fields;
  Json echoed = Json::array();
  for (const auto& s : field_exprs) {
    fields.push_back(parse_field(s, ch));
    echoed.push_back(multivector_to_json(fields.back()));
  }
  DwReport dr = dw_check(p, H, fields);
  Json rep = report_envelope("dw");
  rep["inputs"] = echo_inputs(g, ch, p);
  rep["inputs"]["energy"] = form_to_json(H);
  rep["inputs"]["fields"] = echoed;
  rep["report"] = dw_report_to_json(dr);
  rep["passed"] = dr.passed;
  return finish(rep, g.json_out, t.ms());
}

// --------------------------------------------------------------------------
// structure-constant commands

Json lie_cocycle_to_json(const LieCocycle& mu) {
  Json vals = Json::array();
  for (const auto& [tuple, c] : mu.stored())
    vals.push_back(Json{{"tuple", tuple}, {"value", scalar_to_json(c)}});
  return Json{{"arity", mu.arity()}, {"values", vals}};
}

LieCocycle lie_cocycle_from_json(const Json& j) {
  LieCocycle mu(j.at("arity").get<int>());
  for (const auto& v : j.at("values"))
    mu.set(v.at("tuple").get<std::vector<int>>(), scalar_from_json(v.at("value")));
  return mu;
}

int run_lverify(const std::string& file, int max_arity, const std::string& rule,
                const std::string& json_out) {
  Timer t;
  LInfinityData L = linfinity_from_json(read_json_file(file));
  RelationReport rr = verify_l_infinity(L, max_arity, jacobi_rule_of(rule));
  Json rep = report_envelope("lverify");
  rep["inputs"] = Json{{"algebra", linfinity_to_json(L)}, {"max_arity", max_arity}};
  rep["report"] = relation_report_to_json(rr);
  rep["passed"] = rr.passed();
  return finish(rep, json_out, t.ms());
}

int run_cocycle(const std::string& alg_file, const std::string& mu_file,
                const std::string& json_out) {
  Timer t;
  LInfinityData g = linfinity_from_json(read_json_file(alg_file));
  LieCocycle mu = lie_cocycle_from_json(read_json_file(mu_file));
  CocycleReport cr = is_cocycle(g, mu);
  Json rep = report_envelope("cocycle");
  rep["inputs"] = Json{{"algebra", linfinity_to_json(g)}, {"cocycle", lie_cocycle_to_json(mu)}};
  Json residuals = Json::array();
  for (const auto& [tuple, val] : cr.residuals)
    residuals.push_back(Json{{"tuple", tuple}, {"residual", scalar_to_json(val)}});
  rep["residuals"] = residuals;
  rep["passed"] = cr.passed;
  return finish(rep, json_out, t.ms());
}

int run_extend(const std::string& alg_file, const std::string& mu_file,
               const std::string& central, int verify_arity, const std::string& json_out) {
  Timer t;
  LInfinityData g = linfinity_from_json(read_json_file(alg_file));
  LieCocycle mu = lie_cocycle_from_json(read_json_file(mu_file));
  LInfinityData ext = string_extension(g, mu, central);
  RelationReport rr = verify_l_infinity(ext, verify_arity);
  Json rep = report_envelope("extend");
  rep["inputs"] = Json{{"algebra", linfinity_to_json(g)}, {"cocycle", lie_cocycle_to_json(mu)}};
  rep["extension"] = linfinity_to_json(ext);
  rep["verification"] = relation_report_to_json(rr);
  rep["passed"] = rr.passed();
  return finish(rep, json_out, t.ms());
}

int run_morphism(const std::string& src_file, const std::string& dst_file,
                 const std::string& map_file, int max_arity, const std::string& json_out) {
  Timer t;
  LInfinityData src = linfinity_from_json(read_json_file(src_file));
  LInfinityData dst = linfinity_from_json(read_json_file(dst_file));
  Json mj = read_json_file(map_file);
  MorphismData F;
  for (const auto& [arity, rows] : mj.at("components").items()) {
    Matrix<Scalar> m(static_cast<int>(rows.size()),
                     rows.empty() ? 0 : static_cast<int>(rows[0].size()));
    for (int i = 0; i < m.rows; ++i)
      for (int j = 0; j < m.cols; ++j) m.at(i, j) = scalar_from_json(rows[i][j]);
    F.components[std::stoi(arity)] = std::move(m);
  }
  RelationReport rr = verify_morphism(F, src, dst, max_arity);
  Json rep = report_envelope("morphism");
  rep["report"] = relation_report_to_json(rr);
  rep["passed"] = rr.passed();
  return finish(rep, json_out, t.ms());
}

// --------------------------------------------------------------------------
// cochain commands

int run_deligne_make(const std::string& kind, const std::string& nerve, const Rational& k,
                     const std::vector<std::string>& thetas, int level, int degree,
                     const std::string& json_out) {
  DeligneCochain c = [&] {
    if (kind == "prequantize") return prequantize_torus(k);
    if (kind == "flat") {
      std::vector<Scalar> th;
      for (const auto& s : thetas) th.push_back(parse_scalar(s));
      return flat_cocycle(nerve_spec(nerve), th);
    }
    if (kind == "zero") return make_cochain(nerve_spec(nerve), level, degree);
    fail(Errc::InvalidArgument, "make kind '" + kind + "' (want prequantize|flat|zero)");
  }();
  return finish(nerve_wrapped(c), json_out);
}

int run_deligne_check(const std::string& file, const std::string& json_out) {
  Timer t;
  DeligneCochain c = cochain_from_file(file);
  DeligneReport dr = is_cocycle(c);
  Json rep = report_envelope("deligne-check");
  rep["level"] = c.level;
  rep["degree"] = c.degree;
  rep["report"] = deligne_report_to_json(dr);
  rep["passed"] = dr.passed;
  return finish(rep, json_out, t.ms());
}

int run_deligne_curv(const std::string& file, const std::string& json_out) {
  Timer t;
  DeligneCochain c = cochain_from_file(file);
  Form w = curvature(c);
  Json rep = report_envelope("deligne-curv");
  rep["curvature"] = form_to_json(w);
  rep["integrality"] = integrality_to_json(is_integral(w));
  return finish(rep, json_out, t.ms());
}

int run_deligne_gauge(const std::string& file1, const std::string& file2, int band,
                      const std::string& json_out) {
  Timer t;
  DeligneCochain c1 = cochain_from_file(file1);
  DeligneCochain c2 = cochain_from_file(file2);
  GaugeResult gr = gauge_reduce(c1, c2, band);
  Json rep = report_envelope("deligne-gauge");
  rep["status"] = gr.status == GaugeStatus::Witness
                      ? "witness"
                      : (gr.status == GaugeStatus::Obstructed ? "obstructed"
                                                              : "no-witness-in-band");
  rep["note"] = gr.note;
  if (gr.witness) rep["witness"] = deligne_to_json(*gr.witness);
  rep["band"] = band;
  return finish(rep, json_out, t.ms());
}

int run_deligne_holonomy(const std::string& file, std::optional<int> axis,
                         const std::string& json_out) {
  Timer t;
  DeligneCochain c = cochain_from_file(file);
  DeligneCochain onS1 = axis ? restrict_to_circle(c, *axis, circle_cover()) : c;
  Scalar h = holonomy(onS1);
  Json rep = report_envelope("deligne-holonomy");
  if (axis) rep["axis"] = *axis;
  rep["holonomy"] = scalar_to_json(h);
  return finish(rep, json_out, t.ms());
}

int run_deligne_flat(const std::string& nerve, int band, uint64_t seed,
                     const std::string& json_out) {
  Timer t;
  FlatModuliReport fr = flat_moduli(nerve_spec(nerve), 1, band, seed);
  Json rep = report_envelope("deligne-flat");
  rep["report"] = flat_report_to_json(fr);
  rep["passed"] = fr.passed();
  return finish(rep, json_out, t.ms());
}

int run_deligne_dglie(const std::string& datum_file, const std::string& member_file,
                      const std::vector<std::string>& bracket_files,
                      const std::string& diff_file, const std::string& json_out) {
  Timer t;
  int modes = (!member_file.empty()) + (!bracket_files.empty()) + (!diff_file.empty());
  require(modes == 1, Errc::InvalidArgument,
          "pick exactly one of --member, --bracket, --differential");
  Json rep = report_envelope("deligne-dglie");
  if (!member_file.empty()) {
    DeligneCochain A = cochain_from_file(datum_file);
    SemidirectElement e = element_from_file(member_file);
    MembershipReport mr = dglie_membership(A, e);
    rep["membership"] = membership_to_json(mr);
    rep["passed"] = mr.member;
  } else if (!bracket_files.empty()) {
    require(bracket_files.size() == 2, Errc::InvalidArgument,
            "--bracket wants exactly two element files");
    SemidirectElement a = element_from_file(bracket_files[0]);
    SemidirectElement b = element_from_file(bracket_files[1]);
    SemidirectElement r = dg_lie_bracket(a, b);
    rep["bracket"] = semidirect_to_json(r);
    rep["nerve"] = nerve_to_json(*r.b.nerve);
  } else {
    SemidirectElement e = element_from_file(diff_file);
    SemidirectElement r = dg_lie_differential(e);
    rep["differential"] = semidirect_to_json(r);
    rep["nerve"] = nerve_to_json(*r.b.nerve);
  }
  return finish(rep, json_out, t.ms());
}

int run_deligne_compare(const std::string& datum_file,
                        const std::vector<std::string>& member_files,
                        const std::string& json_out) {
  Timer t;
  DeligneCochain A = cochain_from_file(datum_file);
  std::vector<SemidirectElement> members;
  for (const auto& f : member_files) members.push_back(element_from_file(f));
  CompareReport cr = compare_models(A, members);
  Json rep = report_envelope("deligne-compare");
  rep["report"] = compare_report_to_json(cr);
  rep["passed"] = cr.passed();
  return finish(rep, json_out, t.ms());
}

// --------------------------------------------------------------------------

int dispatch(CLI::App& app, int argc, char** argv) {
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;  // help/version exit clean, usage errors exit 2
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact calculus for higher Poisson brackets, their strict models, "
               "and torus prequantization"};
  app.require_subcommand(1);
  int rc = 0;

  // ---- expression-grammar commands
  GeometryArgs gb;
  std::vector<std::string> bracket_obs;
  auto* cb = app.add_subcommand("bracket", "k-ary higher Poisson bracket of observables");
  add_geometry_options(cb, gb);
  cb->add_option("observables", bracket_obs, "h=<expr> | v=<expr>;h=<expr> | form<k>=<expr>")
      ->required();
  cb->callback([&] { rc = run_bracket(gb, bracket_obs); });

  GeometryArgs gj;
  std::vector<std::string> jacobi_obs;
  int jacobi_arity = 3;
  std::string jacobi_rule = "lada-stasheff";
  auto* cj = app.add_subcommand("jacobi", "generalized Jacobi identity battery");
  add_geometry_options(cj, gj);
  cj->add_option("observables", jacobi_obs, "observable specs")->required();
  cj->add_option("--max-arity", jacobi_arity, "largest identity arity");
  cj->add_option("--rule", jacobi_rule, "sign rule: lada-stasheff|alternate");
  cj->callback([&] { rc = run_jacobi(gj, jacobi_obs, jacobi_arity, jacobi_rule); });

  GeometryArgs gk;
  std::vector<std::string> ks_fields;
  auto* ck = app.add_subcommand("ks", "classifying cocycle contraction of Hamiltonian fields");
  add_geometry_options(ck, gk);
  ck->add_option("fields", ks_fields, "field expressions")->required();
  ck->callback([&] { rc = run_ks(gk, ks_fields); });

  GeometryArgs gn;
  int kernel_band = 1;
  auto* cn = app.add_subcommand("kernel", "band-limited kernel complex and its homology");
  add_geometry_options(cn, gn);
  cn->add_option("--band", kernel_band, "Fourier band limit");
  cn->callback([&] { rc = run_kernel(gn, kernel_band); });

  GeometryArgs gd;
  std::string dw_energy;
  std::vector<std::string> dw_fields;
  auto* cd = app.add_subcommand("dw", "field equation screen: dH against the bracket datum");
  add_geometry_options(cd, gd);
  cd->add_option("--energy", dw_energy, "energy function expression")->required();
  cd->add_option("fields", dw_fields, "field expressions")->required();
  cd->callback([&] { rc = run_dw(gd, dw_energy, dw_fields); });

  // ---- structure-constant commands
  std::string lv_file, lv_rule = "lada-stasheff", lv_json;
  int lv_arity = 3;
  auto* cl = app.add_subcommand("lverify", "verify homotopy Jacobi identities of stored brackets");
  cl->add_option("algebra", lv_file, "algebra JSON file")->required();
  cl->add_option("--max-arity", lv_arity, "largest identity arity");
  cl->add_option("--rule", lv_rule, "sign rule: lada-stasheff|alternate");
  cl->add_option("--json", lv_json, "also write the report to this file");
  cl->callback([&] { rc = run_lverify(lv_file, lv_arity, lv_rule, lv_json); });

  std::string co_alg, co_mu, co_json;
  auto* cc = app.add_subcommand("cocycle", "closedness of a skew multilinear cochain");
  cc->add_option("algebra", co_alg, "algebra JSON file")->required();
  cc->add_option("cocycle", co_mu, "cocycle JSON file")->required();
  cc->add_option("--json", co_json, "also write the report to this file");
  cc->callback([&] { rc = run_cocycle(co_alg, co_mu, co_json); });

  std::string ex_alg, ex_mu, ex_central = "c", ex_json;
  int ex_arity = 4;
  auto* ce = app.add_subcommand("extend", "central homotopy extension by a cocycle");
  ce->add_option("algebra", ex_alg, "algebra JSON file")->required();
  ce->add_option("cocycle", ex_mu, "cocycle JSON file")->required();
  ce->add_option("--central-name", ex_central, "name of the new central generator");
  ce->add_option("--verify-arity", ex_arity, "verify identities up to this arity");
  ce->add_option("--json", ex_json, "also write the report to this file");
  ce->callback([&] { rc = run_extend(ex_alg, ex_mu, ex_central, ex_arity, ex_json); });

  std::string mo_src, mo_dst, mo_map, mo_json;
  int mo_arity = 3;
  auto* cm = app.add_subcommand("morphism", "verify a strict morphism between algebras");
  cm->add_option("src", mo_src, "source algebra JSON file")->required();
  cm->add_option("dst", mo_dst, "target algebra JSON file")->required();
  cm->add_option("map", mo_map, "morphism JSON file {components: {\"1\": [[...]]}}")
      ->required();
  cm->add_option("--max-arity", mo_arity, "check relations up to this arity");
  cm->add_option("--json", mo_json, "also write the report to this file");
  cm->callback([&] { rc = run_morphism(mo_src, mo_dst, mo_map, mo_arity, mo_json); });

  // ---- cochain commands
  auto* cdg = app.add_subcommand("deligne", "covered-manifold cochain operations");
  cdg->require_subcommand(1);

  std::string mk_kind, mk_nerve = "t2", mk_k = "1", mk_json;
  std::vector<std::string> mk_thetas;
  int mk_level = 1, mk_degree = 1;
  auto* cmk = cdg->add_subcommand("make", "construct a cochain file");
  cmk->add_option("kind", mk_kind, "prequantize|flat|zero")->required();
  cmk->add_option("--nerve", mk_nerve, "nerve spec: s1, t1..t3, trivial:<chart>");
  cmk->add_option("--k", mk_k, "prequantization class (rational)");
  cmk->add_option("--theta", mk_thetas, "flat holonomy per circle factor (scalars)");
  cmk->add_option("--level", mk_level, "cochain level");
  cmk->add_option("--degree", mk_degree, "cochain total degree");
  cmk->add_option("--json", mk_json, "also write the cochain to this file");
  cmk->callback([&] {
    rc = run_deligne_make(mk_kind, mk_nerve, rational_from_str(mk_k), mk_thetas, mk_level,
                          mk_degree, mk_json);
  });

  std::string dc_file, dc_json;
  auto* cdc = cdg->add_subcommand("check", "cocycle test with residuals and discrepancies");
  cdc->add_option("cochain", dc_file, "cochain JSON file")->required();
  cdc->add_option("--json", dc_json, "also write the report to this file");
  cdc->callback([&] { rc = run_deligne_check(dc_file, dc_json); });

  std::string cv_file, cv_json;
  auto* ccv = cdg->add_subcommand("curv", "glued curvature form of a top-degree cocycle");
  ccv->add_option("cochain", cv_file, "cochain JSON file")->required();
  ccv->add_option("--json", cv_json, "also write the report to this file");
  ccv->callback([&] { rc = run_deligne_curv(cv_file, cv_json); });

  std::string ga_file1, ga_file2, ga_json;
  int ga_band = 1;
  auto* cga = cdg->add_subcommand("gauge", "search for a gauge witness between cocycles");
  cga->add_option("first", ga_file1, "cochain JSON file")->required();
  cga->add_option("second", ga_file2, "cochain JSON file")->required();
  cga->add_option("--band", ga_band, "witness Fourier band");
  cga->add_option("--json", ga_json, "also write the report to this file");
  cga->callback([&] { rc = run_deligne_gauge(ga_file1, ga_file2, ga_band, ga_json); });

  std::string ho_file, ho_json;
  int ho_axis = -1;
  auto* cho = cdg->add_subcommand("holonomy", "circle integral of a degree-1 cocycle mod 1");
  cho->add_option("cochain", ho_file, "cochain JSON file")->required();
  cho->add_option("--axis", ho_axis, "restrict a torus cochain to this coordinate circle");
  cho->add_option("--json", ho_json, "also write the report to this file");
  cho->callback([&] {
    rc = run_deligne_holonomy(ho_file, ho_axis >= 0 ? std::optional<int>(ho_axis) : std::nullopt,
                              ho_json);
  });

  std::string fl_nerve = "s1", fl_json;
  int fl_band = 2;
  uint64_t fl_seed = 0;
  bool fl_seed_set = false;
  auto* cfl = cdg->add_subcommand("flat", "classify seeded flat cocycles by holonomy");
  cfl->add_option("--nerve", fl_nerve, "nerve spec: s1, t1..t3, trivial:<chart>");
  cfl->add_option("--band", fl_band, "witness Fourier band");
  cfl->add_option("--seed", fl_seed, "sampling seed")->each([&](const std::string&) {
    fl_seed_set = true;
  });
  cfl->add_option("--json", fl_json, "also write the report to this file");
  cfl->callback([&] {
    rc = run_deligne_flat(fl_nerve, fl_band, fl_seed_set ? fl_seed : default_seed(), fl_json);
  });

  std::string dg_datum, dg_member, dg_diff, dg_json;
  std::vector<std::string> dg_bracket;
  auto* cdl = cdg->add_subcommand("dglie", "semidirect model: membership, bracket, differential");
  cdl->add_option("--datum", dg_datum, "connection cochain JSON file (for --member)");
  cdl->add_option("--member", dg_member, "element JSON file to test against --datum");
  cdl->add_option("--bracket", dg_bracket, "two element JSON files")->expected(0, 2);
  cdl->add_option("--differential", dg_diff, "element JSON file");
  cdl->add_option("--json", dg_json, "also write the report to this file");
  cdl->callback([&] { rc = run_deligne_dglie(dg_datum, dg_member, dg_bracket, dg_diff, dg_json); });

  std::string cp_datum, cp_json;
  std::vector<std::string> cp_members;
  auto* ccp = cdg->add_subcommand("compare", "strict model against the homotopy brackets");
  ccp->add_option("--datum", cp_datum, "connection cochain JSON file")->required();
  ccp->add_option("members", cp_members, "element JSON files")->required();
  ccp->add_option("--json", cp_json, "also write the report to this file");
  ccp->callback([&] { rc = run_deligne_compare(cp_datum, cp_members, cp_json); });

  // ---- scenarios
  auto* cs = app.add_subcommand("scenario", "named reproducible experiments");
  cs->require_subcommand(1);

  bool sl_json = false;
  auto* csl = cs->add_subcommand("list", "list scenario names and summaries");
  csl->add_flag("--json", sl_json, "emit the list as JSON");
  csl->callback([&] {
    auto infos = list_scenarios();
    if (sl_json) {
      Json arr = Json::array();
      for (const auto& i : infos)
        arr.push_back(Json{{"name", i.name}, {"summary", i.summary}, {"defaults", i.defaults}});
      std::cout << emit_report(Json{{"kind", "scenario-list"}, {"scenarios", arr}});
    } else {
      for (const auto& i : infos) std::cout << i.name << "  -  " << i.summary << "\n";
    }
    rc = 0;
  });

  std::string sr_name, sr_json;
  std::vector<std::string> sr_sets;
  uint64_t sr_seed = 0;
  bool sr_seed_set = false;
  auto* csr = cs->add_subcommand("run", "run one scenario and emit its report");
  csr->add_option("name", sr_name, "scenario name")->required();
  csr->add_option("--set", sr_sets, "override parameter: key=value");
  csr->add_option("--seed", sr_seed, "randomization seed")->each([&](const std::string&) {
    sr_seed_set = true;
  });
  csr->add_option("--json", sr_json, "also write the report to this file");
  csr->callback([&] {
    std::map<std::string, std::string> overrides;
    for (const auto& s : sr_sets) {
      auto eq = s.find('=');
      require(eq != std::string::npos && eq > 0, Errc::InvalidOverride,
              "--set wants key=value, got '" + s + "'");
      overrides[s.substr(0, eq)] = s.substr(eq + 1);
    }
    ScenarioResult res = run_scenario(sr_name, overrides, sr_seed_set ? sr_seed : default_seed());
    rc = finish(res.report, sr_json);
  });

  try {
    int prc = dispatch(app, argc, argv);
    if (prc != 0) return prc;
  } catch (const Error& e) {
    std::cerr << emit_report(Json{{"kind", "error"}, {"error", e.what()}});
    return 2;
  } catch (const std::exception& e) {
    std::cerr << emit_report(Json{{"kind", "error"}, {"error", e.what()}});
    return 2;
  }
  return rc;
}
