#include "bhc/runner.hpp"

#include <cstdio>
#include <istream>
#include <set>

namespace bhc {

using json = nlohmann::ordered_json;

namespace {

ScalarField3 field_from(const FieldDesc& d, const ParamMap& params) {
  const Expr e = Expr::parse(d.expr, {"x", "y", "z"}, params);
  Domain dom;
  for (const auto& loc : d.loci) {
    const Expr c = Expr::parse(loc.clearance, {"x", "y", "z"}, params);
    dom.loci.push_back({loc.name, [c](const Vec3& p) { return c.value(p); }});
  }
  return ScalarField3(d.expr, [e](const Jet3& x, const Jet3& y, const Jet3& z) { return e({x, y, z}); }, dom);
}

CurvatureProfile profile_from_expr(const std::string& text, const ParamMap& params) {
  const Expr e = Expr::parse(text, {"s"}, params);
  return {text, [e](double s) {
            const Jet3 j = e({Jet3::variable(s, 0), Jet3(0.0), Jet3(0.0)});
            return KappaDerivs{j.value(), j.d(0), j.d(0, 0), j.d(0, 0, 0)};
          }};
}

KappaFamily kappa_family(const KappaDesc& d, double m, const ParamMap& params) {
  const double K = resolve(d.K, params), C = resolve(d.C, params), D = resolve(d.D, params);
  if (d.branch.empty()) return KappaFamily::make(m, K, C, D);
  KappaFamily f{branch_from_string(d.branch), m, K, C, D};
  f.validate();
  return f;
}

}  // namespace

BuiltCase build_case(const CaseConfig& c) {
  const ParamMap& P = c.params;
  BuiltCase b;
  std::shared_ptr<const ConformallyFlatSpace> conformal;
  std::shared_ptr<const BCVSpace> bcv;
  if (c.ambient.kind == "conformal") {
    conformal = std::make_shared<ConformallyFlatSpace>(field_from(c.ambient.F, P), field_from(c.ambient.beta, P));
    b.ambient = conformal;
  } else {
    bcv = std::make_shared<BCVSpace>(resolve(c.ambient.m, P), resolve(c.ambient.l, P));
    b.ambient = bcv;
  }

  std::optional<KappaFamily> kfam;
  std::array<std::string, 2> chart{"x", "y"};
  const double a1 = resolve(c.immersion.a1, P), a2 = resolve(c.immersion.a2, P), a3 = resolve(c.immersion.a3, P);
  if (c.immersion.kind == "graph") {
    if (!conformal) throw ConfigError("config.immersion: a graph immersion needs a conformal ambient");
    b.immersion = std::make_unique<GraphImmersion>(a1, a2, a3, conformal);
  } else {
    if (!bcv) throw ConfigError("config.immersion: a Hopf cylinder needs a bcv ambient");
    CurvatureProfile profile;
    if (c.immersion.kappa.kind == "expr") {
      profile = profile_from_expr(c.immersion.kappa.expr, P);
    } else {
      kfam = kappa_family(c.immersion.kappa, bcv->m(), P);
      profile = kfam->profile();
    }
    const Interval s{resolve(c.immersion.s_range[0], P), resolve(c.immersion.s_range[1], P)};
    const CurveStart start{resolve(c.immersion.start[0], P), resolve(c.immersion.start[1], P),
                           resolve(c.immersion.start[2], P)};
    b.immersion = std::make_unique<HopfCylinderImmersion>(bcv, profile, s, start, resolve(c.immersion.step, P));
    chart = {"s", "z"};
  }

  const FactorDesc& f = c.factor;
  if (f.kind == "expr") {
    const Expr e = Expr::parse(f.expr, {chart[0], chart[1]}, P);
    b.factor = {{f.expr, [e](const Jet3& u, const Jet3& v) { return e({u, v, Jet3(0.0)}); }}, "expr: " + f.expr};
  } else if (f.kind == "hopf_family") {
    if (!kfam) throw ConfigError("config.factor: hopf_family needs a kappa family on a Hopf cylinder");
    b.factor = assemble_hopf_factor(
        *kfam, PsiFamily::make(resolve(f.K, P), resolve(f.a, P), resolve(f.b, P)), f.allow_mismatch);
  } else if (f.kind == "constant_kappa") {
    if (!bcv) throw ConfigError("config.factor: constant_kappa needs a bcv ambient");
    b.factor = constant_kappa_factor(resolve(f.kappa, P), bcv->m(), resolve(f.d1, P), resolve(f.d2, P));
  } else {
    if (!conformal || c.immersion.kind != "graph")
      throw ConfigError("config.factor: mean_curvature needs a graph in a conformal ambient");
    b.factor = factor_from_mean_curvature(conformal, a1, a2, a3, resolve(f.c, P));
  }

  b.system = system_from_string(c.system);
  if (b.system == System::hopf && c.immersion.kind != "hopf_cylinder")
    throw ConfigError("config.system: hopf needs a Hopf cylinder immersion");
  b.grid.u = {resolve(c.grid.u[0], P), resolve(c.grid.u[1], P)};
  b.grid.v = {resolve(c.grid.v[0], P), resolve(c.grid.v[1], P)};
  b.grid.nu = c.grid.nu;
  b.grid.nv = c.grid.nv;
  b.grid.margin = resolve(c.grid.margin, P);
  if (c.grid.disk_radius) b.grid.disk_radius = resolve(*c.grid.disk_radius, P);
  return b;
}

double default_tolerance(const std::string& engine) { return engine == "fd" ? 1e-3 : 1e-6; }

CaseResult run_case(const CaseConfig& config, unsigned threads) {
  const BuiltCase b = build_case(config);
  CaseResult res;
  res.config = config;
  Verdict& v = res.verdict;
  v.id = config.id;
  v.expect_pass = config.expect == "pass";
  v.tolerance = config.tolerance.value_or(default_tolerance(config.engine));

  const Engine primary = config.engine == "fd" ? Engine::fd : Engine::jets;
  bool evaluated = true;
  try {
    res.report = residual_report(b.system, *b.immersion, b.factor, b.grid, primary, threads);
    if (config.engine == "both") {
      const ResidualReport fd = residual_report(b.system, *b.immersion, b.factor, b.grid, Engine::fd, threads);
      v.engine_gap = 0.0;
      for (std::size_t i = 0; i < res.report.rows.size() && i < fd.rows.size(); ++i)
        for (std::size_t k = 0; k < res.report.rows[i].values.size(); ++k) {
          const double d = std::abs(res.report.rows[i].values[k] - fd.rows[i].values[k]);
          if (!std::isnan(d)) v.engine_gap = std::max(v.engine_gap, d);
        }
    }
  } catch (const PositivityError& e) {
    evaluated = false;
    v.audits.push_back({"f > 0 on grid", false, e.what()});
  }

  if (evaluated) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "min f = %.6g", res.report.min_f);
    v.audits.push_back({"f > 0 on grid", res.report.min_f > 0, buf});
  }
  for (const auto& a : config.audits) {
    if (a.kind == "phi_k") {
      const double k = resolve(a.k, config.params);
      const PositivityAudit pa = audit_phi_k(k, resolve(a.half_width, config.params));
      char buf[160];
      std::snprintf(buf, sizeof buf, "min Phi = %.6g at (%.4g, %.4g, %.4g) over %zu samples", pa.min_value,
                    pa.argmin[0], pa.argmin[1], pa.argmin[2], pa.samples);
      v.audits.push_back({"Phi_k > 0 for k = " + format_double(k), pa.passed, buf});
    } else {
      const Expr e = Expr::parse(a.w, {"x", "y"}, config.params);
      const SurfaceField w{a.w, [e](const Jet3& x, const Jet3& y) { return e({x, y, Jet3(0.0)}); }};
      const double defect = harmonicity_defect(w, b.grid);
      v.audits.push_back({"w harmonic: " + a.w, defect <= 1e-7, "max |w_xx + w_yy| = " + format_double(defect)});
    }
  }

  for (const auto& s : res.report.summary) v.max_abs.push_back({s.name, s.max_abs});
  bool within = evaluated && !res.report.rows.empty();
  for (const auto& [name, m] : v.max_abs) within = within && m <= v.tolerance;
  if (evaluated && res.report.rows.empty()) v.note = "no grid point clears the singular-locus margin";
  bool audits_ok = true;
  for (const auto& a : v.audits) audits_ok = audits_ok && a.passed;
  v.passed = within && audits_ok;
  return res;
}

// ---------------------------------------------------------------------------

std::vector<std::string> read_manifest(std::istream& in) {
  std::vector<std::string> ids;
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    const auto e = line.find_last_not_of(" \t\r");
    ids.push_back(line.substr(b, e - b + 1));
  }
  return ids;
}

bool SuiteSummary::ok() const {
  for (const auto& v : verdicts)
    if (!v.as_expected()) return false;
  return true;
}

SuiteSummary run_suite(const std::vector<std::string>& ids,
                       const std::function<CaseConfig(const std::string&)>& resolve_id, unsigned threads) {
  std::vector<CaseConfig> configs;
  std::vector<std::string> unknown;
  for (const auto& id : ids) {
    try {
      configs.push_back(resolve_id(id));
    } catch (const ConfigError&) {
      unknown.push_back(id);
    }
  }
  if (!unknown.empty()) {
    std::string list;
    for (const auto& u : unknown) list += (list.empty() ? "" : ", ") + u;
    throw ConfigError("unknown case id(s): " + list);
  }
  SuiteSummary s;
  for (const auto& c : configs) {
    try {
      s.verdicts.push_back(run_case(c, threads).verdict);
    } catch (const DomainError& e) {
      Verdict v;
      v.id = c.id;
      v.expect_pass = c.expect == "pass";
      v.tolerance = c.tolerance.value_or(default_tolerance(c.engine));
      v.note = std::string("domain error: ") + e.what();
      s.verdicts.push_back(v);
    }
  }
  return s;
}

std::vector<SweepRow> sweep(const CaseConfig& config, const std::string& parameter, const std::vector<double>& values,
                            unsigned threads) {
  std::vector<SweepRow> rows;
  for (double value : values) {
    const CaseResult r = run_case(with_parameter(config, parameter, value), threads);
    rows.push_back({value, r.verdict.max_abs, r.verdict.passed});
  }
  return rows;
}

// ---------------------------------------------------------------------------

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> csv_header(System system) {
  std::vector<std::string> h{"case", "u", "v", "x", "y", "z", "H", "A2", "Ric_nn", "f"};
  for (const auto& c : component_names(system)) h.push_back(c);
  return h;
}

void write_csv(std::ostream& out, const CaseResult& r) {
  const auto header = csv_header(system_from_string(r.config.system));
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << "\n";
  for (const auto& row : r.report.rows) {
    const auto& d = row.diag;
    out << r.config.id;
    for (double x : {d.q[0], d.q[1], d.p[0], d.p[1], d.p[2], d.H, d.A2, d.ric_nn, d.f}) out << "," << format_double(x);
    for (double x : row.values) out << "," << format_double(x);
    out << "\n";
  }
}

namespace {

// JSON has no NaN; absent quantities become null.
json num_json(double v) {
  if (std::isnan(v)) return nullptr;
  if (std::isfinite(v)) return v;
  return format_double(v);
}

}  // namespace

void write_json(std::ostream& out, const CaseResult& r) {
  const Verdict& v = r.verdict;
  json j;
  j["case"] = r.config.id;
  j["description"] = r.config.description;
  j["system"] = r.config.system;
  j["engine"] = r.config.engine;
  j["expect"] = r.config.expect;
  j["pass"] = v.passed;
  j["as_expected"] = v.as_expected();
  j["tolerance"] = v.tolerance;
  j["engine_gap"] = num_json(v.engine_gap);
  json comps = json::array();
  for (const auto& s : r.report.summary)
    comps.push_back({{"name", s.name},
                     {"max_abs", num_json(s.max_abs)},
                     {"mean_abs", num_json(s.mean_abs)},
                     {"argmax", {num_json(s.argmax[0]), num_json(s.argmax[1])}}});
  j["summary"] = comps;
  j["points"] = r.report.rows.size();
  j["skipped"] = r.report.skipped;
  j["min_f"] = num_json(r.report.min_f);
  j["max_curvature_gap"] = num_json(r.report.max_curvature_gap);
  if (!std::isnan(r.report.fitted_c)) j["fitted_c"] = r.report.fitted_c;
  json audits = json::array();
  for (const auto& a : v.audits) audits.push_back({{"name", a.name}, {"pass", a.passed}, {"detail", a.detail}});
  j["audits"] = audits;
  if (!v.note.empty()) j["note"] = v.note;
  out << j.dump(2) << "\n";
}

void write_suite_table(std::ostream& out, const SuiteSummary& s) {
  out << "case,expect,verdict,as_expected,max_abs,tolerance,engine_gap\n";
  for (const auto& v : s.verdicts) {
    double m = 0;
    for (const auto& [name, x] : v.max_abs) m = std::max(m, x);
    out << v.id << "," << (v.expect_pass ? "pass" : "fail") << "," << (v.passed ? "pass" : "fail") << ","
        << (v.as_expected() ? "yes" : "no") << "," << format_double(m) << "," << format_double(v.tolerance) << ","
        << format_double(v.engine_gap) << "\n";
  }
}

void write_sweep_csv(std::ostream& out, const std::string& parameter, const std::vector<SweepRow>& rows) {
  out << parameter;
  if (!rows.empty())
    for (const auto& [name, x] : rows.front().max_abs) out << "," << name;
  out << ",pass\n";
  for (const auto& r : rows) {
    out << format_double(r.value);
    for (const auto& [name, x] : r.max_abs) out << "," << format_double(x);
    out << "," << (r.passed ? "pass" : "fail") << "\n";
  }
}

}  // namespace bhc
