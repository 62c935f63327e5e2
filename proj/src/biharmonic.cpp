#include "bhc/biharmonic.hpp"

#include <algorithm>
#include <cstdio>
#include <exception>
#include <thread>

namespace bhc {

namespace {

std::string point_str(const Vec2& q) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "(%.6g, %.6g)", q[0], q[1]);
  return buf;
}

// Keeps whichever of a, b has the larger magnitude.
double worse(double a, double b) {
  if (std::isnan(b)) return a;
  return std::abs(b) > std::abs(a) ? b : a;
}

Jet3 factor_jet(const ConformalFactorSpec& f, const Vec2& q, Engine engine) {
  const Jet3 j = surface_field_jet(f.f, q, engine);
  if (!(j.value() > 0.0)) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "conformal factor f = %.6g is not positive at %s", j.value(), point_str(q).c_str());
    throw PositivityError(buf);
  }
  return j;
}

void require_H_order(const SurfaceGeometry& geo, const Immersion& imm) {
  if (geo.mean_curvature_order < 2)
    throw ConfigError("unsupported curve: second derivatives of H are not available for " + imm.describe());
}

PointDiagnostics diagnostics(const SurfaceGeometry& geo, double f) {
  PointDiagnostics d;
  d.q = geo.q;
  d.p = geo.p;
  d.H = geo.shape.H;
  d.A2 = geo.shape.normA2;
  d.ric_nn = geo.ric_nn;
  d.f = f;
  d.curvature_gap = std::isnan(geo.ric_nn_closed_form) ? 0.0 : std::abs(geo.ric_nn - geo.ric_nn_closed_form);
  return d;
}

Vec2 axpy(const Vec2& a, double s, const Vec2& b) { return {a[0] + s * b[0], a[1] + s * b[1]}; }

}  // namespace

ConformalFactorSpec unit_factor() {
  return {{"1", [](const Jet3&, const Jet3&) { return Jet3(1.0); }}, "f = 1 (isometric)"};
}

Components SystemResidual::components() const {
  return {{"r_normal", r_normal}, {"r_tan1", r_tangent[0]}, {"r_tan2", r_tangent[1]}};
}

Components HopfResidual::components() const { return {{"e1", e1}, {"e2", e2}, {"e3", e3}}; }

SystemResidual hypersurface_residual(const Immersion& imm, const Vec2& q, Engine engine) {
  const SurfaceGeometry geo = surface_geometry(imm, q, engine);
  require_H_order(geo, imm);
  const Jet3& H = geo.mean_curvature;
  const double h = H.value();
  const double lap = surface_laplacian(geo, H);
  const Vec2 gH = surface_grad(geo, H);
  const Vec2 AgH = apply_shape_operator(geo, gH);

  auto normal = [&](double ric) { return lap - h * geo.shape.normA2 + h * ric; };
  SystemResidual r;
  r.r_normal = worse(normal(geo.ric_nn), normal(geo.ric_nn_closed_form));
  // 2 A(grad H) + (m/2) grad H^2 - 2H (Ric xi)^T with m = 2
  Vec2 t = axpy({2 * AgH[0], 2 * AgH[1]}, 2 * h, gH);
  t = axpy(t, -2 * h, geo.ric_xi_tangent);
  r.r_tangent = frame_components(geo, t);
  r.diag = diagnostics(geo, 1.0);
  return r;
}

SystemResidual conformal_residual(const Immersion& imm, const ConformalFactorSpec& f, const Vec2& q, Engine engine) {
  const Jet3 fj = factor_jet(f, q, engine);
  const SurfaceGeometry geo = surface_geometry(imm, q, engine);
  require_H_order(geo, imm);
  const Jet3& H = geo.mean_curvature;
  const Jet3 fH = fj * H;
  const double lap = surface_laplacian(geo, fH);
  const Vec2 gfH = surface_grad(geo, fH);
  const Vec2 gH = surface_grad(geo, H);

  auto normal = [&](double ric) { return lap - fH.value() * (geo.shape.normA2 - ric); };
  SystemResidual r;
  r.r_normal = worse(normal(geo.ric_nn), normal(geo.ric_nn_closed_form));
  Vec2 t = apply_shape_operator(geo, gfH);
  t = axpy(t, fH.value(), gH);
  t = axpy(t, -fH.value(), geo.ric_xi_tangent);
  r.r_tangent = frame_components(geo, t);
  r.diag = diagnostics(geo, fj.value());
  return r;
}

UmbilicalPoint umbilical_conditions(const Immersion& imm, const ConformalFactorSpec& f, const Vec2& q, Engine engine) {
  const Jet3 fj = factor_jet(f, q, engine);
  const SurfaceGeometry geo = surface_geometry(imm, q, engine);
  const Jet3 fH = fj * geo.mean_curvature;
  const Vec2 g = surface_grad(geo, fH);
  UmbilicalPoint u;
  u.c1 = std::sqrt(std::max(0.0, form(geo.g, g, g)));
  const double h = geo.shape.H;
  u.c2 = worse(geo.ric_nn - 2 * h * h, geo.ric_nn_closed_form - 2 * h * h);
  u.f_absH = fj.value() * std::abs(h);
  u.totally_geodesic = std::abs(h) <= 1e-12;
  u.diag = diagnostics(geo, fj.value());
  return u;
}

namespace {

struct HopfTerms {
  double ric_nn, ric_xX, ric_xV, tau;
};

struct HopfInputs {
  double k0, k1, k2;
  double Xl, Vl, XXl, VVl;  // derivatives of ln f along X and V
  HopfTerms numeric;
  HopfTerms closed;
  PointDiagnostics diag;
};

HopfInputs hopf_inputs(const HopfCylinderImmersion& cyl, const ConformalFactorSpec& f, const Vec2& q, Engine engine) {
  const Jet3 fj = factor_jet(f, q, engine);
  const SurfaceGeometry geo = surface_geometry(cyl, q, engine);
  require_H_order(geo, cyl);
  const Jet3 kappa = 2.0 * geo.mean_curvature;

  // X = d_s + c d_z in the chart; V = d_z
  const Jet3 c = cyl.lift_coefficient(q[0]);
  const Jet3 lf = log(fj);
  HopfInputs in{};
  in.k0 = kappa.value();
  in.k1 = kappa.d(0);
  in.k2 = kappa.d(0, 0);
  in.Xl = lf.d(0) + c.value() * lf.d(1);
  in.Vl = lf.d(1);
  in.XXl = lf.d(0, 0) + c.d(0) * lf.d(1) + 2 * c.value() * lf.d(0, 1) + c.value() * c.value() * lf.d(1, 1);
  in.VVl = lf.d(1, 1);

  const HopfFrame fr = cyl.frame_at(q);
  const Mat3& ric = geo.ambient_ricci;
  in.numeric = {form(ric, fr.xi, fr.xi), form(ric, fr.xi, fr.X), form(ric, fr.xi, fr.V),
                cyl.frame_identities(q, engine).tau};
  const double m = cyl.space().m(), l = cyl.space().l();
  in.closed = {4 * m - l * l / 2, 0.0, 0.0, -l / 2};
  in.diag = diagnostics(geo, fj.value());
  in.diag.ric_nn = in.numeric.ric_nn;
  in.diag.curvature_gap = std::max({std::abs(in.numeric.ric_nn - in.closed.ric_nn), std::abs(in.numeric.ric_xX),
                                    std::abs(in.numeric.ric_xV), std::abs(in.numeric.tau - in.closed.tau)});
  return in;
}

HopfResidual hopf_system(const HopfInputs& in, const HopfTerms& t) {
  const double k = in.k0, k1 = in.k1, k2 = in.k2;
  HopfResidual r;
  r.e1 = k2 - k * k * k - 2 * k * t.tau * t.tau + k * t.ric_nn + 2 * k1 * in.Xl +
         k * (in.XXl + in.VVl + in.Xl * in.Xl + in.Vl * in.Vl);
  r.e2 = 3 * k * k1 - 2 * k * t.ric_xX + 2 * k * k * in.Xl - 2 * k * t.tau * in.Vl;
  r.e3 = k1 * t.tau + k * t.ric_xV + k * t.tau * in.Xl;
  r.diag = in.diag;
  return r;
}

}  // namespace

HopfResidual hopf_residual(const HopfCylinderImmersion& cyl, const ConformalFactorSpec& f, const Vec2& q,
                           Engine engine) {
  const HopfInputs in = hopf_inputs(cyl, f, q, engine);
  HopfResidual a = hopf_system(in, in.numeric);
  const HopfResidual b = hopf_system(in, in.closed);
  a.e1 = worse(a.e1, b.e1);
  a.e2 = worse(a.e2, b.e2);
  a.e3 = worse(a.e3, b.e3);
  return a;
}

HopfResidual hopf_substituted(const HopfCylinderImmersion& cyl, const ConformalFactorSpec& f, const Vec2& q,
                              Engine engine) {
  const HopfInputs in = hopf_inputs(cyl, f, q, engine);
  const double k = in.k0, k1 = in.k1, k2 = in.k2;
  const double m = cyl.space().m(), l = cyl.space().l();
  HopfResidual r;
  r.e1 = k2 - k * k * k - k * l * l / 2 + k * (4 * m - l * l / 2) + 2 * k1 * in.Xl +
         k * (in.XXl + in.VVl + in.Xl * in.Xl + in.Vl * in.Vl);
  r.e2 = 3 * k * k1 + 2 * k * k * in.Xl + k * l * in.Vl;
  r.e3 = l * (k1 + k * in.Xl);
  r.diag = in.diag;
  return r;
}

// ---------------------------------------------------------------------------

std::vector<Vec2> GridSpec::points() const {
  if (nu < 1 || nv < 1) throw ConfigError("grid counts must be positive");
  auto axis = [](const Interval& r, int n, int i) {
    return n == 1 ? 0.5 * (r.lo + r.hi) : r.lo + (r.hi - r.lo) * i / (n - 1);
  };
  std::vector<Vec2> out;
  out.reserve(static_cast<std::size_t>(nu) * static_cast<std::size_t>(nv));
  for (int i = 0; i < nu; ++i)
    for (int j = 0; j < nv; ++j) {
      const Vec2 q{axis(u, nu, i), axis(v, nv, j)};
      if (disk_radius && q[0] * q[0] + q[1] * q[1] > *disk_radius * *disk_radius) continue;
      out.push_back(q);
    }
  return out;
}

double ResidualReport::max_abs() const {
  double m = 0.0;
  for (const auto& s : summary) m = std::max(m, s.max_abs);
  return m;
}

void ResidualReport::summarize() {
  summary.clear();
  for (const auto& name : components) summary.push_back({name});
  max_curvature_gap = 0.0;
  min_f = kInf;
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < summary.size() && c < row.values.size(); ++c) {
      const double a = std::abs(row.values[c]);
      if (std::isnan(a)) continue;
      summary[c].mean_abs += a;
      if (a > summary[c].max_abs || std::isnan(summary[c].argmax[0])) {
        summary[c].max_abs = std::max(summary[c].max_abs, a);
        summary[c].argmax = row.diag.q;
      }
    }
    max_curvature_gap = std::max(max_curvature_gap, row.diag.curvature_gap);
    min_f = std::min(min_f, row.diag.f);
  }
  if (!rows.empty())
    for (auto& s : summary) s.mean_abs /= static_cast<double>(rows.size());
}

std::string to_string(System s) {
  switch (s) {
    case System::hypersurface: return "hypersurface";
    case System::conformal: return "conformal";
    case System::umbilical: return "umbilical";
    case System::hopf: return "hopf";
  }
  return "?";
}

System system_from_string(const std::string& s) {
  for (System v : {System::hypersurface, System::conformal, System::umbilical, System::hopf})
    if (to_string(v) == s) return v;
  throw ConfigError("unknown system '" + s + "' (expected hypersurface, conformal, umbilical or hopf)");
}

std::vector<std::string> component_names(System s) {
  switch (s) {
    case System::hopf: return {"e1", "e2", "e3"};
    case System::umbilical: return {"c1", "c2", "c3"};
    default: return {"r_normal", "r_tan1", "r_tan2"};
  }
}

ResidualReport residual_report(System system, const Immersion& imm, const ConformalFactorSpec& f,
                               const GridSpec& grid, Engine engine, unsigned threads) {
  const auto* cyl = dynamic_cast<const HopfCylinderImmersion*>(&imm);
  if (system == System::hopf && !cyl) throw ConfigError("the hopf system needs a Hopf cylinder immersion");

  std::vector<Vec2> pts;
  std::size_t skipped = 0;
  for (const Vec2& q : grid.points()) {
    if (imm.ambient().domain().violation(imm.position(q), grid.margin)) {
      ++skipped;
      continue;
    }
    pts.push_back(q);
  }

  std::vector<ReportRow> rows(pts.size());
  std::vector<double> fabsH(pts.size(), kNaN);
  std::vector<std::exception_ptr> errors(pts.size());
  auto eval = [&](std::size_t i) {
    try {
      const Vec2& q = pts[i];
      switch (system) {
        case System::hypersurface: {
          const auto r = hypersurface_residual(imm, q, engine);
          rows[i] = {r.diag, {r.r_normal, r.r_tangent[0], r.r_tangent[1]}};
          break;
        }
        case System::conformal: {
          const auto r = conformal_residual(imm, f, q, engine);
          rows[i] = {r.diag, {r.r_normal, r.r_tangent[0], r.r_tangent[1]}};
          break;
        }
        case System::umbilical: {
          const auto r = umbilical_conditions(imm, f, q, engine);
          rows[i] = {r.diag, {r.c1, r.c2, kNaN}};
          fabsH[i] = r.totally_geodesic ? kNaN : r.f_absH;
          break;
        }
        case System::hopf: {
          const auto r = hopf_residual(*cyl, f, q, engine);
          rows[i] = {r.diag, {r.e1, r.e2, r.e3}};
          break;
        }
      }
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(pts.size())));
  if (workers == 1) {
    for (std::size_t i = 0; i < pts.size(); ++i) eval(i);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < pts.size(); i += workers) eval(i);
      });
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  ResidualReport rep;
  rep.components = component_names(system);
  rep.skipped = skipped;
  if (system == System::umbilical) {
    std::vector<double> vals;
    for (double v : fabsH)
      if (!std::isnan(v)) vals.push_back(v);
    if (!vals.empty()) {
      // lower median, so the fit is an attained value
      const auto mid = vals.begin() + static_cast<std::ptrdiff_t>((vals.size() - 1) / 2);
      std::nth_element(vals.begin(), mid, vals.end());
      rep.fitted_c = *mid;
      for (std::size_t i = 0; i < rows.size(); ++i)
        if (!std::isnan(fabsH[i])) rows[i].values[2] = std::abs(fabsH[i] - rep.fitted_c);
    }
  }
  rep.rows = std::move(rows);
  rep.summarize();
  return rep;
}

}  // namespace bhc
