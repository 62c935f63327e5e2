#pragma once

// Residuals of the biharmonicity systems for surfaces in 3-manifolds, and
// grid sweeps that collect them into reports.
//
// Every evaluator returns the left-hand sides of its system at one chart
// point. Tangential components are given in the orthonormal frame of
// SurfaceGeometry (e1 along the first chart direction).

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bhc/surface.hpp"

namespace bhc {

/// f in the conformal factor lambda = f^(1/2), as a function of the chart.
struct ConformalFactorSpec {
  SurfaceField f;
  std::string provenance;
};

ConformalFactorSpec unit_factor();

/// Pointwise quantities reported next to every residual.
struct PointDiagnostics {
  Vec2 q{};
  Vec3 p{};
  double H = kNaN;
  double A2 = kNaN;
  double ric_nn = kNaN;
  double f = kNaN;
  /// |numeric Ric(xi, xi) - closed form| where a closed form exists, else 0.
  double curvature_gap = 0.0;
};

using Components = std::vector<std::pair<std::string, double>>;

struct SystemResidual {
  double r_normal = kNaN;
  Vec2 r_tangent{kNaN, kNaN};
  PointDiagnostics diag;

  Components components() const;
};

/// Delta H - H|A|^2 + H Ric(xi,xi) and 2A(grad H) + grad(H^2) - 2H (Ric xi)^T.
SystemResidual hypersurface_residual(const Immersion& imm, const Vec2& q, Engine engine = Engine::jets);

/// Delta(fH) - fH(|A|^2 - Ric(xi,xi)) and A(grad fH) + fH(grad H - (Ric xi)^T).
/// Throws PositivityError when f <= 0 at q.
SystemResidual conformal_residual(const Immersion& imm, const ConformalFactorSpec& f, const Vec2& q,
                                  Engine engine = Engine::jets);

struct UmbilicalPoint {
  double c1 = kNaN;     // |grad(fH)|
  double c2 = kNaN;     // Ric(xi,xi) - 2H^2
  double f_absH = kNaN; // f |H|, the quantity that must be constant
  bool totally_geodesic = false;
  PointDiagnostics diag;
};

/// Pointwise part of the umbilical conditions. When H = 0 the point belongs
/// to the totally geodesic branch; c1 and c2 are still filled in.
UmbilicalPoint umbilical_conditions(const Immersion& imm, const ConformalFactorSpec& f, const Vec2& q,
                                    Engine engine = Engine::jets);

struct HopfResidual {
  double e1 = kNaN;
  double e2 = kNaN;
  double e3 = kNaN;
  PointDiagnostics diag;

  Components components() const;
};

/// The Hopf-cylinder system with tau and the Ricci terms evaluated
/// numerically. When the ambient closed forms (Ric(xi,xi) = 4m - l^2/2,
/// Ric(xi,X) = Ric(xi,V) = 0, tau = -l/2) are also evaluated, each component
/// reports the worse of the two paths.
HopfResidual hopf_residual(const HopfCylinderImmersion& cyl, const ConformalFactorSpec& f, const Vec2& q,
                           Engine engine = Engine::jets);

/// The same system after substituting the BCV closed forms, in the form
/// (e1, e2 + ..., l(kappa' + kappa X ln f)); the third entry equals -2 e3.
HopfResidual hopf_substituted(const HopfCylinderImmersion& cyl, const ConformalFactorSpec& f, const Vec2& q,
                              Engine engine = Engine::jets);

// ---------------------------------------------------------------------------
// Grids and reports

struct GridSpec {
  Interval u{0, 1};
  Interval v{0, 1};
  int nu = 20;
  int nv = 20;
  /// Points whose image is within this distance of a singular locus are skipped.
  double margin = 0.1;
  /// Optional disk u^2 + v^2 <= r^2 restricting the grid.
  std::optional<double> disk_radius;

  std::vector<Vec2> points() const;
};

struct ReportRow {
  PointDiagnostics diag;
  std::vector<double> values;
};

struct ComponentSummary {
  std::string name;
  double max_abs = 0.0;
  double mean_abs = 0.0;
  Vec2 argmax{kNaN, kNaN};
};

struct ResidualReport {
  std::vector<std::string> components;
  std::vector<ReportRow> rows;
  std::vector<ComponentSummary> summary;
  std::size_t skipped = 0;  // grid points excluded by the margin
  double max_curvature_gap = 0.0;
  double min_f = kInf;
  /// Fitted constant for the umbilical system (median of f|H|).
  double fitted_c = kNaN;

  double max_abs() const;
  /// Recomputes `summary`, `max_curvature_gap` and `min_f` from `rows`.
  void summarize();
};

enum class System { hypersurface, conformal, umbilical, hopf };

std::string to_string(System s);
System system_from_string(const std::string& s);
std::vector<std::string> component_names(System s);

/// Evaluates `system` over the grid. Rows are in grid order regardless of
/// `threads`. Hopf systems require a HopfCylinderImmersion.
ResidualReport residual_report(System system, const Immersion& imm, const ConformalFactorSpec& f,
                               const GridSpec& grid, Engine engine = Engine::jets, unsigned threads = 1);

}  // namespace bhc
