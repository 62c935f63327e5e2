#pragma once

// Arclength curves of prescribed geodesic curvature in the base surface
// h1 = (dx^2 + dy^2) / (1 + m(x^2+y^2))^2.
//
// State (x, y, theta) with theta the Euclidean heading:
//   x' = F cos(theta), y' = F sin(theta), theta' = kappa + F_x sin(theta) - F_y cos(theta).

#include <functional>
#include <string>
#include <vector>

#include "bhc/field.hpp"
#include "bhc/jet.hpp"
#include "bhc/types.hpp"

namespace bhc {

struct KappaDerivs {
  double k0 = kNaN;
  double k1 = kNaN;
  double k2 = kNaN;
  double k3 = kNaN;
};

/// Geodesic curvature as a function of arclength. `known_derivatives` counts
/// how many of k1, k2, k3 are supplied analytically (0 for sampled-only data).
struct CurvatureProfile {
  std::string name;
  std::function<KappaDerivs(double)> eval;
  int known_derivatives = 3;

  KappaDerivs operator()(double s) const { return eval(s); }
  /// kappa at s as a jet in variable 0 through order known_derivatives.
  Jet3 jet(double s) const;
};

CurvatureProfile sampled_profile(std::string name, std::function<double(double)> kappa);
CurvatureProfile constant_profile(double kappa);

struct CurveStart {
  double x0 = 0.0;
  double y0 = 0.0;
  double theta0 = 0.0;
};

struct CurveSample {
  double s;
  double x;
  double y;
  double theta;
};

class PlaneCurve {
 public:
  double m() const { return m_; }
  double orientation() const { return orientation_; }
  double step() const { return step_; }
  const Interval& range() const { return range_; }
  const CurvatureProfile& kappa() const { return kappa_; }
  const std::vector<CurveSample>& samples() const { return samples_; }
  /// Max position difference against a run at half the step, on shared nodes.
  double convergence_gap() const { return gap_; }

  /// State at s, advanced from the nearest sample by one partial RK4 step.
  CurveSample state_at(double s) const;
  /// (x, y, theta) as jets in variable 0 (arclength); order 3 when kappa' is
  /// known, order 2 otherwise.
  std::array<Jet3, 3> jets_at(double s) const;
  int jet_order() const { return std::min(3, 2 + kappa_.known_derivatives); }
  /// Geodesic curvature w.r.t. J = rotation by +pi/2, recomputed from the
  /// position jets (equals orientation * kappa).
  double geodesic_curvature_at(double s) const;
  /// |gamma'| in the base metric.
  double speed_at(double s) const;

 private:
  friend PlaneCurve integrate_curve(CurvatureProfile, double, Interval, double, CurveStart, double);
  double m_ = 0.0;
  double orientation_ = 1.0;
  double step_ = 1e-3;
  Interval range_{};
  CurvatureProfile kappa_;
  std::vector<CurveSample> samples_;
  double gap_ = 0.0;
};

/// Fixed-step RK4 integration of the heading ODE over s_range (finite), starting
/// from `start` at s_range.lo. `orientation` = -1 integrates with curvature -kappa.
/// Throws DomainError when the trajectory leaves the chart (F <= 1e-3).
PlaneCurve integrate_curve(CurvatureProfile kappa, double m, Interval s_range, double step = 1e-3,
                           CurveStart start = {}, double orientation = 1.0);

}  // namespace bhc
