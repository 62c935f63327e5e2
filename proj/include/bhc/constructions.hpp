#pragma once

// Closed-form solution families and the identities they satisfy: the plane
// conditions in conformally flat charts, the conformal 3-sphere and hyperbolic
// 3-space families built from a planar function w, and the curvature/fibre
// families of biharmonic Hopf cylinders.

#include <memory>
#include <vector>

#include "bhc/ambient.hpp"
#include "bhc/biharmonic.hpp"
#include "bhc/curve.hpp"
#include "bhc/surface.hpp"

namespace bhc {

// ---------------------------------------------------------------------------
// Standard chart factors

ScalarField3 unit_field();
/// (1 + x^2 + y^2 + z^2)/2: the round 3-sphere of curvature 1.
ScalarField3 sphere_factor();
/// (1 - x^2 - y^2 - z^2)/2 on the unit ball: hyperbolic 3-space of curvature -1.
ScalarField3 hyperbolic_factor();

// ---------------------------------------------------------------------------
// Planes z = a1 x + a2 y + a3

/// The quadratic condition in u = F beta and its partials, restricted to the
/// plane; zero iff Ric(xi, xi) = 2H^2 there.
double plane_condition(const ConformallyFlatSpace& space, double a1, double a2, double a3, const Vec2& q,
                    Engine engine = Engine::jets);

/// H = (-a1 u_x - a2 u_y + u_z)/sqrt(1 + a1^2 + a2^2) on the plane.
double plane_mean_curvature(const ConformallyFlatSpace& space, double a1, double a2, double a3, const Vec2& q,
                            Engine engine = Engine::jets);

/// f = c / |H|. Throws DomainError flagged "harmonic branch" when H = 0.
double f_from_mean_curvature(const ConformallyFlatSpace& space, double a1, double a2, double a3, const Vec2& q,
                             double c, Engine engine = Engine::jets);

/// The same f as a conformal factor over the (x, y) chart, exact through order 2.
ConformalFactorSpec factor_from_mean_curvature(std::shared_ptr<const ConformallyFlatSpace> space, double a1,
                                               double a2, double a3, double c);

// ---------------------------------------------------------------------------
// Families built from a planar function w(x, y)

/// r^3 (r^2 + z^2) / D_w with D_w = -2rz - 2(r^2+z^2) atan(z/r) + w r^3 (r^2+z^2),
/// r = sqrt(1 + x^2 + y^2). Its z-derivative over its square is 4/(1+x^2+y^2+z^2)^2.
ScalarField3 psi_w_field(const SurfaceField& w);
/// 2 r^3 / D_k for constant w = k; equals 2 psi_k / (1 + x^2 + y^2 + z^2).
ScalarField3 phi_k_field(double k);
/// beta = 2 psi_w / (1 + x^2 + y^2 + z^2), the conformal change of the round chart.
ScalarField3 sphere_beta_field(const SurfaceField& w);

/// Ball analog with rho = sqrt(1 - x^2 - y^2): F beta = rho^3 (rho^2 - z^2) / E_w,
/// E_w = -2 rho z - 2(rho^2 - z^2) atan(z/rho) + w rho^3 (rho^2 - z^2).
ScalarField3 psi_w_hyperbolic_field(const SurfaceField& w);
/// beta = 2 rho^3 / E_w.
ScalarField3 hyperbolic_beta_field(const SurfaceField& w);

double psi_w(const SurfaceField& w, const Vec3& p);
double phi_k(double k, const Vec3& p);
double psi_w_hyperbolic(const SurfaceField& w, const Vec3& p);

SurfaceField constant_planar(double k);

struct PositivityAudit {
  bool passed = true;
  double min_value = kInf;
  Vec3 argmin{kNaN, kNaN, kNaN};
  std::size_t samples = 0;
};

/// Samples Phi_k on the cube |x|, |y|, |z| <= half_width with n points per
/// axis; a sample fails when the denominator D_k is not positive.
PositivityAudit audit_phi_k(double k, double half_width = 20.0, int n = 41);

/// Max |w_xx + w_yy| from finite differences over the grid.
double harmonicity_defect(const SurfaceField& w, const GridSpec& grid);

// ---------------------------------------------------------------------------
// Hopf-cylinder families

enum class Branch { neg, zero, pos };

std::string to_string(Branch b);
Branch branch_from_string(const std::string& s);

/// Positive nonconstant solutions of 3k'^2 - 2k k'' = 4k^2 (k^2 - (4m + K)).
/// Each branch is 1/g(s):
///   neg:  g = C e^{2as} + D e^{-2as} + sqrt(4CD + 1/(4m+K)), a = sqrt(-(4m+K))
///   zero: g = (16 + C^2 (s + D)^2) / (4C)
///   pos:  g = C cos(2bs) + D sin(2bs) + sqrt(1/(4m+K) + C^2 + D^2), b = sqrt(4m+K)
struct KappaFamily {
  Branch branch = Branch::pos;
  double m = 0.0;
  double K = 0.0;
  double C = 0.0;
  double D = 0.0;

  /// Branch chosen from the sign of 4m + K.
  static KappaFamily make(double m, double K, double C, double D);
  /// Throws ConfigError if the branch disagrees with 4m + K or the
  /// parameters give a constant or complex family.
  void validate() const;

  KappaDerivs eval(double s) const;
  CurvatureProfile profile() const;
  std::string describe() const;
};

/// Solutions of psi'' = K psi:
///   neg: a sin(sqrt(-K) z) + b cos(sqrt(-K) z); zero: a z + b; pos: a e^{sqrt(K) z} + b e^{-sqrt(K) z}.
struct PsiFamily {
  Branch branch = Branch::pos;
  double K = 0.0;
  double a = 0.0;
  double b = 0.0;

  static PsiFamily make(double K, double a, double b);
  void validate() const;

  /// psi and its first two derivatives.
  std::array<double, 3> eval(double z) const;
  Jet3 jet(const Jet3& z) const;
  std::string describe() const;
  /// Maximal subintervals of `range` where psi > 0, found by a 1e-3 scan plus
  /// bisection and shrunk by `clip` at interior roots.
  std::vector<Interval> positivity_intervals(Interval range, double clip = 0.05) const;
};

KappaDerivs kappa_eval(const KappaFamily& fam, double s);
std::array<double, 3> psi_eval(const PsiFamily& fam, double z);

/// 3k'^2 - 2k k'' - 4k^2 (k^2 - (4m + K)).
double kappa_ode_residual(const KappaFamily& fam, double s);
/// psi''/psi - K.
double psi_ode_residual(const PsiFamily& fam, double z);

/// f(s, z) = psi(z) kappa(s)^(-3/2). Throws ConfigError when the families
/// carry different K, unless `allow_mismatch` (used for negative controls).
ConformalFactorSpec assemble_hopf_factor(const KappaFamily& kfam, const PsiFamily& pfam, bool allow_mismatch = false);

/// f = d1 e^{z sqrt(kappa^2 - 4m)} + d2 e^{-z sqrt(kappa^2 - 4m)} for constant kappa.
ConformalFactorSpec constant_kappa_factor(double kappa, double m, double d1, double d2);

}  // namespace bhc
