#pragma once

// Surface immersions into an ambient chart and their first-principles geometry:
// induced metric, unit normal, second fundamental form, shape operator, mean
// curvature, and the intrinsic gradient and Laplace-Beltrami operator.
//
// Sign conventions: B(X, Y) = h(nabla_X Y, xi) and A = -nabla xi (tangential),
// so A(X) = kappa X - tau V on Hopf cylinders and A = H Id on graph planes.

#include <memory>
#include <optional>

#include "bhc/ambient.hpp"
#include "bhc/curve.hpp"

namespace bhc {

/// Scalar function of the surface chart coordinates (u, v).
struct SurfaceField {
  std::string name;
  std::function<Jet3(const Jet3&, const Jet3&)> fn;

  double value(const Vec2& q) const { return fn(Jet3(q[0]), Jet3(q[1])).value(); }
};

/// Jet in (u, v) = variables (0, 1) through order 3.
Jet3 surface_field_jet(const SurfaceField& field, const Vec2& q, Engine engine);

class Immersion {
 public:
  virtual ~Immersion() = default;

  virtual const AmbientSpace& ambient() const = 0;
  virtual std::string kind() const = 0;
  virtual std::string describe() const = 0;
  /// Names of the chart coordinates, e.g. {"x", "y"} or {"s", "z"}.
  virtual std::array<std::string, 2> chart_names() const = 0;

  virtual Vec3 position(const Vec2& q) const = 0;
  /// Ambient coordinates of the map as jets in (u, v).
  virtual std::array<Jet3, 3> map_jets(const Vec2& q, Engine engine) const = 0;
  /// Highest derivative order carried exactly by map_jets.
  virtual int map_jet_order(Engine engine) const = 0;
  virtual bool map_is_affine() const { return false; }
  /// Mean curvature jet when an exact expression is available.
  virtual std::optional<Jet3> known_mean_curvature(const Vec2&, Engine) const { return std::nullopt; }
  virtual int known_mean_curvature_order(Engine) const { return 0; }
};

/// Plane z = a1 x + a2 y + a3 in a conformally flat chart, parametrized by (x, y).
class GraphImmersion final : public Immersion {
 public:
  GraphImmersion(double a1, double a2, double a3, std::shared_ptr<const ConformallyFlatSpace> space);

  double a1() const { return a1_; }
  double a2() const { return a2_; }
  double a3() const { return a3_; }
  const ConformallyFlatSpace& space() const { return *space_; }
  /// Euclidean unit normal (-a1, -a2, 1)/sqrt(1 + a1^2 + a2^2).
  Vec3 flat_normal() const;

  const AmbientSpace& ambient() const override { return *space_; }
  std::string kind() const override { return "graph"; }
  std::string describe() const override;
  std::array<std::string, 2> chart_names() const override { return {"x", "y"}; }
  Vec3 position(const Vec2& q) const override;
  std::array<Jet3, 3> map_jets(const Vec2& q, Engine engine) const override;
  int map_jet_order(Engine) const override { return Jet3::kMaxOrder; }
  bool map_is_affine() const override { return true; }

 private:
  double a1_, a2_, a3_;
  std::shared_ptr<const ConformallyFlatSpace> space_;
};

struct HopfFrame {
  Vec3 X{};   // horizontal lift of the curve tangent
  Vec3 V{};   // fibre direction E3
  Vec3 xi{};  // (y'/F) E1 - (x'/F) E2
};

struct HopfFrameIdentities {
  double xi_X_X = kNaN;  // <nabla_X xi, X>, expected -kappa
  double xi_X_V = kNaN;  // <nabla_X xi, V>, expected tau
  double xi_V_X = kNaN;  // <nabla_V xi, X>, expected tau
  double tau = kNaN;     // -<nabla_X V, xi>, expected -l/2
};

/// phi(s, z) = (x(s), y(s), z) over a base curve of geodesic curvature kappa.
class HopfCylinderImmersion final : public Immersion {
 public:
  HopfCylinderImmersion(std::shared_ptr<const BCVSpace> space, CurvatureProfile kappa, Interval s_range,
                        CurveStart start = {}, double step = 1e-3);

  const BCVSpace& space() const { return *space_; }
  const PlaneCurve& curve() const { return curve_; }
  const CurvatureProfile& kappa() const { return curve_.kappa(); }

  HopfFrame frame_at(const Vec2& q) const;
  HopfFrameIdentities frame_identities(const Vec2& q, Engine engine = Engine::jets) const;
  /// Coefficient c(s) with X = phi_s + c phi_z, as a jet in s.
  Jet3 lift_coefficient(double s) const;

  const AmbientSpace& ambient() const override { return *space_; }
  std::string kind() const override { return "hopf_cylinder"; }
  std::string describe() const override;
  std::array<std::string, 2> chart_names() const override { return {"s", "z"}; }
  Vec3 position(const Vec2& q) const override;
  std::array<Jet3, 3> map_jets(const Vec2& q, Engine engine) const override;
  int map_jet_order(Engine engine) const override;
  std::optional<Jet3> known_mean_curvature(const Vec2& q, Engine engine) const override;
  int known_mean_curvature_order(Engine engine) const override;

 private:
  std::shared_ptr<const BCVSpace> space_;
  PlaneCurve curve_;
};

struct ShapeData {
  Vec3 xi{};      // unit normal, ambient coordinates
  Mat2 A{};       // shape operator, A[a][b] = A^a_b in the chart basis
  double H = kNaN;
  double normA2 = kNaN;
  Mat2 B{};       // second fundamental form in the chart basis
};

/// Everything the residual evaluators need at one surface point.
struct SurfaceGeometry {
  Vec2 q{};
  Vec3 p{};
  std::array<Vec3, 2> tangent{};
  Mat2 g{};
  Mat2 g_inv{};
  std::array<Mat2, 2> christoffel{};  // Gamma^c_ab as [c][a][b]
  ShapeData shape;
  Jet3 mean_curvature;                // H as a jet in (u, v)
  int mean_curvature_order = 0;       // derivative order of H that is exact
  AdaptedFrame frame;                 // orthonormal e1, e2 (Gram-Schmidt of the chart basis), normal xi
  std::array<Vec2, 2> frame_coords{}; // e1, e2 in chart components
  Mat3 ambient_ricci{};               // Ric_ij at p
  double ric_nn = kNaN;               // Ric(xi, xi) from Christoffel jets
  Vec2 ric_xi_tangent{};              // (Ric xi)^T in chart components
  double ric_nn_closed_form = kNaN;   // conformally flat ambients only
};

SurfaceGeometry surface_geometry(const Immersion& imm, const Vec2& q, Engine engine = Engine::jets);

Mat2 induced_metric(const Immersion& imm, const Vec2& q);
ShapeData shape_data(const Immersion& imm, const Vec2& q, Engine engine = Engine::jets);

/// grad f in chart components; f is a jet in (u, v).
Vec2 surface_grad(const SurfaceGeometry& geo, const Jet3& f);
/// g^ab (d_a d_b f - Gamma^c_ab d_c f).
double surface_laplacian(const SurfaceGeometry& geo, const Jet3& f);
Vec2 surface_grad(const Immersion& imm, const SurfaceField& f, const Vec2& q, Engine engine = Engine::jets);
double surface_laplacian(const Immersion& imm, const SurfaceField& f, const Vec2& q, Engine engine = Engine::jets);

/// Components (g(v, e1), g(v, e2)) of a chart-component tangent vector.
Vec2 frame_components(const SurfaceGeometry& geo, const Vec2& v);
/// A(v) for a chart-component tangent vector.
Vec2 apply_shape_operator(const SurfaceGeometry& geo, const Vec2& v);

/// grad_g H - (Ric xi)^T in the orthonormal tangent frame.
Vec2 codazzi_residual(const GraphImmersion& imm, const Vec2& q, Engine engine = Engine::jets);

}  // namespace bhc
