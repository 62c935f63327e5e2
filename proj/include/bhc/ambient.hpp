#pragma once

// Ambient 3-manifolds given in a single coordinate chart: conformally flat
// metrics h = (F beta)^-2 (dx^2 + dy^2 + dz^2) and the BCV family M^3(m, l).
// Curvature is computed generically from metric jets; conformally flat
// spaces additionally expose the closed-form normal Ricci curvature.

#include <memory>
#include <string>

#include "bhc/field.hpp"
#include "bhc/jet.hpp"
#include "bhc/types.hpp"

namespace bhc {

/// Symmetric 3x3 array addressed by (i, j) in either order.
template <class T>
struct Sym3 {
  std::array<T, 6> c{};
  T& operator()(int i, int j) { return c[Jet3::pair_slot(i, j)]; }
  const T& operator()(int i, int j) const { return c[Jet3::pair_slot(i, j)]; }
};

class AmbientSpace {
 public:
  virtual ~AmbientSpace() = default;

  virtual std::string describe() const = 0;
  virtual const Domain& domain() const = 0;
  /// Metric components at p as jets in (x, y, z), order 3.
  virtual Sym3<Jet3> metric_jets(const Vec3& p, Engine engine) const = 0;
};

class ConformallyFlatSpace final : public AmbientSpace {
 public:
  ConformallyFlatSpace(ScalarField3 F, ScalarField3 beta);

  const ScalarField3& F() const { return F_; }
  const ScalarField3& beta() const { return beta_; }
  /// F * beta, the reciprocal of the total conformal factor.
  const ScalarField3& combined() const { return combined_; }

  std::string describe() const override;
  const Domain& domain() const override { return combined_.domain(); }
  Sym3<Jet3> metric_jets(const Vec3& p, Engine engine) const override;

 private:
  ScalarField3 F_;
  ScalarField3 beta_;
  ScalarField3 combined_;
};

/// h = (dx^2 + dy^2)/F^2 + (dz + (l/2)(y dx - x dy)/F)^2 with F = 1 + m(x^2 + y^2).
class BCVSpace final : public AmbientSpace {
 public:
  BCVSpace(double m, double l);

  double m() const { return m_; }
  double l() const { return l_; }
  const ScalarField3& base_factor() const { return F_; }

  /// Orthonormal frame E1 = F d_x - (l y/2) d_z, E2 = F d_y + (l x/2) d_z, E3 = d_z.
  std::array<Vec3, 3> frame(const Vec3& p) const;

  std::string describe() const override;
  const Domain& domain() const override { return F_.domain(); }
  Sym3<Jet3> metric_jets(const Vec3& p, Engine engine) const override;

 private:
  double m_;
  double l_;
  ScalarField3 F_;
};

/// Christoffel symbols Gamma^k_ij stored as [k][i][j].
using Christoffel = std::array<Mat3, 3>;

/// Differential data of the metric at one point; derivatives in (x, y, z).
struct AmbientJets {
  Vec3 point{};
  Sym3<Jet3> metric;                      // order 3
  Sym3<Jet3> inverse;                     // order 3
  std::array<Sym3<Jet3>, 3> christoffel;  // Gamma^k_ij, valid through order 2
  Mat3 ricci{};                           // Ric_ij (lowered)

  Mat3 metric_value() const;
  Mat3 inverse_value() const;
  Christoffel christoffel_value() const;
};

AmbientJets ambient_jets(const AmbientSpace& space, const Vec3& p, Engine engine = Engine::jets);

Mat3 metric_at(const AmbientSpace& space, const Vec3& p);
Christoffel christoffel_at(const AmbientSpace& space, const Vec3& p);

struct AdaptedFrame {
  Vec3 e1{};
  Vec3 e2{};
  Vec3 normal{};
};

struct RicciData {
  Mat3 ricci_operator{};  // (1,1)-tensor, row = upper index
  Mat3 ricci_lowered{};
  double ric_normal_normal = kNaN;
  std::array<double, 2> ric_normal_tangent{kNaN, kNaN};
};

/// Ricci from Christoffel jets, R(X,Y)Z = [nabla_X, nabla_Y]Z - nabla_[X,Y] Z.
RicciData ricci_numeric(const AmbientSpace& space, const Vec3& p, Engine engine = Engine::jets);
RicciData ricci_numeric(const AmbientSpace& space, const Vec3& p, const AdaptedFrame& frame,
                        Engine engine = Engine::jets);
RicciData ricci_from_jets(const AmbientJets& jets, const AdaptedFrame* frame = nullptr);

/// Closed-form Ric(xi, xi) for the h-unit normal xi = (F beta) xi0:
/// u Lap(u) - 2 |grad u|^2 + u Hess(u)(xi0, xi0), u = F beta, flat operators.
/// `xi0` must be a Euclidean unit vector.
double ricci_normal_conformal(const ConformallyFlatSpace& space, const Vec3& p, const Vec3& xi0,
                              Engine engine = Engine::jets);

}  // namespace bhc
