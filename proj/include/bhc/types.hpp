#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace bhc {

using Vec2 = std::array<double, 2>;
using Vec3 = std::array<double, 3>;
using Mat2 = std::array<Vec2, 2>;
using Mat3 = std::array<Vec3, 3>;

inline constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Source of leaf derivatives: forward jets or the finite-difference oracle.
enum class Engine { jets, fd };

std::string to_string(Engine e);
Engine engine_from_string(const std::string& s);

/// Point outside a field's declared domain, or on/near an excluded locus.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A metric or conformal factor that must be positive was not.
class PositivityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid descriptor or configuration (bad family parameters, unknown names).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

/// h(a, b) for a symmetric bilinear form given as a full matrix.
inline double form(const Mat3& h, const Vec3& a, const Vec3& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) s += h[i][j] * a[i] * b[j];
  return s;
}

inline double form(const Mat2& g, const Vec2& a, const Vec2& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) s += g[i][j] * a[i] * b[j];
  return s;
}

inline Mat2 inverse(const Mat2& g) {
  const double det = g[0][0] * g[1][1] - g[0][1] * g[1][0];
  if (det == 0.0) throw std::domain_error("singular 2x2 matrix");
  return {{{g[1][1] / det, -g[0][1] / det}, {-g[1][0] / det, g[0][0] / det}}};
}

Mat3 inverse(const Mat3& h);

}  // namespace bhc
