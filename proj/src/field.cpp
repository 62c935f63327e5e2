#include "bhc/field.hpp"

#include <algorithm>
#include <cstdio>
#include <utility>

namespace bhc {

namespace {

std::string format_point(const Vec3& p) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "(%.6g, %.6g, %.6g)", p[0], p[1], p[2]);
  return buf;
}

constexpr const char* kAxis[3] = {"x", "y", "z"};

struct Stencil {
  std::vector<std::pair<int, double>> taps;  // (offset in steps, weight)
};

// Second-order central stencils for d^k/dx^k, weights already divided by 2 where needed.
const Stencil& central_stencil(int k) {
  static const Stencil s0{{{0, 1.0}}};
  static const Stencil s1{{{-1, -0.5}, {1, 0.5}}};
  static const Stencil s2{{{-1, 1.0}, {0, -2.0}, {1, 1.0}}};
  static const Stencil s3{{{-2, -0.5}, {-1, 1.0}, {1, -1.0}, {2, 0.5}}};
  switch (k) {
    case 0: return s0;
    case 1: return s1;
    case 2: return s2;
    case 3: return s3;
    default: throw std::invalid_argument("stencil order above 3");
  }
}

}  // namespace

std::string to_string(Engine e) { return e == Engine::jets ? "jets" : "fd"; }

Engine engine_from_string(const std::string& s) {
  if (s == "jets") return Engine::jets;
  if (s == "fd") return Engine::fd;
  throw ConfigError("unknown engine '" + s + "'");
}

Mat3 inverse(const Mat3& h) {
  const double c00 = h[1][1] * h[2][2] - h[1][2] * h[2][1];
  const double c01 = h[1][2] * h[2][0] - h[1][0] * h[2][2];
  const double c02 = h[1][0] * h[2][1] - h[1][1] * h[2][0];
  const double det = h[0][0] * c00 + h[0][1] * c01 + h[0][2] * c02;
  if (det == 0.0) throw std::domain_error("singular 3x3 matrix");
  Mat3 r{};
  r[0][0] = c00 / det;
  r[1][0] = c01 / det;
  r[2][0] = c02 / det;
  r[0][1] = (h[0][2] * h[2][1] - h[0][1] * h[2][2]) / det;
  r[1][1] = (h[0][0] * h[2][2] - h[0][2] * h[2][0]) / det;
  r[2][1] = (h[0][1] * h[2][0] - h[0][0] * h[2][1]) / det;
  r[0][2] = (h[0][1] * h[1][2] - h[0][2] * h[1][1]) / det;
  r[1][2] = (h[0][2] * h[1][0] - h[0][0] * h[1][2]) / det;
  r[2][2] = (h[0][0] * h[1][1] - h[0][1] * h[1][0]) / det;
  return r;
}

std::optional<std::string> Domain::violation(const Vec3& p, double eps) const {
  for (std::size_t i = 0; i < 3; ++i) {
    if (!std::isfinite(p[i])) return std::string("non-finite coordinate ") + kAxis[i];
    if (p[i] < box[i].lo) return std::string(kAxis[i]) + " >= " + std::to_string(box[i].lo);
    if (p[i] > box[i].hi) return std::string(kAxis[i]) + " <= " + std::to_string(box[i].hi);
  }
  for (const auto& locus : loci)
    if (!(locus.clearance(p) > eps)) return locus.name;
  return std::nullopt;
}

void Domain::require(const Vec3& p) const {
  if (auto v = violation(p, margin))
    throw DomainError("point " + format_point(p) + " violates domain boundary '" + *v + "'");
}

double Domain::locus_clearance(const Vec3& p) const {
  double c = kInf;
  for (const auto& locus : loci) c = std::min(c, locus.clearance(p));
  return c;
}

Domain Domain::intersect(const Domain& other) const {
  Domain d;
  for (std::size_t i = 0; i < 3; ++i)
    d.box[i] = {std::max(box[i].lo, other.box[i].lo), std::min(box[i].hi, other.box[i].hi)};
  d.loci = loci;
  for (const auto& l : other.loci) {
    const bool dup = std::any_of(d.loci.begin(), d.loci.end(),
                                 [&](const SingularLocus& e) { return e.name == l.name; });
    if (!dup) d.loci.push_back(l);
  }
  d.margin = std::max(margin, other.margin);
  return d;
}

ScalarField3::ScalarField3(std::string name, Fn fn, Domain domain)
    : name_(std::move(name)), fn_(std::move(fn)), domain_(std::move(domain)) {}

double ScalarField3::value(const Vec3& p) const { return fn_(Jet3(p[0]), Jet3(p[1]), Jet3(p[2])).value(); }

ScalarField3 operator*(const ScalarField3& a, const ScalarField3& b) {
  return ScalarField3(
      a.name() + "*" + b.name(),
      [fa = a.fn_, fb = b.fn_](const Jet3& x, const Jet3& y, const Jet3& z) { return fa(x, y, z) * fb(x, y, z); },
      a.domain().intersect(b.domain()));
}

Jet3 jet_eval(const ScalarField3& field, const Vec3& p, int order) {
  if (order < 0 || order > Jet3::kMaxOrder) throw std::invalid_argument("jet order must be in 0..3");
  if (auto v = field.domain().violation(p, field.domain().margin))
    throw DomainError("field '" + field.name() + "' evaluated at " + format_point(p) +
                      " violates domain boundary '" + *v + "'");
  const Jet3 j = field(Jet3::variable(p[0], 0), Jet3::variable(p[1], 1), Jet3::variable(p[2], 2));
  return j.truncated(order);
}

double fd_step(int order, double coordinate) {
  const double eps = std::numeric_limits<double>::epsilon();
  return std::pow(eps, 1.0 / (order + 4)) * std::max(1.0, std::abs(coordinate));
}

double fd_partial(const ScalarField3& field, const Vec3& p, MultiIndex index) {
  const int n = index.order();
  if (index.x < 0 || index.y < 0 || index.z < 0 || n > 3)
    throw std::invalid_argument("fd_partial supports multi-indices of total order <= 3");
  if (n == 0) {
    field.domain().require(p);
    return field.value(p);
  }
  const Vec3 h{fd_step(n, p[0]), fd_step(n, p[1]), fd_step(n, p[2])};
  const auto& sx = central_stencil(index.x);
  const auto& sy = central_stencil(index.y);
  const auto& sz = central_stencil(index.z);

  auto estimate = [&](double scale) {
    double sum = 0.0;
    for (const auto& [ox, wx] : sx.taps)
      for (const auto& [oy, wy] : sy.taps)
        for (const auto& [oz, wz] : sz.taps) {
          const Vec3 q{p[0] + ox * h[0] * scale, p[1] + oy * h[1] * scale, p[2] + oz * h[2] * scale};
          if (auto v = field.domain().violation(q, 0.0))
            throw DomainError("finite-difference stencil for '" + field.name() + "' at " + format_point(p) +
                              " crosses domain boundary '" + *v + "'");
          sum += wx * wy * wz * field.value(q);
        }
    const double denom = std::pow(h[0] * scale, index.x) * std::pow(h[1] * scale, index.y) *
                         std::pow(h[2] * scale, index.z);
    return sum / denom;
  };
  // central stencils have even error expansions: one Richardson level removes h^2
  return (4.0 * estimate(0.5) - estimate(1.0)) / 3.0;
}

Jet3 fd_jet(const ScalarField3& field, const Vec3& p, int active_vars) {
  Jet3 j(fd_partial(field, p, {}));
  auto unit = [](int i) {
    MultiIndex m;
    if (i == 0) m.x = 1;
    if (i == 1) m.y = 1;
    if (i == 2) m.z = 1;
    return m;
  };
  auto add = [](MultiIndex a, MultiIndex b) { return MultiIndex{a.x + b.x, a.y + b.y, a.z + b.z}; };
  for (int i = 0; i < active_vars; ++i) j.set_d(i, fd_partial(field, p, unit(i)));
  for (const auto& [i, k] : Jet3::kPairs)
    if (i < active_vars && k < active_vars) j.set_d(i, k, fd_partial(field, p, add(unit(i), unit(k))));
  for (const auto& [i, k, l] : Jet3::kTriples)
    if (i < active_vars && k < active_vars && l < active_vars)
      j.set_d(i, k, l, fd_partial(field, p, add(add(unit(i), unit(k)), unit(l))));
  return j;
}

Jet3 leaf_jet(const ScalarField3& field, const Vec3& p, Engine engine, int active_vars) {
  if (engine == Engine::jets) {
    Jet3 j = jet_eval(field, p, 3);
    if (active_vars < 3) {
      // drop derivatives in inactive variables
      Jet3 r(j.value());
      for (int i = 0; i < active_vars; ++i) r.set_d(i, j.d(i));
      for (const auto& [a, b] : Jet3::kPairs)
        if (b < active_vars) r.set_d(a, b, j.d(a, b));
      for (const auto& [a, b, c] : Jet3::kTriples)
        if (c < active_vars) r.set_d(a, b, c, j.d(a, b, c));
      return r;
    }
    return j;
  }
  field.domain().require(p);
  return fd_jet(field, p, active_vars);
}

}  // namespace bhc
