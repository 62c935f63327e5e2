#include "bhc/ambient.hpp"

#include <sstream>

namespace bhc {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

Sym3<Jet3> jet_inverse(const Sym3<Jet3>& g) {
  const Jet3 c00 = g(1, 1) * g(2, 2) - g(1, 2) * g(1, 2);
  const Jet3 c01 = g(1, 2) * g(0, 2) - g(0, 1) * g(2, 2);
  const Jet3 c02 = g(0, 1) * g(1, 2) - g(1, 1) * g(0, 2);
  const Jet3 det = g(0, 0) * c00 + g(0, 1) * c01 + g(0, 2) * c02;
  const Jet3 inv_det = reciprocal(det);
  Sym3<Jet3> r;
  r(0, 0) = c00 * inv_det;
  r(0, 1) = c01 * inv_det;
  r(0, 2) = c02 * inv_det;
  r(1, 1) = (g(0, 0) * g(2, 2) - g(0, 2) * g(0, 2)) * inv_det;
  r(1, 2) = (g(0, 2) * g(0, 1) - g(0, 0) * g(1, 2)) * inv_det;
  r(2, 2) = (g(0, 0) * g(1, 1) - g(0, 1) * g(0, 1)) * inv_det;
  return r;
}

template <class Fn>
ScalarField3 component_field(std::string name, Fn fn, const Domain& domain) {
  return ScalarField3(std::move(name), fn, domain);
}

}  // namespace

ConformallyFlatSpace::ConformallyFlatSpace(ScalarField3 F, ScalarField3 beta)
    : F_(std::move(F)), beta_(std::move(beta)), combined_(F_ * beta_) {}

std::string ConformallyFlatSpace::describe() const {
  return "conformally flat (F = " + F_.name() + ", beta = " + beta_.name() + ")";
}

Sym3<Jet3> ConformallyFlatSpace::metric_jets(const Vec3& p, Engine engine) const {
  const Jet3 u = leaf_jet(combined_, p, engine);
  if (!(u.value() > 0.0))
    throw PositivityError("conformal factor F*beta = " + fmt(u.value()) + " is not positive at (" + fmt(p[0]) +
                          ", " + fmt(p[1]) + ", " + fmt(p[2]) + ")");
  const Jet3 w = reciprocal(u * u);
  Sym3<Jet3> h;
  h(0, 0) = w;
  h(1, 1) = w;
  h(2, 2) = w;
  return h;
}

BCVSpace::BCVSpace(double m, double l) : m_(m), l_(l) {
  Domain d;
  if (m < 0.0) {
    // F = 1 + m r^2 vanishes on the circle r = 1/sqrt(-m)
    d.loci.push_back({"F = 1 + m(x^2+y^2) = 0", [m](const Vec3& p) { return 1.0 + m * (p[0] * p[0] + p[1] * p[1]); }});
  }
  F_ = ScalarField3(
      "1 + " + fmt(m) + "(x^2+y^2)",
      [m](const Jet3& x, const Jet3& y, const Jet3&) { return 1.0 + m * (x * x + y * y); }, d);
}

std::string BCVSpace::describe() const { return "BCV(m = " + fmt(m_) + ", l = " + fmt(l_) + ")"; }

std::array<Vec3, 3> BCVSpace::frame(const Vec3& p) const {
  const double F = 1.0 + m_ * (p[0] * p[0] + p[1] * p[1]);
  return {Vec3{F, 0.0, -l_ * p[1] / 2.0}, Vec3{0.0, F, l_ * p[0] / 2.0}, Vec3{0.0, 0.0, 1.0}};
}

Sym3<Jet3> BCVSpace::metric_jets(const Vec3& p, Engine engine) const {
  const double m = m_;
  const double l = l_;
  auto components = [m, l](const Jet3& x, const Jet3& y) {
    const Jet3 F = 1.0 + m * (x * x + y * y);
    const Jet3 invF = reciprocal(F);
    const Jet3 a = (0.5 * l) * y * invF;
    const Jet3 b = (-0.5 * l) * x * invF;
    Sym3<Jet3> h;
    h(0, 0) = invF * invF + a * a;
    h(1, 1) = invF * invF + b * b;
    h(2, 2) = Jet3(1.0);
    h(0, 1) = a * b;
    h(0, 2) = a;
    h(1, 2) = b;
    return h;
  };
  const double Fp = 1.0 + m * (p[0] * p[0] + p[1] * p[1]);
  if (!(Fp > 0.0))
    throw PositivityError("BCV factor F = " + fmt(Fp) + " is not positive at (" + fmt(p[0]) + ", " + fmt(p[1]) + ")");
  if (engine == Engine::jets) {
    domain().require(p);
    return components(Jet3::variable(p[0], 0), Jet3::variable(p[1], 1));
  }
  Sym3<Jet3> h;
  for (const auto& [i, j] : Jet3::kPairs) {
    const ScalarField3 comp = component_field(
        "h_" + std::to_string(i) + std::to_string(j),
        [components, i, j](const Jet3& x, const Jet3& y, const Jet3&) { return components(x, y)(i, j); }, domain());
    h(i, j) = leaf_jet(comp, p, Engine::fd);
  }
  return h;
}

Mat3 AmbientJets::metric_value() const {
  Mat3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = metric(i, j).value();
  return r;
}

Mat3 AmbientJets::inverse_value() const {
  Mat3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = inverse(i, j).value();
  return r;
}

Christoffel AmbientJets::christoffel_value() const {
  Christoffel r{};
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        r[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            christoffel[static_cast<std::size_t>(k)](i, j).value();
  return r;
}

AmbientJets ambient_jets(const AmbientSpace& space, const Vec3& p, Engine engine) {
  AmbientJets a;
  a.point = p;
  a.metric = space.metric_jets(p, engine);
  a.inverse = jet_inverse(a.metric);

  // d_l g_ij as jets one order lower
  std::array<Sym3<Jet3>, 3> dg;
  for (int l = 0; l < 3; ++l)
    for (const auto& [i, j] : Jet3::kPairs) dg[static_cast<std::size_t>(l)](i, j) = a.metric(i, j).partial(l);

  for (int k = 0; k < 3; ++k)
    for (const auto& [i, j] : Jet3::kPairs) {
      Jet3 s;
      for (int l = 0; l < 3; ++l) {
        const Jet3 lowered = dg[static_cast<std::size_t>(i)](j, l) + dg[static_cast<std::size_t>(j)](i, l) -
                             dg[static_cast<std::size_t>(l)](i, j);
        s += a.inverse(k, l) * lowered;
      }
      a.christoffel[static_cast<std::size_t>(k)](i, j) = 0.5 * s;
    }

  // R_jk = d_i G^i_jk - d_j G^i_ik + G^i_im G^m_jk - G^i_jm G^m_ik
  const auto& G = a.christoffel;
  auto gam = [&](int k, int i, int j) { return G[static_cast<std::size_t>(k)](i, j).value(); };
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k) {
      double r = 0.0;
      for (int i = 0; i < 3; ++i) {
        r += G[static_cast<std::size_t>(i)](j, k).d(i) - G[static_cast<std::size_t>(i)](i, k).d(j);
        for (int m = 0; m < 3; ++m) r += gam(i, i, m) * gam(m, j, k) - gam(i, j, m) * gam(m, i, k);
      }
      a.ricci[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] = r;
    }
  return a;
}

Mat3 metric_at(const AmbientSpace& space, const Vec3& p) {
  const Sym3<Jet3> h = space.metric_jets(p, Engine::jets);
  Mat3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = h(i, j).value();
  return r;
}

Christoffel christoffel_at(const AmbientSpace& space, const Vec3& p) {
  return ambient_jets(space, p).christoffel_value();
}

RicciData ricci_from_jets(const AmbientJets& jets, const AdaptedFrame* frame) {
  RicciData d;
  d.ricci_lowered = jets.ricci;
  const Mat3 inv = jets.inverse_value();
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) {
      double s = 0.0;
      for (std::size_t k = 0; k < 3; ++k) s += inv[i][k] * jets.ricci[k][j];
      d.ricci_operator[i][j] = s;
    }
  if (frame != nullptr) {
    d.ric_normal_normal = form(jets.ricci, frame->normal, frame->normal);
    d.ric_normal_tangent = {form(jets.ricci, frame->normal, frame->e1), form(jets.ricci, frame->normal, frame->e2)};
  }
  return d;
}

RicciData ricci_numeric(const AmbientSpace& space, const Vec3& p, Engine engine) {
  return ricci_from_jets(ambient_jets(space, p, engine));
}

RicciData ricci_numeric(const AmbientSpace& space, const Vec3& p, const AdaptedFrame& frame, Engine engine) {
  return ricci_from_jets(ambient_jets(space, p, engine), &frame);
}

double ricci_normal_conformal(const ConformallyFlatSpace& space, const Vec3& p, const Vec3& xi0, Engine engine) {
  if (std::abs(dot(xi0, xi0) - 1.0) > 1e-9)
    throw std::invalid_argument("ricci_normal_conformal: xi0 must be a Euclidean unit vector");
  const Jet3 u = leaf_jet(space.combined(), p, engine);
  if (!(u.value() > 0.0)) throw PositivityError("conformal factor F*beta is not positive");
  double lap = 0.0;
  double grad2 = 0.0;
  double hess_nn = 0.0;
  for (int i = 0; i < 3; ++i) {
    lap += u.d(i, i);
    grad2 += u.d(i) * u.d(i);
    for (int j = 0; j < 3; ++j) hess_nn += u.d(i, j) * xi0[static_cast<std::size_t>(i)] * xi0[static_cast<std::size_t>(j)];
  }
  return u.value() * lap - 2.0 * grad2 + u.value() * hess_nn;
}

}  // namespace bhc
