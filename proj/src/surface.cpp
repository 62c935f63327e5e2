#include "bhc/surface.hpp"

#include <cstdio>

namespace bhc {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Value-only field of one chart variable, differentiated by the fd oracle.
ScalarField3 along_s(std::string name, std::function<double(double)> fn, Interval range) {
  Domain d;
  d.box[0] = range;
  return ScalarField3(
      std::move(name), [fn = std::move(fn)](const Jet3& s, const Jet3&, const Jet3&) { return Jet3(fn(s.value())); },
      d);
}

Vec3 apply(const Christoffel& G, const Vec3& a, const Vec3& b) {
  Vec3 r{};
  for (std::size_t k = 0; k < 3; ++k)
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) r[k] += G[k][i][j] * a[i] * b[j];
  return r;
}

Vec3 add(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }

}  // namespace

Jet3 surface_field_jet(const SurfaceField& field, const Vec2& q, Engine engine) {
  if (engine == Engine::jets) return field.fn(Jet3::variable(q[0], 0), Jet3::variable(q[1], 1));
  const ScalarField3 wrapped(field.name,
                             [fn = field.fn](const Jet3& u, const Jet3& v, const Jet3&) { return fn(u, v); });
  return fd_jet(wrapped, {q[0], q[1], 0.0}, 2);
}

// ---------------------------------------------------------------------------

GraphImmersion::GraphImmersion(double a1, double a2, double a3, std::shared_ptr<const ConformallyFlatSpace> space)
    : a1_(a1), a2_(a2), a3_(a3), space_(std::move(space)) {
  if (!space_) throw std::invalid_argument("GraphImmersion: null ambient space");
}

Vec3 GraphImmersion::flat_normal() const {
  const double n = std::sqrt(1.0 + a1_ * a1_ + a2_ * a2_);
  return {-a1_ / n, -a2_ / n, 1.0 / n};
}

std::string GraphImmersion::describe() const {
  return "plane z = " + num(a1_) + " x + " + num(a2_) + " y + " + num(a3_) + " in " + space_->describe();
}

Vec3 GraphImmersion::position(const Vec2& q) const { return {q[0], q[1], a1_ * q[0] + a2_ * q[1] + a3_}; }

std::array<Jet3, 3> GraphImmersion::map_jets(const Vec2& q, Engine) const {
  const Jet3 x = Jet3::variable(q[0], 0);
  const Jet3 y = Jet3::variable(q[1], 1);
  return {x, y, a1_ * x + a2_ * y + a3_};
}

// ---------------------------------------------------------------------------

HopfCylinderImmersion::HopfCylinderImmersion(std::shared_ptr<const BCVSpace> space, CurvatureProfile kappa,
                                             Interval s_range, CurveStart start, double step)
    : space_(std::move(space)) {
  if (!space_) throw std::invalid_argument("HopfCylinderImmersion: null ambient space");
  // The normal (y'/F)E1 - (x'/F)E2 sees the base curve with the opposite
  // rotation to J, so the curve is traced with J-curvature -kappa.
  curve_ = integrate_curve(std::move(kappa), space_->m(), s_range, step, start, -1.0);
}

std::string HopfCylinderImmersion::describe() const {
  return "Hopf cylinder over kappa = " + curve_.kappa().name + " in " + space_->describe();
}

Vec3 HopfCylinderImmersion::position(const Vec2& q) const {
  const CurveSample c = curve_.state_at(q[0]);
  return {c.x, c.y, q[1]};
}

std::array<Jet3, 3> HopfCylinderImmersion::map_jets(const Vec2& q, Engine engine) const {
  const Jet3 z = Jet3::variable(q[1], 1);
  if (engine == Engine::jets) {
    const auto J = curve_.jets_at(q[0]);
    return {J[0], J[1], z};
  }
  const PlaneCurve* c = &curve_;
  const auto fx = along_s("x(s)", [c](double s) { return c->state_at(s).x; }, curve_.range());
  const auto fy = along_s("y(s)", [c](double s) { return c->state_at(s).y; }, curve_.range());
  return {fd_jet(fx, {q[0], 0, 0}, 1), fd_jet(fy, {q[0], 0, 0}, 1), z};
}

int HopfCylinderImmersion::known_mean_curvature_order(Engine engine) const {
  return engine == Engine::jets ? curve_.kappa().known_derivatives : Jet3::kMaxOrder;
}

int HopfCylinderImmersion::map_jet_order(Engine engine) const {
  return engine == Engine::jets ? curve_.jet_order() : Jet3::kMaxOrder;
}

std::optional<Jet3> HopfCylinderImmersion::known_mean_curvature(const Vec2& q, Engine engine) const {
  if (engine == Engine::jets) return 0.5 * curve_.kappa().jet(q[0]);
  const CurvatureProfile* k = &curve_.kappa();
  const auto fk = along_s("kappa(s)", [k](double s) { return (*k)(s).k0; }, curve_.range());
  return 0.5 * fd_jet(fk, {q[0], 0, 0}, 1);
}

Jet3 HopfCylinderImmersion::lift_coefficient(double s) const {
  const auto J = curve_.jets_at(s);
  const Jet3 F = 1.0 + space_->m() * (J[0] * J[0] + J[1] * J[1]);
  return (0.5 * space_->l()) * (J[0] * J[1].partial(0) - J[1] * J[0].partial(0)) / F;
}

HopfFrame HopfCylinderImmersion::frame_at(const Vec2& q) const {
  const CurveSample c = curve_.state_at(q[0]);
  const double m = space_->m();
  const double l = space_->l();
  const double F = 1.0 + m * (c.x * c.x + c.y * c.y);
  const double dx = F * std::cos(c.theta);
  const double dy = F * std::sin(c.theta);
  HopfFrame f;
  f.X = {dx, dy, 0.5 * l / F * (c.x * dy - c.y * dx)};
  f.V = {0, 0, 1};
  f.xi = {dy, -dx, -0.5 * l / F * (c.x * dx + c.y * dy)};
  return f;
}

HopfFrameIdentities HopfCylinderImmersion::frame_identities(const Vec2& q, Engine engine) const {
  const auto P = map_jets(q, engine);
  const double m = space_->m();
  const double l = space_->l();
  const Jet3 F = 1.0 + m * (P[0] * P[0] + P[1] * P[1]);
  const Jet3 dx = P[0].partial(0);
  const Jet3 dy = P[1].partial(0);
  // xi = (y'/F) E1 - (x'/F) E2 in coordinates; depends on s only
  const std::array<Jet3, 3> xi{dy, -1.0 * dx, (-0.5 * l) * (P[0] * dx + P[1] * dy) / F};
  const Vec3 p{P[0].value(), P[1].value(), q[1]};
  const AmbientJets a = ambient_jets(*space_, p, engine);
  const Christoffel G = a.christoffel_value();
  const Mat3 h = a.metric_value();

  const Vec3 X{dx.value(), dy.value(), 0.5 * l / F.value() * (P[0].value() * dy.value() - P[1].value() * dx.value())};
  const Vec3 V{0, 0, 1};
  const Vec3 xv{xi[0].value(), xi[1].value(), xi[2].value()};
  const Vec3 dxi{xi[0].d(0), xi[1].d(0), xi[2].d(0)};

  const Vec3 nabla_X_xi = add(dxi, apply(G, X, xv));
  const Vec3 nabla_V_xi = apply(G, V, xv);
  const Vec3 nabla_X_V = apply(G, X, V);
  return {form(h, nabla_X_xi, X), form(h, nabla_X_xi, V), form(h, nabla_V_xi, X), -form(h, nabla_X_V, xv)};
}

// ---------------------------------------------------------------------------

SurfaceGeometry surface_geometry(const Immersion& imm, const Vec2& q, Engine engine) {
  SurfaceGeometry geo;
  geo.q = q;
  const auto P = imm.map_jets(q, engine);
  geo.p = {P[0].value(), P[1].value(), P[2].value()};
  const AmbientJets amb = ambient_jets(imm.ambient(), geo.p, engine);

  Sym3<Jet3> h;
  std::array<Sym3<Jet3>, 3> G;
  for (const auto& [i, j] : Jet3::kPairs) {
    h(i, j) = compose(amb.metric(i, j), P);
    for (std::size_t k = 0; k < 3; ++k) G[k](i, j) = compose(amb.christoffel[k](i, j), P);
  }

  std::array<std::array<Jet3, 3>, 2> T;
  for (int a = 0; a < 2; ++a)
    for (std::size_t i = 0; i < 3; ++i) T[static_cast<std::size_t>(a)][i] = P[i].partial(a);

  Jet3 g[2][2];
  for (int a = 0; a < 2; ++a)
    for (int b = a; b < 2; ++b) {
      Jet3 s;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          s += h(i, j) * T[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)] *
               T[static_cast<std::size_t>(b)][static_cast<std::size_t>(j)];
      g[a][b] = s;
      g[b][a] = s;
    }

  // conormal n = T_0 x T_1; the h-unit normal is h^-1 n / |n|
  const auto& t0 = T[0];
  const auto& t1 = T[1];
  const std::array<Jet3, 3> n{t0[1] * t1[2] - t0[2] * t1[1], t0[2] * t1[0] - t0[0] * t1[2],
                              t0[0] * t1[1] - t0[1] * t1[0]};
  std::array<Jet3, 3> raised;
  Jet3 n2;
  {
    Sym3<Jet3> hinv;
    for (const auto& [i, j] : Jet3::kPairs) hinv(i, j) = compose(amb.inverse(i, j), P);
    for (int k = 0; k < 3; ++k) {
      Jet3 s;
      for (int l = 0; l < 3; ++l) s += hinv(k, l) * n[static_cast<std::size_t>(l)];
      raised[static_cast<std::size_t>(k)] = s;
    }
  }
  for (std::size_t k = 0; k < 3; ++k) n2 += n[k] * raised[k];
  if (!(n2.value() > 0.0) || !std::isfinite(n2.value()))
    throw DomainError("degenerate normal at (" + num(q[0]) + ", " + num(q[1]) + ")");
  const Jet3 inv_len = reciprocal(sqrt(n2));

  Jet3 B[2][2];
  for (int a = 0; a < 2; ++a)
    for (int b = a; b < 2; ++b) {
      Jet3 s;
      for (std::size_t k = 0; k < 3; ++k) {
        Jet3 acc = T[static_cast<std::size_t>(a)][k].partial(b);
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j)
            acc += G[k](i, j) * T[static_cast<std::size_t>(a)][static_cast<std::size_t>(i)] *
                   T[static_cast<std::size_t>(b)][static_cast<std::size_t>(j)];
        s += acc * n[k];
      }
      B[a][b] = s * inv_len;
      B[b][a] = B[a][b];
    }

  const Jet3 det = g[0][0] * g[1][1] - g[0][1] * g[0][1];
  const Jet3 inv_det = reciprocal(det);
  const Jet3 gi[2][2] = {{g[1][1] * inv_det, -1.0 * g[0][1] * inv_det},
                         {-1.0 * g[0][1] * inv_det, g[0][0] * inv_det}};
  const Jet3 Hjet = 0.5 * (gi[0][0] * B[0][0] + 2.0 * gi[0][1] * B[0][1] + gi[1][1] * B[1][1]);

  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b) {
      geo.g[a][b] = g[a][b].value();
      geo.g_inv[a][b] = gi[a][b].value();
      geo.shape.B[a][b] = B[a][b].value();
    }
  for (int c = 0; c < 2; ++c)
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        double s = 0;
        for (int d = 0; d < 2; ++d)
          s += gi[c][d].value() * (g[b][d].d(a) + g[a][d].d(b) - g[a][b].d(d));
        geo.christoffel[static_cast<std::size_t>(c)][static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
            0.5 * s;
      }

  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b)
      geo.shape.A[a][b] = geo.g_inv[a][0] * geo.shape.B[0][b] + geo.g_inv[a][1] * geo.shape.B[1][b];
  geo.shape.H = Hjet.value();
  geo.shape.normA2 = 0;
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b) geo.shape.normA2 += geo.shape.A[a][b] * geo.shape.A[b][a];
  for (std::size_t k = 0; k < 3; ++k) geo.shape.xi[k] = raised[k].value() * inv_len.value();

  if (auto known = imm.known_mean_curvature(q, engine)) {
    geo.mean_curvature = *known;
    geo.mean_curvature_order = std::min(2, imm.known_mean_curvature_order(engine));
  } else {
    geo.mean_curvature = Hjet;
    geo.mean_curvature_order = imm.map_is_affine() ? 2 : std::max(0, imm.map_jet_order(engine) - 2);
  }

  const Mat3 hv = amb.metric_value();
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t i = 0; i < 3; ++i) geo.tangent[a][i] = T[a][i].value();
  const double len0 = std::sqrt(form(hv, geo.tangent[0], geo.tangent[0]));
  Vec3 e1{};
  for (std::size_t i = 0; i < 3; ++i) e1[i] = geo.tangent[0][i] / len0;
  const double proj = form(hv, geo.tangent[1], e1);
  Vec3 w{};
  for (std::size_t i = 0; i < 3; ++i) w[i] = geo.tangent[1][i] - proj * e1[i];
  const double len1 = std::sqrt(form(hv, w, w));
  Vec3 e2{};
  for (std::size_t i = 0; i < 3; ++i) e2[i] = w[i] / len1;
  geo.frame = {e1, e2, geo.shape.xi};
  geo.frame_coords = {Vec2{1.0 / len0, 0.0}, Vec2{-proj / len0 / len1, 1.0 / len1}};

  geo.ambient_ricci = amb.ricci;
  geo.ric_nn = form(amb.ricci, geo.shape.xi, geo.shape.xi);
  const Vec2 ric_cov{form(amb.ricci, geo.shape.xi, geo.tangent[0]), form(amb.ricci, geo.shape.xi, geo.tangent[1])};
  for (std::size_t a = 0; a < 2; ++a) geo.ric_xi_tangent[a] = geo.g_inv[a][0] * ric_cov[0] + geo.g_inv[a][1] * ric_cov[1];

  if (const auto* cf = dynamic_cast<const ConformallyFlatSpace*>(&imm.ambient())) {
    const double e = std::sqrt(dot(geo.shape.xi, geo.shape.xi));
    const Vec3 xi0{geo.shape.xi[0] / e, geo.shape.xi[1] / e, geo.shape.xi[2] / e};
    geo.ric_nn_closed_form = ricci_normal_conformal(*cf, geo.p, xi0, engine);
  }
  return geo;
}

Mat2 induced_metric(const Immersion& imm, const Vec2& q) { return surface_geometry(imm, q).g; }

ShapeData shape_data(const Immersion& imm, const Vec2& q, Engine engine) {
  return surface_geometry(imm, q, engine).shape;
}

Vec2 surface_grad(const SurfaceGeometry& geo, const Jet3& f) {
  return {geo.g_inv[0][0] * f.d(0) + geo.g_inv[0][1] * f.d(1), geo.g_inv[1][0] * f.d(0) + geo.g_inv[1][1] * f.d(1)};
}

double surface_laplacian(const SurfaceGeometry& geo, const Jet3& f) {
  double s = 0;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      double t = f.d(a, b);
      for (int c = 0; c < 2; ++c)
        t -= geo.christoffel[static_cast<std::size_t>(c)][static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] *
             f.d(c);
      s += geo.g_inv[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] * t;
    }
  return s;
}

Vec2 surface_grad(const Immersion& imm, const SurfaceField& f, const Vec2& q, Engine engine) {
  return surface_grad(surface_geometry(imm, q, engine), surface_field_jet(f, q, engine));
}

double surface_laplacian(const Immersion& imm, const SurfaceField& f, const Vec2& q, Engine engine) {
  return surface_laplacian(surface_geometry(imm, q, engine), surface_field_jet(f, q, engine));
}

Vec2 frame_components(const SurfaceGeometry& geo, const Vec2& v) {
  return {form(geo.g, v, geo.frame_coords[0]), form(geo.g, v, geo.frame_coords[1])};
}

Vec2 apply_shape_operator(const SurfaceGeometry& geo, const Vec2& v) {
  return {geo.shape.A[0][0] * v[0] + geo.shape.A[0][1] * v[1], geo.shape.A[1][0] * v[0] + geo.shape.A[1][1] * v[1]};
}

Vec2 codazzi_residual(const GraphImmersion& imm, const Vec2& q, Engine engine) {
  const SurfaceGeometry geo = surface_geometry(imm, q, engine);
  const Vec2 gH = surface_grad(geo, geo.mean_curvature);
  return frame_components(geo, {gH[0] - geo.ric_xi_tangent[0], gH[1] - geo.ric_xi_tangent[1]});
}

}  // namespace bhc
