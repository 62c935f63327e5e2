#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "bhc/surface.hpp"

using namespace bhc;

namespace {

ScalarField3 one() {
  return ScalarField3("1", [](const Jet3&, const Jet3&, const Jet3&) { return Jet3(1.0); });
}

ScalarField3 sphere_factor() {
  return ScalarField3("(1+x^2+y^2+z^2)/2",
                      [](const Jet3& x, const Jet3& y, const Jet3& z) { return 0.5 * (1.0 + x * x + y * y + z * z); });
}

ScalarField3 inverse_z() {
  Domain d;
  d.loci.push_back({"z = 0", [](const Vec3& p) { return p[2]; }});
  return ScalarField3("1/z", [](const Jet3&, const Jet3&, const Jet3& z) { return 1.0 / z; }, d);
}

ScalarField3 bumpy_beta() {
  return ScalarField3("2 + sin(x) cos(y z) + z^2/5", [](const Jet3& x, const Jet3& y, const Jet3& z) {
    return 2.0 + sin(x) * cos(y * z) + z * z / 5.0;
  });
}

std::shared_ptr<const ConformallyFlatSpace> conformal(ScalarField3 F, ScalarField3 beta) {
  return std::make_shared<ConformallyFlatSpace>(std::move(F), std::move(beta));
}

CurvatureProfile sine_profile() {
  return {"1/((sqrt2/2) sin(2 sqrt2 s) + 1)", [](double s) {
            const Jet3 t = Jet3::variable(s, 0);
            const Jet3 j = 1.0 / (std::sqrt(0.5) * sin(2.0 * std::sqrt(2.0) * t) + 1.0);
            return KappaDerivs{j.value(), j.d(0), j.d(0, 0), j.d(0, 0, 0)};
          }};
}

}  // namespace

TEST_CASE("induced metric examples") {
  const GraphImmersion pq1(1, 1, 0, conformal(one(), inverse_z()));
  const Mat2 g = induced_metric(pq1, {0.7, 0.4});
  const double z2 = 1.1 * 1.1;
  CHECK(g[0][0] == doctest::Approx(2 * z2));
  CHECK(g[0][1] == doctest::Approx(z2));
  CHECK(g[1][1] == doctest::Approx(2 * z2));

  const GraphImmersion flat(0, 0, 0, conformal(one(), one()));
  const Mat2 gf = induced_metric(flat, {3, -2});
  CHECK(gf[0][0] == 1.0);
  CHECK(gf[0][1] == 0.0);
  CHECK(gf[1][1] == 1.0);

  const auto bcv = std::make_shared<BCVSpace>(0.25, 0.0);
  const HopfCylinderImmersion cyl(bcv, sine_profile(), {0, 1.1}, {0.3, 0.1, 0.2});
  for (double s : {0.1, 0.5, 1.0}) {
    const Mat2 gc = induced_metric(cyl, {s, 0.3});
    CHECK(std::abs(gc[0][0] - 1) <= 1e-12);
    CHECK(std::abs(gc[0][1]) <= 1e-12);
    CHECK(std::abs(gc[1][1] - 1) <= 1e-12);
  }
}

TEST_CASE("shape data examples") {
  const GraphImmersion pq1(1, 1, 0, conformal(one(), inverse_z()));
  for (const Vec2 q : {Vec2{0.3, 0.5}, Vec2{1.5, 0.2}}) {
    const ShapeData sd = shape_data(pq1, q);
    CHECK(sd.H == doctest::Approx(-1 / (std::sqrt(3.0) * std::pow(q[0] + q[1], 2))).epsilon(1e-12));
    CHECK(sd.normA2 == doctest::Approx(2 * sd.H * sd.H).epsilon(1e-12));
  }

  const GraphImmersion iss(0, 0, 1, conformal(sphere_factor(), one()));
  const ShapeData si = shape_data(iss, {0.8, -1.3});
  CHECK(si.H == doctest::Approx(1.0).epsilon(1e-13));
  CHECK(si.normA2 == doctest::Approx(2.0).epsilon(1e-13));

  const auto bcv = std::make_shared<BCVSpace>(0.25, 0.0);
  const HopfCylinderImmersion cyl(bcv, constant_profile(2.0), {0, 2});
  const ShapeData sc = shape_data(cyl, {0.7, -0.4});
  CHECK(sc.H == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(sc.normA2 == doctest::Approx(4.0).epsilon(1e-9));
}

TEST_CASE("graph planes are umbilical and follow the conformal change law") {
  const auto base = conformal(sphere_factor(), one());
  const auto full = conformal(sphere_factor(), bumpy_beta());
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  double umb = 0, law = 0, closed = 0, self_adj = 0;
  for (int n = 0; n < 40; ++n) {
    const double a1 = u(rng) / 2, a2 = u(rng) / 2, a3 = u(rng);
    const GraphImmersion g0(a1, a2, a3, base), g1(a1, a2, a3, full);
    const Vec2 q{u(rng), u(rng)};
    const SurfaceGeometry geo = surface_geometry(g1, q);
    const ShapeData& sd = geo.shape;
    umb = std::max({umb, std::abs(sd.A[0][0] - sd.H), std::abs(sd.A[1][1] - sd.H), std::abs(sd.A[0][1]),
                    std::abs(sd.A[1][0])});
    // gA symmetric is B symmetric
    self_adj = std::max(self_adj, std::abs(sd.B[0][1] - sd.B[1][0]));

    // H = beta H0 + xi_0(beta) with xi_0 = F xi^0 the unit normal of F^-2 delta
    const Vec3 p = g1.position(q);
    const double H0 = shape_data(g0, q).H;
    const Jet3 beta = jet_eval(full->beta(), p);
    const double F = full->F().value(p);
    const Vec3 n0 = g1.flat_normal();
    const double xi0_beta = F * (n0[0] * beta.d(0) + n0[1] * beta.d(1) + n0[2] * beta.d(2));
    law = std::max(law, std::abs(sd.H - (beta.value() * H0 + xi0_beta)));

    // closed-form mean curvature [-a1 u_x - a2 u_y + u_z]/sqrt(1+a1^2+a2^2), u = F beta
    const Jet3 uj = jet_eval(full->combined(), p);
    const double Hc = (-a1 * uj.d(0) - a2 * uj.d(1) + uj.d(2)) / std::sqrt(1 + a1 * a1 + a2 * a2);
    closed = std::max(closed, std::abs(sd.H - Hc));
  }
  CHECK(umb <= 1e-8);
  CHECK(law <= 1e-8);
  CHECK(closed <= 1e-10);
  CHECK(self_adj <= 1e-12);
}

TEST_CASE("graph normal is the paper orientation") {
  const GraphImmersion g(0.3, -0.7, 0.2, conformal(sphere_factor(), bumpy_beta()));
  const SurfaceGeometry geo = surface_geometry(g, {0.4, 0.1});
  const Vec3 n0 = g.flat_normal();
  const double u = g.space().combined().value(geo.p);
  for (std::size_t i = 0; i < 3; ++i) CHECK(geo.shape.xi[i] == doctest::Approx(u * n0[i]).epsilon(1e-13));
  CHECK(dot(n0, Vec3{1, 0, 0.3}) == doctest::Approx(0.0));
  CHECK(std::abs(geo.ric_nn - geo.ric_nn_closed_form) <= 1e-8);
}

TEST_CASE("Hopf cylinder frame identities") {
  for (const auto& [m, l] : std::vector<std::pair<double, double>>{{0.25, 1.0}, {0.0, 1.0}, {0.25, 0.0}, {-0.25, 0.6}}) {
    const auto bcv = std::make_shared<BCVSpace>(m, l);
    const HopfCylinderImmersion cyl(bcv, sine_profile(), {0, 1.1}, {0.2, -0.3, 0.7});
    for (double s : {0.1, 0.45, 0.9})
      for (double z : {-0.5, 0.8}) {
        const double kappa = cyl.kappa()(s).k0;
        const HopfFrameIdentities id = cyl.frame_identities({s, z});
        CHECK(std::abs(id.xi_X_X + kappa) <= 1e-7);
        CHECK(std::abs(id.xi_X_V - id.tau) <= 1e-7);
        CHECK(std::abs(id.xi_V_X - id.tau) <= 1e-7);
        CHECK(std::abs(id.tau + l / 2) <= 1e-7);

        const HopfFrame f = cyl.frame_at({s, z});
        const Mat3 h = metric_at(*bcv, cyl.position({s, z}));
        const std::array<Vec3, 3> E{f.X, f.V, f.xi};
        for (std::size_t i = 0; i < 3; ++i)
          for (std::size_t j = 0; j < 3; ++j) CHECK(std::abs(form(h, E[i], E[j]) - (i == j ? 1 : 0)) <= 1e-9);

        // first-principles shape data agrees with the frame formulas
        const SurfaceGeometry geo = surface_geometry(cyl, {s, z});
        CHECK(geo.shape.H == doctest::Approx(kappa / 2).epsilon(1e-8));
        CHECK(geo.shape.normA2 == doctest::Approx(kappa * kappa + l * l / 2).epsilon(1e-8));
        for (std::size_t i = 0; i < 3; ++i) CHECK(std::abs(geo.shape.xi[i] - f.xi[i]) <= 1e-9);
        CHECK(std::abs(geo.ric_nn - (4 * m - l * l / 2)) <= 1e-7);
        // A(V) = -tau X: with chart basis (phi_s, phi_z), phi_z = V and X = phi_s + c phi_z
        const double c = cyl.lift_coefficient(s).value();
        const Vec2 AV = apply_shape_operator(geo, {0, 1});
        CHECK(std::abs(AV[0] - l / 2) <= 1e-8);
        CHECK(std::abs(AV[1] - l / 2 * c) <= 1e-8);
      }
  }
}

TEST_CASE("fd engine matches jets on surface geometry") {
  const auto bcv = std::make_shared<BCVSpace>(0.25, 1.0);
  const HopfCylinderImmersion cyl(bcv, sine_profile(), {0, 1.1});
  const SurfaceGeometry a = surface_geometry(cyl, {0.5, 0.2}, Engine::jets);
  const SurfaceGeometry b = surface_geometry(cyl, {0.5, 0.2}, Engine::fd);
  CHECK(std::abs(a.shape.H - b.shape.H) <= 1e-6);
  CHECK(std::abs(a.ric_nn - b.ric_nn) <= 1e-5);
  CHECK(std::abs(a.mean_curvature.d(0, 0) - b.mean_curvature.d(0, 0)) <= 1e-4);
  const HopfFrameIdentities fa = cyl.frame_identities({0.5, 0.2}, Engine::fd);
  CHECK(std::abs(fa.tau + 0.5) <= 1e-5);
}

TEST_CASE("surface operators") {
  const GraphImmersion pq1(1, 1, 0, conformal(one(), inverse_z()));
  const SurfaceField c{"3", [](const Jet3&, const Jet3&) { return Jet3(3.0); }};
  const Vec2 g0 = surface_grad(pq1, c, {0.5, 0.5});
  CHECK(g0[0] == 0.0);
  CHECK(g0[1] == 0.0);
  CHECK(surface_laplacian(pq1, c, {0.5, 0.5}) == 0.0);

  const auto flat = std::make_shared<BCVSpace>(0.0, 0.0);
  const HopfCylinderImmersion cyl(flat, sine_profile(), {0, 1});
  const SurfaceField ez{"exp(z)", [](const Jet3&, const Jet3& z) { return exp(z); }};
  CHECK(surface_laplacian(cyl, ez, {0.4, 0.7}) == doctest::Approx(std::exp(0.7)).epsilon(1e-10));

  const SurfaceField f{"(x+y)^2", [](const Jet3& x, const Jet3& y) { return (x + y) * (x + y); }};
  const double lj = surface_laplacian(pq1, f, {0.6, 0.9}, Engine::jets);
  const double lf = surface_laplacian(pq1, f, {0.6, 0.9}, Engine::fd);
  CHECK(std::abs(lj - lf) <= 1e-6);
  // g = z^2 g0 with g0 = [[2,1],[1,2]]; in dimension 2, Lap_g = z^-2 Lap_g0,
  // and Lap_g0 (x+y)^2 = 2 g0^{ab} summed = 2 (2 - 1 - 1 + 2)/3
  const double z = 1.5;
  const double expect_flat = 2.0 * (2 - 1 - 1 + 2) / 3.0;
  CHECK(lj == doctest::Approx(expect_flat / (z * z)).epsilon(1e-12));
}

TEST_CASE("Codazzi identity on umbilical planes") {
  const GraphImmersion flat(0, 0, 0, conformal(one(), one()));
  const Vec2 r0 = codazzi_residual(flat, {0.3, 0.1});
  CHECK(r0[0] == 0.0);
  CHECK(r0[1] == 0.0);

  const GraphImmersion pq1(1, 1, 0, conformal(one(), inverse_z()));
  double worst = 0;
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 5; ++j) {
      const Vec2 r = codazzi_residual(pq1, {0.2 + 0.2 * i, 0.2 + 0.45 * j});
      worst = std::max({worst, std::abs(r[0]), std::abs(r[1])});
    }
  CHECK(worst <= 1e-6);

  const GraphImmersion iss(0, 0, 1, conformal(sphere_factor(), one()));
  const Vec2 ri = codazzi_residual(iss, {1.2, -0.4});
  CHECK(std::abs(ri[0]) <= 1e-7);
  CHECK(std::abs(ri[1]) <= 1e-7);

  const GraphImmersion tilted(0.4, -0.2, 0.3, conformal(sphere_factor(), bumpy_beta()));
  const Vec2 rt = codazzi_residual(tilted, {0.2, 0.6});
  CHECK(std::abs(rt[0]) <= 1e-8);
  CHECK(std::abs(rt[1]) <= 1e-8);
}
