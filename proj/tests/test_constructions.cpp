#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "bhc/constructions.hpp"

using namespace bhc;

namespace {

std::shared_ptr<const ConformallyFlatSpace> inverse_z() {
  Domain d;
  d.loci.push_back({"z = 0", [](const Vec3& p) { return p[2]; }});
  return std::make_shared<ConformallyFlatSpace>(
      unit_field(), ScalarField3("1/z", [](const Jet3&, const Jet3&, const Jet3& z) { return 1.0 / z; }, d));
}

std::shared_ptr<const ConformallyFlatSpace> sphere_family(const SurfaceField& w) {
  return std::make_shared<ConformallyFlatSpace>(sphere_factor(), sphere_beta_field(w));
}

SurfaceField planar(std::string name, std::function<Jet3(const Jet3&, const Jet3&)> fn) {
  return {std::move(name), std::move(fn)};
}

}  // namespace

TEST_CASE("plane condition examples") {
  const ConformallyFlatSpace flat(unit_field(), unit_field());
  CHECK(plane_condition(flat, 0.3, -0.7, 2.0, {0.1, 0.4}) == 0.0);

  const auto s6 = sphere_family(constant_planar(6));
  for (double x : {-2.0, 0.0, 1.5})
    for (double y : {-1.0, 0.5, 2.5}) CHECK(std::abs(plane_condition(*s6, 0, 0, 0, {x, y})) <= 1e-8);

  // beta = 1/z: beta beta'' - 2 beta'^2 = 2/z^4 - 2/z^4, scaled by (2 + 2)/3
  const auto pq = inverse_z();
  for (double x : {0.3, 1.0})
    for (double y : {0.2, 1.7}) CHECK(std::abs(plane_condition(*pq, 1, 1, 0, {x, y})) <= 1e-12);
}

TEST_CASE("plane condition equals Ric(xi, xi) - 2H^2") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(-1.5, 1.5), A(-1, 1);
  const auto space = std::make_shared<ConformallyFlatSpace>(
      sphere_factor(), ScalarField3("2 + sin x cos(yz) + z^2/5", [](const Jet3& x, const Jet3& y, const Jet3& z) {
        return 2.0 + sin(x) * cos(y * z) + z * z / 5.0;
      }));
  for (int i = 0; i < 40; ++i) {
    const double a1 = A(rng), a2 = A(rng), a3 = A(rng);
    const Vec2 q{U(rng), U(rng)};
    const GraphImmersion plane(a1, a2, a3, space);
    const SurfaceGeometry geo = surface_geometry(plane, q);
    CHECK(plane_condition(*space, a1, a2, a3, q) ==
          doctest::Approx(geo.ric_nn - 2 * geo.shape.H * geo.shape.H).epsilon(1e-9));
    CHECK(plane_mean_curvature(*space, a1, a2, a3, q) == doctest::Approx(geo.shape.H).epsilon(1e-10));
  }
}

TEST_CASE("conformal factor from the mean curvature") {
  const auto pq = inverse_z();
  const double c = std::sqrt(3.0) / 3;
  for (double x : {0.25, 0.9, 1.8})
    for (double y : {0.3, 1.1}) {
      CHECK(f_from_mean_curvature(*pq, 1, 1, 0, {x, y}, c) == doctest::Approx((x + y) * (x + y)).epsilon(1e-12));
      const auto s6 = sphere_family(constant_planar(6));
      CHECK(std::sqrt(f_from_mean_curvature(*s6, 0, 0, 0, {x, y}, 1.0)) ==
            doctest::Approx(3 * (1 + x * x + y * y)).epsilon(1e-12));
    }

  // f |H| is the constant c
  const GridSpec g{{0.2, 2}, {0.2, 2}, 10, 10};
  for (const Vec2& q : g.points())
    CHECK(f_from_mean_curvature(*pq, 1, 1, 0, q, c) * std::abs(plane_mean_curvature(*pq, 1, 1, 0, q)) ==
          doctest::Approx(c).epsilon(1e-9));

  // the field version solves the conformal system
  const GraphImmersion plane(1, 1, 0, pq);
  CHECK(residual_report(System::conformal, plane, factor_from_mean_curvature(pq, 1, 1, 0, c), g).max_abs() <= 1e-6);

  const ConformallyFlatSpace flat(unit_field(), unit_field());
  CHECK_THROWS_WITH_AS(f_from_mean_curvature(flat, 0, 0, 0, {0, 0}, 1.0), doctest::Contains("harmonic branch"),
                       DomainError);
}

TEST_CASE("psi_w and Phi_k closed forms") {
  CHECK(phi_k(6, {0, 0, 0}) == doctest::Approx(1.0 / 3).epsilon(1e-15));
  const ScalarField3 psi = psi_w_field(constant_planar(6));
  for (double z = -3; z <= 3; z += 0.5) {
    const Vec3 p{0.4, -0.7, z};
    const double F = (1 + dot(p, p)) / 2;
    const Jet3 j = jet_eval(psi, p);
    CHECK(std::abs(j.d(2) / (j.value() * j.value()) - 1 / (F * F)) <= 1e-8);
    CHECK(phi_k(6, p) == doctest::Approx(2 * psi_w(constant_planar(6), p) / (1 + dot(p, p))).epsilon(1e-14));
  }

  // ball analog at z = 0: 1/beta = w (1 - x^2 - y^2)/2 and f = beta^-2
  const auto w = constant_planar(6);
  const auto hyp = std::make_shared<ConformallyFlatSpace>(hyperbolic_factor(), hyperbolic_beta_field(w));
  for (double x : {-0.5, 0.0, 0.3})
    for (double y : {-0.2, 0.6}) {
      const Vec3 p{x, y, 0};
      const double lam = 6 * (1 - x * x - y * y) / 2;
      CHECK(1 / hyp->beta().value(p) == doctest::Approx(lam).epsilon(1e-14));
      CHECK(psi_w_hyperbolic(w, p) == doctest::Approx(hyp->combined().value(p)).epsilon(1e-14));
      CHECK(std::sqrt(f_from_mean_curvature(*hyp, 0, 0, 0, {x, y}, 1.0)) == doctest::Approx(lam).epsilon(1e-10));
    }
  CHECK_THROWS_AS(psi_w_hyperbolic(w, {0.9, 0.5, 0}), DomainError);
}

TEST_CASE("plane condition for psi_w equals -(w_xx + w_yy)/w^3 at z = 0") {
  struct Case {
    SurfaceField w;
    std::function<double(double, double)> value, laplacian;
  };
  const std::vector<Case> cases{
      {planar("6 + x", [](const Jet3& x, const Jet3&) { return 6.0 + x; }), [](double x, double) { return 6 + x; },
       [](double, double) { return 0.0; }},
      {planar("5 + x^2 - y^2", [](const Jet3& x, const Jet3& y) { return 5.0 + x * x - y * y; }),
       [](double x, double y) { return 5 + x * x - y * y; }, [](double, double) { return 0.0; }},
      {planar("6 + x^2", [](const Jet3& x, const Jet3&) { return 6.0 + x * x; }),
       [](double x, double) { return 6 + x * x; }, [](double, double) { return 2.0; }},
      {planar("4 + x^2 + y^2", [](const Jet3& x, const Jet3& y) { return 4.0 + x * x + y * y; }),
       [](double x, double y) { return 4 + x * x + y * y; }, [](double, double) { return 4.0; }},
      {planar("5 + sin x cos y", [](const Jet3& x, const Jet3& y) { return 5.0 + sin(x) * cos(y); }),
       [](double x, double y) { return 5 + std::sin(x) * std::cos(y); },
       [](double x, double y) { return -2 * std::sin(x) * std::cos(y); }},
  };
  for (const auto& c : cases) {
    const auto space = sphere_family(c.w);
    for (double x = -1; x <= 1; x += 0.5)
      for (double y = -1; y <= 1; y += 0.5) {
        const double wv = c.value(x, y);
        CHECK(std::abs(plane_condition(*space, 0, 0, 0, {x, y}) + c.laplacian(x, y) / (wv * wv * wv)) <= 1e-6);
      }
  }
  const GridSpec g{{-1, 1}, {-1, 1}, 5, 5};
  CHECK(harmonicity_defect(cases[1].w, g) <= 1e-7);
  CHECK(harmonicity_defect(cases[3].w, g) == doctest::Approx(4.0).epsilon(1e-6));
}

TEST_CASE("Phi_k positivity audit") {
  for (double k : {6.0, 7.0, 10.0}) {
    const PositivityAudit a = audit_phi_k(k);
    CHECK(a.passed);
    CHECK(a.min_value > 0);
  }
  const PositivityAudit bad = audit_phi_k(1);
  CHECK_FALSE(bad.passed);
}

TEST_CASE("curvature families") {
  const KappaFamily k1 = KappaFamily::make(0.25, 1, 0, std::sqrt(0.5));
  CHECK(k1.branch == Branch::pos);
  for (double s : {0.1, 0.5, 1.0}) CHECK(k1.eval(s).k0 == doctest::Approx(1 / (std::sqrt(0.5) * std::sin(2 * std::sqrt(2.0) * s) + 1)).epsilon(1e-14));
  const KappaFamily k3 = KappaFamily::make(0, 0, 4, 0);
  CHECK(k3.branch == Branch::zero);
  for (double s : {0.0, 0.7, 2.0}) CHECK(k3.eval(s).k0 == doctest::Approx(1 / (1 + s * s)).epsilon(1e-14));

  CHECK_THROWS_AS((KappaFamily{Branch::neg, 0.25, 1, 0, 1}.validate()), ConfigError);
  CHECK_THROWS_AS(KappaFamily::make(-0.25, 0.5, 0.01, 0.01), ConfigError);  // 4CD + 1/(4m+K) < 0
  CHECK_THROWS_AS(KappaFamily::make(0, 1, 0, 0), ConfigError);

  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> S(-1, 1);
  const std::vector<KappaFamily> fams{KappaFamily::make(-0.25, -0.5, 0.5, 0.5), KappaFamily::make(0.25, -1, 2, 0.3),
                                      KappaFamily::make(0, 2, 0.3, -0.2)};
  for (const auto& f : fams)
    for (int i = 0; i < 100; ++i) CHECK(std::abs(kappa_ode_residual(f, S(rng))) <= 1e-8);

  // analytic derivatives against central differences
  for (const auto& f : fams) {
    const double s = 0.3, h = 1e-4;
    const auto a = f.eval(s - h), b = f.eval(s), c = f.eval(s + h);
    CHECK(b.k1 == doctest::Approx((c.k0 - a.k0) / (2 * h)).epsilon(1e-7));
    CHECK(b.k2 == doctest::Approx((c.k0 - 2 * b.k0 + a.k0) / (h * h)).epsilon(1e-5));
    CHECK(b.k3 == doctest::Approx((c.k2 - a.k2) / (2 * h)).epsilon(1e-6));
  }

  // constant curvature sqrt(4m + K) satisfies the ODE exactly when K = kappa^2 - 4m
  const KappaFamily constant{Branch::pos, 0.25, 3, 0, 0};
  CHECK(constant.eval(0.4).k0 == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(std::abs(kappa_ode_residual(constant, 0.4)) <= 1e-12);
}

TEST_CASE("fibre families") {
  const std::vector<PsiFamily> fams{PsiFamily::make(-2, 1, 2), PsiFamily::make(0, 1, 3), PsiFamily::make(1.5, 1, 1)};
  for (const auto& f : fams)
    for (double z = -0.5; z <= 0.5; z += 0.1) CHECK(std::abs(psi_ode_residual(f, z)) <= 1e-12);
  const auto lin = psi_eval(PsiFamily::make(0, 2, 1), 3.0);
  CHECK(lin[0] == 7.0);
  CHECK(lin[2] == 0.0);
  CHECK_THROWS_AS((PsiFamily{Branch::pos, -1, 1, 0}.validate()), ConfigError);

  const auto iv = PsiFamily::make(-1, 1, 0).positivity_intervals({-1, 7});
  REQUIRE(iv.size() == 2);
  CHECK(iv[0].lo == doctest::Approx(0.05).epsilon(1e-9));
  CHECK(iv[0].hi == doctest::Approx(M_PI - 0.05).epsilon(1e-9));
  CHECK(iv[1].lo == doctest::Approx(2 * M_PI + 0.05).epsilon(1e-9));
  CHECK(iv[1].hi == 7.0);
}

TEST_CASE("assembled Hopf factors") {
  const auto f1 = assemble_hopf_factor(KappaFamily::make(0.25, 1, 0, std::sqrt(0.5)), PsiFamily::make(1, 1, 0));
  const auto f2 = assemble_hopf_factor(KappaFamily::make(-0.25, 1, 4, 0), PsiFamily::make(1, 1, 0));
  const auto f3 = assemble_hopf_factor(KappaFamily::make(0, 0, 4, 0), PsiFamily::make(0, 1, 0));
  for (double s : {0.2, 0.6})
    for (double z : {0.3, 1.2}) {
      const double sine = std::sqrt(0.5) * std::sin(2 * std::sqrt(2.0) * s) + 1;
      CHECK(f1.f.value({s, z}) == doctest::Approx(std::exp(z) * std::pow(sine, 1.5)).epsilon(1e-13));
      CHECK(f2.f.value({s, z}) == doctest::Approx(std::pow(1 + s * s, 1.5) * std::exp(z)).epsilon(1e-13));
      CHECK(f3.f.value({s, z}) == doctest::Approx(std::pow(1 + s * s, 1.5) * z).epsilon(1e-13));
    }
  CHECK_THROWS_AS(assemble_hopf_factor(KappaFamily::make(0, 0, 4, 0), PsiFamily::make(1, 1, 0)), ConfigError);

  // constant kappa: the pos fibre family with K = kappa^2 - 4m is the exponential factor
  const auto ck = constant_kappa_factor(2, 0.25, 1, 1);
  const PsiFamily pk = PsiFamily::make(3, 1, 1);
  for (double z : {-1.0, 0.0, 0.8}) CHECK(ck.f.value({0.1, z}) == doctest::Approx(pk.eval(z)[0]).epsilon(1e-14));
  CHECK_THROWS_AS(constant_kappa_factor(1, 0.25, 1, 0), ConfigError);
}

TEST_CASE("every family assembly solves the Hopf system; mismatched K does not") {
  struct Combo {
    KappaFamily k;
    PsiFamily p;
    Interval s;
  };
  const std::vector<Combo> combos{
      {KappaFamily::make(-0.25, -0.5, 0.5, 0.5), PsiFamily::make(-0.5, 0, 1), {-0.5, 0.5}},
      {KappaFamily::make(0.25, -1, 2, 0.3), PsiFamily::make(-1, 1, 2), {-0.5, 0.5}},
      {KappaFamily::make(0, 2, 0.3, -0.2), PsiFamily::make(2, 1, 1), {-0.5, 0.5}},
      {KappaFamily::make(0.25, 1, 0, std::sqrt(0.5)), PsiFamily::make(1, 1, 0), {0.1, 1.0}},
  };
  for (const auto& c : combos) {
    const HopfCylinderImmersion cyl(std::make_shared<BCVSpace>(c.k.m, 0.0), c.k.profile(), c.s);
    const GridSpec g{c.s, {-0.8, 0.8}, 6, 5};
    CHECK(residual_report(System::hopf, cyl, assemble_hopf_factor(c.k, c.p), g).max_abs() <= 1e-6);
    const PsiFamily off = PsiFamily::make(c.p.K + 0.5, 1, 1);
    CHECK(residual_report(System::hopf, cyl, assemble_hopf_factor(c.k, off, true), g).max_abs() >= 1e-2);
  }
}

TEST_CASE("ball family solves the conformal system on a disk") {
  const auto hyp = std::make_shared<ConformallyFlatSpace>(hyperbolic_factor(), hyperbolic_beta_field(constant_planar(6)));
  const GraphImmersion plane(0, 0, 0, hyp);
  const auto f = ConformalFactorSpec{{"(3(1-x^2-y^2))^2", [](const Jet3& x, const Jet3& y) {
                                        const Jet3 t = 3.0 * (1.0 - x * x - y * y);
                                        return t * t;
                                      }},
                                     "test"};
  GridSpec g{{-0.8, 0.8}, {-0.8, 0.8}, 17, 17};
  g.disk_radius = 0.8;
  const auto rep = residual_report(System::conformal, plane, f, g);
  CHECK(rep.rows.size() > 150);
  CHECK(rep.max_abs() <= 1e-6);
}
