#include "bhc/constructions.hpp"

#include <cstdio>

namespace bhc {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

constexpr double kBranchTol = 1e-12;

Branch branch_of(double v) {
  if (std::abs(v) <= kBranchTol) return Branch::zero;
  return v < 0 ? Branch::neg : Branch::pos;
}

Vec3 on_plane(double a1, double a2, double a3, const Vec2& q) { return {q[0], q[1], a1 * q[0] + a2 * q[1] + a3}; }

Jet3 seeded(const ScalarField3& field, const Vec3& p) {
  return field(Jet3::variable(p[0], 0), Jet3::variable(p[1], 1), Jet3::variable(p[2], 2));
}

// Denominator -2rz - 2(r^2 + e z^2) atan(z/r) + w r^3 (r^2 + e z^2), with
// e = +1 for the sphere family and e = -1 for the ball family.
Jet3 family_denominator(const Jet3& r, const Jet3& z, const Jet3& w, double e) {
  const Jet3 q = r * r + e * (z * z);
  return -2.0 * r * z - 2.0 * q * atan(z / r) + w * r * r * r * q;
}

double planar_value(const SurfaceField& w, const Vec3& p) { return w.fn(Jet3(p[0]), Jet3(p[1])).value(); }

Domain sphere_family_domain(const SurfaceField& w) {
  Domain d;
  d.loci.push_back({"denominator D_w = 0", [w](const Vec3& p) {
                      const double r = std::sqrt(1 + p[0] * p[0] + p[1] * p[1]);
                      return family_denominator(Jet3(r), Jet3(p[2]), Jet3(planar_value(w, p)), 1.0).value();
                    }});
  return d;
}

Domain ball_family_domain(const SurfaceField& w) {
  Domain d;
  d.loci.push_back({"rho^2 = 1 - x^2 - y^2 = 0", [](const Vec3& p) { return 1 - p[0] * p[0] - p[1] * p[1]; }});
  d.loci.push_back({"rho^2 - z^2 = 0", [](const Vec3& p) { return 1 - p[0] * p[0] - p[1] * p[1] - p[2] * p[2]; }});
  d.loci.push_back({"denominator E_w = 0", [w](const Vec3& p) {
                      const double rho2 = 1 - p[0] * p[0] - p[1] * p[1];
                      if (!(rho2 > 0)) return rho2;
                      return family_denominator(Jet3(std::sqrt(rho2)), Jet3(p[2]), Jet3(planar_value(w, p)), -1.0)
                          .value();
                    }});
  return d;
}

}  // namespace

// ---------------------------------------------------------------------------

ScalarField3 unit_field() {
  return ScalarField3("1", [](const Jet3&, const Jet3&, const Jet3&) { return Jet3(1.0); });
}

ScalarField3 sphere_factor() {
  return ScalarField3("(1+x^2+y^2+z^2)/2", [](const Jet3& x, const Jet3& y, const Jet3& z) {
    return 0.5 * (1.0 + x * x + y * y + z * z);
  });
}

ScalarField3 hyperbolic_factor() {
  Domain d;
  d.loci.push_back({"unit sphere x^2+y^2+z^2 = 1", [](const Vec3& p) { return 1 - dot(p, p); }});
  return ScalarField3(
      "(1-x^2-y^2-z^2)/2",
      [](const Jet3& x, const Jet3& y, const Jet3& z) { return 0.5 * (1.0 - x * x - y * y - z * z); }, d);
}

// ---------------------------------------------------------------------------

double plane_condition(const ConformallyFlatSpace& space, double a1, double a2, double a3, const Vec2& q,
                    Engine engine) {
  const Vec3 p = on_plane(a1, a2, a3, q);
  space.domain().require(p);
  const Jet3 u = leaf_jet(space.combined(), p, engine);
  const double U = u.value();
  const double n2 = 1 + a1 * a1 + a2 * a2;
  auto pair = [&](int i, int j) { return U * u.d(i, j) - 2 * u.d(i) * u.d(j); };
  return ((1 + 2 * a1 * a1 + a2 * a2) * pair(0, 0) + (1 + a1 * a1 + 2 * a2 * a2) * pair(1, 1) +
          (2 + a1 * a1 + a2 * a2) * pair(2, 2) + 2 * a1 * a2 * pair(0, 1) - 2 * a1 * pair(0, 2) -
          2 * a2 * pair(1, 2)) /
         n2;
}

double plane_mean_curvature(const ConformallyFlatSpace& space, double a1, double a2, double a3, const Vec2& q,
                            Engine engine) {
  const Vec3 p = on_plane(a1, a2, a3, q);
  space.domain().require(p);
  const Jet3 u = leaf_jet(space.combined(), p, engine);
  return (-a1 * u.d(0) - a2 * u.d(1) + u.d(2)) / std::sqrt(1 + a1 * a1 + a2 * a2);
}

double f_from_mean_curvature(const ConformallyFlatSpace& space, double a1, double a2, double a3, const Vec2& q,
                             double c, Engine engine) {
  const double H = plane_mean_curvature(space, a1, a2, a3, q, engine);
  if (H == 0.0 || !std::isfinite(1.0 / H))
    throw DomainError("harmonic branch: H = 0 at (" + num(q[0]) + ", " + num(q[1]) + "), f = c/|H| undefined");
  return c / std::abs(H);
}

ConformalFactorSpec factor_from_mean_curvature(std::shared_ptr<const ConformallyFlatSpace> space, double a1,
                                               double a2, double a3, double c) {
  const double norm = std::sqrt(1 + a1 * a1 + a2 * a2);
  SurfaceField f{"c/|H|", [space, a1, a2, a3, c, norm](const Jet3& x, const Jet3& y) {
                   const Vec3 p = on_plane(a1, a2, a3, {x.value(), y.value()});
                   const Jet3 u = seeded(space->combined(), p);
                   // partials of u are exact through order 2, which bounds f
                   const Jet3 num_h = -a1 * u.partial(0) - a2 * u.partial(1) + u.partial(2);
                   const Jet3 h = compose(num_h, {x, y, a1 * x + a2 * y + a3});
                   if (h.value() == 0.0) throw DomainError("harmonic branch: H = 0, f = c/|H| undefined");
                   return (c * norm) / abs(h);
                 }};
  return {std::move(f), "c/|H| on plane (" + num(a1) + ", " + num(a2) + ", " + num(a3) + "), c = " + num(c)};
}

// ---------------------------------------------------------------------------

ScalarField3 psi_w_field(const SurfaceField& w) {
  return ScalarField3(
      "psi_w[" + w.name + "]",
      [w](const Jet3& x, const Jet3& y, const Jet3& z) {
        const Jet3 r = sqrt(1.0 + x * x + y * y);
        return r * r * r * (r * r + z * z) / family_denominator(r, z, w.fn(x, y), 1.0);
      },
      sphere_family_domain(w));
}

ScalarField3 phi_k_field(double k) {
  const SurfaceField w = constant_planar(k);
  return ScalarField3(
      "Phi_" + num(k),
      [k](const Jet3& x, const Jet3& y, const Jet3& z) {
        const Jet3 r = sqrt(1.0 + x * x + y * y);
        return 2.0 * r * r * r / family_denominator(r, z, Jet3(k), 1.0);
      },
      sphere_family_domain(w));
}

ScalarField3 sphere_beta_field(const SurfaceField& w) {
  return ScalarField3(
      "2 psi_w[" + w.name + "]/(1+x^2+y^2+z^2)",
      [w](const Jet3& x, const Jet3& y, const Jet3& z) {
        const Jet3 r = sqrt(1.0 + x * x + y * y);
        return 2.0 * r * r * r / family_denominator(r, z, w.fn(x, y), 1.0);
      },
      sphere_family_domain(w));
}

ScalarField3 psi_w_hyperbolic_field(const SurfaceField& w) {
  return ScalarField3(
      "psi_w^H[" + w.name + "]",
      [w](const Jet3& x, const Jet3& y, const Jet3& z) {
        const Jet3 rho = sqrt(1.0 - x * x - y * y);
        return rho * rho * rho * (rho * rho - z * z) / family_denominator(rho, z, w.fn(x, y), -1.0);
      },
      ball_family_domain(w));
}

ScalarField3 hyperbolic_beta_field(const SurfaceField& w) {
  return ScalarField3(
      "2 rho^3/E_w[" + w.name + "]",
      [w](const Jet3& x, const Jet3& y, const Jet3& z) {
        const Jet3 rho = sqrt(1.0 - x * x - y * y);
        return 2.0 * rho * rho * rho / family_denominator(rho, z, w.fn(x, y), -1.0);
      },
      ball_family_domain(w));
}

double psi_w(const SurfaceField& w, const Vec3& p) {
  const ScalarField3 f = psi_w_field(w);
  f.domain().require(p);
  return f.value(p);
}

double phi_k(double k, const Vec3& p) {
  const ScalarField3 f = phi_k_field(k);
  f.domain().require(p);
  return f.value(p);
}

double psi_w_hyperbolic(const SurfaceField& w, const Vec3& p) {
  const ScalarField3 f = psi_w_hyperbolic_field(w);
  f.domain().require(p);
  return f.value(p);
}

SurfaceField constant_planar(double k) {
  return {num(k), [k](const Jet3&, const Jet3&) { return Jet3(k); }};
}

PositivityAudit audit_phi_k(double k, double half_width, int n) {
  PositivityAudit a;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int l = 0; l < n; ++l) {
        auto at = [&](int t) { return -half_width + 2 * half_width * t / (n - 1); };
        const Vec3 p{at(i), at(j), at(l)};
        const double r = std::sqrt(1 + p[0] * p[0] + p[1] * p[1]);
        const double D = family_denominator(Jet3(r), Jet3(p[2]), Jet3(k), 1.0).value();
        const double v = D > 0 ? 2 * r * r * r / D : -kInf;
        ++a.samples;
        if (v < a.min_value) {
          a.min_value = v;
          a.argmin = p;
        }
        if (!(D > 0)) a.passed = false;
      }
  return a;
}

double harmonicity_defect(const SurfaceField& w, const GridSpec& grid) {
  const ScalarField3 field(w.name, [w](const Jet3& x, const Jet3& y, const Jet3&) { return w.fn(x, y); });
  double worst = 0;
  for (const Vec2& q : grid.points()) {
    const Vec3 p{q[0], q[1], 0.0};
    worst = std::max(worst, std::abs(fd_partial(field, p, {2, 0, 0}) + fd_partial(field, p, {0, 2, 0})));
  }
  return worst;
}

// ---------------------------------------------------------------------------

std::string to_string(Branch b) {
  switch (b) {
    case Branch::neg: return "neg";
    case Branch::zero: return "zero";
    case Branch::pos: return "pos";
  }
  return "?";
}

Branch branch_from_string(const std::string& s) {
  for (Branch b : {Branch::neg, Branch::zero, Branch::pos})
    if (to_string(b) == s) return b;
  throw ConfigError("unknown branch '" + s + "' (expected neg, zero or pos)");
}

KappaFamily KappaFamily::make(double m, double K, double C, double D) {
  KappaFamily f{branch_of(4 * m + K), m, K, C, D};
  f.validate();
  return f;
}

void KappaFamily::validate() const {
  const double L = 4 * m + K;
  if (branch_of(L) != branch)
    throw ConfigError("kappa family: branch " + to_string(branch) + " inconsistent with 4m + K = " + num(L));
  switch (branch) {
    case Branch::neg:
      if (4 * C * D + 1 / L < 0) throw ConfigError("kappa family: 4CD + 1/(4m+K) < 0 gives no real solution");
      if (C == 0 && D == 0) throw ConfigError("kappa family: C = D = 0 gives constant curvature");
      break;
    case Branch::zero:
      if (!(C > 0)) throw ConfigError("kappa family: zero branch needs C > 0 for positive curvature");
      break;
    case Branch::pos:
      if (C == 0 && D == 0) throw ConfigError("kappa family: C = D = 0 gives constant curvature");
      break;
  }
}

KappaDerivs KappaFamily::eval(double s) const {
  // kappa = 1/g with g and its derivatives in closed form
  double g0 = 0, g1 = 0, g2 = 0, g3 = 0;
  const double L = 4 * m + K;
  switch (branch) {
    case Branch::neg: {
      const double a = 2 * std::sqrt(-L);
      const double ep = C * std::exp(a * s), em = D * std::exp(-a * s);
      g0 = ep + em + std::sqrt(4 * C * D + 1 / L);
      g1 = a * (ep - em);
      g2 = a * a * (ep + em);
      g3 = a * a * a * (ep - em);
      break;
    }
    case Branch::zero: {
      const double t = s + this->D;
      g0 = (16 + C * C * t * t) / (4 * C);
      g1 = C * t / 2;
      g2 = C / 2;
      g3 = 0;
      break;
    }
    case Branch::pos: {
      const double b = 2 * std::sqrt(L);
      const double c = std::cos(b * s), sn = std::sin(b * s);
      g0 = C * c + D * sn + std::sqrt(1 / L + C * C + D * D);
      g1 = b * (-C * sn + D * c);
      g2 = -b * b * (C * c + D * sn);
      g3 = b * b * b * (C * sn - D * c);
      break;
    }
  }
  if (g0 == 0.0) throw DomainError("kappa family: denominator vanishes at s = " + num(s));
  return {1 / g0, -g1 / (g0 * g0), (2 * g1 * g1 - g0 * g2) / (g0 * g0 * g0),
          (-6 * g1 * g1 * g1 + 6 * g0 * g1 * g2 - g0 * g0 * g3) / (g0 * g0 * g0 * g0)};
}

std::string KappaFamily::describe() const {
  return "kappa[" + to_string(branch) + "](m = " + num(m) + ", K = " + num(K) + ", C = " + num(C) + ", D = " + num(D) +
         ")";
}

CurvatureProfile KappaFamily::profile() const {
  const KappaFamily self = *this;
  return {describe(), [self](double s) { return self.eval(s); }, 3};
}

PsiFamily PsiFamily::make(double K, double a, double b) {
  PsiFamily f{branch_of(K), K, a, b};
  f.validate();
  return f;
}

void PsiFamily::validate() const {
  if (branch_of(K) != branch)
    throw ConfigError("psi family: branch " + to_string(branch) + " inconsistent with K = " + num(K));
  if (a == 0 && b == 0) throw ConfigError("psi family: a = b = 0 gives psi = 0");
}

std::array<double, 3> PsiFamily::eval(double z) const {
  switch (branch) {
    case Branch::neg: {
      const double w = std::sqrt(-K);
      const double v = a * std::sin(w * z) + b * std::cos(w * z);
      return {v, w * (a * std::cos(w * z) - b * std::sin(w * z)), -w * w * v};
    }
    case Branch::zero: return {a * z + b, a, 0.0};
    case Branch::pos: {
      const double w = std::sqrt(K);
      const double ep = a * std::exp(w * z), em = b * std::exp(-w * z);
      return {ep + em, w * (ep - em), w * w * (ep + em)};
    }
  }
  return {kNaN, kNaN, kNaN};
}

Jet3 PsiFamily::jet(const Jet3& z) const {
  switch (branch) {
    case Branch::neg: {
      const double w = std::sqrt(-K);
      return a * sin(w * z) + b * cos(w * z);
    }
    case Branch::zero: return a * z + b;
    case Branch::pos: {
      const double w = std::sqrt(K);
      return a * exp(w * z) + b * exp(-w * z);
    }
  }
  return Jet3(kNaN);
}

std::string PsiFamily::describe() const {
  return "psi[" + to_string(branch) + "](K = " + num(K) + ", a = " + num(a) + ", b = " + num(b) + ")";
}

std::vector<Interval> PsiFamily::positivity_intervals(Interval range, double clip) const {
  const double step = 1e-3;
  auto val = [&](double z) { return eval(z)[0]; };
  auto root = [&](double lo, double hi) {
    for (int i = 0; i < 100; ++i) {
      const double mid = 0.5 * (lo + hi);
      ((val(lo) > 0) == (val(mid) > 0) ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  };
  std::vector<Interval> out;
  const auto n = static_cast<long>(std::ceil((range.hi - range.lo) / step));
  bool inside = val(range.lo) > 0;
  double start = range.lo;
  bool start_is_root = false;
  double prev = range.lo;
  for (long i = 1; i <= n; ++i) {
    const double z = std::min(range.hi, range.lo + step * static_cast<double>(i));
    const bool pos = val(z) > 0;
    if (pos != inside) {
      const double r = root(prev, z);
      if (inside) {
        const Interval iv{start + (start_is_root ? clip : 0.0), r - clip};
        if (iv.hi > iv.lo) out.push_back(iv);
      } else {
        start = r;
        start_is_root = true;
      }
      inside = pos;
    }
    prev = z;
  }
  if (inside) {
    const Interval iv{start + (start_is_root ? clip : 0.0), range.hi};
    if (iv.hi > iv.lo) out.push_back(iv);
  }
  return out;
}

KappaDerivs kappa_eval(const KappaFamily& fam, double s) { return fam.eval(s); }
std::array<double, 3> psi_eval(const PsiFamily& fam, double z) { return fam.eval(z); }

double kappa_ode_residual(const KappaFamily& fam, double s) {
  const KappaDerivs k = fam.eval(s);
  return 3 * k.k1 * k.k1 - 2 * k.k0 * k.k2 - 4 * k.k0 * k.k0 * (k.k0 * k.k0 - (4 * fam.m + fam.K));
}

double psi_ode_residual(const PsiFamily& fam, double z) {
  const auto p = fam.eval(z);
  return p[2] / p[0] - fam.K;
}

ConformalFactorSpec assemble_hopf_factor(const KappaFamily& kfam, const PsiFamily& pfam, bool allow_mismatch) {
  kfam.validate();
  pfam.validate();
  if (!allow_mismatch && std::abs(kfam.K - pfam.K) > kBranchTol)
    throw ConfigError("hopf factor: K mismatch between " + kfam.describe() + " and " + pfam.describe());
  SurfaceField f{"psi(z) kappa(s)^(-3/2)", [kfam, pfam](const Jet3& s, const Jet3& z) {
                   const KappaDerivs k = kfam.eval(s.value());
                   if (!(k.k0 > 0)) throw PositivityError("hopf factor: kappa <= 0 at s = " + num(s.value()));
                   return pfam.jet(z) * pow(s.chain(k.k0, k.k1, k.k2, k.k3), -1.5);
                 }};
  return {std::move(f), pfam.describe() + " * " + kfam.describe() + "^(-3/2)"};
}

ConformalFactorSpec constant_kappa_factor(double kappa, double m, double d1, double d2) {
  const double disc = kappa * kappa - 4 * m;
  if (!(disc > 0)) throw ConfigError("constant kappa factor needs kappa^2 - 4m > 0, got " + num(disc));
  const double w = std::sqrt(disc);
  SurfaceField f{"d1 e^{wz} + d2 e^{-wz}", [w, d1, d2](const Jet3&, const Jet3& z) {
                   return d1 * exp(w * z) + d2 * exp(-w * z);
                 }};
  return {std::move(f), "constant kappa = " + num(kappa) + ", m = " + num(m) + ", d1 = " + num(d1) +
                            ", d2 = " + num(d2)};
}

}  // namespace bhc
