#include "bhc/curve.hpp"

#include <cstdio>

namespace bhc {

namespace {

constexpr double kChartMargin = 1e-3;

struct State {
  double x, y, t;
};

State rhs(const State& q, double kappa, double m, double sign) {
  const double F = 1.0 + m * (q.x * q.x + q.y * q.y);
  const double c = std::cos(q.t);
  const double s = std::sin(q.t);
  return {F * c, F * s, sign * kappa + 2.0 * m * q.x * s - 2.0 * m * q.y * c};
}

State axpy(const State& a, double h, const State& k) { return {a.x + h * k.x, a.y + h * k.y, a.t + h * k.t}; }

State rk4(const State& q, double s, double h, const CurvatureProfile& kappa, double m, double sign) {
  const State k1 = rhs(q, kappa(s).k0, m, sign);
  const State k2 = rhs(axpy(q, h / 2, k1), kappa(s + h / 2).k0, m, sign);
  const State k3 = rhs(axpy(q, h / 2, k2), kappa(s + h / 2).k0, m, sign);
  const State k4 = rhs(axpy(q, h, k3), kappa(s + h).k0, m, sign);
  return {q.x + h / 6 * (k1.x + 2 * k2.x + 2 * k3.x + k4.x), q.y + h / 6 * (k1.y + 2 * k2.y + 2 * k3.y + k4.y),
          q.t + h / 6 * (k1.t + 2 * k2.t + 2 * k3.t + k4.t)};
}

std::vector<CurveSample> run(const CurvatureProfile& kappa, double m, Interval range, std::size_t n, CurveStart start,
                             double sign) {
  const double h = (range.hi - range.lo) / static_cast<double>(n);
  std::vector<CurveSample> out;
  out.reserve(n + 1);
  State q{start.x0, start.y0, start.theta0};
  for (std::size_t i = 0; i <= n; ++i) {
    const double s = range.lo + h * static_cast<double>(i);
    const double F = 1.0 + m * (q.x * q.x + q.y * q.y);
    if (!(F > kChartMargin) || !std::isfinite(q.x) || !std::isfinite(q.y)) {
      char buf[128];
      std::snprintf(buf, sizeof buf, "curve leaves chart at s = %.6g (F = %.3g)", s, F);
      throw DomainError(buf);
    }
    out.push_back({s, q.x, q.y, q.t});
    if (i < n) q = rk4(q, s, h, kappa, m, sign);
  }
  return out;
}

// Antiderivative in variable 0 vanishing at the expansion point.
Jet3 integrate0(const Jet3& j) {
  Jet3 r;
  r.set_d(0, j.value());
  r.set_d(0, 0, j.d(0));
  r.set_d(0, 0, 0, j.d(0, 0));
  return r;
}

}  // namespace

Jet3 CurvatureProfile::jet(double s) const {
  const KappaDerivs k = eval(s);
  Jet3 j(k.k0);
  if (known_derivatives >= 1) j.set_d(0, k.k1);
  if (known_derivatives >= 2) j.set_d(0, 0, k.k2);
  if (known_derivatives >= 3) j.set_d(0, 0, 0, k.k3);
  return j;
}

CurvatureProfile sampled_profile(std::string name, std::function<double(double)> kappa) {
  return {std::move(name), [k = std::move(kappa)](double s) { return KappaDerivs{k(s)}; }, 0};
}

CurvatureProfile constant_profile(double kappa) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", kappa);
  return {buf, [kappa](double) { return KappaDerivs{kappa, 0.0, 0.0, 0.0}; }, 3};
}

PlaneCurve integrate_curve(CurvatureProfile kappa, double m, Interval s_range, double step, CurveStart start,
                           double orientation) {
  if (!std::isfinite(s_range.lo) || !std::isfinite(s_range.hi) || !(s_range.hi > s_range.lo))
    throw std::invalid_argument("integrate_curve: s range must be finite and nonempty");
  if (!(step > 0.0)) throw std::invalid_argument("integrate_curve: step must be positive");
  // node count rounded up so both ends of the range are samples
  const auto n = static_cast<std::size_t>(std::ceil((s_range.hi - s_range.lo) / step - 1e-9));
  PlaneCurve c;
  c.m_ = m;
  c.orientation_ = orientation;
  c.step_ = (s_range.hi - s_range.lo) / static_cast<double>(n);
  c.range_ = s_range;
  c.kappa_ = std::move(kappa);
  c.samples_ = run(c.kappa_, m, s_range, n, start, orientation);
  const auto fine = run(c.kappa_, m, s_range, 2 * n, start, orientation);
  for (std::size_t i = 0; i <= n; ++i)
    c.gap_ = std::max({c.gap_, std::abs(fine[2 * i].x - c.samples_[i].x), std::abs(fine[2 * i].y - c.samples_[i].y)});
  return c;
}

CurveSample PlaneCurve::state_at(double s) const {
  const double tol = 1e-12 * std::max(1.0, std::abs(s));
  if (s < range_.lo - tol || s > range_.hi + tol) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "s = %.6g outside the integrated range [%.6g, %.6g]", s, range_.lo, range_.hi);
    throw DomainError(buf);
  }
  const double pos = (s - range_.lo) / step_;
  auto i = static_cast<std::size_t>(std::llround(pos));
  i = std::min(i, samples_.size() - 1);
  const CurveSample& a = samples_[i];
  const double h = s - a.s;
  if (h == 0.0) return a;
  const State q = rk4({a.x, a.y, a.theta}, a.s, h, kappa_, m_, orientation_);
  return {s, q.x, q.y, q.t};
}

std::array<Jet3, 3> PlaneCurve::jets_at(double s) const {
  const CurveSample q = state_at(s);
  Jet3 k = orientation_ * kappa_.jet(s);
  const std::array<Jet3, 3> base{Jet3(q.x), Jet3(q.y), Jet3(q.theta)};
  std::array<Jet3, 3> S = base;
  // Picard iteration on Taylor polynomials gains one order per pass
  for (int pass = 0; pass < 3; ++pass) {
    const Jet3 F = 1.0 + m_ * (S[0] * S[0] + S[1] * S[1]);
    const Jet3 c = cos(S[2]);
    const Jet3 sn = sin(S[2]);
    const Jet3 dx = F * c;
    const Jet3 dy = F * sn;
    const Jet3 dt = k + 2.0 * m_ * (S[0] * sn - S[1] * c);
    S = {base[0] + integrate0(dx), base[1] + integrate0(dy), base[2] + integrate0(dt)};
  }
  const int order = jet_order();
  return {S[0].truncated(order), S[1].truncated(order), S[2].truncated(order - 1)};
}

double PlaneCurve::geodesic_curvature_at(double s) const {
  const auto J = jets_at(s);
  const double x = J[0].value(), y = J[1].value();
  const double x1 = J[0].d(0), y1 = J[1].d(0);
  const double x2 = J[0].d(0, 0), y2 = J[1].d(0, 0);
  const double F = 1.0 + m_ * (x * x + y * y);
  const double v = std::hypot(x1, y1);
  const double k_euclid = (x1 * y2 - y1 * x2) / (v * v * v);
  // h1 = exp(2 sigma) delta with sigma = -ln F; kappa_g = F (k_E - d_n sigma)
  const double nx = -y1 / v, ny = x1 / v;
  const double dn_sigma = -(2.0 * m_ * x * nx + 2.0 * m_ * y * ny) / F;
  return F * (k_euclid - dn_sigma);
}

double PlaneCurve::speed_at(double s) const {
  const auto J = jets_at(s);
  const double F = 1.0 + m_ * (J[0].value() * J[0].value() + J[1].value() * J[1].value());
  return std::hypot(J[0].d(0), J[1].d(0)) / F;
}

}  // namespace bhc
