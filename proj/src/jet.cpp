#include "bhc/jet.hpp"

#include <stdexcept>

namespace bhc {

namespace {

constexpr std::array<std::array<std::size_t, 3>, 3> kPairTable{{{0, 1, 2}, {1, 3, 4}, {2, 4, 5}}};

constexpr auto make_triple_table() {
  std::array<std::array<std::array<std::size_t, 3>, 3>, 3> t{};
  for (std::size_t s = 0; s < Jet3::kTriples.size(); ++s) {
    const auto& [a, b, c] = Jet3::kTriples[s];
    const std::array<int, 3> idx{a, b, c};
    // every permutation of (a,b,c) maps to the same slot
    for (int p = 0; p < 3; ++p)
      for (int q = 0; q < 3; ++q)
        for (int r = 0; r < 3; ++r)
          if (p != q && q != r && p != r)
            t[static_cast<std::size_t>(idx[p])][static_cast<std::size_t>(idx[q])]
             [static_cast<std::size_t>(idx[r])] = s;
  }
  return t;
}

constexpr auto kTripleTable = make_triple_table();

}  // namespace

std::size_t Jet3::pair_slot(int i, int j) {
  return kPairTable[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
}

std::size_t Jet3::triple_slot(int i, int j, int k) {
  return kTripleTable[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]
                     [static_cast<std::size_t>(k)];
}

Jet3 Jet3::partial(int i) const {
  Jet3 r(d(i));
  for (int j = 0; j < kVars; ++j) r.set_d(j, d(i, j));
  for (const auto& [j, k] : kPairs) r.set_d(j, k, d(i, j, k));
  return r;
}

bool Jet3::is_constant() const {
  for (double v : grad_) if (v != 0.0) return false;
  for (double v : hess_) if (v != 0.0) return false;
  for (double v : third_) if (v != 0.0) return false;
  return true;
}

Jet3 Jet3::truncated(int order) const {
  Jet3 r = *this;
  if (order < 3) r.third_.fill(0.0);
  if (order < 2) r.hess_.fill(0.0);
  if (order < 1) r.grad_.fill(0.0);
  return r;
}

Jet3& Jet3::operator+=(const Jet3& o) {
  value_ += o.value_;
  for (std::size_t i = 0; i < 3; ++i) grad_[i] += o.grad_[i];
  for (std::size_t i = 0; i < 6; ++i) hess_[i] += o.hess_[i];
  for (std::size_t i = 0; i < 10; ++i) third_[i] += o.third_[i];
  return *this;
}

Jet3& Jet3::operator-=(const Jet3& o) {
  value_ -= o.value_;
  for (std::size_t i = 0; i < 3; ++i) grad_[i] -= o.grad_[i];
  for (std::size_t i = 0; i < 6; ++i) hess_[i] -= o.hess_[i];
  for (std::size_t i = 0; i < 10; ++i) third_[i] -= o.third_[i];
  return *this;
}

Jet3& Jet3::operator*=(double s) {
  value_ *= s;
  for (auto& v : grad_) v *= s;
  for (auto& v : hess_) v *= s;
  for (auto& v : third_) v *= s;
  return *this;
}

Jet3 operator*(const Jet3& a, const Jet3& b) {
  Jet3 r(a.value_ * b.value_);
  for (std::size_t i = 0; i < 3; ++i) r.grad_[i] = a.value_ * b.grad_[i] + a.grad_[i] * b.value_;
  for (std::size_t s = 0; s < 6; ++s) {
    const auto [i, j] = Jet3::kPairs[s];
    r.hess_[s] = a.value_ * b.hess_[s] + a.d(i) * b.d(j) + a.d(j) * b.d(i) + a.hess_[s] * b.value_;
  }
  for (std::size_t s = 0; s < 10; ++s) {
    const auto [i, j, k] = Jet3::kTriples[s];
    r.third_[s] = a.value_ * b.third_[s] + a.third_[s] * b.value_ +
                  a.d(i) * b.d(j, k) + a.d(j) * b.d(i, k) + a.d(k) * b.d(i, j) +
                  a.d(j, k) * b.d(i) + a.d(i, k) * b.d(j) + a.d(i, j) * b.d(k);
  }
  return r;
}

Jet3 operator/(const Jet3& a, const Jet3& b) { return a * reciprocal(b); }

Jet3 Jet3::chain(double d0, double d1, double d2, double d3) const {
  Jet3 r(d0);
  for (std::size_t i = 0; i < 3; ++i) r.grad_[i] = d1 * grad_[i];
  for (std::size_t s = 0; s < 6; ++s) {
    const auto [i, j] = kPairs[s];
    r.hess_[s] = d1 * hess_[s] + d2 * d(i) * d(j);
  }
  for (std::size_t s = 0; s < 10; ++s) {
    const auto [i, j, k] = kTriples[s];
    r.third_[s] = d1 * third_[s] +
                  d2 * (d(i, j) * d(k) + d(i, k) * d(j) + d(j, k) * d(i)) +
                  d3 * d(i) * d(j) * d(k);
  }
  return r;
}

Jet3 exp(const Jet3& a) {
  const double e = std::exp(a.value());
  return a.chain(e, e, e, e);
}

Jet3 log(const Jet3& a) {
  const double x = a.value();
  if (!(x > 0.0)) throw std::domain_error("log of nonpositive jet value");
  return a.chain(std::log(x), 1.0 / x, -1.0 / (x * x), 2.0 / (x * x * x));
}

Jet3 sin(const Jet3& a) {
  const double s = std::sin(a.value());
  const double c = std::cos(a.value());
  return a.chain(s, c, -s, -c);
}

Jet3 cos(const Jet3& a) {
  const double s = std::sin(a.value());
  const double c = std::cos(a.value());
  return a.chain(c, -s, -c, s);
}

Jet3 atan(const Jet3& a) {
  const double x = a.value();
  const double q = 1.0 / (1.0 + x * x);
  // d/dx atan = q, q' = -2x q^2, q'' = (6x^2 - 2) q^3
  return a.chain(std::atan(x), q, -2.0 * x * q * q, (6.0 * x * x - 2.0) * q * q * q);
}

Jet3 sqrt(const Jet3& a) {
  const double x = a.value();
  if (!(x > 0.0)) throw std::domain_error("sqrt of nonpositive jet value");
  const double s = std::sqrt(x);
  return a.chain(s, 0.5 / s, -0.25 / (s * x), 0.375 / (s * x * x));
}

Jet3 pow(const Jet3& a, double p) {
  const double x = a.value();
  if (p == std::floor(p) && p >= 0.0 && p <= 3.0) {
    // small integer powers stay exact at x <= 0
    Jet3 r(1.0);
    for (int i = 0; i < static_cast<int>(p); ++i) r = r * a;
    return r;
  }
  if (p == std::floor(p) && x != 0.0) {
    const double v = std::pow(x, p);
    return a.chain(v, p * v / x, p * (p - 1) * v / (x * x), p * (p - 1) * (p - 2) * v / (x * x * x));
  }
  if (!(x > 0.0)) throw std::domain_error("non-integer power of nonpositive jet value");
  const double v = std::pow(x, p);
  return a.chain(v, p * v / x, p * (p - 1) * v / (x * x), p * (p - 1) * (p - 2) * v / (x * x * x));
}

Jet3 pow(const Jet3& a, const Jet3& p) {
  if (p.is_constant()) return pow(a, p.value());
  return exp(p * log(a));
}

Jet3 reciprocal(const Jet3& a) {
  const double x = a.value();
  if (x == 0.0) throw std::domain_error("division by zero jet value");
  const double r = 1.0 / x;
  return a.chain(r, -r * r, 2.0 * r * r * r, -6.0 * r * r * r * r);
}

Jet3 abs(const Jet3& a) {
  if (a.value() == 0.0) throw std::domain_error("abs of jet at zero is not differentiable");
  return a.value() > 0.0 ? a : -a;
}

Jet3 compose(const Jet3& outer, const std::array<Jet3, 3>& inner) {
  Jet3 r(outer.value());
  for (int a = 0; a < 3; ++a) {
    double s = 0.0;
    for (int i = 0; i < 3; ++i) s += outer.d(i) * inner[static_cast<std::size_t>(i)].d(a);
    r.set_d(a, s);
  }
  for (const auto& [a, b] : Jet3::kPairs) {
    double s = 0.0;
    for (int i = 0; i < 3; ++i) {
      const auto& pi = inner[static_cast<std::size_t>(i)];
      s += outer.d(i) * pi.d(a, b);
      for (int j = 0; j < 3; ++j) s += outer.d(i, j) * pi.d(a) * inner[static_cast<std::size_t>(j)].d(b);
    }
    r.set_d(a, b, s);
  }
  for (const auto& [a, b, c] : Jet3::kTriples) {
    double s = 0.0;
    for (int i = 0; i < 3; ++i) {
      const auto& pi = inner[static_cast<std::size_t>(i)];
      s += outer.d(i) * pi.d(a, b, c);
      for (int j = 0; j < 3; ++j) {
        const auto& pj = inner[static_cast<std::size_t>(j)];
        s += outer.d(i, j) * (pi.d(a, b) * pj.d(c) + pi.d(a, c) * pj.d(b) + pi.d(b, c) * pj.d(a));
        for (int k = 0; k < 3; ++k)
          s += outer.d(i, j, k) * pi.d(a) * pj.d(b) * inner[static_cast<std::size_t>(k)].d(c);
      }
    }
    r.set_d(a, b, c, s);
  }
  return r;
}

std::ostream& operator<<(std::ostream& os, const Jet3& j) {
  os << "Jet3{" << j.value() << "; [" << j.d(0) << ", " << j.d(1) << ", " << j.d(2) << "]}";
  return os;
}

}  // namespace bhc
