#pragma once

// Truncated third-order Taylor jets in up to three independent variables.
//
// A Jet3 carries a value together with every partial derivative of order
// one, two and three. Mixed partials share a single storage slot, so the
// symmetry of Hessians and third-derivative tensors holds by construction.
// Arithmetic and the elementary functions below propagate all entries
// through order three with the Leibniz and Faa di Bruno rules.

#include <array>
#include <cmath>
#include <cstddef>
#include <ostream>

namespace bhc {

class Jet3 {
 public:
  static constexpr int kVars = 3;
  static constexpr int kMaxOrder = 3;

  constexpr Jet3() = default;
  constexpr Jet3(double value) : value_(value) {}  // NOLINT: constants promote implicitly

  /// Independent variable `index` at `value`: grad = e_index, higher entries zero.
  static Jet3 variable(double value, int index) {
    Jet3 j(value);
    j.grad_[static_cast<std::size_t>(index)] = 1.0;
    return j;
  }

  double value() const { return value_; }
  double d(int i) const { return grad_[static_cast<std::size_t>(i)]; }
  double d(int i, int j) const { return hess_[pair_slot(i, j)]; }
  double d(int i, int j, int k) const { return third_[triple_slot(i, j, k)]; }

  void set_value(double v) { value_ = v; }
  void set_d(int i, double v) { grad_[static_cast<std::size_t>(i)] = v; }
  void set_d(int i, int j, double v) { hess_[pair_slot(i, j)] = v; }
  void set_d(int i, int j, int k, double v) { third_[triple_slot(i, j, k)] = v; }

  /// Partial derivative with respect to variable i, as a jet one order lower
  /// (its third-order entries are zero).
  Jet3 partial(int i) const;

  bool is_constant() const;

  /// Copy with every entry above `order` set to zero.
  Jet3 truncated(int order) const;

  Jet3& operator+=(const Jet3& o);
  Jet3& operator-=(const Jet3& o);
  Jet3& operator*=(const Jet3& o) { return *this = *this * o; }
  Jet3& operator/=(const Jet3& o) { return *this = *this / o; }
  Jet3& operator*=(double s);

  friend Jet3 operator+(Jet3 a, const Jet3& b) { return a += b; }
  friend Jet3 operator-(Jet3 a, const Jet3& b) { return a -= b; }
  friend Jet3 operator-(Jet3 a) { return a *= -1.0; }
  friend Jet3 operator*(const Jet3& a, const Jet3& b);
  friend Jet3 operator/(const Jet3& a, const Jet3& b);
  friend Jet3 operator*(Jet3 a, double s) { return a *= s; }
  friend Jet3 operator*(double s, Jet3 a) { return a *= s; }
  friend Jet3 operator+(Jet3 a, double s) { a.value_ += s; return a; }
  friend Jet3 operator+(double s, Jet3 a) { a.value_ += s; return a; }
  friend Jet3 operator-(Jet3 a, double s) { a.value_ -= s; return a; }
  friend Jet3 operator-(double s, const Jet3& a) { return Jet3(s) - a; }
  friend Jet3 operator/(const Jet3& a, double s) { return a * (1.0 / s); }

  /// phi(f) for a univariate phi given phi, phi', phi'', phi''' at f.value().
  Jet3 chain(double d0, double d1, double d2, double d3) const;

  /// Sorted index pairs (i<=j) and triples (i<=j<=k) in storage order.
  static constexpr std::array<std::array<int, 2>, 6> kPairs{
      {{0, 0}, {0, 1}, {0, 2}, {1, 1}, {1, 2}, {2, 2}}};
  static constexpr std::array<std::array<int, 3>, 10> kTriples{
      {{0, 0, 0}, {0, 0, 1}, {0, 0, 2}, {0, 1, 1}, {0, 1, 2},
       {0, 2, 2}, {1, 1, 1}, {1, 1, 2}, {1, 2, 2}, {2, 2, 2}}};

  static std::size_t pair_slot(int i, int j);
  static std::size_t triple_slot(int i, int j, int k);

 private:
  double value_ = 0.0;
  std::array<double, 3> grad_{};
  std::array<double, 6> hess_{};
  std::array<double, 10> third_{};
};

Jet3 exp(const Jet3& a);
Jet3 log(const Jet3& a);
Jet3 sin(const Jet3& a);
Jet3 cos(const Jet3& a);
Jet3 atan(const Jet3& a);
Jet3 sqrt(const Jet3& a);
Jet3 pow(const Jet3& a, double p);
Jet3 pow(const Jet3& a, const Jet3& p);
Jet3 reciprocal(const Jet3& a);
/// |a| as sign(a.value())*a; undefined (throws) at a.value() == 0.
Jet3 abs(const Jet3& a);

/// Multivariate composition G(phi(.)) where `outer` is the jet of G at the
/// point phi(q) in G's own variables and `inner[i]` are the jets of the
/// component maps at q. Values of `inner` are not used.
Jet3 compose(const Jet3& outer, const std::array<Jet3, 3>& inner);

std::ostream& operator<<(std::ostream& os, const Jet3& j);

}  // namespace bhc
