#pragma once

// Scalar fields on coordinate charts of R^3, their declared domains, and the
// two differentiation engines: exact jets and a central-difference oracle.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "bhc/jet.hpp"
#include "bhc/types.hpp"

namespace bhc {

/// Excluded set described by a signed clearance, positive on the admissible side.
/// Example: the plane z = 0 for beta = 1/z has clearance z.
struct SingularLocus {
  std::string name;
  std::function<double(const Vec3&)> clearance;
};

struct Interval {
  double lo = -kInf;
  double hi = kInf;
};

struct Domain {
  std::array<Interval, 3> box{};
  std::vector<SingularLocus> loci;
  double margin = 1e-3;

  /// Name of the first violated boundary at p, if any. Loci must be cleared by
  /// more than `margin`; box faces are inclusive.
  std::optional<std::string> violation(const Vec3& p, double margin) const;
  void require(const Vec3& p) const;
  /// Smallest clearance of p from any declared locus (inf when there are none).
  double locus_clearance(const Vec3& p) const;

  Domain intersect(const Domain& other) const;
};

class ScalarField3 {
 public:
  using Fn = std::function<Jet3(const Jet3&, const Jet3&, const Jet3&)>;

  ScalarField3() = default;
  ScalarField3(std::string name, Fn fn, Domain domain = {});

  const std::string& name() const { return name_; }
  const Domain& domain() const { return domain_; }

  Jet3 operator()(const Jet3& x, const Jet3& y, const Jet3& z) const { return fn_(x, y, z); }
  /// Plain value at p without a domain check.
  double value(const Vec3& p) const;

  /// Pointwise product; the domain is the intersection of both domains.
  friend ScalarField3 operator*(const ScalarField3& a, const ScalarField3& b);

 private:
  std::string name_;
  Fn fn_;
  Domain domain_;
};

struct MultiIndex {
  int x = 0;
  int y = 0;
  int z = 0;
  int order() const { return x + y + z; }
  int operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
};

/// Value and all partials through `order` at p; entries above `order` are zero.
/// Throws DomainError naming the violated locus.
Jet3 jet_eval(const ScalarField3& field, const Vec3& p, int order = 3);

/// Step used by fd_partial for a derivative of total order n at coordinate c.
double fd_step(int order, double coordinate);

/// Central-difference estimate of one partial (total order <= 3) with one level
/// of Richardson extrapolation. Throws DomainError if a stencil point leaves
/// the field's domain.
double fd_partial(const ScalarField3& field, const Vec3& p, MultiIndex index);

/// Jet assembled entry by entry from fd_partial, differentiating only in the
/// first `active_vars` variables (the rest stay zero).
Jet3 fd_jet(const ScalarField3& field, const Vec3& p, int active_vars = 3);

/// Dispatches to jet_eval or fd_jet.
Jet3 leaf_jet(const ScalarField3& field, const Vec3& p, Engine engine, int active_vars = 3);

}  // namespace bhc
