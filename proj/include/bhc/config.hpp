#pragma once

// Case descriptors for the batch runner and their JSON form (format
// "bhc-case/1"). Numeric fields accept a number or a constant expression over
// the case parameters, so sweeps can vary one parameter across several fields.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "bhc/expr.hpp"

namespace bhc {

inline constexpr const char* kCaseFormat = "bhc-case/1";

/// Number, or constant expression over the case parameters.
using Scalar = std::variant<double, std::string>;

double resolve(const Scalar& s, const ParamMap& params);

struct LocusDesc {
  std::string name;
  std::string clearance;  // expression in x, y, z, positive on the admissible side
};

struct FieldDesc {
  std::string expr;  // in x, y, z
  std::vector<LocusDesc> loci;
};

struct AmbientDesc {
  std::string kind = "conformal";  // conformal | bcv
  FieldDesc F{"1", {}};
  FieldDesc beta{"1", {}};
  Scalar m = 0.0;
  Scalar l = 0.0;
};

struct KappaDesc {
  std::string kind = "expr";  // expr | family
  std::string expr = "1";     // in s
  std::string branch;         // family only; empty selects by sign of 4m + K
  Scalar K = 0.0;
  Scalar C = 0.0;
  Scalar D = 0.0;
};

struct ImmersionDesc {
  std::string kind = "graph";  // graph | hopf_cylinder
  Scalar a1 = 0.0, a2 = 0.0, a3 = 0.0;
  KappaDesc kappa;
  std::array<Scalar, 2> s_range{0.0, 1.0};
  std::array<Scalar, 3> start{0.0, 0.0, 0.0};
  Scalar step = 1e-3;
};

struct FactorDesc {
  std::string kind = "expr";  // expr | hopf_family | constant_kappa | mean_curvature
  std::string expr = "1";     // in the chart variables
  Scalar K = 0.0, a = 1.0, b = 0.0;  // hopf_family fibre factor
  bool allow_mismatch = false;
  Scalar kappa = 1.0, d1 = 1.0, d2 = 0.0;  // constant_kappa
  Scalar c = 1.0;                          // mean_curvature
};

struct AuditDesc {
  std::string kind;  // phi_k | harmonic
  Scalar k = 6.0;
  Scalar half_width = 20.0;
  std::string w;  // harmonic: expression in x, y
};

struct GridDesc {
  std::array<Scalar, 2> u{0.0, 1.0};
  std::array<Scalar, 2> v{0.0, 1.0};
  int nu = 20;
  int nv = 20;
  Scalar margin = 0.1;
  std::optional<Scalar> disk_radius;
};

struct CaseConfig {
  std::string id;
  std::string description;
  std::string expect = "pass";  // pass | fail (negative control)
  ParamMap params;
  AmbientDesc ambient;
  ImmersionDesc immersion;
  FactorDesc factor;
  std::string system = "conformal";
  GridDesc grid;
  std::optional<double> tolerance;  // default from the engine
  std::string engine = "jets";      // jets | fd | both
  std::vector<AuditDesc> audits;
};

/// Throws ConfigError naming the JSON path of the first problem.
CaseConfig config_from_json(const nlohmann::ordered_json& j);
nlohmann::ordered_json config_to_json(const CaseConfig& c);

CaseConfig parse_config(const std::string& text);
/// Canonical text form: two-space indented JSON with a trailing newline.
std::string serialize_config(const CaseConfig& c);

/// Sets a parameter by name (entry of `params`) or by dotted JSON path
/// (e.g. "immersion.kappa.C"). Throws ConfigError when it does not exist.
CaseConfig with_parameter(const CaseConfig& c, const std::string& name, double value);

}  // namespace bhc
