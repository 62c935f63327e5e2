#include "bhc/runner.hpp"

namespace bhc {

namespace {

using json = nlohmann::ordered_json;

// Shared pieces of the catalog documents.
const json kSphereF = "(1+x^2+y^2+z^2)/2";
const json kBallF = json{{"expr", "(1-x^2-y^2-z^2)/2"},
                         {"loci", {{{"name", "unit sphere"}, {"clearance", "1-x^2-y^2-z^2"}}}}};
const json kInverseZ = json{{"expr", "1/z"}, {"loci", {{{"name", "z = 0"}, {"clearance", "z"}}}}};

json sphere_family_beta(const std::string& w) {
  const std::string d = "(-2*r*z - 2*(r^2+z^2)*arctan(z/r) + (" + w + ")*r^3*(r^2+z^2))";
  return {{"expr", "2*r^3/" + d}, {"loci", {{{"name", "D_w = 0"}, {"clearance", d}}}}};
}

json ball_family_beta(const std::string& w) {
  const std::string d = "(-2*rho*z - 2*(rho^2-z^2)*arctan(z/rho) + (" + w + ")*rho^3*(rho^2-z^2))";
  return {{"expr", "2*rho^3/" + d},
          {"loci",
           {{{"name", "rho = 0"}, {"clearance", "1-x^2-y^2"}},
            {{"name", "rho^2 = z^2"}, {"clearance", "1-x^2-y^2-z^2"}},
            {{"name", "E_w = 0"}, {"clearance", d}}}}};
}

json graph(double a1, double a2, double a3) { return {{"kind", "graph"}, {"a1", a1}, {"a2", a2}, {"a3", a3}}; }

json grid(json u, json v, int nu, int nv) { return {{"u", u}, {"v", v}, {"nu", nu}, {"nv", nv}}; }

json iss(const std::string& id, const std::string& system) {
  return {{"id", id},
          {"description", "sphere of radius 1/sqrt2 in S^3, graph z = 1 in the stereographic chart"},
          {"ambient", {{"kind", "conformal"}, {"F", kSphereF}, {"beta", "1"}}},
          {"immersion", graph(0, 0, 1)},
          {"factor", {{"kind", "expr"}, {"expr", "1"}}},
          {"system", system},
          {"grid", grid({-3, 3}, {-3, 3}, 20, 20)},
          {"tolerance", 1e-7}};
}

json pq1(const std::string& id, const std::string& f, const std::string& system = "conformal") {
  return {{"id", id},
          {"description", "plane z = x + y under h = z^-2 (flat), f^(1/2) = x + y"},
          {"ambient", {{"kind", "conformal"}, {"F", "1"}, {"beta", kInverseZ}}},
          {"immersion", graph(1, 1, 0)},
          {"factor", {{"kind", "expr"}, {"expr", f}}},
          {"system", system},
          {"grid", grid({0.2, 2}, {0.2, 2}, 19, 19)}};
}

json ssl_k(const std::string& id, double k) {
  return {{"id", id},
          {"description", "plane z = 0 in the conformal 3-sphere with beta = Phi_k, f^(1/2) = k(1+x^2+y^2)/2"},
          {"params", {{"k", k}}},
          {"ambient", {{"kind", "conformal"}, {"F", kSphereF}, {"beta", sphere_family_beta("k")}}},
          {"immersion", graph(0, 0, 0)},
          {"factor", {{"kind", "expr"}, {"expr", "(k*(1+x^2+y^2)/2)^2"}}},
          {"system", "conformal"},
          {"grid", grid({-3, 3}, {-3, 3}, 13, 13)},
          {"audits", {{{"kind", "phi_k"}, {"k", "k"}, {"half_width", 20}}}}};
}

json ssl_w(const std::string& id, const std::string& w) {
  return {{"id", id},
          {"description", "plane z = 0 in the conformal 3-sphere with beta = 2 psi_w/(1+|p|^2), w = " + w},
          {"ambient", {{"kind", "conformal"}, {"F", kSphereF}, {"beta", sphere_family_beta(w)}}},
          {"immersion", graph(0, 0, 0)},
          {"factor", {{"kind", "expr"}, {"expr", "((" + w + ")*(1+x^2+y^2)/2)^2"}}},
          {"system", "conformal"},
          {"grid", grid({-3, 3}, {-3, 3}, 13, 13)},
          {"audits", {{{"kind", "harmonic"}, {"w", w}}}}};
}

json hopf(const std::string& id, const std::string& description, double m, double l, json kappa, json s_range,
          json factor, json g) {
  return {{"id", id},
          {"description", description},
          {"ambient", {{"kind", "bcv"}, {"m", m}, {"l", l}}},
          {"immersion", {{"kind", "hopf_cylinder"}, {"kappa", kappa}, {"s_range", s_range}}},
          {"factor", factor},
          {"system", "hopf"},
          {"grid", g}};
}

const json kSineKappa = {{"kind", "family"}, {"K", 1}, {"C", 0}, {"D", "sqrt(1/2)"}};
const json kSineRange = {0, "pi/(2*sqrt(2))"};
const json kSineGrid = grid({0.1, "pi/(2*sqrt(2)) - 0.1"}, {-1, 1}, 12, 9);

json hopff1(const std::string& id, json factor) {
  return hopf(id, "Hopf cylinder in S^2 x R, kappa = 1/(sin(2 sqrt2 s)/sqrt2 + 1), f = e^z kappa^(-3/2)", 0.25, 0,
              kSineKappa, kSineRange, factor, kSineGrid);
}

json hopff3(const std::string& id, double l) {
  return hopf(id, "Hopf cylinder in R^3 over kappa = 1/(1+s^2), f = z (1+s^2)^(3/2)", 0, l,
                {{"kind", "expr"}, {"expr", "1/(1+s^2)"}}, {-0.1, 3.1},
                {{"kind", "expr"}, {"expr", "(1+s^2)^(3/2)*z"}}, grid({0, 3}, {0.2, 3}, 9, 9));
}

json constant_kappa(const std::string& id, double kappa, double d1, double d2) {
  return {{"id", id},
          {"description", "constant curvature cylinder in S^2 x R, f = d1 e^(z q) + d2 e^(-z q), q^2 = kappa^2 - 4m"},
          {"params", {{"kappa", kappa}}},
          {"ambient", {{"kind", "bcv"}, {"m", 0.25}, {"l", 0}}},
          {"immersion", {{"kind", "hopf_cylinder"}, {"kappa", {{"kind", "expr"}, {"expr", "kappa"}}}, {"s_range", {-0.1, 1.1}}}},
          {"factor", {{"kind", "constant_kappa"}, {"kappa", "kappa"}, {"d1", d1}, {"d2", d2}}},
          {"system", "hopf"},
          {"grid", grid({0, 1}, {-1, 1}, 5, 5)}};
}

json negative(json c, const std::string& description = "") {
  c["expect"] = "fail";
  if (!description.empty()) c["description"] = description;
  return c;
}

std::vector<json> documents() {
  std::vector<json> d;
  d.push_back(iss("iss", "hypersurface"));
  d.push_back(iss("iss-umbilical", "umbilical"));
  d.push_back(pq1("pq1", "(x+y)^2"));
  d.push_back(pq1("pq1-umbilical", "(x+y)^2", "umbilical"));
  {
    json c = pq1("pq1-mean-curvature", "1");
    c["description"] = "plane z = x + y under h = z^-2, f = c/|H| computed from the ambient";
    c["factor"] = {{"kind", "mean_curvature"}, {"c", "sqrt(3)/3"}};
    d.push_back(c);
  }
  {
    json c = pq1("pq1-both", "(x+y)^2");
    c["description"] = "pq1 evaluated by both derivative engines";
    c["engine"] = "both";
    d.push_back(c);
  }
  d.push_back(negative(pq1("pq1-perturbed", "(x+y)^2*(1+sin(x)/10)"), "pq1 with f multiplied by 1 + sin(x)/10"));
  d.push_back(ssl_k("ssl-k", 6));
  for (int k : {6, 8, 10}) d.push_back(ssl_k("ssl-k" + std::to_string(k), k));
  d.push_back(negative(ssl_k("ssl-k1", 1), "Phi_1 is not positive on R^3; the positivity audit must fail"));
  d.push_back(ssl_w("ssl-w-harmonic", "6+x"));
  d.push_back(negative(ssl_w("ssl-w-nonharmonic", "6+x^2"), "psi_w with nonharmonic w = 6+x^2"));
  d.push_back({{"id", "hssl"},
               {"description", "plane z = 0 in the conformal ball model of H^3, w = 6, f^(1/2) = w(1-x^2-y^2)/2"},
               {"ambient", {{"kind", "conformal"}, {"F", kBallF}, {"beta", ball_family_beta("6")}}},
               {"immersion", graph(0, 0, 0)},
               {"factor", {{"kind", "expr"}, {"expr", "(3*(1-x^2-y^2))^2"}}},
               {"system", "conformal"},
               {"grid", {{"u", {-0.8, 0.8}}, {"v", {-0.8, 0.8}}, {"nu", 17}, {"nv", 17}, {"disk_radius", 0.8}}}});
  d.push_back(negative({{"id", "h3-plane-umbilical"},
                        {"description", "totally geodesic plane in H^3 fails the umbilical conditions"},
                        {"ambient", {{"kind", "conformal"}, {"F", kBallF}, {"beta", "1"}}},
                        {"immersion", graph(0, 0, 0)},
                        {"factor", {{"kind", "expr"}, {"expr", "1"}}},
                        {"system", "umbilical"},
                        {"grid", {{"u", {-0.6, 0.6}}, {"v", {-0.6, 0.6}}, {"nu", 7}, {"nv", 7}, {"disk_radius", 0.6}}}}));
  d.push_back(hopff1("hopff1", {{"kind", "hopf_family"}, {"K", 1}, {"a", 1}, {"b", 0}}));
  d.push_back(hopf("hopff2", "Hopf cylinder in H^2 x R over kappa = 1/(1+s^2), f = e^z (1+s^2)^(3/2)", -0.25, 0,
                   {{"kind", "expr"}, {"expr", "1/(1+s^2)"}}, {-1.1, 1.1},
                   {{"kind", "expr"}, {"expr", "(1+s^2)^(3/2)*exp(z)"}}, grid({-1, 1}, {-1, 1}, 9, 9)));
  d.push_back(hopff3("hopff3", 0));
  for (double kappa : {1.5, 2.0})
    for (auto [d1, d2] : {std::pair{1, 0}, std::pair{1, 1}}) {
      const std::string k = kappa == 2.0 ? "2" : "1.5";
      d.push_back(constant_kappa("hopf-const-k" + k + "-d" + std::to_string(d1) + std::to_string(d2), kappa, d1, d2));
    }
  d.push_back(negative(hopff1("hopf-unit-factor", {{"kind", "expr"}, {"expr", "1"}}), "hopff1 cylinder with f = 1"));
  d.push_back(negative(
      hopff1("hopf-mismatched-K", {{"kind", "hopf_family"}, {"K", 2}, {"a", 1}, {"b", 0}, {"allow_mismatch", true}}),
      "hopff1 cylinder with fibre factor from K = 2 against kappa with K = 1"));
  {
    json c = negative(hopff3("hopf-nil", 1));
    c["description"] = "the R^3 cylinder data placed in Nil (l = 1); l must vanish";
    d.push_back(c);
  }
  return d;
}

}  // namespace

const std::vector<CaseConfig>& builtin_catalog() {
  static const std::vector<CaseConfig> catalog = [] {
    std::vector<CaseConfig> out;
    for (const auto& doc : documents()) out.push_back(config_from_json(doc));
    return out;
  }();
  return catalog;
}

const CaseConfig& builtin_case(const std::string& id) {
  for (const auto& c : builtin_catalog())
    if (c.id == id) return c;
  throw ConfigError("unknown case id: " + id);
}

}  // namespace bhc
