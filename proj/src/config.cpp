#include "bhc/config.hpp"

#include <algorithm>

namespace bhc {

using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& what) { throw ConfigError(path + ": " + what); }

class Reader {
 public:
  Reader(const json& j, std::string path, std::vector<std::string> allowed) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) bad(path_, "expected an object");
    for (const auto& [key, value] : j_.items())
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) bad(sub(key), "unknown key");
  }

  std::string sub(const std::string& key) const { return path_ + "." + key; }
  bool has(const std::string& key) const { return j_.contains(key); }

  const json& at(const std::string& key) const {
    if (!has(key)) bad(sub(key), "missing");
    return j_.at(key);
  }

  std::string str(const std::string& key) const {
    const json& v = at(key);
    if (!v.is_string()) bad(sub(key), "expected a string");
    return v.get<std::string>();
  }
  std::string str(const std::string& key, std::string fallback) const { return has(key) ? str(key) : fallback; }

  Scalar scalar(const std::string& key) const { return to_scalar(at(key), sub(key)); }
  Scalar scalar(const std::string& key, Scalar fallback) const { return has(key) ? scalar(key) : fallback; }

  int integer(const std::string& key) const {
    const json& v = at(key);
    if (!v.is_number_integer()) bad(sub(key), "expected an integer");
    return v.get<int>();
  }

  bool boolean(const std::string& key, bool fallback) const {
    if (!has(key)) return fallback;
    if (!at(key).is_boolean()) bad(sub(key), "expected true or false");
    return at(key).get<bool>();
  }

  template <std::size_t N>
  std::array<Scalar, N> scalars(const std::string& key) const {
    const json& v = at(key);
    if (!v.is_array() || v.size() != N) bad(sub(key), "expected an array of " + std::to_string(N) + " numbers");
    std::array<Scalar, N> out;
    for (std::size_t i = 0; i < N; ++i) out[i] = to_scalar(v[i], sub(key) + "[" + std::to_string(i) + "]");
    return out;
  }

  static Scalar to_scalar(const json& v, const std::string& path) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) return v.get<std::string>();
    bad(path, "expected a number or an expression string");
  }

 private:
  const json& j_;
  std::string path_;
};

json scalar_json(const Scalar& s) {
  if (const auto* d = std::get_if<double>(&s)) return *d;
  return std::get<std::string>(s);
}

template <std::size_t N>
json scalars_json(const std::array<Scalar, N>& a) {
  json out = json::array();
  for (const auto& s : a) out.push_back(scalar_json(s));
  return out;
}

void require_one_of(const std::string& value, const std::vector<std::string>& options, const std::string& path) {
  if (std::find(options.begin(), options.end(), value) != options.end()) return;
  std::string list;
  for (const auto& o : options) list += (list.empty() ? "" : ", ") + o;
  bad(path, "'" + value + "' is not one of " + list);
}

FieldDesc read_field(const json& j, const std::string& path) {
  if (j.is_string()) return {j.get<std::string>(), {}};
  const Reader r(j, path, {"expr", "loci"});
  FieldDesc f{r.str("expr"), {}};
  if (r.has("loci")) {
    const json& l = r.at("loci");
    if (!l.is_array()) bad(r.sub("loci"), "expected an array");
    for (std::size_t i = 0; i < l.size(); ++i) {
      const Reader e(l[i], r.sub("loci") + "[" + std::to_string(i) + "]", {"name", "clearance"});
      f.loci.push_back({e.str("name"), e.str("clearance")});
    }
  }
  return f;
}

json field_json(const FieldDesc& f) {
  if (f.loci.empty()) return f.expr;
  json j;
  j["expr"] = f.expr;
  json l = json::array();
  for (const auto& loc : f.loci) l.push_back({{"name", loc.name}, {"clearance", loc.clearance}});
  j["loci"] = l;
  return j;
}

}  // namespace

double resolve(const Scalar& s, const ParamMap& params) {
  if (const auto* d = std::get_if<double>(&s)) return *d;
  return eval_constant(std::get<std::string>(s), params);
}

CaseConfig config_from_json(const json& j) {
  const Reader top(j, "config",
                   {"format", "id", "description", "expect", "params", "ambient", "immersion", "factor", "system",
                    "grid", "tolerance", "engine", "audits"});
  CaseConfig c;
  if (top.str("format", kCaseFormat) != kCaseFormat) bad("config.format", "expected \"" + std::string(kCaseFormat) + "\"");
  c.id = top.str("id");
  c.description = top.str("description", "");
  c.expect = top.str("expect", "pass");
  require_one_of(c.expect, {"pass", "fail"}, "config.expect");
  if (top.has("params")) {
    const json& p = top.at("params");
    if (!p.is_object()) bad("config.params", "expected an object");
    for (const auto& [k, v] : p.items()) {
      if (!v.is_number()) bad("config.params." + k, "expected a number");
      c.params[k] = v.get<double>();
    }
  }

  {
    const Reader a(top.at("ambient"), "config.ambient", {"kind", "F", "beta", "m", "l"});
    c.ambient.kind = a.str("kind");
    require_one_of(c.ambient.kind, {"conformal", "bcv"}, a.sub("kind"));
    if (c.ambient.kind == "conformal") {
      c.ambient.F = a.has("F") ? read_field(a.at("F"), a.sub("F")) : FieldDesc{"1", {}};
      c.ambient.beta = a.has("beta") ? read_field(a.at("beta"), a.sub("beta")) : FieldDesc{"1", {}};
    } else {
      c.ambient.m = a.scalar("m");
      c.ambient.l = a.scalar("l", 0.0);
    }
  }

  {
    const Reader im(top.at("immersion"), "config.immersion",
                    {"kind", "a1", "a2", "a3", "kappa", "s_range", "start", "step"});
    c.immersion.kind = im.str("kind");
    require_one_of(c.immersion.kind, {"graph", "hopf_cylinder"}, im.sub("kind"));
    if (c.immersion.kind == "graph") {
      c.immersion.a1 = im.scalar("a1", 0.0);
      c.immersion.a2 = im.scalar("a2", 0.0);
      c.immersion.a3 = im.scalar("a3", 0.0);
    } else {
      const Reader k(im.at("kappa"), im.sub("kappa"), {"kind", "expr", "branch", "K", "C", "D"});
      c.immersion.kappa.kind = k.str("kind");
      require_one_of(c.immersion.kappa.kind, {"expr", "family"}, k.sub("kind"));
      if (c.immersion.kappa.kind == "expr") {
        c.immersion.kappa.expr = k.str("expr");
      } else {
        c.immersion.kappa.branch = k.str("branch", "");
        if (!c.immersion.kappa.branch.empty())
          require_one_of(c.immersion.kappa.branch, {"neg", "zero", "pos"}, k.sub("branch"));
        c.immersion.kappa.K = k.scalar("K");
        c.immersion.kappa.C = k.scalar("C");
        c.immersion.kappa.D = k.scalar("D");
      }
      c.immersion.s_range = im.scalars<2>("s_range");
      if (im.has("start")) c.immersion.start = im.scalars<3>("start");
      c.immersion.step = im.scalar("step", 1e-3);
    }
  }

  {
    const Reader f(top.at("factor"), "config.factor",
                   {"kind", "expr", "K", "a", "b", "allow_mismatch", "kappa", "d1", "d2", "c"});
    c.factor.kind = f.str("kind");
    require_one_of(c.factor.kind, {"expr", "hopf_family", "constant_kappa", "mean_curvature"}, f.sub("kind"));
    if (c.factor.kind == "expr") {
      c.factor.expr = f.str("expr");
    } else if (c.factor.kind == "hopf_family") {
      c.factor.K = f.scalar("K");
      c.factor.a = f.scalar("a");
      c.factor.b = f.scalar("b");
      c.factor.allow_mismatch = f.boolean("allow_mismatch", false);
    } else if (c.factor.kind == "constant_kappa") {
      c.factor.kappa = f.scalar("kappa");
      c.factor.d1 = f.scalar("d1");
      c.factor.d2 = f.scalar("d2");
    } else {
      c.factor.c = f.scalar("c");
    }
  }

  c.system = top.str("system");
  require_one_of(c.system, {"hypersurface", "conformal", "umbilical", "hopf"}, "config.system");

  {
    const Reader g(top.at("grid"), "config.grid", {"u", "v", "nu", "nv", "margin", "disk_radius"});
    c.grid.u = g.scalars<2>("u");
    c.grid.v = g.scalars<2>("v");
    c.grid.nu = g.integer("nu");
    c.grid.nv = g.integer("nv");
    if (c.grid.nu < 1 || c.grid.nv < 1) bad("config.grid", "nu and nv must be positive");
    c.grid.margin = g.scalar("margin", 0.1);
    if (g.has("disk_radius")) c.grid.disk_radius = g.scalar("disk_radius");
  }

  if (top.has("tolerance")) {
    if (!top.at("tolerance").is_number()) bad("config.tolerance", "expected a number");
    c.tolerance = top.at("tolerance").get<double>();
  }
  c.engine = top.str("engine", "jets");
  require_one_of(c.engine, {"jets", "fd", "both"}, "config.engine");

  if (top.has("audits")) {
    const json& a = top.at("audits");
    if (!a.is_array()) bad("config.audits", "expected an array");
    for (std::size_t i = 0; i < a.size(); ++i) {
      const std::string path = "config.audits[" + std::to_string(i) + "]";
      const Reader r(a[i], path, {"kind", "k", "half_width", "w"});
      AuditDesc d;
      d.kind = r.str("kind");
      require_one_of(d.kind, {"phi_k", "harmonic"}, path + ".kind");
      if (d.kind == "phi_k") {
        d.k = r.scalar("k");
        d.half_width = r.scalar("half_width", 20.0);
      } else {
        d.w = r.str("w");
      }
      c.audits.push_back(d);
    }
  }
  return c;
}

json config_to_json(const CaseConfig& c) {
  json j;
  j["format"] = kCaseFormat;
  j["id"] = c.id;
  j["description"] = c.description;
  j["expect"] = c.expect;
  if (!c.params.empty()) {
    json p = json::object();
    for (const auto& [k, v] : c.params) p[k] = v;
    j["params"] = p;
  }

  json a;
  a["kind"] = c.ambient.kind;
  if (c.ambient.kind == "conformal") {
    a["F"] = field_json(c.ambient.F);
    a["beta"] = field_json(c.ambient.beta);
  } else {
    a["m"] = scalar_json(c.ambient.m);
    a["l"] = scalar_json(c.ambient.l);
  }
  j["ambient"] = a;

  json im;
  im["kind"] = c.immersion.kind;
  if (c.immersion.kind == "graph") {
    im["a1"] = scalar_json(c.immersion.a1);
    im["a2"] = scalar_json(c.immersion.a2);
    im["a3"] = scalar_json(c.immersion.a3);
  } else {
    json k;
    k["kind"] = c.immersion.kappa.kind;
    if (c.immersion.kappa.kind == "expr") {
      k["expr"] = c.immersion.kappa.expr;
    } else {
      if (!c.immersion.kappa.branch.empty()) k["branch"] = c.immersion.kappa.branch;
      k["K"] = scalar_json(c.immersion.kappa.K);
      k["C"] = scalar_json(c.immersion.kappa.C);
      k["D"] = scalar_json(c.immersion.kappa.D);
    }
    im["kappa"] = k;
    im["s_range"] = scalars_json(c.immersion.s_range);
    im["start"] = scalars_json(c.immersion.start);
    im["step"] = scalar_json(c.immersion.step);
  }
  j["immersion"] = im;

  json f;
  f["kind"] = c.factor.kind;
  if (c.factor.kind == "expr") {
    f["expr"] = c.factor.expr;
  } else if (c.factor.kind == "hopf_family") {
    f["K"] = scalar_json(c.factor.K);
    f["a"] = scalar_json(c.factor.a);
    f["b"] = scalar_json(c.factor.b);
    if (c.factor.allow_mismatch) f["allow_mismatch"] = true;
  } else if (c.factor.kind == "constant_kappa") {
    f["kappa"] = scalar_json(c.factor.kappa);
    f["d1"] = scalar_json(c.factor.d1);
    f["d2"] = scalar_json(c.factor.d2);
  } else {
    f["c"] = scalar_json(c.factor.c);
  }
  j["factor"] = f;

  j["system"] = c.system;
  json g;
  g["u"] = scalars_json(c.grid.u);
  g["v"] = scalars_json(c.grid.v);
  g["nu"] = c.grid.nu;
  g["nv"] = c.grid.nv;
  g["margin"] = scalar_json(c.grid.margin);
  if (c.grid.disk_radius) g["disk_radius"] = scalar_json(*c.grid.disk_radius);
  j["grid"] = g;
  if (c.tolerance) j["tolerance"] = *c.tolerance;
  j["engine"] = c.engine;
  if (!c.audits.empty()) {
    json arr = json::array();
    for (const auto& d : c.audits) {
      json e;
      e["kind"] = d.kind;
      if (d.kind == "phi_k") {
        e["k"] = scalar_json(d.k);
        e["half_width"] = scalar_json(d.half_width);
      } else {
        e["w"] = d.w;
      }
      arr.push_back(e);
    }
    j["audits"] = arr;
  }
  return j;
}

CaseConfig parse_config(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: malformed JSON: ") + e.what());
  }
  return config_from_json(j);
}

std::string serialize_config(const CaseConfig& c) { return config_to_json(c).dump(2) + "\n"; }

CaseConfig with_parameter(const CaseConfig& c, const std::string& name, double value) {
  if (name.find('.') == std::string::npos) {
    if (!c.params.count(name)) throw ConfigError("parameter not found: '" + name + "' is not in config.params");
    CaseConfig out = c;
    out.params[name] = value;
    return out;
  }
  json j = config_to_json(c);
  json* node = &j;
  std::size_t start = 0;
  while (start <= name.size()) {
    const std::size_t dot = name.find('.', start);
    const std::string key = name.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
    if (node->is_array()) {
      std::size_t idx = 0;
      try {
        idx = std::stoul(key);
      } catch (const std::exception&) {
        throw ConfigError("parameter not found: '" + name + "' (expected an index at '" + key + "')");
      }
      if (idx >= node->size()) throw ConfigError("parameter not found: '" + name + "' (index out of range)");
      node = &(*node)[idx];
    } else if (node->is_object() && node->contains(key)) {
      node = &(*node)[key];
    } else {
      throw ConfigError("parameter not found: '" + name + "'");
    }
    if (dot == std::string::npos) break;
    start = dot + 1;
  }
  if (!node->is_number() && !node->is_string()) throw ConfigError("parameter not found: '" + name + "' is not a scalar");
  *node = value;
  return config_from_json(j);
}

}  // namespace bhc
