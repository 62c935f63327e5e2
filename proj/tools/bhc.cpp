// Command line front end for the case runner.
//   bhc list
//   bhc show <case|config>
//   bhc run <case|config> [--engine E] [--tol T] [--out DIR] [--format csv|json] [--threads N]
//   bhc suite <manifest> [...same flags]
//   bhc sweep <case|config> --param NAME --values v1,v2,...
// Exit status: 0 success, 1 verification failure, 2 configuration or domain error.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "bhc/runner.hpp"

namespace fs = std::filesystem;
using namespace bhc;

namespace {

struct Options {
  std::string engine;
  std::optional<double> tol;
  std::string out;
  std::string format = "csv";
  unsigned threads = 1;
};

CaseConfig load(const std::string& ref) {
  if (fs::is_regular_file(ref)) {
    std::ifstream in(ref);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
  }
  if (ref.find('/') != std::string::npos || ref.ends_with(".json")) throw ConfigError("cannot read config file " + ref);
  return builtin_case(ref);
}

CaseConfig apply(CaseConfig c, const Options& o) {
  if (!o.engine.empty()) c.engine = o.engine;
  if (o.tol) c.tolerance = *o.tol;
  return c;
}

void write_report(const CaseResult& r, const Options& o) {
  if (o.out.empty()) return;
  fs::create_directories(o.out);
  const fs::path path = fs::path(o.out) / (r.config.id + "." + o.format);
  std::ofstream file(path);
  if (o.format == "json") write_json(file, r);
  else write_csv(file, r);
  if (!file) throw ConfigError("cannot write " + path.string());
}

void print_verdict(const Verdict& v) {
  double m = 0;
  for (const auto& [name, x] : v.max_abs) m = std::max(m, x);
  std::cout << v.id << ": " << (v.passed ? "pass" : "fail") << " (expected " << (v.expect_pass ? "pass" : "fail")
            << ") max residual " << format_double(m) << " tol " << format_double(v.tolerance);
  if (!std::isnan(v.engine_gap)) std::cout << " engine gap " << format_double(v.engine_gap);
  std::cout << "\n";
  for (const auto& [name, x] : v.max_abs) std::cout << "  " << name << " max |.| = " << format_double(x) << "\n";
  for (const auto& a : v.audits)
    std::cout << "  audit " << a.name << ": " << (a.passed ? "pass" : "fail") << " (" << a.detail << ")\n";
  if (!v.note.empty()) std::cout << "  note: " << v.note << "\n";
}

std::vector<double> parse_values(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("--values: '" + item + "' is not a number");
    }
  }
  if (out.empty()) throw ConfigError("--values: empty list");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Biharmonic conformal immersion checker"};
  app.require_subcommand(1);
  Options o;
  auto add_common = [&o](CLI::App* sub) {
    sub->add_option("--engine", o.engine, "derivative engine")->check(CLI::IsMember({"jets", "fd", "both"}));
    sub->add_option("--tol", o.tol, "residual tolerance");
    sub->add_option("--out", o.out, "directory for reports");
    sub->add_option("--format", o.format, "report format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--threads", o.threads, "grid workers per case")->check(CLI::PositiveNumber);
  };

  auto* list = app.add_subcommand("list", "list built-in cases");
  std::string target;
  auto* show = app.add_subcommand("show", "print the canonical config of a case");
  show->add_option("case", target, "case id or config path")->required();
  auto* run = app.add_subcommand("run", "run one case");
  run->add_option("case", target, "case id or config path")->required();
  add_common(run);
  std::string manifest;
  auto* suite = app.add_subcommand("suite", "run the cases listed in a manifest");
  suite->add_option("manifest", manifest, "file with one case id or config path per line")->required();
  add_common(suite);
  std::string param, values;
  auto* sw = app.add_subcommand("sweep", "vary one parameter and tabulate max residuals");
  sw->add_option("case", target, "case id or config path")->required();
  sw->add_option("--param", param, "parameter name or dotted config path")->required();
  sw->add_option("--values", values, "comma separated values")->required();
  add_common(sw);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (list->parsed()) {
      for (const auto& c : builtin_catalog())
        std::cout << c.id << "\t" << c.expect << "\t" << c.system << "\t" << c.description << "\n";
      return 0;
    }
    if (show->parsed()) {
      std::cout << serialize_config(load(target));
      return 0;
    }
    if (run->parsed()) {
      const CaseResult r = run_case(apply(load(target), o), o.threads);
      write_report(r, o);
      print_verdict(r.verdict);
      return r.verdict.as_expected() ? 0 : 1;
    }
    if (suite->parsed()) {
      std::ifstream in(manifest);
      if (!in) throw ConfigError("cannot read manifest " + manifest);
      const auto ids = read_manifest(in);
      const fs::path base = fs::path(manifest).parent_path();
      auto resolve_ref = [&](const std::string& id) {
        // config paths in a manifest are relative to the manifest
        const fs::path rel = base / id;
        return apply(fs::is_regular_file(rel) ? load(rel.string()) : load(id), o);
      };
      const SuiteSummary s = run_suite(ids, resolve_ref, o.threads);
      write_suite_table(std::cout, s);
      if (!o.out.empty()) {
        fs::create_directories(o.out);
        std::ofstream table(fs::path(o.out) / "summary.csv");
        write_suite_table(table, s);
        for (const auto& id : ids) write_report(run_case(resolve_ref(id), o.threads), o);
      }
      std::size_t bad = 0;
      for (const auto& v : s.verdicts) bad += !v.as_expected();
      std::cerr << s.verdicts.size() << " case(s), " << bad << " not as expected\n";
      return s.ok() ? 0 : 1;
    }
    const CaseConfig base = apply(load(target), o);
    const auto rows = sweep(base, param, parse_values(values), o.threads);
    if (o.out.empty()) {
      write_sweep_csv(std::cout, param, rows);
    } else {
      fs::create_directories(o.out);
      std::ofstream file(fs::path(o.out) / (base.id + "-sweep.csv"));
      write_sweep_csv(file, param, rows);
    }
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 2;
  }
}
