// afact_cli: batch driver for the verification pipelines.
// Exit status: 0 all PASS, 1 FAIL, 2 configuration error.

#include <fftw3.h>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "afact/acceptance.hpp"
#include "afact/afact.hpp"

using namespace afact;

namespace {

constexpr const char* kVersion = "afact 0.1.0";

struct RunConfig {
  std::string command;
  double eps = 0.25;
  int m = 8;
  double c = 0.25;
  double R = 0.75;
  double L = 0;         // 0: pipeline default
  std::size_t N = 0;    // 0: pipeline default
  std::size_t M = 256;  // circle modes
  double tol = -1;      // <0: command default
  std::string out;
  std::string format = "json";
  std::uint64_t seed = 1;
  std::string vector;
  std::string symbol = "alpha";
  std::vector<double> n_list = {1, 2, 3, 4};
  double radius = 8;
  std::string criteria = "all";
  bool control = false;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

GroupSpec line_grid(const RunConfig& c, GroupSpec fallback = GroupSpec::real_line()) {
  if (c.L == 0 && c.N == 0) return fallback;
  return GroupSpec::real_line(c.L > 0 ? c.L : fallback.half_length, c.N > 0 ? c.N : fallback.size());
}

RepVector make_vector_arg(const std::string& name, const RunConfig& c) {
  if (name.rfind("mode:", 0) == 0) {
    int k = 0;
    try {
      k = std::stoi(name.substr(5));
    } catch (const std::exception&) {
      throw ConfigError("bad mode index in --vector " + name);
    }
    return vectors::mode(GroupSpec::circle(c.M), k);
  }
  auto g = line_grid(c);
  if (name == "lorentzian") return vectors::lorentzian(g);
  if (name == "gaussian") return vectors::gaussian(g);
  if (name == "abs_gaussian") return vectors::abs_gaussian(g);
  if (name == "zero") return vectors::zero(g);
  if (name == "constant") return vectors::constant(GroupSpec::circle(c.M));
  throw ConfigError("unknown vector " + name);
}

EntireSymbol make_symbol_arg(const RunConfig& c) {
  const auto& s = c.symbol;
  if (s == "alpha") return EntireSymbol::alpha_symbol(c.eps);
  if (s == "beta") return EntireSymbol::beta_symbol(c.eps);
  if (s == "heat") return EntireSymbol::heat();
  if (s == "lorentzian") return EntireSymbol::lorentzian();
  if (s == "erf_linear") return EntireSymbol::erf_linear(c.R);
  if (s == "exp_minus_ml") return EntireSymbol::smoothed_log_exp(c.m, -1);
  throw ConfigError("unknown symbol " + s);
}

double tol_or(const RunConfig& c, double def) { return c.tol < 0 ? def : c.tol; }

json parameters(const RunConfig& c) {
  return {{"command", c.command}, {"eps", c.eps},       {"m", c.m},
          {"c", c.c},             {"R", c.R},           {"grid_L", c.L},
          {"grid_N", c.N},        {"modes", c.M},       {"tol", c.tol},
          {"format", c.format},   {"seed", c.seed},     {"vector", c.vector},
          {"symbol", c.symbol},   {"n_list", c.n_list}, {"radius", c.radius},
          {"criteria", c.criteria}, {"control", c.control}};
}

struct Outcome {
  bool pass = false;
  json results = json::object();
  std::string csv;  // filled by kernel-producing commands
};

std::string csv_of(const SampledSignal& s, const std::vector<double>* floor = nullptr) {
  std::ostringstream os;
  write_kernel_csv(os, s, floor);
  return os.str();
}

Outcome cmd_identity(const RunConfig& c, bool eps_given) {
  Outcome o;
  double tol = tol_or(c, 1e-12);
  std::vector<double> eps_list = eps_given ? std::vector<double>{c.eps} : std::vector<double>{0.1, 0.25, 0.5, 1.0};
  json sweeps = json::array();
  o.pass = true;
  for (double e : eps_list) {
    if (!(e > 0)) throw ConfigError("eps must be positive");
    auto s = identity_sweep(e, WedgeRegion{4, 0.8}, 1000, 50, c.seed);
    sweeps.push_back(to_json(s));
    if (s.overflowed > 0 || !(s.max_residual <= tol)) o.pass = false;
  }
  o.results = {{"wedge", {{"N", 4}, {"theta", 0.8}}}, {"radius", 50}, {"tolerance", tol}, {"sweeps", sweeps}};
  return o;
}

Outcome cmd_kernel(const RunConfig& c, bool certify) {
  Outcome o;
  auto f = make_symbol_arg(c);
  KernelOptions ko;
  ko.allow_underresolved = (c.symbol == "lorentzian" || c.symbol == "exp_minus_ml");
  Kernel K = kernel_of_symbol(f, line_grid(c), ko);
  const auto& g = K.group();
  json samples = json::array();
  for (double x : {0.0, 1.0, 2.0, 4.0, 6.0, 8.0}) {
    std::size_t j = g.zero_index() + static_cast<std::size_t>(std::llround(x / g.spacing()));
    samples.push_back({{"x", x}, {"value", K.signal[j].real()}, {"noise_floor", K.noise_floor[j]}});
  }
  o.results = {{"symbol", f.name()},
               {"grid", to_json(g)},
               {"resolved", K.resolved},
               {"symmetric", K.symmetric},
               {"mass", K.mass},
               {"contour_levels", K.contour_levels},
               {"samples", samples}};
  o.pass = K.symmetric;
  if (certify) {
    auto cert = decay_certificate_kernel(K, c.n_list, c.radius);
    o.results["certificate"] = to_json(cert);
    o.pass = o.pass && cert.verdict() == Verdict::Finite;
  }
  o.csv = csv_of(K.signal, &K.noise_floor);
  return o;
}

Outcome cmd_heat(const RunConfig& c) {
  Outcome o;
  double tol = tol_or(c, 1e-10);
  auto K = heat_kernel(line_grid(c));
  double e = 0;
  for (std::size_t j = 0; j < K.signal.size(); ++j) {
    double x = K.group().signed_point(j);
    e = std::max(e, std::abs(K.signal[j].real() - std::exp(-x * x / 4) / (2 * std::sqrt(std::numbers::pi))));
  }
  o.results = {{"grid", to_json(K.group())}, {"sup_error", e}, {"mass", K.mass}, {"tolerance", tol}};
  o.pass = e <= tol;
  o.csv = csv_of(K.signal, &K.noise_floor);
  return o;
}

Outcome cmd_factorize(const RunConfig& c) {
  Outcome o;
  double tol = tol_or(c, 1e-8);
  if (!(c.eps > 0)) throw ConfigError("eps must be positive");
  auto v = make_vector_arg(c.vector.empty() ? "lorentzian" : c.vector, c);
  auto f = factorize(v, c.eps);
  o.results = {{"vector", v.id},
               {"grid", to_json(v.group())},
               {"eps", c.eps},
               {"error", f.error},
               {"terms", f.terms},
               {"tail_bound", f.tail_bound},
               {"analyticity_radius", f.analyticity},
               {"tolerance", tol}};
  o.pass = f.error <= tol;
  return o;
}

Outcome cmd_testfn(const RunConfig& c) {
  Outcome o;
  double tol = tol_or(c, 1e-6);
  std::string name = c.vector.empty() ? "bump" : c.vector;
  TestFunction phi;
  if (name == "bump") phi = testfn::bump(line_grid(c, bump_grid()));
  else if (name == "gaussian") phi = testfn::gaussian(line_grid(c));
  else if (name == "zero") phi = testfn::zero(line_grid(c));
  else throw ConfigError("test function must be bump, gaussian or zero");
  std::vector<double> ns;
  for (double n : c.n_list)
    if (n <= 3) ns.push_back(n);
  auto r = strong_factorize_testfn(phi, c.m, ns.empty() ? c.n_list : ns, c.radius);
  json probes = json::array();
  for (int k = 0; k <= 4; ++k) probes.push_back(to_json(psi_regularity_probe(c.m, k)));
  o.results = {{"test_function", phi.id},
               {"grid", to_json(phi.values.group)},
               {"m", c.m},
               {"error", r.error},
               {"tolerance", tol},
               {"psi_certificate", to_json(r.cert_psi)},
               {"Psi_phi_certificate", to_json(r.cert_Psi_phi)},
               {"regularity_probes", probes}};
  o.pass = r.error <= tol;
  o.csv = csv_of(r.psi.signal, &r.psi.noise_floor);
  return o;
}

Outcome cmd_hyper(const RunConfig& c) {
  Outcome o;
  double tol = tol_or(c, 1e-4);
  if (!(c.c > 0) || !(c.R > 0)) throw ConfigError("c and R must be positive");
  auto v = make_vector_arg(c.vector.empty() ? "lorentzian" : c.vector, c);
  auto h = strong_factorize_vector(v, c.c, c.R);
  o.results = {{"vector", v.id},
               {"c", c.c},
               {"R", c.R},
               {"error", h.error},
               {"probe_error", h.probe_error},
               {"contour_independence", h.contour_independence},
               {"inversion_residual", h.inversion_residual},
               {"quadrature_crosscheck", h.quadrature_crosscheck},
               {"rectangle_half_width", h.rectangle_half_width},
               {"factor_kernel_certificate", to_json(h.factor_certificate)},
               {"tolerance", tol}};
  o.pass = h.error <= tol && h.contour_independence <= 1e-8 && h.inversion_residual <= 1e-6;
  o.csv = csv_of(h.factor_kernel);
  return o;
}

std::vector<int> parse_criteria(const std::string& s) {
  if (s == "all") return acceptance::all_ids();
  std::vector<int> ids;
  if (s == "none" || s.empty()) return ids;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    int id = 0;
    try {
      id = std::stoi(tok);
    } catch (const std::exception&) {
      throw ConfigError("bad criterion id " + tok);
    }
    if (id < 1 || id > 11) throw ConfigError("criterion ids run from 1 to 11");
    ids.push_back(id);
  }
  return ids;
}

Outcome cmd_report_all(const RunConfig& c) {
  Outcome o;
  auto results = acceptance::run(parse_criteria(c.criteria), c.control);
  json arr = json::array();
  o.pass = true;
  std::fprintf(stderr, "%-4s %-42s %-6s %8s\n", "id", "criterion", "status", "seconds");
  for (const auto& r : results) {
    arr.push_back(acceptance::to_json(r));
    o.pass = o.pass && r.ok();
    std::fprintf(stderr, "%-4d %-42s %-6s %8.2f\n", r.id, r.name.c_str(), r.ok() ? "PASS" : "FAIL", r.seconds);
  }
  o.results = {{"criteria", arr}};
  return o;
}

int emit(const RunConfig& c, const json& report, const std::string& csv) {
  std::string text = c.format == "csv" ? csv : report.dump(2) + "\n";
  if (c.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(c.out, std::ios::binary);
    if (!f) {
      std::cerr << "cannot write " << c.out << "\n";
      return 2;
    }
    f << text;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verification pipelines for analytic-vector factorization"};
  RunConfig c;
  app.set_config("--config", "", "key=value config file; flags win");
  app.add_option("--command", c.command, "identity|kernel|decay|heat|factorize|strongfact-testfn|strongfact-hyper|report-all")
      ->required()
      ->check(CLI::IsMember({"identity", "kernel", "decay", "heat", "factorize", "strongfact-testfn",
                             "strongfact-hyper", "report-all"}));
  auto* eps_opt = app.add_option("--eps", c.eps, "epsilon");
  app.add_option("--m", c.m, "smoothed-log exponent");
  app.add_option("--c", c.c, "contour height parameter");
  app.add_option("--R", c.R, "hyperfunction growth parameter");
  app.add_option("--grid-L", c.L, "real-line half length");
  app.add_option("--grid-N", c.N, "real-line samples (power of two)");
  app.add_option("--modes", c.M, "circle modes M");
  app.add_option("--tol", c.tol, "PASS tolerance");
  app.add_option("--out", c.out, "output path (default stdout)");
  app.add_option("--format", c.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--seed", c.seed, "sampling seed");
  app.add_option("--vector", c.vector, "lorentzian|gaussian|abs_gaussian|zero|constant|mode:k|bump");
  app.add_option("--symbol", c.symbol, "alpha|beta|heat|lorentzian|erf_linear|exp_minus_ml");
  app.add_option("--n-list", c.n_list, "certificate weights")->delimiter(',');
  app.add_option("--radius", c.radius, "certificate radius");
  app.add_option("--criteria", c.criteria, "report-all: all|none|comma list");
  app.add_flag("--control", c.control, "report-all: add the forced-fail control");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  json report = {{"schema", kReportSchema}, {"version", kVersion}, {"fftw", std::string(fftw_version)}};
  report["parameters"] = parameters(c);
  Outcome o;
  int status = 1;
  try {
    if (c.format == "csv" && (c.command == "identity" || c.command == "factorize" || c.command == "report-all"))
      throw ConfigError("csv output is available for kernel-producing commands only");
    if (c.command == "identity") o = cmd_identity(c, eps_opt->count() > 0);
    else if (c.command == "kernel") o = cmd_kernel(c, false);
    else if (c.command == "decay") o = cmd_kernel(c, true);
    else if (c.command == "heat") o = cmd_heat(c);
    else if (c.command == "factorize") o = cmd_factorize(c);
    else if (c.command == "strongfact-testfn") o = cmd_testfn(c);
    else if (c.command == "strongfact-hyper") o = cmd_hyper(c);
    else o = cmd_report_all(c);
    report["status"] = o.pass ? "PASS" : "FAIL";
    report["results"] = o.results;
    status = o.pass ? 0 : 1;
  } catch (const ConfigError& e) {
    report["status"] = "CONFIG_ERROR";
    report["error"] = {{"code", "CONFIG"}, {"message", e.what()}};
    status = 2;
  } catch (const Error& e) {
    bool config = e.code() == ErrorCode::Config || e.code() == ErrorCode::Domain;
    report["status"] = config ? "CONFIG_ERROR" : "FAIL";
    report["error"] = error_json(e);
    status = config ? 2 : 1;
  }
  if (c.format == "csv" && status != 0 && o.csv.empty()) {
    std::cerr << report.dump(2) << "\n";
    return status;
  }
  int rc = emit(c, report, o.csv);
  return rc != 0 ? rc : status;
}
