#include <algorithm>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "stieltjes/builtins.hpp"
#include "stieltjes/criteria.hpp"
#include "stieltjes/fractional.hpp"
#include "stieltjes/measure_json.hpp"
#include "stieltjes/order.hpp"
#include "stieltjes/quadrature.hpp"
#include "stieltjes/reproduce.hpp"
#include "stieltjes/transform.hpp"

using namespace stieltjes;
using nlohmann::json;

namespace {

struct Options {
  std::string builtin;
  std::string measure_file;
  std::string rep = "mu";
  double alpha = 2.0;
  double beta = 0.0;
  double eta = 0.5;
  std::optional<double> epsilon;
  std::string z_list = "1.0";
  std::string grid;
  double tol = 0.025;
  std::string format = "json";
  bool expect_pass = false;
  std::string to;
  std::string op = "rl";
  std::string criterion = "sokal";
  double order_param = 0.0;
  int n_max = 4;
  int k_max = 4;
  std::string output;
  // builtin parameters
  double a = 0.5, b = 1.0, c = 2.0, m = 3.0;
};

void add_input_options(CLI::App* cmd, Options& o) {
  cmd->add_option("--builtin", o.builtin,
                  "builtin name: example1, example2, example3, remark7, "
                  "remark8");
  cmd->add_option("--measure", o.measure_file, "measure file (JSON)");
  cmd->add_option("--rep", o.rep, "representation of the input measure")
      ->check(CLI::IsMember({"mu", "rho"}));
  cmd->add_option("--alpha", o.alpha, "order of the representation");
  cmd->add_option("--a", o.a, "first hypergeometric parameter");
  cmd->add_option("--b", o.b, "second hypergeometric parameter");
  cmd->add_option("--c", o.c, "third hypergeometric parameter");
  cmd->add_option("--m", o.m, "truncation point for remark8");
  cmd->add_option("--format", o.format, "output format")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--tol", o.tol, "tolerance override");
}

builtins::BuiltinParams builtin_params(const Options& o) {
  builtins::BuiltinParams p;
  p.alpha = o.alpha;
  p.a = o.a;
  p.b = o.b;
  p.c = o.c;
  p.m = o.m;
  return p;
}

struct ResolvedInput {
  StieltjesFunction f;
  DerivativeProvider provider;
  ComplexFn fn;
  std::string provenance;
};

ResolvedInput resolve_input(const Options& o) {
  if (!o.builtin.empty()) {
    auto b = builtins::make_builtin(o.builtin, builtin_params(o));
    return {b.f, b.provider, b.fn, b.provenance};
  }
  if (o.measure_file.empty())
    throw std::invalid_argument("need --builtin or --measure");
  Measure m = load_measure(o.measure_file);
  const Representation rep =
      o.rep == "rho" ? Representation::kRho : Representation::kMu;
  StieltjesFunction f{std::move(m), o.alpha, rep};
  auto fn = [f](std::complex<double> z) { return eval(f, z); };
  return {f, provider_from_function(f), fn,
          "measure file " + o.measure_file + " at order " +
              std::to_string(o.alpha)};
}

std::complex<double> parse_complex(std::string s) {
  s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
  if (s.empty()) throw std::invalid_argument("empty complex literal");
  const auto ipos = s.find('i');
  if (ipos == std::string::npos) return {std::stod(s), 0.0};
  s.erase(ipos, 1);
  for (size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      const double re = std::stod(s.substr(0, k));
      const std::string im = s.substr(k);
      return {re, im == "+" ? 1.0 : im == "-" ? -1.0 : std::stod(im)};
    }
  }
  return {0.0, s == "+" ? 1.0 : s == "-" ? -1.0 : std::stod(s)};
}

std::vector<std::complex<double>> parse_z_list(const std::string& list) {
  std::vector<std::complex<double>> out;
  std::string token;
  std::istringstream in(list);
  while (std::getline(in, token, ',')) out.push_back(parse_complex(token));
  if (out.empty()) throw std::invalid_argument("empty --z list");
  return out;
}

std::vector<double> parse_grid(const std::string& spec,
                               const std::vector<double>& fallback) {
  if (spec.empty()) return fallback;
  double lo = 0.0, hi = 0.0;
  int n = 0;
  if (std::sscanf(spec.c_str(), "%lf:%lf:%d", &lo, &hi, &n) != 3)
    throw std::invalid_argument("grid spec must be lo:hi:n");
  return log_grid(lo, hi, n);
}

void emit(const json& j, const Options& o) {
  if (!o.output.empty()) {
    std::ofstream out(o.output);
    out << j.dump(2) << "\n";
  } else {
    std::cout << j.dump(2) << "\n";
  }
}

int cmd_eval(const Options& o) {
  const auto in = resolve_input(o);
  const auto zs = parse_z_list(o.z_list);
  if (o.format == "csv") {
    std::cout << "z_re,z_im,f_re,f_im\n";
    for (const auto& z : zs) {
      const auto v = eval(in.f, z);
      std::cout << z.real() << "," << z.imag() << "," << v.real() << ","
                << v.imag() << "\n";
    }
    return 0;
  }
  json j;
  j["input"] = in.provenance;
  j["alpha"] = in.f.alpha;
  j["values"] = json::array();
  for (const auto& z : zs) {
    const auto v = eval(in.f, z);
    j["values"].push_back({{"z_re", z.real()},
                           {"z_im", z.imag()},
                           {"f_re", v.real()},
                           {"f_im", v.imag()}});
  }
  emit(j, o);
  return 0;
}

int cmd_convert(const Options& o) {
  const auto in = resolve_input(o);
  StieltjesFunction f = in.f;
  json j;
  j["input"] = in.provenance;
  if (!o.to.empty()) {
    const Representation target =
        o.to == "rho" ? Representation::kRho : Representation::kMu;
    if (target != f.rep)
      f = StieltjesFunction(involution(f.measure, f.alpha), f.alpha, target);
    j["representation"] = o.to;
  }
  if (o.beta > 0.0) {
    f = (f.rep == Representation::kMu) ? order_raise_mu(f, o.beta)
                                       : order_raise_rho(f, o.beta);
    j["order"] = o.beta;
  }
  j["measure"] = measure_to_json(f.measure);
  if (!o.output.empty()) {
    // keep the file loadable as a plain measure
    save_measure(f.measure, o.output);
    j.erase("measure");
    j["written_to"] = o.output;
    std::cout << j.dump(2) << "\n";
  } else {
    emit(j, o);
  }
  return 0;
}

int cmd_fracint(const Options& o) {
  const auto in = resolve_input(o);
  const Measure& mu = in.f.measure;
  const Measure out = (o.op == "rl") ? rl_left(mu, o.eta)
                                     : kober_right(mu, o.alpha, o.eta);
  json j;
  j["input"] = in.provenance;
  j["operator"] = o.op;
  j["eta"] = o.eta;
  if (o.op == "kober") j["alpha"] = o.alpha;
  j["measure"] = measure_to_json(out);
  if (!o.output.empty()) {
    save_measure(out, o.output);
    j.erase("measure");
    j["written_to"] = o.output;
    std::cout << j.dump(2) << "\n";
  } else {
    emit(j, o);
  }
  return 0;
}

int cmd_fracinv(const Options& o) {
  const auto in = resolve_input(o);
  const Measure& nu = in.f.measure;
  const auto grid = parse_grid(o.grid, log_grid(0.1, 10.0, 64));
  json j;
  j["input"] = in.provenance;
  j["operator"] = o.op;
  j["eta"] = o.eta;
  DistributionFunction F;
  if (o.op == "rl") {
    F = rl_left_invert(nu, o.eta);
  } else {
    const auto inv = kober_right_invert(nu, o.alpha, o.eta);
    F = inv.distribution;
    j["mu_infinity"] = inv.mu_infinity;
    j["mu_infinity_converged"] = inv.mu_infinity_converged;
  }
  if (o.format == "csv") {
    std::cout << "y,F\n";
    for (double y : grid) std::cout << y << "," << F.value(y) << "\n";
    return 0;
  }
  j["distribution"] = json::array();
  for (double y : grid)
    j["distribution"].push_back({{"y", y}, {"F", F.value(y)}});
  emit(j, o);
  return 0;
}

const char* verdict_name(MonotoneVerdict v) {
  switch (v) {
    case MonotoneVerdict::kNonDecreasingOnGrid:
      return "non-decreasing on grid";
    case MonotoneVerdict::kViolation:
      return "violation";
    default:
      return "inconclusive";
  }
}

int cmd_order(const Options& o) {
  const auto in = resolve_input(o);
  const auto rep = run_order_analysis(in.f, o.epsilon, o.tol);
  if (o.format == "csv") {
    std::cout << "y,phi,error\n";
    for (const auto& s : rep.phi_samples)
      std::cout << s.y << "," << s.value << "," << s.error << "\n";
    return 0;
  }
  json j;
  j["input"] = in.provenance;
  j["beta_tested"] = rep.beta_tested;
  j["epsilon"] = rep.epsilon;
  j["monotonicity"] = verdict_name(rep.monotonicity.verdict);
  if (rep.monotonicity.verdict == MonotoneVerdict::kViolation)
    j["violation_at"] = rep.monotonicity.witness_y;
  if (rep.ratio_estimate) j["ratio_limit_estimate"] = *rep.ratio_estimate;
  if (rep.estimated_order) {
    j["estimated_order"] = {
        {"lo", rep.estimated_order->lo},
        {"hi", rep.estimated_order->hi},
        {"inconclusive", rep.estimated_order->inconclusive},
        {"note", rep.estimated_order->note}};
  }
  j["conclusion"] = rep.conclusion == OrderConclusion::kExact
                        ? "beta exact (evidence)"
                        : rep.conclusion == OrderConclusion::kNotExact
                              ? "beta not exact (evidence)"
                              : "inconclusive";
  j["evidence"] = rep.evidence;
  emit(j, o);
  return 0;
}

int cmd_check(const Options& o) {
  const auto in = resolve_input(o);
  const double order = o.order_param > 0.0 ? o.order_param : in.f.alpha;
  CriterionReport rep;
  if (o.criterion == "sokal") {
    const auto grid = parse_grid(o.grid, default_sokal_grid());
    if (o.format == "csv") {
      std::cout << "n,k,x,F\n";
      for (int n = 0; n <= o.n_max; ++n)
        for (int k = 0; k <= o.k_max; ++k)
          for (double x : grid)
            std::cout << n << "," << k << "," << x << ","
                      << sokal_value(in.provider, order, n, k, x) << "\n";
      return 0;
    }
    rep = sokal_test(in.provider, order, o.n_max, o.k_max, grid);
  } else if (o.criterion == "krein") {
    rep = krein_test(in.fn, default_half_plane_grid(), default_sokal_grid());
  } else if (o.criterion == "sector") {
    rep = sector_test(in.fn, order, sector_grid(order, 21, 20));
  } else {
    throw std::invalid_argument("unknown criterion: " + o.criterion);
  }
  json j;
  j["input"] = in.provenance;
  j["criterion"] = rep.criterion;
  j["order"] = order;
  j["violation"] = rep.violation_found;
  j["samples"] = rep.samples;
  j["detail"] = rep.detail;
  if (rep.necessary_only) j["necessary_only"] = true;
  if (rep.sokal_witness) {
    j["witness"] = {{"n", rep.sokal_witness->n},
                    {"k", rep.sokal_witness->k},
                    {"x", rep.sokal_witness->x},
                    {"value", rep.sokal_witness->value}};
  }
  if (rep.witness_point) {
    j["witness"] = {{"z_re", rep.witness_point->real()},
                    {"z_im", rep.witness_point->imag()}};
  }
  emit(j, o);
  if (rep.violation_found && o.expect_pass) return 1;
  return 0;
}

int cmd_reproduce(const Options& o) {
  if (o.builtin.empty())
    throw std::invalid_argument("reproduce needs --builtin");
  const auto checks = repro::reproduce_builtin(o.builtin, builtin_params(o));
  int failures = 0;
  std::cout << "reproduction checks for " << o.builtin << "\n";
  for (const auto& c : checks) {
    std::cout << (c.pass ? "PASS" : "FAIL") << "  " << c.name << "  ("
              << c.detail << ")\n";
    if (!c.pass) ++failures;
  }
  std::cout << (failures == 0 ? "all checks passed"
                              : std::to_string(failures) + " check(s) failed")
            << "\n";
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* budget = std::getenv("STIELTJES_QUAD_BUDGET")) {
    try {
      quad::set_subdivision_budget(std::stol(budget));
    } catch (const std::exception&) {
      std::cerr << "ignoring malformed STIELTJES_QUAD_BUDGET\n";
    }
  }

  CLI::App app{"generalized Stieltjes transform toolbox"};
  app.require_subcommand(1);
  Options o;

  auto* eval_cmd = app.add_subcommand("eval", "evaluate the transform");
  add_input_options(eval_cmd, o);
  eval_cmd->add_option("--z", o.z_list, "comma-separated evaluation points");

  auto* conv = app.add_subcommand(
      "convert", "switch representation or raise the order");
  add_input_options(conv, o);
  conv->add_option("--to", o.to, "target representation")
      ->check(CLI::IsMember({"mu", "rho"}));
  conv->add_option("--beta", o.beta, "raise the representation order");
  conv->add_option("-o,--output", o.output, "write result to a file");

  auto* fi = app.add_subcommand("fracint", "fractional integral of a measure");
  add_input_options(fi, o);
  fi->add_option("--op", o.op, "rl (left-sided) or kober (right-sided)")
      ->check(CLI::IsMember({"rl", "kober"}));
  fi->add_option("--eta", o.eta, "fractional order")->required();
  fi->add_option("-o,--output", o.output, "write result to a file");

  auto* fv = app.add_subcommand("fracinv", "invert a fractional integral");
  add_input_options(fv, o);
  fv->add_option("--op", o.op, "rl or kober")
      ->check(CLI::IsMember({"rl", "kober"}));
  fv->add_option("--eta", o.eta, "fractional order")->required();
  fv->add_option("--grid", o.grid, "evaluation grid lo:hi:n");
  fv->add_option("-o,--output", o.output, "write result to a file");

  auto* ord = app.add_subcommand("order", "exact-order diagnostics");
  add_input_options(ord, o);
  double eps_val = 0.0;
  auto* eps_opt = ord->add_option("--epsilon", eps_val, "smoothing exponent");
  ord->add_option("--grid", o.grid, "sample grid lo:hi:n");

  auto* chk = app.add_subcommand("check", "membership criteria");
  add_input_options(chk, o);
  chk->add_option("--criterion", o.criterion, "sokal, krein, or sector")
      ->check(CLI::IsMember({"sokal", "krein", "sector"}));
  chk->add_option("--order", o.order_param, "order to test at");
  chk->add_option("--nmax", o.n_max, "derivative depth n");
  chk->add_option("--kmax", o.k_max, "derivative depth k");
  chk->add_option("--grid", o.grid, "x grid lo:hi:n");
  chk->add_flag("--expect-pass", o.expect_pass,
                "exit 1 when a violation is found");

  auto* rep = app.add_subcommand(
      "reproduce", "run the built-in example's acceptance checks");
  add_input_options(rep, o);

  CLI11_PARSE(app, argc, argv);

  try {
    if (eval_cmd->parsed()) return cmd_eval(o);
    if (conv->parsed()) return cmd_convert(o);
    if (fi->parsed()) return cmd_fracint(o);
    if (fv->parsed()) return cmd_fracinv(o);
    if (ord->parsed()) {
      if (*eps_opt) o.epsilon = eps_val;
      return cmd_order(o);
    }
    if (chk->parsed()) return cmd_check(o);
    if (rep->parsed()) return cmd_reproduce(o);
  } catch (const nlohmann::json::parse_error& e) {
    std::cerr << "input error: malformed JSON at byte " << e.byte << ": "
              << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
