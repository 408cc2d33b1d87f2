#include "lsl/acceptance.hpp"
#include "lsl/flow.hpp"
#include "lsl/growth.hpp"
#include "lsl/json_io.hpp"
#include "lsl/stability.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

using namespace lsl;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  return out;
}

int cmd_reproduce(const std::string& out_path, unsigned seed) {
  const auto criteria = run_acceptance_matrix(seed);
  bool all_pass = true;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& c : criteria) {
    all_pass = all_pass && c.pass;
    std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << "C" << c.id << " " << c.name << ": "
              << c.details << "\n";
    rows.push_back({{"id", c.id}, {"name", c.name}, {"pass", c.pass}, {"details", c.details}});
  }
  nlohmann::json report{{"criteria", rows}, {"all_pass", all_pass}, {"seed", seed}};
  if (!out_path.empty()) {
    auto out = open_output(out_path);
    out << report.dump(2) << "\n";
  }
  std::cout << (all_pass ? "all criteria passed\n" : "criteria FAILED\n");
  return all_pass ? kExitOk : kExitCheckFailure;
}

int cmd_stability_scan(int n, const std::string& mode_name, Scalar r_min, Scalar r_max,
                       Scalar step, const std::string& out_path) {
  const StabilityMode mode = mode_name == "weak" ? StabilityMode::Weak : StabilityMode::F;
  const auto rows = threshold_scan(n, r_min, r_max, step, mode);
  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!out_path.empty()) {
    file = open_output(out_path);
    os = &file;
  }
  *os << "r,mode,verdict,certificate,witness_kind\n";
  for (const auto& row : rows) {
    const std::string cells[] = {format_scalar(row.r), mode_name,
                                 row.verdict == Verdict::Stable ? "stable" : "unstable",
                                 format_scalar(row.certificate), row.witness_kind};
    write_csv_row(*os, cells);
  }
  const auto transitions = scan_transitions(rows);
  std::cerr << "transitions:";
  for (Scalar t : transitions) std::cerr << " " << format_scalar(t);
  std::cerr << "\n";
  return kExitOk;
}

int cmd_identities_check(const std::string& out_path) {
  const auto rows = run_identity_matrix();
  nlohmann::json arr = nlohmann::json::array();
  bool all_pass = true;
  for (const auto& row : rows) {
    nlohmann::json j = identity_report_to_json(row.report);
    j["surface"] = row.surface;
    arr.push_back(j);
    all_pass = all_pass && row.report.pass;
    if (!row.report.pass)
      std::cout << "[FAIL] " << row.surface << " " << row.report.name << " residual "
                << format_scalar(row.report.residual) << "\n";
  }
  if (!out_path.empty()) {
    auto out = open_output(out_path);
    out << arr.dump(2) << "\n";
  } else {
    std::cout << arr.dump(2) << "\n";
  }
  std::cout << (all_pass ? "identities: all pass\n" : "identities: FAILURES\n");
  return all_pass ? kExitOk : kExitCheckFailure;
}

int cmd_fd_check(const std::string& out_path) {
  const auto battery = run_fd_battery();
  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!out_path.empty()) {
    file = open_output(out_path);
    os = &file;
  }
  *os << "family,order,step,fd_value,formula,error,slope,converged\n";
  bool all_converged = true;
  for (const auto& row : battery) {
    all_converged = all_converged && row.report.converged;
    for (std::size_t i = 0; i < row.report.steps.size(); ++i) {
      const std::string cells[] = {row.name,
                                   row.second_order ? "second" : "first",
                                   format_scalar(row.report.steps[i]),
                                   format_scalar(row.report.fd_values[i]),
                                   format_scalar(row.report.formula),
                                   format_scalar(row.report.errors[i]),
                                   format_scalar(row.report.slope),
                                   row.report.converged ? "true" : "false"};
      write_csv_row(*os, cells);
    }
  }
  return all_converged ? kExitOk : kExitCheckFailure;
}

int cmd_flow_run(const std::string& input, Scalar dt, int steps, const std::string& scheme,
                 int stride, const std::string& out_path) {
  std::ifstream in(input);
  if (!in) {
    std::cerr << "cannot open input file: " << input << "\n";
    return kExitUsage;
  }
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  SurfaceDescriptor desc;
  try {
    desc = descriptor_from_json(parse_json_text(text));
  } catch (const JsonParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "invalid surface descriptor: " << e.what() << "\n";
    return kExitUsage;
  }
  FlowRunParams params;
  params.dt = dt;
  params.steps = steps;
  params.scheme = scheme == "euler" ? FlowScheme::Euler : FlowScheme::Rk4;
  params.trace_stride = stride;
  const FlowTrace trace = run(desc, params);
  auto out = open_output(out_path);
  out << "time,alpha,weighted_volume,area,max_displacement\n";
  for (const auto& row : trace.rows) {
    const std::string cells[] = {format_scalar(row.time), format_scalar(row.alpha),
                                 format_scalar(row.weighted_volume), format_scalar(row.area),
                                 format_scalar(row.max_displacement)};
    write_csv_row(out, cells);
  }
  if (trace.halted) {
    std::cerr << "flow halted: " << trace.halt_reason << "\n";
    return kExitCheckFailure;
  }
  return kExitOk;
}

SurfaceDescriptor growth_surface(const std::string& kind, int k, int n, Scalar r0) {
  if (kind == "cylinder") return CylinderDesc{k, n, r0};
  if (kind == "plane") return PlaneDesc{n};
  if (kind == "sphere" || kind == "circle") return SphereDesc{kind == "circle" ? 1 : n, r0};
  throw CLI::ValidationError("--surface", "unknown surface kind '" + kind + "'");
}

int cmd_growth_probe(const std::string& kind, int k, int n, Scalar r0, Scalar r_min, Scalar r_max,
                     int samples, const std::string& out_path) {
  const SurfaceDescriptor desc = growth_surface(kind, k, n, r0);
  const GrowthProfile profile = growth_exponent(desc, r_min, r_max, samples);
  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!out_path.empty()) {
    file = open_output(out_path);
    os = &file;
  }
  *os << "r,area,log_r,log_area\n";
  for (std::size_t i = 0; i < profile.radii.size(); ++i) {
    const Scalar a = profile.areas[i];
    const std::string cells[] = {format_scalar(profile.radii[i]), format_scalar(a),
                                 format_scalar(std::log(profile.radii[i])),
                                 format_scalar(a > 0 ? std::log(a) : 0.0)};
    write_csv_row(*os, cells);
  }
  std::cerr << "fitted_exponent " << format_scalar(profile.fitted_exponent)
            << " bound_exponent " << format_scalar(profile.bound_exponent) << "\n";
  return kExitOk;
}

int cmd_growth_annulus(const std::string& kind, int k, int n, Scalar r0, int t_min, int t_max,
                       const std::string& out_path) {
  const SurfaceDescriptor desc = growth_surface(kind, k, n, r0);
  const AnnulusReport report = annulus_check(desc, t_min, t_max);
  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!out_path.empty()) {
    file = open_output(out_path);
    os = &file;
  }
  *os << "t,ratio,doubling,valid\n";
  for (std::size_t i = 0; i < report.t.size(); ++i) {
    const std::string cells[] = {std::to_string(report.t[i]), format_scalar(report.ratio[i]),
                                 report.doubling[i] ? "true" : "false",
                                 report.valid[i] ? "true" : "false"};
    write_csv_row(*os, cells);
  }
  std::cerr << "max_ratio " << format_scalar(report.max_ratio) << "\n";
  return kExitOk;
}

int cmd_growth_logsobolev(const std::string& kind, int n, Scalar r, const std::string& out_path) {
  SurfaceDescriptor desc;
  if (kind == "sphere") desc = SphereDesc{n, r};
  else if (kind == "circle") desc = SphereDesc{1, r};
  else throw CLI::ValidationError("--surface", "logsobolev supports sphere|circle");
  const SampledSurface surface = make_sampled(desc);
  const LambdaParams params{*canonical_lambda(desc), surface.n};
  const auto battery = standard_log_sobolev_battery(desc);
  const LogSobolevReport report = log_sobolev_check(surface, params, battery);
  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!out_path.empty()) {
    file = open_output(out_path);
    os = &file;
  }
  *os << "case,lhs,gradient_term,lambda_term,required_c1,margin\n";
  for (const auto& c : report.cases) {
    const std::string cells[] = {c.name, format_scalar(c.lhs), format_scalar(c.gradient_term),
                                 format_scalar(c.lambda_term), format_scalar(c.required_c1),
                                 format_scalar(c.margin)};
    write_csv_row(*os, cells);
  }
  std::cerr << "minimal_c1 " << format_scalar(report.minimal_c1) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lsl: numerical laboratory for lambda-hypersurfaces"};
  app.require_subcommand(0, 1);

  // reproduce
  auto* reproduce = app.add_subcommand("reproduce", "run the full verification matrix");
  std::string rep_out;
  unsigned seed = 12345;
  reproduce->add_option("--out", rep_out, "report JSON path");
  reproduce->add_option("--seed", seed, "seed for randomized batteries");

  // stability scan
  auto* stability = app.add_subcommand("stability", "sphere stability classification");
  auto* scan = stability->add_subcommand("scan", "scan radii and classify");
  int scan_n = 2;
  std::string scan_mode = "f";
  Scalar scan_rmin = 0.5, scan_rmax = 2.5, scan_step = 1e-3;
  std::string scan_out;
  scan->add_option("--n", scan_n, "sphere dimension")->required();
  scan->add_option("--mode", scan_mode, "f | weak")
      ->check(CLI::IsMember({"f", "weak"}))
      ->required();
  scan->add_option("--r-min", scan_rmin)->required();
  scan->add_option("--r-max", scan_rmax)->required();
  scan->add_option("--step", scan_step)->required();
  scan->add_option("--out", scan_out, "CSV path (default stdout)");

  // identities check
  auto* identities = app.add_subcommand("identities", "identity residual suites");
  auto* id_check = identities->add_subcommand("check", "run the canonical identity matrix");
  std::string id_out;
  id_check->add_option("--out", id_out, "JSON path (default stdout)");

  // variation fd-check
  auto* variation = app.add_subcommand("variation", "variation formula checks");
  auto* fd = variation->add_subcommand("fd-check", "finite-difference battery");
  std::string fd_out;
  fd->add_option("--out", fd_out, "CSV path (default stdout)");

  // flow run
  auto* flow_cmd = app.add_subcommand("flow", "weighted volume-preserving flow");
  auto* flow_run = flow_cmd->add_subcommand("run", "integrate the flow");
  std::string flow_input, flow_out = "trace.csv", flow_scheme = "rk4";
  Scalar flow_dt = 1e-4;
  int flow_steps = 10000, flow_stride = 100;
  flow_run->add_option("--input", flow_input, "surface descriptor JSON")->required();
  flow_run->add_option("--dt", flow_dt);
  flow_run->add_option("--steps", flow_steps);
  flow_run->add_option("--scheme", flow_scheme)->check(CLI::IsMember({"euler", "rk4"}));
  flow_run->add_option("--trace-stride", flow_stride);
  flow_run->add_option("--out", flow_out, "trace CSV path");

  // growth probe / annulus / logsobolev
  auto* growth_cmd = app.add_subcommand("growth", "area growth measurements");
  auto* probe = growth_cmd->add_subcommand("probe", "area vs radius table and exponent fit");
  std::string g_surface = "cylinder", g_out;
  int g_k = 1, g_n = 2, g_tmin = 2, g_tmax = 64, g_samples = 48;
  Scalar g_r0 = 1.0, g_rmin = 2.0, g_rmax = 64.0;
  probe->add_option("--surface", g_surface, "cylinder | plane");
  probe->add_option("--k", g_k);
  probe->add_option("--n", g_n);
  probe->add_option("--r0", g_r0);
  probe->add_option("--r-min", g_rmin);
  probe->add_option("--r-max", g_rmax);
  probe->add_option("--samples", g_samples);
  probe->add_option("--out", g_out, "CSV path (default stdout)");

  auto* annulus = growth_cmd->add_subcommand("annulus", "annulus ratio and doubling table");
  std::string a_surface = "cylinder", a_out;
  int a_k = 1, a_n = 2;
  Scalar a_r0 = 1.0;
  annulus->add_option("--surface", a_surface, "cylinder | plane");
  annulus->add_option("--k", a_k);
  annulus->add_option("--n", a_n);
  annulus->add_option("--r0", a_r0);
  annulus->add_option("--t-min", g_tmin);
  annulus->add_option("--t-max", g_tmax);
  annulus->add_option("--out", a_out, "CSV path (default stdout)");

  auto* logsob = growth_cmd->add_subcommand("logsobolev", "log-Sobolev battery");
  std::string l_surface = "sphere", l_out;
  int l_n = 2;
  Scalar l_r = 1.0;
  logsob->add_option("--surface", l_surface, "sphere | circle");
  logsob->add_option("--n", l_n);
  logsob->add_option("--r", l_r);
  logsob->add_option("--out", l_out, "CSV path (default stdout)");

  if (argc <= 1) {
    std::cout << app.help() << "\n";
    return kExitUsage;
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_name() == "CallForHelp" || e.get_name() == "CallForAllHelp") {
      std::cout << app.help() << "\n";
      return kExitOk;
    }
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*reproduce) return cmd_reproduce(rep_out, seed);
    if (*scan) return cmd_stability_scan(scan_n, scan_mode, scan_rmin, scan_rmax, scan_step,
                                         scan_out);
    if (*id_check) return cmd_identities_check(id_out);
    if (*fd) return cmd_fd_check(fd_out);
    if (*flow_run)
      return cmd_flow_run(flow_input, flow_dt, flow_steps, flow_scheme, flow_stride, flow_out);
    if (*probe)
      return cmd_growth_probe(g_surface, g_k, g_n, g_r0, g_rmin, g_rmax, g_samples, g_out);
    if (*annulus) return cmd_growth_annulus(a_surface, a_k, a_n, a_r0, g_tmin, g_tmax, a_out);
    if (*logsob) return cmd_growth_logsobolev(l_surface, l_n, l_r, l_out);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailure;
  }
  std::cout << app.help() << "\n";
  return kExitUsage;
}
