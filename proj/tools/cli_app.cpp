#include "cli_app.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "wmprotect/circuit.hpp"
#include "wmprotect/experiments.hpp"

namespace wmp::cli {

namespace {

struct Flags {
  std::optional<std::string> gamma, t, w, theta, phi, target_f, out, config;
};

void add_flags(CLI::App* sub, Flags& f, bool grids) {
  sub->add_option("--gamma", f.gamma, "damping rate in 1/s");
  sub->add_option("--t", f.t, grids ? "time or comma list, s" : "time, s");
  sub->add_option("--w", f.w, grids ? "WM strength or comma list" : "WM strength");
  sub->add_option("--theta", f.theta, "polar angle(s); '0.4225pi' accepted");
  sub->add_option("--phi", f.phi, "azimuthal angle");
  sub->add_option("--out", f.out, "output file (default stdout)");
  sub->add_option("--config", f.config, "JSON config; flags override it");
}

SweepConfig resolve(SweepConfig cfg, const Flags& f) {
  const SweepMode mode = cfg.mode;
  if (f.config) {
    std::ifstream in(*f.config);
    if (!in) throw ConfigError("cannot open config file " + *f.config);
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    cfg = apply_config_json(doc, cfg);
    if (cfg.mode != mode) throw ConfigError("config mode does not match the subcommand");
  }
  if (f.gamma) cfg.gamma = parse_real(*f.gamma);
  if (f.t) cfg.t_list = parse_real_list(*f.t);
  if (f.w) cfg.w_list = parse_real_list(*f.w);
  if (f.theta) cfg.theta_grid = parse_real_list(*f.theta);
  if (f.phi) cfg.phi = parse_real(*f.phi);
  if (f.target_f) cfg.target_fidelity = parse_real(*f.target_f);
  if (f.out) cfg.output_path = *f.out;
  cfg.validate();
  return cfg;
}

template <class Fn>
void emit(const std::string& path, std::ostream& out, Fn&& write) {
  if (path.empty()) {
    write(out);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ConfigError("cannot open output file " + path);
  write(file);
}

void print_matrix(std::ostream& os, const char* name, const CMatrix& m) {
  os << name << ":\n";
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    os << " ";
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      os << "  " << format_real(m(i, j).real()) << (m(i, j).imag() < 0 ? "-" : "+")
         << format_real(std::abs(m(i, j).imag())) << "i";
    }
    os << '\n';
  }
}

int run_verify(const Flags& f, std::ostream& out) {
  const VerifyReport report = verify_all();
  nlohmann::json doc = nlohmann::json::array();
  for (const SuiteResult& s : report.suites) {
    doc.push_back({{"suite", s.name},
                   {"passed", s.passed},
                   {"max_residual", s.max_residual},
                   {"tolerance", s.tolerance},
                   {"checks", s.checks},
                   {"detail", s.detail}});
  }
  emit(f.out.value_or(""), out, [&](std::ostream& os) {
    if (f.out) {
      os << doc.dump(2) << '\n';
      return;
    }
    for (const SuiteResult& s : report.suites) {
      char line[160];
      std::snprintf(line, sizeof line, "%-4s %-26s max_residual=%.3e tol=%.0e checks=%d",
                    s.passed ? "PASS" : "FAIL", s.name.c_str(), s.max_residual, s.tolerance, s.checks);
      os << line << (s.detail.empty() ? "" : "  " + s.detail) << '\n';
    }
  });
  return report.all_passed() ? kOk : kInvariantFailure;
}

int run_sweep(SweepMode mode, const Flags& f, std::ostream& out) {
  const SweepConfig cfg = resolve(SweepConfig::defaults(mode), f);
  const auto records = mode == SweepMode::TimeSweep ? sweep_time(cfg) : sweep_w(cfg);
  emit(cfg.output_path, out, [&](std::ostream& os) { write_sweep_csv(os, records); });
  bool ok = true;
  for (const SweepRecord& r : records) ok = ok && r.max_residual <= 1e-8;
  if (mode == SweepMode::WSweep) {
    const MonotonicityFlags m = check_w_monotonicity(records);
    ok = ok && m.fidelity_non_decreasing && m.n_strictly_decreasing;
  }
  return ok ? kOk : kInvariantFailure;
}

int run_frontier(const Flags& f, std::ostream& out) {
  const SweepConfig cfg = resolve(SweepConfig::defaults(SweepMode::Frontier), f);
  const auto points = frontier(cfg);
  emit(cfg.output_path, out, [&](std::ostream& os) { write_frontier_csv(os, points); });
  return frontier_is_monotone(points) ? kOk : kInvariantFailure;
}

int run_protect(const Flags& f, std::ostream& out) {
  // Defaults to the Phi2 point of the time sweep at t = 5.
  SweepConfig base = SweepConfig::defaults(SweepMode::TimeSweep);
  base.t_list = {5.0};
  base.w_list = {0.1};
  base.theta_grid = {std::numbers::pi / 2.0};
  const SweepConfig cfg = resolve(base, f);
  if (cfg.t_list.size() != 1 || cfg.w_list.size() != 1 || cfg.theta_grid.size() != 1) {
    throw ConfigError("protect takes a single t, w and theta");
  }
  const PureQubit state{cfg.theta_grid[0], cfg.phi};
  const SweepRecord r = evaluate_point(state, cfg.gamma, cfg.t_list[0], cfg.w_list[0]);
  const DensityState rho0 = state.density();
  const DensityState damped = rho_ad(rho0, r.p);
  const ProtectedState prot = rho_protect_analytic(rho0, r.w, r.p, r.wr);

  emit(cfg.output_path, out, [&](std::ostream& os) {
    os << "theta=" << format_real(r.theta) << " phi=" << format_real(r.phi) << " gamma=" << format_real(r.gamma)
       << " t=" << format_real(r.t) << " p=" << format_real(r.p) << " w=" << format_real(r.w)
       << " wr=" << format_real(r.wr) << '\n';
    print_matrix(os, "rho_ad", damped.matrix());
    print_matrix(os, "rho_protect", prot.state.matrix());
    os << "F_ad=" << format_real(r.f_ad_theory) << " (circuit " << format_real(r.f_ad_sim) << ")\n";
    os << "F_protect=" << format_real(r.f_protect_theory) << " (circuit " << format_real(r.f_protect_sim)
       << ")\n";
    os << "N=" << format_real(r.n_theory) << " (circuit " << format_real(r.n_sim) << ")\n";
  });
  return r.max_residual <= 1e-8 ? kOk : kInvariantFailure;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Weak-measurement protection of a qubit against amplitude damping"};
  app.require_subcommand(1);
  Flags verify_f, time_f, w_f, frontier_f, protect_f;

  auto* verify = app.add_subcommand("verify", "run every invariant suite");
  verify->add_option("--out", verify_f.out, "write a JSON report instead of the table");
  auto* sweep_time_cmd = app.add_subcommand("sweep-time", "fidelity against time at fixed w");
  add_flags(sweep_time_cmd, time_f, true);
  auto* sweep_w_cmd = app.add_subcommand("sweep-w", "fidelity against w at fixed time");
  add_flags(sweep_w_cmd, w_f, true);
  auto* frontier_cmd = app.add_subcommand("frontier", "smallest w reaching a target fidelity");
  add_flags(frontier_cmd, frontier_f, true);
  frontier_cmd->add_option("--target-f", frontier_f.target_f, "target fidelity");
  auto* protect = app.add_subcommand("protect", "single point: density matrices and fidelities");
  add_flags(protect, protect_f, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigError;
  }

  try {
    if (verify->parsed()) return run_verify(verify_f, out);
    if (sweep_time_cmd->parsed()) return run_sweep(SweepMode::TimeSweep, time_f, out);
    if (sweep_w_cmd->parsed()) return run_sweep(SweepMode::WSweep, w_f, out);
    if (frontier_cmd->parsed()) return run_frontier(frontier_f, out);
    return run_protect(protect_f, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
  } catch (const Unreachable& e) {
    err << "config error: " << e.what() << '\n';
  } catch (const Error& e) {
    err << "invalid input: " << e.what() << '\n';
  }
  return kConfigError;
}

}  // namespace wmp::cli
