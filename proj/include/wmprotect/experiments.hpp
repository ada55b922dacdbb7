#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "wmprotect/channels.hpp"
#include "wmprotect/duality.hpp"

namespace wmp {

enum class SweepMode { TimeSweep, WSweep, Frontier, Verify };

std::string_view to_string(SweepMode mode);

struct SweepConfig {
  SweepMode mode = SweepMode::TimeSweep;
  double gamma = 0.5;                // 1/s
  std::vector<double> t_list;        // s
  std::vector<double> w_list;
  std::vector<double> theta_grid;    // radians
  double phi = 0.0;                  // radians
  double target_fidelity = 0.95;     // frontier only
  std::string output_path;           // empty: stdout

  // Grids used when nothing is specified:
  //   time-sweep: t in [0.1, 5] (20 points), w = 0.1, theta in {pi/3, pi/2, pi}
  //   w-sweep:    t = 1, w = k/21 for k = 1..20, theta in {pi/3, pi/2, pi}
  //   frontier:   t = 1, theta in [0.4225 pi, 0.99 pi] (24 points), F = 0.95
  // gamma = 0.5 and phi = pi/2 throughout.
  static SweepConfig defaults(SweepMode mode);

  // Throws ConfigError on empty grids or out-of-range values.
  void validate() const;
};

struct SweepRecord {
  double theta;
  double phi;
  double gamma;
  double t;
  double p;
  double w;
  double wr;
  double f_ad_theory;
  double f_ad_sim;
  double f_protect_theory;
  double f_protect_sim;
  double n_theory;
  double n_sim;
  double max_residual;
};

// One grid point: closed forms against the four-qubit circuit simulation.
SweepRecord evaluate_point(const PureQubit& state, double gamma, double t, double w);

std::vector<SweepRecord> sweep_time(const SweepConfig& cfg);
std::vector<SweepRecord> sweep_w(const SweepConfig& cfg);

// Along a w-sweep for one (theta, phi, gamma, t): F_protect non-decreasing and
// N strictly decreasing in w. Records for other inputs are grouped separately.
struct MonotonicityFlags {
  bool fidelity_non_decreasing = true;
  bool n_strictly_decreasing = true;
};
MonotonicityFlags check_w_monotonicity(const std::vector<SweepRecord>& records);

struct FrontierPoint {
  double theta;
  double w_star;
  double n;
  double f;
};

// Smallest w reaching the target fidelity at each theta (bisection to 1e-9).
// Throws Unreachable when even w = 1 - 1e-9 falls short.
std::vector<FrontierPoint> frontier(const SweepConfig& cfg);
double frontier_w_star(const PureQubit& state, double p, double target);

// w* non-decreasing and N non-increasing along increasing theta.
bool frontier_is_monotone(const std::vector<FrontierPoint>& points);

// Eight input states spread over the Bloch sphere, and the 5 x 5 strength grid
// used by the cross-implementation checks.
std::vector<PureQubit> bloch_grid();
std::vector<double> strength_grid_5();

struct SuiteResult {
  std::string name;
  bool passed;
  double max_residual;
  double tolerance;
  int checks;
  std::string detail;
};

struct VerifyReport {
  std::vector<SuiteResult> suites;
  bool all_passed() const;
};

struct VerifyOptions {
  // Gadget strengths for the unitarity / completeness / equivalence suites.
  std::vector<double> strengths{0.01, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 0.99};
  std::vector<PureQubit> states = bloch_grid();
  std::vector<double> w_grid = strength_grid_5();
  std::vector<double> p_grid = strength_grid_5();
  int random_contractions = 100;
  unsigned seed = 20240611;
  // Builds the gadgets under test; replaceable for fault injection.
  std::function<DualityGadget(GadgetKind, double)> gadget_factory = build_gadget;
};

// Runs every invariant suite. Throws ConfigError on empty grids.
VerifyReport verify_all(const VerifyOptions& options = {});

// "%.12g" formatting shared by every CSV column.
std::string format_real(double x);

inline constexpr std::string_view kSweepCsvHeader =
    "theta,phi,gamma,t,p,w,wr,F_ad_theory,F_ad_sim,F_protect_theory,F_protect_sim,N_theory,N_sim";
inline constexpr std::string_view kFrontierCsvHeader = "theta_over_pi,w_star,N,F";

void write_sweep_csv(std::ostream& os, const std::vector<SweepRecord>& records);
void write_frontier_csv(std::ostream& os, const std::vector<FrontierPoint>& points);

// "0.4225pi", "pi", "1.2" -> radians / plain number.
double parse_real(std::string_view text);
std::vector<double> parse_real_list(std::string_view text);

// Overlays the fields present in a JSON config document onto `base`. Keys:
// mode, gamma, t_list (or t), w_list (or w), theta_grid (or theta), phi,
// target_fidelity, output. Numbers or "...pi" strings are accepted.
SweepConfig apply_config_json(const nlohmann::json& doc, SweepConfig base);

SweepMode parse_mode(std::string_view text);

}  // namespace wmp
