#include <gtest/gtest.h>

#include <cmath>
#include <algorithm>
#include <numbers>
#include <sstream>

#include "wmprotect/experiments.hpp"

using namespace wmp;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kP05 = 0.3934693402873666;

}  // namespace

TEST(Config, DefaultGrids) {
  const SweepConfig t = SweepConfig::defaults(SweepMode::TimeSweep);
  ASSERT_EQ(t.t_list.size(), 20u);
  EXPECT_DOUBLE_EQ(t.t_list.front(), 0.1);
  EXPECT_DOUBLE_EQ(t.t_list.back(), 5.0);
  EXPECT_EQ(t.w_list, std::vector<double>{0.1});
  EXPECT_EQ(t.theta_grid.size(), 3u);
  EXPECT_DOUBLE_EQ(t.phi, kPi / 2);

  const SweepConfig w = SweepConfig::defaults(SweepMode::WSweep);
  EXPECT_EQ(w.w_list.size(), 20u);
  EXPECT_GT(w.w_list.front(), 0.0);
  EXPECT_LT(w.w_list.back(), 1.0);

  const SweepConfig f = SweepConfig::defaults(SweepMode::Frontier);
  ASSERT_EQ(f.theta_grid.size(), 24u);
  EXPECT_DOUBLE_EQ(f.theta_grid.front(), 0.4225 * kPi);
  EXPECT_DOUBLE_EQ(f.theta_grid.back(), 0.99 * kPi);
  EXPECT_EQ(f.target_fidelity, 0.95);
}

TEST(Config, ValidationErrors) {
  SweepConfig c = SweepConfig::defaults(SweepMode::TimeSweep);
  c.w_list.clear();
  EXPECT_THROW(c.validate(), ConfigError);
  c = SweepConfig::defaults(SweepMode::TimeSweep);
  c.w_list = {1.0};
  EXPECT_THROW(c.validate(), ConfigError);
  c = SweepConfig::defaults(SweepMode::WSweep);
  c.t_list = {-1.0};
  EXPECT_THROW(c.validate(), ConfigError);
  c = SweepConfig::defaults(SweepMode::WSweep);
  c.theta_grid = {4.0};
  EXPECT_THROW(c.validate(), ConfigError);
  c = SweepConfig::defaults(SweepMode::Frontier);
  c.t_list = {1.0, 2.0};
  EXPECT_THROW(c.validate(), ConfigError);
  c = SweepConfig::defaults(SweepMode::Frontier);
  c.target_fidelity = 1.5;
  EXPECT_THROW(c.validate(), ConfigError);
}

TEST(Config, WrongModeIsRejected) {
  EXPECT_THROW(sweep_time(SweepConfig::defaults(SweepMode::WSweep)), ConfigError);
  EXPECT_THROW(frontier(SweepConfig::defaults(SweepMode::TimeSweep)), ConfigError);
}

TEST(Sweep, TimeSweepDefaults) {
  const auto rows = sweep_time(SweepConfig::defaults(SweepMode::TimeSweep));
  ASSERT_EQ(rows.size(), 60u);
  for (size_t i = 0; i < rows.size(); ++i) {
    const SweepRecord& r = rows[i];
    EXPECT_LE(r.max_residual, 1e-8);
    EXPECT_GT(r.f_protect_theory, r.f_ad_theory);
    EXPECT_NEAR(r.wr, r.w + r.p * (1 - r.w), 1e-15);
    if (i > 0) EXPECT_TRUE(rows[i - 1].theta < r.theta || (rows[i - 1].theta == r.theta && rows[i - 1].t < r.t));
  }
}

TEST(Sweep, FiveSecondAnchors) {
  SweepConfig c = SweepConfig::defaults(SweepMode::TimeSweep);
  c.t_list = {5.0};
  const auto rows = sweep_time(c);
  ASSERT_EQ(rows.size(), 3u);
  const double f_ad[] = {0.8471786739945841, 0.6432523984300952, 0.08208499862389886};
  const double f_pr[] = {0.9572056381780071, 0.8538415782472957, 0.547608088566733};
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(rows[i].f_ad_theory, f_ad[i], 1e-12);
    EXPECT_NEAR(rows[i].f_ad_sim, f_ad[i], 1e-8);
    EXPECT_NEAR(rows[i].f_protect_theory, f_pr[i], 1e-12);
    EXPECT_NEAR(rows[i].f_protect_sim, f_pr[i], 1e-8);
  }
}

TEST(Sweep, ZeroTimeIsLossless) {
  const SweepRecord r = evaluate_point(PureQubit{kPi / 2, kPi / 2}, 0.5, 0.0, 0.1);
  EXPECT_EQ(r.p, 0.0);
  EXPECT_NEAR(r.f_ad_sim, 1.0, 1e-12);
  EXPECT_NEAR(r.f_protect_sim, 1.0, 1e-12);
}

TEST(Sweep, WSweepMonotoneAndLimits) {
  SweepConfig c = SweepConfig::defaults(SweepMode::WSweep);
  const auto rows = sweep_w(c);
  ASSERT_EQ(rows.size(), 60u);
  const MonotonicityFlags m = check_w_monotonicity(rows);
  EXPECT_TRUE(m.fidelity_non_decreasing);
  EXPECT_TRUE(m.n_strictly_decreasing);

  c.w_list = {0.0, 0.999};
  const auto ends = sweep_w(c);
  for (const SweepRecord& r : ends) {
    if (r.w == 0.0) {
      EXPECT_NEAR(r.wr, r.p, 1e-15);
      const PureQubit q{r.theta, r.phi};
      const ProtectedState ps = rho_protect_analytic(q.density(), 0.0, r.p, r.p);
      EXPECT_NEAR(r.f_protect_sim, uhlmann_fidelity(q.density(), ps.state), 1e-10);
    } else {
      EXPECT_GE(r.f_protect_sim, 1.0 - 1e-3);
    }
  }
}

TEST(Sweep, MonotonicityDetectsViolation) {
  auto rows = sweep_w(SweepConfig::defaults(SweepMode::WSweep));
  rows[3].n_theory = rows[2].n_theory;
  EXPECT_FALSE(check_w_monotonicity(rows).n_strictly_decreasing);
  rows = sweep_w(SweepConfig::defaults(SweepMode::WSweep));
  rows[5].f_protect_theory = 0.0;
  EXPECT_FALSE(check_w_monotonicity(rows).fidelity_non_decreasing);
}

TEST(Frontier, Anchors) {
  const PureQubit boundary{0.4225 * kPi, kPi / 2};
  EXPECT_EQ(frontier_w_star(boundary, kP05, 0.95), 0.0);
  EXPECT_NEAR(frontier_w_star(PureQubit{kPi / 2, kPi / 2}, kP05, 0.95), 0.43522353721404505, 2e-9);
  EXPECT_NEAR(frontier_w_star(PureQubit{kPi, kPi / 2}, kP05, 0.95), 0.8662371535506939, 2e-9);
}

TEST(Frontier, DefaultRunIsMonotone) {
  const auto pts = frontier(SweepConfig::defaults(SweepMode::Frontier));
  ASSERT_EQ(pts.size(), 24u);
  EXPECT_TRUE(frontier_is_monotone(pts));
  EXPECT_EQ(pts.front().w_star, 0.0);
  EXPECT_NEAR(pts.front().f, 0.9507039001597362, 1e-12);
  EXPECT_NEAR(pts.front().n, 0.6970898404693807, 1e-12);
  for (const FrontierPoint& p : pts) EXPECT_GE(p.f, 0.95 - 1e-12);
}

TEST(Frontier, PiEndpointSuccessProbability) {
  SweepConfig c = SweepConfig::defaults(SweepMode::Frontier);
  c.theta_grid = {kPi / 2, kPi};
  const auto pts = frontier(c);
  EXPECT_NEAR(pts[0].n, 0.38061582284859197, 1e-8);
  EXPECT_NEAR(pts[1].n, 0.08540133421256565, 1e-8);
}

TEST(Frontier, UnreachableTarget) {
  EXPECT_THROW(frontier_w_star(PureQubit{kPi, 0.0}, kP05, 1.0), Unreachable);
  EXPECT_EQ(frontier_w_star(PureQubit{0.0, 0.0}, kP05, 1.0), 0.0);
}

TEST(Frontier, MonotoneCheckCatchesReversal) {
  std::vector<FrontierPoint> pts{{1.0, 0.5, 0.3, 0.95}, {2.0, 0.4, 0.2, 0.95}};
  EXPECT_FALSE(frontier_is_monotone(pts));
}

TEST(Verify, FreshBuildPasses) {
  const VerifyReport r = verify_all();
  EXPECT_TRUE(r.all_passed());
  for (const SuiteResult& s : r.suites) {
    EXPECT_TRUE(s.passed) << s.name << ": " << s.detail;
    EXPECT_LT(s.max_residual, 1e-8) << s.name;
    EXPECT_GT(s.checks, 0) << s.name;
  }
}

TEST(Verify, FlippedWSignBreaksCompleteness) {
  VerifyOptions opt;
  opt.gadget_factory = [](GadgetKind kind, double s) {
    DualityGadget g = build_gadget(kind, s);
    g.w_mat(1, 1) = -g.w_mat(1, 1);
    return g;
  };
  const VerifyReport r = verify_all(opt);
  EXPECT_FALSE(r.all_passed());
  for (const SuiteResult& s : r.suites) {
    if (s.name == "branch-completeness") EXPECT_FALSE(s.passed);
  }
}

TEST(Verify, EmptyGridIsConfigError) {
  VerifyOptions opt;
  opt.w_grid.clear();
  EXPECT_THROW(verify_all(opt), ConfigError);
  VerifyOptions none;
  none.states.clear();
  EXPECT_THROW(verify_all(none), ConfigError);
}

TEST(Csv, HeaderAndDeterminism) {
  SweepConfig c = SweepConfig::defaults(SweepMode::TimeSweep);
  std::ostringstream a, b;
  write_sweep_csv(a, sweep_time(c));
  write_sweep_csv(b, sweep_time(c));
  const std::string text = a.str();
  EXPECT_EQ(text, b.str());
  EXPECT_EQ(text.substr(0, text.find('\n')), kSweepCsvHeader);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 61);

  std::ostringstream f;
  write_frontier_csv(f, {{kPi / 2, 0.25, 0.5, 0.95}});
  EXPECT_EQ(f.str(), "theta_over_pi,w_star,N,F\n0.5,0.25,0.5,0.95\n");
}

TEST(Csv, RealFormatting) {
  EXPECT_EQ(format_real(0.1), "0.1");
  EXPECT_EQ(format_real(-0.0), "0");
  EXPECT_EQ(format_real(kPi), "3.14159265359");
  EXPECT_EQ(format_real(1.0 / 3e9), "3.33333333333e-10");
}

TEST(Parse, RealsWithPiUnits) {
  EXPECT_DOUBLE_EQ(parse_real("0.4225pi"), 0.4225 * kPi);
  EXPECT_DOUBLE_EQ(parse_real("pi"), kPi);
  EXPECT_DOUBLE_EQ(parse_real("-pi"), -kPi);
  EXPECT_DOUBLE_EQ(parse_real("2*pi"), 2 * kPi);
  EXPECT_DOUBLE_EQ(parse_real(" 1.5 "), 1.5);
  EXPECT_THROW(parse_real("abc"), ConfigError);
  EXPECT_THROW(parse_real("1.2x"), ConfigError);
  EXPECT_THROW(parse_real(""), ConfigError);
}

TEST(Parse, Lists) {
  const auto v = parse_real_list("0.1,0.5pi,2");
  ASSERT_EQ(v.size(), 3u);
  EXPECT_DOUBLE_EQ(v[1], 0.5 * kPi);
  EXPECT_THROW(parse_real_list("0.1,,2"), ConfigError);
}

TEST(Parse, Modes) {
  EXPECT_EQ(parse_mode("w-sweep"), SweepMode::WSweep);
  EXPECT_EQ(to_string(SweepMode::Frontier), "frontier");
  EXPECT_THROW(parse_mode("sideways"), ConfigError);
}

TEST(ConfigJson, OverlaysFields) {
  const auto doc = nlohmann::json::parse(R"({
    "mode": "time-sweep", "gamma": 0.25, "t_list": [1, 2], "w": 0.3,
    "theta_grid": "0.5pi,pi", "phi": "0.25pi", "output": "out.csv"})");
  const SweepConfig c = apply_config_json(doc, SweepConfig::defaults(SweepMode::TimeSweep));
  EXPECT_EQ(c.gamma, 0.25);
  EXPECT_EQ(c.t_list, (std::vector<double>{1.0, 2.0}));
  EXPECT_EQ(c.w_list, std::vector<double>{0.3});
  EXPECT_DOUBLE_EQ(c.theta_grid[1], kPi);
  EXPECT_DOUBLE_EQ(c.phi, 0.25 * kPi);
  EXPECT_EQ(c.output_path, "out.csv");
}

TEST(ConfigJson, KeepsUnsetFields) {
  const SweepConfig base = SweepConfig::defaults(SweepMode::Frontier);
  const SweepConfig c = apply_config_json(nlohmann::json::parse(R"({"target_fidelity": 0.9})"), base);
  EXPECT_EQ(c.target_fidelity, 0.9);
  EXPECT_EQ(c.theta_grid, base.theta_grid);
  EXPECT_EQ(c.mode, SweepMode::Frontier);
}

TEST(ConfigJson, RejectsBadTypes) {
  const SweepConfig base = SweepConfig::defaults(SweepMode::TimeSweep);
  EXPECT_THROW(apply_config_json(nlohmann::json::parse("[1]"), base), ConfigError);
  EXPECT_THROW(apply_config_json(nlohmann::json::parse(R"({"gamma": true})"), base), ConfigError);
  EXPECT_THROW(apply_config_json(nlohmann::json::parse(R"({"mode": 3})"), base), ConfigError);
  EXPECT_THROW(apply_config_json(nlohmann::json::parse(R"({"t": ["x"]})"), base), ConfigError);
}
