#include "wmprotect/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <ostream>
#include <random>
#include <sstream>
#include <tuple>

#include "wmprotect/circuit.hpp"
#include "wmprotect/dilation.hpp"

namespace wmp {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
  return out;
}

void require_mode(const SweepConfig& cfg, SweepMode mode) {
  if (cfg.mode != mode) {
    throw ConfigError("expected a " + std::string(to_string(mode)) + " config, got " +
                      std::string(to_string(cfg.mode)));
  }
}

double pure_overlap(const CVector& ket, const DensityState& sigma) {
  return (ket.adjoint() * sigma.matrix() * ket)(0, 0).real();
}

// Accumulates the worst residual of a suite against its tolerance.
class SuiteTally {
 public:
  SuiteTally(std::string name, double tolerance) : name_(std::move(name)), tolerance_(tolerance) {}

  void residual(double r) {
    ++checks_;
    if (!(r <= worst_)) worst_ = r;  // NaN sticks
  }
  void flag(bool ok, const std::string& what) {
    ++checks_;
    if (!ok) {
      failed_flag_ = true;
      if (detail_.empty()) detail_ = what;
    }
  }
  SuiteResult finish() const {
    const bool within = worst_ <= tolerance_;
    std::string detail = detail_;
    if (!within && detail.empty()) detail = "residual above tolerance";
    return {name_, within && !failed_flag_, worst_, tolerance_, checks_, detail};
  }

 private:
  std::string name_;
  double tolerance_;
  double worst_ = 0.0;
  int checks_ = 0;
  bool failed_flag_ = false;
  std::string detail_;
};

template <class Fn>
SuiteResult guarded(const std::string& name, double tolerance, Fn&& body) {
  SuiteTally tally(name, tolerance);
  try {
    body(tally);
  } catch (const Error& e) {
    tally.flag(false, std::string("exception: ") + e.what());
  }
  return tally.finish();
}

CMatrix random_contraction(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  CMatrix a(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) a(i, j) = Complex(normal(rng), normal(rng));
  }
  Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::VectorXd s(dim);
  for (int i = 0; i < dim; ++i) s(i) = uniform(rng);
  return svd.matrixU() * s.cast<Complex>().asDiagonal() * svd.matrixV().adjoint();
}

CMatrix branch_sum(const DualityGadget& g) {
  const CMatrix m0 = branch_operator(g, 0);
  const CMatrix m1 = branch_operator(g, 1);
  return m0.adjoint() * m0 + m1.adjoint() * m1;
}

CMatrix kraus_for(GadgetKind kind, double s) {
  return kind == GadgetKind::WM ? wm_operator(s) : mr_operator(s);
}

}  // namespace

std::string_view to_string(SweepMode mode) {
  switch (mode) {
    case SweepMode::TimeSweep:
      return "time-sweep";
    case SweepMode::WSweep:
      return "w-sweep";
    case SweepMode::Frontier:
      return "frontier";
    case SweepMode::Verify:
      return "verify";
  }
  return "?";
}

SweepMode parse_mode(std::string_view text) {
  for (SweepMode m : {SweepMode::TimeSweep, SweepMode::WSweep, SweepMode::Frontier, SweepMode::Verify}) {
    if (text == to_string(m)) return m;
  }
  throw ConfigError("unknown mode '" + std::string(text) + "'");
}

SweepConfig SweepConfig::defaults(SweepMode mode) {
  SweepConfig cfg;
  cfg.mode = mode;
  cfg.gamma = 0.5;
  cfg.phi = kPi / 2.0;
  cfg.theta_grid = {kPi / 3.0, kPi / 2.0, kPi};
  switch (mode) {
    case SweepMode::TimeSweep:
      cfg.t_list = linspace(0.1, 5.0, 20);
      cfg.w_list = {0.1};
      break;
    case SweepMode::WSweep:
      cfg.t_list = {1.0};
      for (int k = 1; k <= 20; ++k) cfg.w_list.push_back(k / 21.0);
      break;
    case SweepMode::Frontier:
      cfg.t_list = {1.0};
      cfg.theta_grid = linspace(0.4225 * kPi, 0.99 * kPi, 24);
      break;
    case SweepMode::Verify:
      break;
  }
  return cfg;
}

void SweepConfig::validate() const {
  if (mode == SweepMode::Verify) return;
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) throw ConfigError("gamma must be finite and >= 0");
  if (!std::isfinite(phi)) throw ConfigError("phi must be finite");
  if (t_list.empty()) throw ConfigError("t grid is empty");
  if (theta_grid.empty()) throw ConfigError("theta grid is empty");
  for (double t : t_list) {
    if (!(t >= 0.0) || !std::isfinite(t)) throw ConfigError("t values must be finite and >= 0");
  }
  for (double th : theta_grid) {
    if (!(th >= 0.0 && th <= kPi)) throw ConfigError("theta values must lie in [0, pi]");
  }
  if (mode == SweepMode::Frontier) {
    if (t_list.size() != 1) throw ConfigError("frontier needs exactly one t value");
    if (!(target_fidelity > 0.0 && target_fidelity <= 1.0)) {
      throw ConfigError("target fidelity must lie in (0, 1]");
    }
    return;
  }
  if (w_list.empty()) throw ConfigError("w grid is empty");
  for (double w : w_list) {
    if (!(w >= 0.0 && w < 1.0)) throw ConfigError("w values must lie in [0, 1)");
  }
}

SweepRecord evaluate_point(const PureQubit& state, double gamma, double t, double w) {
  const double p = DampingParams::from_rate(gamma, t).p();
  if (p >= 1.0) throw ConfigError("damping strength rounds to p = 1; reduce gamma * t");
  const double wr = reversal_strength(w, p);
  const DensityState rho0 = state.density();
  const CVector ket = state.ket();

  SweepRecord r{};
  r.theta = state.theta;
  r.phi = state.phi;
  r.gamma = gamma;
  r.t = t;
  r.p = p;
  r.w = w;
  r.wr = wr;

  r.f_ad_theory = pure_overlap(ket, rho_ad(rho0, p));
  const ProtectedState ad_only = extract_protected(run_circuit(build_protection_circuit(0.0, p, 0.0), rho0));
  r.f_ad_sim = uhlmann_fidelity(rho0, ad_only.state);

  r.f_protect_theory = protect_fidelity_pure(state, w, p);
  r.n_theory = success_terms(rho0, w, p).n;
  const ProtectedState full = extract_protected(run_circuit(build_protection_circuit(w, p, wr), rho0));
  r.f_protect_sim = uhlmann_fidelity(rho0, full.state);
  r.n_sim = full.n;

  r.max_residual = std::max({std::abs(r.f_ad_theory - r.f_ad_sim),
                             std::abs(r.f_protect_theory - r.f_protect_sim),
                             std::abs(r.n_theory - r.n_sim)});
  return r;
}

std::vector<SweepRecord> sweep_time(const SweepConfig& cfg) {
  require_mode(cfg, SweepMode::TimeSweep);
  cfg.validate();
  std::vector<SweepRecord> out;
  for (double theta : cfg.theta_grid) {
    for (double w : cfg.w_list) {
      for (double t : cfg.t_list) out.push_back(evaluate_point({theta, cfg.phi}, cfg.gamma, t, w));
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const SweepRecord& a, const SweepRecord& b) {
    return std::tie(a.theta, a.w, a.t) < std::tie(b.theta, b.w, b.t);
  });
  return out;
}

std::vector<SweepRecord> sweep_w(const SweepConfig& cfg) {
  require_mode(cfg, SweepMode::WSweep);
  cfg.validate();
  std::vector<SweepRecord> out;
  for (double theta : cfg.theta_grid) {
    for (double t : cfg.t_list) {
      for (double w : cfg.w_list) out.push_back(evaluate_point({theta, cfg.phi}, cfg.gamma, t, w));
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const SweepRecord& a, const SweepRecord& b) {
    return std::tie(a.theta, a.t, a.w) < std::tie(b.theta, b.t, b.w);
  });
  return out;
}

MonotonicityFlags check_w_monotonicity(const std::vector<SweepRecord>& records) {
  constexpr double kSlack = 1e-12;
  std::map<std::tuple<double, double, double, double>, std::vector<const SweepRecord*>> groups;
  for (const SweepRecord& r : records) groups[{r.theta, r.phi, r.gamma, r.t}].push_back(&r);

  MonotonicityFlags flags;
  for (auto& [key, rows] : groups) {
    std::stable_sort(rows.begin(), rows.end(),
                     [](const SweepRecord* a, const SweepRecord* b) { return a->w < b->w; });
    for (size_t i = 1; i < rows.size(); ++i) {
      if (rows[i]->w == rows[i - 1]->w) continue;
      if (rows[i]->f_protect_theory < rows[i - 1]->f_protect_theory - kSlack) {
        flags.fidelity_non_decreasing = false;
      }
      if (!(rows[i]->n_theory < rows[i - 1]->n_theory)) flags.n_strictly_decreasing = false;
    }
  }
  return flags;
}

double frontier_w_star(const PureQubit& state, double p, double target) {
  constexpr double kUpper = 1.0 - 1e-9;
  constexpr double kResolution = 1e-9;
  if (protect_fidelity_pure(state, 0.0, p) >= target) return 0.0;
  if (protect_fidelity_pure(state, kUpper, p) < target) {
    throw Unreachable("target fidelity " + format_real(target) + " unreachable at theta = " +
                      format_real(state.theta));
  }
  double lo = 0.0;
  double hi = kUpper;
  while (hi - lo > kResolution) {
    const double mid = 0.5 * (lo + hi);
    if (protect_fidelity_pure(state, mid, p) >= target) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

std::vector<FrontierPoint> frontier(const SweepConfig& cfg) {
  require_mode(cfg, SweepMode::Frontier);
  cfg.validate();
  const double p = DampingParams::from_rate(cfg.gamma, cfg.t_list.front()).p();
  std::vector<double> thetas = cfg.theta_grid;
  std::sort(thetas.begin(), thetas.end());
  std::vector<FrontierPoint> out;
  for (double theta : thetas) {
    const PureQubit state{theta, cfg.phi};
    const double w_star = frontier_w_star(state, p, cfg.target_fidelity);
    out.push_back({theta, w_star, success_terms(state.density(), w_star, p).n,
                   protect_fidelity_pure(state, w_star, p)});
  }
  return out;
}

bool frontier_is_monotone(const std::vector<FrontierPoint>& points) {
  for (size_t i = 1; i < points.size(); ++i) {
    if (points[i].w_star < points[i - 1].w_star) return false;
    if (points[i].n > points[i - 1].n) return false;
  }
  return true;
}

std::vector<PureQubit> bloch_grid() {
  return {{0.0, 0.0},
          {kPi, 0.0},
          {kPi / 2.0, 0.0},
          {kPi / 2.0, kPi / 2.0},
          {kPi / 2.0, kPi},
          {kPi / 2.0, 3.0 * kPi / 2.0},
          {kPi / 3.0, kPi / 4.0},
          {2.0 * kPi / 3.0, 5.0 * kPi / 4.0}};
}

std::vector<double> strength_grid_5() { return {0.05, 0.25, 0.5, 0.75, 0.95}; }

bool VerifyReport::all_passed() const {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.passed; });
}

VerifyReport verify_all(const VerifyOptions& opt) {
  if (opt.strengths.empty() || opt.states.empty() || opt.w_grid.empty() || opt.p_grid.empty()) {
    throw ConfigError("verify: every grid must be non-empty");
  }
  if (opt.random_contractions < 1) throw ConfigError("verify: need at least one random contraction");
  if (!opt.gadget_factory) throw ConfigError("verify: gadget factory missing");
  const auto kinds = {GadgetKind::WM, GadgetKind::MR, GadgetKind::AD};
  VerifyReport report;

  report.suites.push_back(guarded("gadget-unitarity", 1e-12, [&](SuiteTally& t) {
    for (GadgetKind kind : kinds) {
      for (double s : opt.strengths) {
        const DualityGadget g = opt.gadget_factory(kind, s);
        t.residual(unitarity_residual(g.v));
        t.residual(unitarity_residual(g.w_mat));
      }
    }
  }));

  report.suites.push_back(guarded("branch-completeness", 1e-12, [&](SuiteTally& t) {
    for (GadgetKind kind : kinds) {
      for (double s : opt.strengths) t.residual(max_abs(branch_sum(opt.gadget_factory(kind, s)) - identity(2)));
    }
  }));

  report.suites.push_back(guarded("gadget-kraus-match", 1e-12, [&](SuiteTally& t) {
    for (double s : opt.strengths) {
      const auto e = ad_kraus(s);
      const DualityGadget ad = opt.gadget_factory(GadgetKind::AD, s);
      t.residual(max_abs(branch_operator(ad, 0) - e[0]));
      t.residual(max_abs(branch_operator(ad, 1) - e[1]));
      t.residual(max_abs(branch_operator(opt.gadget_factory(GadgetKind::WM, s), 0) - wm_operator(s)));
      t.residual(max_abs(branch_operator(opt.gadget_factory(GadgetKind::MR, s), 0) - mr_operator(s)));
    }
  }));

  report.suites.push_back(guarded("duality-vs-analytic", 1e-12, [&](SuiteTally& t) {
    for (const PureQubit& q : opt.states) {
      const DensityState rho = q.density();
      for (double s : opt.strengths) {
        const auto [ad0, ad1] = run_gadget(rho, opt.gadget_factory(GadgetKind::AD, s));
        t.residual(max_abs(ad0.matrix() + ad1.matrix() - rho_ad(rho, s).matrix()));
        for (GadgetKind kind : {GadgetKind::WM, GadgetKind::MR}) {
          const auto [b0, b1] = run_gadget(rho, opt.gadget_factory(kind, s));
          t.residual(std::abs(b0.trace() + b1.trace() - 1.0));
          const CMatrix k = kraus_for(kind, s);
          const KrausResult ref = apply_kraus(rho, std::span<const CMatrix>(&k, 1), false);
          t.residual(max_abs(b0.matrix() - ref.state.matrix()));
        }
      }
    }
  }));

  report.suites.push_back(guarded("snd-vs-duality", 1e-12, [&](SuiteTally& t) {
    for (const PureQubit& q : opt.states) {
      const DensityState rho = q.density();
      for (GadgetKind kind : {GadgetKind::WM, GadgetKind::MR}) {
        for (double s : opt.strengths) {
          const auto dil = run_dilated(rho, kraus_for(kind, s));
          const auto dqa = run_gadget(rho, opt.gadget_factory(kind, s));
          t.residual(max_abs(dil.first.matrix() - dqa.first.matrix()));
        }
      }
    }
  }));

  report.suites.push_back(guarded("snd-random-contractions", 1e-12, [&](SuiteTally& t) {
    std::mt19937_64 rng(opt.seed);
    for (int i = 0; i < opt.random_contractions; ++i) {
      const int dim = i % 2 == 0 ? 2 : 4;
      const CMatrix k = random_contraction(rng, dim);
      const DilationUnitary d = snd_unitary(k);
      t.residual(unitarity_residual(d.u));
      t.flag(max_abs(d.u.topLeftCorner(dim, dim) - k) == 0.0, "top-left block differs from K");
    }
  }));

  report.suites.push_back(guarded("gate-sequence", 1e-12, [&](SuiteTally& t) {
    for (GadgetKind kind : {GadgetKind::WM, GadgetKind::MR}) {
      for (int i = 1; i <= 19; ++i) {
        const GateSequence seq = gate_sequence(kind, 0.05 * i);
        t.residual(seq.report.success_residual);
      }
    }
  }));

  report.suites.push_back(guarded("circuit-vs-analytic", 1e-10, [&](SuiteTally& t) {
    for (const PureQubit& q : opt.states) {
      const DensityState rho = q.density();
      for (double w : opt.w_grid) {
        for (double p : opt.p_grid) {
          const double wr = reversal_strength(w, p);
          const ProtectedState sim = extract_protected(run_circuit(build_protection_circuit(w, p, wr), rho));
          const ProtectedState ref = rho_protect_analytic(rho, w, p, wr);
          t.residual(max_abs(sim.state.matrix() - ref.state.matrix()));
          t.residual(std::abs(sim.n - ref.n));
          t.residual(std::abs(sim.n - success_terms(rho, w, p).n));
        }
      }
      for (double p : opt.p_grid) {
        const DensityState sigma = run_circuit(build_protection_circuit(0.0, p, 0.0), rho);
        const DensityState marginal = partial_trace(sigma, {kSystem}, {2, 2, 2, 2});
        t.residual(max_abs(marginal.matrix() - rho_ad(rho, p).matrix()));
      }
    }
  }));

  report.suites.push_back(guarded("readout-vs-extraction", 1e-8, [&](SuiteTally& t) {
    for (const PureQubit& q : opt.states) {
      const DensityState rho = q.density();
      for (double w : opt.w_grid) {
        for (double p : opt.p_grid) {
          const DensityState sigma =
              run_circuit(build_protection_circuit(w, p, reversal_strength(w, p)), rho);
          t.residual(max_abs(readout_reconstruct(sigma.matrix()) .matrix() -
                             extract_protected(sigma).state.matrix()));
        }
      }
    }
  }));

  report.suites.push_back(guarded("channel-properties", 1e-12, [&](SuiteTally& t) {
    for (int i = 0; i <= 10; ++i) {
      const auto e = ad_kraus(i / 10.0);
      t.residual(max_abs(e[0].adjoint() * e[0] + e[1].adjoint() * e[1] - identity(2)));
    }
    for (const PureQubit& q : opt.states) {
      const DensityState rho = q.density();
      t.residual(max_abs(rho_ad(DensityState::from_ket(CVector::Unit(2, 0)), 0.5).matrix() -
                         DensityState::from_ket(CVector::Unit(2, 0)).matrix()));
      for (double w : opt.w_grid) {
        for (double p : opt.p_grid) {
          const double tr_wm = wm_trace(rho, w);
          for (double wr : opt.w_grid) {
            const double n = rho_protect_analytic(rho, w, p, wr).n;
            t.flag(n <= tr_wm + 1e-15 && tr_wm <= 1.0 + 1e-15, "filter ordering N <= Tr sigma_wm <= 1 violated");
          }
          const std::array<CMatrix, 2> e = ad_kraus(p);
          const double wr = reversal_strength(w, p);
          const std::array<CMatrix, 2> chain{mr_operator(wr) * e[0] * wm_operator(w),
                                             mr_operator(wr) * e[1] * wm_operator(w)};
          const KrausResult via_kraus = apply_kraus(rho, chain, true);
          t.residual(max_abs(via_kraus.state.matrix() - rho_protect_analytic(rho, w, p, wr).state.matrix()));
        }
      }
      if (q.excited_population() > 1e-12) {
        for (double p : opt.p_grid) {
          for (size_t i = 1; i < opt.w_grid.size(); ++i) {
            const double w0 = opt.w_grid[i - 1];
            const double w1 = opt.w_grid[i];
            const SuccessTerms a = success_terms(rho, w0, p);
            const SuccessTerms b = success_terms(rho, w1, p);
            t.flag(b.n2 / b.n1 < a.n2 / a.n1, "N2/N1 not strictly decreasing in w");
            t.flag(b.n < a.n, "N not strictly decreasing in w");
            t.flag(protect_fidelity_pure(q, w1, p) >= protect_fidelity_pure(q, w0, p) - 1e-15,
                   "fidelity decreased with w");
          }
        }
      }
      for (double p : opt.p_grid) {
        t.flag(protect_fidelity_pure(q, 0.999, p) >= 1.0 - 1e-3, "w -> 1 limit: F < 1 - 1e-3");
      }
    }
  }));

  return report;
}

std::string format_real(double x) {
  if (x == 0.0) x = 0.0;  // drop the sign of negative zero
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRecord>& records) {
  os << kSweepCsvHeader << '\n';
  for (const SweepRecord& r : records) {
    const double cols[] = {r.theta,        r.phi,      r.gamma,          r.t,
                           r.p,            r.w,        r.wr,             r.f_ad_theory,
                           r.f_ad_sim,     r.f_protect_theory, r.f_protect_sim, r.n_theory,
                           r.n_sim};
    for (size_t i = 0; i < std::size(cols); ++i) os << (i ? "," : "") << format_real(cols[i]);
    os << '\n';
  }
}

void write_frontier_csv(std::ostream& os, const std::vector<FrontierPoint>& points) {
  os << kFrontierCsvHeader << '\n';
  for (const FrontierPoint& p : points) {
    os << format_real(p.theta / kPi) << ',' << format_real(p.w_star) << ',' << format_real(p.n)
       << ',' << format_real(p.f) << '\n';
  }
}

double parse_real(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
  if (s.empty()) throw ConfigError("empty number");
  double scale = 1.0;
  if (s.size() >= 2 && s.compare(s.size() - 2, 2, "pi") == 0) {
    scale = kPi;
    s.resize(s.size() - 2);
    if (s.empty() || s == "+") return kPi;
    if (s == "-") return -kPi;
    if (s.back() == '*') s.pop_back();
  }
  size_t used = 0;
  double value = 0.0;
  try {
    value = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ConfigError("cannot parse number '" + std::string(text) + "'");
  }
  if (used != s.size()) throw ConfigError("cannot parse number '" + std::string(text) + "'");
  return value * scale;
}

std::vector<double> parse_real_list(std::string_view text) {
  std::vector<double> out;
  size_t start = 0;
  while (start <= text.size()) {
    const size_t comma = text.find(',', start);
    const std::string_view item = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
    out.push_back(parse_real(item));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

SweepConfig apply_config_json(const nlohmann::json& doc, SweepConfig base) {
  if (!doc.is_object()) throw ConfigError("config document must be a JSON object");
  auto number = [](const nlohmann::json& v, const char* key) -> double {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) return parse_real(v.get<std::string>());
    throw ConfigError(std::string("config field '") + key + "' must be a number or string");
  };
  auto list = [&](const nlohmann::json& v, const char* key) {
    std::vector<double> out;
    if (v.is_array()) {
      for (const auto& item : v) out.push_back(number(item, key));
    } else if (v.is_string()) {
      out = parse_real_list(v.get<std::string>());
    } else {
      out.push_back(number(v, key));
    }
    return out;
  };
  auto pick = [&](const char* a, const char* b) -> const nlohmann::json* {
    if (doc.contains(a)) return &doc.at(a);
    if (b && doc.contains(b)) return &doc.at(b);
    return nullptr;
  };

  if (const auto* v = pick("mode", nullptr)) {
    if (!v->is_string()) throw ConfigError("config field 'mode' must be a string");
    base.mode = parse_mode(v->get<std::string>());
  }
  if (const auto* v = pick("gamma", nullptr)) base.gamma = number(*v, "gamma");
  if (const auto* v = pick("t_list", "t")) base.t_list = list(*v, "t_list");
  if (const auto* v = pick("w_list", "w")) base.w_list = list(*v, "w_list");
  if (const auto* v = pick("theta_grid", "theta")) base.theta_grid = list(*v, "theta_grid");
  if (const auto* v = pick("phi", nullptr)) base.phi = number(*v, "phi");
  if (const auto* v = pick("target_fidelity", "target_f")) base.target_fidelity = number(*v, "target_fidelity");
  if (const auto* v = pick("output", "out")) {
    if (!v->is_string()) throw ConfigError("config field 'output' must be a string");
    base.output_path = v->get<std::string>();
  }
  return base;
}

}  // namespace wmp
