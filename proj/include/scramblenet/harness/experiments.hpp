#pragma once

// Config-driven experiment pipelines. Each writes CSV tables, SVG charts and
// a run manifest, and reports its assertions.

#include "scramblenet/circuit.hpp"
#include "scramblenet/error.hpp"
#include "scramblenet/gradient.hpp"
#include "scramblenet/harness/config.hpp"
#include "scramblenet/harness/io.hpp"
#include "scramblenet/parallel.hpp"
#include "scramblenet/randmat.hpp"
#include "scramblenet/scrambling.hpp"
#include "scramblenet/stats.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

namespace scramblenet::harness {

// RNG stream ids; a circuit of depth k uses stream k.
inline constexpr std::uint64_t kTargetStream = 1'000'000;
inline constexpr std::uint64_t kStateStream = 2'000'000;
inline constexpr std::uint64_t kOperatorStream = 3'000'000;

struct Assertion {
  std::string name;
  bool passed = true;
  std::string detail;
};

struct ExperimentOutput {
  std::vector<CsvTable> tables;
  std::vector<std::pair<std::string, LineChart>> charts;
  std::vector<Assertion> assertions;
};

struct RunResult {
  std::vector<std::string> files;
  std::vector<Assertion> assertions;

  bool ok() const {
    return std::all_of(assertions.begin(), assertions.end(), [](const Assertion& a) { return a.passed; });
  }
};

inline BrickWallCircuit make_circuit(int n, int depth, std::uint64_t seed, GateMode mode) {
  SeededRng rng(seed, static_cast<std::uint64_t>(depth));
  return build_brickwall(n, depth, rng, mode);
}

inline DenseOperator make_target(int n, std::uint64_t seed, std::uint64_t tag) {
  SeededRng rng(seed, kTargetStream + tag);
  return haar_unitary(Eigen::Index{1} << n, rng);
}

inline OtocReport otoc_by_route(const DenseOperator& u, const SubsystemPartition& part, const std::string& route) {
  if (route == "direct") return otoc_direct(u, part);
  if (route == "renyi") return otoc_renyi(u, part);
  return otoc(u, part);
}

inline std::string join_seeds(const std::vector<std::uint64_t>& seeds) {
  std::string s;
  for (std::size_t i = 0; i < seeds.size(); ++i) s += (i ? ";" : "") + std::to_string(seeds[i]);
  return s;
}

inline std::string fmt_fail(const std::string& what, double got, double limit) {
  return what + ": " + num(got) + " vs " + num(limit);
}

namespace experiments {

inline ExperimentOutput otoc_depth(const ExperimentConfig& cfg) {
  const SubsystemPartition part(cfg.n_qubits, cfg.n_a, cfg.n_d);
  struct Task { int depth; std::uint64_t seed; };
  std::vector<Task> tasks;
  for (int d : cfg.depths) {
    for (auto s : cfg.seeds) tasks.push_back({d, s});
  }
  const auto values = parallel_map<OtocReport>(tasks.size(), [&](std::size_t i) {
    return otoc_by_route(circuit_unitary(make_circuit(cfg.n_qubits, tasks[i].depth, tasks[i].seed, cfg.mode())), part, cfg.route);
  });

  ExperimentOutput out;
  CsvTable raw{"otoc_depth", {"seed", "N", "N_A", "N_D", "depth", "route", "value"}, {}};
  std::map<int, std::vector<double>> by_depth;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    raw.add({num(tasks[i].seed), num(cfg.n_qubits), num(cfg.n_a), num(cfg.n_d), num(tasks[i].depth), to_string(values[i].route),
             num(values[i].value)});
    by_depth[tasks[i].depth].push_back(values[i].value);
  }
  const double os = otoc_scram(part);
  const double g = part.g();
  CsvTable summary{"otoc_depth_summary",
                   {"depth", "n_seeds", "otoc_mean", "otoc_stderr", "otoc_scram", "l_scram", "l_plus", "l_minus", "l_floor"},
                   {}};
  Series mean_series{"OTOC mean", {}, {}, {}};
  Series floor_series{"OTOC_scram", {}, {}, {}};
  Series ls{"L_scram", {}, {}, {}}, lp{"L_+", {}, {}, {}}, lm{"L_-", {}, {}, {}}, lf{"L_floor", {}, {}, {}};
  bool range_ok = true;
  for (const auto& [depth, vs] : by_depth) {
    const auto st = sample_stats(vs);
    const double l_s = l_scram_from_otoc(st.mean, part);
    const double ru = std::sqrt(std::max(st.mean, 0.0));
    const double rs = std::sqrt(os);
    const double l_plus = g * (ru + rs) * (ru + rs);
    const double l_minus = g * (ru - rs) * (ru - rs);
    summary.add({num(depth), num(vs.size()), num(st.mean), num(st.stderr_), num(os), num(l_s), num(l_plus), num(l_minus),
                 num(l_floor(part))});
    const double x = depth;
    mean_series.x.push_back(x);
    mean_series.y.push_back(st.mean);
    mean_series.err.push_back(st.stderr_);
    floor_series.x.push_back(x);
    floor_series.y.push_back(os);
    for (auto* s : {&ls, &lp, &lm, &lf}) s->x.push_back(x);
    ls.y.push_back(l_s);
    lp.y.push_back(l_plus);
    lm.y.push_back(std::max(l_minus, 1e-300));
    lf.y.push_back(l_floor(part));
    for (double v : vs) range_ok = range_ok && v >= -1e-12 && v <= 1.0 + 1e-9;

    if (cfg.has_tolerance("unit_depth_max") && depth <= cfg.tolerance("unit_depth_max", 0)) {
      const double tol = cfg.tolerance("unit_tol", 1e-9);
      double worst = 0.0;
      for (double v : vs) worst = std::max(worst, std::abs(v - 1.0));
      out.assertions.push_back({"otoc_unity_depth_" + num(depth), worst <= tol, fmt_fail("max |OTOC - 1|", worst, tol)});
    }
    if (cfg.has_tolerance("floor_depth_min") && depth >= cfg.tolerance("floor_depth_min", 0)) {
      const double rel = std::abs(st.mean - os) / os;
      const double tol = cfg.tolerance("floor_rel", 0.05);
      out.assertions.push_back({"otoc_floor_depth_" + num(depth), rel <= tol, fmt_fail("relative deviation from OTOC_scram", rel, tol)});
    }
  }
  out.assertions.push_back({"otoc_in_unit_interval", range_ok, "0 <= OTOC <= 1 + 1e-9"});
  out.tables = {raw, summary};
  out.charts.push_back({"otoc_depth", LineChart{"Averaged OTOC vs depth (" + part.str() + ")", "depth", "OTOC",
                                                {mean_series, floor_series}, false}});
  out.charts.push_back({"error_bounds_depth", LineChart{"True-error bounds vs depth (" + part.str() + ")", "depth", "error",
                                                        {ls, lp, lm, lf}, true}});
  return out;
}

inline ExperimentOutput error_bounds(const ExperimentConfig& cfg) {
  const SubsystemPartition part(cfg.n_qubits, cfg.n_a, cfg.n_d);
  struct Task { int depth; std::uint64_t seed; };
  std::vector<Task> tasks;
  for (int d : cfg.depths) {
    for (auto s : cfg.seeds) tasks.push_back({d, s});
  }
  struct Row { ErrorBundle b; BoundPair renyi; double mi = 0.0; double l_scram = 0.0; };
  const auto rows = parallel_map<Row>(tasks.size(), [&](std::size_t i) {
    const DenseOperator u = circuit_unitary(make_circuit(cfg.n_qubits, tasks[i].depth, tasks[i].seed, cfg.mode()));
    const DenseOperator us = make_target(cfg.n_qubits, tasks[i].seed, static_cast<std::uint64_t>(tasks[i].depth));
    Row r;
    r.b = true_error_analytic(u, us, part);
    r.renyi = renyi_bound(u, us, part);
    r.mi = mi_lower_bound(u, us, part);
    r.l_scram = l_scram_from_otoc(r.b.otoc_u, part);
    return r;
  });
  ExperimentOutput out;
  CsvTable t{"error_bounds",
             {"seed", "N", "N_A", "N_D", "depth", "otoc_u", "otoc_us", "op", "L", "L_minus", "L_plus", "renyi_plus", "renyi_minus",
              "mi_bound", "l_scram"},
             {}};
  CsvTable longform{"error_quantities", {"seed", "N", "N_A", "depth", "quantity", "value", "stderr"}, {}};
  const double renyi_tol = cfg.tolerance("renyi_abs", 1e-9);
  std::size_t order_fail = 0, renyi_fail = 0, mi_fail = 0;
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const auto& r = rows[i];
    t.add({num(tasks[i].seed), num(cfg.n_qubits), num(cfg.n_a), num(cfg.n_d), num(tasks[i].depth), num(r.b.otoc_u), num(r.b.otoc_us),
           num(r.b.op_corr), num(r.b.L), num(r.b.L_minus), num(r.b.L_plus), num(r.renyi.plus), num(r.renyi.minus), num(r.mi),
           num(r.l_scram)});
    const std::pair<const char*, double> quantities[] = {{"L", r.b.L},           {"L_plus", r.b.L_plus},   {"L_minus", r.b.L_minus},
                                                         {"otoc_u", r.b.otoc_u}, {"otoc_us", r.b.otoc_us}, {"op", r.b.op_corr},
                                                         {"mi_bound", r.mi},     {"l_scram", r.l_scram}};
    for (const auto& [q, v] : quantities) {
      longform.add({num(tasks[i].seed), num(cfg.n_qubits), num(cfg.n_a), num(tasks[i].depth), q, num(v), "0"});
    }
    if (!r.b.satisfies_bounds()) ++order_fail;
    if (std::abs(r.renyi.plus - r.b.L_plus) > renyi_tol || std::abs(r.renyi.minus - r.b.L_minus) > renyi_tol) ++renyi_fail;
    if (r.b.L < r.mi - 1e-9) ++mi_fail;
  }
  out.assertions.push_back({"bound_ordering_and_gap", order_fail == 0, num(order_fail) + " violating instances"});
  out.assertions.push_back({"renyi_form_equality", renyi_fail == 0, num(renyi_fail) + " mismatching instances"});
  out.assertions.push_back({"mi_lower_bound", mi_fail == 0, num(mi_fail) + " violating instances"});
  out.tables = {t, longform};
  return out;
}

inline ExperimentOutput landscape(const ExperimentConfig& cfg) {
  const SubsystemPartition part(cfg.n_qubits, cfg.n_a, cfg.n_d);
  const std::vector<double> grid =
      cfg.epsilon_grid.empty() ? linspace(-2.0 * std::numbers::pi, 2.0 * std::numbers::pi, 65) : cfg.epsilon_grid;
  struct Task { int depth; std::uint64_t seed; };
  std::vector<Task> tasks;
  for (int d : cfg.depths) {
    for (auto s : cfg.seeds) tasks.push_back({d, s});
  }
  const auto scans = parallel_map<LandscapeScan>(tasks.size(), [&](std::size_t i) {
    return landscape_scan(make_circuit(cfg.n_qubits, tasks[i].depth, tasks[i].seed, cfg.mode()), part, grid);
  });
  const double os = otoc_scram(part);
  const double frac = cfg.tolerance("flat_frac", 0.1);
  ExperimentOutput out;
  CsvTable raw{"landscape", {"seed", "N", "N_A", "N_D", "depth", "eps", "otoc"}, {}};
  CsvTable summary{"landscape_summary", {"seed", "depth", "flatness", "otoc_scram", "threshold"}, {}};
  LineChart chart{"OTOC landscape under theta -> theta + eps (" + part.str() + ")", "eps", "OTOC", {}, false};
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    Series s{"depth " + num(tasks[i].depth) + " seed " + num(tasks[i].seed), {}, {}, {}};
    for (const auto& p : scans[i].points) {
      raw.add({num(tasks[i].seed), num(cfg.n_qubits), num(cfg.n_a), num(cfg.n_d), num(tasks[i].depth), num(p.eps), num(p.otoc)});
      s.x.push_back(p.eps);
      s.y.push_back(p.otoc);
    }
    chart.series.push_back(std::move(s));
    const double flat = scans[i].flatness();
    summary.add({num(tasks[i].seed), num(tasks[i].depth), num(flat), num(os), num(frac * os)});
    const std::string tag = "depth_" + num(tasks[i].depth) + "_seed_" + num(tasks[i].seed);
    if (cfg.has_tolerance("flat_depth_min") && tasks[i].depth >= cfg.tolerance("flat_depth_min", 0)) {
      out.assertions.push_back({"flat_" + tag, flat <= frac * os, fmt_fail("max - min", flat, frac * os)});
    }
    if (cfg.has_tolerance("rough_depth_max") && tasks[i].depth <= cfg.tolerance("rough_depth_max", 0)) {
      out.assertions.push_back({"rough_" + tag, flat > frac * os, fmt_fail("max - min (must exceed)", flat, frac * os)});
    }
  }
  out.tables = {raw, summary};
  out.charts.push_back({"landscape", chart});
  return out;
}

/// left: N_A = N-1, N_C = 1; right: N_A = 1, N_C = N-1.
inline SubsystemPartition sweep_partition(int n, bool right) {
  return right ? SubsystemPartition::from_c(n, 1, n - 1) : SubsystemPartition::from_c(n, n - 1, 1);
}

struct SweepPoint {
  int n = 0;
  int depth = 0;
  std::uint64_t seed = 0;
  double otoc_left = 0.0;
  double otoc_right = 0.0;
  double l_left = 0.0;
  double l_right = 0.0;
};

/// OTOC and L_scram of one circuit per (N, depth, seed) under both sweep partitions.
inline std::vector<SweepPoint> sweep_points(const std::vector<int>& sizes, const std::vector<int>& depths,
                                            const std::vector<std::uint64_t>& seeds, GateMode mode, const std::string& route) {
  std::vector<SweepPoint> pts;
  for (int n : sizes) {
    for (int d : depths) {
      for (auto s : seeds) pts.push_back({n, d, s});
    }
  }
  return parallel_map<SweepPoint>(pts.size(), [&](std::size_t i) {
    SweepPoint p = pts[i];
    const auto u = circuit_unitary(make_circuit(p.n, p.depth, p.seed, mode));
    const auto left = sweep_partition(p.n, false);
    const auto right = sweep_partition(p.n, true);
    p.otoc_left = otoc_by_route(u, left, route).value;
    p.otoc_right = otoc_by_route(u, right, route).value;
    p.l_left = l_scram_from_otoc(p.otoc_left, left);
    p.l_right = l_scram_from_otoc(p.otoc_right, right);
    return p;
  });
}

/// A depth curve decays if its last mean lies below its first and no step
/// rises by more than three combined standard errors.
inline std::pair<bool, std::string> decay_check(const std::vector<SampleStats>& curve) {
  if (curve.size() < 2) return {false, "need at least two depths"};
  if (!(curve.back().mean < curve.front().mean)) {
    return {false, "last " + num(curve.back().mean) + " not below first " + num(curve.front().mean)};
  }
  for (std::size_t i = 1; i < curve.size(); ++i) {
    // Plateaus that are flat up to rounding are not rises.
    const double slack = 3.0 * std::hypot(curve[i].stderr_, curve[i - 1].stderr_) + 1e-12;
    if (curve[i].mean > curve[i - 1].mean + slack) {
      return {false, "rise at step " + num(i) + ": " + num(curve[i - 1].mean) + " -> " + num(curve[i].mean)};
    }
  }
  return {true, "first " + num(curve.front().mean) + ", last " + num(curve.back().mean)};
}

inline ExperimentOutput lscram_sweep(const ExperimentConfig& cfg) {
  std::vector<int> sizes = cfg.sizes;
  if (sizes.empty()) sizes = {3, 4, 5, 6, 7, 8};
  const auto pts = sweep_points(sizes, cfg.depths, cfg.seeds, cfg.mode(), cfg.route);
  ExperimentOutput out;
  CsvTable raw{"lscram_sweep", {"seed", "N", "mode", "N_A", "N_C", "depth", "otoc", "l_scram"}, {}};
  std::map<std::tuple<int, bool, int>, std::vector<double>> groups;
  for (const auto& p : pts) {
    for (bool right : {false, true}) {
      const SubsystemPartition part = sweep_partition(p.n, right);
      const double o = right ? p.otoc_right : p.otoc_left;
      const double ls = right ? p.l_right : p.l_left;
      raw.add({num(p.seed), num(p.n), right ? "right" : "left", num(part.n_a()), num(part.n_c()), num(p.depth), num(o), num(ls)});
      groups[{p.n, right, p.depth}].push_back(ls);
    }
  }
  CsvTable summary{"lscram_sweep_summary", {"N", "mode", "depth", "l_scram_mean", "l_scram_stderr", "l_floor"}, {}};
  LineChart left_chart{"L_scram, N_A = N-1, N_C = 1", "depth", "L_scram", {}, true};
  LineChart right_chart{"L_scram, N_A = 1, N_C = N-1", "depth", "L_scram", {}, true};
  std::map<std::tuple<int, bool, int>, double> means;
  for (int n : sizes) {
    for (bool right : {false, true}) {
      Series s{"N=" + num(n), {}, {}, {}};
      for (int d : cfg.depths) {
        const auto st = sample_stats(groups[{n, right, d}]);
        means[{n, right, d}] = st.mean;
        summary.add({num(n), right ? "right" : "left", num(d), num(st.mean), num(st.stderr_), num(l_floor(sweep_partition(n, right)))});
        s.x.push_back(d);
        s.y.push_back(st.mean);
      }
      (right ? right_chart : left_chart).series.push_back(std::move(s));
    }
  }
  std::vector<int> sorted_depths = cfg.depths;
  std::sort(sorted_depths.begin(), sorted_depths.end());
  sorted_depths.erase(std::unique(sorted_depths.begin(), sorted_depths.end()), sorted_depths.end());
  if (sorted_depths.size() >= 2) {
    for (int n : sizes) {
      for (bool right : {false, true}) {
        std::vector<SampleStats> curve;
        for (int d : sorted_depths) curve.push_back(sample_stats(groups[{n, right, d}]));
        const auto [ok, detail] = decay_check(curve);
        out.assertions.push_back({"decay_N" + num(n) + (right ? "_right" : "_left"), ok, detail});
      }
    }
  }
  const double order_min = cfg.tolerance("order_depth_min", 10);
  for (int n : sizes) {
    for (int d : cfg.depths) {
      if (d < order_min) continue;
      const double l = means[{n, false, d}];
      const double r = means[{n, true, d}];
      out.assertions.push_back({"right_below_left_N" + num(n) + "_depth_" + num(d), r < l, "right " + num(r) + ", left " + num(l)});
    }
  }
  out.tables = {raw, summary};
  out.charts.push_back({"lscram_left", left_chart});
  out.charts.push_back({"lscram_right", right_chart});
  return out;
}

struct LevyCounts {
  std::string quantity;
  std::size_t param = 0;
  double epsilon = 0.0;
  double threshold = 0.0;
  std::size_t violations = 0;
  std::size_t samples = 0;
  double max_deviation = 0.0;

  double fraction() const { return static_cast<double>(violations) / static_cast<double>(samples); }
  bool ok() const { return fraction() <= binomial_ceiling(epsilon, samples); }
};

/// Empirical violation counts of the Levy-type concentration statements for
/// L_d, dL_d, the cost and its gradient over Haar input states.
inline std::vector<LevyCounts> levy_counts(const BrickWallCircuit& c, const DenseOperator& u_s, const SubsystemPartition& part,
                                           const std::vector<double>& eps_grid, int n_samples, std::uint64_t seed) {
  const DenseOperator u = circuit_unitary(c);
  const ErrorBundle bundle = true_error_analytic(u, u_s, part);
  const auto dl = true_error_gradient(c, u_s, part);
  const double c_av = cost_av(u, part);
  auto dc_av = otoc_gradient(c, part);
  for (double& x : dc_av) x *= part.g();
  const std::size_t p = c.parameter_count();
  struct Sample {
    double ld = 0.0;
    double cost = 0.0;
    std::vector<double> dld;
    std::vector<double> dcost;
  };
  const auto samples = parallel_map<Sample>(static_cast<std::size_t>(n_samples), [&](std::size_t i) {
    SeededRng rng(seed, kStateStream + i);
    const StateVector psi = haar_state(static_cast<Eigen::Index>(part.d_a()), rng);
    const DenseOperator rho = input_density(psi, part);
    Sample s;
    s.ld = loss_ld(u, u_s, psi, part);
    s.cost = cost(u, rho, part);
    s.dld = loss_ld_gradient(c, u_s, psi, part);
    s.dcost = cost_gradient(c, rho, part);
    return s;
  });
  std::vector<LevyCounts> out;
  for (double eps : eps_grid) {
    const LevyBundle lb = levy_bundle_from(bundle.otoc_u, bundle.otoc_us, part, eps);
    auto count = [&](const std::string& name, std::size_t param, double threshold, auto&& deviation) {
      LevyCounts k{name, param, eps, threshold, 0, samples.size(), 0.0};
      for (const auto& s : samples) {
        const double dev = deviation(s);
        k.max_deviation = std::max(k.max_deviation, dev);
        if (dev > threshold) ++k.violations;
      }
      out.push_back(k);
    };
    count("L_d", 0, lb.eta * lb.f_eps, [&](const Sample& s) { return std::abs(s.ld - bundle.L); });
    count("cost", 0, lb.eta_C * lb.f_eps, [&](const Sample& s) { return std::abs(s.cost - c_av); });
    for (std::size_t l = 0; l < p; ++l) {
      count("dL_d", l, lb.eta_g * lb.f_eps, [&](const Sample& s) { return std::abs(s.dld[l] - dl[l]); });
      count("dcost", l, lb.eta_Cg * lb.f_eps, [&](const Sample& s) { return std::abs(s.dcost[l] - dc_av[l]); });
    }
  }
  return out;
}

inline ExperimentOutput levy(const ExperimentConfig& cfg) {
  const SubsystemPartition part(cfg.n_qubits, cfg.n_a, cfg.n_d);
  const std::vector<double> grid = cfg.epsilon_grid.empty() ? std::vector<double>{0.05, 0.2} : cfg.epsilon_grid;
  const int depth = cfg.depths.empty() ? 4 : cfg.depths.front();
  ExperimentOutput out;
  CsvTable t{"levy",
             {"seed", "N", "N_A", "N_D", "depth", "quantity", "param", "epsilon", "threshold", "violations", "samples", "fraction",
              "ceiling", "max_deviation"},
             {}};
  for (auto seed : cfg.seeds) {
    const auto c = make_circuit(cfg.n_qubits, depth, seed, GateMode::generator_exp);
    const auto us = make_target(cfg.n_qubits, seed, static_cast<std::uint64_t>(depth));
    std::size_t bad = 0;
    for (const auto& k : levy_counts(c, us, part, grid, cfg.samples, seed)) {
      t.add({num(seed), num(cfg.n_qubits), num(cfg.n_a), num(cfg.n_d), num(depth), k.quantity, num(k.param), num(k.epsilon),
             num(k.threshold), num(k.violations), num(k.samples), num(k.fraction()), num(binomial_ceiling(k.epsilon, k.samples)),
             num(k.max_deviation)});
      if (!k.ok()) ++bad;
    }
    out.assertions.push_back({"levy_seed_" + num(seed), bad == 0, num(bad) + " statements above the binomial ceiling"});
  }
  CsvTable limits{"levy_scram_limits", {"epsilon", "f_eps", "eta_f_limit", "grad_limit"}, {}};
  for (double eps : grid) {
    limits.add({num(eps), num(f_epsilon(eps, part)), num(levy_scram_limit(part, eps)), num(grad_levy_scram_limit(part, eps))});
  }
  out.tables = {t, limits};
  return out;
}

struct TwirlComparison {
  std::string oracle;
  Eigen::Index dim = 0;
  int samples = 0;
  double max_dev = 0.0;
  double sigma = 0.0;

  /// Entrywise |MC - exact| <= 3 sigma, sigma the Monte-Carlo scale plus 1e-12.
  bool ok() const { return max_dev <= 3.0 * (sigma + 1e-12); }
};

inline TwirlComparison compare_twirl(std::string name, Eigen::Index dim, const TwirlEstimate& est, const DenseOperator& exact) {
  return {std::move(name), dim, est.n_samples, max_abs(est.mean - exact), est.sigma()};
}

/// The three twirl oracles at one dimension.
inline std::vector<TwirlComparison> twirl_oracles(Eigen::Index dim, int samples, std::uint64_t seed) {
  std::vector<TwirlComparison> out;
  SeededRng qrng(seed, kOperatorStream + static_cast<std::uint64_t>(dim));
  const DenseOperator q1 = gue_hermitian(dim, qrng, false);
  const DenseOperator q2 = gue_hermitian(dim * dim, qrng, false);
  DenseOperator pure = DenseOperator::Zero(dim * dim, dim * dim);
  pure(0, 0) = 1.0;
  SeededRng r1(seed, 10 * static_cast<std::uint64_t>(dim) + 1);
  SeededRng r2(seed, 10 * static_cast<std::uint64_t>(dim) + 2);
  SeededRng r3(seed, 10 * static_cast<std::uint64_t>(dim) + 3);
  out.push_back(compare_twirl("phi1", dim, twirl_mc(q1, 1, dim, samples, r1), twirl1_closed_form(q1)));
  out.push_back(compare_twirl("phi2", dim, twirl_mc(q2, 2, dim, samples, r2), twirl2_closed_form(q2, dim)));
  out.push_back(compare_twirl("pure_power", dim, twirl_mc(pure, 2, dim, samples, r3), twirl_pure_power_closed_form(2, dim)));
  return out;
}

inline ExperimentOutput twirl_oracle(const ExperimentConfig& cfg) {
  std::vector<int> dims = cfg.sizes;
  if (dims.empty()) dims = {2, 4};
  ExperimentOutput out;
  CsvTable t{"twirl_oracle", {"seed", "oracle", "dim", "samples", "max_abs_dev", "sigma", "ratio"}, {}};
  for (auto seed : cfg.seeds) {
    for (int d : dims) {
      for (const auto& c : twirl_oracles(d, cfg.samples, seed)) {
        t.add({num(seed), c.oracle, num(d), num(c.samples), num(c.max_dev), num(c.sigma), num(c.max_dev / (c.sigma + 1e-12))});
        out.assertions.push_back({c.oracle + "_dim_" + num(d) + "_seed_" + num(seed), c.ok(), fmt_fail("max |dev|", c.max_dev, 3 * c.sigma)});
      }
    }
  }
  out.tables = {t};
  return out;
}

struct GradientAuditRow {
  std::string quantity;
  GradientReport report;
};

/// Analytic vs central-difference gradients and caps for every parameter.
inline std::vector<GradientAuditRow> gradient_audit_rows(const BrickWallCircuit& c, const DenseOperator& u_s, const StateVector& psi,
                                                         const SubsystemPartition& part) {
  const DenseOperator rho = input_density(psi, part);
  const auto nested = parallel_map<std::vector<GradientAuditRow>>(c.parameter_count(), [&](std::size_t l) {
    return std::vector<GradientAuditRow>{{"otoc", grad_otoc(c, part, l)},
                                         {"op", grad_op(c, u_s, part, l)},
                                         {"true_error", grad_true_error(c, u_s, part, l)},
                                         {"l_scram", grad_l_scram(c, part, l)},
                                         {"cost", grad_cost(c, rho, part, l)},
                                         {"cost_av", grad_cost_av(c, part, l)},
                                         {"loss_ld", grad_loss_ld(c, u_s, psi, part, l)}};
  });
  std::vector<GradientAuditRow> flat;
  for (const auto& v : nested) flat.insert(flat.end(), v.begin(), v.end());
  return flat;
}

inline ExperimentOutput gradient_audit(const ExperimentConfig& cfg) {
  const SubsystemPartition part(cfg.n_qubits, cfg.n_a, cfg.n_d);
  ExperimentOutput out;
  CsvTable t{"gradient_audit", {"seed", "depth", "quantity", "param", "analytic", "fd", "fd_step", "bound", "fd_ok", "bound_ok"}, {}};
  std::size_t fd_bad = 0, cap_bad = 0;
  for (int depth : cfg.depths) {
    for (auto seed : cfg.seeds) {
      const auto c = make_circuit(cfg.n_qubits, depth, seed, GateMode::generator_exp);
      const auto us = make_target(cfg.n_qubits, seed, static_cast<std::uint64_t>(depth));
      SeededRng srng(seed, kStateStream);
      const StateVector psi = haar_state(static_cast<Eigen::Index>(part.d_a()), srng);
      for (const auto& row : gradient_audit_rows(c, us, psi, part)) {
        const auto& r = row.report;
        t.add({num(seed), num(depth), row.quantity, num(r.param_index), num(r.grad_analytic), num(r.grad_fd), num(r.fd_step),
               num(r.bound), r.fd_agrees() ? "1" : "0", r.within_bound() ? "1" : "0"});
        if (!r.fd_agrees()) ++fd_bad;
        if (!r.within_bound()) ++cap_bad;
      }
    }
  }
  out.assertions.push_back({"fd_agreement", fd_bad == 0, num(fd_bad) + " gradients disagree with central differences"});
  out.assertions.push_back({"gradient_caps", cap_bad == 0, num(cap_bad) + " gradients exceed their caps"});
  out.tables = {t};
  return out;
}

}  // namespace experiments

inline ExperimentOutput dispatch(const ExperimentConfig& cfg) {
  const auto& e = cfg.experiment;
  if (e == "otoc-depth") return experiments::otoc_depth(cfg);
  if (e == "error-bounds") return experiments::error_bounds(cfg);
  if (e == "landscape") return experiments::landscape(cfg);
  if (e == "lscram-sweep") return experiments::lscram_sweep(cfg);
  if (e == "levy") return experiments::levy(cfg);
  if (e == "twirl-oracle") return experiments::twirl_oracle(cfg);
  if (e == "gradient-audit") return experiments::gradient_audit(cfg);
  throw ArgumentError("unknown experiment " + e);
}

/// Runs one configured experiment and writes CSV, SVG and run_manifest.json
/// into cfg.output_dir.
inline RunResult run(const ExperimentConfig& cfg) {
  validate(cfg);
  ensure_dir(cfg.output_dir);
  const ExperimentOutput out = dispatch(cfg);
  const std::string hash = config_hash(cfg);
  const std::string seeds = join_seeds(cfg.seeds);
  RunResult result;
  result.assertions = out.assertions;
  for (const auto& t : out.tables) result.files.push_back(write_csv(t, cfg.output_dir, hash, seeds));
  for (const auto& [name, chart] : out.charts) result.files.push_back(write_svg(chart, cfg.output_dir, name, "scramblenet " + name + " config_hash=" + hash + " seeds=" + seeds));

  nlohmann::json manifest;
  manifest["tool"] = "scramblenet";
  manifest["version"] = kVersion;
  manifest["experiment"] = cfg.experiment;
  manifest["config"] = to_json(cfg);
  manifest["config_hash"] = hash;
  manifest["seeds"] = cfg.seeds;
  manifest["eigen_version"] = std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                              std::to_string(EIGEN_MINOR_VERSION);
  manifest["compiler"] = __VERSION__;
  nlohmann::json files = nlohmann::json::array();
  for (const auto& f : result.files) files.push_back(std::filesystem::path(f).filename().string());
  manifest["files"] = files;
  nlohmann::json asserts = nlohmann::json::array();
  for (const auto& a : result.assertions) asserts.push_back({{"name", a.name}, {"passed", a.passed}, {"detail", a.detail}});
  manifest["assertions"] = asserts;
  manifest["passed"] = result.ok();
  const std::string mpath = (std::filesystem::path(cfg.output_dir) / "run_manifest.json").string();
  std::ofstream m(mpath, std::ios::binary);
  if (!m) throw std::runtime_error("cannot write " + mpath);
  m << manifest.dump(2) << '\n';
  result.files.push_back(mpath);
  return result;
}

}  // namespace scramblenet::harness
