#pragma once

// The twelve acceptance criteria. Each returns a pass flag and a detail line;
// tolerances are multiplied by AcceptanceOptions::tolerance_scale so that a
// scale of 0 demonstrates the checks are sensitive.

#include "scramblenet/harness/experiments.hpp"

#include <chrono>
#include <functional>
#include <sstream>

namespace scramblenet::harness {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct AcceptanceOptions {
  std::uint64_t seed = 1;
  double tolerance_scale = 1.0;
};

namespace acceptance {

/// Collects named sub-checks; the criterion passes when all of them pass.
class Checks {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
    ++count_;
  }
  void note(const std::string& s) { notes_.push_back(s); }

  bool passed() const { return failures_.empty(); }
  std::string detail() const {
    std::ostringstream o;
    o << (count_ - failures_.size()) << "/" << count_ << " checks";
    for (const auto& n : notes_) o << "; " << n;
    for (std::size_t i = 0; i < failures_.size() && i < 5; ++i) o << "; FAIL " << failures_[i];
    if (failures_.size() > 5) o << "; ... " << failures_.size() - 5 << " more";
    return o.str();
  }

 private:
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
  std::size_t count_ = 0;
};

/// Alternates Haar unitaries with brick-wall circuits of depth 1..6 so the
/// instance pool covers weak and strong scrambling.
inline DenseOperator random_instance(int n, std::size_t i, SeededRng& rng) {
  if (i % 2 == 0) return haar_unitary(Eigen::Index{1} << n, rng);
  const int depth = 1 + static_cast<int>((i / 2) % 6);
  return circuit_unitary(build_brickwall(n, depth, rng, GateMode::generator_exp));
}

inline std::string sig(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

inline Checks otoc_vs_depth(const AcceptanceOptions& o) {
  Checks ck;
  const SubsystemPartition part(8, 3, 3);
  const double os = otoc_scram(part);
  const double unit_tol = 1e-9 * o.tolerance_scale;
  const double rel_tol = 0.05 * o.tolerance_scale;
  ck.expect(std::abs(os - 2031.0 / 65535.0) <= 1e-15, "OTOC_scram closed form " + num(os));
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t s = 0; s < 20; ++s) seeds.push_back(o.seed + s);

  for (GateMode mode : {GateMode::generator_exp, GateMode::haar}) {
    const std::string tag = mode == GateMode::haar ? "haar" : "exp";
    const auto shallow = parallel_map<double>(3 * seeds.size(), [&](std::size_t i) {
      const auto c = make_circuit(8, static_cast<int>(i / seeds.size()), seeds[i % seeds.size()], mode);
      return otoc_renyi(circuit_unitary(c), part).value;
    });
    double worst = 0.0;
    for (double v : shallow) worst = std::max(worst, std::abs(v - 1.0));
    // The direct Pauli average on the first seed at each depth.
    for (int d = 0; d < 3; ++d) {
      const auto c = make_circuit(8, d, seeds.front(), mode);
      worst = std::max(worst, std::abs(otoc_direct(circuit_unitary(c), part).value - 1.0));
    }
    ck.expect(worst <= unit_tol, tag + " depths 0-2 max |OTOC-1| = " + sig(worst));
    ck.note(tag + " depths 0-2 max |OTOC-1| " + sig(worst));
  }

  // Deep circuits: Haar-gate mode at depth 30 is the checked reproduction.
  auto deep_mean = [&](GateMode mode, int depth) {
    const auto v = parallel_map<double>(seeds.size(), [&](std::size_t i) {
      return otoc_renyi(circuit_unitary(make_circuit(8, depth, seeds[i], mode)), part).value;
    });
    return sample_stats(v);
  };
  const auto haar30 = deep_mean(GateMode::haar, 30);
  const double rel = std::abs(haar30.mean - os) / os;
  ck.expect(rel <= rel_tol, "haar depth 30 mean " + sig(haar30.mean) + " rel dev " + sig(rel));
  ck.note("haar depth 30 mean " + sig(haar30.mean) + " (rel " + sig(rel) + ")");
  const auto exp30 = deep_mean(GateMode::generator_exp, 30);
  ck.note("exp depth 30 mean " + sig(exp30.mean) + " (rel " + sig(std::abs(exp30.mean - os) / os) + ", informational)");
  return ck;
}

inline Checks route_equivalence(const AcceptanceOptions& o) {
  Checks ck;
  const double tol = 1e-9 * o.tolerance_scale;
  for (int n : {4, 6}) {
    const SubsystemPartition part(n, n / 2, n / 2);
    SeededRng rng(o.seed, 100 + static_cast<std::uint64_t>(n));
    std::vector<DenseOperator> us;
    for (std::size_t i = 0; i < 50; ++i) us.push_back(random_instance(n, i, rng));
    const auto dev = parallel_map<double>(us.size(), [&](std::size_t i) {
      return std::abs(otoc_direct(us[i], part).value - otoc_renyi(us[i], part).value);
    });
    const double worst = *std::max_element(dev.begin(), dev.end());
    ck.expect(worst <= tol, "N=" + num(n) + " max route gap " + sig(worst));
    ck.note("N=" + num(n) + " max gap " + sig(worst));
  }
  return ck;
}

inline Checks loss_correlator_identity(const AcceptanceOptions& o) {
  Checks ck;
  const double tol = 1e-10 * o.tolerance_scale;
  SeededRng rng(o.seed, 300);
  const std::vector<std::pair<int, int>> parts{{1, 1}, {2, 2}, {1, 3}, {3, 1}, {2, 1}};
  double worst = 0.0;
  for (std::size_t i = 0; i < 50; ++i) {
    const SubsystemPartition part(4, parts[i % parts.size()].first, parts[i % parts.size()].second);
    const auto u = random_instance(4, i, rng);
    const auto us = haar_unitary(16, rng);
    const auto psi = haar_state(static_cast<Eigen::Index>(part.d_a()), rng);
    worst = std::max(worst, std::abs(loss_ld(u, us, psi, part) - loss_ld_correlator(u, us, psi, part)));
  }
  ck.expect(worst <= tol, "max |L_d(Pauli) - L_d(correlators)| = " + sig(worst));
  ck.note("max gap " + sig(worst));
  return ck;
}

inline Checks true_error_monte_carlo(const AcceptanceOptions& o) {
  Checks ck;
  const SubsystemPartition part(4, 2, 2);
  SeededRng rng(o.seed, 400);
  const DenseOperator pool[] = {circuit_unitary(build_brickwall(4, 3, rng, GateMode::generator_exp)), haar_unitary(16, rng)};
  for (std::size_t k = 0; k < 2; ++k) {
    const auto& u = pool[k];
    const auto us = haar_unitary(16, rng);
    const double l = true_error_analytic(u, us, part).L;
    const auto ld = parallel_map<double>(500, [&](std::size_t i) {
      SeededRng r(o.seed, kStateStream + 1000 * k + i);
      return loss_ld(u, us, haar_state(4, r), part);
    });
    const auto st = sample_stats(ld);
    const double z = std::abs(st.mean - l) / st.stderr_;
    ck.expect(z <= 3.0 * o.tolerance_scale, "instance " + num(k) + " mean " + sig(st.mean) + " vs " + sig(l) + " (" + sig(z) + " sigma)");
    ck.note("instance " + num(k) + " " + sig(z) + " sigma");
  }
  return ck;
}

inline Checks bound_suite(const AcceptanceOptions& o) {
  Checks ck;
  const double tol = 1e-9 * o.tolerance_scale;
  const std::vector<std::pair<int, int>> parts{{2, 2}, {1, 1}, {1, 3}, {3, 1}, {2, 1}};
  SeededRng rng(o.seed, 500);
  struct Pair { DenseOperator u, us; SubsystemPartition part; };
  std::vector<Pair> pairs;
  for (std::size_t i = 0; i < 100; ++i) {
    const SubsystemPartition part(4, parts[i % parts.size()].first, parts[i % parts.size()].second);
    auto u = random_instance(4, i, rng);
    auto us = random_instance(4, i + 1, rng);
    pairs.push_back({std::move(u), std::move(us), part});
  }
  struct Row { ErrorBundle b; BoundPair r; double mi; };
  const auto rows = parallel_map<Row>(pairs.size(), [&](std::size_t i) {
    const auto& p = pairs[i];
    return Row{true_error_analytic(p.u, p.us, p.part), renyi_bound(p.u, p.us, p.part), mi_lower_bound(p.u, p.us, p.part)};
  });
  std::size_t order = 0, gap = 0, mi = 0;
  double renyi = 0.0, mi_slack = std::numeric_limits<double>::infinity();
  for (const auto& r : rows) {
    if (!(r.b.L_minus <= r.b.L + tol && r.b.L <= r.b.L_plus + tol)) ++order;
    if (std::abs(r.b.L - r.b.L_plus) > r.b.gap_bound() + tol || std::abs(r.b.L - r.b.L_minus) > r.b.gap_bound() + tol) ++gap;
    renyi = std::max({renyi, std::abs(r.r.plus - r.b.L_plus), std::abs(r.r.minus - r.b.L_minus)});
    if (r.b.L < r.mi - tol) ++mi;
    mi_slack = std::min(mi_slack, r.b.L - r.mi);
  }
  ck.expect(order == 0, num(order) + " ordering violations");
  ck.expect(gap == 0, num(gap) + " gap-inequality violations");
  ck.expect(renyi <= tol, "max Renyi-form gap " + sig(renyi));
  ck.expect(mi == 0, num(mi) + " MI-bound violations");
  ck.note("max Renyi-form gap " + sig(renyi) + ", min L - MI bound " + sig(mi_slack));
  return ck;
}

inline Checks haar_averages(const AcceptanceOptions& o) {
  Checks ck;
  const double k = 3.0 * o.tolerance_scale;
  const SubsystemPartition p4(4, 2, 2);
  const auto otocs = parallel_map<double>(200, [&](std::size_t i) {
    SeededRng r(o.seed, kTargetStream + 10'000 + i);
    return otoc(haar_unitary(16, r), p4).value;
  });
  const auto so = sample_stats(otocs);
  ck.expect(within_sigma(so, otoc_scram(p4), k), "Haar OTOC mean " + sig(so.mean) + " vs " + sig(otoc_scram(p4)));
  ck.note("OTOC mean " + sig(so.mean) + " +- " + sig(so.stderr_) + " vs " + sig(otoc_scram(p4)));

  SeededRng ur(o.seed, 600);
  const auto u = circuit_unitary(build_brickwall(4, 3, ur, GateMode::generator_exp));
  const auto ops = parallel_map<double>(200, [&](std::size_t i) {
    SeededRng r(o.seed, kTargetStream + 20'000 + i);
    return op_correlator(u, haar_unitary(16, r), p4);
  });
  const auto sp = sample_stats(ops);
  const double op_target = 1.0 / (p4.d_a() * p4.d_a());
  ck.expect(within_sigma(sp, op_target, k), "Haar OP mean " + sig(sp.mean) + " vs " + sig(op_target));
  ck.note("OP mean " + sig(sp.mean) + " +- " + sig(sp.stderr_));

  const SubsystemPartition p8(8, 3, 3);
  const double lf = l_floor(p8);
  const double exact = (2.0 / 144.0) * (64449.0 / 4194240.0);
  ck.expect(std::abs(lf - exact) <= 1e-15 * o.tolerance_scale,
            "L_floor " + num(lf) + " vs " + num(exact));
  ck.expect(std::abs(lf - 2.13e-4) <= 0.005e-4 * o.tolerance_scale, "L_floor " + sig(lf) + " vs 2.13e-4");
  const double rel_tol = 0.05 * o.tolerance_scale;
  SeededRng hr(o.seed, kTargetStream + 30'000);
  const double ls_haar = l_scram(haar_unitary(256, hr), p8);
  const double ls_circ = l_scram(circuit_unitary(make_circuit(8, 30, o.seed, GateMode::haar)), p8);
  ck.expect(std::abs(ls_haar - lf) <= rel_tol * lf, "L_scram(Haar U) " + sig(ls_haar) + " vs L_floor " + sig(lf));
  ck.expect(std::abs(ls_circ - lf) <= rel_tol * lf, "L_scram(depth-30 circuit) " + sig(ls_circ) + " vs L_floor " + sig(lf));
  ck.note("L_floor " + sig(lf) + ", L_scram Haar " + sig(ls_haar) + ", circuit " + sig(ls_circ));
  return ck;
}

inline Checks twirls(const AcceptanceOptions& o) {
  Checks ck;
  for (Eigen::Index dim : {2, 4}) {
    for (const auto& c : experiments::twirl_oracles(dim, 20000, o.seed)) {
      const double lim = 3.0 * o.tolerance_scale * (c.sigma + 1e-12);
      ck.expect(c.max_dev <= lim, c.oracle + " dim " + num(dim) + " dev " + sig(c.max_dev) + " vs " + sig(lim));
      ck.note(c.oracle + "/" + num(dim) + " " + sig(c.max_dev / (c.sigma + 1e-12)) + " sigma");
    }
  }
  return ck;
}

inline Checks gradient_audit(const AcceptanceOptions& o) {
  Checks ck;
  const double s = o.tolerance_scale;
  std::size_t fd_bad = 0, cap_bad = 0, rows = 0;
  double worst_rel = 0.0;
  for (const auto& [na, nd] : std::vector<std::pair<int, int>>{{2, 2}, {1, 1}}) {
    const SubsystemPartition part(4, na, nd);
    for (std::uint64_t k = 0; k < 3; ++k) {
      const auto c = make_circuit(4, 4, o.seed + k, GateMode::generator_exp);
      const auto us = make_target(4, o.seed + k, 4);
      SeededRng sr(o.seed + k, kStateStream);
      const auto psi = haar_state(static_cast<Eigen::Index>(part.d_a()), sr);
      for (const auto& row : experiments::gradient_audit_rows(c, us, psi, part)) {
        const auto& r = row.report;
        ++rows;
        const double diff = std::abs(r.grad_analytic - r.grad_fd);
        if (diff > s * std::max(1e-6, 1e-4 * std::abs(r.grad_fd))) ++fd_bad;
        if (std::abs(r.grad_fd) > 1e-6) worst_rel = std::max(worst_rel, diff / std::abs(r.grad_fd));
        if (!(std::abs(r.grad_analytic) <= r.bound + 1e-9 * s)) ++cap_bad;
      }
    }
  }
  ck.expect(fd_bad == 0, num(fd_bad) + " of " + num(rows) + " gradients disagree with central differences");
  ck.expect(cap_bad == 0, num(cap_bad) + " gradients exceed their caps");
  ck.note(num(rows) + " gradients, worst relative FD error " + sig(worst_rel));
  return ck;
}

inline Checks levy_concentration(const AcceptanceOptions& o) {
  Checks ck;
  const SubsystemPartition part(6, 2, 2);
  const auto c = make_circuit(6, 4, o.seed, GateMode::generator_exp);
  const auto us = make_target(6, o.seed, 4);
  std::size_t checked = 0;
  double worst = 0.0;
  for (const auto& k : experiments::levy_counts(c, us, part, {0.05, 0.2}, 1000, o.seed)) {
    if (k.quantity != "L_d" && k.quantity != "dL_d") continue;
    ++checked;
    const double ceiling = o.tolerance_scale * binomial_ceiling(k.epsilon, k.samples);
    worst = std::max(worst, k.max_deviation / k.threshold);
    ck.expect(k.fraction() <= ceiling, k.quantity + "[" + num(k.param) + "] eps " + sig(k.epsilon) + " fraction " + sig(k.fraction()));
  }
  ck.note(num(checked) + " statements, largest deviation/threshold " + sig(worst));
  return ck;
}

inline Checks landscape_flatness(const AcceptanceOptions& o) {
  Checks ck;
  const SubsystemPartition part = SubsystemPartition::from_c(8, 1, 7);
  const double thr = 0.1 * otoc_scram(part) * o.tolerance_scale;
  const auto grid = linspace(-2.0 * std::numbers::pi, 2.0 * std::numbers::pi, 65);
  const double deep = landscape_scan(make_circuit(8, 30, o.seed, GateMode::generator_exp), part, grid).flatness();
  const double shallow = landscape_scan(make_circuit(8, 2, o.seed, GateMode::generator_exp), part, grid).flatness();
  ck.expect(deep <= thr, "depth-30 spread " + sig(deep) + " vs threshold " + sig(thr));
  ck.expect(shallow > thr, "depth-2 spread " + sig(shallow) + " does not exceed threshold " + sig(thr));
  ck.note("spread depth 30 " + sig(deep) + ", depth 2 " + sig(shallow) + ", threshold " + sig(thr));
  return ck;
}

inline Checks lscram_sweep(const AcceptanceOptions& o) {
  Checks ck;
  const std::vector<int> sizes{3, 4, 5, 6, 7, 8};
  const std::vector<int> depths{0, 2, 4, 6, 8, 10, 12, 14, 16, 18, 20};
  std::vector<std::uint64_t> seeds;
  for (std::uint64_t s = 0; s < 10; ++s) seeds.push_back(o.seed + s);
  const auto pts = experiments::sweep_points(sizes, depths, seeds, GateMode::generator_exp, "renyi");
  std::map<std::tuple<int, bool, int>, std::vector<double>> groups;
  for (const auto& p : pts) {
    groups[{p.n, false, p.depth}].push_back(p.l_left);
    groups[{p.n, true, p.depth}].push_back(p.l_right);
  }
  std::size_t order_checks = 0;
  for (int n : sizes) {
    for (bool right : {false, true}) {
      std::vector<SampleStats> curve;
      for (int d : depths) curve.push_back(sample_stats(groups[{n, right, d}]));
      for (auto& c : curve) c.stderr_ *= o.tolerance_scale;
      const auto [ok, detail] = experiments::decay_check(curve);
      ck.expect(ok, "N=" + num(n) + (right ? " right " : " left ") + detail);
    }
    for (int d : depths) {
      if (d < 10) continue;
      const double l = sample_stats(groups[{n, false, d}]).mean;
      const double r = sample_stats(groups[{n, true, d}]).mean;
      ++order_checks;
      ck.expect(r < l, "N=" + num(n) + " depth " + num(d) + " right " + sig(r) + " vs left " + sig(l));
    }
  }
  ck.note(num(order_checks) + " ordering points");
  return ck;
}

inline std::vector<PauliString> random_subset(const std::vector<PauliString>& group, std::size_t k, SeededRng& rng) {
  std::vector<std::size_t> idx(group.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  for (std::size_t i = 0; i < k; ++i) {
    const auto j = i + static_cast<std::size_t>(rng.uniform() * static_cast<double>(idx.size() - i));
    std::swap(idx[i], idx[std::min(j, idx.size() - 1)]);
  }
  std::vector<PauliString> out;
  for (std::size_t i = 0; i < k; ++i) out.push_back(group[idx[i]]);
  return out;
}

inline Checks variants_and_cost(const AcceptanceOptions& o) {
  Checks ck;
  const double s = o.tolerance_scale;
  const SubsystemPartition part(4, 2, 2);
  const auto group = enumerate_group(part.n_c());
  const double dc2 = part.d_c() * part.d_c();
  SeededRng rng(o.seed, 1200);
  std::size_t chain_bad = 0;
  double full_gap = 0.0;
  for (std::size_t i = 0; i < 50; ++i) {
    const auto u = random_instance(4, i, rng);
    const auto us = random_instance(4, i + 3, rng);
    std::vector<StateVector> psis;
    for (int k = 0; k < 40; ++k) psis.push_back(haar_state(4, rng));
    const auto bundle = true_error_analytic(u, us, part);
    for (std::size_t size : {std::size_t{1}, std::size_t{4}, static_cast<std::size_t>(dc2)}) {
      const auto v = loss_variants(u, us, psis, random_subset(group, size, rng), part);
      const double scale = dc2 / static_cast<double>(size);
      const double t = 1e-12 * s;
      const bool ok = v.v3 * v.v3 <= v.v2 + t && v.v2 <= v.v1 + t && v.v1 <= scale * v.l_empirical + t &&
                      bundle.L <= bundle.L_plus + t;
      if (!ok) ++chain_bad;
      if (size == static_cast<std::size_t>(dc2)) full_gap = std::max(full_gap, std::abs(v.v1 - v.l_empirical));
    }
  }
  ck.expect(chain_bad == 0, num(chain_bad) + " variant-chain violations");
  ck.expect(full_gap <= 1e-12 * s, "full S_C gap " + sig(full_gap));

  double route = 0.0;
  for (std::size_t i = 0; i < 50; ++i) {
    const auto u = random_instance(4, i, rng);
    const auto rho = input_density(haar_state(4, rng), part);
    route = std::max(route, std::abs(cost(u, rho, part) - cost_correlator(u, rho, part)));
  }
  ck.expect(route <= 1e-10 * s, "cost route gap " + sig(route));

  const auto c = make_circuit(4, 3, o.seed, GateMode::generator_exp);
  const auto u = circuit_unitary(c);
  const auto costs = parallel_map<double>(500, [&](std::size_t i) {
    SeededRng r(o.seed, kStateStream + 50'000 + i);
    return cost(u, input_density(haar_state(4, r), part), part);
  });
  const auto sc = sample_stats(costs);
  const double cav = cost_av(u, part);
  ck.expect(within_sigma(sc, cav, 3.0 * s), "cost MC mean " + sig(sc.mean) + " vs C_av " + sig(cav));

  std::size_t fd_bad = 0;
  for (std::size_t l = 0; l < c.parameter_count(); ++l) {
    const auto r = grad_cost_av(c, part, l);
    if (std::abs(r.grad_analytic - r.grad_fd) > s * std::max(1e-6, 1e-4 * std::abs(r.grad_fd))) ++fd_bad;
  }
  ck.expect(fd_bad == 0, num(fd_bad) + " C_av gradients disagree with differences");

  const auto us = make_target(4, o.seed, 3);
  std::size_t levy_bad = 0;
  for (const auto& k : experiments::levy_counts(c, us, part, {0.05, 0.2}, 500, o.seed + 7)) {
    if (k.quantity != "cost" && k.quantity != "dcost") continue;
    if (k.fraction() > s * binomial_ceiling(k.epsilon, k.samples)) ++levy_bad;
  }
  ck.expect(levy_bad == 0, num(levy_bad) + " cost concentration statements violated");
  ck.note("cost route gap " + sig(route) + ", MC " + sig(sc.mean) + " +- " + sig(sc.stderr_) + " vs " + sig(cav));
  return ck;
}

}  // namespace acceptance

struct CriterionDef {
  int id;
  const char* name;
  std::function<acceptance::Checks(const AcceptanceOptions&)> run;
};

inline const std::vector<CriterionDef>& criteria() {
  static const std::vector<CriterionDef> list{
      {1, "otoc-depth-reproduction", acceptance::otoc_vs_depth},
      {2, "otoc-route-equivalence", acceptance::route_equivalence},
      {3, "loss-correlator-identity", acceptance::loss_correlator_identity},
      {4, "true-error-monte-carlo", acceptance::true_error_monte_carlo},
      {5, "error-bound-suite", acceptance::bound_suite},
      {6, "haar-average-checks", acceptance::haar_averages},
      {7, "twirl-oracles", acceptance::twirls},
      {8, "gradient-audit", acceptance::gradient_audit},
      {9, "levy-concentration", acceptance::levy_concentration},
      {10, "landscape-flatness", acceptance::landscape_flatness},
      {11, "lscram-sweep", acceptance::lscram_sweep},
      {12, "loss-variants-and-cost", acceptance::variants_and_cost},
  };
  return list;
}

inline CriterionResult run_criterion(const CriterionDef& c, const AcceptanceOptions& o) {
  const auto t0 = std::chrono::steady_clock::now();
  CriterionResult r{c.id, c.name, false, "", 0.0};
  try {
    const auto ck = c.run(o);
    r.passed = ck.passed();
    r.detail = ck.detail();
  } catch (const std::exception& e) {
    r.detail = std::string("exception: ") + e.what();
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

/// Runs the selected criteria (all when `only` is empty), calling `report`
/// after each one.
inline std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& o, const std::vector<int>& only = {},
                                                   const std::function<void(const CriterionResult&)>& report = {}) {
  std::vector<CriterionResult> out;
  for (const auto& c : criteria()) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    out.push_back(run_criterion(c, o));
    if (report) report(out.back());
  }
  return out;
}

inline std::string format_result(const CriterionResult& r) {
  char head[96];
  std::snprintf(head, sizeof head, "[%s] %2d %-26s %7.2fs  ", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str(), r.seconds);
  return head + r.detail;
}

inline std::vector<JUnitCase> to_junit(const std::vector<CriterionResult>& results) {
  std::vector<JUnitCase> cases;
  for (const auto& r : results) cases.push_back({std::to_string(r.id) + "-" + r.name, r.passed, r.detail, r.seconds});
  return cases;
}

}  // namespace scramblenet::harness
