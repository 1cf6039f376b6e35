#include "scramblenet/circuit_io.hpp"
#include "scramblenet/harness/acceptance.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>

namespace sn = scramblenet;
namespace hn = scramblenet::harness;

namespace {

struct RunFlags {
  std::string config_path;
  std::optional<std::string> experiment, gate_mode, route, out;
  std::optional<int> n_qubits, n_a, n_d, samples;
  std::optional<std::uint64_t> seed;
  std::vector<int> sizes, depths;
  std::vector<std::uint64_t> seeds;
  std::vector<double> eps_grid;
  std::vector<std::string> tolerances;
};

hn::ExperimentConfig resolve(const RunFlags& f) {
  hn::ExperimentConfig c = f.config_path.empty() ? hn::ExperimentConfig{} : hn::load_config(f.config_path);
  if (f.experiment) c.experiment = *f.experiment;
  if (f.n_qubits) c.n_qubits = *f.n_qubits;
  if (f.n_a) c.n_a = *f.n_a;
  if (f.n_d) c.n_d = *f.n_d;
  if (f.samples) c.samples = *f.samples;
  if (f.gate_mode) c.gate_mode = *f.gate_mode;
  if (f.route) c.route = *f.route;
  if (f.out) c.output_dir = *f.out;
  if (!f.sizes.empty()) c.sizes = f.sizes;
  if (!f.depths.empty()) c.depths = f.depths;
  if (!f.seeds.empty()) c.seeds = f.seeds;
  if (f.seed) c.seeds = {*f.seed};
  if (!f.eps_grid.empty()) c.epsilon_grid = f.eps_grid;
  for (const auto& kv : f.tolerances) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw sn::ArgumentError("--tol expects key=value, got " + kv);
    c.tolerances[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
  }
  hn::validate(c);
  return c;
}

int cmd_run(const RunFlags& f) {
  const auto cfg = resolve(f);
  const auto result = hn::run(cfg);
  for (const auto& file : result.files) std::cout << "wrote " << file << '\n';
  for (const auto& a : result.assertions) {
    std::cout << (a.passed ? "[PASS] " : "[FAIL] ") << a.name << "  " << a.detail << '\n';
  }
  std::cout << (result.ok() ? "all assertions passed" : "assertion failures") << " (config_hash " << hn::config_hash(cfg) << ")\n";
  return result.ok() ? 0 : 1;
}

int cmd_verify(std::uint64_t seed, double scale, const std::vector<int>& only, const std::string& junit) {
  hn::AcceptanceOptions opt{seed, scale};
  const auto results = hn::run_acceptance(opt, only, [](const hn::CriterionResult& r) {
    std::cout << hn::format_result(r) << std::endl;
  });
  std::size_t failed = 0;
  for (const auto& r : results) failed += r.passed ? 0 : 1;
  std::cout << results.size() - failed << "/" << results.size() << " criteria passed\n";
  if (!junit.empty()) {
    std::ofstream out(junit, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + junit);
    out << hn::render_junit("scramblenet-acceptance", hn::to_junit(results));
  }
  return failed == 0 ? 0 : 1;
}

int cmd_otoc(const std::string& path, int na, int nd, const std::string& route) {
  const auto c = sn::load_circuit(path);
  const sn::SubsystemPartition part(c.n_qubits(), na, nd);
  const auto u = sn::circuit_unitary(c);
  const auto r = hn::otoc_by_route(u, part, route);
  nlohmann::json j{{"partition", part.str()},
                   {"route", sn::to_string(r.route)},
                   {"otoc", r.value},
                   {"otoc_scram", sn::otoc_scram(part)},
                   {"l_scram", sn::l_scram_from_otoc(r.value, part)},
                   {"l_floor", sn::l_floor(part)}};
  std::cout << j.dump(2) << '\n';
  return 0;
}

int cmd_circuit(int n, int depth, std::uint64_t seed, const std::string& mode, const std::string& out) {
  if (mode != "exp" && mode != "haar") throw sn::ArgumentError("--mode must be exp or haar");
  const auto c = hn::make_circuit(n, depth, seed, mode == "haar" ? sn::GateMode::haar : sn::GateMode::generator_exp);
  if (out.empty()) {
    std::cout << sn::circuit_to_json(c).dump(2) << '\n';
  } else {
    sn::save_circuit(c, out);
    std::cout << "wrote " << out << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"scramblenet: scrambling, OTOC and true-error bounds for brick-wall quantum circuits"};
  app.set_version_flag("--version", hn::kVersion);
  app.require_subcommand(1);

  RunFlags rf;
  auto* run = app.add_subcommand("run", "run one configured experiment");
  run->add_option("--config", rf.config_path, "JSON experiment config")->check(CLI::ExistingFile);
  run->add_option("--experiment", rf.experiment, "experiment kind");
  run->add_option("--n-qubits", rf.n_qubits, "total qubits N");
  run->add_option("--na", rf.n_a, "input subsystem size N_A");
  run->add_option("--nd", rf.n_d, "discarded subsystem size N_D");
  run->add_option("--sizes", rf.sizes, "qubit counts or twirl dimensions");
  run->add_option("--depths", rf.depths, "circuit depths");
  run->add_option("--seeds", rf.seeds, "seed list");
  run->add_option("--seed", rf.seed, "single seed (replaces the seed list)");
  run->add_option("--samples", rf.samples, "Monte-Carlo samples");
  run->add_option("--eps-grid", rf.eps_grid, "epsilon grid");
  run->add_option("--gate-mode", rf.gate_mode, "exp | haar");
  run->add_option("--route", rf.route, "auto | direct | renyi");
  run->add_option("--tol", rf.tolerances, "tolerance override key=value");
  run->add_option("--out", rf.out, "output directory");

  std::uint64_t v_seed = 1;
  double v_scale = 1.0;
  std::vector<int> v_only;
  std::string v_junit;
  auto* verify = app.add_subcommand("verify", "run the acceptance criteria");
  verify->add_option("--seed", v_seed, "base seed");
  verify->add_option("--tolerance-scale", v_scale, "multiply every tolerance (0 forces failures)");
  verify->add_option("--only", v_only, "criterion ids to run");
  verify->add_option("--junit", v_junit, "write a JUnit XML report here");

  std::string o_circuit, o_route = "auto";
  int o_na = 1, o_nd = 1;
  auto* otoc = app.add_subcommand("otoc", "averaged OTOC of a saved circuit");
  otoc->add_option("--circuit", o_circuit, "circuit JSON (format v1)")->required()->check(CLI::ExistingFile);
  otoc->add_option("--na", o_na, "N_A")->required();
  otoc->add_option("--nd", o_nd, "N_D")->required();
  otoc->add_option("--route", o_route, "auto | direct | renyi");

  int c_n = 8, c_depth = 30;
  std::uint64_t c_seed = 1;
  std::string c_mode = "exp", c_out;
  auto* circuit = app.add_subcommand("circuit", "generate a random brick-wall circuit as JSON");
  circuit->add_option("--n", c_n, "qubits");
  circuit->add_option("--depth", c_depth, "layers");
  circuit->add_option("--seed", c_seed, "seed");
  circuit->add_option("--mode", c_mode, "exp | haar");
  circuit->add_option("--out", c_out, "output path (stdout if omitted)");

  CLI11_PARSE(app, argc, argv);
  try {
    if (*run) return cmd_run(rf);
    if (*verify) return cmd_verify(v_seed, v_scale, v_only, v_junit);
    if (*otoc) return cmd_otoc(o_circuit, o_na, o_nd, o_route);
    if (*circuit) return cmd_circuit(c_n, c_depth, c_seed, c_mode, c_out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
