#include "cli/commands.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "cli/design_file.hpp"
#include "cli/trace_file.hpp"
#include "spinstar/designer.hpp"
#include "spinstar/dynamics.hpp"
#include "spinstar/switchboard.hpp"

namespace spinstar::cli {
namespace {

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void render_feasibility(std::ostream& err, const FeasibilityReport& r) {
  err << "infeasible: g_M(e; eta) has no positive root for M=" << r.m
      << ", eta=" << num(r.eta) << "\n";
  if (r.e_star_defined) {
    err << "  e_*                      " << num(r.e_star) << "\n";
  } else {
    err << "  e_*                      undefined (eta <= 1)\n";
  }
  err << "  g_min                    " << num(r.g_min) << " (feasible requires < 0)\n";
  err << "  asymptotic eta estimate  " << num(r.asymptotic_threshold) << "\n";
  err << "  smallest feasible even eta " << min_feasible_even_eta(r.m) << "\n";
}

void render_verification(std::ostream& out, const VerificationReport& r, NodeIndex source,
                         NodeIndex target) {
  out << "verification: " << (r.passed ? "PASSED" : "FAILED") << "\n";
  out << "  route                    " << source << " -> " << target << "\n";
  out << "  tolerance                " << num(r.tolerance) << "\n";
  out << "  spectrum_deviation       " << num(r.spectrum_deviation) << "\n";
  out << "  fidelity_at_tau          " << num(r.fidelity_at_tau) << "\n";
  out << "  reduced_fidelity         " << num(r.reduced_fidelity) << "\n";
  out << "  full_fidelity            " << num(r.full_fidelity) << "\n";
  out << "  amplitude_at_tau         " << num(r.amplitude_at_tau.real()) << " "
      << (r.amplitude_at_tau.imag() < 0 ? "- " : "+ ") << num(std::abs(r.amplitude_at_tau.imag()))
      << "i\n";
  out << "  amplitude_real_positive  " << (r.amplitude_real_positive ? "yes" : "no") << "\n";
  out << "  reduction_deviation      " << num(r.reduction_deviation) << "\n";
  out << "  params_deviation         " << num(r.params_deviation) << "\n";
  out << "  parity_check             " << (r.parity_check ? "yes" : "no") << "\n";
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error("cannot write '" + path + "'");
  file << text;
  if (!file) throw Error("failed writing '" + path + "'");
}

struct DesignArgs {
  int bystanders = 0;
  int eta = 0;
  std::string root = "smallest";
  std::string out;
};

int run_design(const DesignArgs& args, std::ostream& out, std::ostream& err) {
  DesignInput input;
  input.m = args.bystanders;
  input.eta = args.eta;
  input.root = RootChoice::parse(args.root);
  try {
    const DesignSolution solution = design(input);
    emit(serialize_design(route(solution)), args.out, out);
  } catch (const InfeasibleDesignError& e) {
    render_feasibility(err, e.report());
    return kExitInfeasible;
  }
  return kExitOk;
}

struct SimulateArgs {
  std::string design;
  std::optional<double> t_max;
  std::size_t steps = 1000;
  std::optional<std::size_t> source;
  std::optional<std::size_t> target;
  bool full = false;
  bool reduced = false;
  std::string out;
};

int run_simulate(const SimulateArgs& args, std::ostream& out) {
  const RoutingState state = read_design_file(args.design);
  const NodeIndex source = args.source.value_or(state.source);
  const NodeIndex target = args.target.value_or(state.target);
  const std::vector<double> grid =
      simulation_grid(state.base.transfer_time, args.t_max, args.steps);

  FidelityTrace trace;
  if (args.full) {
    if (state.realized_spec.edge_count > kMaxFullEdges) {
      throw ResourceLimitError("--full is limited to " + std::to_string(kMaxFullEdges) +
                               " edge nodes");
    }
    const StarSpec& star = state.realized_spec;
    const auto n = static_cast<NodeIndex>(star.edge_count);
    if (source < 1 || source > n || target < 1 || target > n || source == target) {
      throw ValidationError("source and target must be distinct edge nodes in 1.." +
                            std::to_string(n));
    }
    trace = ArrowheadSpectrum(build_arrowhead(star)).fidelity_trace(grid, source, target);
  } else {
    const ReducedParams p = build_reduced(state.realized_spec, source, target);
    trace = fidelity_trace(reduced_matrix(p), grid, kReducedSource, kReducedTarget);
  }

  std::ostringstream csv;
  write_trace(csv, trace);
  emit(csv.str(), args.out, out);
  return kExitOk;
}

int run_verify(const std::string& path, double tol, std::ostream& out) {
  const RoutingState state = read_design_file(path);
  const VerificationReport report =
      verify_route(state.base, state.realized_spec, state.source, state.target, tol);
  render_verification(out, report, state.source, state.target);
  return report.passed ? kExitOk : kExitFailure;
}

struct SweepArgs {
  int m_min = 1;
  int m_max = 1;
  std::optional<int> eta_max;
};

int run_sweep(const SweepArgs& args, std::ostream& out) {
  if (args.m_min < 1 || args.m_max < args.m_min) {
    throw ValidationError("sweep needs 1 <= m-min <= m-max");
  }
  out << "M,eta,e,a,d,tau,abs_a_over_sqrtM,abs_d_over_sqrtM\n";
  for (int m = args.m_min; m <= args.m_max; ++m) {
    const int eta = min_feasible_even_eta(m);
    if (args.eta_max && eta > *args.eta_max) {
      out << m << ",infeasible,,,,,,\n";
      continue;
    }
    const DesignSolution s = design({m, eta, RootChoice::smallest()});
    const double root_m = std::sqrt(static_cast<double>(m));
    out << m << "," << eta << "," << num(s.params.e) << "," << num(s.params.a) << ","
        << num(s.params.d) << "," << num(s.transfer_time) << ","
        << num(std::abs(s.params.a) / root_m) << "," << num(std::abs(s.params.d) / root_m)
        << "\n";
  }
  return kExitOk;
}

int run_retarget(const std::string& path, std::size_t target, const std::string& out_path,
                 std::ostream& out) {
  const RoutingState state = read_design_file(path);
  emit(serialize_design(retarget(state, target)), out_path, out);
  return kExitOk;
}

}  // namespace

std::vector<double> simulation_grid(double tau, std::optional<double> t_max, std::size_t steps) {
  if (steps == 0) throw ValidationError("--steps must be at least 1");
  if (t_max) return uniform_grid(*t_max, steps);
  if (!(tau > 0.0) || !std::isfinite(tau)) throw ValidationError("tau must be positive");
  if (steps == 1) return {0.0};

  const auto intervals = static_cast<double>(steps - 1);
  const double per_tau = std::max(1.0, std::round(intervals / 1.2));
  const double spacing = tau / per_tau;
  std::vector<double> grid(steps);
  for (std::size_t k = 0; k < steps; ++k) grid[k] = spacing * static_cast<double>(k);
  const auto tau_index = static_cast<std::size_t>(per_tau);
  if (tau_index < steps) grid[tau_index] = tau;
  return grid;
}

int execute(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Spin-star quantum switch designer and simulator", "spinstar"};
  app.require_subcommand(1);

  DesignArgs design_args;
  auto* design_cmd = app.add_subcommand("design", "Solve for a switch design");
  design_cmd->add_option("--bystanders", design_args.bystanders, "Bystander count M")
      ->required()
      ->check(CLI::PositiveNumber);
  design_cmd->add_option("--eta", design_args.eta, "Even spectrum ratio eta")->required();
  design_cmd->add_option("--root", design_args.root, "smallest | largest | index:k");
  design_cmd->add_option("--out", design_args.out, "Output design file (stdout if omitted)");

  SimulateArgs sim_args;
  auto* sim_cmd = app.add_subcommand("simulate", "Write a fidelity trace for a design");
  sim_cmd->add_option("--design", sim_args.design, "Design file")->required();
  sim_cmd->add_option("--t-max", sim_args.t_max, "End time (default about 1.2 tau)");
  sim_cmd->add_option("--steps", sim_args.steps, "Number of grid points")
      ->check(CLI::PositiveNumber);
  sim_cmd->add_option("--source", sim_args.source, "Source node");
  sim_cmd->add_option("--target", sim_args.target, "Target node");
  auto* full_flag = sim_cmd->add_flag("--full", sim_args.full, "Evolve the full star");
  auto* reduced_flag =
      sim_cmd->add_flag("--reduced", sim_args.reduced, "Evolve the 4x4 model (default)");
  full_flag->excludes(reduced_flag);
  sim_cmd->add_option("--out", sim_args.out, "Output CSV")->required();

  std::string verify_path;
  double verify_tol = kDefaultVerifyTolerance;
  auto* verify_cmd = app.add_subcommand("verify", "Check a design end to end");
  verify_cmd->add_option("--design", verify_path, "Design file")->required();
  verify_cmd->add_option("--tol", verify_tol, "Tolerance")->check(CLI::PositiveNumber);

  SweepArgs sweep_args;
  auto* sweep_cmd = app.add_subcommand("sweep", "Minimal-eta designs over a range of M");
  sweep_cmd->add_option("--m-min", sweep_args.m_min, "First M")->required();
  sweep_cmd->add_option("--m-max", sweep_args.m_max, "Last M")->required();
  sweep_cmd->add_option("--eta-max", sweep_args.eta_max, "Largest eta to accept");

  std::string retarget_path;
  std::size_t retarget_node = 0;
  std::string retarget_out;
  auto* retarget_cmd = app.add_subcommand("retarget", "Route a design to another target");
  retarget_cmd->add_option("--design", retarget_path, "Design file")->required();
  retarget_cmd->add_option("--target", retarget_node, "New target node")->required();
  retarget_cmd->add_option("--out", retarget_out, "Output design file")->required();

  std::vector<std::string> storage;
  storage.reserve(args.size() + 1);
  storage.emplace_back("spinstar");
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (std::string& s : storage) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitFailure;
  }

  try {
    if (*design_cmd) return run_design(design_args, out, err);
    if (*sim_cmd) return run_simulate(sim_args, out);
    if (*verify_cmd) return run_verify(verify_path, verify_tol, out);
    if (*sweep_cmd) return run_sweep(sweep_args, out);
    if (*retarget_cmd) return run_retarget(retarget_path, retarget_node, retarget_out, out);
  } catch (const InfeasibleDesignError& e) {
    render_feasibility(err, e.report());
    return kExitInfeasible;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitFailure;
}

}  // namespace spinstar::cli
