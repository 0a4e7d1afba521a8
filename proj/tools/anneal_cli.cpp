// Command-line front end: classical knapsack solving, Ising encodings,
// spectral-gap sweeps, quantum-search demos, phase-boundary tabulation, and
// ground-state verification against the classical optimum.
//
// Exit codes: 0 success, 2 validation error, 3 resource cap exceeded,
// 4 verification failure, 5 numerical non-convergence.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "anneal/io.hpp"
#include "anneal/knapsack.hpp"
#include "anneal/phase.hpp"
#include "anneal/qubo.hpp"
#include "anneal/quadrature.hpp"
#include "anneal/spectral.hpp"
#include "anneal/svg.hpp"

namespace {

using namespace anneal;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitResourceCap = 3;
constexpr int kExitVerifyFail = 4;
constexpr int kExitNoConvergence = 5;

struct RunConfig {
  std::string instance_path;
  std::string encoding = "log";
  std::int64_t penalty_a = 0;  // 0 = default max(p)+1
  std::int64_t penalty_b = 1;
  std::string driver = "tf";
  double h0 = 1.0;
  int grid = 101;
  std::string csv_path, svg_path, json_path;
  double alpha_min = -10.0, alpha_max = 10.0;
  int alpha_steps = 201;
  double mu_min = 0.0, mu_max = 0.0;
  int mu_steps = 0;
  std::string fidelity = "derived";
  std::string values_arg;
  std::int64_t blind_a = 0;
};

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& ex) {
    throw std::runtime_error(path + ": " + ex.what());
  }
  return j;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

std::vector<std::int64_t> parse_values(const std::string& arg) {
  std::vector<std::int64_t> values;
  std::stringstream ss(arg);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (!token.empty()) values.push_back(std::stoll(token));
  }
  return values;
}

DriverSpec make_driver(const RunConfig& cfg) {
  DriverSpec driver;
  driver.kind = cfg.driver == "xx" ? DriverKind::PairwiseXX : DriverKind::TransverseField;
  driver.h0 = cfg.h0;
  return driver;
}

std::string items_string(const std::vector<int>& items) {
  std::string out = "{";
  for (std::size_t i = 0; i < items.size(); ++i)
    out += std::to_string(items[i] + 1) + (i + 1 < items.size() ? "," : "");
  return out + "}";
}

std::pair<QuadraticBinaryModel, EncodingMap> build_encoding(
    const KnapsackInstance& inst, const RunConfig& cfg) {
  const std::int64_t a = cfg.penalty_a > 0 ? cfg.penalty_a : default_penalty(inst);
  if (cfg.encoding == "unary") return build_unary_knapsack(inst, a, cfg.penalty_b);
  return build_log_knapsack(inst, a, cfg.penalty_b);
}

int cmd_solve(const RunConfig& cfg) {
  const KnapsackInstance inst = instance_from_json(load_json_file(cfg.instance_path));
  const DpResult dp = solve_dp(inst);
  const KnapsackSolution stop = solve_greedy(inst, GreedyVariant::Stop);
  const KnapsackSolution skip = solve_greedy(inst, GreedyVariant::Skip);

  std::cout << "dp:           profit " << dp.solution.profit << ", weight "
            << dp.solution.weight << ", items " << items_string(dp.solution.items())
            << "\n";
  std::cout << "greedy-stop:  profit " << stop.profit << ", items "
            << items_string(stop.items()) << "\n";
  std::cout << "greedy-skip:  profit " << skip.profit << ", items "
            << items_string(skip.items()) << "\n";

  json report = {{"dp", solution_to_json(dp.solution)},
                 {"greedy_stop", solution_to_json(stop)},
                 {"greedy_skip", solution_to_json(skip)}};
  if (inst.size() <= 20) {
    const KnapsackSolution brute = solve_brute(inst);
    std::cout << "brute:        profit " << brute.profit
              << (brute.profit == dp.solution.profit ? " (confirms dp)" : " (MISMATCH)")
              << "\n";
    report["brute"] = solution_to_json(brute);
  }
  if (!cfg.json_path.empty()) write_file(cfg.json_path, report.dump(2) + "\n");
  return kExitOk;
}

int cmd_encode(const RunConfig& cfg) {
  const KnapsackInstance inst = instance_from_json(load_json_file(cfg.instance_path));
  auto [model, map] = build_encoding(inst, cfg);
  const IsingModel ising = to_ising(model);
  std::cout << "encoding " << to_string(map.kind) << ": " << map.num_qubits()
            << " qubits (" << map.num_items << " item + " << map.slack_coeffs.size()
            << " slack), A=" << map.penalty_a << ", B=" << map.profit_scale_b << "\n";
  const json out = ising_to_json(ising, map);
  if (!cfg.json_path.empty())
    write_file(cfg.json_path, out.dump(2) + "\n");
  else
    std::cout << out.dump(2) << "\n";
  return kExitOk;
}

int sweep_and_report(const DiagonalOperator& diag, const RunConfig& cfg) {
  const GapCurve curve = sweep_gap_refined(make_driver(cfg), diag, cfg.grid, 20);
  std::cout << "min_gap " << curve.min_gap << " at s=" << curve.argmin_s
            << ", T_suggest " << curve.suggested_time() << "\n";
  if (!cfg.csv_path.empty()) write_file(cfg.csv_path, gap_curve_csv(curve));
  if (!cfg.svg_path.empty())
    write_file(cfg.svg_path,
               svg_line_chart(curve.s_values, curve.gap, "s", "gap", "gap vs s"));
  return kExitOk;
}

int cmd_gap(const RunConfig& cfg) {
  const KnapsackInstance inst = instance_from_json(load_json_file(cfg.instance_path));
  auto [model, map] = build_encoding(inst, cfg);
  if (map.num_qubits() > 24) {
    const int log_qubits = inst.size() + static_cast<int>(std::log2(inst.capacity)) + 1;
    std::cerr << "TOO_MANY_QUBITS: " << to_string(map.kind) << " encoding needs "
              << map.num_qubits() << " qubits (unary: " << inst.size() + inst.capacity
              << ", log: " << log_qubits << "); cap is 24\n";
    return kExitResourceCap;
  }
  std::cout << to_string(map.kind) << " encoding, " << map.num_qubits() << " qubits\n";
  const DiagonalOperator diag = diagonalize_problem(to_ising(model));
  return sweep_and_report(diag, cfg);
}

int cmd_search(const RunConfig& cfg) {
  std::vector<std::int64_t> values;
  if (!cfg.values_arg.empty())
    values = parse_values(cfg.values_arg);
  else if (!cfg.instance_path.empty())
    values = values_from_json(load_json_file(cfg.instance_path));
  if (values.size() < 2) {
    std::cerr << "need at least 2 values (--values or --instance)\n";
    return kExitValidation;
  }
  if (static_cast<int>(values.size()) > 24) {
    std::cerr << "TOO_MANY_QUBITS: " << values.size() << " values; cap is 24\n";
    return kExitResourceCap;
  }

  const std::int64_t max_value = *std::max_element(values.begin(), values.end());
  const bool blind = cfg.blind_a > 0;
  const std::int64_t a = blind ? cfg.blind_a
                               : (cfg.penalty_a > 0 ? cfg.penalty_a
                                                    : cfg.penalty_b * max_value + 1);
  auto [model, map] = build_search_model(values, a, cfg.penalty_b, !blind);
  const DiagonalOperator diag = diagonalize_problem(to_ising(model));

  std::vector<GroundDecoding> decodings;
  try {
    decodings = ground_state_decode(diag, map, 1e-9);
  } catch (const SpectralFailure& ex) {
    if (ex.code != SpectralError::GroundStateInfeasible) throw;
    std::cerr << "FAIL: " << ex.what() << " (A=" << a
              << "; penalty too small to isolate a one-hot ground state)\n";
    return kExitVerifyFail;
  }
  std::cout << values.size() << " values, A=" << a << (blind ? " (blind)" : "") << "\n";
  std::int64_t decoded_max = -1;
  for (const auto& g : decodings) {
    const auto items = KnapsackSolution{g.decoded.selection, 0, 0, SolveMethod::Brute}.items();
    for (int i : items) {
      decoded_max = std::max(decoded_max, values[i]);
      std::cout << "ground state: one-hot at index " << i + 1 << " (value " << values[i]
                << ")\n";
    }
  }
  std::cout << "decoded maximum " << decoded_max
            << (decodings.size() > 1 ? " (" + std::to_string(decodings.size()) +
                                           " degenerate ground states)"
                                     : "")
            << "\n";
  const int rc = sweep_and_report(diag, cfg);
  if (rc != kExitOk) return rc;
  if (decoded_max != max_value) {
    std::cerr << "decoded maximum " << decoded_max << " != true maximum " << max_value
              << "\n";
    return kExitVerifyFail;
  }
  return kExitOk;
}

int cmd_phase(const RunConfig& cfg) {
  if (cfg.alpha_steps < 1) {
    std::cerr << "alpha grid must be non-empty\n";
    return kExitValidation;
  }
  const bool constrained = cfg.mu_steps > 0;
  const ClosedFormFidelity fidelity = cfg.fidelity == "paper"
                                          ? ClosedFormFidelity::Paper
                                          : ClosedFormFidelity::Derived;
  std::vector<PhaseRow> rows;
  bool any_failed = false;

  auto alpha_at = [&](int i) {
    return cfg.alpha_steps == 1
               ? cfg.alpha_min
               : cfg.alpha_min + (cfg.alpha_max - cfg.alpha_min) * i / (cfg.alpha_steps - 1);
  };
  auto mu_at = [&](int i) {
    return cfg.mu_steps <= 1
               ? cfg.mu_min
               : cfg.mu_min + (cfg.mu_max - cfg.mu_min) * i / (cfg.mu_steps - 1);
  };

  for (int ia = 0; ia < cfg.alpha_steps; ++ia) {
    const double alpha = alpha_at(ia);
    for (int im = 0; im < std::max(cfg.mu_steps, 1); ++im) {
      const double mu = constrained ? mu_at(im) : 0.0;
      PhaseRow row;
      row.quad.alpha = alpha;
      row.quad.mu = mu;
      try {
        if (constrained) {
          if (std::fabs(alpha) >= 1e-3) {
            const auto result = constrained_closed(alpha, mu, fidelity);
            row.quad = result.quad;
            row.closed = result.point;
            row.deviation = result.max_deviation;
          } else {
            row.quad = constrained_quad(alpha, mu);
            row.closed = row.quad;  // closed form singular; quadrature is the limit
          }
        } else {
          row.quad = unconstrained_quad(alpha);
          row.closed = unconstrained_closed(alpha);
          row.deviation = std::max(std::fabs(row.closed.x - row.quad.x),
                                   std::fabs(row.closed.kappa_c - row.quad.kappa_c));
        }
      } catch (const QuadratureFailure&) {
        row.failed = true;
        any_failed = true;
      }
      rows.push_back(row);
    }
  }

  const std::string csv = phase_csv(rows);
  if (!cfg.csv_path.empty())
    write_file(cfg.csv_path, csv);
  else
    std::cout << csv;
  if (any_failed) std::cerr << "warning: some rows flagged QUADRATURE_FAILED\n";
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg) {
  const KnapsackInstance inst = instance_from_json(load_json_file(cfg.instance_path));
  auto [model, map] = build_encoding(inst, cfg);
  if (map.num_qubits() > 24) {
    std::cerr << "TOO_MANY_QUBITS: " << map.num_qubits() << " qubits; cap is 24\n";
    return kExitResourceCap;
  }
  const DpResult dp = solve_dp(inst);
  const DiagonalOperator diag = diagonalize_problem(to_ising(model));

  std::vector<GroundDecoding> decodings;
  try {
    decodings = ground_state_decode(diag, map, 1e-6);
  } catch (const SpectralFailure& ex) {
    std::cerr << "FAIL: " << ex.what() << " (A=" << map.penalty_a
              << ", B=" << map.profit_scale_b << "; penalty likely too small)\n";
    return kExitVerifyFail;
  }

  bool ok = true;
  for (const auto& g : decodings) {
    std::int64_t profit = 0;
    for (int i = 0; i < inst.size(); ++i)
      if (g.decoded.selection[i]) profit += inst.profits[i];
    std::cout << "ground state " << g.basis_index << ": profit " << profit << ", weight "
              << g.decoded.total_weight << ", slack " << g.decoded.slack_value << "\n";
    if (profit != dp.solution.profit) ok = false;
  }
  if (ok) {
    std::cout << "PASS: " << decodings.size() << " ground state(s) match dp optimum "
              << dp.solution.profit << "\n";
    return kExitOk;
  }
  std::cerr << "FAIL: ground-state profit differs from dp optimum "
            << dp.solution.profit << "\n";
  return kExitVerifyFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ising/QUBO encodings of knapsack and maximum search, "
               "adiabatic spectral-gap sweeps, and subset-sum phase boundary tables"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_instance = [&](CLI::App* sub, bool required = true) {
    auto* opt = sub->add_option("--instance", cfg.instance_path, "instance JSON file");
    if (required) opt->required();
  };
  auto add_encoding = [&](CLI::App* sub) {
    sub->add_option("--encoding", cfg.encoding, "slack encoding")
        ->check(CLI::IsMember({"unary", "log"}));
    sub->add_option("--A", cfg.penalty_a, "constraint penalty A (default max(p)+1)");
    sub->add_option("--B", cfg.penalty_b, "profit scale B (default 1)");
  };
  auto add_spectral = [&](CLI::App* sub) {
    sub->add_option("--driver", cfg.driver, "initial Hamiltonian")
        ->check(CLI::IsMember({"tf", "xx"}));
    sub->add_option("--h0", cfg.h0, "driver field strength");
    sub->add_option("--grid", cfg.grid, "number of schedule points");
    sub->add_option("--csv", cfg.csv_path, "gap curve CSV output");
    sub->add_option("--svg", cfg.svg_path, "gap curve SVG output");
  };

  auto* solve = app.add_subcommand("solve", "classical solvers on an instance");
  add_instance(solve);
  solve->add_option("--json", cfg.json_path, "machine-readable report");

  auto* encode = app.add_subcommand("encode", "build and export an Ising model");
  add_instance(encode);
  add_encoding(encode);
  encode->add_option("--json", cfg.json_path, "Ising export file");

  auto* gap = app.add_subcommand("gap", "spectral-gap sweep of an encoded instance");
  add_instance(gap);
  add_encoding(gap);
  add_spectral(gap);

  auto* search = app.add_subcommand("search", "maximum-search Hamiltonian demo");
  add_instance(search, false);
  search->add_option("--values", cfg.values_arg, "comma-separated positive integers");
  search->add_option("--B", cfg.penalty_b, "value scale B (default 1)");
  search->add_option("--A", cfg.penalty_a, "penalty A (default B*max+1)");
  search->add_option("--blind-A", cfg.blind_a, "penalty A without knowing the maximum");
  add_spectral(search);

  auto* phase = app.add_subcommand("phase", "subset-sum phase boundary table");
  phase->add_option("--alpha-min", cfg.alpha_min);
  phase->add_option("--alpha-max", cfg.alpha_max);
  phase->add_option("--alpha-steps", cfg.alpha_steps);
  phase->add_option("--mu-min", cfg.mu_min);
  phase->add_option("--mu-max", cfg.mu_max);
  phase->add_option("--mu-steps", cfg.mu_steps, "enable constrained mode when > 0");
  phase->add_option("--fidelity", cfg.fidelity)
      ->check(CLI::IsMember({"paper", "derived"}));
  phase->add_option("--csv", cfg.csv_path, "phase CSV output");

  auto* verify = app.add_subcommand("verify", "check ground state against dp optimum");
  add_instance(verify);
  add_encoding(verify);

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve->parsed()) return cmd_solve(cfg);
    if (encode->parsed()) return cmd_encode(cfg);
    if (gap->parsed()) return cmd_gap(cfg);
    if (search->parsed()) return cmd_search(cfg);
    if (phase->parsed()) return cmd_phase(cfg);
    if (verify->parsed()) return cmd_verify(cfg);
  } catch (const InvalidInstance& ex) {
    std::cerr << "invalid instance: " << ex.what() << "\n";
    return kExitValidation;
  } catch (const EncodingFailure& ex) {
    std::cerr << "encoding error: " << ex.what() << "\n";
    return kExitValidation;
  } catch (const SpectralFailure& ex) {
    std::cerr << "spectral error: " << ex.what() << "\n";
    return ex.code == SpectralError::TooManyQubits ? kExitResourceCap
                                                   : kExitNoConvergence;
  } catch (const QuadratureFailure& ex) {
    std::cerr << "quadrature error: " << ex.what() << "\n";
    return kExitNoConvergence;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitValidation;
  }
  return kExitOk;
}
