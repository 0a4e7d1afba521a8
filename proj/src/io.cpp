#include "anneal/io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace anneal {

namespace {

using nlohmann::json;

// 12 significant digits, no trailing noise, stable across runs.
std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

EncodingKind kind_from_string(const std::string& s) {
  if (s == "unary") return EncodingKind::Unary;
  if (s == "log") return EncodingKind::Log;
  if (s == "search") return EncodingKind::Search;
  throw std::invalid_argument("unknown encoding kind: " + s);
}

}  // namespace

KnapsackInstance instance_from_json(const json& j) {
  return KnapsackInstance::validated(j.at("profits").get<std::vector<std::int64_t>>(),
                                     j.at("weights").get<std::vector<std::int64_t>>(),
                                     j.at("capacity").get<std::int64_t>());
}

json instance_to_json(const KnapsackInstance& inst) {
  return {{"profits", inst.profits}, {"weights", inst.weights}, {"capacity", inst.capacity}};
}

std::vector<std::int64_t> values_from_json(const json& j) {
  auto values = j.at("values").get<std::vector<std::int64_t>>();
  if (values.size() < 2) throw std::invalid_argument("need at least 2 values");
  for (auto v : values)
    if (v < 1) throw std::invalid_argument("values must be positive integers");
  return values;
}

json solution_to_json(const KnapsackSolution& sol) {
  return {{"selection", sol.selection},
          {"profit", sol.profit},
          {"weight", sol.weight},
          {"method", to_string(sol.method)}};
}

json ising_to_json(const IsingModel& ising, const EncodingMap& map) {
  json couplings = json::array();
  for (const auto& [key, v] : ising.coupling)
    couplings.push_back({key.first, key.second, v});

  json encoding = {{"kind", to_string(map.kind)},
                   {"num_items", map.num_items},
                   {"slack_coeffs", map.slack_coeffs},
                   {"A", map.penalty_a},
                   {"B", map.profit_scale_b}};
  if (map.kind == EncodingKind::Log) encoding["M"] = map.log_bits_m;
  if (map.kind == EncodingKind::Search) {
    encoding["values"] = map.values;
  } else {
    encoding["weights"] = map.weights;
    encoding["capacity"] = map.capacity;
  }

  return {{"num_qubits", ising.num_qubits},
          {"h", ising.h},
          {"J", couplings},
          {"offset", ising.offset},
          {"encoding", encoding}};
}

std::pair<IsingModel, EncodingMap> ising_from_json(const json& j) {
  IsingModel ising;
  ising.num_qubits = j.at("num_qubits").get<int>();
  ising.h = j.at("h").get<std::vector<double>>();
  ising.offset = j.at("offset").get<double>();
  for (const auto& entry : j.at("J")) {
    const int a = entry.at(0).get<int>();
    const int b = entry.at(1).get<int>();
    ising.coupling[{std::min(a, b), std::max(a, b)}] = entry.at(2).get<double>();
  }

  const auto& enc = j.at("encoding");
  EncodingMap map;
  map.kind = kind_from_string(enc.at("kind").get<std::string>());
  map.num_items = enc.at("num_items").get<int>();
  map.slack_coeffs = enc.at("slack_coeffs").get<std::vector<std::int64_t>>();
  map.penalty_a = enc.at("A").get<std::int64_t>();
  map.profit_scale_b = enc.at("B").get<std::int64_t>();
  if (enc.contains("M")) map.log_bits_m = enc.at("M").get<int>();
  if (enc.contains("values")) map.values = enc.at("values").get<std::vector<std::int64_t>>();
  if (enc.contains("weights")) map.weights = enc.at("weights").get<std::vector<std::int64_t>>();
  if (enc.contains("capacity")) map.capacity = enc.at("capacity").get<std::int64_t>();
  return {std::move(ising), std::move(map)};
}

std::string gap_curve_csv(const GapCurve& curve) {
  std::ostringstream out;
  out << "s,E0,E1,gap,gap_distinct\n";
  for (std::size_t i = 0; i < curve.s_values.size(); ++i)
    out << fmt12(curve.s_values[i]) << ',' << fmt12(curve.e0[i]) << ','
        << fmt12(curve.e1[i]) << ',' << fmt12(curve.gap[i]) << ','
        << fmt12(curve.gap_distinct[i]) << '\n';
  return out.str();
}

std::string phase_csv(const std::vector<PhaseRow>& rows) {
  std::ostringstream out;
  out << "alpha,mu,rho_quad,x_quad,kappa_quad,x_closed,kappa_closed,deviation\n";
  for (const auto& row : rows) {
    if (row.failed) {
      out << fmt12(row.quad.alpha) << ',' << fmt12(row.quad.mu)
          << ",QUADRATURE_FAILED,,,,,\n";
      continue;
    }
    out << fmt12(row.quad.alpha) << ',' << fmt12(row.quad.mu) << ','
        << fmt12(row.quad.rho) << ',' << fmt12(row.quad.x) << ','
        << fmt12(row.quad.kappa_c) << ',' << fmt12(row.closed.x) << ','
        << fmt12(row.closed.kappa_c) << ',' << fmt12(row.deviation) << '\n';
  }
  return out.str();
}

}  // namespace anneal
