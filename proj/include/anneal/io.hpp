#ifndef ANNEAL_IO_HPP
#define ANNEAL_IO_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "anneal/knapsack.hpp"
#include "anneal/phase.hpp"
#include "anneal/qubo.hpp"
#include "anneal/spectral.hpp"

namespace anneal {

// Instance file: {"profits":[...], "weights":[...], "capacity":c}. Parsing
// runs the full validation, so a loaded instance is always well-formed.
KnapsackInstance instance_from_json(const nlohmann::json& j);
nlohmann::json instance_to_json(const KnapsackInstance& inst);

// Search input file: {"values":[...]}.
std::vector<std::int64_t> values_from_json(const nlohmann::json& j);

nlohmann::json solution_to_json(const KnapsackSolution& sol);

// Ising interchange format:
// {"num_qubits":N, "h":[...], "J":[[i,j,value]...], "offset":v,
//  "encoding":{...roles...}}.
nlohmann::json ising_to_json(const IsingModel& ising, const EncodingMap& map);
std::pair<IsingModel, EncodingMap> ising_from_json(const nlohmann::json& j);

// Gap CSV: header s,E0,E1,gap,gap_distinct; 12 significant digits.
std::string gap_curve_csv(const GapCurve& curve);

struct PhaseRow {
  PhasePoint quad;
  PhasePoint closed;
  double deviation = 0.0;
  bool failed = false;
};

// Phase CSV: header
// alpha,mu,rho_quad,x_quad,kappa_quad,x_closed,kappa_closed,deviation.
std::string phase_csv(const std::vector<PhaseRow>& rows);

}  // namespace anneal

#endif
