#ifndef ANNEAL_QUBO_HPP
#define ANNEAL_QUBO_HPP

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "anneal/knapsack.hpp"

namespace anneal {

enum class EncodeError {
  PenaltyConditionViolated,
  LengthMismatch,
  OutOfRange,
  ValueOverflow,
};

const char* to_string(EncodeError code);

struct EncodingFailure : std::runtime_error {
  EncodeError code;
  explicit EncodingFailure(EncodeError c, const std::string& detail = "");
};

/// Quadratic pseudo-Boolean objective with exact integer coefficients:
/// E(x) = constant + sum_i linear[i] x_i + sum_{i<j} quadratic[{i,j}] x_i x_j.
struct QuadraticBinaryModel {
  int num_vars = 0;
  std::vector<std::int64_t> linear;
  std::map<std::pair<int, int>, std::int64_t> quadratic;  // keys i < j
  std::int64_t constant = 0;

  explicit QuadraticBinaryModel(int n = 0) : num_vars(n), linear(n, 0) {}

  void add_linear(int i, std::int64_t v);
  void add_quadratic(int i, int j, std::int64_t v);
  /// Adds scale * (c0 + sum_k coeff_k x_{var_k})^2, expanded exactly
  /// (x^2 = x for binary variables).
  void add_squared(std::int64_t c0,
                   std::span<const std::pair<int, std::int64_t>> terms,
                   std::int64_t scale);

  std::int64_t energy(std::span<const int> bits) const;
};

enum class EncodingKind { Unary, Log, Search };

const char* to_string(EncodingKind kind);

/// Records which qubit plays which role in a built model. Qubits 0..n-1 are
/// item (or value) bits; qubit n+i is the slack bit with slack_coeffs[i].
struct EncodingMap {
  EncodingKind kind = EncodingKind::Unary;
  int num_items = 0;
  std::vector<std::int64_t> slack_coeffs;
  std::int64_t penalty_a = 0;   // A
  std::int64_t profit_scale_b = 0;  // B
  int log_bits_m = 0;           // M, log encoding only

  // Retained from the source instance so assignments can be decoded and
  // checked for feasibility without carrying the instance around.
  std::vector<std::int64_t> weights;
  std::int64_t capacity = 0;
  std::vector<std::int64_t> values;  // search kind

  int num_qubits() const { return num_items + static_cast<int>(slack_coeffs.size()); }
};

struct DecodedAssignment {
  std::vector<int> selection;
  std::int64_t slack_value = 0;
  std::int64_t total_weight = 0;
  bool feasible = true;
};

/// Smallest integer A satisfying 0 < B*max(p) < A for B = 1.
std::int64_t default_penalty(const KnapsackInstance& inst);

/// H = A(1 - sum_j y_j)^2 + A(sum_j j*y_j - sum_i w_i x_i)^2 - B sum_i p_i x_i
/// over n + c variables (one-hot slack).
std::pair<QuadraticBinaryModel, EncodingMap> build_unary_knapsack(
    const KnapsackInstance& inst, std::int64_t A, std::int64_t B);

/// H = A(sum_{j<M} 2^j y_j + (c+1-2^M) y_M - sum_i w_i x_i)^2 - B sum_i p_i x_i
/// over n + M + 1 variables, M = floor(log2 c).
std::pair<QuadraticBinaryModel, EncodingMap> build_log_knapsack(
    const KnapsackInstance& inst, std::int64_t A, std::int64_t B);

/// H = A(1 - sum_i x_i)^2 - B sum_i n_i x_i over N variables; the ground
/// state is one-hot at the largest value when A > B*max(n_i). With
/// validate_penalty false the condition is not checked (blind mode, where the
/// maximum is unknown a priori and A may need to be taken arbitrarily large).
std::pair<QuadraticBinaryModel, EncodingMap> build_search_model(
    const std::vector<std::int64_t>& values, std::int64_t A, std::int64_t B,
    bool validate_penalty = true);

struct SlackRepresentations {
  std::int64_t count = 0;
  std::vector<std::vector<int>> assignments;  // slack bitstrings, LSB order
};

/// Enumerates slack bitstrings whose coefficient-weighted sum equals
/// target_weight (log encoding; representations are generally non-unique).
SlackRepresentations count_weight_representations(const EncodingMap& map,
                                                  std::int64_t target_weight);

/// Ising form E(s) = offset - sum_i h[i] s_i - sum_{i<j} J[{i,j}] s_i s_j
/// with spins s_i in {+1,-1}. Bit convention: x_i = (1 - s_i)/2, so basis
/// bit 1 maps to spin -1. Coefficients are dyadic rationals (quarters of
/// integers), hence exact in double.
struct IsingModel {
  int num_qubits = 0;
  std::vector<double> h;
  std::map<std::pair<int, int>, double> coupling;
  double offset = 0.0;

  double energy(std::span<const int> spins) const;
};

IsingModel to_ising(const QuadraticBinaryModel& model);

DecodedAssignment decode_bits(const EncodingMap& map, std::span<const int> bits);

/// Exact global minimum of a quadratic binary model by Gray-code enumeration.
/// Returns every minimizing assignment. num_vars capped at 24.
struct BruteMinimum {
  std::int64_t energy = 0;
  std::vector<std::vector<int>> minimizers;
};
BruteMinimum brute_minimize(const QuadraticBinaryModel& model);

}  // namespace anneal

#endif
