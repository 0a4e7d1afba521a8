#include "anneal/qubo.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace anneal {

const char* to_string(EncodeError code) {
  switch (code) {
    case EncodeError::PenaltyConditionViolated: return "PENALTY_CONDITION_VIOLATED";
    case EncodeError::LengthMismatch: return "LENGTH_MISMATCH";
    case EncodeError::OutOfRange: return "OUT_OF_RANGE";
    case EncodeError::ValueOverflow: return "VALUE_OVERFLOW";
  }
  return "UNKNOWN";
}

const char* to_string(EncodingKind kind) {
  switch (kind) {
    case EncodingKind::Unary: return "unary";
    case EncodingKind::Log: return "log";
    case EncodingKind::Search: return "search";
  }
  return "unknown";
}

EncodingFailure::EncodingFailure(EncodeError c, const std::string& detail)
    : std::runtime_error(std::string(to_string(c)) + (detail.empty() ? "" : ": " + detail)),
      code(c) {}

namespace {

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r))
    throw EncodingFailure(EncodeError::ValueOverflow, "coefficient overflow");
  return r;
}

}  // namespace

void QuadraticBinaryModel::add_linear(int i, std::int64_t v) { linear[i] += v; }

void QuadraticBinaryModel::add_quadratic(int i, int j, std::int64_t v) {
  if (i == j) {
    linear[i] += v;  // x^2 = x
    return;
  }
  if (i > j) std::swap(i, j);
  quadratic[{i, j}] += v;
}

void QuadraticBinaryModel::add_squared(
    std::int64_t c0, std::span<const std::pair<int, std::int64_t>> terms,
    std::int64_t scale) {
  constant += checked_mul(scale, checked_mul(c0, c0));
  for (std::size_t a = 0; a < terms.size(); ++a) {
    const auto [i, ci] = terms[a];
    add_linear(i, checked_mul(scale, checked_mul(ci, ci)));          // x^2 = x
    add_linear(i, checked_mul(2 * scale, checked_mul(c0, ci)));      // cross with constant
    for (std::size_t b = a + 1; b < terms.size(); ++b) {
      const auto [j, cj] = terms[b];
      add_quadratic(i, j, checked_mul(2 * scale, checked_mul(ci, cj)));
    }
  }
}

std::int64_t QuadraticBinaryModel::energy(std::span<const int> bits) const {
  if (static_cast<int>(bits.size()) != num_vars)
    throw EncodingFailure(EncodeError::LengthMismatch, "assignment length");
  std::int64_t e = constant;
  for (int i = 0; i < num_vars; ++i)
    if (bits[i]) e += linear[i];
  for (const auto& [key, v] : quadratic)
    if (bits[key.first] && bits[key.second]) e += v;
  return e;
}

std::int64_t default_penalty(const KnapsackInstance& inst) {
  return inst.max_profit() + 1;
}

namespace {

void check_penalty(std::int64_t max_objective_coeff, std::int64_t A, std::int64_t B) {
  if (B <= 0 || A <= checked_mul(B, max_objective_coeff))
    throw EncodingFailure(EncodeError::PenaltyConditionViolated,
                          "need 0 < B*max < A (A=" + std::to_string(A) +
                              ", B=" + std::to_string(B) + ")");
}

}  // namespace

std::pair<QuadraticBinaryModel, EncodingMap> build_unary_knapsack(
    const KnapsackInstance& inst, std::int64_t A, std::int64_t B) {
  check_penalty(inst.max_profit(), A, B);
  const int n = inst.size();
  const auto c = inst.capacity;
  QuadraticBinaryModel model(n + static_cast<int>(c));

  EncodingMap map;
  map.kind = EncodingKind::Unary;
  map.num_items = n;
  map.penalty_a = A;
  map.profit_scale_b = B;
  map.weights = inst.weights;
  map.capacity = c;
  for (std::int64_t j = 1; j <= c; ++j) map.slack_coeffs.push_back(j);

  // A(1 - sum_j y_j)^2
  std::vector<std::pair<int, std::int64_t>> terms;
  for (std::int64_t j = 0; j < c; ++j) terms.emplace_back(n + static_cast<int>(j), -1);
  model.add_squared(1, terms, A);

  // A(sum_j j*y_j - sum_i w_i x_i)^2
  terms.clear();
  for (int i = 0; i < n; ++i) terms.emplace_back(i, -inst.weights[i]);
  for (std::int64_t j = 1; j <= c; ++j)
    terms.emplace_back(n + static_cast<int>(j - 1), j);
  model.add_squared(0, terms, A);

  // -B sum_i p_i x_i
  for (int i = 0; i < n; ++i) model.add_linear(i, -checked_mul(B, inst.profits[i]));

  return {std::move(model), std::move(map)};
}

std::pair<QuadraticBinaryModel, EncodingMap> build_log_knapsack(
    const KnapsackInstance& inst, std::int64_t A, std::int64_t B) {
  check_penalty(inst.max_profit(), A, B);
  const int n = inst.size();
  const auto c = inst.capacity;

  int m = 0;  // M with 2^M <= c < 2^(M+1)
  while ((std::int64_t{1} << (m + 1)) <= c) ++m;

  EncodingMap map;
  map.kind = EncodingKind::Log;
  map.num_items = n;
  map.penalty_a = A;
  map.profit_scale_b = B;
  map.log_bits_m = m;
  map.weights = inst.weights;
  map.capacity = c;
  for (int j = 0; j < m; ++j) map.slack_coeffs.push_back(std::int64_t{1} << j);
  map.slack_coeffs.push_back(c + 1 - (std::int64_t{1} << m));

  QuadraticBinaryModel model(n + m + 1);

  // A(sum_j coeff_j y_j - sum_i w_i x_i)^2
  std::vector<std::pair<int, std::int64_t>> terms;
  for (int i = 0; i < n; ++i) terms.emplace_back(i, -inst.weights[i]);
  for (int j = 0; j <= m; ++j) terms.emplace_back(n + j, map.slack_coeffs[j]);
  model.add_squared(0, terms, A);

  for (int i = 0; i < n; ++i) model.add_linear(i, -checked_mul(B, inst.profits[i]));

  return {std::move(model), std::move(map)};
}

std::pair<QuadraticBinaryModel, EncodingMap> build_search_model(
    const std::vector<std::int64_t>& values, std::int64_t A, std::int64_t B,
    bool validate_penalty) {
  if (values.size() < 2)
    throw EncodingFailure(EncodeError::OutOfRange, "need at least 2 values");
  if (validate_penalty)
    check_penalty(*std::max_element(values.begin(), values.end()), A, B);
  else if (B <= 0 || A <= 0)
    throw EncodingFailure(EncodeError::PenaltyConditionViolated, "A, B must be positive");

  const int n = static_cast<int>(values.size());
  QuadraticBinaryModel model(n);

  std::vector<std::pair<int, std::int64_t>> terms;
  for (int i = 0; i < n; ++i) terms.emplace_back(i, -1);
  model.add_squared(1, terms, A);
  for (int i = 0; i < n; ++i) model.add_linear(i, -checked_mul(B, values[i]));

  EncodingMap map;
  map.kind = EncodingKind::Search;
  map.num_items = n;
  map.penalty_a = A;
  map.profit_scale_b = B;
  map.values = values;
  return {std::move(model), std::move(map)};
}

SlackRepresentations count_weight_representations(const EncodingMap& map,
                                                  std::int64_t target_weight) {
  if (target_weight < 0 || target_weight > map.capacity)
    throw EncodingFailure(EncodeError::OutOfRange,
                          "target weight outside [0, c]");
  const int k = static_cast<int>(map.slack_coeffs.size());
  if (k > 30)
    throw EncodingFailure(EncodeError::OutOfRange, "too many slack bits to enumerate");

  SlackRepresentations reps;
  for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
    std::int64_t total = 0;
    for (int j = 0; j < k; ++j)
      if ((mask >> j) & 1u) total += map.slack_coeffs[j];
    if (total == target_weight) {
      std::vector<int> bits(k);
      for (int j = 0; j < k; ++j) bits[j] = (mask >> j) & 1u;
      reps.assignments.push_back(std::move(bits));
    }
  }
  reps.count = static_cast<std::int64_t>(reps.assignments.size());
  return reps;
}

double IsingModel::energy(std::span<const int> spins) const {
  if (static_cast<int>(spins.size()) != num_qubits)
    throw EncodingFailure(EncodeError::LengthMismatch, "spin vector length");
  double e = offset;
  for (int i = 0; i < num_qubits; ++i) e -= h[i] * spins[i];
  for (const auto& [key, j] : coupling) e -= j * spins[key.first] * spins[key.second];
  return e;
}

IsingModel to_ising(const QuadraticBinaryModel& model) {
  IsingModel ising;
  ising.num_qubits = model.num_vars;
  ising.h.assign(model.num_vars, 0.0);
  ising.offset = static_cast<double>(model.constant);

  // x_i = (1 - s_i)/2:
  //   l x_i       -> offset l/2, h_i += l/2
  //   q x_i x_j   -> offset q/4, h_i += q/4, h_j += q/4, J_ij -= q/4
  for (int i = 0; i < model.num_vars; ++i) {
    const double l = static_cast<double>(model.linear[i]);
    ising.offset += l / 2.0;
    ising.h[i] += l / 2.0;
  }
  for (const auto& [key, v] : model.quadratic) {
    const double q = static_cast<double>(v);
    ising.offset += q / 4.0;
    ising.h[key.first] += q / 4.0;
    ising.h[key.second] += q / 4.0;
    ising.coupling[key] -= q / 4.0;
  }
  return ising;
}

DecodedAssignment decode_bits(const EncodingMap& map, std::span<const int> bits) {
  if (static_cast<int>(bits.size()) != map.num_qubits())
    throw EncodingFailure(EncodeError::LengthMismatch, "assignment length");
  DecodedAssignment out;
  out.selection.assign(bits.begin(), bits.begin() + map.num_items);
  for (std::size_t j = 0; j < map.slack_coeffs.size(); ++j)
    if (bits[map.num_items + j]) out.slack_value += map.slack_coeffs[j];
  if (map.kind == EncodingKind::Search) {
    out.feasible = std::count(out.selection.begin(), out.selection.end(), 1) == 1;
  } else {
    for (int i = 0; i < map.num_items; ++i)
      if (bits[i]) out.total_weight += map.weights[i];
    out.feasible = out.total_weight <= map.capacity;
  }
  return out;
}

BruteMinimum brute_minimize(const QuadraticBinaryModel& model) {
  const int n = model.num_vars;
  if (n > 24)
    throw EncodingFailure(EncodeError::OutOfRange, "enumeration capped at 24 variables");

  // Adjacency lists so a single-bit flip costs O(degree).
  std::vector<std::vector<std::pair<int, std::int64_t>>> adj(n);
  for (const auto& [key, v] : model.quadratic) {
    adj[key.first].emplace_back(key.second, v);
    adj[key.second].emplace_back(key.first, v);
  }

  std::vector<int> bits(n, 0);
  std::int64_t e = model.constant;
  BruteMinimum best;
  best.energy = e;
  best.minimizers.push_back(bits);

  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t k = 1; k < count; ++k) {
    const int b = std::countr_zero(k);
    std::int64_t delta = model.linear[b];
    for (const auto& [j, v] : adj[b])
      if (bits[j]) delta += v;
    e += bits[b] ? -delta : delta;
    bits[b] ^= 1;
    if (e < best.energy) {
      best.energy = e;
      best.minimizers.clear();
      best.minimizers.push_back(bits);
    } else if (e == best.energy) {
      best.minimizers.push_back(bits);
    }
  }
  return best;
}

}  // namespace anneal
