#include "anneal/knapsack.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace anneal {

const char* to_string(KnapsackError code) {
  switch (code) {
    case KnapsackError::TooFewItems: return "TOO_FEW_ITEMS";
    case KnapsackError::NegativeOrZeroValue: return "NEGATIVE_OR_ZERO_VALUE";
    case KnapsackError::WeightExceedsCapacity: return "WEIGHT_EXCEEDS_CAPACITY";
    case KnapsackError::TotalWeightNotExceedingCapacity:
      return "TOTAL_WEIGHT_NOT_EXCEEDING_CAPACITY";
    case KnapsackError::LengthMismatch: return "LENGTH_MISMATCH";
    case KnapsackError::ValueOverflow: return "VALUE_OVERFLOW";
    case KnapsackError::InstanceTooLarge: return "INSTANCE_TOO_LARGE";
  }
  return "UNKNOWN";
}

const char* to_string(SolveMethod method) {
  switch (method) {
    case SolveMethod::Dp: return "dp";
    case SolveMethod::GreedyStop: return "greedy-stop";
    case SolveMethod::GreedySkip: return "greedy-skip";
    case SolveMethod::Brute: return "brute";
  }
  return "unknown";
}

InvalidInstance::InvalidInstance(KnapsackError c, const std::string& detail)
    : std::runtime_error(std::string(to_string(c)) + (detail.empty() ? "" : ": " + detail)),
      code(c) {}

std::int64_t KnapsackInstance::max_profit() const {
  return *std::max_element(profits.begin(), profits.end());
}

KnapsackInstance KnapsackInstance::validated(std::vector<std::int64_t> profits,
                                             std::vector<std::int64_t> weights,
                                             std::int64_t capacity) {
  if (profits.size() != weights.size())
    throw InvalidInstance(KnapsackError::LengthMismatch,
                          "profit and weight lists differ in length");
  const auto n = static_cast<std::int64_t>(profits.size());
  if (n < 2) throw InvalidInstance(KnapsackError::TooFewItems, "need n >= 2");
  if (capacity < 1)
    throw InvalidInstance(KnapsackError::NegativeOrZeroValue, "capacity must be positive");

  std::int64_t total_weight = 0;
  std::int64_t max_p = 0, max_w = 0;
  for (std::size_t j = 0; j < profits.size(); ++j) {
    if (profits[j] < 1 || weights[j] < 1)
      throw InvalidInstance(KnapsackError::NegativeOrZeroValue,
                            "item " + std::to_string(j + 1));
    if (weights[j] > capacity)
      throw InvalidInstance(KnapsackError::WeightExceedsCapacity,
                            "item " + std::to_string(j + 1));
    max_p = std::max(max_p, profits[j]);
    max_w = std::max(max_w, weights[j]);
    total_weight += weights[j];
  }
  if (total_weight <= capacity)
    throw InvalidInstance(KnapsackError::TotalWeightNotExceedingCapacity,
                          "all items fit; the instance is trivial");

  // Solvers form n*max(p) and n*max(w) sums; reject if those would wrap.
  std::int64_t tmp;
  if (__builtin_mul_overflow(n, max_p, &tmp) || __builtin_mul_overflow(n, max_w, &tmp))
    throw InvalidInstance(KnapsackError::ValueOverflow);

  KnapsackInstance inst;
  inst.profits = std::move(profits);
  inst.weights = std::move(weights);
  inst.capacity = capacity;
  return inst;
}

std::vector<int> KnapsackSolution::items() const {
  std::vector<int> out;
  for (int j = 0; j < static_cast<int>(selection.size()); ++j)
    if (selection[j]) out.push_back(j);
  return out;
}

namespace {

KnapsackSolution make_solution(const KnapsackInstance& inst, std::vector<int> selection,
                               SolveMethod method) {
  KnapsackSolution sol;
  sol.method = method;
  sol.profit = 0;
  sol.weight = 0;
  for (int j = 0; j < inst.size(); ++j) {
    if (selection[j]) {
      sol.profit += inst.profits[j];
      sol.weight += inst.weights[j];
    }
  }
  sol.selection = std::move(selection);
  return sol;
}

}  // namespace

DpResult solve_dp(const KnapsackInstance& inst) {
  const int n = inst.size();
  const auto c = static_cast<std::size_t>(inst.capacity);

  // z[j][d], row-major over j = 0..n with the j = 0 row all zero.
  std::vector<std::vector<std::int64_t>> z(n + 1, std::vector<std::int64_t>(c + 1, 0));
  for (int j = 1; j <= n; ++j) {
    const auto w = static_cast<std::size_t>(inst.weights[j - 1]);
    const std::int64_t p = inst.profits[j - 1];
    for (std::size_t d = 0; d <= c; ++d) {
      std::int64_t best = z[j - 1][d];
      if (d >= w) best = std::max(best, z[j - 1][d - w] + p);
      z[j][d] = best;
    }
  }

  // Backtrack; an item is taken only when excluding it is strictly worse.
  std::vector<int> selection(n, 0);
  std::size_t d = c;
  for (int j = n; j >= 1; --j) {
    if (z[j][d] != z[j - 1][d]) {
      selection[j - 1] = 1;
      d -= static_cast<std::size_t>(inst.weights[j - 1]);
    }
  }

  DpResult result;
  result.solution = make_solution(inst, std::move(selection), SolveMethod::Dp);
  result.profile = std::move(z[n]);
  return result;
}

KnapsackSolution solve_brute(const KnapsackInstance& inst) {
  const int n = inst.size();
  if (n > 25)
    throw InvalidInstance(KnapsackError::InstanceTooLarge,
                          "brute force capped at 25 items");

  std::int64_t best_profit = -1;
  std::vector<int> best(n, 0), current(n, 0);
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    std::int64_t profit = 0, weight = 0;
    for (int j = 0; j < n; ++j) {
      current[j] = (mask >> j) & 1u;
      if (current[j]) {
        profit += inst.profits[j];
        weight += inst.weights[j];
      }
    }
    if (weight > inst.capacity) continue;
    if (profit > best_profit || (profit == best_profit && current < best)) {
      best_profit = profit;
      best = current;
    }
  }
  return make_solution(inst, std::move(best), SolveMethod::Brute);
}

KnapsackSolution solve_greedy(const KnapsackInstance& inst, GreedyVariant variant) {
  const int n = inst.size();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  // p_i/w_i > p_j/w_j compared by cross-multiplication; ties keep index order.
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
    return inst.profits[i] * inst.weights[j] > inst.profits[j] * inst.weights[i];
  });

  std::vector<int> selection(n, 0);
  std::int64_t weight = 0;
  for (int j : order) {
    if (weight + inst.weights[j] <= inst.capacity) {
      selection[j] = 1;
      weight += inst.weights[j];
    } else if (variant == GreedyVariant::Stop) {
      break;
    }
  }
  return make_solution(inst, std::move(selection),
                       variant == GreedyVariant::Stop ? SolveMethod::GreedyStop
                                                      : SolveMethod::GreedySkip);
}

}  // namespace anneal
