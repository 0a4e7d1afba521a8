#ifndef ANNEAL_KNAPSACK_HPP
#define ANNEAL_KNAPSACK_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace anneal {

enum class KnapsackError {
  TooFewItems,
  NegativeOrZeroValue,
  WeightExceedsCapacity,
  TotalWeightNotExceedingCapacity,
  LengthMismatch,
  ValueOverflow,
  InstanceTooLarge,
};

const char* to_string(KnapsackError code);

struct InvalidInstance : std::runtime_error {
  KnapsackError code;
  explicit InvalidInstance(KnapsackError c, const std::string& detail = "");
};

/// A knapsack instance with positive integer profits/weights and integer
/// capacity. Construct through validated() so the input conditions hold.
struct KnapsackInstance {
  std::vector<std::int64_t> profits;
  std::vector<std::int64_t> weights;
  std::int64_t capacity = 0;

  int size() const { return static_cast<int>(profits.size()); }
  std::int64_t max_profit() const;

  // Checks: n >= 2, all p_j >= 1, 1 <= w_j <= c, sum(w) > c, and that
  // n*max(p), n*max(w) fit in 64 bits. Throws InvalidInstance otherwise.
  static KnapsackInstance validated(std::vector<std::int64_t> profits,
                                    std::vector<std::int64_t> weights,
                                    std::int64_t capacity);
};

enum class SolveMethod { Dp, GreedyStop, GreedySkip, Brute };

const char* to_string(SolveMethod method);

struct KnapsackSolution {
  std::vector<int> selection;  // x_j in {0,1}, one entry per item
  std::int64_t profit = 0;
  std::int64_t weight = 0;
  SolveMethod method = SolveMethod::Dp;

  /// Zero-based indices of the selected items.
  std::vector<int> items() const;
};

struct DpResult {
  KnapsackSolution solution;
  // profile[d] = optimal profit at capacity d, for d = 0..c (all-capacities).
  std::vector<std::int64_t> profile;
};

/// Dynamic programming by weights, O(n*c). Backtracking prefers excluding an
/// item when both recursion branches tie, so the solution is canonical.
DpResult solve_dp(const KnapsackInstance& inst);

/// Exhaustive search over all 2^n subsets, n <= 25. Ties broken toward the
/// lexicographically smallest selection bitstring.
KnapsackSolution solve_brute(const KnapsackInstance& inst);

enum class GreedyVariant { Stop, Skip };

/// Greedy by decreasing efficiency ratio p_j/w_j (ties by original index).
/// Stop halts at the first item that does not fit; Skip continues past it.
KnapsackSolution solve_greedy(const KnapsackInstance& inst, GreedyVariant variant);

}  // namespace anneal

#endif
