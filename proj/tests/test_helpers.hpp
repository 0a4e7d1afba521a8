#ifndef ANNEAL_TEST_HELPERS_HPP
#define ANNEAL_TEST_HELPERS_HPP

#include <random>
#include <vector>

#include "anneal/knapsack.hpp"
#include "anneal/qubo.hpp"

namespace anneal::testing {

// Random valid instance: retries until the validation conditions hold.
inline KnapsackInstance random_instance(std::mt19937_64& rng, int max_n,
                                        std::int64_t max_c,
                                        std::int64_t max_profit = 50) {
  std::uniform_int_distribution<int> n_dist(2, max_n);
  for (;;) {
    const int n = n_dist(rng);
    std::uniform_int_distribution<std::int64_t> c_dist(1, max_c);
    const std::int64_t c = c_dist(rng);
    std::uniform_int_distribution<std::int64_t> w_dist(1, c);
    std::uniform_int_distribution<std::int64_t> p_dist(1, max_profit);
    std::vector<std::int64_t> profits(n), weights(n);
    std::int64_t total = 0;
    for (int i = 0; i < n; ++i) {
      profits[i] = p_dist(rng);
      weights[i] = w_dist(rng);
      total += weights[i];
    }
    if (total <= c) continue;
    return KnapsackInstance::validated(std::move(profits), std::move(weights), c);
  }
}

inline QuadraticBinaryModel random_model(std::mt19937_64& rng, int num_vars,
                                         std::int64_t coeff_range = 20) {
  std::uniform_int_distribution<std::int64_t> coeff(-coeff_range, coeff_range);
  QuadraticBinaryModel model(num_vars);
  model.constant = coeff(rng);
  for (int i = 0; i < num_vars; ++i) model.add_linear(i, coeff(rng));
  for (int i = 0; i < num_vars; ++i)
    for (int j = i + 1; j < num_vars; ++j)
      if (coeff(rng) > 0) model.add_quadratic(i, j, coeff(rng));
  return model;
}

// The two worked instances used throughout the suites.
inline KnapsackInstance seven_item_instance() {
  return KnapsackInstance::validated({6, 5, 8, 9, 6, 7, 3}, {2, 3, 6, 7, 5, 8, 4}, 9);
}

inline KnapsackInstance five_item_instance() {
  return KnapsackInstance::validated({8, 3, 5, 6, 9}, {1, 2, 1, 3, 2}, 7);
}

}  // namespace anneal::testing

#endif
