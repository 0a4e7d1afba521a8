#include <doctest.h>

#include <random>

#include "anneal/knapsack.hpp"
#include "anneal/qubo.hpp"
#include "test_helpers.hpp"

using namespace anneal;
using anneal::testing::five_item_instance;
using anneal::testing::random_instance;
using anneal::testing::random_model;
using anneal::testing::seven_item_instance;

namespace {

std::vector<int> bits_of(std::uint32_t mask, int n) {
  std::vector<int> bits(n);
  for (int i = 0; i < n; ++i) bits[i] = (mask >> i) & 1u;
  return bits;
}

}  // namespace

TEST_CASE("unary encoding sizes: n + c qubits") {
  auto [m5, map5] = build_unary_knapsack(five_item_instance(), 10, 1);
  CHECK(m5.num_vars == 12);
  CHECK(map5.num_qubits() == 12);
  auto [m7, map7] = build_unary_knapsack(seven_item_instance(), 10, 1);
  CHECK(m7.num_vars == 16);
}

TEST_CASE("unary encoding energy at the known optimum") {
  const auto inst = five_item_instance();
  auto [model, map] = build_unary_knapsack(inst, default_penalty(inst), 1);
  // x = (1,0,1,1,1), slack y_7 = 1 (weight 7 = capacity), rest zero.
  std::vector<int> bits(12, 0);
  bits[0] = bits[2] = bits[3] = bits[4] = 1;
  bits[5 + 6] = 1;  // y_7 has coefficient 7
  CHECK(model.energy(bits) == -28);
}

TEST_CASE("all-zero unary assignment has energy A") {
  const auto inst = five_item_instance();
  auto [model, map] = build_unary_knapsack(inst, 10, 1);
  const std::vector<int> zeros(12, 0);
  CHECK(model.energy(zeros) == 10);
}

TEST_CASE("penalty condition is enforced") {
  const auto inst = five_item_instance();  // max(p) = 9
  CHECK_THROWS_WITH_AS(build_unary_knapsack(inst, 9, 1),
                       doctest::Contains("PENALTY_CONDITION_VIOLATED"), EncodingFailure);
  CHECK_THROWS_AS(build_log_knapsack(inst, 9, 1), EncodingFailure);
  CHECK_THROWS_AS(build_unary_knapsack(inst, 10, 0), EncodingFailure);
  CHECK_NOTHROW(build_unary_knapsack(inst, 10, 1));
}

TEST_CASE("log slack coefficients") {
  auto coeffs_for = [](std::int64_t c) {
    std::vector<std::int64_t> w = {1, c};
    const auto inst = KnapsackInstance::validated({1, 1}, w, c);
    auto [model, map] = build_log_knapsack(inst, 5, 1);
    return map;
  };
  const auto map10 = coeffs_for(10);
  CHECK(map10.log_bits_m == 3);
  CHECK(map10.slack_coeffs == std::vector<std::int64_t>{1, 2, 4, 3});
  const auto map9 = coeffs_for(9);
  CHECK(map9.slack_coeffs == std::vector<std::int64_t>{1, 2, 4, 2});
  CHECK(map9.num_qubits() == 2 + 4);
  const auto map8 = coeffs_for(8);
  CHECK(map8.slack_coeffs == std::vector<std::int64_t>{1, 2, 4, 1});

  // Coefficients always sum to exactly c.
  for (std::int64_t c = 1; c <= 64; ++c) {
    const auto map = coeffs_for(c);
    std::int64_t sum = 0;
    for (auto v : map.slack_coeffs) sum += v;
    CHECK(sum == c);
  }
}

TEST_CASE("log qubit count for the seven-item instance is n + M + 1") {
  auto [model, map] = build_log_knapsack(seven_item_instance(), 10, 1);
  CHECK(map.num_qubits() == 11);  // n=7, c=9, M=3
}

TEST_CASE("weight representations for c = 10") {
  std::vector<std::int64_t> w = {1, 10};
  const auto inst = KnapsackInstance::validated({1, 1}, w, 10);
  auto [model, map] = build_log_knapsack(inst, 5, 1);

  const auto reps6 = count_weight_representations(map, 6);
  // 2 + 4 and 1 + 2 + 3 both represent weight 6.
  CHECK(std::find(reps6.assignments.begin(), reps6.assignments.end(),
                  std::vector<int>{0, 1, 1, 0}) != reps6.assignments.end());
  CHECK(std::find(reps6.assignments.begin(), reps6.assignments.end(),
                  std::vector<int>{1, 1, 0, 1}) != reps6.assignments.end());

  const auto reps0 = count_weight_representations(map, 0);
  CHECK(reps0.count == 1);
  CHECK(reps0.assignments[0] == std::vector<int>{0, 0, 0, 0});

  // Cross-check every target against a direct enumeration over 2^4 states.
  for (std::int64_t target = 0; target <= 10; ++target) {
    int expected = 0;
    for (int mask = 0; mask < 16; ++mask) {
      std::int64_t sum = 0;
      for (int j = 0; j < 4; ++j)
        if ((mask >> j) & 1) sum += map.slack_coeffs[j];
      if (sum == target) ++expected;
    }
    CHECK(count_weight_representations(map, target).count == expected);
  }

  CHECK_THROWS_WITH_AS(count_weight_representations(map, 11),
                       doctest::Contains("OUT_OF_RANGE"), EncodingFailure);
  CHECK_THROWS_AS(count_weight_representations(map, -1), EncodingFailure);
}

TEST_CASE("search model ground states") {
  SUBCASE("one-hot at the largest value") {
    auto [model, map] = build_search_model({1, 2, 6}, 7, 1);
    const auto best = brute_minimize(model);
    REQUIRE(best.minimizers.size() == 1);
    CHECK(best.minimizers[0] == std::vector<int>{0, 0, 1});
    CHECK(best.energy == -6);
  }
  SUBCASE("tied maxima give degenerate minima") {
    auto [model, map] = build_search_model({5, 5}, 6, 1);
    const auto best = brute_minimize(model);
    CHECK(best.minimizers.size() == 2);
  }
  SUBCASE("six values with maximum 91") {
    auto [model, map] = build_search_model({17, 42, 91, 3, 66, 28}, 92, 1);
    const auto best = brute_minimize(model);
    REQUIRE(best.minimizers.size() == 1);
    CHECK(best.minimizers[0] == std::vector<int>{0, 0, 1, 0, 0, 0});
  }
  SUBCASE("penalty validation only in known-inputs mode") {
    CHECK_THROWS_AS(build_search_model({1, 2, 6}, 6, 1), EncodingFailure);
    CHECK_NOTHROW(build_search_model({1, 2, 6}, 6, 1, /*validate_penalty=*/false));
  }
}

TEST_CASE("ising lowering of single terms") {
  SUBCASE("f(x) = 3 x1") {
    QuadraticBinaryModel model(1);
    model.add_linear(0, 3);
    const IsingModel ising = to_ising(model);
    CHECK(ising.offset == doctest::Approx(1.5));
    CHECK(ising.h[0] == doctest::Approx(1.5));
  }
  SUBCASE("f(x) = x1 x2") {
    QuadraticBinaryModel model(2);
    model.add_quadratic(0, 1, 1);
    const IsingModel ising = to_ising(model);
    CHECK(ising.offset == doctest::Approx(0.25));
    CHECK(ising.h[0] == doctest::Approx(0.25));
    CHECK(ising.h[1] == doctest::Approx(0.25));
    CHECK(ising.coupling.at({0, 1}) == doctest::Approx(-0.25));
  }
}

TEST_CASE("ising lowering preserves every assignment energy") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 40; ++t) {
    const int n = 2 + static_cast<int>(rng() % 9);  // up to 10 variables
    const auto model = random_model(rng, n);
    const IsingModel ising = to_ising(model);
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      const auto bits = bits_of(mask, n);
      std::vector<int> spins(n);
      for (int i = 0; i < n; ++i) spins[i] = 1 - 2 * bits[i];
      CHECK(ising.energy(spins) == doctest::Approx(model.energy(bits)).epsilon(1e-12));
    }
  }
}

TEST_CASE("energy rejects wrong-length assignments") {
  QuadraticBinaryModel model(3);
  CHECK_THROWS_WITH_AS(model.energy(std::vector<int>{0, 1}),
                       doctest::Contains("LENGTH_MISMATCH"), EncodingFailure);
}

TEST_CASE("decode_bits reads items, slack, and feasibility") {
  std::vector<std::int64_t> w = {1, 10};
  const auto inst = KnapsackInstance::validated({1, 1}, w, 10);
  auto [model, map] = build_log_knapsack(inst, 5, 1);
  // Item 2 selected (weight 10), slack bits y1 y2 -> slack value 6.
  const std::vector<int> bits = {0, 1, 0, 1, 1, 0};
  const auto decoded = decode_bits(map, bits);
  CHECK(decoded.selection == std::vector<int>{0, 1});
  CHECK(decoded.slack_value == 6);
  CHECK(decoded.total_weight == 10);
  CHECK(decoded.feasible);
}

TEST_CASE("global minimizers decode to the dp optimum") {
  std::mt19937_64 rng(99);
  int done = 0;
  while (done < 15) {
    const auto inst = random_instance(rng, 6, 10, 9);
    if (inst.size() + inst.capacity > 16) continue;
    const std::int64_t optimum = solve_dp(inst).solution.profit;
    // The default penalty A = max(p)+1 only guarantees a feasible optimal
    // ground state when no violation can pay for itself, i.e. when the
    // profit left on the table is below A (see the counterexample below).
    std::int64_t total = 0;
    for (auto p : inst.profits) total += p;
    if (total - optimum >= default_penalty(inst)) continue;
    ++done;
    for (const bool log_encoding : {false, true}) {
      auto [model, map] = log_encoding
                              ? build_log_knapsack(inst, default_penalty(inst), 1)
                              : build_unary_knapsack(inst, default_penalty(inst), 1);
      const auto best = brute_minimize(model);
      CHECK(best.energy == -optimum);
      for (const auto& bits : best.minimizers) {
        const auto decoded = decode_bits(map, bits);
        CHECK(decoded.feasible);
        std::int64_t profit = 0;
        for (int i = 0; i < inst.size(); ++i)
          if (decoded.selection[i]) profit += inst.profits[i];
        CHECK(profit == optimum);
        // Slack bits represent the selected weight exactly.
        CHECK(decoded.slack_value == decoded.total_weight);
        if (!log_encoding) {
          int hot = 0;
          for (std::size_t j = 0; j < map.slack_coeffs.size(); ++j)
            hot += bits[map.num_items + j];
          CHECK(hot == 1);
        }
      }
    }
  }
}

TEST_CASE("default penalty can be beaten: a documented counterexample") {
  // Selecting all four items (profit 32, weight 17 > c = 9) only costs one
  // unary one-hot violation, A*(2-1)^2 = 10, because two slack bits (8+9)
  // can still match the overweight total. The gain 32 - 17 = 15 exceeds
  // A = max(p)+1 = 10, so the encoded ground state is infeasible. Raising A
  // above sum(p) - optimum = 15 restores exactness.
  const auto inst = KnapsackInstance::validated({9, 8, 8, 7}, {4, 7, 2, 4}, 9);
  REQUIRE(solve_dp(inst).solution.profit == 17);

  auto [weak, weak_map] = build_unary_knapsack(inst, 10, 1);
  const auto weak_best = brute_minimize(weak);
  CHECK(weak_best.energy == -22);  // beats the feasible optimum -17
  CHECK_FALSE(decode_bits(weak_map, weak_best.minimizers[0]).feasible);

  auto [strong, strong_map] = build_unary_knapsack(inst, 16, 1);
  const auto strong_best = brute_minimize(strong);
  CHECK(strong_best.energy == -17);
  for (const auto& bits : strong_best.minimizers)
    CHECK(decode_bits(strong_map, bits).feasible);
}

TEST_CASE("log-encoding ground degeneracy equals selections times representations") {
  std::mt19937_64 rng(123);
  int done = 0;
  while (done < 10) {
    const auto inst = random_instance(rng, 6, 12, 9);
    if (inst.size() + inst.capacity > 60) continue;  // brute over items only
    auto [model, map] = build_log_knapsack(inst, default_penalty(inst), 1);
    if (model.num_vars > 14) continue;
    ++done;

    const std::int64_t optimum = solve_dp(inst).solution.profit;
    // Enumerate optimal item selections and their slack representation counts.
    std::int64_t expected = 0;
    for (std::uint32_t mask = 0; mask < (1u << inst.size()); ++mask) {
      std::int64_t profit = 0, weight = 0;
      for (int i = 0; i < inst.size(); ++i)
        if ((mask >> i) & 1u) {
          profit += inst.profits[i];
          weight += inst.weights[i];
        }
      if (weight <= inst.capacity && profit == optimum)
        expected += count_weight_representations(map, weight).count;
    }
    const auto best = brute_minimize(model);
    CHECK(static_cast<std::int64_t>(best.minimizers.size()) == expected);
  }
}
