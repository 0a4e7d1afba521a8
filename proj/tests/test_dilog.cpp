#include <doctest.h>

#include <cmath>
#include <numbers>

#include "anneal/dilog.hpp"
#include "anneal/quadrature.hpp"

using namespace anneal;

namespace {
constexpr double kPi2 = std::numbers::pi * std::numbers::pi;
constexpr double kLn2 = std::numbers::ln2;

// Independent oracle: Li2(x) = -int_0^x ln(1-u)/u du.
double dilog_by_quadrature(double x) {
  return integrate(
      [](double u) { return u == 0.0 ? 1.0 : -std::log1p(-u) / u; }, 0.0, x, 1e-14);
}
}  // namespace

TEST_CASE("special values") {
  CHECK(dilog(0.0) == 0.0);
  CHECK(std::fabs(dilog(1.0) - kPi2 / 6.0) < 1e-15);
  CHECK(std::fabs(dilog(-1.0) - (-kPi2 / 12.0)) < 1e-15);
  CHECK(std::fabs(dilog(0.5) - (kPi2 / 12.0 - 0.5 * kLn2 * kLn2)) < 1e-15);
}

TEST_CASE("agreement with the integral definition") {
  for (const double x : {-8.0, -3.0, -1.5, -1.0, -0.7, -0.3, 0.1, 0.4, 0.6, 0.9, 0.99}) {
    const double ref = dilog_by_quadrature(x);
    CHECK(std::fabs(dilog(x) - ref) < 1e-13 * std::max(1.0, std::fabs(ref)));
  }
}

TEST_CASE("li2_neg_exp matches dilog where exp(a) is representable") {
  for (const double a : {-30.0, -5.0, -1.0, 0.0, 1.0, 5.0}) {
    const double ref = dilog(-std::exp(a));
    CHECK(std::fabs(li2_neg_exp(a) - ref) < 1e-12 * std::max(1.0, std::fabs(ref)));
  }
}

TEST_CASE("li2_neg_exp asymptotics") {
  // Li2(-eps) ~ -eps for tiny eps.
  const double eps = std::exp(-50.0);
  CHECK(li2_neg_exp(-50.0) == doctest::Approx(-eps).epsilon(1e-12));
  // Large positive arguments stay finite even though e^a overflows.
  const double v = li2_neg_exp(800.0);
  CHECK(std::isfinite(v));
  CHECK(std::fabs(v - (-kPi2 / 6.0 - 800.0 * 800.0 / 2.0)) < 1e-6);
}

TEST_CASE("pinned value at a = 1") {
  const double ref = -1.806286070444774;  // quadrature of -int_0^e ln(1+u)/u du
  CHECK(std::fabs(li2_neg_exp(1.0) - ref) < 1e-13);
  const double by_quad =
      -integrate([](double u) { return u == 0.0 ? 1.0 : std::log1p(u) / u; }, 0.0,
                 std::exp(1.0), 1e-14);
  CHECK(std::fabs(li2_neg_exp(1.0) - by_quad) < 1e-13);
}

TEST_CASE("inversion identity holds across the whole range") {
  // Li2(-e^a) + Li2(-e^-a) + pi^2/6 + a^2/2 = 0.
  for (double a = 0.0; a <= 50.0; a += 2.5) {
    const double residual =
        li2_neg_exp(a) + li2_neg_exp(-a) + kPi2 / 6.0 + a * a / 2.0;
    CHECK(std::fabs(residual) < 1e-12 * std::max(1.0, a * a));
  }
}

TEST_CASE("classical functional equations") {
  for (const double z : {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}) {
    // Euler reflection: Li2(z) + Li2(1-z) = pi^2/6 - ln(z) ln(1-z).
    const double reflection =
        dilog(z) + dilog(1.0 - z) - (kPi2 / 6.0 - std::log(z) * std::log1p(-z));
    CHECK(std::fabs(reflection) < 1e-13);
    // Duplication: Li2(z) + Li2(-z) = Li2(z^2) / 2.
    const double duplication = dilog(z) + dilog(-z) - 0.5 * dilog(z * z);
    CHECK(std::fabs(duplication) < 1e-13);
  }
}
