#include "anneal/dilog.hpp"

#include <cmath>
#include <numbers>

namespace anneal {

namespace {

constexpr double kPi2Over6 = std::numbers::pi * std::numbers::pi / 6.0;

// Series sum of Li2(w) for |w| <= 1/2; geometric term decay.
double dilog_series(double w) {
  double sum = 0.0, term = w;
  for (int n = 1; n < 80; ++n) {
    const double add = term / (static_cast<double>(n) * n);
    sum += add;
    if (std::fabs(add) < 1e-18 * (1.0 + std::fabs(sum))) break;
    term *= w;
  }
  return sum;
}

}  // namespace

double dilog(double x) {
  if (x == 0.0) return 0.0;
  if (x == 1.0) return kPi2Over6;
  if (x < -1.0) {
    // Inversion: Li2(x) = -pi^2/6 - ln^2(-x)/2 - Li2(1/x), 1/x in (-1, 0).
    const double l = std::log(-x);
    return -kPi2Over6 - 0.5 * l * l - dilog(1.0 / x);
  }
  if (x < -0.5) {
    // Landen: Li2(x) = -Li2(x/(x-1)) - ln^2(1-x)/2, x/(x-1) in (1/3, 1/2].
    const double l = std::log1p(-x);
    return -dilog_series(x / (x - 1.0)) - 0.5 * l * l;
  }
  if (x <= 0.5) return dilog_series(x);
  // x in (1/2, 1): Landen sends x/(x-1) below -1; one inversion closes it.
  const double l = std::log1p(-x);
  return -dilog(x / (x - 1.0)) - 0.5 * l * l;
}

double li2_neg_exp(double a) {
  if (a > 0.0) return -kPi2Over6 - 0.5 * a * a - li2_neg_exp(-a);
  // z = -e^a in [-1, 0); Landen maps z/(z-1) = 1/(1+e^-a) into (0, 1/2].
  const double w = 1.0 / (1.0 + std::exp(-a));
  const double l = std::log1p(std::exp(a));  // ln(1 - z) = ln(1 + e^a)
  return -dilog_series(w) - 0.5 * l * l;
}

}  // namespace anneal
