#include "anneal/phase.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "anneal/quadrature.hpp"

namespace anneal {

namespace {

constexpr double kLn2 = std::numbers::ln2;
constexpr double kPi2 = std::numbers::pi * std::numbers::pi;
constexpr double kSmallAlpha = 1e-3;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// ln(1 + e^t) without overflow.
double softplus(double t) {
  return std::max(t, 0.0) + std::log1p(std::exp(-std::fabs(t)));
}

// 1/(1 + e^t) without overflow.
double fermi(double t) {
  if (t > 0.0) {
    const double e = std::exp(-t);
    return e / (1.0 + e);
  }
  return 1.0 / (1.0 + std::exp(t));
}

}  // namespace

PhasePoint unconstrained_closed(double alpha) {
  PhasePoint p;
  p.alpha = alpha;
  p.rho = kNaN;
  if (std::fabs(alpha) < kSmallAlpha) {
    const double a2 = alpha * alpha;
    p.x = 0.25 - alpha / 12.0 + alpha * a2 / 240.0;
    p.kappa_c = 1.0 - a2 / (24.0 * kLn2) + a2 * a2 / (320.0 * kLn2);
    return p;
  }
  const double li2 = li2_neg_exp(alpha);
  const double lse = softplus(alpha);
  p.x = -kPi2 / (12.0 * alpha * alpha) + 0.5 - lse / alpha - li2 / (alpha * alpha);
  p.kappa_c = -(kPi2 / (6.0 * alpha) + 2.0 * li2 / alpha + lse) / kLn2;
  return p;
}

PhasePoint unconstrained_quad(double alpha) {
  PhasePoint p;
  p.alpha = alpha;
  p.rho = kNaN;
  p.x = integrate([alpha](double y) { return y * fermi(alpha * y); }, 0.0, 1.0, 1e-13);
  p.kappa_c = integrate(
                  [alpha](double y) {
                    return softplus(-alpha * y) + alpha * y * fermi(alpha * y);
                  },
                  0.0, 1.0, 1e-13) /
              kLn2;
  return p;
}

ExpansionBranches x_near_kappa_one(double kappa_c) {
  if (!(kappa_c > 0.9 && kappa_c <= 1.0))
    throw OutOfValidityRange("OUT_OF_VALIDITY_RANGE: kappa_c must be in (0.9, 1]");
  const double d = 2.0 * std::sqrt(6.0 * kLn2) * std::sqrt(1.0 - kappa_c);
  return {(3.0 - d) / 12.0, (3.0 + d) / 12.0};
}

double x_near_kappa_zero(double kappa_c) {
  if (!(kappa_c > 0.0 && kappa_c <= 0.05))
    throw OutOfValidityRange("OUT_OF_VALIDITY_RANGE: kappa_c must be in (0, 0.05]");
  return (12.0 / 49.0) * kLn2 * kLn2 * kappa_c * kappa_c;
}

DerivativeCheck derivative_relation_check(double alpha, double step) {
  if (std::fabs(alpha) < 1e-2)
    throw OutOfValidityRange("OUT_OF_VALIDITY_RANGE: need |alpha| >= 1e-2");
  const PhasePoint hi = unconstrained_closed(alpha + step);
  const PhasePoint lo = unconstrained_closed(alpha - step);
  const double dx = (hi.x - lo.x) / (2.0 * step);
  const double dk = (hi.kappa_c - lo.kappa_c) / (2.0 * step);
  DerivativeCheck out;
  out.residual = std::fabs(alpha * dx - kLn2 * dk);
  out.slope = dx / dk;
  out.expected_slope = kLn2 / alpha;
  return out;
}

PhasePoint constrained_quad(double alpha, double mu) {
  PhasePoint p;
  p.alpha = alpha;
  p.mu = mu;
  p.rho = integrate([=](double y) { return fermi(alpha * y - mu); }, 0.0, 1.0, 1e-13);
  p.x = integrate([=](double y) { return y * fermi(alpha * y - mu); }, 0.0, 1.0, 1e-13);
  p.kappa_c = integrate(
                  [=](double y) {
                    const double t = alpha * y - mu;
                    return softplus(-t) + t * fermi(t);
                  },
                  0.0, 1.0, 1e-13) /
              kLn2;
  return p;
}

ConstrainedClosedResult constrained_closed(double alpha, double mu,
                                           ClosedFormFidelity fidelity) {
  if (std::fabs(alpha) < kSmallAlpha)
    throw OutOfValidityRange("OUT_OF_VALIDITY_RANGE: need |alpha| >= 1e-3");

  PhasePoint p;
  p.alpha = alpha;
  p.mu = mu;

  const double lse0 = softplus(-mu);           // ln(1 + e^-mu)
  const double lse1 = softplus(alpha - mu);    // ln(1 + e^(alpha-mu))
  const double li0 = li2_neg_exp(-mu);         // Li2(-e^-mu)
  const double li1 = li2_neg_exp(alpha - mu);  // Li2(-e^(alpha-mu))

  // Scaled energy, as printed (consistent with the defining integral).
  p.x = (alpha - 2.0 * lse1) / (2.0 * alpha) + (li0 - li1) / (alpha * alpha);

  if (fidelity == ClosedFormFidelity::Paper) {
    p.rho = 1.0 - (lse0 - lse1) / alpha;
    p.kappa_c = (-lse1 + 2.0 * (li0 - li1) / alpha) / kLn2;
  } else {
    p.rho = 1.0 - (lse1 - lse0) / alpha;
    p.kappa_c =
        ((li2_neg_exp(mu - alpha) - li2_neg_exp(mu)) / alpha + alpha * p.x - mu * p.rho) /
        kLn2;
  }

  ConstrainedClosedResult result;
  result.point = p;
  result.quad = constrained_quad(alpha, mu);
  result.max_deviation = std::max({std::fabs(p.rho - result.quad.rho),
                                   std::fabs(p.x - result.quad.x),
                                   std::fabs(p.kappa_c - result.quad.kappa_c)});
  return result;
}

GoldenPointReport golden_point_check() {
  const double s5 = std::sqrt(5.0);
  GoldenPointReport r;
  r.alpha_minus = 0.5 * std::log(-1.0 + s5);
  r.alpha_plus = 0.5 * std::log(1.0 + s5);
  r.direct_minus = li2_neg_exp(r.alpha_minus);
  r.direct_plus = li2_neg_exp(r.alpha_plus);
  const double lm = std::log((s5 - 1.0) / 2.0);
  const double lp = std::log((s5 + 1.0) / 2.0);
  r.stated_minus = -kPi2 / 15.0 + 0.5 * lm * lm;
  r.stated_plus = -kPi2 / 10.0 + 0.5 * lp * lp;
  return r;
}

}  // namespace anneal
