#include "anneal/quadrature.hpp"

#include <cmath>
#include <string>

namespace anneal {

QuadratureFailure::QuadratureFailure(double estimate, double error)
    : std::runtime_error("QUADRATURE_FAILED: estimate " + std::to_string(estimate) +
                         ", panel error " + std::to_string(error)),
      best_estimate(estimate),
      error_estimate(error) {}

namespace {

// 15-point Kronrod nodes/weights with the embedded 7-point Gauss rule.
constexpr double kNodes[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr double kWeightsK[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWeightsG[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double kronrod;
  double error;
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double result_g = kWeightsG[3] * fc;
  double result_k = kWeightsK[7] * fc;
  for (int j = 0; j < 7; ++j) {
    const double x = half * kNodes[j];
    const double fsum = f(center - x) + f(center + x);
    result_k += kWeightsK[j] * fsum;
    if (j % 2 == 1) result_g += kWeightsG[j / 2] * fsum;
  }
  return {result_k * half, std::fabs((result_k - result_g) * half)};
}

double integrate_rec(const std::function<double(double)>& f, double a, double b,
                     double tol, int depth) {
  const Panel p = gk15(f, a, b);
  if (p.error <= tol || b - a < 1e-15) return p.kronrod;
  if (depth <= 0) throw QuadratureFailure(p.kronrod, p.error);
  const double mid = 0.5 * (a + b);
  return integrate_rec(f, a, mid, 0.5 * tol, depth - 1) +
         integrate_rec(f, mid, b, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol, int max_depth) {
  if (a == b) return 0.0;
  if (a > b) return -integrate_rec(f, b, a, abs_tol, max_depth);
  return integrate_rec(f, a, b, abs_tol, max_depth);
}

}  // namespace anneal
