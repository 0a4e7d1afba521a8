#ifndef ANNEAL_DILOG_HPP
#define ANNEAL_DILOG_HPP

namespace anneal {

/// Real dilogarithm Li2(x) for x <= 1. Arguments are reduced into [0, 1/2]
/// via the Landen and inversion identities before summing the series, so the
/// series ratio never exceeds 1/2.
double dilog(double x);

/// Li2(-exp(a)) without materializing exp(a): for a <= 0 the reduced series
/// is used directly; for a > 0 the inversion identity
/// Li2(-e^a) = -pi^2/6 - a^2/2 - Li2(-e^-a) keeps everything finite.
double li2_neg_exp(double a);

}  // namespace anneal

#endif
