#include "bskde/beta.hpp"

#include <cmath>
#include <string>

#include "bskde/errors.hpp"

namespace bskde {

BetaParams::BetaParams(double p_, double q_) : p(p_), q(q_) {
  if (!(p > 0.0) || !(q > 0.0) || !std::isfinite(p) || !std::isfinite(q)) {
    throw ValidationError("beta shapes must be positive finite, got p=" +
                          std::to_string(p_) + " q=" + std::to_string(q_));
  }
}

double log_beta(double p, double q) {
  return std::lgamma(p) + std::lgamma(q) - std::lgamma(p + q);
}

double beta_pdf(double t, const BetaParams& params) {
  if (!(t >= 0.0 && t <= 1.0)) {
    throw ValidationError("beta_pdf argument outside [0,1]: " +
                          std::to_string(t));
  }
  const double pe = params.p - 1.0;
  const double qe = params.q - 1.0;
  if (t == 0.0 && pe < 0.0) {
    throw NumericError("beta_pdf diverges at t=0 for shape p < 1");
  }
  if (t == 1.0 && qe < 0.0) {
    throw NumericError("beta_pdf diverges at t=1 for shape q < 1");
  }
  double lg = -log_beta(params.p, params.q);
  if (pe != 0.0) {
    if (t == 0.0) return 0.0;
    lg += pe * std::log(t);
  }
  if (qe != 0.0) {
    if (t == 1.0) return 0.0;
    lg += qe * std::log1p(-t);
  }
  return std::exp(lg);
}

double beta_mean(const BetaParams& params) {
  return params.p / (params.p + params.q);
}

double beta_variance(const BetaParams& params) {
  const double s = params.p + params.q;
  return params.p * params.q / (s * s * (s + 1.0));
}

BetaMoments beta_moments(const BetaParams& params) {
  if (params.p < 1.0 || params.q < 1.0 ||
      (params.p == 1.0 && params.q == 1.0)) {
    throw ValidationError(
        "mode and dispersion undefined unless p >= 1, q >= 1 and "
        "(p, q) != (1, 1)");
  }
  const double denom = params.p + params.q - 2.0;
  return BetaMoments{beta_mean(params), beta_variance(params),
                     (params.p - 1.0) / denom, 1.0 / denom};
}

}  // namespace bskde
