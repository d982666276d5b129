#pragma once

namespace bskde {

/// Shape pair (p, q) of a beta density on [0, 1]; both strictly positive.
struct BetaParams {
  BetaParams(double p_, double q_);
  double p;
  double q;
};

/// log B(p, q) through log-gamma differences; safe for shapes up to ~1/h.
double log_beta(double p, double q);

/// t^(p-1) (1-t)^(q-1) / B(p, q) on [0, 1]. Throws NumericError when the
/// value is non-finite, i.e. t on the boundary with the matching shape < 1.
double beta_pdf(double t, const BetaParams& params);

double beta_mean(const BetaParams& params);
double beta_variance(const BetaParams& params);

struct BetaMoments {
  double mean;
  double variance;
  double mode;
  double dispersion;
};

/// Mean, variance, mode (p-1)/(p+q-2) and dispersion 1/(p+q-2). The mode and
/// dispersion require a unimodal density: p >= 1, q >= 1, (p, q) != (1, 1).
BetaMoments beta_moments(const BetaParams& params);

}  // namespace bskde
