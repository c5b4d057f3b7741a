// Gaussian mixture over the latent space with Normal-Wishart conjugate
// posteriors. Components carry full precision matrices; mixing weights stay
// uniform and fixed.
#pragma once

#include <Eigen/Dense>
#include <vector>

#include "coemo/rng.hpp"

namespace coemo::gmm {

using Vec = Eigen::VectorXd;
using Mtx = Eigen::MatrixXd;

struct NwHyper {
  Vec m0;
  double kappa0 = 0.1;
  double nu0 = 0.0;  // must exceed dim - 1
  Mtx w0;

  // m0 = 0, kappa0 = 0.1, nu0 = dim + 2, w0 = I/nu0: weak prior with
  // unit-scale precision expectation.
  static NwHyper standard(int dim);
  void validate() const;
};

struct GmmComponent {
  Vec mu;
  Mtx lambda;  // precision, symmetric positive definite
};

struct GmmParams {
  std::vector<GmmComponent> comps;
  Vec pi;  // mixing weights, sum to 1

  int k() const { return static_cast<int>(comps.size()); }
  int dim() const { return comps.empty() ? 0 : static_cast<int>(comps[0].mu.size()); }
};

// log N(z | mu, lambda^{-1}) via Cholesky of the precision.
double component_loglik(const Vec& z, const GmmComponent& c);

// p_k proportional to pi_k exp(loglik_k), log-sum-exp stabilized.
Vec sign_posterior(const Vec& z, const GmmParams& gmm);

struct NwPosterior {
  Vec m_n;
  double kappa_n = 0.0;
  double nu_n = 0.0;
  Mtx w_n;
};

// Batch conjugate update; zs has one data point per row (may have 0 rows).
NwPosterior nw_posterior(const Mtx& zs, const NwHyper& hyper);

// Wishart(nu, scale) draw via the Bartlett decomposition.
Mtx sample_wishart(double nu, const Mtx& scale, Rng& rng);

// Draw (mu, lambda) from the Normal-Wishart posterior given assigned latents.
GmmComponent sample_component_posterior(const Mtx& zs, const NwHyper& hyper, Rng& rng);

// Resample every component from its posterior under the sign assignment;
// components with no data fall back to the prior. pi is uniform.
GmmParams update_agent_gmm(const Mtx& latents, const std::vector<int>& signs, int k,
                           const NwHyper& hyper, Rng& rng);

// K prior draws; the round-zero mixture before any latents exist.
GmmParams prior_gmm(int k, const NwHyper& hyper, Rng& rng);

}  // namespace coemo::gmm
