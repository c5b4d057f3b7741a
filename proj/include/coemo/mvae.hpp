// Multimodal VAE: per-modality two-layer tanh MLP encoders and decoders,
// product-of-experts fusion of diagonal Gaussians, and ELBO gradient ascent
// with hand-derived backprop (no autodiff). The decoder likelihood is a
// unit-variance Gaussian on standardized features; the KL is taken against
// the full-covariance mixture component selected by the current sign.
#pragma once

#include <vector>

#include "coemo/gmm.hpp"
#include "coemo/mat.hpp"
#include "coemo/rng.hpp"

namespace coemo::mvae {

struct DiagGaussian {
  std::vector<double> mean;
  std::vector<double> var;  // positive elementwise
};

struct MlpParams {
  Mat w1;                  // hidden x in
  std::vector<double> b1;  // hidden
  Mat w2;                  // out x hidden
  std::vector<double> b2;  // out

  int in() const { return w1.cols; }
  int hidden() const { return w1.rows; }
  int out() const { return w2.rows; }
};

struct MvaeParams {
  int latent_dim = 0;
  std::vector<MlpParams> enc;  // out = 2 * latent_dim (mean then log-var)
  std::vector<MlpParams> dec;  // out = modality dim

  int modalities() const { return static_cast<int>(enc.size()); }
};

// Weights ~ N(0, init_scale^2), biases zero; one encoder/decoder pair per
// modality, all sharing latent_dim.
MvaeParams init_mvae(const std::vector<int>& modality_dims, int latent_dim,
                     int hidden_dim, double init_scale, Rng& rng);

inline constexpr double kLogVarClamp = 13.8;  // var within [1e-6, 1e6]

// Batched forward passes; x has one observation per row.
void mlp_forward(const MlpParams& p, const Mat& x, Mat& hidden, Mat& y);

DiagGaussian encode_modality(const MlpParams& enc, const std::vector<double>& o);
std::vector<double> decode_modality(const MlpParams& dec, const std::vector<double>& z);

// Precision-weighted product of diagonal Gaussians.
DiagGaussian poe_fuse(const std::vector<DiagGaussian>& experts);

// z = mean + sqrt(var) * eps with eps standard normal.
std::vector<double> sample_latent(const DiagGaussian& g, Rng& rng);

// Mixture component prepared for repeated ELBO/conditioning use: cached
// log-determinant and the diagonal-precision view used as a PoE expert.
struct PriorView {
  std::vector<double> mu;
  Mat lambda;  // latent_dim x latent_dim
  double logdet_lambda = 0.0;
  std::vector<double> diag_var;  // 1 / lambda_jj
};

PriorView make_prior_view(const gmm::GmmComponent& c);

DiagGaussian prior_expert(const PriorView& v);

struct MlpGrads {
  Mat dw1;
  std::vector<double> db1;
  Mat dw2;
  std::vector<double> db2;
};

struct MvaeGrads {
  std::vector<MlpGrads> enc;
  std::vector<MlpGrads> dec;
};

MvaeGrads zero_grads(const MvaeParams& p);

// Mean ELBO over the batch with analytic parameter gradients (of the mean,
// ascent direction) accumulated into *grads when non-null. obs[m] is
// batch x dim_m; eps is batch x latent_dim reparameterization noise;
// priors[signs[d]] supplies the KL target for row d.
double batch_elbo(const MvaeParams& p, const std::vector<Mat>& obs,
                  const std::vector<int>& signs, const std::vector<PriorView>& priors,
                  const Mat& eps, MvaeGrads* grads);

// Same, drawing eps row-major from rng.
double batch_elbo(const MvaeParams& p, const std::vector<Mat>& obs,
                  const std::vector<int>& signs, const std::vector<PriorView>& priors,
                  Rng& rng, MvaeGrads* grads);

// Momentum buffers for gradient ascent; shapes match MvaeParams.
struct TrainState {
  MvaeGrads velocity;
};

TrainState make_train_state(const MvaeParams& p);

// One full-batch ascent step: v = momentum*v + grad, params += lr*v.
// Returns the batch mean ELBO at the pre-update parameters.
double train_step(MvaeParams& p, TrainState& state, const std::vector<Mat>& obs,
                  const std::vector<int>& signs, const std::vector<PriorView>& priors,
                  double learning_rate, double momentum, Rng& rng);

}  // namespace coemo::mvae
