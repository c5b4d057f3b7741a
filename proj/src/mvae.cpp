#include "coemo/mvae.hpp"

#include <cmath>
#include <stdexcept>

#include "coemo/kernels.hpp"

namespace coemo::mvae {

namespace {

constexpr double kLog2Pi = 1.8378770664093454836;

void check_finite(const Mat& m, const char* what) {
  for (double v : m.a)
    if (!std::isfinite(v)) throw std::runtime_error(std::string("mvae: non-finite ") + what);
}

MlpParams init_mlp(int in, int hidden, int out, double scale, Rng& rng) {
  MlpParams p;
  p.w1.resize(hidden, in);
  for (auto& w : p.w1.a) w = scale * rng.normal();
  p.b1.assign(hidden, 0.0);
  p.w2.resize(out, hidden);
  for (auto& w : p.w2.a) w = scale * rng.normal();
  p.b2.assign(out, 0.0);
  return p;
}

MlpGrads zero_like(const MlpParams& p) {
  MlpGrads g;
  g.dw1.resize(p.hidden(), p.in());
  g.db1.assign(p.b1.size(), 0.0);
  g.dw2.resize(p.out(), p.hidden());
  g.db2.assign(p.b2.size(), 0.0);
  return g;
}

// Gradients are written (not accumulated) into g; optional dx receives the
// input gradient.
void mlp_backward(const MlpParams& p, const Mat& x, const Mat& hidden, const Mat& dy,
                  MlpGrads& g, Mat* dx) {
  const int b = x.rows;
  kernels::gemm_tn(p.out(), p.hidden(), b, dy.data(), hidden.data(), g.dw2.data(), false);
  kernels::col_sum(b, p.out(), dy.data(), g.db2.data());

  Mat dpre(b, p.hidden());
  kernels::gemm_nn(b, p.hidden(), p.out(), dy.data(), p.w2.data(), dpre.data(), false);
  kernels::tanh_backward(dpre.size(), hidden.data(), dpre.data(), dpre.data());

  kernels::gemm_tn(p.hidden(), p.in(), b, dpre.data(), x.data(), g.dw1.data(), false);
  kernels::col_sum(b, p.hidden(), dpre.data(), g.db1.data());
  if (dx) {
    dx->resize(b, p.in());
    kernels::gemm_nn(b, p.in(), p.hidden(), dpre.data(), p.w1.data(), dx->data(), false);
  }
}

void scale_then_add(std::vector<double>& v, double scale, const std::vector<double>& g) {
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = scale * v[i] + g[i];
}

void apply_momentum(MlpGrads& vel, const MlpGrads& g, double momentum) {
  scale_then_add(vel.dw1.a, momentum, g.dw1.a);
  scale_then_add(vel.db1, momentum, g.db1);
  scale_then_add(vel.dw2.a, momentum, g.dw2.a);
  scale_then_add(vel.db2, momentum, g.db2);
}

void ascend(MlpParams& p, const MlpGrads& vel, double lr) {
  kernels::axpy(p.w1.size(), lr, vel.dw1.data(), p.w1.data());
  kernels::axpy(p.b1.size(), lr, vel.db1.data(), p.b1.data());
  kernels::axpy(p.w2.size(), lr, vel.dw2.data(), p.w2.data());
  kernels::axpy(p.b2.size(), lr, vel.db2.data(), p.b2.data());
}

}  // namespace

MvaeParams init_mvae(const std::vector<int>& modality_dims, int latent_dim,
                     int hidden_dim, double init_scale, Rng& rng) {
  if (modality_dims.empty()) throw std::invalid_argument("init_mvae: no modalities");
  if (latent_dim < 1 || hidden_dim < 1)
    throw std::invalid_argument("init_mvae: bad dimensions");
  MvaeParams p;
  p.latent_dim = latent_dim;
  for (int dim : modality_dims) {
    if (dim < 1) throw std::invalid_argument("init_mvae: bad modality dim");
    p.enc.push_back(init_mlp(dim, hidden_dim, 2 * latent_dim, init_scale, rng));
  }
  for (int dim : modality_dims)
    p.dec.push_back(init_mlp(latent_dim, hidden_dim, dim, init_scale, rng));
  return p;
}

void mlp_forward(const MlpParams& p, const Mat& x, Mat& hidden, Mat& y) {
  if (x.cols != p.in()) throw std::invalid_argument("mlp_forward: input dim mismatch");
  const int b = x.rows;
  hidden.resize(b, p.hidden());
  kernels::gemm_nt(b, p.hidden(), p.in(), x.data(), p.w1.data(), hidden.data(), false);
  kernels::add_row_bias(b, p.hidden(), p.b1.data(), hidden.data());
  kernels::tanh_inplace(hidden.data(), hidden.size());
  y.resize(b, p.out());
  kernels::gemm_nt(b, p.out(), p.hidden(), hidden.data(), p.w2.data(), y.data(), false);
  kernels::add_row_bias(b, p.out(), p.b2.data(), y.data());
  check_finite(y, "activations");
}

DiagGaussian encode_modality(const MlpParams& enc, const std::vector<double>& o) {
  if (enc.out() % 2 != 0) throw std::invalid_argument("encode_modality: odd head size");
  const int latent = enc.out() / 2;
  Mat x(1, enc.in());
  if (static_cast<int>(o.size()) != enc.in())
    throw std::invalid_argument("encode_modality: input dim mismatch");
  std::copy(o.begin(), o.end(), x.data());
  Mat h, y;
  mlp_forward(enc, x, h, y);
  DiagGaussian g;
  g.mean.assign(y.data(), y.data() + latent);
  g.var.resize(latent);
  for (int j = 0; j < latent; ++j) {
    const double lv = std::clamp(y(0, latent + j), -kLogVarClamp, kLogVarClamp);
    g.var[j] = std::exp(lv);
  }
  return g;
}

std::vector<double> decode_modality(const MlpParams& dec, const std::vector<double>& z) {
  Mat x(1, dec.in());
  if (static_cast<int>(z.size()) != dec.in())
    throw std::invalid_argument("decode_modality: latent dim mismatch");
  std::copy(z.begin(), z.end(), x.data());
  Mat h, y;
  mlp_forward(dec, x, h, y);
  return std::vector<double>(y.data(), y.data() + y.cols);
}

DiagGaussian poe_fuse(const std::vector<DiagGaussian>& experts) {
  if (experts.empty()) throw std::invalid_argument("poe_fuse: no experts");
  const std::size_t dim = experts[0].mean.size();
  DiagGaussian out;
  out.mean.assign(dim, 0.0);
  out.var.assign(dim, 0.0);
  std::vector<double> precision(dim, 0.0), weighted(dim, 0.0);
  for (const auto& e : experts) {
    if (e.mean.size() != dim || e.var.size() != dim)
      throw std::invalid_argument("poe_fuse: dimension mismatch");
    for (std::size_t j = 0; j < dim; ++j) {
      if (!(e.var[j] > 0.0)) throw std::invalid_argument("poe_fuse: nonpositive variance");
      precision[j] += 1.0 / e.var[j];
      weighted[j] += e.mean[j] / e.var[j];
    }
  }
  for (std::size_t j = 0; j < dim; ++j) {
    out.var[j] = 1.0 / precision[j];
    out.mean[j] = weighted[j] * out.var[j];
  }
  return out;
}

std::vector<double> sample_latent(const DiagGaussian& g, Rng& rng) {
  std::vector<double> z(g.mean.size());
  for (std::size_t j = 0; j < z.size(); ++j)
    z[j] = g.mean[j] + std::sqrt(g.var[j]) * rng.normal();
  return z;
}

PriorView make_prior_view(const gmm::GmmComponent& c) {
  const int d = static_cast<int>(c.mu.size());
  Eigen::LLT<gmm::Mtx> llt(c.lambda);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("make_prior_view: component precision not positive definite");
  PriorView v;
  v.mu.assign(c.mu.data(), c.mu.data() + d);
  v.lambda.resize(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) v.lambda(i, j) = c.lambda(i, j);
  v.logdet_lambda =
      2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
  v.diag_var.resize(d);
  for (int j = 0; j < d; ++j) v.diag_var[j] = 1.0 / c.lambda(j, j);
  return v;
}

DiagGaussian prior_expert(const PriorView& v) {
  DiagGaussian g;
  g.mean = v.mu;
  g.var = v.diag_var;
  return g;
}

MvaeGrads zero_grads(const MvaeParams& p) {
  MvaeGrads g;
  for (const auto& e : p.enc) g.enc.push_back(zero_like(e));
  for (const auto& d : p.dec) g.dec.push_back(zero_like(d));
  return g;
}

double batch_elbo(const MvaeParams& p, const std::vector<Mat>& obs,
                  const std::vector<int>& signs, const std::vector<PriorView>& priors,
                  const Mat& eps, MvaeGrads* grads) {
  const int m_count = p.modalities();
  const int latent = p.latent_dim;
  if (static_cast<int>(obs.size()) != m_count)
    throw std::invalid_argument("batch_elbo: modality count mismatch");
  const int b = obs[0].rows;
  if (b < 1) throw std::invalid_argument("batch_elbo: empty batch");
  for (int m = 0; m < m_count; ++m)
    if (obs[m].rows != b || obs[m].cols != p.enc[m].in())
      throw std::invalid_argument("batch_elbo: observation shape mismatch");
  if (static_cast<int>(signs.size()) != b || eps.rows != b || eps.cols != latent)
    throw std::invalid_argument("batch_elbo: signs/eps shape mismatch");
  for (int s : signs)
    if (s < 0 || s >= static_cast<int>(priors.size()))
      throw std::invalid_argument("batch_elbo: sign out of range");

  // Encode every modality; head rows are [mean(0..L-1), logvar(L..2L-1)].
  std::vector<Mat> enc_h(m_count), enc_y(m_count), enc_var(m_count);
  for (int m = 0; m < m_count; ++m) {
    mlp_forward(p.enc[m], obs[m], enc_h[m], enc_y[m]);
    enc_var[m].resize(b, latent);
    for (int d = 0; d < b; ++d)
      for (int j = 0; j < latent; ++j) {
        const double lv =
            std::clamp(enc_y[m](d, latent + j), -kLogVarClamp, kLogVarClamp);
        enc_var[m](d, j) = std::exp(lv);
      }
  }

  // Product-of-experts fusion per row.
  Mat fmean(b, latent), fvar(b, latent);
  for (int d = 0; d < b; ++d)
    for (int j = 0; j < latent; ++j) {
      double prec = 0.0, wsum = 0.0;
      for (int m = 0; m < m_count; ++m) {
        const double v = enc_var[m](d, j);
        prec += 1.0 / v;
        wsum += enc_y[m](d, j) / v;
      }
      fvar(d, j) = 1.0 / prec;
      fmean(d, j) = wsum / prec;
    }

  Mat z(b, latent);
  for (int d = 0; d < b; ++d)
    for (int j = 0; j < latent; ++j)
      z(d, j) = fmean(d, j) + std::sqrt(fvar(d, j)) * eps(d, j);

  // Decode and accumulate the reconstruction term.
  std::vector<Mat> dec_h(m_count), dec_y(m_count);
  double recon = 0.0;
  for (int m = 0; m < m_count; ++m) {
    mlp_forward(p.dec[m], z, dec_h[m], dec_y[m]);
    recon += -0.5 * kernels::sq_diff_sum(dec_y[m].size(), obs[m].data(), dec_y[m].data());
    recon += -0.5 * kLog2Pi * static_cast<double>(b) * obs[m].cols;
  }

  // KL(q || component) per row, closed form diagonal-vs-full Gaussian.
  double kl_sum = 0.0;
  std::vector<double> r(latent), lam_r(latent);
  for (int d = 0; d < b; ++d) {
    const PriorView& pv = priors[signs[d]];
    double tr = 0.0, logdet_q = 0.0;
    for (int j = 0; j < latent; ++j) {
      tr += pv.lambda(j, j) * fvar(d, j);
      logdet_q += std::log(fvar(d, j));
      r[j] = fmean(d, j) - pv.mu[j];
    }
    double quad = 0.0;
    for (int i = 0; i < latent; ++i) {
      double s = 0.0;
      for (int j = 0; j < latent; ++j) s += pv.lambda(i, j) * r[j];
      lam_r[i] = s;
      quad += s * r[i];
    }
    kl_sum += 0.5 * (tr + quad - latent - pv.logdet_lambda - logdet_q);
  }

  const double mean_elbo = (recon - kl_sum) / b;
  if (!std::isfinite(mean_elbo)) throw std::runtime_error("batch_elbo: non-finite value");
  if (!grads) return mean_elbo;

  const double w = 1.0 / b;  // gradients of the batch mean

  // Decoder backprop; dz collects the reconstruction pull on the latent.
  Mat dz(b, latent);
  for (int m = 0; m < m_count; ++m) {
    Mat dy(b, obs[m].cols);
    for (std::size_t t = 0; t < dy.size(); ++t)
      dy.a[t] = w * (obs[m].a[t] - dec_y[m].a[t]);
    Mat dx;
    mlp_backward(p.dec[m], z, dec_h[m], dy, grads->dec[m], &dx);
    if (m == 0)
      dz = dx;
    else
      kernels::axpy(dz.size(), 1.0, dx.data(), dz.data());
  }

  // d(elbo)/d(fused mean, fused var): reparameterization plus the KL terms.
  Mat dfm(b, latent), dfv(b, latent);
  for (int d = 0; d < b; ++d) {
    const PriorView& pv = priors[signs[d]];
    for (int j = 0; j < latent; ++j) r[j] = fmean(d, j) - pv.mu[j];
    for (int i = 0; i < latent; ++i) {
      double s = 0.0;
      for (int j = 0; j < latent; ++j) s += pv.lambda(i, j) * r[j];
      const double dz_i = dz(d, i);
      dfm(d, i) = dz_i - w * s;
      dfv(d, i) = dz_i * eps(d, i) / (2.0 * std::sqrt(fvar(d, i))) -
                  w * 0.5 * (pv.lambda(i, i) - 1.0 / fvar(d, i));
    }
  }

  // PoE backward into each encoder head, then encoder backprop.
  for (int m = 0; m < m_count; ++m) {
    Mat dy(b, 2 * latent);
    for (int d = 0; d < b; ++d)
      for (int j = 0; j < latent; ++j) {
        const double v_m = enc_var[m](d, j);
        const double fv = fvar(d, j);
        const double dmu = dfm(d, j) * fv / v_m;
        double dv = dfv(d, j) * fv * fv / (v_m * v_m) +
                    dfm(d, j) * (fv / (v_m * v_m)) * (fmean(d, j) - enc_y[m](d, j));
        const double raw_lv = enc_y[m](d, latent + j);
        const double dlv = std::abs(raw_lv) < kLogVarClamp ? dv * v_m : 0.0;
        dy(d, j) = dmu;
        dy(d, latent + j) = dlv;
      }
    mlp_backward(p.enc[m], obs[m], enc_h[m], dy, grads->enc[m], nullptr);
  }
  return mean_elbo;
}

double batch_elbo(const MvaeParams& p, const std::vector<Mat>& obs,
                  const std::vector<int>& signs, const std::vector<PriorView>& priors,
                  Rng& rng, MvaeGrads* grads) {
  const int b = obs.empty() ? 0 : obs[0].rows;
  Mat eps(b, p.latent_dim);
  for (auto& e : eps.a) e = rng.normal();
  return batch_elbo(p, obs, signs, priors, eps, grads);
}

TrainState make_train_state(const MvaeParams& p) { return TrainState{zero_grads(p)}; }

double train_step(MvaeParams& p, TrainState& state, const std::vector<Mat>& obs,
                  const std::vector<int>& signs, const std::vector<PriorView>& priors,
                  double learning_rate, double momentum, Rng& rng) {
  MvaeGrads grads = zero_grads(p);
  const double elbo = batch_elbo(p, obs, signs, priors, rng, &grads);
  for (int m = 0; m < p.modalities(); ++m) {
    apply_momentum(state.velocity.enc[m], grads.enc[m], momentum);
    apply_momentum(state.velocity.dec[m], grads.dec[m], momentum);
    ascend(p.enc[m], state.velocity.enc[m], learning_rate);
    ascend(p.dec[m], state.velocity.dec[m], learning_rate);
  }
  return elbo;
}

}  // namespace coemo::mvae
