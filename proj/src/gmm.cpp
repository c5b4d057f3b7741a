#include "coemo/gmm.hpp"

#include <cmath>
#include <stdexcept>

namespace coemo::gmm {

namespace {
constexpr double kLog2Pi = 1.8378770664093454836;
}

NwHyper NwHyper::standard(int dim) {
  NwHyper h;
  h.m0 = Vec::Zero(dim);
  h.kappa0 = 0.1;
  h.nu0 = dim + 2;
  h.w0 = Mtx::Identity(dim, dim) / h.nu0;
  return h;
}

void NwHyper::validate() const {
  const int d = static_cast<int>(m0.size());
  if (d < 1) throw std::invalid_argument("NwHyper: empty prior mean");
  if (!(kappa0 > 0.0)) throw std::invalid_argument("NwHyper: kappa0 must be > 0");
  if (!(nu0 > d - 1)) throw std::invalid_argument("NwHyper: nu0 must exceed dim - 1");
  if (w0.rows() != d || w0.cols() != d)
    throw std::invalid_argument("NwHyper: w0 shape mismatch");
  Eigen::LLT<Mtx> llt(w0);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument("NwHyper: w0 not positive definite");
}

double component_loglik(const Vec& z, const GmmComponent& c) {
  if (z.size() != c.mu.size() || c.lambda.rows() != z.size() ||
      c.lambda.cols() != z.size())
    throw std::invalid_argument("component_loglik: dimension mismatch");
  Eigen::LLT<Mtx> llt(c.lambda);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("component_loglik: precision not positive definite");
  const double half_logdet = llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
  const Vec r = z - c.mu;
  const double quad = r.dot(c.lambda * r);
  return half_logdet - 0.5 * z.size() * kLog2Pi - 0.5 * quad;
}

Vec sign_posterior(const Vec& z, const GmmParams& gmm) {
  const int k = gmm.k();
  if (k < 1) throw std::invalid_argument("sign_posterior: empty mixture");
  Vec logp(k);
  for (int i = 0; i < k; ++i) {
    const double lpi = gmm.pi[i] > 0.0 ? std::log(gmm.pi[i])
                                       : -std::numeric_limits<double>::infinity();
    logp[i] = lpi + component_loglik(z, gmm.comps[i]);
  }
  const double mx = logp.maxCoeff();
  if (!std::isfinite(mx))
    throw std::runtime_error("sign_posterior: no component has positive density");
  Vec p = (logp.array() - mx).exp();
  p /= p.sum();
  return p;
}

NwPosterior nw_posterior(const Mtx& zs, const NwHyper& hyper) {
  hyper.validate();
  const int d = static_cast<int>(hyper.m0.size());
  if (zs.rows() > 0 && zs.cols() != d)
    throw std::invalid_argument("nw_posterior: data dimension mismatch");
  const double n = static_cast<double>(zs.rows());

  NwPosterior post;
  post.kappa_n = hyper.kappa0 + n;
  post.nu_n = hyper.nu0 + n;
  if (zs.rows() == 0) {
    post.m_n = hyper.m0;
    post.w_n = hyper.w0;
    return post;
  }

  const Vec zbar = zs.colwise().mean();
  post.m_n = (hyper.kappa0 * hyper.m0 + n * zbar) / post.kappa_n;

  Mtx centered = zs.rowwise() - zbar.transpose();
  Mtx scatter = centered.transpose() * centered;
  const Vec dm = zbar - hyper.m0;
  Mtx w_inv = hyper.w0.llt().solve(Mtx::Identity(d, d));
  w_inv += scatter + (hyper.kappa0 * n / post.kappa_n) * (dm * dm.transpose());
  w_inv = 0.5 * (w_inv + w_inv.transpose());

  Eigen::LLT<Mtx> llt(w_inv);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("nw_posterior: posterior scale not positive definite");
  post.w_n = llt.solve(Mtx::Identity(d, d));
  post.w_n = 0.5 * (post.w_n + post.w_n.transpose());
  return post;
}

Mtx sample_wishart(double nu, const Mtx& scale, Rng& rng) {
  const int d = static_cast<int>(scale.rows());
  if (scale.cols() != d) throw std::invalid_argument("sample_wishart: scale not square");
  if (!(nu > d - 1)) throw std::invalid_argument("sample_wishart: nu must exceed dim - 1");
  Eigen::LLT<Mtx> llt(scale);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("sample_wishart: scale not positive definite");

  Mtx a = Mtx::Zero(d, d);
  for (int i = 0; i < d; ++i) a(i, i) = std::sqrt(rng.chi_squared(nu - i));
  for (int i = 1; i < d; ++i)
    for (int j = 0; j < i; ++j) a(i, j) = rng.normal();

  Mtx la = llt.matrixL() * a;
  Mtx w = la * la.transpose();
  return 0.5 * (w + w.transpose());
}

GmmComponent sample_component_posterior(const Mtx& zs, const NwHyper& hyper, Rng& rng) {
  const NwPosterior post = nw_posterior(zs, hyper);
  const int d = static_cast<int>(post.m_n.size());

  // Reuse the Bartlett factor so mu can be drawn from (kappa lambda)^{-1}
  // without a second factorization.
  Eigen::LLT<Mtx> llt(post.w_n);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("sample_component_posterior: scale not positive definite");
  Mtx a = Mtx::Zero(d, d);
  for (int i = 0; i < d; ++i) a(i, i) = std::sqrt(rng.chi_squared(post.nu_n - i));
  for (int i = 1; i < d; ++i)
    for (int j = 0; j < i; ++j) a(i, j) = rng.normal();
  Mtx m = llt.matrixL() * a;  // lambda = m m^T

  GmmComponent c;
  c.lambda = m * m.transpose();
  c.lambda = 0.5 * (c.lambda + c.lambda.transpose());

  Vec xi(d);
  for (int i = 0; i < d; ++i) xi[i] = rng.normal();
  // mu = m_n + m^{-T} xi / sqrt(kappa_n): covariance (kappa_n lambda)^{-1}.
  Vec u = m.transpose().triangularView<Eigen::Upper>().solve(xi);
  c.mu = post.m_n + u / std::sqrt(post.kappa_n);
  return c;
}

GmmParams update_agent_gmm(const Mtx& latents, const std::vector<int>& signs, int k,
                           const NwHyper& hyper, Rng& rng) {
  if (k < 1) throw std::invalid_argument("update_agent_gmm: k must be >= 1");
  if (static_cast<std::size_t>(latents.rows()) != signs.size())
    throw std::invalid_argument("update_agent_gmm: latents/signs length mismatch");
  const int d = static_cast<int>(hyper.m0.size());

  std::vector<std::vector<int>> members(k);
  for (std::size_t i = 0; i < signs.size(); ++i) {
    if (signs[i] < 0 || signs[i] >= k)
      throw std::invalid_argument("update_agent_gmm: sign out of range");
    members[signs[i]].push_back(static_cast<int>(i));
  }

  GmmParams gmm;
  gmm.pi = Vec::Constant(k, 1.0 / k);
  gmm.comps.reserve(k);
  for (int c = 0; c < k; ++c) {
    Mtx zs(members[c].size(), d);
    for (std::size_t r = 0; r < members[c].size(); ++r)
      zs.row(r) = latents.row(members[c][r]);
    gmm.comps.push_back(sample_component_posterior(zs, hyper, rng));
  }
  return gmm;
}

GmmParams prior_gmm(int k, const NwHyper& hyper, Rng& rng) {
  const int d = static_cast<int>(hyper.m0.size());
  return update_agent_gmm(Mtx(0, d), {}, k, hyper, rng);
}

}  // namespace coemo::gmm
