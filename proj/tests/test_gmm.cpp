#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>

#include "coemo/gmm.hpp"
#include "doctest.h"

using namespace coemo::gmm;
using coemo::Rng;

namespace {

Mtx random_spd(int d, Rng& rng, double scale = 1.0) {
  Mtx a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = rng.normal();
  Mtx s = scale * (a * a.transpose()) + 0.5 * Mtx::Identity(d, d);
  return 0.5 * (s + s.transpose());
}

Mtx gauss_rows(int n, int d, Rng& rng, double shift = 0.0) {
  Mtx zs(n, d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < d; ++j) zs(i, j) = rng.normal() + shift;
  return zs;
}

// Independent oracle: Normal-Wishart updated one observation at a time.
NwPosterior sequential_posterior(const Mtx& zs, const NwHyper& hyper) {
  const int d = static_cast<int>(hyper.m0.size());
  Vec m = hyper.m0;
  double kappa = hyper.kappa0;
  double nu = hyper.nu0;
  Mtx w_inv = hyper.w0.inverse();
  for (int i = 0; i < zs.rows(); ++i) {
    const Vec z = zs.row(i).transpose();
    const Vec dm = z - m;
    w_inv += (kappa / (kappa + 1.0)) * (dm * dm.transpose());
    m = (kappa * m + z) / (kappa + 1.0);
    kappa += 1.0;
    nu += 1.0;
  }
  NwPosterior p;
  p.m_n = m;
  p.kappa_n = kappa;
  p.nu_n = nu;
  p.w_n = w_inv.inverse();
  return p;
}

}  // namespace

TEST_CASE("component loglik matches the analytic Gaussian density") {
  GmmComponent c;
  c.mu = Vec::Zero(9);
  c.lambda = Mtx::Identity(9, 9);
  const double at_mean = component_loglik(Vec::Zero(9), c);
  CHECK(at_mean == doctest::Approx(-4.5 * std::log(2.0 * M_PI)).epsilon(1e-14));
  CHECK(at_mean == doctest::Approx(-8.27044679884).epsilon(1e-10));

  GmmComponent s;
  s.mu = Vec::Zero(1);
  s.lambda = Mtx::Constant(1, 1, 4.0);
  const double got = component_loglik(Vec::Constant(1, 1.0), s);
  CHECK(got == doctest::Approx(0.5 * (std::log(4.0) - std::log(2.0 * M_PI) - 4.0))
                   .epsilon(1e-14));
  const double numeric = std::log(std::sqrt(4.0 / (2.0 * M_PI)) * std::exp(-0.5 * 4.0));
  CHECK(got == doctest::Approx(numeric).epsilon(1e-12));
}

TEST_CASE("component loglik peaks at the mean and rejects bad precision") {
  Rng rng(31);
  GmmComponent c;
  c.mu = Vec::Constant(4, 0.3);
  c.lambda = random_spd(4, rng);
  const double peak = component_loglik(c.mu, c);
  for (int i = 0; i < 50; ++i) {
    Vec z(4);
    for (int j = 0; j < 4; ++j) z[j] = c.mu[j] + 0.5 * rng.normal();
    CHECK(component_loglik(z, c) <= peak);
  }

  GmmComponent bad;
  bad.mu = Vec::Zero(2);
  bad.lambda = -Mtx::Identity(2, 2);
  CHECK_THROWS_AS((void)component_loglik(Vec::Zero(2), bad), std::runtime_error);
  CHECK_THROWS_AS((void)component_loglik(Vec::Zero(3), c), std::invalid_argument);
}

TEST_CASE("sign posterior is uniform for identical components") {
  GmmParams gmm;
  gmm.pi = Vec::Constant(5, 0.2);
  for (int i = 0; i < 5; ++i) {
    GmmComponent c;
    c.mu = Vec::Ones(3);
    c.lambda = 2.0 * Mtx::Identity(3, 3);
    gmm.comps.push_back(c);
  }
  const Vec p = sign_posterior(Vec::Zero(3), gmm);
  CHECK(std::abs(p.sum() - 1.0) < 1e-12);
  for (int i = 0; i < 5; ++i) CHECK(p[i] == doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("sign posterior concentrates on the near component") {
  GmmParams gmm;
  gmm.pi = Vec::Constant(2, 0.5);
  GmmComponent a, b;
  a.mu = Vec::Zero(2);
  a.lambda = Mtx::Identity(2, 2);
  b.mu = Vec::Constant(2, 10.0);  // 10 sigma away
  b.lambda = Mtx::Identity(2, 2);
  gmm.comps = {a, b};
  const Vec p = sign_posterior(Vec::Zero(2), gmm);
  CHECK(p[0] > 0.99);
  CHECK(std::abs(p.sum() - 1.0) < 1e-12);
}

TEST_CASE("sign posterior matches direct normalization and survives extremes") {
  Rng rng(33);
  GmmParams gmm;
  gmm.pi = Vec(3);
  gmm.pi << 0.2, 0.5, 0.3;
  for (int i = 0; i < 3; ++i) {
    GmmComponent c;
    c.mu = Vec(2);
    c.mu << rng.normal(), rng.normal();
    c.lambda = random_spd(2, rng);
    gmm.comps.push_back(c);
  }
  Vec z(2);
  z << 0.4, -0.2;
  const Vec p = sign_posterior(z, gmm);
  double direct[3], tot = 0.0;
  for (int i = 0; i < 3; ++i) {
    direct[i] = gmm.pi[i] * std::exp(component_loglik(z, gmm.comps[i]));
    tot += direct[i];
  }
  for (int i = 0; i < 3; ++i) CHECK(p[i] == doctest::Approx(direct[i] / tot).epsilon(1e-12));

  // Far tail: naive exponentiation would underflow to 0/0.
  GmmParams far;
  far.pi = Vec::Constant(2, 0.5);
  GmmComponent f1, f2;
  f1.mu = Vec::Zero(1);
  f1.lambda = Mtx::Identity(1, 1);
  f2.mu = Vec::Constant(1, 3.0);
  f2.lambda = Mtx::Identity(1, 1);
  far.comps = {f1, f2};
  const Vec pf = sign_posterior(Vec::Constant(1, 1000.0), far);
  CHECK(std::isfinite(pf[0]));
  CHECK(std::abs(pf.sum() - 1.0) < 1e-12);
  CHECK(pf[1] > 0.999);  // closer of the two, despite both densities underflowing
}

TEST_CASE("batch posterior equals the sequential one-point oracle") {
  Rng rng(41);
  for (int trial = 0; trial < 8; ++trial) {
    const int d = 2 + trial % 4;
    const int n = 1 + static_cast<int>(rng.uniform() * 30);
    NwHyper h;
    h.m0 = Vec(d);
    for (int j = 0; j < d; ++j) h.m0[j] = rng.normal();
    h.kappa0 = 0.2 + rng.uniform();
    h.nu0 = d + 1 + 2.0 * rng.uniform();
    h.w0 = random_spd(d, rng, 0.5);
    const Mtx zs = gauss_rows(n, d, rng, 0.7);

    const NwPosterior batch = nw_posterior(zs, h);
    const NwPosterior seq = sequential_posterior(zs, h);
    CHECK(batch.kappa_n == doctest::Approx(seq.kappa_n).epsilon(1e-12));
    CHECK(batch.nu_n == doctest::Approx(seq.nu_n).epsilon(1e-12));
    CHECK((batch.m_n - seq.m_n).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((batch.w_n - seq.w_n).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("empty data returns the prior and huge kappa pins the mean") {
  NwHyper h = NwHyper::standard(4);
  const NwPosterior empty = nw_posterior(Mtx(0, 4), h);
  CHECK(empty.kappa_n == h.kappa0);
  CHECK(empty.nu_n == h.nu0);
  CHECK((empty.m_n - h.m0).cwiseAbs().maxCoeff() == 0.0);
  CHECK((empty.w_n - h.w0).cwiseAbs().maxCoeff() == 0.0);

  Rng rng(43);
  h.kappa0 = 1e12;
  const NwPosterior pinned = nw_posterior(gauss_rows(20, 4, rng, 3.0), h);
  CHECK((pinned.m_n - h.m0).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("wishart draws have mean nu*scale and stay SPD") {
  Rng rng(47);
  const int d = 2;
  const double nu = 5.0;
  const Mtx w = random_spd(d, rng, 0.3);
  const int n = 40000;
  Mtx sum = Mtx::Zero(d, d), sumsq = Mtx::Zero(d, d);
  for (int i = 0; i < n; ++i) {
    const Mtx s = sample_wishart(nu, w, rng);
    CHECK((s - s.transpose()).cwiseAbs().maxCoeff() < 1e-12);
    if (i < 100) CHECK(Eigen::LLT<Mtx>(s).info() == Eigen::Success);
    sum += s;
    sumsq += s.cwiseProduct(s);
  }
  const Mtx mean = sum / n;
  const Mtx want = nu * w;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const double var = sumsq(i, j) / n - mean(i, j) * mean(i, j);
      const double se = std::sqrt(var / n);
      CHECK(std::abs(mean(i, j) - want(i, j)) < 4.0 * se + 1e-12);
    }
  CHECK_THROWS_AS((void)sample_wishart(0.5, w, rng), std::invalid_argument);
}

TEST_CASE("component posterior samples have the conjugate moments") {
  Rng rng(53);
  const int d = 3;
  NwHyper h = NwHyper::standard(d);
  const Mtx zs = gauss_rows(10, d, rng, 1.2);
  const NwPosterior post = nw_posterior(zs, h);

  const int n = 20000;
  Vec mu_sum = Vec::Zero(d), mu_sumsq = Vec::Zero(d);
  Mtx l_sum = Mtx::Zero(d, d), l_sumsq = Mtx::Zero(d, d);
  for (int i = 0; i < n; ++i) {
    const GmmComponent c = sample_component_posterior(zs, h, rng);
    mu_sum += c.mu;
    mu_sumsq += c.mu.cwiseProduct(c.mu);
    l_sum += c.lambda;
    l_sumsq += c.lambda.cwiseProduct(c.lambda);
  }
  for (int j = 0; j < d; ++j) {
    const double mean = mu_sum[j] / n;
    const double se = std::sqrt((mu_sumsq[j] / n - mean * mean) / n);
    CHECK(std::abs(mean - post.m_n[j]) < 4.0 * se);
  }
  const Mtx l_want = post.nu_n * post.w_n;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      const double mean = l_sum(i, j) / n;
      const double se = std::sqrt((l_sumsq(i, j) / n - mean * mean) / n);
      CHECK(std::abs(mean - l_want(i, j)) < 4.0 * se + 1e-12);
    }
}

TEST_CASE("update_agent_gmm groups by sign and is deterministic") {
  Rng rng(59);
  const int d = 3, k = 4;
  NwHyper h = NwHyper::standard(d);
  const Mtx latents = gauss_rows(100, d, rng, 5.0);
  std::vector<int> signs(100, 2);

  Rng g1(7), g2(7);
  const GmmParams a = update_agent_gmm(latents, signs, k, h, g1);
  const GmmParams b = update_agent_gmm(latents, signs, k, h, g2);
  REQUIRE(a.k() == k);
  CHECK(std::abs(a.pi.sum() - 1.0) < 1e-12);
  for (int c = 0; c < k; ++c) {
    CHECK(a.pi[c] == doctest::Approx(1.0 / k).epsilon(1e-14));
    CHECK((a.comps[c].mu - b.comps[c].mu).cwiseAbs().maxCoeff() == 0.0);
    CHECK((a.comps[c].lambda - b.comps[c].lambda).cwiseAbs().maxCoeff() == 0.0);
    CHECK(Eigen::LLT<Mtx>(a.comps[c].lambda).info() == Eigen::Success);
  }
  // With 100 points at mean 5 the posterior mean is pinned near 5; empty
  // components stay prior-shaped around m0 = 0.
  CHECK((a.comps[2].mu - Vec::Constant(d, 5.0)).cwiseAbs().maxCoeff() < 1.0);

  std::vector<int> bad(100, 4);
  Rng g3(7);
  CHECK_THROWS_AS((void)update_agent_gmm(latents, bad, k, h, g3), std::invalid_argument);
}

TEST_CASE("well-separated clusters keep their ordering in sampled means") {
  const int d = 3;
  NwHyper h = NwHyper::standard(d);
  Rng data_rng(61);
  Mtx latents(100, d);
  std::vector<int> signs(100);
  for (int i = 0; i < 100; ++i) {
    const double center = i < 50 ? -10.0 : 10.0;
    signs[i] = i < 50 ? 0 : 1;
    latents(i, 0) = center + 0.3 * data_rng.normal();
    for (int j = 1; j < d; ++j) latents(i, j) = 0.3 * data_rng.normal();
  }
  int ordered = 0;
  const int trials = 300;
  for (int t = 0; t < trials; ++t) {
    Rng rng(1000 + t);
    const GmmParams g = update_agent_gmm(latents, signs, 2, h, rng);
    if (g.comps[0].mu[0] < g.comps[1].mu[0]) ++ordered;
  }
  CHECK(ordered >= 297);
}

TEST_CASE("prior_gmm draws K components from the prior") {
  NwHyper h = NwHyper::standard(9);
  Rng rng(67);
  const GmmParams g = prior_gmm(9, h, rng);
  REQUIRE(g.k() == 9);
  CHECK(g.dim() == 9);
  for (const auto& c : g.comps)
    CHECK(Eigen::LLT<Mtx>(c.lambda).info() == Eigen::Success);
}
