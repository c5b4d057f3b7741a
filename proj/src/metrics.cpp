#include "coemo/metrics.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "coemo/rng.hpp"

namespace coemo::metrics {
namespace {

// Relabels arbitrary int labels to 0..k-1 in order of first appearance.
std::vector<int> compress(const std::vector<int>& v, int* k_out) {
  std::unordered_map<int, int> ids;
  std::vector<int> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    auto [it, fresh] = ids.emplace(v[i], static_cast<int>(ids.size()));
    (void)fresh;
    out[i] = it->second;
  }
  *k_out = static_cast<int>(ids.size());
  return out;
}

double comb2(double n) { return 0.5 * n * (n - 1.0); }

// Average ranks with ties sharing the mean of their rank positions.
std::vector<double> average_ranks(const std::vector<double>& v) {
  const std::size_t n = v.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && v[order[j + 1]] == v[order[i]]) ++j;
    const double r = 0.5 * (static_cast<double>(i) + static_cast<double>(j)) + 1.0;
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = r;
    i = j + 1;
  }
  return ranks;
}

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
  const std::size_t n = x.size();
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx <= 0.0 || syy <= 0.0)
    throw std::runtime_error("pearson: zero-variance input");
  return sxy / std::sqrt(sxx * syy);
}

double row_distance(const Mat& m, int i, int j) {
  double s = 0.0;
  for (int c = 0; c < m.cols; ++c) {
    const double d = m(i, c) - m(j, c);
    s += d * d;
  }
  return std::sqrt(s);
}

}  // namespace

double adjusted_rand_index(const std::vector<int>& x, const std::vector<int>& y) {
  if (x.size() != y.size())
    throw std::invalid_argument("adjusted_rand_index: length mismatch");
  if (x.size() < 2)
    throw std::invalid_argument("adjusted_rand_index: need at least 2 items");
  int kx = 0, ky = 0;
  const std::vector<int> cx = compress(x, &kx);
  const std::vector<int> cy = compress(y, &ky);
  Mat counts(kx, ky);
  for (std::size_t i = 0; i < cx.size(); ++i) counts(cx[i], cy[i]) += 1.0;

  double index = 0.0, sum_a = 0.0, sum_b = 0.0;
  for (int i = 0; i < kx; ++i) {
    double ai = 0.0;
    for (int j = 0; j < ky; ++j) {
      index += comb2(counts(i, j));
      ai += counts(i, j);
    }
    sum_a += comb2(ai);
  }
  for (int j = 0; j < ky; ++j) {
    double bj = 0.0;
    for (int i = 0; i < kx; ++i) bj += counts(i, j);
    sum_b += comb2(bj);
  }
  const double total = comb2(static_cast<double>(x.size()));
  const double expected = sum_a * sum_b / total;
  const double max_index = 0.5 * (sum_a + sum_b);
  const double denom = max_index - expected;
  // Both partitions degenerate the same way (all-singletons or one cluster).
  if (std::abs(denom) < 1e-12) return 1.0;
  return (index - expected) / denom;
}

double cohens_kappa(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("cohens_kappa: length mismatch");
  if (a.empty()) throw std::invalid_argument("cohens_kappa: empty input");
  const double n = static_cast<double>(a.size());
  std::unordered_map<int, double> pa, pb;
  double agree = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    pa[a[i]] += 1.0;
    pb[b[i]] += 1.0;
    if (a[i] == b[i]) agree += 1.0;
  }
  const double p_o = agree / n;
  double p_e = 0.0;
  for (const auto& [sign, ca] : pa) {
    auto it = pb.find(sign);
    if (it != pb.end()) p_e += (ca / n) * (it->second / n);
  }
  if (p_e >= 1.0 - 1e-15) {
    if (p_o >= 1.0 - 1e-15) return 1.0;
    throw std::runtime_error("cohens_kappa: degenerate chance agreement");
  }
  return (p_o - p_e) / (1.0 - p_e);
}

double davies_bouldin(const Mat& latents, const std::vector<int>& signs) {
  if (latents.rows != static_cast<int>(signs.size()))
    throw std::invalid_argument("davies_bouldin: rows/signs mismatch");
  if (latents.rows < 2)
    throw std::invalid_argument("davies_bouldin: need at least 2 items");

  std::unordered_map<int, std::vector<int>> groups;
  for (int i = 0; i < latents.rows; ++i) groups[signs[i]].push_back(i);
  if (groups.size() < 2)
    throw std::runtime_error("davies_bouldin: need at least 2 non-empty clusters");

  const int d = latents.cols;
  std::vector<std::vector<double>> centroids;
  std::vector<double> scatter;
  // Deterministic cluster order regardless of hash layout.
  std::vector<int> keys;
  keys.reserve(groups.size());
  for (const auto& [k, v] : groups) keys.push_back(k);
  std::sort(keys.begin(), keys.end());
  for (int k : keys) {
    const auto& rows = groups[k];
    std::vector<double> c(d, 0.0);
    for (int r : rows)
      for (int j = 0; j < d; ++j) c[j] += latents(r, j);
    for (int j = 0; j < d; ++j) c[j] /= static_cast<double>(rows.size());
    double s = 0.0;
    for (int r : rows) {
      double q = 0.0;
      for (int j = 0; j < d; ++j) {
        const double diff = latents(r, j) - c[j];
        q += diff * diff;
      }
      s += std::sqrt(q);
    }
    centroids.push_back(std::move(c));
    scatter.push_back(s / static_cast<double>(rows.size()));
  }

  const int m = static_cast<int>(centroids.size());
  double total = 0.0;
  for (int i = 0; i < m; ++i) {
    double worst = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < m; ++j) {
      if (j == i) continue;
      double q = 0.0;
      for (int c = 0; c < d; ++c) {
        const double diff = centroids[i][c] - centroids[j][c];
        q += diff * diff;
      }
      const double dist = std::sqrt(q);
      const double ratio = dist > 0.0 ? (scatter[i] + scatter[j]) / dist
                                      : std::numeric_limits<double>::infinity();
      worst = std::max(worst, ratio);
    }
    total += worst;
  }
  return total / static_cast<double>(m);
}

double topsim(const Mat& latents_a, const Mat& latents_b) {
  if (latents_a.rows != latents_b.rows)
    throw std::invalid_argument("topsim: row count mismatch");
  const int n = latents_a.rows;
  if (n < 3) throw std::invalid_argument("topsim: need at least 3 items");

  const std::uint64_t total_pairs =
      static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n - 1) / 2;
  std::vector<std::pair<int, int>> pairs;
  if (total_pairs <= static_cast<std::uint64_t>(kTopsimMaxPairs)) {
    pairs.reserve(total_pairs);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  } else {
    // Fixed seed so repeated evaluations rank the same subsample.
    Rng rng(0x746f7073696d3031ULL);
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(2 * kTopsimMaxPairs);
    pairs.reserve(kTopsimMaxPairs);
    while (pairs.size() < static_cast<std::size_t>(kTopsimMaxPairs)) {
      const int i = static_cast<int>(rng.uniform() * n);
      const int j = static_cast<int>(rng.uniform() * n);
      if (i == j) continue;
      const int lo = std::min(i, j), hi = std::max(i, j);
      const std::uint64_t key =
          static_cast<std::uint64_t>(lo) * static_cast<std::uint64_t>(n) + hi;
      if (seen.insert(key).second) pairs.emplace_back(lo, hi);
    }
  }

  std::vector<double> da(pairs.size()), db(pairs.size());
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    da[p] = row_distance(latents_a, pairs[p].first, pairs[p].second);
    db[p] = row_distance(latents_b, pairs[p].first, pairs[p].second);
  }
  const std::vector<double> ra = average_ranks(da);
  const std::vector<double> rb = average_ranks(db);
  try {
    return pearson(ra, rb);
  } catch (const std::runtime_error&) {
    throw std::runtime_error("topsim: zero-variance distance vector");
  }
}

std::vector<int> hungarian_max_assignment(const Mat& weights) {
  const int n = weights.rows, m = weights.cols;
  if (n <= 0 || m <= 0)
    throw std::invalid_argument("hungarian_max_assignment: empty matrix");
  if (n > m)
    throw std::invalid_argument("hungarian_max_assignment: more rows than columns");
  double top = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) top = std::max(top, weights(i, j));

  // Potential-based min-cost assignment on cost = top - weight.
  const double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
  std::vector<int> p(m + 1, 0), way(m + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(m + 1, kInf);
    std::vector<char> used(m + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      int j1 = -1;
      double delta = kInf;
      for (int j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double cur = (top - weights(i0 - 1, j - 1)) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= m; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> row_to_col(n, -1);
  for (int j = 1; j <= m; ++j)
    if (p[j] > 0) row_to_col[p[j] - 1] = j - 1;
  return row_to_col;
}

Mat recall_heatmap(const std::vector<int>& signs, const std::vector<int>& labels,
                   int n_labels, int k) {
  if (signs.size() != labels.size())
    throw std::invalid_argument("recall_heatmap: length mismatch");
  if (signs.empty()) throw std::invalid_argument("recall_heatmap: empty input");
  if (n_labels <= 0 || k <= 0)
    throw std::invalid_argument("recall_heatmap: non-positive alphabet size");
  for (std::size_t i = 0; i < signs.size(); ++i) {
    if (signs[i] < 0 || signs[i] >= k)
      throw std::invalid_argument("recall_heatmap: sign out of range");
    if (labels[i] < 0 || labels[i] >= n_labels)
      throw std::invalid_argument("recall_heatmap: label out of range");
  }

  Mat counts(n_labels, k);
  for (std::size_t i = 0; i < signs.size(); ++i)
    counts(labels[i], signs[i]) += 1.0;

  // Match labels to signs on counts; transpose when signs are the short side.
  std::vector<int> label_to_sign(n_labels, -1);
  if (n_labels <= k) {
    label_to_sign = hungarian_max_assignment(counts);
  } else {
    Mat t(k, n_labels);
    for (int i = 0; i < n_labels; ++i)
      for (int j = 0; j < k; ++j) t(j, i) = counts(i, j);
    const std::vector<int> sign_to_label = hungarian_max_assignment(t);
    for (int s = 0; s < k; ++s)
      if (sign_to_label[s] >= 0) label_to_sign[sign_to_label[s]] = s;
  }
  std::vector<char> matched(k, 0);
  for (int c = 0; c < n_labels; ++c)
    if (label_to_sign[c] >= 0) matched[label_to_sign[c]] = 1;

  Mat out(n_labels, n_labels + 1);
  for (int r = 0; r < n_labels; ++r) {
    double row_total = 0.0;
    for (int s = 0; s < k; ++s) row_total += counts(r, s);
    if (row_total == 0.0) continue;
    for (int c = 0; c < n_labels; ++c)
      if (label_to_sign[c] >= 0)
        out(r, c) = counts(r, label_to_sign[c]) / row_total;
    double other = 0.0;
    for (int s = 0; s < k; ++s)
      if (!matched[s]) other += counts(r, s);
    out(r, n_labels) = other / row_total;
  }
  return out;
}

PcaResult pca_project(const Mat& latents, int out_dim) {
  if (latents.rows < 2)
    throw std::invalid_argument("pca_project: need at least 2 rows");
  if (out_dim < 1) throw std::invalid_argument("pca_project: out_dim < 1");
  const int n = latents.rows, d = latents.cols;
  out_dim = std::min(out_dim, d);

  Eigen::MatrixXd x(n, d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < d; ++j) x(i, j) = latents(i, j);
  const Eigen::RowVectorXd mean = x.colwise().mean();
  x.rowwise() -= mean;
  const Eigen::MatrixXd cov = (x.transpose() * x) / static_cast<double>(n - 1);

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(cov);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("pca_project: eigendecomposition failed");
  const Eigen::VectorXd evals = es.eigenvalues();  // ascending
  const Eigen::MatrixXd evecs = es.eigenvectors();

  double total = 0.0;
  for (int i = 0; i < d; ++i) total += std::max(evals(i), 0.0);
  const double floor = std::max(1e-12, 1e-9 * std::max(evals(d - 1), 0.0));

  PcaResult res;
  int kept = 0;
  for (int c = 0; c < out_dim; ++c) {
    if (evals(d - 1 - c) > floor) ++kept;
  }
  res.degenerate = kept < out_dim;
  res.coords = Mat(n, kept);
  res.explained.resize(kept);
  for (int c = 0; c < kept; ++c) {
    Eigen::VectorXd v = evecs.col(d - 1 - c);
    int arg = 0;
    for (int j = 1; j < d; ++j)
      if (std::abs(v(j)) > std::abs(v(arg))) arg = j;
    if (v(arg) < 0.0) v = -v;
    const Eigen::VectorXd proj = x * v;
    for (int i = 0; i < n; ++i) res.coords(i, c) = proj(i);
    res.explained[c] = total > 0.0 ? evals(d - 1 - c) / total : 0.0;
  }
  return res;
}

}  // namespace coemo::metrics
