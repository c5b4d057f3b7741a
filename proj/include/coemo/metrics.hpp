// Evaluation measures over sign assignments and latent spaces: adjusted Rand
// index, Cohen's kappa, Davies-Bouldin score, representational similarity of
// pairwise distances (Spearman), Hungarian-matched recall, and PCA.
#pragma once

#include <vector>

#include "coemo/mat.hpp"

namespace coemo::metrics {

// Hubert-Arabie adjusted Rand index from the contingency table.
double adjusted_rand_index(const std::vector<int>& x, const std::vector<int>& y);

// (p_o - p_e) / (1 - p_e) with chance agreement from the marginals.
double cohens_kappa(const std::vector<int>& a, const std::vector<int>& b);

// Mean over non-empty clusters of the worst (s_i + s_j) / d_ij ratio,
// Euclidean throughout. Requires at least two non-empty clusters.
double davies_bouldin(const Mat& latents, const std::vector<int>& signs);

// Spearman rank correlation between the two pairwise-distance vectors.
// All D(D-1)/2 pairs when that is at most `kTopsimMaxPairs`; otherwise a
// fixed-seed uniform subsample of that many distinct pairs.
inline constexpr int kTopsimMaxPairs = 100000;
double topsim(const Mat& latents_a, const Mat& latents_b);

// Maximum-weight assignment of each row to a distinct column
// (rows <= cols); returns row -> column.
std::vector<int> hungarian_max_assignment(const Mat& weights);

// Rows: true labels 0..n_labels-1. Columns: the sign matched to each label,
// plus a final "other" column aggregating unmatched signs. Entries are
// recall fractions; each row with any data sums to 1.
Mat recall_heatmap(const std::vector<int>& signs, const std::vector<int>& labels,
                   int n_labels, int k);

struct PcaResult {
  Mat coords;                     // n x actual components
  std::vector<double> explained;  // variance fraction per component
  bool degenerate = false;        // true when fewer components than requested
};

// Mean-centered projection onto the top eigenvectors of the covariance.
// Each eigenvector is oriented so its largest-magnitude entry is positive.
PcaResult pca_project(const Mat& latents, int out_dim = 2);

// One round's worth of evaluation results.
struct MetricsReport {
  int round = 0;
  double ari_a = 0.0, ari_b = 0.0;
  double kappa = 0.0;
  double dbs_a = 0.0, dbs_b = 0.0;
  double topsim = 0.0;
  Mat recall_a, recall_b;
};

}  // namespace coemo::metrics
