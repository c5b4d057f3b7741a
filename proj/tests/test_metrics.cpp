#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "coemo/mat.hpp"
#include "coemo/metrics.hpp"
#include "coemo/rng.hpp"

using namespace coemo;

namespace {

// Pair-counting ARI oracle: 2(ad - bc) / ((a+b)(b+d) + (a+c)(c+d)) over the
// four pair-agreement cells, independent of the contingency-table route.
double ari_pair_oracle(const std::vector<int>& x, const std::vector<int>& y) {
  double n11 = 0, n10 = 0, n01 = 0, n00 = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = i + 1; j < x.size(); ++j) {
      const bool sx = x[i] == x[j];
      const bool sy = y[i] == y[j];
      if (sx && sy)
        n11 += 1;
      else if (sx && !sy)
        n10 += 1;
      else if (!sx && sy)
        n01 += 1;
      else
        n00 += 1;
    }
  }
  const double denom = (n11 + n10) * (n10 + n00) + (n11 + n01) * (n01 + n00);
  if (denom == 0.0) return 1.0;
  return 2.0 * (n11 * n00 - n10 * n01) / denom;
}

// O(n^2) average-tie ranks, independent of the sort-based implementation.
std::vector<double> rank_oracle(const std::vector<double>& v) {
  std::vector<double> r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    double less = 0, equal = 0;
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (v[j] < v[i]) less += 1;
      if (v[j] == v[i]) equal += 1;
    }
    r[i] = less + 0.5 * (equal + 1.0);
  }
  return r;
}

double pearson_oracle(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

double spearman_oracle(const Mat& a, const Mat& b) {
  std::vector<double> da, db;
  for (int i = 0; i < a.rows; ++i) {
    for (int j = i + 1; j < a.rows; ++j) {
      double qa = 0, qb = 0;
      for (int c = 0; c < a.cols; ++c) qa += (a(i, c) - a(j, c)) * (a(i, c) - a(j, c));
      for (int c = 0; c < b.cols; ++c) qb += (b(i, c) - b(j, c)) * (b(i, c) - b(j, c));
      da.push_back(std::sqrt(qa));
      db.push_back(std::sqrt(qb));
    }
  }
  return pearson_oracle(rank_oracle(da), rank_oracle(db));
}

Mat random_mat(int rows, int cols, Rng& rng, double scale = 1.0) {
  Mat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = scale * rng.normal();
  return m;
}

double assignment_weight(const Mat& w, const std::vector<int>& row_to_col) {
  double s = 0;
  for (int i = 0; i < w.rows; ++i) s += w(i, row_to_col[i]);
  return s;
}

}  // namespace

TEST_CASE("adjusted rand index matches pair-counting oracle on fixture") {
  const std::vector<int> x = {0, 0, 1, 1};
  const std::vector<int> y = {0, 0, 1, 2};
  const double got = metrics::adjusted_rand_index(x, y);
  CHECK(got == doctest::Approx(4.0 / 7.0).epsilon(1e-12));
  CHECK(got == doctest::Approx(ari_pair_oracle(x, y)).epsilon(1e-12));
}

TEST_CASE("adjusted rand index matches oracle on random labelings") {
  Rng rng(91);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 8 + static_cast<int>(rng.uniform() * 50);
    const int k = 2 + static_cast<int>(rng.uniform() * 4);
    std::vector<int> x(n), y(n);
    for (int i = 0; i < n; ++i) {
      x[i] = static_cast<int>(rng.uniform() * k);
      y[i] = static_cast<int>(rng.uniform() * k);
    }
    CHECK(metrics::adjusted_rand_index(x, y) ==
          doctest::Approx(ari_pair_oracle(x, y)).epsilon(1e-10));
  }
}

TEST_CASE("adjusted rand index invariances and edge cases") {
  Rng rng(17);
  std::vector<int> x(60), y(60);
  for (auto& v : x) v = static_cast<int>(rng.uniform() * 4);
  for (auto& v : y) v = static_cast<int>(rng.uniform() * 5);

  SUBCASE("symmetric") {
    CHECK(metrics::adjusted_rand_index(x, y) ==
          doctest::Approx(metrics::adjusted_rand_index(y, x)).epsilon(1e-14));
  }
  SUBCASE("identical partitions score 1 under relabeling") {
    std::vector<int> relabeled(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) relabeled[i] = 7 - x[i];
    CHECK(metrics::adjusted_rand_index(x, relabeled) == doctest::Approx(1.0));
  }
  SUBCASE("independent labelings score near zero") {
    std::vector<int> a(20000), b(20000);
    for (auto& v : a) v = static_cast<int>(rng.uniform() * 6);
    for (auto& v : b) v = static_cast<int>(rng.uniform() * 6);
    CHECK(std::abs(metrics::adjusted_rand_index(a, b)) < 0.01);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(metrics::adjusted_rand_index({0, 1}, {0, 1, 2}),
                    std::invalid_argument);
    CHECK_THROWS_AS(metrics::adjusted_rand_index({0}, {0}), std::invalid_argument);
  }
}

TEST_CASE("cohens kappa hand fixtures") {
  CHECK(metrics::cohens_kappa({0, 1, 0, 1}, {1, 0, 1, 0}) ==
        doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(metrics::cohens_kappa({3, 1, 4, 1, 5}, {3, 1, 4, 1, 5}) ==
        doctest::Approx(1.0));
  // Both constant and equal: chance agreement is total, defined as 1.
  CHECK(metrics::cohens_kappa({2, 2, 2}, {2, 2, 2}) == doctest::Approx(1.0));
  // Both constant but different: no chance overlap, kappa 0.
  CHECK(metrics::cohens_kappa({1, 1, 1}, {2, 2, 2}) == doctest::Approx(0.0));
  // Hand contingency: a=[0,0,1,1,1,2], b=[0,1,1,1,2,2].
  // p_o = 4/6; p_e = (2*1 + 3*3 + 1*2)/36 = 13/36; kappa = (24-13)/(36-13).
  CHECK(metrics::cohens_kappa({0, 0, 1, 1, 1, 2}, {0, 1, 1, 1, 2, 2}) ==
        doctest::Approx(11.0 / 23.0).epsilon(1e-12));
}

TEST_CASE("cohens kappa is near zero for independent signs") {
  Rng rng(5);
  const int n = 100000;
  std::vector<int> a(n), b(n);
  for (int i = 0; i < n; ++i) {
    a[i] = static_cast<int>(rng.uniform() * 9);
    b[i] = static_cast<int>(rng.uniform() * 9);
  }
  CHECK(std::abs(metrics::cohens_kappa(a, b)) < 0.01);
  CHECK(metrics::cohens_kappa(a, b) ==
        doctest::Approx(metrics::cohens_kappa(b, a)).epsilon(1e-14));
}

TEST_CASE("cohens kappa errors") {
  CHECK_THROWS_AS(metrics::cohens_kappa({0, 1}, {0}), std::invalid_argument);
  CHECK_THROWS_AS(metrics::cohens_kappa({}, {}), std::invalid_argument);
}

TEST_CASE("davies bouldin symmetric two-cluster fixture") {
  // 1-D clusters {-10-d, -10+d} and {10-d, 10+d}: scatter d, separation 20.
  for (double delta : {0.5, 0.1, 2.0}) {
    Mat pts(4, 1);
    pts(0, 0) = -10.0 - delta;
    pts(1, 0) = -10.0 + delta;
    pts(2, 0) = 10.0 - delta;
    pts(3, 0) = 10.0 + delta;
    CHECK(metrics::davies_bouldin(pts, {0, 0, 1, 1}) ==
          doctest::Approx(2.0 * delta / 20.0).epsilon(1e-12));
  }
}

TEST_CASE("davies bouldin hand fixture in 2-D") {
  Mat pts(4, 2);
  pts(0, 0) = 0;
  pts(1, 0) = 2;
  pts(2, 0) = 10;
  pts(3, 0) = 12;
  // Centroids (1,0) and (11,0), scatter 1 each, distance 10.
  CHECK(metrics::davies_bouldin(pts, {0, 0, 1, 1}) ==
        doctest::Approx(0.2).epsilon(1e-12));
}

TEST_CASE("davies bouldin properties") {
  SUBCASE("two singleton clusters score zero") {
    Mat pts(2, 3);
    pts(0, 0) = 1.0;
    pts(1, 1) = -2.0;
    CHECK(metrics::davies_bouldin(pts, {4, 7}) == doctest::Approx(0.0));
  }
  SUBCASE("tighter clusters score lower at fixed separation") {
    Rng rng(23);
    Mat tight(40, 2), loose(40, 2);
    std::vector<int> signs(40);
    for (int i = 0; i < 40; ++i) {
      const double cx = i < 20 ? -5.0 : 5.0;
      signs[i] = i < 20 ? 0 : 1;
      const double n1 = rng.normal(), n2 = rng.normal();
      tight(i, 0) = cx + 0.1 * n1;
      tight(i, 1) = 0.1 * n2;
      loose(i, 0) = cx + 1.0 * n1;
      loose(i, 1) = 1.0 * n2;
    }
    CHECK(metrics::davies_bouldin(tight, signs) <
          metrics::davies_bouldin(loose, signs));
  }
  SUBCASE("errors") {
    Mat pts(4, 1);
    CHECK_THROWS_AS(metrics::davies_bouldin(pts, {0, 0, 0, 0}), std::runtime_error);
    CHECK_THROWS_AS(metrics::davies_bouldin(pts, {0, 1}), std::invalid_argument);
  }
}

TEST_CASE("topsim matches brute-force spearman oracle") {
  Rng rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    const int n = 5 + static_cast<int>(rng.uniform() * 20);
    const Mat a = random_mat(n, 3, rng);
    const Mat b = random_mat(n, 2, rng);
    CHECK(metrics::topsim(a, b) ==
          doctest::Approx(spearman_oracle(a, b)).epsilon(1e-10));
  }
}

TEST_CASE("topsim fixture with tied distances") {
  // 1-D points 0,1,3,6: distances 1,3,6,2,5,3 (tie at 3). Doubling the
  // points doubles every distance, preserving ranks exactly.
  Mat a(4, 1), b(4, 1);
  const double pts[4] = {0, 1, 3, 6};
  for (int i = 0; i < 4; ++i) {
    a(i, 0) = pts[i];
    b(i, 0) = 2.0 * pts[i];
  }
  CHECK(metrics::topsim(a, b) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(metrics::topsim(a, b) ==
        doctest::Approx(spearman_oracle(a, b)).epsilon(1e-14));
}

TEST_CASE("topsim invariances") {
  Rng rng(67);
  const Mat a = random_mat(30, 4, rng);

  SUBCASE("identity scores 1") {
    CHECK(metrics::topsim(a, a) == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("positive scaling and translation preserve the score") {
    const Mat b = random_mat(30, 4, rng);
    Mat b2 = b;
    for (int i = 0; i < b2.rows; ++i)
      for (int j = 0; j < b2.cols; ++j) b2(i, j) = 3.7 * b(i, j) + 11.0;
    CHECK(metrics::topsim(a, b) == doctest::Approx(metrics::topsim(a, b2)).epsilon(1e-12));
  }
  SUBCASE("planar rotation preserves the score") {
    const Mat b = random_mat(30, 2, rng);
    const double c = std::cos(0.83), s = std::sin(0.83);
    Mat rot(30, 2);
    for (int i = 0; i < 30; ++i) {
      rot(i, 0) = c * b(i, 0) - s * b(i, 1) + 4.0;
      rot(i, 1) = s * b(i, 0) + c * b(i, 1) - 2.5;
    }
    CHECK(metrics::topsim(a, b) ==
          doctest::Approx(metrics::topsim(a, rot)).epsilon(1e-12));
  }
  SUBCASE("errors") {
    Mat z(30, 4);  // all points coincide: zero-variance distances
    CHECK_THROWS_AS(metrics::topsim(a, z), std::runtime_error);
    const Mat short_b = random_mat(29, 4, rng);
    CHECK_THROWS_AS(metrics::topsim(a, short_b), std::invalid_argument);
    const Mat two = random_mat(2, 4, rng);
    CHECK_THROWS_AS(metrics::topsim(two, two), std::invalid_argument);
  }
}

TEST_CASE("topsim subsampled regime is deterministic and consistent") {
  Rng rng(7);
  const int n = 500;  // 124750 pairs, above the exhaustive cutoff
  const Mat a = random_mat(n, 3, rng);
  const Mat b = random_mat(n, 3, rng);
  const double first = metrics::topsim(a, b);
  const double second = metrics::topsim(a, b);
  CHECK(first == second);
  CHECK(metrics::topsim(a, a) == doctest::Approx(1.0).epsilon(1e-12));
  Mat scaled = b;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < 3; ++j) scaled(i, j) = 0.25 * b(i, j);
  CHECK(metrics::topsim(a, scaled) == doctest::Approx(first).epsilon(1e-12));
}

TEST_CASE("hungarian assignment is optimal") {
  SUBCASE("unique-optimum fixtures") {
    Mat w(3, 3);
    w(0, 0) = 7;
    w(0, 1) = 1;
    w(0, 2) = 1;
    w(1, 0) = 1;
    w(1, 1) = 7;
    w(1, 2) = 1;
    w(2, 0) = 2;
    w(2, 1) = 1;
    w(2, 2) = 7;
    CHECK(metrics::hungarian_max_assignment(w) == std::vector<int>{0, 1, 2});

    Mat w2(2, 2);
    w2(0, 0) = 1;
    w2(0, 1) = 5;
    w2(1, 0) = 2;
    w2(1, 1) = 1;
    CHECK(metrics::hungarian_max_assignment(w2) == std::vector<int>{1, 0});
  }
  SUBCASE("matches exhaustive search on random matrices up to 5x5") {
    Rng rng(101);
    for (int trial = 0; trial < 80; ++trial) {
      const int n = 1 + static_cast<int>(rng.uniform() * 5);
      const int m = n + static_cast<int>(rng.uniform() * (6 - n));
      Mat w(n, m);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < m; ++j) w(i, j) = 10.0 * rng.uniform();
      const std::vector<int> got = metrics::hungarian_max_assignment(w);
      std::vector<char> used(m, 0);
      for (int i = 0; i < n; ++i) {
        REQUIRE(got[i] >= 0);
        REQUIRE(got[i] < m);
        REQUIRE(!used[got[i]]);
        used[got[i]] = 1;
      }
      std::vector<int> cols(m);
      std::iota(cols.begin(), cols.end(), 0);
      double best = -1.0;
      do {
        double s = 0;
        for (int i = 0; i < n; ++i) s += w(i, cols[i]);
        best = std::max(best, s);
      } while (std::next_permutation(cols.begin(), cols.end()));
      CHECK(assignment_weight(w, got) == doctest::Approx(best).epsilon(1e-12));
    }
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(metrics::hungarian_max_assignment(Mat(3, 2)),
                    std::invalid_argument);
    CHECK_THROWS_AS(metrics::hungarian_max_assignment(Mat(0, 0)),
                    std::invalid_argument);
  }
}

TEST_CASE("recall heatmap identity case") {
  std::vector<int> labels, signs;
  for (int r = 0; r < 8; ++r) {
    for (int i = 0; i < 4; ++i) {
      labels.push_back(r);
      signs.push_back(r);
    }
  }
  const Mat h = metrics::recall_heatmap(signs, labels, 8, 9);
  REQUIRE(h.rows == 8);
  REQUIRE(h.cols == 9);
  for (int r = 0; r < 8; ++r)
    for (int c = 0; c < 9; ++c)
      CHECK(h(r, c) == doctest::Approx(r == c ? 1.0 : 0.0));
}

TEST_CASE("recall heatmap routes unmatched sign mass to the other column") {
  // Each label: 3 of 4 uses its own sign, 1 of 4 uses the shared extra sign 8.
  std::vector<int> labels, signs;
  for (int r = 0; r < 8; ++r) {
    for (int i = 0; i < 4; ++i) {
      labels.push_back(r);
      signs.push_back(i < 3 ? r : 8);
    }
  }
  const Mat h = metrics::recall_heatmap(signs, labels, 8, 9);
  for (int r = 0; r < 8; ++r) {
    CHECK(h(r, r) == doctest::Approx(0.75));
    CHECK(h(r, 8) == doctest::Approx(0.25));
    double row = 0;
    for (int c = 0; c < 9; ++c) row += h(r, c);
    CHECK(row == doctest::Approx(1.0));
  }
}

TEST_CASE("recall heatmap is invariant to sign relabeling") {
  Rng rng(3);
  std::vector<int> labels, signs;
  for (int i = 0; i < 400; ++i) {
    labels.push_back(static_cast<int>(rng.uniform() * 8));
    // Mostly label-consistent signs with some noise, so the optimum is unique.
    const double u = rng.uniform();
    signs.push_back(u < 0.8 ? labels.back() : static_cast<int>(rng.uniform() * 9));
  }
  const Mat base = metrics::recall_heatmap(signs, labels, 8, 9);
  const int perm[9] = {4, 7, 0, 8, 2, 6, 1, 5, 3};
  std::vector<int> permuted(signs.size());
  for (std::size_t i = 0; i < signs.size(); ++i) permuted[i] = perm[signs[i]];
  const Mat same = metrics::recall_heatmap(permuted, labels, 8, 9);
  REQUIRE(same.rows == base.rows);
  REQUIRE(same.cols == base.cols);
  for (int r = 0; r < base.rows; ++r)
    for (int c = 0; c < base.cols; ++c)
      CHECK(same(r, c) == doctest::Approx(base(r, c)).epsilon(1e-14));
}

TEST_CASE("recall heatmap with fewer signs than labels") {
  // Labels 0..3 but only signs 0..2; label 3 reuses sign 0.
  std::vector<int> labels, signs;
  for (int r = 0; r < 4; ++r) {
    for (int i = 0; i < 5; ++i) {
      labels.push_back(r);
      signs.push_back(r < 3 ? r : 0);
    }
  }
  const Mat h = metrics::recall_heatmap(signs, labels, 4, 3);
  REQUIRE(h.rows == 4);
  REQUIRE(h.cols == 5);
  CHECK(h(0, 0) == doctest::Approx(1.0));
  CHECK(h(1, 1) == doctest::Approx(1.0));
  CHECK(h(2, 2) == doctest::Approx(1.0));
  // Label 3's mass lands in label 0's matched column; nothing is unmatched.
  CHECK(h(3, 0) == doctest::Approx(1.0));
  CHECK(h(3, 3) == doctest::Approx(0.0));
  CHECK(h(3, 4) == doctest::Approx(0.0));
}

TEST_CASE("recall heatmap errors") {
  CHECK_THROWS_AS(metrics::recall_heatmap({}, {}, 8, 9), std::invalid_argument);
  CHECK_THROWS_AS(metrics::recall_heatmap({0, 1}, {0}, 8, 9), std::invalid_argument);
  CHECK_THROWS_AS(metrics::recall_heatmap({9}, {0}, 8, 9), std::invalid_argument);
  CHECK_THROWS_AS(metrics::recall_heatmap({0}, {8}, 8, 9), std::invalid_argument);
}

TEST_CASE("pca recovers a line and orients it positively") {
  Rng rng(29);
  const int n = 200, d = 9;
  Mat x(n, d);
  std::vector<double> t(n);
  for (int i = 0; i < n; ++i) {
    t[i] = rng.normal();
    for (int j = 0; j < d; ++j) x(i, j) = 0.001 * rng.normal();
    x(i, d - 1) += 5.0 * t[i];  // dominant axis is the last coordinate
  }
  const metrics::PcaResult res = metrics::pca_project(x, 2);
  REQUIRE(res.coords.cols == 2);
  CHECK(!res.degenerate);
  CHECK(res.explained[0] > 0.999);
  // Sign convention: the dominant eigenvector's largest entry is positive,
  // so the projection correlates positively with the generating coefficient.
  std::vector<double> c0(n);
  for (int i = 0; i < n; ++i) c0[i] = res.coords(i, 0);
  CHECK(pearson_oracle(c0, t) > 0.999);
  // Mean-centered output.
  double mean0 = 0;
  for (int i = 0; i < n; ++i) mean0 += res.coords(i, 0);
  CHECK(std::abs(mean0 / n) < 1e-9);
}

TEST_CASE("pca on an exact plane preserves in-plane distances") {
  Rng rng(31);
  const int n = 60, d = 5;
  // Orthonormal basis of a random 2-D subspace.
  std::vector<double> e1(d), e2(d);
  double n1 = 0;
  for (int j = 0; j < d; ++j) {
    e1[j] = rng.normal();
    n1 += e1[j] * e1[j];
  }
  for (int j = 0; j < d; ++j) e1[j] /= std::sqrt(n1);
  double dot12 = 0, n2 = 0;
  for (int j = 0; j < d; ++j) e2[j] = rng.normal();
  for (int j = 0; j < d; ++j) dot12 += e1[j] * e2[j];
  for (int j = 0; j < d; ++j) {
    e2[j] -= dot12 * e1[j];
    n2 += e2[j] * e2[j];
  }
  for (int j = 0; j < d; ++j) e2[j] /= std::sqrt(n2);

  Mat plane(n, 2), x(n, d);
  for (int i = 0; i < n; ++i) {
    plane(i, 0) = rng.normal();
    plane(i, 1) = 2.0 * rng.normal();
    for (int j = 0; j < d; ++j)
      x(i, j) = plane(i, 0) * e1[j] + plane(i, 1) * e2[j];
  }
  const metrics::PcaResult res = metrics::pca_project(x, 2);
  REQUIRE(res.coords.cols == 2);
  CHECK(!res.degenerate);
  CHECK(res.explained[0] + res.explained[1] == doctest::Approx(1.0).epsilon(1e-9));
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      double orig = 0, proj = 0;
      for (int c = 0; c < 2; ++c) {
        orig += (plane(i, c) - plane(j, c)) * (plane(i, c) - plane(j, c));
        proj += (res.coords(i, c) - res.coords(j, c)) *
                (res.coords(i, c) - res.coords(j, c));
      }
      CHECK(std::sqrt(proj) == doctest::Approx(std::sqrt(orig)).epsilon(1e-9));
    }
  }
  SUBCASE("requesting a third component flags degeneracy") {
    const metrics::PcaResult deg = metrics::pca_project(x, 3);
    CHECK(deg.degenerate);
    CHECK(deg.coords.cols == 2);
  }
}

TEST_CASE("pca explained variance of isotropic data is flat") {
  Rng rng(37);
  const Mat x = random_mat(6000, 9, rng);
  const metrics::PcaResult res = metrics::pca_project(x, 9);
  REQUIRE(res.coords.cols == 9);
  double total = 0;
  for (double e : res.explained) {
    CHECK(e == doctest::Approx(1.0 / 9.0).epsilon(0.3));
    total += e;
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("pca errors") {
  CHECK_THROWS_AS(metrics::pca_project(Mat(1, 3), 2), std::invalid_argument);
  Rng rng(2);
  const Mat x = random_mat(10, 3, rng);
  CHECK_THROWS_AS(metrics::pca_project(x, 0), std::invalid_argument);
}
