#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdint>
#include <vector>

#include "coemo/rng.hpp"
#include "doctest.h"

using coemo::Rng;

TEST_CASE("splitmix64 matches the reference vectors") {
  // First output of the reference splitmix64 stream seeded with 0.
  CHECK(coemo::splitmix64(0) == 0xE220A8397B1DCDAFULL);
  CHECK(coemo::splitmix64(0x123456789ABCDEF0ULL) == 0x161922C645CE50E8ULL);
}

TEST_CASE("derive_seed is stable and decorrelates tags") {
  CHECK(coemo::derive_seed(42, "ou/agent0") == 0x59593531F978B7C3ULL);
  CHECK(coemo::derive_seed(42, "ou/agent0") == coemo::derive_seed(42, "ou/agent0"));
  CHECK(coemo::derive_seed(42, "ou/agent0") != coemo::derive_seed(42, "ou/agent1"));
  CHECK(coemo::derive_seed(42, "ou/agent0") != coemo::derive_seed(43, "ou/agent0"));
}

TEST_CASE("identical seeds reproduce identical streams") {
  Rng a(7), b(7);
  for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
  Rng c(7), d(7);
  for (int i = 0; i < 100; ++i) {
    CHECK(c.normal() == d.normal());
    CHECK(c.gamma(2.5) == d.gamma(2.5));
    CHECK(c.uniform() == d.uniform());
  }
}

TEST_CASE("uniform stays in [0,1) with the right mean") {
  Rng rng(11);
  const int n = 200000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u = rng.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
  }
  CHECK(std::abs(sum / n - 0.5) < 5e-3);
}

TEST_CASE("normal has standard moments") {
  Rng rng(13);
  const int n = 400000;
  double s1 = 0.0, s2 = 0.0, s3 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = rng.normal();
    s1 += x;
    s2 += x * x;
    s3 += x * x * x;
  }
  CHECK(std::abs(s1 / n) < 0.01);
  CHECK(std::abs(s2 / n - 1.0) < 0.02);
  CHECK(std::abs(s3 / n) < 0.05);
}

TEST_CASE("gamma moments match shape for shapes below and above 1") {
  Rng rng(17);
  for (double shape : {0.4, 0.9, 1.0, 2.5, 7.3}) {
    const int n = 300000;
    double s1 = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
      const double x = rng.gamma(shape);
      REQUIRE(x > 0.0);
      s1 += x;
      s2 += x * x;
    }
    const double mean = s1 / n;
    const double var = s2 / n - mean * mean;
    CHECK(std::abs(mean - shape) < 0.05 * shape + 0.01);
    CHECK(std::abs(var - shape) < 0.08 * shape + 0.02);
  }
  CHECK_THROWS_AS((void)rng.gamma(0.0), std::invalid_argument);
  CHECK_THROWS_AS((void)rng.gamma(-1.0), std::invalid_argument);
}

TEST_CASE("chi_squared has mean k and variance 2k") {
  Rng rng(19);
  const double k = 6.0;
  const int n = 300000;
  double s1 = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = rng.chi_squared(k);
    s1 += x;
    s2 += x * x;
  }
  const double mean = s1 / n;
  const double var = s2 / n - mean * mean;
  CHECK(std::abs(mean - k) < 0.1);
  CHECK(std::abs(var - 2.0 * k) < 0.4);
}

TEST_CASE("categorical matches the weight proportions and rejects bad input") {
  Rng rng(23);
  const double w[4] = {1.0, 3.0, 0.0, 4.0};
  std::vector<int> counts(4, 0);
  const int n = 200000;
  for (int i = 0; i < n; ++i) ++counts[rng.categorical(w, 4)];
  CHECK(counts[2] == 0);
  CHECK(std::abs(counts[0] / double(n) - 1.0 / 8.0) < 5e-3);
  CHECK(std::abs(counts[1] / double(n) - 3.0 / 8.0) < 5e-3);
  CHECK(std::abs(counts[3] / double(n) - 4.0 / 8.0) < 5e-3);

  const double neg[2] = {0.5, -0.1};
  const double zero[2] = {0.0, 0.0};
  CHECK_THROWS_AS((void)rng.categorical(neg, 2), std::invalid_argument);
  CHECK_THROWS_AS((void)rng.categorical(zero, 2), std::invalid_argument);
  CHECK_THROWS_AS((void)rng.categorical(w, 0), std::invalid_argument);
}
