#include <cmath>
#include <cstddef>

#include "coemo/kernels.hpp"

namespace coemo::kernels::ref {

void gemm_nn(int m, int n, int k, const double* a, const double* b, double* c,
             bool accumulate) {
  for (int i = 0; i < m; ++i) {
    double* ci = c + static_cast<std::size_t>(i) * n;
    if (!accumulate)
      for (int j = 0; j < n; ++j) ci[j] = 0.0;
    const double* ai = a + static_cast<std::size_t>(i) * k;
    for (int kk = 0; kk < k; ++kk) {
      const double aik = ai[kk];
      const double* bk = b + static_cast<std::size_t>(kk) * n;
      for (int j = 0; j < n; ++j) ci[j] += aik * bk[j];
    }
  }
}

void gemm_nt(int m, int n, int k, const double* a, const double* b, double* c,
             bool accumulate) {
  for (int i = 0; i < m; ++i) {
    const double* ai = a + static_cast<std::size_t>(i) * k;
    double* ci = c + static_cast<std::size_t>(i) * n;
    for (int j = 0; j < n; ++j) {
      const double* bj = b + static_cast<std::size_t>(j) * k;
      double s = 0.0;
      for (int kk = 0; kk < k; ++kk) s += ai[kk] * bj[kk];
      ci[j] = accumulate ? ci[j] + s : s;
    }
  }
}

void gemm_tn(int m, int n, int k, const double* a, const double* b, double* c,
             bool accumulate) {
  if (!accumulate)
    for (std::size_t t = 0; t < static_cast<std::size_t>(m) * n; ++t) c[t] = 0.0;
  for (int d = 0; d < k; ++d) {
    const double* ad = a + static_cast<std::size_t>(d) * m;
    const double* bd = b + static_cast<std::size_t>(d) * n;
    for (int i = 0; i < m; ++i) {
      const double adi = ad[i];
      double* ci = c + static_cast<std::size_t>(i) * n;
      for (int j = 0; j < n; ++j) ci[j] += adi * bd[j];
    }
  }
}

void add_row_bias(int rows, int cols, const double* bias, double* x) {
  for (int i = 0; i < rows; ++i) {
    double* xi = x + static_cast<std::size_t>(i) * cols;
    for (int j = 0; j < cols; ++j) xi[j] += bias[j];
  }
}

void tanh_inplace(double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] = std::tanh(x[i]);
}

void tanh_backward(std::size_t n, const double* t, const double* dt, double* dpre) {
  for (std::size_t i = 0; i < n; ++i) dpre[i] = dt[i] * (1.0 - t[i] * t[i]);
}

void col_sum(int rows, int cols, const double* x, double* out) {
  for (int j = 0; j < cols; ++j) out[j] = 0.0;
  for (int i = 0; i < rows; ++i) {
    const double* xi = x + static_cast<std::size_t>(i) * cols;
    for (int j = 0; j < cols; ++j) out[j] += xi[j];
  }
}

double dot(std::size_t n, const double* x, const double* y) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

void axpy(std::size_t n, double alpha, const double* x, double* y) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

double sq_diff_sum(std::size_t n, const double* x, const double* y) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = x[i] - y[i];
    s += d * d;
  }
  return s;
}

}  // namespace coemo::kernels::ref
