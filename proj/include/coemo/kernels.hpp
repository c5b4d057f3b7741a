// Dense inner-loop kernels behind the MLP training path: three GEMM shapes,
// tanh forward/backward, bias and reduction helpers. Each kernel has a scalar
// reference implementation and an AVX2+FMA variant selected at runtime; the
// two are equivalence-tested against each other.
#pragma once

#include <cstddef>

namespace coemo::kernels {

enum class Backend { scalar, avx2 };

// True when the running CPU supports AVX2 and FMA and the binary carries the
// AVX2 variants.
bool avx2_available();

// Backend in use; defaults to the best available. set_backend(avx2) throws
// if unavailable.
Backend active_backend();
void set_backend(Backend b);
const char* backend_name(Backend b);

// C (m x n) = A (m x k) * B (k x n), rows contiguous. accumulate adds into C.
void gemm_nn(int m, int n, int k, const double* a, const double* b, double* c,
             bool accumulate);

// C (m x n) = A (m x k) * B^T where B is (n x k).
void gemm_nt(int m, int n, int k, const double* a, const double* b, double* c,
             bool accumulate);

// C (m x n) = A^T * B where A is (k x m), B is (k x n).
void gemm_tn(int m, int n, int k, const double* a, const double* b, double* c,
             bool accumulate);

// x[i, :] += bias for each of `rows` rows of length `cols`.
void add_row_bias(int rows, int cols, const double* bias, double* x);

void tanh_inplace(double* x, std::size_t n);

// dpre[i] = dt[i] * (1 - t[i]^2); t holds tanh outputs. dpre may alias dt.
void tanh_backward(std::size_t n, const double* t, const double* dt, double* dpre);

// out[j] = sum over rows of x[:, j].
void col_sum(int rows, int cols, const double* x, double* out);

double dot(std::size_t n, const double* x, const double* y);
void axpy(std::size_t n, double alpha, const double* x, double* y);

// sum_i (x[i] - y[i])^2
double sq_diff_sum(std::size_t n, const double* x, const double* y);

// Scalar reference entry points, exposed for the equivalence tests.
namespace ref {
void gemm_nn(int m, int n, int k, const double* a, const double* b, double* c,
             bool accumulate);
void gemm_nt(int m, int n, int k, const double* a, const double* b, double* c,
             bool accumulate);
void gemm_tn(int m, int n, int k, const double* a, const double* b, double* c,
             bool accumulate);
void add_row_bias(int rows, int cols, const double* bias, double* x);
void tanh_inplace(double* x, std::size_t n);
void tanh_backward(std::size_t n, const double* t, const double* dt, double* dpre);
void col_sum(int rows, int cols, const double* x, double* out);
double dot(std::size_t n, const double* x, const double* y);
void axpy(std::size_t n, double alpha, const double* x, double* y);
double sq_diff_sum(std::size_t n, const double* x, const double* y);
}  // namespace ref

}  // namespace coemo::kernels
