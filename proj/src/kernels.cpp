#include "coemo/kernels.hpp"

#include <stdexcept>

namespace coemo::kernels {

#if defined(__x86_64__) || defined(_M_X64)
#define COEMO_HAVE_AVX2_BUILD 1
namespace avx2 {
void gemm_nn(int, int, int, const double*, const double*, double*, bool);
void gemm_nt(int, int, int, const double*, const double*, double*, bool);
void gemm_tn(int, int, int, const double*, const double*, double*, bool);
void add_row_bias(int, int, const double*, double*);
void tanh_inplace(double*, std::size_t);
void tanh_backward(std::size_t, const double*, const double*, double*);
void col_sum(int, int, const double*, double*);
double dot(std::size_t, const double*, const double*);
void axpy(std::size_t, double, const double*, double*);
double sq_diff_sum(std::size_t, const double*, const double*);
}  // namespace avx2
#endif

bool avx2_available() {
#ifdef COEMO_HAVE_AVX2_BUILD
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

namespace {
Backend g_backend = avx2_available() ? Backend::avx2 : Backend::scalar;
}

Backend active_backend() { return g_backend; }

void set_backend(Backend b) {
  if (b == Backend::avx2 && !avx2_available())
    throw std::runtime_error("avx2 backend not available on this machine");
  g_backend = b;
}

const char* backend_name(Backend b) {
  return b == Backend::avx2 ? "avx2" : "scalar";
}

#ifdef COEMO_HAVE_AVX2_BUILD
#define COEMO_DISPATCH(fn, ...)                                      \
  do {                                                               \
    if (g_backend == Backend::avx2) return avx2::fn(__VA_ARGS__);    \
    return ref::fn(__VA_ARGS__);                                     \
  } while (0)
#else
#define COEMO_DISPATCH(fn, ...) return ref::fn(__VA_ARGS__)
#endif

void gemm_nn(int m, int n, int k, const double* a, const double* b, double* c,
             bool accumulate) {
  COEMO_DISPATCH(gemm_nn, m, n, k, a, b, c, accumulate);
}

void gemm_nt(int m, int n, int k, const double* a, const double* b, double* c,
             bool accumulate) {
  COEMO_DISPATCH(gemm_nt, m, n, k, a, b, c, accumulate);
}

void gemm_tn(int m, int n, int k, const double* a, const double* b, double* c,
             bool accumulate) {
  COEMO_DISPATCH(gemm_tn, m, n, k, a, b, c, accumulate);
}

void add_row_bias(int rows, int cols, const double* bias, double* x) {
  COEMO_DISPATCH(add_row_bias, rows, cols, bias, x);
}

void tanh_inplace(double* x, std::size_t n) { COEMO_DISPATCH(tanh_inplace, x, n); }

void tanh_backward(std::size_t n, const double* t, const double* dt, double* dpre) {
  COEMO_DISPATCH(tanh_backward, n, t, dt, dpre);
}

void col_sum(int rows, int cols, const double* x, double* out) {
  COEMO_DISPATCH(col_sum, rows, cols, x, out);
}

double dot(std::size_t n, const double* x, const double* y) {
  COEMO_DISPATCH(dot, n, x, y);
}

void axpy(std::size_t n, double alpha, const double* x, double* y) {
  COEMO_DISPATCH(axpy, n, alpha, x, y);
}

double sq_diff_sum(std::size_t n, const double* x, const double* y) {
  COEMO_DISPATCH(sq_diff_sum, n, x, y);
}

#undef COEMO_DISPATCH

}  // namespace coemo::kernels
