// AVX2+FMA variants. Compiled with -mavx2 -mfma; selected at runtime only
// when the CPU reports both. tanh uses Cephes-style rational approximations
// (poly below 0.625, exp-based form above) to stay within a few ulp of
// std::tanh.
#include "coemo/kernels.hpp"

#if defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

#include <cmath>
#include <cstddef>

namespace coemo::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d sh = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

// exp(x) on [-708, 708], Cephes rational form with Cody-Waite reduction.
inline __m256d exp_pd(__m256d x) {
  const __m256d log2e = _mm256_set1_pd(1.4426950408889634073599);
  const __m256d c1 = _mm256_set1_pd(6.93145751953125e-1);
  const __m256d c2 = _mm256_set1_pd(1.42860682030941723212e-6);
  const __m256d p0 = _mm256_set1_pd(1.26177193074810590878e-4);
  const __m256d p1 = _mm256_set1_pd(3.02994407707441961300e-2);
  const __m256d p2 = _mm256_set1_pd(9.99999999999999999910e-1);
  const __m256d q0 = _mm256_set1_pd(3.00198505138664455042e-6);
  const __m256d q1 = _mm256_set1_pd(2.52448340349684104192e-3);
  const __m256d q2 = _mm256_set1_pd(2.27265548208155028766e-1);
  const __m256d q3 = _mm256_set1_pd(2.00000000000000000005e0);

  x = _mm256_max_pd(_mm256_set1_pd(-708.0), _mm256_min_pd(_mm256_set1_pd(708.0), x));

  __m256d n = _mm256_floor_pd(_mm256_fmadd_pd(x, log2e, _mm256_set1_pd(0.5)));
  x = _mm256_fnmadd_pd(n, c1, x);
  x = _mm256_fnmadd_pd(n, c2, x);

  const __m256d xx = _mm256_mul_pd(x, x);
  __m256d px = _mm256_fmadd_pd(p0, xx, p1);
  px = _mm256_fmadd_pd(px, xx, p2);
  px = _mm256_mul_pd(px, x);
  __m256d qx = _mm256_fmadd_pd(q0, xx, q1);
  qx = _mm256_fmadd_pd(qx, xx, q2);
  qx = _mm256_fmadd_pd(qx, xx, q3);
  const __m256d e = _mm256_add_pd(
      _mm256_set1_pd(1.0),
      _mm256_mul_pd(_mm256_set1_pd(2.0), _mm256_div_pd(px, _mm256_sub_pd(qx, px))));

  // Scale by 2^n through the exponent bits.
  __m128i ni = _mm256_cvtpd_epi32(n);
  __m256i nl = _mm256_cvtepi32_epi64(ni);
  nl = _mm256_add_epi64(nl, _mm256_set1_epi64x(1023));
  nl = _mm256_slli_epi64(nl, 52);
  return _mm256_mul_pd(e, _mm256_castsi256_pd(nl));
}

inline __m256d tanh_pd(__m256d x) {
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  const __m256d sign = _mm256_and_pd(x, sign_mask);
  const __m256d ax = _mm256_andnot_pd(sign_mask, x);

  // |x| < 0.625: x + x^3 P(x^2)/Q(x^2)
  const __m256d tp0 = _mm256_set1_pd(-9.64399179425052238628e-1);
  const __m256d tp1 = _mm256_set1_pd(-9.92877231001918586564e1);
  const __m256d tp2 = _mm256_set1_pd(-1.61468768441708447952e3);
  const __m256d tq1 = _mm256_set1_pd(1.12811678491632931402e2);
  const __m256d tq2 = _mm256_set1_pd(2.23548839060100448583e3);
  const __m256d tq3 = _mm256_set1_pd(4.84406305325125486048e3);
  const __m256d xx = _mm256_mul_pd(ax, ax);
  __m256d p = _mm256_fmadd_pd(tp0, xx, tp1);
  p = _mm256_fmadd_pd(p, xx, tp2);
  __m256d q = _mm256_add_pd(xx, tq1);
  q = _mm256_fmadd_pd(q, xx, tq2);
  q = _mm256_fmadd_pd(q, xx, tq3);
  const __m256d small =
      _mm256_fmadd_pd(_mm256_mul_pd(_mm256_mul_pd(xx, ax), _mm256_div_pd(p, q)),
                      _mm256_set1_pd(1.0), ax);

  // otherwise: 1 - 2/(exp(2|x|) + 1), saturating to 1 past 19.
  const __m256d ex = exp_pd(_mm256_add_pd(ax, ax));
  const __m256d big = _mm256_sub_pd(
      _mm256_set1_pd(1.0),
      _mm256_div_pd(_mm256_set1_pd(2.0), _mm256_add_pd(ex, _mm256_set1_pd(1.0))));

  const __m256d use_small = _mm256_cmp_pd(ax, _mm256_set1_pd(0.625), _CMP_LT_OQ);
  const __m256d use_one = _mm256_cmp_pd(ax, _mm256_set1_pd(19.0), _CMP_GT_OQ);
  __m256d r = _mm256_blendv_pd(big, small, use_small);
  r = _mm256_blendv_pd(r, _mm256_set1_pd(1.0), use_one);
  return _mm256_or_pd(r, sign);
}

}  // namespace

void gemm_nn(int m, int n, int k, const double* a, const double* b, double* c,
             bool accumulate) {
  for (int i = 0; i < m; ++i) {
    double* ci = c + static_cast<std::size_t>(i) * n;
    if (!accumulate)
      for (int j = 0; j < n; ++j) ci[j] = 0.0;
    const double* ai = a + static_cast<std::size_t>(i) * k;
    int kk = 0;
    for (; kk + 4 <= k; kk += 4) {
      const __m256d a0 = _mm256_set1_pd(ai[kk + 0]);
      const __m256d a1 = _mm256_set1_pd(ai[kk + 1]);
      const __m256d a2 = _mm256_set1_pd(ai[kk + 2]);
      const __m256d a3 = _mm256_set1_pd(ai[kk + 3]);
      const double* b0 = b + static_cast<std::size_t>(kk + 0) * n;
      const double* b1 = b + static_cast<std::size_t>(kk + 1) * n;
      const double* b2 = b + static_cast<std::size_t>(kk + 2) * n;
      const double* b3 = b + static_cast<std::size_t>(kk + 3) * n;
      int j = 0;
      for (; j + 4 <= n; j += 4) {
        __m256d cv = _mm256_loadu_pd(ci + j);
        cv = _mm256_fmadd_pd(a0, _mm256_loadu_pd(b0 + j), cv);
        cv = _mm256_fmadd_pd(a1, _mm256_loadu_pd(b1 + j), cv);
        cv = _mm256_fmadd_pd(a2, _mm256_loadu_pd(b2 + j), cv);
        cv = _mm256_fmadd_pd(a3, _mm256_loadu_pd(b3 + j), cv);
        _mm256_storeu_pd(ci + j, cv);
      }
      for (; j < n; ++j)
        ci[j] += ai[kk] * b0[j] + ai[kk + 1] * b1[j] + ai[kk + 2] * b2[j] +
                 ai[kk + 3] * b3[j];
    }
    for (; kk < k; ++kk) {
      const __m256d av = _mm256_set1_pd(ai[kk]);
      const double* bk = b + static_cast<std::size_t>(kk) * n;
      int j = 0;
      for (; j + 4 <= n; j += 4)
        _mm256_storeu_pd(ci + j, _mm256_fmadd_pd(av, _mm256_loadu_pd(bk + j),
                                                 _mm256_loadu_pd(ci + j)));
      for (; j < n; ++j) ci[j] += ai[kk] * bk[j];
    }
  }
}

void gemm_nt(int m, int n, int k, const double* a, const double* b, double* c,
             bool accumulate) {
  for (int i = 0; i < m; ++i) {
    const double* ai = a + static_cast<std::size_t>(i) * k;
    double* ci = c + static_cast<std::size_t>(i) * n;
    int j = 0;
    for (; j + 4 <= n; j += 4) {
      const double* b0 = b + static_cast<std::size_t>(j + 0) * k;
      const double* b1 = b + static_cast<std::size_t>(j + 1) * k;
      const double* b2 = b + static_cast<std::size_t>(j + 2) * k;
      const double* b3 = b + static_cast<std::size_t>(j + 3) * k;
      __m256d s0 = _mm256_setzero_pd();
      __m256d s1 = _mm256_setzero_pd();
      __m256d s2 = _mm256_setzero_pd();
      __m256d s3 = _mm256_setzero_pd();
      int kk = 0;
      for (; kk + 4 <= k; kk += 4) {
        const __m256d av = _mm256_loadu_pd(ai + kk);
        s0 = _mm256_fmadd_pd(av, _mm256_loadu_pd(b0 + kk), s0);
        s1 = _mm256_fmadd_pd(av, _mm256_loadu_pd(b1 + kk), s1);
        s2 = _mm256_fmadd_pd(av, _mm256_loadu_pd(b2 + kk), s2);
        s3 = _mm256_fmadd_pd(av, _mm256_loadu_pd(b3 + kk), s3);
      }
      double r0 = hsum(s0), r1 = hsum(s1), r2 = hsum(s2), r3 = hsum(s3);
      for (; kk < k; ++kk) {
        r0 += ai[kk] * b0[kk];
        r1 += ai[kk] * b1[kk];
        r2 += ai[kk] * b2[kk];
        r3 += ai[kk] * b3[kk];
      }
      if (accumulate) {
        ci[j + 0] += r0;
        ci[j + 1] += r1;
        ci[j + 2] += r2;
        ci[j + 3] += r3;
      } else {
        ci[j + 0] = r0;
        ci[j + 1] = r1;
        ci[j + 2] = r2;
        ci[j + 3] = r3;
      }
    }
    for (; j < n; ++j) {
      const double* bj = b + static_cast<std::size_t>(j) * k;
      __m256d s = _mm256_setzero_pd();
      int kk = 0;
      for (; kk + 4 <= k; kk += 4)
        s = _mm256_fmadd_pd(_mm256_loadu_pd(ai + kk), _mm256_loadu_pd(bj + kk), s);
      double r = hsum(s);
      for (; kk < k; ++kk) r += ai[kk] * bj[kk];
      ci[j] = accumulate ? ci[j] + r : r;
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
      const __m256d av = _mm256_set1_pd(ad[i]);
      double* ci = c + static_cast<std::size_t>(i) * n;
      int j = 0;
      for (; j + 4 <= n; j += 4)
        _mm256_storeu_pd(ci + j, _mm256_fmadd_pd(av, _mm256_loadu_pd(bd + j),
                                                 _mm256_loadu_pd(ci + j)));
      for (; j < n; ++j) ci[j] += ad[i] * bd[j];
    }
  }
}

void add_row_bias(int rows, int cols, const double* bias, double* x) {
  for (int i = 0; i < rows; ++i) {
    double* xi = x + static_cast<std::size_t>(i) * cols;
    int j = 0;
    for (; j + 4 <= cols; j += 4)
      _mm256_storeu_pd(xi + j, _mm256_add_pd(_mm256_loadu_pd(xi + j),
                                             _mm256_loadu_pd(bias + j)));
    for (; j < cols; ++j) xi[j] += bias[j];
  }
}

void tanh_inplace(double* x, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(x + i, tanh_pd(_mm256_loadu_pd(x + i)));
  for (; i < n; ++i) x[i] = std::tanh(x[i]);
}

void tanh_backward(std::size_t n, const double* t, const double* dt, double* dpre) {
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d tv = _mm256_loadu_pd(t + i);
    const __m256d g = _mm256_fnmadd_pd(tv, tv, one);
    _mm256_storeu_pd(dpre + i, _mm256_mul_pd(_mm256_loadu_pd(dt + i), g));
  }
  for (; i < n; ++i) dpre[i] = dt[i] * (1.0 - t[i] * t[i]);
}

void col_sum(int rows, int cols, const double* x, double* out) {
  for (int j = 0; j < cols; ++j) out[j] = 0.0;
  for (int i = 0; i < rows; ++i) {
    const double* xi = x + static_cast<std::size_t>(i) * cols;
    int j = 0;
    for (; j + 4 <= cols; j += 4)
      _mm256_storeu_pd(out + j, _mm256_add_pd(_mm256_loadu_pd(out + j),
                                              _mm256_loadu_pd(xi + j)));
    for (; j < cols; ++j) out[j] += xi[j];
  }
}

double dot(std::size_t n, const double* x, const double* y) {
  __m256d s0 = _mm256_setzero_pd();
  __m256d s1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    s0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), s0);
    s1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), s1);
  }
  double r = hsum(_mm256_add_pd(s0, s1));
  for (; i < n; ++i) r += x[i] * y[i];
  return r;
}

void axpy(std::size_t n, double alpha, const double* x, double* y) {
  const __m256d av = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(av, _mm256_loadu_pd(x + i),
                                            _mm256_loadu_pd(y + i)));
  for (; i < n; ++i) y[i] += alpha * x[i];
}

double sq_diff_sum(std::size_t n, const double* x, const double* y) {
  __m256d s = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
    s = _mm256_fmadd_pd(d, d, s);
  }
  double r = hsum(s);
  for (; i < n; ++i) {
    const double d = x[i] - y[i];
    r += d * d;
  }
  return r;
}

}  // namespace coemo::kernels::avx2

#endif  // __AVX2__ && __FMA__
