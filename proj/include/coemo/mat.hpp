// Row-major double matrix used by the batched MLP paths. The GMM and metric
// code uses Eigen; this type exists so the hot training loops can run on the
// dispatched kernels without mapping through Eigen expressions.
#pragma once

#include <cassert>
#include <cstddef>
#include <vector>

namespace coemo {

struct Mat {
  int rows = 0;
  int cols = 0;
  std::vector<double> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c, 0.0) {}

  void resize(int r, int c) {
    rows = r;
    cols = c;
    a.assign(static_cast<std::size_t>(r) * c, 0.0);
  }
  void set_zero() { a.assign(a.size(), 0.0); }

  double* data() { return a.data(); }
  const double* data() const { return a.data(); }
  double* row(int i) { return a.data() + static_cast<std::size_t>(i) * cols; }
  const double* row(int i) const { return a.data() + static_cast<std::size_t>(i) * cols; }

  double& operator()(int i, int j) {
    assert(i >= 0 && i < rows && j >= 0 && j < cols);
    return a[static_cast<std::size_t>(i) * cols + j];
  }
  double operator()(int i, int j) const {
    assert(i >= 0 && i < rows && j >= 0 && j < cols);
    return a[static_cast<std::size_t>(i) * cols + j];
  }

  std::size_t size() const { return a.size(); }
};

}  // namespace coemo
