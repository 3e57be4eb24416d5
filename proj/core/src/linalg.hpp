#pragma once

#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

namespace scidetect::detail {

// Dense square solve/inverse via Gaussian elimination with partial pivoting.
// Internal: dimensions in this codebase stay small (tens, not thousands).
class SquareMatrix {
 public:
  explicit SquareMatrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}

  double& at(std::size_t r, std::size_t c) { return a_[r * n_ + c]; }
  double at(std::size_t r, std::size_t c) const { return a_[r * n_ + c]; }
  std::size_t size() const { return n_; }

  // Solves A x = b in place; returns false on a numerically singular pivot.
  bool solve(std::vector<double>& b) const {
    SquareMatrix lu(*this);
    std::vector<std::size_t> perm(n_);
    std::iota(perm.begin(), perm.end(), 0);
    for (std::size_t k = 0; k < n_; ++k) {
      std::size_t pivot = k;
      double best = std::fabs(lu.at(perm[k], k));
      for (std::size_t r = k + 1; r < n_; ++r) {
        const double v = std::fabs(lu.at(perm[r], k));
        if (v > best) { best = v; pivot = r; }
      }
      if (best < 1e-12) return false;
      std::swap(perm[k], perm[pivot]);
      const double pk = lu.at(perm[k], k);
      for (std::size_t r = k + 1; r < n_; ++r) {
        const double f = lu.at(perm[r], k) / pk;
        if (f == 0.0) continue;
        for (std::size_t c = k; c < n_; ++c) lu.at(perm[r], c) -= f * lu.at(perm[k], c);
        b[perm[r]] -= f * b[perm[k]];
      }
    }
    std::vector<double> x(n_);
    for (std::size_t k = n_; k-- > 0;) {
      double sum = b[perm[k]];
      for (std::size_t c = k + 1; c < n_; ++c) sum -= lu.at(perm[k], c) * x[c];
      x[k] = sum / lu.at(perm[k], k);
    }
    b = std::move(x);
    return true;
  }

  // Inverse by solving against unit vectors; returns false when singular.
  bool inverse(SquareMatrix& out) const {
    out = SquareMatrix(n_);
    for (std::size_t c = 0; c < n_; ++c) {
      std::vector<double> e(n_, 0.0);
      e[c] = 1.0;
      if (!solve(e)) return false;
      for (std::size_t r = 0; r < n_; ++r) out.at(r, c) = e[r];
    }
    return true;
  }

 private:
  std::size_t n_;
  std::vector<double> a_;
};

}  // namespace scidetect::detail
