#pragma once

//
// ... Standard header files
//
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

//
// ... spectralpath header files
//
#include <spectralpath/errors.hpp>
#include <spectralpath/tolerance.hpp>

namespace spectralpath {

  /// Dense square matrix of doubles, row-major, indexed 0..n-1.
  ///
  /// Entries are required to be finite; every constructor and the text
  /// reader enforce this. Arithmetic helpers below preserve it as long as
  /// inputs are of moderate size.
  class RealMatrix {
  public:
    RealMatrix() = default;

    explicit RealMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}

    RealMatrix(std::size_t n, std::vector<double> data)
      : n_(n), data_(std::move(data)) {
      if (data_.size() != n_ * n_) {
        throw DimensionError("RealMatrix: expected " + std::to_string(n_ * n_) +
                             " entries, got " + std::to_string(data_.size()));
      }
      check_finite();
    }

    RealMatrix(std::initializer_list<std::initializer_list<double>> rows)
      : n_(rows.size()), data_() {
      data_.reserve(n_ * n_);
      for (auto const& row : rows) {
        if (row.size() != n_) {
          throw DimensionError("RealMatrix: ragged initializer");
        }
        data_.insert(data_.end(), row.begin(), row.end());
      }
      check_finite();
    }

    static RealMatrix identity(std::size_t n) {
      RealMatrix m(n);
      for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
      return m;
    }

    static RealMatrix diagonal(std::span<double const> diag) {
      RealMatrix m(diag.size());
      for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
      return m;
    }

    std::size_t order() const noexcept { return n_; }

    double& operator()(std::size_t i, std::size_t j) noexcept {
      return data_[i * n_ + j];
    }
    double operator()(std::size_t i, std::size_t j) const noexcept {
      return data_[i * n_ + j];
    }

    std::span<double const> row(std::size_t i) const noexcept {
      return {data_.data() + i * n_, n_};
    }
    std::span<double const> data() const noexcept { return data_; }

    friend bool operator==(RealMatrix const&, RealMatrix const&) = default;

  private:
    void check_finite() const {
      for (double v : data_) {
        if (!std::isfinite(v)) {
          throw DimensionError("RealMatrix: non-finite entry");
        }
      }
    }

    std::size_t n_ = 0;
    std::vector<double> data_;
  };

  inline void require_same_order(RealMatrix const& a, RealMatrix const& b,
                                 char const* op) {
    if (a.order() != b.order()) {
      throw DimensionError(std::string(op) + ": order mismatch " +
                           std::to_string(a.order()) + " vs " +
                           std::to_string(b.order()));
    }
  }

  inline RealMatrix multiply(RealMatrix const& a, RealMatrix const& b) {
    require_same_order(a, b, "multiply");
    auto const n = a.order();
    RealMatrix c(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < n; ++k) {
        double const aik = a(i, k);
        if (aik == 0.0) continue;
        for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
      }
    }
    return c;
  }

  inline RealMatrix operator*(RealMatrix const& a, RealMatrix const& b) {
    return multiply(a, b);
  }

  inline RealMatrix operator+(RealMatrix a, RealMatrix const& b) {
    require_same_order(a, b, "add");
    for (std::size_t i = 0; i < a.order(); ++i)
      for (std::size_t j = 0; j < a.order(); ++j) a(i, j) += b(i, j);
    return a;
  }

  inline RealMatrix operator-(RealMatrix a, RealMatrix const& b) {
    require_same_order(a, b, "subtract");
    for (std::size_t i = 0; i < a.order(); ++i)
      for (std::size_t j = 0; j < a.order(); ++j) a(i, j) -= b(i, j);
    return a;
  }

  inline RealMatrix operator*(double s, RealMatrix a) {
    for (std::size_t i = 0; i < a.order(); ++i)
      for (std::size_t j = 0; j < a.order(); ++j) a(i, j) *= s;
    return a;
  }

  inline RealMatrix transpose(RealMatrix const& a) {
    RealMatrix t(a.order());
    for (std::size_t i = 0; i < a.order(); ++i)
      for (std::size_t j = 0; j < a.order(); ++j) t(j, i) = a(i, j);
    return t;
  }

  inline double trace(RealMatrix const& a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.order(); ++i) s += a(i, i);
    return s;
  }

  inline double max_abs(RealMatrix const& a) {
    double m = 0.0;
    for (double v : a.data()) m = std::max(m, std::abs(v));
    return m;
  }

  // ||a - b||_max
  inline double max_abs_diff(RealMatrix const& a, RealMatrix const& b) {
    require_same_order(a, b, "max_abs_diff");
    double m = 0.0;
    for (std::size_t k = 0; k < a.data().size(); ++k)
      m = std::max(m, std::abs(a.data()[k] - b.data()[k]));
    return m;
  }

  inline bool is_symmetric(RealMatrix const& a, double tol) {
    for (std::size_t i = 0; i < a.order(); ++i)
      for (std::size_t j = i + 1; j < a.order(); ++j)
        if (std::abs(a(i, j) - a(j, i)) > tol) return false;
    return true;
  }

  /// A - shift * I
  inline RealMatrix shifted(RealMatrix a, double shift) {
    for (std::size_t i = 0; i < a.order(); ++i) a(i, i) -= shift;
    return a;
  }

  /// Relabels indices by an ordering x: result(i,j) = a(x[i], x[j]).
  ///
  /// This is the similarity a -> L a L^{-1} with L the permutation matrix
  /// sending basis vector x[i] to position i.
  inline RealMatrix permute(RealMatrix const& a,
                            std::span<std::size_t const> ordering) {
    if (ordering.size() != a.order()) {
      throw DimensionError("permute: ordering length mismatch");
    }
    std::vector<bool> seen(a.order(), false);
    for (auto x : ordering) {
      if (x >= a.order() || seen[x]) {
        throw DimensionError("permute: ordering is not a permutation");
      }
      seen[x] = true;
    }
    RealMatrix b(a.order());
    for (std::size_t i = 0; i < a.order(); ++i)
      for (std::size_t j = 0; j < a.order(); ++j)
        b(i, j) = a(ordering[i], ordering[j]);
    return b;
  }

  /// Solves a X = b by Gaussian elimination with partial pivoting.
  ///
  /// A pivot of magnitude <= zero_tol is reported as singular, carrying
  /// the elimination step at which it occurred.
  inline RealMatrix solve(RealMatrix const& a, RealMatrix const& b,
                          Tolerance const& tol = {}) {
    require_same_order(a, b, "solve");
    auto const n = a.order();
    RealMatrix lu = a;
    RealMatrix x = b;
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t p = k;
      for (std::size_t i = k + 1; i < n; ++i)
        if (std::abs(lu(i, k)) > std::abs(lu(p, k))) p = i;
      if (std::abs(lu(p, k)) <= tol.zero_tol) {
        throw SingularMatrixError(k, std::abs(lu(p, k)));
      }
      if (p != k) {
        for (std::size_t j = 0; j < n; ++j) {
          std::swap(lu(p, j), lu(k, j));
          std::swap(x(p, j), x(k, j));
        }
      }
      for (std::size_t i = k + 1; i < n; ++i) {
        double const f = lu(i, k) / lu(k, k);
        if (f == 0.0) continue;
        for (std::size_t j = k; j < n; ++j) lu(i, j) -= f * lu(k, j);
        for (std::size_t j = 0; j < n; ++j) x(i, j) -= f * x(k, j);
      }
    }
    for (std::size_t kk = n; kk-- > 0;) {
      for (std::size_t j = 0; j < n; ++j) {
        double s = x(kk, j);
        for (std::size_t m = kk + 1; m < n; ++m) s -= lu(kk, m) * x(m, j);
        x(kk, j) = s / lu(kk, kk);
      }
    }
    return x;
  }

  /// Numerical rank of a rows x cols matrix stored row-major.
  ///
  /// Householder QR with column pivoting; a diagonal entry of R counts
  /// toward the rank when it exceeds rel_tol times the largest one.
  inline std::size_t numeric_rank(std::span<double const> data,
                                  std::size_t rows, std::size_t cols,
                                  double rel_tol) {
    if (data.size() != rows * cols) {
      throw DimensionError("numeric_rank: data size mismatch");
    }
    std::vector<double> r(data.begin(), data.end());
    auto at = [&](std::size_t i, std::size_t j) -> double& {
      return r[i * cols + j];
    };
    std::vector<double> colnorm(cols, 0.0);
    auto recompute = [&](std::size_t from) {
      for (std::size_t j = 0; j < cols; ++j) {
        double s = 0.0;
        for (std::size_t i = from; i < rows; ++i) s += at(i, j) * at(i, j);
        colnorm[j] = s;
      }
    };
    recompute(0);
    std::size_t const steps = std::min(rows, cols);
    double first = -1.0;
    std::size_t rank = 0;
    for (std::size_t k = 0; k < steps; ++k) {
      std::size_t p = k;
      for (std::size_t j = k + 1; j < cols; ++j)
        if (colnorm[j] > colnorm[p]) p = j;
      if (p != k) {
        for (std::size_t i = 0; i < rows; ++i) std::swap(at(i, p), at(i, k));
        std::swap(colnorm[p], colnorm[k]);
      }
      double norm = 0.0;
      for (std::size_t i = k; i < rows; ++i) norm += at(i, k) * at(i, k);
      norm = std::sqrt(norm);
      if (first < 0.0) first = norm;
      if (norm == 0.0 || norm <= rel_tol * first) break;
      ++rank;
      double const alpha = at(k, k) > 0 ? -norm : norm;
      std::vector<double> v(rows - k);
      for (std::size_t i = k; i < rows; ++i) v[i - k] = at(i, k);
      v[0] -= alpha;
      double const vv = std::inner_product(v.begin(), v.end(), v.begin(), 0.0);
      if (vv > 0.0) {
        for (std::size_t j = k; j < cols; ++j) {
          double s = 0.0;
          for (std::size_t i = k; i < rows; ++i) s += v[i - k] * at(i, j);
          s = 2.0 * s / vv;
          for (std::size_t i = k; i < rows; ++i) at(i, j) -= s * v[i - k];
        }
      }
      // downdating loses accuracy; recompute trailing norms exactly
      recompute(k + 1);
    }
    return rank;
  }

  inline std::size_t numeric_rank(RealMatrix const& a, double rel_tol) {
    return numeric_rank(a.data(), a.order(), a.order(), rel_tol);
  }

} // namespace spectralpath
