#pragma once

//
// ... Standard header files
//
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

//
// ... spectralpath header files
//
#include <spectralpath/errors.hpp>
#include <spectralpath/matrix.hpp>
#include <spectralpath/tolerance.hpp>

namespace spectralpath {

  struct EigenPair {
    double value;
    std::vector<double> vector; // unit length
  };

  inline constexpr int jacobi_max_sweeps = 100;

  namespace detail {

    inline double off_diagonal_norm(RealMatrix const& a) {
      double s = 0.0;
      for (std::size_t i = 0; i < a.order(); ++i)
        for (std::size_t j = 0; j < a.order(); ++j)
          if (i != j) s += a(i, j) * a(i, j);
      return std::sqrt(s);
    }

  } // namespace detail

  /// Eigen-decomposition of a symmetric matrix by cyclic Jacobi rotations.
  ///
  /// Sweeps run until the off-diagonal mass stops shrinking at working
  /// precision; at most jacobi_max_sweeps are allowed, and leftover
  /// off-diagonal mass above eig_tol * max(1, ||S||_max) is a convergence
  /// failure. Pairs come back sorted by descending eigenvalue and the
  /// reconstruction S = V D V^t is verified against residual_tol (scaled
  /// by max(1, ||S||_max)).
  inline std::vector<EigenPair> sym_eigen(RealMatrix const& s,
                                          Tolerance const& tol = {}) {
    if (!is_symmetric(s, tol.zero_tol)) {
      throw NotSymmetricError("sym_eigen: input is not symmetric");
    }
    auto const n = s.order();
    double const scale = std::max(1.0, max_abs(s));

    RealMatrix a = s;
    // symmetrize exactly; asymmetry below zero_tol is tolerated noise
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        a(i, j) = a(j, i) = 0.5 * (a(i, j) + a(j, i));
    RealMatrix v = RealMatrix::identity(n);

    double const target = 1e-15 * std::max(scale, 1e-300);
    int sweep = 0;
    for (; sweep < jacobi_max_sweeps; ++sweep) {
      if (detail::off_diagonal_norm(a) <= target) break;
      bool rotated = false;
      for (std::size_t p = 0; p + 1 < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
          double const apq = a(p, q);
          if (std::abs(apq) <= 1e-300) continue;
          double const app = a(p, p);
          double const aqq = a(q, q);
          // skip rotations that cannot change the diagonal in floating point
          if (sweep > 3 && std::abs(apq) * 1e17 < std::abs(app) &&
              std::abs(apq) * 1e17 < std::abs(aqq)) {
            a(p, q) = a(q, p) = 0.0;
            continue;
          }
          rotated = true;
          double const theta = (aqq - app) / (2.0 * apq);
          double const t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
          double const c = 1.0 / std::sqrt(t * t + 1.0);
          double const sn = t * c;
          for (std::size_t k = 0; k < n; ++k) {
            double const akp = a(k, p);
            double const akq = a(k, q);
            a(k, p) = c * akp - sn * akq;
            a(k, q) = sn * akp + c * akq;
          }
          for (std::size_t k = 0; k < n; ++k) {
            double const apk = a(p, k);
            double const aqk = a(q, k);
            a(p, k) = c * apk - sn * aqk;
            a(q, k) = sn * apk + c * aqk;
          }
          a(p, q) = a(q, p) = 0.0;
          for (std::size_t k = 0; k < n; ++k) {
            double const vkp = v(k, p);
            double const vkq = v(k, q);
            v(k, p) = c * vkp - sn * vkq;
            v(k, q) = sn * vkp + c * vkq;
          }
        }
      }
      if (!rotated) break;
    }
    double const leftover = detail::off_diagonal_norm(a);
    if (leftover > tol.eig_tol * scale) {
      throw ConvergenceError("sym_eigen: off-diagonal mass " +
                             std::to_string(leftover) + " after " +
                             std::to_string(sweep) + " sweeps");
    }

    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t x, std::size_t y) {
      return a(x, x) > a(y, y);
    });

    std::vector<EigenPair> out;
    out.reserve(n);
    for (std::size_t k : idx) {
      EigenPair ep{a(k, k), std::vector<double>(n)};
      for (std::size_t i = 0; i < n; ++i) ep.vector[i] = v(i, k);
      out.push_back(std::move(ep));
    }

    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        double r = 0.0;
        for (auto const& ep : out) r += ep.value * ep.vector[i] * ep.vector[j];
        worst = std::max(worst, std::abs(r - s(i, j)));
      }
    }
    if (worst > tol.residual_tol * scale) {
      throw IdentityViolation("sym_eigen: reconstruction failed", worst);
    }
    return out;
  }

} // namespace spectralpath
