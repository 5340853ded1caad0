#pragma once

//
// ... Standard header files
//
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <deque>
#include <string>
#include <variant>
#include <vector>

//
// ... spectralpath header files
//
#include <spectralpath/errors.hpp>
#include <spectralpath/matrix.hpp>
#include <spectralpath/tolerance.hpp>

namespace spectralpath {

  /// Positive diagonal D with D A D^{-1} symmetric.
  ///
  /// kappa holds the detailed-balance weights (kappa_i A_ij = kappa_j A_ji);
  /// delta_i = sqrt(kappa_i) is the diagonal of D.
  struct Symmetrizer {
    std::vector<double> delta;
    std::vector<double> kappa;

    /// D A D^{-1}
    RealMatrix apply(RealMatrix const& a) const {
      RealMatrix s(a.order());
      for (std::size_t i = 0; i < a.order(); ++i)
        for (std::size_t j = 0; j < a.order(); ++j)
          s(i, j) = delta[i] * a(i, j) / delta[j];
      return s;
    }
  };

  inline Symmetrizer symmetrizer_from_kappa(std::vector<double> kappa) {
    Symmetrizer out;
    out.delta.reserve(kappa.size());
    for (double k : kappa) out.delta.push_back(std::sqrt(k));
    out.kappa = std::move(kappa);
    return out;
  }

  struct NotSymmetrizable {
    enum class Reason {
      asymmetric_pattern, // A_ij nonzero, A_ji zero
      nonpositive_ratio,  // A_ij A_ji < 0
      inconsistent_cycle  // non-tree edge violates the propagated weights
    };
    Reason reason;
    std::size_t i;
    std::size_t j;
    double residual = 0.0;
  };

  inline char const* to_string(NotSymmetrizable::Reason r) {
    switch (r) {
    case NotSymmetrizable::Reason::asymmetric_pattern:
      return "asymmetric-pattern";
    case NotSymmetrizable::Reason::nonpositive_ratio:
      return "nonpositive-ratio";
    case NotSymmetrizable::Reason::inconsistent_cycle:
      return "inconsistent-cycle";
    }
    return "unknown";
  }

  using SymmetrizeResult = std::variant<Symmetrizer, NotSymmetrizable>;

  /// Decides whether some positive weights w satisfy w_i A_ij = w_j A_ji.
  ///
  /// Weights are propagated along a BFS spanning forest of the support
  /// graph (root = smallest vertex of each component, weight 1), then every
  /// edge is checked with the relative test
  /// |w_i A_ij - w_j A_ji| <= residual_tol * max(|w_i A_ij|, |w_j A_ji|, 1).
  inline SymmetrizeResult find_symmetrizer(RealMatrix const& a,
                                           Tolerance const& tol = {}) {
    using Reason = NotSymmetrizable::Reason;
    auto const n = a.order();
    auto nz = [&](std::size_t i, std::size_t j) {
      return std::abs(a(i, j)) > tol.zero_tol;
    };

    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (nz(i, j) != nz(j, i)) {
          return nz(i, j) ? NotSymmetrizable{Reason::asymmetric_pattern, i, j}
                          : NotSymmetrizable{Reason::asymmetric_pattern, j, i};
        }
        if (nz(i, j) && a(i, j) * a(j, i) < 0.0) {
          return NotSymmetrizable{Reason::nonpositive_ratio, i, j};
        }
      }
    }

    std::vector<double> w(n, 0.0);
    std::vector<bool> seen(n, false);
    for (std::size_t root = 0; root < n; ++root) {
      if (seen[root]) continue;
      seen[root] = true;
      w[root] = 1.0;
      std::deque<std::size_t> queue{root};
      while (!queue.empty()) {
        auto const u = queue.front();
        queue.pop_front();
        for (std::size_t v = 0; v < n; ++v) {
          if (v == u || seen[v] || !nz(u, v)) continue;
          seen[v] = true;
          w[v] = w[u] * a(u, v) / a(v, u);
          queue.push_back(v);
        }
      }
    }

    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        if (!nz(i, j)) continue;
        double const lhs = w[i] * a(i, j);
        double const rhs = w[j] * a(j, i);
        double const r = std::abs(lhs - rhs);
        double const bound =
          tol.residual_tol * std::max({std::abs(lhs), std::abs(rhs), 1.0});
        if (r > bound) {
          return NotSymmetrizable{Reason::inconsistent_cycle, i, j, r};
        }
      }
    }
    return symmetrizer_from_kappa(std::move(w));
  }

  /// Closed-form weights for a nonnegative irreducible tridiagonal matrix:
  /// kappa_0 = 1, kappa_i = kappa_{i-1} * A_{i-1,i} / A_{i,i-1}.
  inline Symmetrizer tridiagonal_symmetrizer(RealMatrix const& a,
                                             Tolerance const& tol = {}) {
    auto const n = a.order();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        auto const gap = i > j ? i - j : j - i;
        if (a(i, j) < -tol.zero_tol) {
          throw PreconditionError("tridiagonal_symmetrizer: negative entry");
        }
        if (gap == 1 && a(i, j) <= tol.zero_tol) {
          throw PreconditionError(
            "tridiagonal_symmetrizer: zero entry next to the diagonal");
        }
        if (gap > 1 && std::abs(a(i, j)) > tol.zero_tol) {
          throw PreconditionError(
            "tridiagonal_symmetrizer: entry outside the tridiagonal band");
        }
      }
    }
    std::vector<double> kappa(n, 1.0);
    for (std::size_t i = 1; i < n; ++i)
      kappa[i] = kappa[i - 1] * a(i - 1, i) / a(i, i - 1);
    return symmetrizer_from_kappa(std::move(kappa));
  }

  /// max |(K A - A^t K)_ij| for K = diag(kappa)
  inline double detailed_balance_residual(RealMatrix const& a,
                                          std::vector<double> const& kappa) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.order(); ++i)
      for (std::size_t j = 0; j < a.order(); ++j)
        worst = std::max(worst,
                         std::abs(kappa[i] * a(i, j) - a(j, i) * kappa[j]));
    return worst;
  }

} // namespace spectralpath
