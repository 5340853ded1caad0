#pragma once

//
// ... Standard header files
//
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <optional>
#include <string>
#include <variant>
#include <vector>

//
// ... spectralpath header files
//
#include <spectralpath/errors.hpp>
#include <spectralpath/matrix.hpp>
#include <spectralpath/polynomial.hpp>
#include <spectralpath/sym_eigen.hpp>
#include <spectralpath/symmetrize.hpp>
#include <spectralpath/tolerance.hpp>

namespace spectralpath {

  /// Distinct real eigenvalues (descending) with their primitive
  /// idempotents. Only built through primitive_idempotents, which
  /// verifies the resolution-of-identity identities.
  struct Spectrum {
    std::vector<double> theta;
    std::vector<RealMatrix> idempotents;
    double worst_residual = 0.0;

    std::size_t d() const noexcept { return theta.size() - 1; }
  };

  struct SpectralIdentityResiduals {
    double sum_minus_identity = 0.0;   // ||sum E_i - I||_max
    double orthogonality = 0.0;        // max ||E_i E_j - delta_ij E_i||_max
    double reconstruction = 0.0;       // ||A - sum theta_i E_i||_max
  };

  inline SpectralIdentityResiduals
  spectral_identity_residuals(RealMatrix const& a,
                              std::vector<double> const& theta,
                              std::vector<RealMatrix> const& e) {
    auto const n = a.order();
    SpectralIdentityResiduals r;
    RealMatrix sum(n);
    RealMatrix recon(n);
    for (std::size_t i = 0; i < e.size(); ++i) {
      sum = sum + e[i];
      recon = recon + theta[i] * e[i];
      for (std::size_t j = 0; j < e.size(); ++j) {
        auto prod = multiply(e[i], e[j]);
        r.orthogonality = std::max(
          r.orthogonality,
          i == j ? max_abs_diff(prod, e[i]) : max_abs(prod));
      }
    }
    r.sum_minus_identity = max_abs_diff(sum, RealMatrix::identity(n));
    r.reconstruction = max_abs_diff(recon, a);
    return r;
  }

  /// Product prod_{j != i} (theta_i - theta_j).
  inline double f_eval(std::vector<double> const& theta, std::size_t i,
                       Tolerance const& tol = {}) {
    if (i >= theta.size()) throw DimensionError("f_eval: index out of range");
    double p = 1.0;
    for (std::size_t j = 0; j < theta.size(); ++j)
      if (j != i) p *= theta[i] - theta[j];
    auto const d = static_cast<double>(theta.size() - 1);
    // every factor below eig_tol in magnitude would give |p| <= eig_tol^d
    if (theta.size() > 1 && std::abs(p) <= std::pow(tol.eig_tol, d)) {
      throw IdentityViolation("f_eval: degenerate spectrum", std::abs(p));
    }
    return p;
  }

  /// Primitive idempotents from the Lagrange product
  /// E_i = prod_{j != i} (A - theta_j I) / (theta_i - theta_j),
  /// factors applied in descending |theta_i - theta_j|.
  ///
  /// The resulting Spectrum is checked against sum E_i = I,
  /// E_i E_j = delta_ij E_i and A = sum theta_i E_i; the first two must hold
  /// within residual_tol and the last within residual_tol * max(1, ||A||).
  inline Spectrum primitive_idempotents(RealMatrix const& a,
                                        std::vector<double> theta,
                                        Tolerance const& tol = {}) {
    auto const n = a.order();
    if (theta.size() != n) {
      throw DimensionError("primitive_idempotents: need one eigenvalue per row");
    }
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (theta[i] == theta[j])
          throw PreconditionError("primitive_idempotents: repeated eigenvalue");

    Spectrum sp;
    sp.idempotents.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::size_t> others;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) others.push_back(j);
      std::stable_sort(others.begin(), others.end(),
                       [&](std::size_t x, std::size_t y) {
                         return std::abs(theta[i] - theta[x]) >
                                std::abs(theta[i] - theta[y]);
                       });
      RealMatrix e = RealMatrix::identity(n);
      for (auto j : others) {
        e = (1.0 / (theta[i] - theta[j])) * multiply(e, shifted(a, theta[j]));
      }
      sp.idempotents.push_back(std::move(e));
    }
    sp.theta = std::move(theta);

    auto const r = spectral_identity_residuals(a, sp.theta, sp.idempotents);
    double const scale = std::max(1.0, max_abs(a));
    sp.worst_residual = std::max({r.sum_minus_identity, r.orthogonality,
                                  r.reconstruction / scale});
    if (r.sum_minus_identity > tol.residual_tol ||
        r.orthogonality > tol.residual_tol ||
        r.reconstruction > tol.residual_tol * scale) {
      throw IdentityViolation("primitive_idempotents: spectral identities fail",
                              sp.worst_residual);
    }
    return sp;
  }

  enum class SpectralTag {
    multiplicity_free,
    diagonalizable_not_mf,
    not_diagonalizable,
    complex_spectrum
  };

  inline char const* to_string(SpectralTag t) {
    switch (t) {
    case SpectralTag::multiplicity_free: return "MultiplicityFree";
    case SpectralTag::diagonalizable_not_mf: return "DiagonalizableNotMF";
    case SpectralTag::not_diagonalizable: return "NotDiagonalizable";
    case SpectralTag::complex_spectrum: return "ComplexSpectrum";
    }
    return "unknown";
  }

  struct EigenvalueMultiplicity {
    double value;
    int algebraic;
    int geometric; // -1 when not computed
  };

  struct SpectralClass {
    SpectralTag tag;
    std::optional<Spectrum> spectrum; // set iff tag == multiplicity_free
    std::vector<EigenvalueMultiplicity> eigenvalues; // descending
    bool via_symmetrizer = false;
    int real_root_count = 0; // with multiplicity
    double min_gap = 0.0;    // smallest gap between distinct eigenvalues

    bool diagonalizable() const noexcept {
      return tag == SpectralTag::multiplicity_free ||
             tag == SpectralTag::diagonalizable_not_mf;
    }
  };

  /// Symmetric matrix similar to a via a positive diagonal, built entrywise
  /// as sign(a_ij) sqrt(a_ij a_ji); requires a symmetrizable pattern.
  inline RealMatrix symmetric_representative(RealMatrix const& a,
                                             Tolerance const& tol = {}) {
    auto const n = a.order();
    RealMatrix s(n);
    for (std::size_t i = 0; i < n; ++i) {
      s(i, i) = a(i, i);
      for (std::size_t j = i + 1; j < n; ++j) {
        double const p = a(i, j) * a(j, i);
        double v = 0.0;
        if (std::abs(a(i, j)) > tol.zero_tol && p > 0.0) {
          v = std::sqrt(p);
          if (a(i, j) < 0.0) v = -v;
        }
        s(i, j) = s(j, i) = v;
      }
    }
    return s;
  }

  namespace detail {

    inline std::vector<EigenvalueMultiplicity>
    group_eigenvalues(std::vector<double> const& desc, double gap_tol) {
      std::vector<EigenvalueMultiplicity> groups;
      for (double v : desc) {
        if (!groups.empty() &&
            groups.back().value - v <= gap_tol) {
          auto& g = groups.back();
          g.value = (g.value * g.algebraic + v) / (g.algebraic + 1);
          ++g.algebraic;
          ++g.geometric;
        } else {
          groups.push_back({v, 1, 1});
        }
      }
      return groups;
    }

    inline double min_gap(std::vector<EigenvalueMultiplicity> const& g) {
      double m = std::numeric_limits<double>::infinity();
      for (std::size_t k = 1; k < g.size(); ++k)
        m = std::min(m, g[k - 1].value - g[k].value);
      return m;
    }

  } // namespace detail

  /// Classifies a square matrix as multiplicity-free, diagonalizable with a
  /// repeated eigenvalue, non-diagonalizable, or having non-real spectrum.
  ///
  /// Symmetrizable input goes through the Jacobi solver on its symmetric
  /// representative; eigenvalues within eig_tol * max(1, ||A||_max) are
  /// merged. Anything else goes through the characteristic polynomial:
  /// real-root isolation decides real vs complex, and for a repeated root
  /// theta the rank of A - theta I (relative threshold 100 * eig_tol)
  /// decides diagonalizability.
  ///
  /// A multiplicity-free outcome always carries a verified Spectrum; if the
  /// idempotent identities fail, IdentityViolation propagates.
  inline SpectralClass classify(RealMatrix const& a, Tolerance const& tol = {}) {
    auto const n = a.order();
    double const scale = std::max(1.0, max_abs(a));
    double const gap_tol = tol.eig_tol * scale;
    SpectralClass out{};

    auto finish_mf = [&](std::vector<double> theta) {
      out.tag = SpectralTag::multiplicity_free;
      out.spectrum = primitive_idempotents(a, std::move(theta), tol);
    };

    if (std::holds_alternative<Symmetrizer>(find_symmetrizer(a, tol))) {
      out.via_symmetrizer = true;
      auto const pairs = sym_eigen(symmetric_representative(a, tol), tol);
      std::vector<double> values;
      for (auto const& p : pairs) values.push_back(p.value);
      out.eigenvalues = detail::group_eigenvalues(values, gap_tol);
      out.real_root_count = static_cast<int>(n);
      out.min_gap = detail::min_gap(out.eigenvalues);
      if (out.eigenvalues.size() == n) {
        finish_mf(std::move(values));
      } else {
        out.tag = SpectralTag::diagonalizable_not_mf;
      }
      return out;
    }

    auto const coeffs = characteristic_polynomial(a);
    auto roots = real_roots(coeffs, tol.zero_tol, tol.eig_tol);
    std::reverse(roots.begin(), roots.end());
    int total = 0;
    for (auto const& r : roots) {
      total += r.multiplicity;
      out.eigenvalues.push_back({r.value, r.multiplicity, -1});
    }
    out.real_root_count = total;
    out.min_gap = detail::min_gap(out.eigenvalues);
    if (total < static_cast<int>(n)) {
      out.tag = SpectralTag::complex_spectrum;
      return out;
    }
    bool repeated = false;
    bool defective = false;
    for (auto& ev : out.eigenvalues) {
      if (ev.algebraic == 1) {
        ev.geometric = 1;
        continue;
      }
      repeated = true;
      auto const rank = numeric_rank(shifted(a, ev.value), 100.0 * tol.eig_tol);
      ev.geometric = static_cast<int>(n - rank);
      if (ev.geometric < ev.algebraic) defective = true;
    }
    if (defective) {
      out.tag = SpectralTag::not_diagonalizable;
    } else if (repeated) {
      out.tag = SpectralTag::diagonalizable_not_mf;
    } else {
      std::vector<double> theta;
      for (auto const& ev : out.eigenvalues) theta.push_back(ev.value);
      finish_mf(std::move(theta));
    }
    return out;
  }

  struct Profile {
    std::vector<double> values; // c_i = (E_i)_{st} f_i(theta_i)
    double mean = 0.0;
    double spread = 0.0;    // max_i |c_i - mean|
    double threshold = 0.0; // residual_tol * ||A||_max^d
    bool is_constant = false;
    bool is_constant_zero = false;
    std::optional<double> common_value; // set iff constant and nonzero
  };

  /// Entry-product profile of a multiplicity-free matrix at (s, t).
  ///
  /// matrix_scale is ||A||_max; the constancy threshold is
  /// residual_tol * matrix_scale^d, since f_i(theta_i) grows like the d-th
  /// power of the spectral diameter.
  inline Profile entry_product_profile(Spectrum const& sp, double matrix_scale,
                                       std::size_t s, std::size_t t,
                                       Tolerance const& tol = {}) {
    auto const n = sp.theta.size();
    if (s >= n || t >= n) {
      throw DimensionError("entry_product_profile: index out of range");
    }
    Profile pr;
    for (std::size_t i = 0; i < n; ++i) {
      pr.values.push_back(sp.idempotents[i](s, t) * f_eval(sp.theta, i, tol));
    }
    pr.mean = std::accumulate(pr.values.begin(), pr.values.end(), 0.0) /
              static_cast<double>(n);
    for (double c : pr.values)
      pr.spread = std::max(pr.spread, std::abs(c - pr.mean));
    pr.threshold =
      tol.residual_tol * std::pow(matrix_scale, static_cast<double>(n - 1));
    pr.is_constant = pr.spread <= pr.threshold;
    pr.is_constant_zero = pr.is_constant && std::abs(pr.mean) <= pr.threshold;
    if (pr.is_constant && !pr.is_constant_zero) pr.common_value = pr.mean;
    return pr;
  }

  inline Profile entry_product_profile(RealMatrix const& a, std::size_t s,
                                       std::size_t t, Tolerance const& tol = {}) {
    auto const cls = classify(a, tol);
    if (cls.tag != SpectralTag::multiplicity_free) {
      throw PreconditionError(std::string("entry_product_profile: matrix is ") +
                              to_string(cls.tag));
    }
    return entry_product_profile(*cls.spectrum, max_abs(a), s, t, tol);
  }

  /// f_i(A) = prod_{j != i} (A - theta_j I), evaluated as an explicit product.
  inline RealMatrix f_matrix(RealMatrix const& a,
                             std::vector<double> const& theta, std::size_t i) {
    RealMatrix p = RealMatrix::identity(a.order());
    for (std::size_t j = 0; j < theta.size(); ++j)
      if (j != i) p = multiply(p, shifted(a, theta[j]));
    return p;
  }

} // namespace spectralpath
