#pragma once

namespace spectralpath {

  /// Numerical thresholds used throughout the library.
  ///
  /// zero_tol decides whether a matrix entry counts as zero, eig_tol
  /// decides whether two eigenvalues are distinct (and bounds the
  /// off-diagonal mass tolerated at eigensolver exit), residual_tol bounds
  /// every identity verification.
  struct Tolerance {
    double zero_tol = 1e-10;
    double eig_tol = 1e-8;
    double residual_tol = 1e-8;
  };

} // namespace spectralpath
