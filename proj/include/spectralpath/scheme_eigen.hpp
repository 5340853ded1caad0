#pragma once

//
// ... Standard header files
//
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <string>
#include <vector>

//
// ... spectralpath header files
//
#include <spectralpath/digraph.hpp>
#include <spectralpath/errors.hpp>
#include <spectralpath/matrix.hpp>
#include <spectralpath/scheme.hpp>
#include <spectralpath/spectra.hpp>
#include <spectralpath/sym_eigen.hpp>
#include <spectralpath/theorems.hpp>
#include <spectralpath/tolerance.hpp>

namespace spectralpath {

  /// Real tensor q^h_{ij}, 0 <= h,i,j <= d.
  class KreinTensor {
  public:
    KreinTensor() = default;
    explicit KreinTensor(std::size_t d)
      : d_(d), data_((d + 1) * (d + 1) * (d + 1), 0.0) {}

    std::size_t d() const noexcept { return d_; }

    double& operator()(std::size_t h, std::size_t i, std::size_t j) {
      return data_[(h * (d_ + 1) + i) * (d_ + 1) + j];
    }
    double operator()(std::size_t h, std::size_t i, std::size_t j) const {
      return data_[(h * (d_ + 1) + i) * (d_ + 1) + j];
    }

    double min() const { return *std::min_element(data_.begin(), data_.end()); }
    double max_abs() const {
      double m = 0.0;
      for (double v : data_) m = std::max(m, std::abs(v));
      return m;
    }

  private:
    std::size_t d_ = 0;
    std::vector<double> data_;
  };

  struct SchemeResiduals {
    double pq = 0.0;              // max(||PQ - |X|I||, ||QP - |X|I||)
    double common_eigvec = 0.0;   // max ||u B_j - P_lj u|| over rows u of P
    double column_zero = 0.0;     // max |Q_i0 - 1|
    double krein_symmetry = 0.0;  // max |q^h_ij - q^h_ji|
    double krein_identity = 0.0;  // max |q^h_i0 - delta_hi|
    double krein_balance = 0.0;   // max |m_h q^h_ij - m_j q^j_ih|
  };

  /// Eigenmatrices and parameters of a validated scheme.
  ///
  /// Row 0 of P is the valency row; rows 1..d are sorted by P_i1
  /// descending (ties broken lexicographically on the remaining columns).
  struct SchemeEigendata {
    std::size_t x_size = 0;
    std::size_t d = 0;
    RealMatrix P;
    RealMatrix Q;
    std::vector<double> k;
    std::vector<double> m;
    IntersectionTensor p;
    KreinTensor q;
    std::uint64_t seed = 0;  // seed that produced the accepted combination
    int attempts = 0;
    SchemeResiduals residuals;
  };

  inline constexpr std::uint64_t default_seed = 42;
  inline constexpr int max_collision_retries = 5;

  /// Krein parameters from E_i o E_j = |X|^{-1} sum_h q^h_ij E_h.
  ///
  /// Expanding both sides in the adjacency basis gives, for each (i, j),
  /// the linear system sum_h Q_kh q^h_ij = Q_ki Q_kj over k.
  inline KreinTensor krein_parameters(RealMatrix const& Q,
                                      Tolerance const& tol = {}) {
    auto const n = Q.order();
    KreinTensor q(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
      RealMatrix w(n);
      for (std::size_t kk = 0; kk < n; ++kk)
        for (std::size_t j = 0; j < n; ++j) w(kk, j) = Q(kk, i) * Q(kk, j);
      auto const v = solve(Q, w, tol);
      for (std::size_t h = 0; h < n; ++h)
        for (std::size_t j = 0; j < n; ++j) q(h, i, j) = v(h, j);
    }
    return q;
  }

  namespace detail {

    struct RawEigen {
      RealMatrix P;
      double common_eigvec = 0.0;
    };

    // Rows of P from the left eigenvectors of sum c_j B_j, or nullopt when
    // the combination does not separate the eigenspaces.
    inline std::optional<RawEigen> try_eigenmatrix(ValidatedScheme const& s,
                                                   std::vector<RealMatrix> const& b,
                                                   std::vector<double> const& c,
                                                   Tolerance const& tol) {
      auto const n = s.d + 1;
      RealMatrix mix(n);
      for (std::size_t j = 0; j < n; ++j) mix = mix + c[j] * b[j];

      // diag(sqrt k) symmetrizes every B_j since k_h p^h_ij = k_j p^j_ih
      std::vector<double> root_k(n);
      for (std::size_t h = 0; h < n; ++h)
        root_k[h] = std::sqrt(static_cast<double>(s.k[h]));
      RealMatrix sym(n);
      for (std::size_t h = 0; h < n; ++h)
        for (std::size_t j = 0; j < n; ++j)
          sym(h, j) = root_k[h] * mix(h, j) / root_k[j];
      for (std::size_t h = 0; h < n; ++h)
        for (std::size_t j = h + 1; j < n; ++j)
          sym(h, j) = sym(j, h) = 0.5 * (sym(h, j) + sym(j, h));

      auto const pairs = sym_eigen(sym, tol);
      double const scale = std::max(1.0, max_abs(sym));
      for (std::size_t l = 1; l < n; ++l)
        if (pairs[l - 1].value - pairs[l].value <= tol.eig_tol * scale)
          return std::nullopt;

      RawEigen out{RealMatrix(n), 0.0};
      for (std::size_t l = 0; l < n; ++l) {
        std::vector<double> u(n);
        for (std::size_t h = 0; h < n; ++h) u[h] = root_k[h] * pairs[l].vector[h];
        if (std::abs(u[0]) <= tol.zero_tol) return std::nullopt;
        for (std::size_t h = 0; h < n; ++h) out.P(l, h) = u[h] / u[0];
      }

      // each row must be a left eigenvector of every B_i, eigenvalue P_li
      double bscale = 1.0;
      for (auto const& bi : b) bscale = std::max(bscale, max_abs(bi));
      for (std::size_t l = 0; l < n; ++l) {
        double rowscale = 0.0;
        for (std::size_t h = 0; h < n; ++h)
          rowscale = std::max(rowscale, std::abs(out.P(l, h)));
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = 0; j < n; ++j) {
            double acc = 0.0;
            for (std::size_t h = 0; h < n; ++h) acc += out.P(l, h) * b[i](h, j);
            double const r =
              std::abs(acc - out.P(l, i) * out.P(l, j)) / (bscale * rowscale);
            out.common_eigvec = std::max(out.common_eigvec, r);
          }
        }
      }
      if (out.common_eigvec > tol.residual_tol) return std::nullopt;
      return out;
    }

    inline RealMatrix order_rows(RealMatrix const& raw,
                                 std::vector<std::int64_t> const& k,
                                 Tolerance const& tol) {
      auto const n = raw.order();
      std::size_t perron = 0;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t l = 0; l < n; ++l) {
        double dev = 0.0;
        for (std::size_t j = 0; j < n; ++j)
          dev = std::max(dev, std::abs(raw(l, j) - static_cast<double>(k[j])));
        if (dev < best) {
          best = dev;
          perron = l;
        }
      }
      double const scale = std::max(1.0, max_abs(raw));
      if (best > tol.residual_tol * scale) {
        throw IdentityViolation("eigendata: no row of P matches the valencies",
                                best);
      }
      std::vector<std::size_t> rest;
      for (std::size_t l = 0; l < n; ++l)
        if (l != perron) rest.push_back(l);
      double const tie = tol.eig_tol * scale;
      std::stable_sort(rest.begin(), rest.end(), [&](std::size_t x, std::size_t y) {
        for (std::size_t j = 1; j < n; ++j) {
          double const diff = raw(x, j) - raw(y, j);
          if (std::abs(diff) > tie) return diff > 0.0;
        }
        return false;
      });
      RealMatrix P(n);
      for (std::size_t j = 0; j < n; ++j) P(0, j) = static_cast<double>(k[j]);
      for (std::size_t r = 0; r < rest.size(); ++r)
        for (std::size_t j = 0; j < n; ++j) P(r + 1, j) = raw(rest[r], j);
      return P;
    }

  } // namespace detail

  /// Eigenmatrices P, Q, multiplicities and Krein parameters.
  ///
  /// The rows of P are the common left eigenvectors of B_0..B_d, found by
  /// diagonalizing a random combination sum c_j B_j with c_j uniform in
  /// [1, 2]. A combination that does not separate the eigenspaces is
  /// retried with seed + attempt, at most five times.
  inline SchemeEigendata eigendata(ValidatedScheme const& s,
                                   Tolerance const& tol = {},
                                   std::uint64_t seed = default_seed) {
    auto const n = s.d + 1;
    auto const x = static_cast<double>(s.x_size);
    std::vector<RealMatrix> b;
    for (std::size_t i = 0; i < n; ++i) b.push_back(intersection_matrix(s, i));

    SchemeEigendata ed;
    ed.x_size = s.x_size;
    ed.d = s.d;
    ed.p = s.p;
    std::optional<detail::RawEigen> raw;
    for (int attempt = 0; attempt <= max_collision_retries && !raw; ++attempt) {
      ed.seed = seed + static_cast<std::uint64_t>(attempt);
      ed.attempts = attempt + 1;
      std::mt19937_64 rng(ed.seed);
      std::uniform_real_distribution<double> coef(1.0, 2.0);
      std::vector<double> c(n);
      for (auto& v : c) v = coef(rng);
      raw = detail::try_eigenmatrix(s, b, c, tol);
    }
    if (!raw) {
      throw EigenvalueCollisionError(
        "eigendata: random combinations failed to separate the eigenspaces "
        "after " + std::to_string(max_collision_retries) + " retries");
    }

    auto& r = ed.residuals;
    r.common_eigvec = raw->common_eigvec;
    ed.P = detail::order_rows(raw->P, s.k, tol);
    RealMatrix const xi = x * RealMatrix::identity(n);
    ed.Q = solve(ed.P, xi, tol);
    r.pq = std::max(max_abs_diff(ed.P * ed.Q, xi), max_abs_diff(ed.Q * ed.P, xi));
    for (std::size_t i = 0; i < n; ++i) {
      ed.k.push_back(static_cast<double>(s.k[i]));
      ed.m.push_back(ed.Q(0, i));
      r.column_zero = std::max(r.column_zero, std::abs(ed.Q(i, 0) - 1.0));
    }
    if (r.pq > tol.residual_tol * x || r.column_zero > tol.residual_tol * x) {
      throw IdentityViolation("eigendata: PQ = QP = |X|I fails",
                              std::max(r.pq, r.column_zero));
    }

    ed.q = krein_parameters(ed.Q, tol);
    double const qscale = std::max(1.0, ed.q.max_abs());
    double mq_scale = 1.0;
    for (std::size_t h = 0; h < n; ++h) mq_scale = std::max(mq_scale, ed.m[h]);
    mq_scale *= qscale;
    for (std::size_t h = 0; h < n; ++h) {
      for (std::size_t i = 0; i < n; ++i) {
        r.krein_identity = std::max(
          r.krein_identity, std::abs(ed.q(h, i, 0) - (h == i ? 1.0 : 0.0)));
        for (std::size_t j = 0; j < n; ++j) {
          r.krein_symmetry =
            std::max(r.krein_symmetry, std::abs(ed.q(h, i, j) - ed.q(h, j, i)));
          r.krein_balance =
            std::max(r.krein_balance,
                     std::abs(ed.m[h] * ed.q(h, i, j) - ed.m[j] * ed.q(j, i, h)));
        }
      }
    }
    if (ed.q.min() < -tol.residual_tol * qscale) {
      throw IdentityViolation("eigendata: negative Krein parameter", -ed.q.min());
    }
    if (r.krein_identity > tol.residual_tol * qscale ||
        r.krein_symmetry > tol.residual_tol * qscale ||
        r.krein_balance > tol.residual_tol * mq_scale) {
      throw IdentityViolation(
        "eigendata: Krein parameter identities fail",
        std::max({r.krein_identity, r.krein_symmetry, r.krein_balance}));
    }
    return ed;
  }

  /// Entries of the Krein tensor whose magnitude is below this are noise.
  inline double krein_noise_floor(SchemeEigendata const& ed,
                                  Tolerance const& tol = {}) {
    return tol.residual_tol * std::max(1.0, ed.q.max_abs());
  }

  /// B*_i: (h, j)-entry q^h_ij, with entries below the noise floor set to
  /// zero. Checks nonnegativity and that diag(sqrt m) symmetrizes it.
  inline RealMatrix krein_matrix(SchemeEigendata const& ed, std::size_t i,
                                 Tolerance const& tol = {}) {
    if (i > ed.d) throw DimensionError("krein_matrix: index out of range");
    auto const n = ed.d + 1;
    double const floor = krein_noise_floor(ed, tol);
    RealMatrix b(n);
    for (std::size_t h = 0; h < n; ++h) {
      for (std::size_t j = 0; j < n; ++j) {
        double const v = ed.q(h, i, j);
        if (v < -floor) throw IdentityViolation("krein_matrix: negative entry", -v);
        b(h, j) = std::abs(v) <= floor ? 0.0 : v;
      }
    }
    double worst = 0.0;
    for (std::size_t h = 0; h < n; ++h)
      for (std::size_t j = 0; j < n; ++j)
        worst = std::max(worst,
                         std::abs(std::sqrt(ed.m[h]) * b(h, j) / std::sqrt(ed.m[j]) -
                                  std::sqrt(ed.m[j]) * b(j, h) / std::sqrt(ed.m[h])));
    if (worst > tol.residual_tol * std::max(1.0, max_abs(b))) {
      throw IdentityViolation("krein_matrix: diag(sqrt m) does not symmetrize",
                              worst);
    }
    return b;
  }

  /// rho(E_i): (h, j)-entry |X|^{-1} Q_hi P_ij.
  inline RealMatrix rho_idempotent(SchemeEigendata const& ed, std::size_t i) {
    if (i > ed.d) throw DimensionError("rho_idempotent: index out of range");
    auto const n = ed.d + 1;
    auto const x = static_cast<double>(ed.x_size);
    RealMatrix e(n);
    for (std::size_t h = 0; h < n; ++h)
      for (std::size_t j = 0; j < n; ++j) e(h, j) = ed.Q(h, i) * ed.P(i, j) / x;
    return e;
  }

  /// rho*(E*_i): (h, j)-entry |X|^{-1} P_hi Q_ij.
  inline RealMatrix rho_dual_idempotent(SchemeEigendata const& ed, std::size_t i) {
    if (i > ed.d) throw DimensionError("rho_dual_idempotent: index out of range");
    auto const n = ed.d + 1;
    auto const x = static_cast<double>(ed.x_size);
    RealMatrix e(n);
    for (std::size_t h = 0; h < n; ++h)
      for (std::size_t j = 0; j < n; ++j) e(h, j) = ed.P(h, i) * ed.Q(i, j) / x;
    return e;
  }

  struct PolynomialStructure {
    std::size_t generator = 0;
    Ordering ordering; // starts at 0, ordering[1] == generator
    std::size_t last = 0;
  };

  namespace detail {

    inline std::optional<PolynomialStructure>
    path_structure(RealMatrix const& b, std::size_t i, Tolerance const& tol) {
      auto path = bidirected_path_endpoints(gamma(b, tol));
      if (!path) return std::nullopt;
      if (path->back() == 0) std::reverse(path->begin(), path->end());
      if (path->front() != 0 || path->size() < 2 || (*path)[1] != i)
        return std::nullopt;
      return PolynomialStructure{i, *path, path->back()};
    }

  } // namespace detail

  /// Every generator i for which Gamma(B_i) is a bidirected path from 0.
  inline std::vector<PolynomialStructure>
  detect_p_polynomial(ValidatedScheme const& s, Tolerance const& tol = {}) {
    std::vector<PolynomialStructure> out;
    for (std::size_t i = 1; i <= s.d; ++i)
      if (auto st = detail::path_structure(intersection_matrix(s, i), i, tol))
        out.push_back(std::move(*st));
    return out;
  }

  /// Every generator i for which Gamma(B*_i) is a bidirected path from 0.
  inline std::vector<PolynomialStructure>
  detect_q_polynomial(SchemeEigendata const& ed, Tolerance const& tol = {}) {
    std::vector<PolynomialStructure> out;
    for (std::size_t i = 1; i <= ed.d; ++i)
      if (auto st = detail::path_structure(krein_matrix(ed, i, tol), i, tol))
        out.push_back(std::move(*st));
    return out;
  }

  /// Both sides of the polynomial-structure criterion for one (generator,
  /// last) pair, plus the path/profile check on the representing matrix.
  struct KnReport {
    bool dual = false;          // false: kn-p (P-polynomial), true: kn-q
    std::size_t generator = 0;
    std::size_t last = 0;
    bool side_i = false;        // structure detected with this generator/last
    bool side_ii = false;       // distinct theta and the product formula holds
    bool distinct = false;
    std::vector<double> theta;    // P_ib (kn-p) or Q_ie (kn-q)
    std::vector<double> expected; // f_0(theta_0) / f_i(theta_i)
    std::vector<double> actual;   // Q_ci (kn-p) or P_fi (kn-q)
    double residual = 0.0;        // max |actual - expected| / max(1, |expected|)
    double threshold = 0.0;
    TheoremReport main_sym;

    bool agreement() const noexcept { return side_i == side_ii; }
  };

  namespace detail {

    inline void check_kn_indices(std::size_t d, std::size_t a, std::size_t b,
                                 char const* who) {
      if (a < 1 || a > d || b < 1 || b > d) {
        throw DimensionError(std::string(who) + ": indices must lie in 1..d");
      }
    }

    inline void product_formula_side(KnReport& rep, Tolerance const& tol) {
      auto const n = rep.theta.size();
      double spread = 1.0;
      for (double t : rep.theta) spread = std::max(spread, std::abs(t));
      rep.distinct = true;
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
          if (std::abs(rep.theta[i] - rep.theta[j]) <= tol.eig_tol * spread)
            rep.distinct = false;
      rep.threshold = tol.residual_tol;
      if (!rep.distinct) return;
      double const f0 = f_eval(rep.theta, 0, tol);
      for (std::size_t i = 0; i < n; ++i) {
        double const e = f0 / f_eval(rep.theta, i, tol);
        rep.expected.push_back(e);
        rep.residual = std::max(
          rep.residual, std::abs(rep.actual[i] - e) / std::max(1.0, std::abs(e)));
      }
      rep.side_ii = rep.residual <= rep.threshold;
    }

    inline bool has_structure(std::vector<PolynomialStructure> const& all,
                              std::size_t generator, std::size_t last) {
      return std::any_of(all.begin(), all.end(), [&](auto const& st) {
        return st.generator == generator && st.last == last;
      });
    }

  } // namespace detail

  /// P-polynomial criterion: the scheme is P-polynomial relative to A_b
  /// with last matrix A_c iff theta_i = P_ib are distinct and
  /// Q_ci = f_0(theta_0) / f_i(theta_i) for all i.
  inline KnReport kn_p_check(ValidatedScheme const& s, SchemeEigendata const& ed,
                             std::size_t b, std::size_t c,
                             Tolerance const& tol = {}) {
    detail::check_kn_indices(s.d, b, c, "kn_p_check");
    KnReport rep;
    rep.generator = b;
    rep.last = c;
    rep.side_i = detail::has_structure(detect_p_polynomial(s, tol), b, c);
    for (std::size_t i = 0; i <= s.d; ++i) {
      rep.theta.push_back(ed.P(i, b));
      rep.actual.push_back(ed.Q(c, i));
    }
    detail::product_formula_side(rep, tol);
    rep.main_sym = check_main_sym(intersection_matrix(s, b), c, 0, tol);
    return rep;
  }

  /// Q-polynomial criterion: Q-polynomial relative to E_e with last
  /// idempotent E_f iff theta*_i = Q_ie are distinct and
  /// P_fi = f*_0(theta*_0) / f*_i(theta*_i) for all i.
  inline KnReport kn_q_check(SchemeEigendata const& ed, std::size_t e,
                             std::size_t f, Tolerance const& tol = {}) {
    detail::check_kn_indices(ed.d, e, f, "kn_q_check");
    KnReport rep;
    rep.dual = true;
    rep.generator = e;
    rep.last = f;
    rep.side_i = detail::has_structure(detect_q_polynomial(ed, tol), e, f);
    for (std::size_t i = 0; i <= ed.d; ++i) {
      rep.theta.push_back(ed.Q(i, e));
      rep.actual.push_back(ed.P(f, i));
    }
    detail::product_formula_side(rep, tol);
    rep.main_sym = check_main_sym(krein_matrix(ed, e, tol), f, 0, tol);
    return rep;
  }

} // namespace spectralpath
