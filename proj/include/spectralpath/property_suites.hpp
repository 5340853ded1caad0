#pragma once

//
// ... Standard header files
//
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

//
// ... spectralpath header files
//
#include <spectralpath/digraph.hpp>
#include <spectralpath/matrix.hpp>
#include <spectralpath/scheme.hpp>
#include <spectralpath/scheme_eigen.hpp>
#include <spectralpath/spectra.hpp>
#include <spectralpath/symmetrize.hpp>
#include <spectralpath/theorems.hpp>
#include <spectralpath/tolerance.hpp>

namespace spectralpath {

  struct SuiteConfig {
    std::size_t d_max = 8;
    std::size_t trials = 100;
    std::uint64_t seed = 42;
    Tolerance tol{};
    bool force_bug = false; // inject a known fault (harness sanity check)
  };

  struct SuiteResult {
    std::string name;
    std::size_t cases = 0;
    std::size_t failures = 0;
    double worst_ratio = 0.0; // max residual / tolerance over all cases
    std::string first_failure;

    bool passed() const noexcept { return failures == 0; }

    void record(bool ok, double ratio, std::string const& what) {
      ++cases;
      worst_ratio = std::max(worst_ratio, ratio);
      if (!ok) {
        if (failures == 0) first_failure = what;
        ++failures;
      }
    }
  };

  namespace detail {

    inline std::size_t trial_order(SuiteConfig const& c, std::size_t trial,
                                   std::size_t d_min = 0) {
      if (c.d_max < d_min) return d_min;
      return d_min + trial % (c.d_max - d_min + 1);
    }

    inline std::string case_name(char const* kind, std::size_t d,
                                 std::uint64_t seed) {
      return std::string(kind) + " d=" + std::to_string(d) +
             " seed=" + std::to_string(seed);
    }

    inline Ordering random_permutation(std::size_t n, std::uint64_t seed) {
      Ordering perm(n);
      std::iota(perm.begin(), perm.end(), std::size_t{0});
      std::mt19937_64 rng(seed);
      std::shuffle(perm.begin(), perm.end(), rng);
      return perm;
    }

    // Boolean pattern of A^r, computed without floating-point products.
    inline std::vector<std::vector<bool>> power_pattern(RealMatrix const& a,
                                                        std::size_t r,
                                                        double zero_tol) {
      auto const n = a.order();
      std::vector<std::vector<bool>> p(n, std::vector<bool>(n, false));
      for (std::size_t i = 0; i < n; ++i) p[i][i] = true;
      for (std::size_t step = 0; step < r; ++step) {
        std::vector<std::vector<bool>> q(n, std::vector<bool>(n, false));
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t k = 0; k < n; ++k)
            if (p[i][k])
              for (std::size_t j = 0; j < n; ++j)
                if (std::abs(a(k, j)) > zero_tol) q[i][j] = true;
        p = std::move(q);
      }
      return p;
    }

  } // namespace detail

  /// Tridiagonal weights satisfy detailed balance, agree with the general
  /// symmetrizer up to scale, and transform correctly under permutation.
  inline SuiteResult symmetrizer_suite(SuiteConfig const& c) {
    SuiteResult out;
    out.name = "symmetrize";
    for (std::size_t trial = 0; trial < c.trials; ++trial) {
      auto const d = detail::trial_order(c, trial);
      auto const seed = c.seed + trial;
      auto const a = gen_instance(InstanceKind::tridiagonal, d, seed);
      auto const scale = std::max(1.0, max_abs(a));
      auto const sym = tridiagonal_symmetrizer(a, c.tol);
      double const balance = detailed_balance_residual(a, sym.kappa);
      out.record(balance <= 1e-9 * scale, balance / (1e-9 * scale),
                 detail::case_name("tridiagonal", d, seed) + ": detailed balance");

      auto const general = find_symmetrizer(a, c.tol);
      bool matches = std::holds_alternative<Symmetrizer>(general);
      double ratio_err = 0.0;
      if (matches) {
        auto const& w = std::get<Symmetrizer>(general).kappa;
        for (std::size_t i = 0; i < w.size(); ++i)
          ratio_err = std::max(ratio_err,
                               std::abs(w[i] / w[0] - sym.kappa[i] / sym.kappa[0]) /
                                 (sym.kappa[i] / sym.kappa[0]));
      }
      matches = matches && ratio_err <= c.tol.residual_tol;
      out.record(matches, ratio_err / c.tol.residual_tol,
                 detail::case_name("tridiagonal", d, seed) + ": general symmetrizer");

      auto const perm = detail::random_permutation(d + 1, seed ^ 0x9e3779b97f4a7c15ULL);
      auto const b = permute(a, perm);
      std::vector<double> kperm(d + 1);
      for (std::size_t i = 0; i <= d; ++i) kperm[i] = sym.kappa[perm[i]];
      double const pres = detailed_balance_residual(b, kperm);
      bool const found = std::holds_alternative<Symmetrizer>(find_symmetrizer(b, c.tol));
      out.record(found && pres <= 1e-9 * scale, pres / (1e-9 * scale),
                 detail::case_name("tridiagonal", d, seed) + ": permuted");
    }
    return out;
  }

  /// Resolution of identity, orthogonality, reconstruction and
  /// f_i(A) = f_i(theta_i) E_i on multiplicity-free tridiagonal matrices.
  inline SuiteResult spectral_identity_suite(SuiteConfig const& c) {
    SuiteResult out;
    out.name = "spectral-identities";
    for (std::size_t trial = 0; trial < c.trials; ++trial) {
      auto const d = detail::trial_order(c, trial);
      auto const seed = c.seed + trial;
      auto const name = detail::case_name("tridiagonal", d, seed);
      auto const a = gen_instance(InstanceKind::tridiagonal, d, seed);
      auto const cls = classify(a, c.tol);
      if (cls.tag != SpectralTag::multiplicity_free) {
        out.record(false, 0.0, name + ": not multiplicity-free");
        continue;
      }
      auto const& sp = *cls.spectrum;
      auto theta = sp.theta;
      if (c.force_bug) {
        for (auto& t : theta) t += 1.0;
      }
      auto const r = spectral_identity_residuals(a, theta, sp.idempotents);
      double const scale = std::max(1.0, max_abs(a));
      out.record(r.sum_minus_identity <= 1e-8, r.sum_minus_identity / 1e-8,
                 name + ": sum E_i = I");
      out.record(r.orthogonality <= 1e-8, r.orthogonality / 1e-8,
                 name + ": E_i E_j = delta E_i");
      out.record(r.reconstruction <= 1e-8 * scale, r.reconstruction / (1e-8 * scale),
                 name + ": A = sum theta_i E_i");
      for (std::size_t i = 0; i <= d; ++i) {
        double const fi = f_eval(sp.theta, i, c.tol);
        double const res = max_abs_diff(f_matrix(a, sp.theta, i), fi * sp.idempotents[i]);
        double const lim = 1e-6 * std::abs(fi);
        out.record(res <= lim, res / lim, name + ": f_i(A) = f_i(theta_i) E_i");
      }
    }
    return out;
  }

  /// Path/profile equivalence on permuted irreducible tridiagonal
  /// matrices; exactly one unordered endpoint pair is true.
  inline SuiteResult main_sym_suite(SuiteConfig const& c) {
    SuiteResult out;
    out.name = "mainsym";
    for (std::size_t trial = 0; trial < c.trials; ++trial) {
      auto const d = detail::trial_order(c, trial);
      auto const seed = c.seed + trial;
      auto const name = detail::case_name("permuted_path", d, seed);
      auto const m = analyze_matrix(gen_instance(InstanceKind::permuted_path, d, seed), c.tol);
      std::size_t true_pairs = 0;
      for (std::size_t s = 0; s <= d; ++s) {
        for (std::size_t t = s; t <= d; ++t) {
          auto const rep = check_main_sym(m, s, t, c.tol);
          double ratio = 0.0;
          if (rep.condition_ii.profile && rep.condition_ii.profile->threshold > 0.0)
            ratio = rep.condition_i.holds
                      ? rep.condition_ii.profile->spread / rep.condition_ii.profile->threshold
                      : 0.0;
          out.record(rep.equivalent(), ratio,
                     name + " (" + std::to_string(s) + "," + std::to_string(t) +
                       "): " + rep.diagnostic());
          if (rep.condition_i.holds) ++true_pairs;
        }
      }
      out.record(true_pairs == 1, 0.0,
                 name + ": " + std::to_string(true_pairs) + " true endpoint pairs");
    }
    return out;
  }

  /// Distance/profile equivalence on diagonalizable nonnegative matrices,
  /// with the directed distance cross-checked against power patterns.
  inline SuiteResult main_suite(SuiteConfig const& c) {
    SuiteResult out;
    out.name = "main";
    for (std::size_t trial = 0; trial < c.trials; ++trial) {
      auto const d = std::min<std::size_t>(detail::trial_order(c, trial), 7);
      auto const seed = c.seed + trial;
      auto const name = detail::case_name("general_nonneg", d, seed);
      auto const m = analyze_matrix(gen_instance(InstanceKind::general_nonneg, d, seed, 0.4), c.tol);
      if (!m.spectral || !m.spectral->diagonalizable()) continue;
      std::vector<std::vector<std::vector<bool>>> powers;
      for (std::size_t r = 0; r <= d; ++r)
        powers.push_back(detail::power_pattern(m.a, r, c.tol.zero_tol));
      for (std::size_t s = 0; s <= d; ++s) {
        for (std::size_t t = 0; t <= d; ++t) {
          auto const rep = check_main(m, s, t, c.tol);
          out.record(rep.equivalent(), 0.0,
                     name + " (" + std::to_string(s) + "," + std::to_string(t) +
                       "): " + rep.diagnostic());
          bool first_at_d = powers[d][s][t];
          for (std::size_t r = 0; r < d; ++r) first_at_d = first_at_d && !powers[r][s][t];
          bool const at_d = rep.condition_i.distance == d;
          out.record(first_at_d == at_d, 0.0,
                     name + " (" + std::to_string(s) + "," + std::to_string(t) +
                       "): distance disagrees with power pattern");
        }
      }
    }
    return out;
  }

  /// Power pattern and independence of powers for Hessenberg matrices.
  inline SuiteResult hessenberg_suite(SuiteConfig const& c) {
    SuiteResult out;
    out.name = "hessenberg";
    constexpr double cut = 1e-12;
    for (std::size_t trial = 0; trial < c.trials; ++trial) {
      auto const d = std::min<std::size_t>(detail::trial_order(c, trial), 8);
      auto const seed = c.seed + trial;
      auto const name = detail::case_name("hessenberg", d, seed);
      auto const a = gen_instance(InstanceKind::hessenberg, d, seed);
      auto const n = d + 1;
      RealMatrix pw = RealMatrix::identity(n);
      std::vector<double> stacked;
      bool pattern = true;
      for (std::size_t r = 0; r <= d; ++r) {
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = 0; j < n; ++j) {
            if (i >= j && i - j == r) pattern = pattern && std::abs(pw(i, j)) > cut;
            if (i > j && i - j > r) pattern = pattern && std::abs(pw(i, j)) < cut;
          }
        }
        double const peak = std::max(max_abs(pw), 1e-300);
        for (double v : pw.data()) stacked.push_back(v / peak);
        pw = multiply(pw, a);
      }
      out.record(pattern, 0.0, name + ": power pattern");
      // rows: the d+1 vectorized powers, each scaled to unit max entry
      auto const rank = numeric_rank(stacked, n, n * n, c.tol.eig_tol);
      out.record(rank == n, 0.0, name + ": powers rank " + std::to_string(rank));
    }
    return out;
  }

  /// Eigendata invariants and polynomial-structure consistency on the
  /// built-in schemes.
  inline SuiteResult scheme_suite(SuiteConfig const& c) {
    SuiteResult out;
    out.name = "schemes";
    std::vector<std::pair<std::string, AssociationScheme>> schemes;
    schemes.emplace_back("complete(2)", complete_scheme(2));
    schemes.emplace_back("complete(5)", complete_scheme(5));
    auto const top = std::clamp<std::size_t>(c.d_max, 1, 6);
    for (std::size_t n = 1; n <= top; ++n)
      schemes.emplace_back("hypercube(" + std::to_string(n) + ")", hypercube_scheme(n));

    for (auto const& [name, raw] : schemes) {
      auto const v = validate_scheme(raw);
      auto const ed = eigendata(v, c.tol, c.seed);
      double const qfloor = krein_noise_floor(ed, c.tol);
      out.record(ed.q.min() >= -qfloor, -ed.q.min() / qfloor, name + ": Krein nonnegative");
      auto const n = v.d + 1;
      for (std::size_t i = 0; i < n; ++i) {
        RealMatrix const b = intersection_matrix(v, i);
        std::vector<double> rk(n);
        for (std::size_t h = 0; h < n; ++h) rk[h] = std::sqrt(ed.k[h]);
        double worst = 0.0;
        for (std::size_t h = 0; h < n; ++h)
          for (std::size_t j = 0; j < n; ++j)
            worst = std::max(worst, std::abs(rk[h] * b(h, j) / rk[j] -
                                             rk[j] * b(j, h) / rk[h]));
        out.record(worst <= c.tol.residual_tol, worst / c.tol.residual_tol,
                   name + ": diag(sqrt k) symmetrizes B_" + std::to_string(i));
      }
      for (auto const& st : detect_p_polynomial(v, c.tol)) {
        auto const rep = kn_p_check(v, ed, st.generator, st.last, c.tol);
        out.record(rep.side_i && rep.side_ii && rep.main_sym.equivalent(),
                   rep.residual / rep.threshold,
                   name + ": kn-p at detected structure");
        auto const tri = permute(intersection_matrix(v, st.generator),
                                 st.ordering);
        out.record(is_irreducible_tridiagonal(tri, c.tol), 0.0,
                   name + ": reordered B_i tridiagonal");
      }
      for (auto const& st : detect_q_polynomial(ed, c.tol)) {
        auto const rep = kn_q_check(ed, st.generator, st.last, c.tol);
        out.record(rep.side_i && rep.side_ii && rep.main_sym.equivalent(),
                   rep.residual / rep.threshold,
                   name + ": kn-q at detected structure");
      }
      for (std::size_t b = 1; b <= v.d; ++b) {
        for (std::size_t last = 1; last <= v.d; ++last) {
          auto const p = kn_p_check(v, ed, b, last, c.tol);
          auto const q = kn_q_check(ed, b, last, c.tol);
          out.record(p.agreement() && q.agreement(), 0.0,
                     name + ": kn agreement at (" + std::to_string(b) + "," +
                       std::to_string(last) + ")");
        }
      }
    }
    return out;
  }

  inline std::vector<SuiteResult> run_property_suites(SuiteConfig const& c) {
    return {symmetrizer_suite(c), spectral_identity_suite(c), main_sym_suite(c),
            main_suite(c), hessenberg_suite(c), scheme_suite(c)};
  }

} // namespace spectralpath
