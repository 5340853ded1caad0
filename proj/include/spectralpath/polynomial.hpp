#pragma once

//
// ... Standard header files
//
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

//
// ... spectralpath header files
//
#include <spectralpath/matrix.hpp>

namespace spectralpath {

  /// Coefficients c_0..c_n (ascending powers) of det(lambda I - A), computed
  /// with the Faddeev-LeVerrier recurrence. Adequate for n up to a few
  /// dozen with moderately scaled entries.
  inline std::vector<double> characteristic_polynomial(RealMatrix const& a) {
    auto const n = a.order();
    std::vector<double> c(n + 1, 0.0);
    c[n] = 1.0;
    RealMatrix m(n);
    for (std::size_t k = 1; k <= n; ++k) {
      m = multiply(a, m);
      for (std::size_t i = 0; i < n; ++i) m(i, i) += c[n - k + 1];
      c[n - k] = -trace(multiply(a, m)) / static_cast<double>(k);
    }
    return c;
  }

  inline double poly_eval(std::vector<double> const& c, double x) {
    double r = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) r = r * x + c[k];
    return r;
  }

  inline std::vector<double> poly_derivative(std::vector<double> const& c) {
    if (c.size() <= 1) return {0.0};
    std::vector<double> d(c.size() - 1);
    for (std::size_t k = 1; k < c.size(); ++k)
      d[k - 1] = static_cast<double>(k) * c[k];
    return d;
  }

  struct RealRoot {
    double value;
    int multiplicity;
  };

  namespace detail {

    // Typical root magnitude: max_k |c_k / c_m|^{1/(m-k)}.
    inline double root_scale(std::vector<double> const& c) {
      auto const m = c.size() - 1;
      double r = 0.0;
      for (std::size_t k = 0; k < m; ++k) {
        if (c[k] == 0.0) continue;
        r = std::max(r, std::pow(std::abs(c[k] / c[m]),
                                 1.0 / static_cast<double>(m - k)));
      }
      return r;
    }

    inline double eval_scale(std::vector<double> const& c, double rho) {
      double s = 0.0;
      double p = 1.0;
      for (double ck : c) {
        s += std::abs(ck) * p;
        p *= rho;
      }
      return s;
    }

    inline double bisect(std::vector<double> const& c, double lo, double hi) {
      double flo = poly_eval(c, lo);
      for (int it = 0; it < 300; ++it) {
        double const mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        double const fm = poly_eval(c, mid);
        if (fm == 0.0) return mid;
        if ((fm < 0) == (flo < 0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      return 0.5 * (lo + hi);
    }

    inline std::vector<RealRoot> real_roots_raw(std::vector<double> c,
                                                double vanish_tol) {
      while (c.size() > 1 && c.back() == 0.0) c.pop_back();
      auto const m = c.size() - 1;
      if (m == 0) return {};
      double const rho = root_scale(c);
      if (rho == 0.0) return {{0.0, static_cast<int>(m)}};
      if (m == 1) return {{-c[0] / c[1], 1}};

      auto const crit = real_roots_raw(poly_derivative(c), vanish_tol);
      std::vector<RealRoot> roots;
      std::vector<bool> crit_is_root(crit.size(), false);
      for (std::size_t k = 0; k < crit.size(); ++k) {
        double const xi = crit[k].value;
        double const tau =
          vanish_tol * eval_scale(c, std::max(std::abs(xi), rho));
        if (std::abs(poly_eval(c, xi)) <= tau) {
          crit_is_root[k] = true;
          roots.push_back({xi, crit[k].multiplicity + 1});
        }
      }

      double const bound = 2.0 * rho + 1e-300;
      std::vector<double> pts{-bound};
      std::vector<bool> pt_root{false};
      for (std::size_t k = 0; k < crit.size(); ++k) {
        pts.push_back(crit[k].value);
        pt_root.push_back(crit_is_root[k]);
      }
      pts.push_back(bound);
      pt_root.push_back(false);

      for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
        if (pt_root[k] || pt_root[k + 1]) continue;
        double const a = pts[k];
        double const b = pts[k + 1];
        if (!(a < b)) continue;
        double const fa = poly_eval(c, a);
        double const fb = poly_eval(c, b);
        if ((fa < 0) != (fb < 0)) roots.push_back({bisect(c, a, b), 1});
      }
      std::sort(roots.begin(), roots.end(),
                [](RealRoot const& x, RealRoot const& y) {
                  return x.value < y.value;
                });
      return roots;
    }

  } // namespace detail

  /// Real roots of sum_k c_k x^k with multiplicities, ascending.
  ///
  /// Roots of the derivative split the line into monotone pieces; each
  /// sign change is bisected. A critical point where |p| is below
  /// vanish_tol times the evaluation scale is taken as a multiple root.
  /// Roots closer than merge_tol times the root scale are merged. Complex
  /// roots show up as a multiplicity total below the degree.
  inline std::vector<RealRoot> real_roots(std::vector<double> const& c,
                                          double vanish_tol, double merge_tol) {
    auto roots = detail::real_roots_raw(c, vanish_tol);
    if (roots.empty()) return roots;
    double const rho = std::max(detail::root_scale(c), 1e-300);
    std::vector<RealRoot> merged{roots.front()};
    for (std::size_t k = 1; k < roots.size(); ++k) {
      auto& last = merged.back();
      if (roots[k].value - last.value <= merge_tol * rho) {
        double const w1 = last.multiplicity;
        double const w2 = roots[k].multiplicity;
        last.value = (w1 * last.value + w2 * roots[k].value) / (w1 + w2);
        last.multiplicity += roots[k].multiplicity;
      } else {
        merged.push_back(roots[k]);
      }
    }
    return merged;
  }

} // namespace spectralpath
