#pragma once

//
// ... Standard header files
//
#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

//
// ... spectralpath header files
//
#include <spectralpath/digraph.hpp>
#include <spectralpath/errors.hpp>
#include <spectralpath/matrix.hpp>
#include <spectralpath/spectra.hpp>
#include <spectralpath/symmetrize.hpp>
#include <spectralpath/tolerance.hpp>

namespace spectralpath {

  enum class Theorem { main_sym, main };

  inline char const* to_string(Theorem t) {
    return t == Theorem::main_sym ? "mainsym" : "main";
  }

  /// Evidence for the combinatorial side: path shape or distance.
  struct PatternCondition {
    bool holds = false;
    std::optional<Ordering> path;              // bidirected path, if any
    std::optional<std::size_t> distance;       // directed distance s -> t
    std::optional<Ordering> hessenberg;        // when distance == d
    std::optional<SpectralTag> spectral_tag;   // diagonalizability evidence
  };

  /// Evidence for the spectral side.
  struct SpectralCondition {
    bool holds = false;
    std::optional<bool> symmetrizable;         // only evaluated for mainsym
    std::optional<NotSymmetrizable> witness;
    std::optional<SpectralTag> tag;
    std::optional<Profile> profile;
    double min_gap = 0.0;
    std::optional<std::string> numerical_failure;
  };

  struct TheoremReport {
    Theorem which;
    std::size_t s = 0;
    std::size_t t = 0;
    std::size_t d = 0;
    PatternCondition condition_i;
    SpectralCondition condition_ii;

    bool equivalent() const noexcept {
      return condition_i.holds == condition_ii.holds;
    }

    /// Human-readable explanation of a disagreement; empty when the two
    /// sides agree.
    std::string diagnostic() const {
      if (equivalent()) return {};
      std::ostringstream out;
      out.precision(17);
      out << "numerical disagreement: condition (i) "
          << (condition_i.holds ? "holds" : "fails") << ", condition (ii) "
          << (condition_ii.holds ? "holds" : "fails");
      if (condition_ii.numerical_failure)
        out << "; " << *condition_ii.numerical_failure;
      if (condition_ii.profile) {
        out << "; profile";
        for (double c : condition_ii.profile->values) out << ' ' << c;
        out << " (spread " << condition_ii.profile->spread << ", threshold "
            << condition_ii.profile->threshold << ")";
      }
      out << "; min eigenvalue gap " << condition_ii.min_gap;
      return out.str();
    }
  };

  /// Copy of a with entries in [-zero_tol, 0) clamped to zero; anything
  /// more negative is rejected.
  inline RealMatrix require_nonnegative(RealMatrix a, Tolerance const& tol = {}) {
    for (std::size_t i = 0; i < a.order(); ++i) {
      for (std::size_t j = 0; j < a.order(); ++j) {
        if (a(i, j) < -tol.zero_tol) throw NegativeEntryError(i, j, a(i, j));
        if (a(i, j) < 0.0) a(i, j) = 0.0;
      }
    }
    return a;
  }

  /// Everything about a matrix that does not depend on (s, t): the
  /// clamped matrix, its pattern graph, symmetrizer outcome and spectral
  /// classification. Build once, then query any number of pairs.
  struct MatrixAnalysis {
    RealMatrix a;
    Digraph graph;
    std::optional<Ordering> path;
    SymmetrizeResult symmetrizer;
    std::optional<SpectralClass> spectral;         // empty on numerical failure
    std::optional<std::string> numerical_failure;

    std::size_t d() const noexcept { return a.order() - 1; }
  };

  inline MatrixAnalysis analyze_matrix(RealMatrix const& input,
                                       Tolerance const& tol = {}) {
    auto a = require_nonnegative(input, tol);
    auto g = gamma(a, tol);
    auto path = bidirected_path_endpoints(g);
    auto sym = find_symmetrizer(a, tol);
    MatrixAnalysis out{std::move(a), std::move(g), std::move(path),
                       std::move(sym), std::nullopt, std::nullopt};
    try {
      out.spectral = classify(out.a, tol);
    } catch (Error const& e) {
      out.numerical_failure = e.what();
    }
    return out;
  }

  namespace detail {

    inline void check_indices(MatrixAnalysis const& m, std::size_t s,
                              std::size_t t) {
      if (s >= m.a.order() || t >= m.a.order()) {
        throw DimensionError("theorem check: vertex index out of range");
      }
    }

    // Classification plus profile; numerical failures become evidence.
    inline void spectral_side(MatrixAnalysis const& m, std::size_t s,
                              std::size_t t, Tolerance const& tol,
                              SpectralCondition& out) {
      if (!m.spectral) {
        out.numerical_failure = m.numerical_failure;
        return;
      }
      out.tag = m.spectral->tag;
      out.min_gap = m.spectral->min_gap;
      if (m.spectral->tag != SpectralTag::multiplicity_free) return;
      try {
        out.profile =
          entry_product_profile(*m.spectral->spectrum, max_abs(m.a), s, t, tol);
        out.holds = out.profile->common_value.has_value();
      } catch (Error const& e) {
        out.numerical_failure = e.what();
      }
    }

  } // namespace detail

  /// Checks both sides of the path/profile equivalence for a nonnegative
  /// matrix: (i) the pattern graph is a bidirected path with endpoints
  /// {s, t}; (ii) A is symmetrizable, multiplicity-free, and the profile at
  /// (s, t) is a nonzero constant.
  inline TheoremReport check_main_sym(MatrixAnalysis const& m, std::size_t s,
                                      std::size_t t, Tolerance const& tol = {}) {
    detail::check_indices(m, s, t);
    TheoremReport rep{Theorem::main_sym, s, t, m.d(), {}, {}};

    auto& ci = rep.condition_i;
    ci.path = m.path;
    ci.distance = directed_distance(m.graph, s, t);
    if (ci.path) {
      if (m.a.order() == 1) {
        ci.holds = s == t;
      } else {
        auto const x = ci.path->front();
        auto const y = ci.path->back();
        ci.holds = (s == x && t == y) || (s == y && t == x);
      }
    }

    auto& cii = rep.condition_ii;
    cii.symmetrizable = std::holds_alternative<Symmetrizer>(m.symmetrizer);
    if (!*cii.symmetrizable) {
      cii.witness = std::get<NotSymmetrizable>(m.symmetrizer);
      return rep;
    }
    detail::spectral_side(m, s, t, tol, cii);
    return rep;
  }

  inline TheoremReport check_main_sym(RealMatrix const& a, std::size_t s,
                                      std::size_t t, Tolerance const& tol = {}) {
    return check_main_sym(analyze_matrix(a, tol), s, t, tol);
  }

  /// Checks both sides of the distance/profile equivalence for a
  /// nonnegative matrix: (i) A is diagonalizable and the directed distance
  /// from s to t is d; (ii) A is multiplicity-free and the profile at
  /// (s, t) is a nonzero constant.
  inline TheoremReport check_main(MatrixAnalysis const& m, std::size_t s,
                                  std::size_t t, Tolerance const& tol = {}) {
    detail::check_indices(m, s, t);
    TheoremReport rep{Theorem::main, s, t, m.d(), {}, {}};

    auto& cii = rep.condition_ii;
    detail::spectral_side(m, s, t, tol, cii);

    auto& ci = rep.condition_i;
    ci.distance = directed_distance(m.graph, s, t);
    ci.spectral_tag = cii.tag;
    if (ci.distance == rep.d) ci.hessenberg = hessenberg_ordering(m.graph, s, t);
    bool const diagonalizable = m.spectral && m.spectral->diagonalizable();
    ci.holds = diagonalizable && ci.distance == rep.d;
    return rep;
  }

  inline TheoremReport check_main(RealMatrix const& a, std::size_t s,
                                  std::size_t t, Tolerance const& tol = {}) {
    return check_main(analyze_matrix(a, tol), s, t, tol);
  }

  inline TheoremReport check_theorem(Theorem which, RealMatrix const& a,
                                     std::size_t s, std::size_t t,
                                     Tolerance const& tol = {}) {
    return which == Theorem::main_sym ? check_main_sym(a, s, t, tol)
                                      : check_main(a, s, t, tol);
  }

  // ------------------------------------------------------------------
  // Instance generators
  // ------------------------------------------------------------------

  enum class InstanceKind { tridiagonal, permuted_path, hessenberg, general_nonneg };

  inline InstanceKind parse_instance_kind(std::string_view name) {
    if (name == "tridiagonal") return InstanceKind::tridiagonal;
    if (name == "permuted_path") return InstanceKind::permuted_path;
    if (name == "hessenberg") return InstanceKind::hessenberg;
    if (name == "general_nonneg") return InstanceKind::general_nonneg;
    throw PreconditionError("unknown instance kind '" + std::string(name) + "'");
  }

  inline constexpr double gen_low = 0.1;
  inline constexpr double gen_high = 2.0;

  /// Seeded random nonnegative matrix of order d+1.
  ///
  /// Nonzero off-pattern entries are uniform in [0.1, 2]; tridiagonal
  /// diagonals are uniform in [0, 2]. density applies to the Bernoulli
  /// masks of hessenberg (upper triangle incl. diagonal) and general_nonneg.
  inline RealMatrix gen_instance(InstanceKind kind, std::size_t d,
                                 std::uint64_t seed, double density = 0.5) {
    if (density < 0.0 || density > 1.0) {
      throw PreconditionError("gen_instance: density must lie in [0, 1]");
    }
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> entry(gen_low, gen_high);
    std::uniform_real_distribution<double> diag(0.0, gen_high);
    std::bernoulli_distribution coin(density);
    auto const n = d + 1;
    RealMatrix a(n);

    switch (kind) {
    case InstanceKind::tridiagonal:
    case InstanceKind::permuted_path: {
      for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = diag(rng);
        if (i + 1 < n) {
          a(i, i + 1) = entry(rng);
          a(i + 1, i) = entry(rng);
        }
      }
      if (kind == InstanceKind::permuted_path) {
        Ordering perm(n);
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        std::shuffle(perm.begin(), perm.end(), rng);
        a = permute(a, perm);
      }
      break;
    }
    case InstanceKind::hessenberg: {
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j)
          if (coin(rng)) a(i, j) = entry(rng);
        if (i + 1 < n) a(i + 1, i) = entry(rng);
      }
      break;
    }
    case InstanceKind::general_nonneg: {
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (coin(rng)) a(i, j) = entry(rng);
      break;
    }
    }
    return a;
  }

} // namespace spectralpath
