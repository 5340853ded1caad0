//
// ... Test header files
//
#include <catch2/catch_amalgamated.hpp>

//
// ... Standard header files
//
#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <variant>
#include <vector>

//
// ... spectralpath header files
//
#include <spectralpath/spectra.hpp>
#include <spectralpath/symmetrize.hpp>
#include <spectralpath/theorems.hpp>

namespace spectralpath::testing {

  using Catch::Approx;

  static Symmetrizer expect_symmetrizer(RealMatrix const& a) {
    auto r = find_symmetrizer(a);
    REQUIRE(std::holds_alternative<Symmetrizer>(r));
    return std::get<Symmetrizer>(r);
  }

  // ================================================================
  // find_symmetrizer
  // ================================================================

  TEST_CASE("find_symmetrizer - symmetric input has unit weights", "[symmetrize]") {
    auto s = expect_symmetrizer(RealMatrix{{1, 2, 0}, {2, 0, 3}, {0, 3, 5}});
    for (double k : s.kappa) CHECK(k == 1.0);
  }

  TEST_CASE("find_symmetrizer - two-by-two ratio", "[symmetrize]") {
    // kappa_1 = A_01 / A_10 = 2 / 8
    RealMatrix a{{0, 2}, {8, 0}};
    auto s = expect_symmetrizer(a);
    CHECK(s.kappa[0] == 1.0);
    CHECK(s.kappa[1] == Approx(0.25));
    CHECK(s.delta[1] == Approx(0.5));
    CHECK(max_abs_diff(s.apply(a), RealMatrix{{0, 4}, {4, 0}}) <= 1e-14);
  }

  TEST_CASE("find_symmetrizer - pattern witness", "[symmetrize]") {
    auto r = find_symmetrizer(RealMatrix{{0, 1}, {0, 0}});
    REQUIRE(std::holds_alternative<NotSymmetrizable>(r));
    auto const& w = std::get<NotSymmetrizable>(r);
    CHECK(w.reason == NotSymmetrizable::Reason::asymmetric_pattern);
    CHECK(w.i == 0);
    CHECK(w.j == 1);
  }

  TEST_CASE("find_symmetrizer - inconsistent cycle witness", "[symmetrize]") {
    // ratios around the triangle multiply to 8, not 1
    RealMatrix a{{0, 2, 1}, {1, 0, 2}, {2, 1, 0}};
    auto r = find_symmetrizer(a);
    REQUIRE(std::holds_alternative<NotSymmetrizable>(r));
    CHECK(std::get<NotSymmetrizable>(r).reason ==
          NotSymmetrizable::Reason::inconsistent_cycle);
  }

  TEST_CASE("find_symmetrizer - components normalized independently", "[symmetrize]") {
    RealMatrix a{{0, 3, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 5}, {0, 0, 2, 0}};
    auto s = expect_symmetrizer(a);
    CHECK(s.kappa[0] == 1.0);
    CHECK(s.kappa[1] == Approx(3.0));
    CHECK(s.kappa[2] == 1.0);
    CHECK(s.kappa[3] == Approx(2.5));
  }

  // ================================================================
  // tridiagonal_symmetrizer
  // ================================================================

  TEST_CASE("tridiagonal_symmetrizer - 3-cube intersection matrix", "[symmetrize]") {
    RealMatrix b1{{0, 3, 0, 0}, {1, 0, 2, 0}, {0, 2, 0, 1}, {0, 0, 3, 0}};
    auto s = tridiagonal_symmetrizer(b1);
    std::vector<double> const k{1, 3, 3, 1};
    for (std::size_t i = 0; i < 4; ++i) CHECK(s.kappa[i] == Approx(k[i]));
  }

  TEST_CASE("tridiagonal_symmetrizer - small examples", "[symmetrize]") {
    auto s = tridiagonal_symmetrizer(RealMatrix{{0, 1}, {1, 0}});
    CHECK(s.kappa == std::vector<double>{1.0, 1.0});
    auto t = tridiagonal_symmetrizer(RealMatrix{{0, 2}, {8, 0}});
    CHECK(t.kappa[1] == Approx(0.25));
  }

  TEST_CASE("tridiagonal_symmetrizer - preconditions", "[symmetrize]") {
    CHECK_THROWS_AS(tridiagonal_symmetrizer(RealMatrix{{0, 1}, {0, 0}}), PreconditionError);
    CHECK_THROWS_AS(tridiagonal_symmetrizer(RealMatrix{{0, 1, 1}, {1, 0, 1}, {0, 1, 0}}),
                    PreconditionError);
    CHECK_THROWS_AS(tridiagonal_symmetrizer(RealMatrix{{0, -1}, {1, 0}}), PreconditionError);
  }

  // ================================================================
  // Properties
  // ================================================================

  TEST_CASE("tridiagonal weights satisfy KA = A^t K", "[symmetrize][property]") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      auto const d = static_cast<std::size_t>(seed % 11);
      auto a = gen_instance(InstanceKind::tridiagonal, d, seed);
      auto s = tridiagonal_symmetrizer(a);
      RealMatrix k = RealMatrix::diagonal(s.kappa);
      CHECK(max_abs_diff(k * a, transpose(a) * k) <= 1e-9 * max_abs(a));
      CHECK(is_symmetric(s.apply(a), 1e-9 * max_abs(a)));
      for (double v : s.kappa) CHECK(v > 0.0);

      auto g = expect_symmetrizer(a);
      for (std::size_t i = 0; i <= d; ++i)
        CHECK(g.kappa[i] / g.kappa[0] == Approx(s.kappa[i] / s.kappa[0]).epsilon(1e-9));
    }
  }

  TEST_CASE("nonnegative irreducible tridiagonal is multiplicity-free",
            "[symmetrize][property]") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      auto a = gen_instance(InstanceKind::tridiagonal, seed % 11, 500 + seed);
      CHECK(classify(a).tag == SpectralTag::multiplicity_free);
    }
  }

  TEST_CASE("symmetrizability survives relabeling", "[symmetrize][property]") {
    std::mt19937_64 rng(99);
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      auto const d = static_cast<std::size_t>(seed % 7);
      auto a = seed % 3 == 0 ? gen_instance(InstanceKind::general_nonneg, d, seed, 0.5)
                             : gen_instance(InstanceKind::tridiagonal, d, seed);
      auto base = find_symmetrizer(a);
      for (int k = 0; k < 10; ++k) {
        Ordering perm(d + 1);
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        std::shuffle(perm.begin(), perm.end(), rng);
        auto b = permute(a, perm);
        auto r = find_symmetrizer(b);
        REQUIRE(r.index() == base.index());
        if (auto const* s = std::get_if<Symmetrizer>(&r)) {
          std::vector<double> moved(d + 1);
          for (std::size_t i = 0; i <= d; ++i) moved[i] = std::get<Symmetrizer>(base).kappa[perm[i]];
          CHECK(detailed_balance_residual(b, moved) <= 1e-9 * std::max(1.0, max_abs(b)) *
                                                         *std::max_element(moved.begin(), moved.end()));
          CHECK(detailed_balance_residual(b, s->kappa) <=
                1e-9 * std::max(1.0, max_abs(b)) *
                  *std::max_element(s->kappa.begin(), s->kappa.end()));
        }
      }
    }
  }

  TEST_CASE("symmetrizable matrices are diagonalizable", "[symmetrize][property]") {
    for (std::uint64_t seed = 0; seed < 300; ++seed) {
      auto const d = static_cast<std::size_t>(seed % 7);
      RealMatrix a = gen_instance(InstanceKind::general_nonneg, d, 40 + seed, 0.4);
      a = a + transpose(a); // symmetric support, always symmetrizable
      if (!std::holds_alternative<Symmetrizer>(find_symmetrizer(a))) continue;
      auto cls = classify(a);
      CHECK(cls.tag != SpectralTag::not_diagonalizable);
      CHECK(cls.tag != SpectralTag::complex_spectrum);
    }
  }

} // namespace spectralpath::testing
