//
// ... Test header files
//
#include <catch2/catch_amalgamated.hpp>

//
// ... Standard header files
//
#include <cmath>
#include <random>
#include <sstream>
#include <vector>

//
// ... spectralpath header files
//
#include <spectralpath/matrix.hpp>
#include <spectralpath/matrix_io.hpp>
#include <spectralpath/polynomial.hpp>
#include <spectralpath/sym_eigen.hpp>

namespace spectralpath::testing {

  using Catch::Approx;

  static RealMatrix random_matrix(std::size_t n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    RealMatrix a(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a(i, j) = u(rng);
    return a;
  }

  // ================================================================
  // RealMatrix basics
  // ================================================================

  TEST_CASE("RealMatrix - rejects non-finite entries", "[matrix]") {
    CHECK_THROWS_AS(RealMatrix(2, {1.0, NAN, 0.0, 1.0}), DimensionError);
    CHECK_THROWS_AS(RealMatrix(2, {1.0, INFINITY, 0.0, 1.0}), DimensionError);
    CHECK_THROWS_AS(RealMatrix(2, {1.0, 2.0, 3.0}), DimensionError);
  }

  TEST_CASE("multiply - identity is neutral", "[matrix]") {
    RealMatrix a{{1, 2, 3}, {4, 5, 6}, {7, 8, 9}};
    CHECK(multiply(RealMatrix::identity(3), a) == a);
    CHECK(multiply(a, RealMatrix::identity(3)) == a);
  }

  TEST_CASE("multiply - swap is an involution", "[matrix]") {
    RealMatrix swap{{0, 1}, {1, 0}};
    CHECK(multiply(swap, swap) == RealMatrix::identity(2));
  }

  TEST_CASE("multiply - square of the 3-point path", "[matrix]") {
    RealMatrix a{{0, 1, 0}, {1, 0, 1}, {0, 1, 0}};
    // brute force over index triples
    RealMatrix expected(3);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t k = 0; k < 3; ++k) expected(i, j) += a(i, k) * a(k, j);
    CHECK(multiply(a, a) == expected);
    CHECK(multiply(a, a) == RealMatrix{{1, 0, 1}, {0, 2, 0}, {1, 0, 1}});
  }

  TEST_CASE("multiply - mismatched orders throw", "[matrix]") {
    CHECK_THROWS_AS(multiply(RealMatrix(2), RealMatrix(3)), DimensionError);
  }

  TEST_CASE("multiply - associative on random triples", "[matrix][property]") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
      auto const n = static_cast<std::size_t>(1 + trial % 8);
      auto a = random_matrix(n, rng);
      auto b = random_matrix(n, rng);
      auto c = random_matrix(n, rng);
      CHECK(max_abs_diff((a * b) * c, a * (b * c)) <= 1e-8);
    }
  }

  TEST_CASE("permute - relabels rows and columns", "[matrix]") {
    RealMatrix a{{1, 2, 3}, {4, 5, 6}, {7, 8, 9}};
    auto b = permute(a, std::vector<std::size_t>{2, 0, 1});
    CHECK(b(0, 0) == 9);
    CHECK(b(0, 1) == 7);
    CHECK(b(1, 2) == 2);
    CHECK_THROWS_AS(permute(a, std::vector<std::size_t>{0, 0, 1}), DimensionError);
  }

  // ================================================================
  // solve
  // ================================================================

  TEST_CASE("solve - identity system returns the right-hand side", "[solve]") {
    RealMatrix b{{1, 2}, {3, 4}};
    CHECK(solve(RealMatrix::identity(2), b) == b);
  }

  TEST_CASE("solve - diagonal inverse", "[solve]") {
    auto x = solve(RealMatrix{{2, 0}, {0, 4}}, RealMatrix::identity(2));
    CHECK(x(0, 0) == Approx(0.5));
    CHECK(x(1, 1) == Approx(0.25));
    CHECK(x(0, 1) == 0.0);
    CHECK(x(1, 0) == 0.0);
  }

  TEST_CASE("solve - 3-cube eigenmatrix is its own scaled inverse", "[solve]") {
    RealMatrix p{{1, 3, 3, 1}, {1, 1, -1, -1}, {1, -1, -1, 1}, {1, -3, 3, -1}};
    CHECK(max_abs_diff(p * p, 8.0 * RealMatrix::identity(4)) == 0.0);
    auto q = solve(p, 8.0 * RealMatrix::identity(4));
    CHECK(max_abs_diff(q, p) <= 1e-12);
  }

  TEST_CASE("solve - singular matrix reports the pivot", "[solve]") {
    RealMatrix a{{1, 2}, {2, 4}};
    try {
      solve(a, RealMatrix::identity(2));
      FAIL("expected SingularMatrixError");
    } catch (SingularMatrixError const& e) {
      CHECK(e.pivot_index == 1);
    }
  }

  TEST_CASE("solve - round trip on random systems", "[solve][property]") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 50; ++trial) {
      auto const n = static_cast<std::size_t>(1 + trial % 9);
      auto a = random_matrix(n, rng) + static_cast<double>(n) * RealMatrix::identity(n);
      auto b = random_matrix(n, rng);
      CHECK(max_abs_diff(a * solve(a, b), b) <= 1e-8);
    }
  }

  // ================================================================
  // numeric_rank
  // ================================================================

  TEST_CASE("numeric_rank - known ranks", "[rank]") {
    CHECK(numeric_rank(RealMatrix::identity(4), 1e-10) == 4);
    CHECK(numeric_rank(RealMatrix(3), 1e-10) == 0);
    CHECK(numeric_rank(RealMatrix{{1, 2}, {2, 4}}, 1e-10) == 1);
    std::vector<double> rect{1, 0, 0, 0, 1, 0};
    CHECK(numeric_rank(rect, 2, 3, 1e-10) == 2);
  }

  // ================================================================
  // sym_eigen
  // ================================================================

  TEST_CASE("sym_eigen - diagonal input", "[sym_eigen]") {
    auto pairs = sym_eigen(RealMatrix{{1, 0}, {0, 3}});
    REQUIRE(pairs.size() == 2);
    CHECK(pairs[0].value == Approx(3.0));
    CHECK(pairs[1].value == Approx(1.0));
    CHECK(std::abs(pairs[0].vector[1]) == Approx(1.0));
    CHECK(std::abs(pairs[1].vector[0]) == Approx(1.0));
  }

  TEST_CASE("sym_eigen - swap has eigenvalues 1 and -1", "[sym_eigen]") {
    auto pairs = sym_eigen(RealMatrix{{0, 1}, {1, 0}});
    CHECK(pairs[0].value == Approx(1.0));
    CHECK(pairs[1].value == Approx(-1.0));
  }

  TEST_CASE("sym_eigen - 3-point path roots of x^3 - 2x", "[sym_eigen]") {
    auto pairs = sym_eigen(RealMatrix{{0, 1, 0}, {1, 0, 1}, {0, 1, 0}});
    CHECK(pairs[0].value == Approx(std::sqrt(2.0)).epsilon(1e-12));
    CHECK(std::abs(pairs[1].value) <= 1e-12);
    CHECK(pairs[2].value == Approx(-std::sqrt(2.0)).epsilon(1e-12));
  }

  TEST_CASE("sym_eigen - rejects asymmetric input", "[sym_eigen]") {
    CHECK_THROWS_AS(sym_eigen(RealMatrix{{0, 1}, {2, 0}}), NotSymmetricError);
  }

  TEST_CASE("sym_eigen - orthonormal vectors and trace", "[sym_eigen][property]") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 40; ++trial) {
      auto const n = static_cast<std::size_t>(1 + trial % 10);
      auto a = random_matrix(n, rng);
      auto s = a + transpose(a);
      auto pairs = sym_eigen(s);
      double sum = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        sum += pairs[i].value;
        for (std::size_t j = 0; j < n; ++j) {
          double dot = 0.0;
          for (std::size_t k = 0; k < n; ++k) dot += pairs[i].vector[k] * pairs[j].vector[k];
          CHECK(std::abs(dot - (i == j ? 1.0 : 0.0)) <= 1e-8);
        }
      }
      CHECK(std::abs(sum - trace(s)) <= 1e-8);
      for (std::size_t i = 1; i < n; ++i) CHECK(pairs[i - 1].value >= pairs[i].value);
    }
  }

  // ================================================================
  // Characteristic polynomial and real roots
  // ================================================================

  TEST_CASE("characteristic_polynomial - small cases", "[polynomial]") {
    auto c = characteristic_polynomial(RealMatrix{{0, 1}, {1, 0}});
    REQUIRE(c.size() == 3);
    CHECK(c[0] == Approx(-1.0));
    CHECK(std::abs(c[1]) <= 1e-14);
    CHECK(c[2] == 1.0);
    // cyclic shift: x^3 - 1
    auto cyc = characteristic_polynomial(RealMatrix{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}});
    CHECK(cyc[0] == Approx(-1.0));
    CHECK(std::abs(cyc[1]) <= 1e-14);
    CHECK(std::abs(cyc[2]) <= 1e-14);
  }

  TEST_CASE("real_roots - multiplicities and complex pairs", "[polynomial]") {
    // (x - 1)^2 (x + 2) = x^3 - 3x + 2
    auto r = real_roots({2.0, -3.0, 0.0, 1.0}, 1e-10, 1e-8);
    REQUIRE(r.size() == 2);
    CHECK(r[0].value == Approx(-2.0));
    CHECK(r[0].multiplicity == 1);
    CHECK(r[1].value == Approx(1.0).epsilon(1e-6));
    CHECK(r[1].multiplicity == 2);
    // x^2 + 1 has no real roots
    CHECK(real_roots({1.0, 0.0, 1.0}, 1e-10, 1e-8).empty());
    // x^3 - 1: one real root
    auto cube = real_roots({-1.0, 0.0, 0.0, 1.0}, 1e-10, 1e-8);
    REQUIRE(cube.size() == 1);
    CHECK(cube[0].value == Approx(1.0));
  }

  // ================================================================
  // Matrix file format
  // ================================================================

  TEST_CASE("read_matrix - comments and blank lines", "[io]") {
    std::istringstream in("# header\n\n3\n0 1 0\n# middle\n1 0 1\n0 1 0\n");
    auto a = read_matrix(in);
    CHECK(a == RealMatrix{{0, 1, 0}, {1, 0, 1}, {0, 1, 0}});
  }

  TEST_CASE("read_matrix - parse errors carry line numbers", "[io]") {
    auto line_of = [](std::string const& text) -> std::size_t {
      std::istringstream in(text);
      try {
        read_matrix(in);
      } catch (ParseError const& e) {
        return e.line;
      }
      return 0;
    };
    CHECK(line_of("2\n1 2\n3 x\n") == 3);
    CHECK(line_of("2\n1 2 3\n3 4\n") == 2);
    CHECK(line_of("# only a comment\nabc\n") == 2);
    CHECK(line_of("2\n1 2\n") > 0);
    CHECK(line_of("2\n1 2\n3 4\n5 6\n") == 4);
    CHECK(line_of("2\n1 nan\n3 4\n") == 2);
  }

  TEST_CASE("write_matrix - round trip is exact", "[io][property]") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 10; ++trial) {
      auto a = random_matrix(static_cast<std::size_t>(1 + trial), rng);
      std::ostringstream out;
      write_matrix(out, a);
      std::istringstream in(out.str());
      CHECK(read_matrix(in) == a);
    }
  }

} // namespace spectralpath::testing
