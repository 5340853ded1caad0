#pragma once

//
// ... Standard header files
//
#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

//
// ... spectralpath header files
//
#include <spectralpath/errors.hpp>
#include <spectralpath/matrix.hpp>

namespace spectralpath {

  /// Integer tensor p^h_{ij}, 0 <= h,i,j <= d.
  class IntersectionTensor {
  public:
    IntersectionTensor() = default;
    explicit IntersectionTensor(std::size_t d)
      : d_(d), data_((d + 1) * (d + 1) * (d + 1), 0) {}

    std::size_t d() const noexcept { return d_; }

    std::int64_t& operator()(std::size_t h, std::size_t i, std::size_t j) {
      return data_[(h * (d_ + 1) + i) * (d_ + 1) + j];
    }
    std::int64_t operator()(std::size_t h, std::size_t i, std::size_t j) const {
      return data_[(h * (d_ + 1) + i) * (d_ + 1) + j];
    }

    friend bool operator==(IntersectionTensor const&,
                           IntersectionTensor const&) = default;

  private:
    std::size_t d_ = 0;
    std::vector<std::int64_t> data_;
  };

  /// 0/1 relation matrix over X x X, row-major.
  using RelationMatrix = std::vector<std::uint8_t>;

  /// A symmetric association scheme as supplied by the user, either as its
  /// d+1 relation matrices or as intersection numbers with valencies.
  struct AssociationScheme {
    std::size_t x_size = 0;
    std::size_t d = 0;
    std::vector<RelationMatrix> relations; // non-empty for relations form
    std::optional<IntersectionTensor> p;   // set for tensor form
    std::vector<std::int64_t> k;           // tensor form only

    bool has_relations() const noexcept { return !relations.empty(); }
  };

  /// A scheme whose axioms and parameter identities have been checked.
  struct ValidatedScheme {
    std::size_t x_size = 0;
    std::size_t d = 0;
    IntersectionTensor p;
    std::vector<std::int64_t> k;
    // label[x * |X| + y] = i with (x, y) in R_i; empty for tensor input
    std::vector<std::uint32_t> label;

    bool has_relations() const noexcept { return !label.empty(); }
  };

  inline constexpr std::size_t max_builtin_points = 4096;

  namespace detail {

    inline void check_parameters(std::size_t x_size, IntersectionTensor const& p,
                                 std::vector<std::int64_t> const& k) {
      auto const d = p.d();
      auto bad = [](std::string const& msg, std::vector<std::size_t> w) {
        return SchemeViolation("parameters", msg, std::move(w));
      };
      if (k.size() != d + 1) throw bad("need d+1 valencies", {});
      if (k[0] != 1) throw bad("k_0 must be 1", {0});
      std::int64_t total = 0;
      for (std::size_t i = 0; i <= d; ++i) {
        if (k[i] <= 0) throw bad("valency k_" + std::to_string(i) + " <= 0", {i});
        total += k[i];
      }
      if (total != static_cast<std::int64_t>(x_size))
        throw bad("valencies do not sum to |X|", {});
      for (std::size_t h = 0; h <= d; ++h) {
        for (std::size_t i = 0; i <= d; ++i) {
          std::int64_t row = 0;
          for (std::size_t j = 0; j <= d; ++j) {
            auto const v = p(h, i, j);
            std::vector<std::size_t> w{h, i, j};
            if (v < 0) throw bad("negative intersection number p^h_ij", w);
            if (v != p(h, j, i)) throw bad("p^h_ij != p^h_ji", w);
            if (h == 0 && v != (i == j ? k[i] : 0))
              throw bad("p^0_ij != delta_ij k_i", w);
            if (i == 0 && v != (h == j ? 1 : 0))
              throw bad("p^h_0j != delta_hj", w);
            if (k[h] * v != k[j] * p(j, i, h))
              throw bad("k_h p^h_ij != k_j p^j_ih", w);
            row += v;
          }
          if (row != k[i])
            throw bad("sum_j p^h_ij != k_i", {h, i});
        }
      }
    }

  } // namespace detail

  /// Checks the scheme axioms (identity relation, partition, symmetry,
  /// constant intersection counts) and the parameter identities.
  ///
  /// For relations input the intersection numbers are obtained by exact
  /// triple counting, so regularity is verified for every pair (x, y).
  inline ValidatedScheme validate_scheme(AssociationScheme const& raw) {
    ValidatedScheme out;
    out.x_size = raw.x_size;
    out.d = raw.d;
    auto const n = raw.x_size;
    auto const d = raw.d;
    if (n == 0) throw SchemeViolation("i", "X must be nonempty");

    if (!raw.has_relations()) {
      if (!raw.p || raw.p->d() != d) {
        throw SchemeViolation("parameters", "missing intersection tensor");
      }
      detail::check_parameters(n, *raw.p, raw.k);
      out.p = *raw.p;
      out.k = raw.k;
      return out;
    }

    if (raw.relations.size() != d + 1) {
      throw SchemeViolation("ii", "expected d+1 relations");
    }
    for (std::size_t i = 0; i <= d; ++i) {
      if (raw.relations[i].size() != n * n) {
        throw SchemeViolation("ii", "relation " + std::to_string(i) +
                                      " has the wrong size", {i});
      }
    }
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        if ((raw.relations[0][x * n + y] != 0) != (x == y))
          throw SchemeViolation("i", "R_0 is not the diagonal relation", {x, y});

    out.label.assign(n * n, 0);
    std::vector<std::size_t> sizes(d + 1, 0);
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        std::size_t hits = 0;
        for (std::size_t i = 0; i <= d; ++i) {
          if (raw.relations[i][x * n + y]) {
            ++hits;
            out.label[x * n + y] = static_cast<std::uint32_t>(i);
          }
        }
        if (hits != 1) {
          throw SchemeViolation("ii", "pair lies in " + std::to_string(hits) +
                                        " relations", {x, y});
        }
        ++sizes[out.label[x * n + y]];
      }
    }
    for (std::size_t i = 0; i <= d; ++i)
      if (sizes[i] == 0)
        throw SchemeViolation("ii", "relation " + std::to_string(i) +
                                      " is empty", {i});

    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = x + 1; y < n; ++y)
        if (out.label[x * n + y] != out.label[y * n + x])
          throw SchemeViolation("iii", "relation is not symmetric",
                                {out.label[x * n + y], x, y});

    auto const m = d + 1;
    IntersectionTensor p(d);
    std::vector<bool> seen(m, false);
    std::vector<std::int64_t> counts(m * m);
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = 0; y < n; ++y) {
        std::fill(counts.begin(), counts.end(), 0);
        for (std::size_t z = 0; z < n; ++z)
          ++counts[out.label[x * n + z] * m + out.label[z * n + y]];
        auto const h = out.label[x * n + y];
        for (std::size_t i = 0; i < m; ++i) {
          for (std::size_t j = 0; j < m; ++j) {
            auto const c = counts[i * m + j];
            if (!seen[h]) {
              p(h, i, j) = c;
            } else if (p(h, i, j) != c) {
              throw SchemeViolation(
                "iv", "intersection count p^h_ij is not constant on R_h",
                {h, i, j, x, y});
            }
          }
        }
        seen[h] = true;
      }
    }
    out.k.resize(m);
    for (std::size_t i = 0; i < m; ++i) out.k[i] = p(0, i, i);
    detail::check_parameters(n, p, out.k);
    out.p = std::move(p);
    return out;
  }

  /// B_i: the (d+1) x (d+1) matrix with (h, j)-entry p^h_ij.
  inline RealMatrix intersection_matrix(ValidatedScheme const& s, std::size_t i) {
    if (i > s.d) throw DimensionError("intersection_matrix: index out of range");
    RealMatrix b(s.d + 1);
    for (std::size_t h = 0; h <= s.d; ++h)
      for (std::size_t j = 0; j <= s.d; ++j)
        b(h, j) = static_cast<double>(s.p(h, i, j));
    return b;
  }

  /// Relations on {0,1}^n by Hamming distance; d = n.
  inline AssociationScheme hypercube_scheme(std::size_t n) {
    if (n < 1) throw PreconditionError("hypercube: need n >= 1");
    if (n > 12) throw PreconditionError("hypercube: |X| exceeds 4096");
    std::size_t const x = std::size_t{1} << n;
    AssociationScheme s;
    s.x_size = x;
    s.d = n;
    s.relations.assign(n + 1, RelationMatrix(x * x, 0));
    for (std::size_t a = 0; a < x; ++a)
      for (std::size_t b = 0; b < x; ++b)
        s.relations[static_cast<std::size_t>(std::popcount(a ^ b))][a * x + b] = 1;
    return s;
  }

  /// Trivial one-class scheme on n points.
  inline AssociationScheme complete_scheme(std::size_t n) {
    if (n < 2) throw PreconditionError("complete: need n >= 2");
    if (n > max_builtin_points) throw PreconditionError("complete: |X| exceeds 4096");
    AssociationScheme s;
    s.x_size = n;
    s.d = 1;
    s.relations.assign(2, RelationMatrix(n * n, 0));
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        s.relations[a == b ? 0 : 1][a * n + b] = 1;
    return s;
  }

} // namespace spectralpath
