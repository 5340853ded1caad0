#pragma once

//
// ... Standard header files
//
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <numeric>
#include <optional>
#include <set>
#include <utility>
#include <vector>

//
// ... spectralpath header files
//
#include <spectralpath/matrix.hpp>
#include <spectralpath/scheme.hpp>
#include <spectralpath/scheme_eigen.hpp>

// Brute-force references shared by the unit tests and the acceptance run.
namespace spectralpath::testing {

  using StructureSet = std::set<std::pair<std::size_t, std::size_t>>;

  inline RealMatrix adjacency(AssociationScheme const& s, std::size_t i) {
    auto const n = s.x_size;
    RealMatrix a(n);
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) a(x, y) = s.relations[i][x * n + y];
    return a;
  }

  inline std::size_t relation_of(AssociationScheme const& s, std::size_t x,
                                 std::size_t y) {
    for (std::size_t i = 0; i <= s.d; ++i)
      if (s.relations[i][x * s.x_size + y]) return i;
    return s.d + 1;
  }

  // p^h_ij by counting z for one representative pair (x, y) in R_h
  inline std::int64_t count_triples(AssociationScheme const& s, std::size_t h,
                                    std::size_t i, std::size_t j) {
    auto const n = s.x_size;
    for (std::size_t y = 0; y < n; ++y) {
      if (relation_of(s, 0, y) != h) continue;
      std::int64_t c = 0;
      for (std::size_t z = 0; z < n; ++z)
        if (relation_of(s, 0, z) == i && relation_of(s, z, y) == j) ++c;
      return c;
    }
    return -1;
  }

  inline double binom(std::size_t n, std::size_t k) {
    if (k > n) return 0.0;
    double r = 1.0;
    for (std::size_t t = 1; t <= k; ++t) r = r * static_cast<double>(n - k + t) / t;
    return r;
  }

  // Krawtchouk value K_j(i) on {0,1}^n
  inline double krawtchouk(std::size_t n, std::size_t j, std::size_t i) {
    double s = 0.0;
    for (std::size_t l = 0; l <= j; ++l)
      s += (l % 2 ? -1.0 : 1.0) * binom(i, l) * binom(n - i, j - l);
    return s;
  }

  // Primitive idempotents of the n-cube from A_1 alone; E_i belongs to n - 2i.
  inline std::vector<RealMatrix> cube_idempotents(std::size_t n) {
    auto const a1 = adjacency(hypercube_scheme(n), 1);
    std::vector<RealMatrix> e;
    for (std::size_t i = 0; i <= n; ++i) {
      RealMatrix m = RealMatrix::identity(a1.order());
      double const ti = static_cast<double>(n) - 2.0 * i;
      for (std::size_t j = 0; j <= n; ++j) {
        if (j == i) continue;
        double const tj = static_cast<double>(n) - 2.0 * j;
        m = (1.0 / (ti - tj)) * (m * shifted(a1, tj));
      }
      e.push_back(std::move(m));
    }
    return e;
  }

  inline RealMatrix hadamard(RealMatrix const& a, RealMatrix const& b) {
    RealMatrix c(a.order());
    for (std::size_t x = 0; x < a.order(); ++x)
      for (std::size_t y = 0; y < a.order(); ++y) c(x, y) = a(x, y) * b(x, y);
    return c;
  }

  // q^h_ij = |X| tr((E_i o E_j) E_h) / tr(E_h)
  inline double krein_from_idempotents(std::vector<RealMatrix> const& e,
                                       std::size_t h, std::size_t i, std::size_t j) {
    auto const x = static_cast<double>(e[0].order());
    return x * trace(hadamard(e[i], e[j]) * e[h]) / trace(e[h]);
  }

  // Every (generator, last) whose parameter matrix is irreducible
  // tridiagonal under some ordering 0, generator, ...; brute force.
  template <typename Entry>
  inline StructureSet tridiagonal_orderings(std::size_t d, Entry entry) {
    StructureSet found;
    std::vector<std::size_t> rest(d);
    std::iota(rest.begin(), rest.end(), std::size_t{1});
    do {
      std::vector<std::size_t> ord{0};
      ord.insert(ord.end(), rest.begin(), rest.end());
      auto const g = ord[1];
      bool ok = true;
      for (std::size_t a = 0; a <= d && ok; ++a) {
        for (std::size_t b = 0; b <= d && ok; ++b) {
          if (a == b) continue;
          bool const nz = std::abs(entry(g, ord[a], ord[b])) > 1e-9;
          ok = nz == (a + 1 == b || b + 1 == a);
        }
      }
      if (ok) found.insert({g, ord[d]});
    } while (std::next_permutation(rest.begin(), rest.end()));
    return found;
  }

  // Generators whose relation graph has distance layers equal to relations.
  inline StructureSet distance_regular_generators(AssociationScheme const& s) {
    StructureSet found;
    auto const n = s.x_size;
    for (std::size_t g = 1; g <= s.d; ++g) {
      std::vector<std::size_t> dist(n, n);
      dist[0] = 0;
      std::deque<std::size_t> queue{0};
      while (!queue.empty()) {
        auto const u = queue.front();
        queue.pop_front();
        for (std::size_t v = 0; v < n; ++v) {
          if (dist[v] == n && s.relations[g][u * n + v]) {
            dist[v] = dist[u] + 1;
            queue.push_back(v);
          }
        }
      }
      std::vector<std::set<std::size_t>> layer_of(s.d + 1);
      for (std::size_t y = 0; y < n; ++y) layer_of[relation_of(s, 0, y)].insert(dist[y]);
      std::set<std::size_t> used;
      bool ok = true;
      std::size_t last = 0;
      for (std::size_t h = 0; h <= s.d; ++h) {
        if (layer_of[h].size() != 1 || *layer_of[h].begin() > s.d) {
          ok = false;
          break;
        }
        auto const l = *layer_of[h].begin();
        used.insert(l);
        if (l == s.d) last = h;
      }
      if (ok && used.size() == s.d + 1) found.insert({g, last});
    }
    return found;
  }

  inline StructureSet as_set(std::vector<PolynomialStructure> const& v) {
    StructureSet out;
    for (auto const& st : v) out.insert({st.generator, st.last});
    return out;
  }

  // Z_3 x Z_3 with relations by which coordinates differ.
  inline AssociationScheme rook_product_scheme() {
    AssociationScheme s;
    s.x_size = 9;
    s.d = 3;
    s.relations.assign(4, RelationMatrix(81, 0));
    for (std::size_t x = 0; x < 9; ++x) {
      for (std::size_t y = 0; y < 9; ++y) {
        std::size_t const r = (x / 3 != y / 3 ? 2 : 0) + (x % 3 != y % 3 ? 1 : 0);
        s.relations[r][x * 9 + y] = 1;
      }
    }
    return s;
  }

  // Idempotents of the rook product: tensor products of J/3 and I - J/3.
  inline std::vector<RealMatrix> rook_idempotents() {
    RealMatrix const j3{{1, 1, 1}, {1, 1, 1}, {1, 1, 1}};
    std::vector<RealMatrix> f{(1.0 / 3.0) * j3, RealMatrix::identity(3) - (1.0 / 3.0) * j3};
    std::vector<RealMatrix> e;
    for (std::size_t a = 0; a < 2; ++a) {
      for (std::size_t b = 0; b < 2; ++b) {
        RealMatrix m(9);
        for (std::size_t x = 0; x < 9; ++x)
          for (std::size_t y = 0; y < 9; ++y)
            m(x, y) = f[a](x / 3, y / 3) * f[b](x % 3, y % 3);
        e.push_back(std::move(m));
      }
    }
    return e;
  }

  // Endpoints of the support graph when it is a bidirected path: nonzero
  // entries symmetric, n - 1 edges, degrees at most 2, connected.
  inline std::optional<std::pair<std::size_t, std::size_t>>
  path_endpoints_by_degree(RealMatrix const& a, double zero = 1e-10) {
    auto const n = a.order();
    if (n == 1) return std::pair<std::size_t, std::size_t>{0, 0};
    std::vector<std::size_t> deg(n, 0);
    std::size_t edges = 0;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        bool const fw = a(i, j) > zero;
        if (fw != (a(j, i) > zero)) return std::nullopt;
        if (fw) {
          ++deg[i];
          ++deg[j];
          ++edges;
        }
      }
    }
    if (edges != n - 1) return std::nullopt;
    std::vector<std::size_t> ends;
    for (std::size_t v = 0; v < n; ++v) {
      if (deg[v] == 0 || deg[v] > 2) return std::nullopt;
      if (deg[v] == 1) ends.push_back(v);
    }
    // a cycle component would need one edge more than n - 1
    if (ends.size() != 2) return std::nullopt;
    return std::pair<std::size_t, std::size_t>{ends[0], ends[1]};
  }

  // Shortest directed s -> t length by enumerating simple paths.
  inline std::optional<std::size_t> distance_by_enumeration(RealMatrix const& a,
                                                            std::size_t s,
                                                            std::size_t t,
                                                            double zero = 1e-10) {
    if (s == t) return 0;
    auto const n = a.order();
    std::optional<std::size_t> best;
    std::vector<bool> on_path(n, false);
    auto walk = [&](auto&& self, std::size_t u, std::size_t len) -> void {
      if (u == t) {
        if (!best || len < *best) best = len;
        return;
      }
      on_path[u] = true;
      for (std::size_t v = 0; v < n; ++v)
        if (v != u && !on_path[v] && a(u, v) > zero) self(self, v, len + 1);
      on_path[u] = false;
    };
    walk(walk, s, 0);
    return best;
  }

} // namespace spectralpath::testing
