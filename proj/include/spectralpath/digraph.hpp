#pragma once

//
// ... Standard header files
//
#include <algorithm>
#include <cmath>
#include <cstddef>
#include <deque>
#include <limits>
#include <optional>
#include <string>
#include <vector>

//
// ... spectralpath header files
//
#include <spectralpath/errors.hpp>
#include <spectralpath/matrix.hpp>
#include <spectralpath/tolerance.hpp>

namespace spectralpath {

  using Ordering = std::vector<std::size_t>;

  /// Directed graph on vertices 0..n-1 with sorted, duplicate-free
  /// out-neighbor lists. Loops are allowed (they appear in the
  /// with-loops pattern graph).
  class Digraph {
  public:
    Digraph() = default;
    explicit Digraph(std::size_t n) : out_(n) {}

    std::size_t size() const noexcept { return out_.size(); }

    /// Adds i -> j; keeps the list sorted and ignores duplicates.
    void add_arc(std::size_t i, std::size_t j) {
      check(i);
      check(j);
      auto& lst = out_[i];
      auto it = std::lower_bound(lst.begin(), lst.end(), j);
      if (it == lst.end() || *it != j) lst.insert(it, j);
    }

    bool has_arc(std::size_t i, std::size_t j) const {
      check(i);
      check(j);
      return std::binary_search(out_[i].begin(), out_[i].end(), j);
    }

    std::vector<std::size_t> const& out(std::size_t i) const {
      check(i);
      return out_[i];
    }

    std::size_t arc_count() const noexcept {
      std::size_t c = 0;
      for (auto const& l : out_) c += l.size();
      return c;
    }

  private:
    void check(std::size_t v) const {
      if (v >= out_.size()) {
        throw DimensionError("Digraph: vertex " + std::to_string(v) +
                             " out of range");
      }
    }

    std::vector<std::vector<std::size_t>> out_;
  };

  /// Pattern graph of a square matrix: i -> j iff |A_ij| > zero_tol, and
  /// additionally i != j unless with_loops is set.
  inline Digraph gamma(RealMatrix const& a, Tolerance const& tol = {},
                       bool with_loops = false) {
    Digraph g(a.order());
    for (std::size_t i = 0; i < a.order(); ++i)
      for (std::size_t j = 0; j < a.order(); ++j)
        if ((with_loops || i != j) && std::abs(a(i, j)) > tol.zero_tol)
          g.add_arc(i, j);
    return g;
  }

  /// BFS shortest directed path from s to t (neighbors expanded in
  /// ascending order); empty optional when t is unreachable.
  inline std::optional<std::vector<std::size_t>>
  shortest_path(Digraph const& g, std::size_t s, std::size_t t) {
    constexpr auto none = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> parent(g.size(), none);
    std::vector<bool> seen(g.size(), false);
    std::deque<std::size_t> queue{s};
    seen[s] = true;
    (void)g.out(t); // range check
    while (!queue.empty()) {
      auto const u = queue.front();
      queue.pop_front();
      if (u == t) break;
      for (auto w : g.out(u)) {
        if (seen[w]) continue;
        seen[w] = true;
        parent[w] = u;
        queue.push_back(w);
      }
    }
    if (!seen[t]) return std::nullopt;
    std::vector<std::size_t> path{t};
    for (auto v = t; v != s; v = parent[v]) path.push_back(parent[v]);
    std::reverse(path.begin(), path.end());
    return path;
  }

  /// Directed distance; empty optional means unreachable.
  inline std::optional<std::size_t>
  directed_distance(Digraph const& g, std::size_t s, std::size_t t) {
    auto p = shortest_path(g, s, t);
    if (!p) return std::nullopt;
    return p->size() - 1;
  }

  /// Recognizes a bidirected path through all vertices.
  ///
  /// Loops are ignored. Every arc must be matched by its reverse, the
  /// underlying undirected graph must have exactly two vertices of degree
  /// one and the rest of degree two, and a walk from the smaller endpoint
  /// must reach every vertex. Returns the vertices in walk order; a single
  /// vertex is the trivial path.
  inline std::optional<Ordering> bidirected_path_endpoints(Digraph const& g) {
    auto const n = g.size();
    if (n == 0) return std::nullopt;
    std::vector<std::vector<std::size_t>> nbr(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (auto j : g.out(i)) {
        if (j == i) continue;
        if (!g.has_arc(j, i)) return std::nullopt;
        nbr[i].push_back(j);
      }
    }
    if (n == 1) return Ordering{0};

    std::vector<std::size_t> ends;
    for (std::size_t i = 0; i < n; ++i) {
      auto const deg = nbr[i].size();
      if (deg == 1) {
        ends.push_back(i);
      } else if (deg != 2) {
        return std::nullopt;
      }
    }
    if (ends.size() != 2) return std::nullopt;

    Ordering walk{ends.front()};
    walk.reserve(n);
    std::size_t prev = ends.front();
    std::size_t cur = nbr[prev].front();
    while (true) {
      walk.push_back(cur);
      if (walk.size() > n) return std::nullopt;
      if (nbr[cur].size() == 1) break;
      auto const next = nbr[cur][0] == prev ? nbr[cur][1] : nbr[cur][0];
      prev = cur;
      cur = next;
    }
    if (walk.size() != n) return std::nullopt;
    return walk;
  }

  /// True when x satisfies: x_i -> x_j whenever i - j = 1 and no arc
  /// x_i -> x_j whenever i - j > 1.
  inline bool is_hessenberg_ordering(Digraph const& g, Ordering const& x) {
    if (x.size() != g.size()) return false;
    for (std::size_t i = 0; i < x.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        bool const arc = g.has_arc(x[i], x[j]);
        if (i - j == 1 && !arc) return false;
        if (i - j > 1 && arc) return false;
      }
    }
    return true;
  }

  /// Hessenberg ordering with x_0 = t and x_{n-1} = s, available exactly
  /// when the directed distance from s to t is n - 1. Built by reversing a
  /// BFS shortest path and verified before return.
  inline std::optional<Ordering>
  hessenberg_ordering(Digraph const& g, std::size_t s, std::size_t t) {
    auto path = shortest_path(g, s, t);
    if (!path || path->size() != g.size()) return std::nullopt;
    Ordering x(path->rbegin(), path->rend());
    if (!is_hessenberg_ordering(g, x)) {
      throw IdentityViolation(
        "hessenberg_ordering: reversed shortest path is not Hessenberg", 0.0);
    }
    return x;
  }

  inline bool is_irreducible_tridiagonal(RealMatrix const& a,
                                         Tolerance const& tol = {}) {
    auto const n = a.order();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        bool const nz = std::abs(a(i, j)) > tol.zero_tol;
        auto const gap = i > j ? i - j : j - i;
        if (gap == 1 && !nz) return false;
        if (gap > 1 && nz) return false;
      }
    }
    return true;
  }

  /// Upper Hessenberg with every subdiagonal entry nonzero.
  inline bool is_hessenberg(RealMatrix const& a, Tolerance const& tol = {}) {
    auto const n = a.order();
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        bool const nz = std::abs(a(i, j)) > tol.zero_tol;
        if (i - j == 1 && !nz) return false;
        if (i - j > 1 && nz) return false;
      }
    }
    return true;
  }

} // namespace spectralpath
