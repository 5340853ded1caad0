#pragma once

//
// ... Standard header files
//
#include <charconv>
#include <cstddef>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

//
// ... spectralpath header files
//
#include <spectralpath/errors.hpp>
#include <spectralpath/matrix.hpp>

namespace spectralpath {

  namespace detail {

    inline bool is_skippable(std::string const& line) {
      auto const first = line.find_first_not_of(" \t\r");
      return first == std::string::npos || line[first] == '#';
    }

    inline std::vector<std::string> split_ws(std::string const& line) {
      std::istringstream in(line);
      std::vector<std::string> out;
      for (std::string tok; in >> tok;) out.push_back(tok);
      return out;
    }

    inline double parse_double(std::string const& tok, std::size_t line_no) {
      double v = 0.0;
      auto const* b = tok.data();
      auto const* e = tok.data() + tok.size();
      if (b != e && *b == '+') ++b;
      auto [ptr, ec] = std::from_chars(b, e, v);
      if (ec != std::errc{} || ptr != e || !std::isfinite(v)) {
        throw ParseError(line_no, "not a finite decimal literal: '" + tok + "'");
      }
      return v;
    }

  } // namespace detail

  /// Reads the matrix text format: first significant line is the order n,
  /// followed by n rows of n whitespace-separated decimals. Lines whose
  /// first non-blank character is '#' and blank lines are skipped.
  inline RealMatrix read_matrix(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    std::size_t n = 0;
    bool have_order = false;
    std::vector<double> data;
    std::size_t rows_read = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (detail::is_skippable(line)) continue;
      auto toks = detail::split_ws(line);
      if (!have_order) {
        if (toks.size() != 1) {
          throw ParseError(line_no, "expected a single matrix order");
        }
        unsigned long long v = 0;
        auto const& t = toks[0];
        auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
        if (ec != std::errc{} || ptr != t.data() + t.size() || v == 0) {
          throw ParseError(line_no, "matrix order must be a positive integer");
        }
        n = static_cast<std::size_t>(v);
        have_order = true;
        data.reserve(n * n);
        continue;
      }
      if (rows_read == n) {
        throw ParseError(line_no, "unexpected extra row");
      }
      if (toks.size() != n) {
        throw ParseError(line_no, "expected " + std::to_string(n) +
                                      " entries, found " +
                                      std::to_string(toks.size()));
      }
      for (auto const& t : toks) data.push_back(detail::parse_double(t, line_no));
      ++rows_read;
    }
    if (!have_order) throw ParseError(line_no, "missing matrix order");
    if (rows_read != n) {
      throw ParseError(line_no, "expected " + std::to_string(n) +
                                    " rows, found " + std::to_string(rows_read));
    }
    return RealMatrix(n, std::move(data));
  }

  inline RealMatrix read_matrix_file(std::string const& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(0, "cannot open '" + path + "'");
    return read_matrix(in);
  }

  inline void write_matrix(std::ostream& out, RealMatrix const& a) {
    auto const old = out.precision(std::numeric_limits<double>::max_digits10);
    out << a.order() << '\n';
    for (std::size_t i = 0; i < a.order(); ++i) {
      for (std::size_t j = 0; j < a.order(); ++j) {
        if (j) out << ' ';
        out << a(i, j);
      }
      out << '\n';
    }
    out.precision(old);
  }

} // namespace spectralpath
