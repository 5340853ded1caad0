#pragma once

//
// ... Standard header files
//
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <istream>
#include <ostream>
#include <regex>
#include <string>
#include <vector>

//
// ... spectralpath header files
//
#include <spectralpath/errors.hpp>
#include <spectralpath/matrix_io.hpp>
#include <spectralpath/scheme.hpp>

namespace spectralpath {

  namespace detail {

    inline std::int64_t parse_int(std::string const& tok, std::size_t line_no) {
      std::int64_t v = 0;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (ec != std::errc{} || ptr != tok.data() + tok.size()) {
        throw ParseError(line_no, "not an integer: '" + tok + "'");
      }
      return v;
    }

    inline std::size_t parse_index(std::string const& tok, std::size_t line_no,
                                   std::size_t bound, char const* what) {
      auto const v = parse_int(tok, line_no);
      if (v < 0 || static_cast<std::size_t>(v) > bound) {
        throw ParseError(line_no, std::string(what) + " out of range: " + tok);
      }
      return static_cast<std::size_t>(v);
    }

    // Significant lines with their 1-based line numbers.
    struct LineReader {
      std::istream& in;
      std::size_t line_no = 0;

      bool next(std::string& line) {
        while (std::getline(in, line)) {
          ++line_no;
          if (!is_skippable(line)) {
            while (!line.empty() && (line.back() == '\r' || line.back() == ' ' ||
                                     line.back() == '\t'))
              line.pop_back();
            auto const first = line.find_first_not_of(" \t");
            line.erase(0, first);
            return true;
          }
        }
        return false;
      }

      std::string expect(char const* what) {
        std::string line;
        if (!next(line)) throw ParseError(line_no, std::string("missing ") + what);
        return line;
      }
    };

  } // namespace detail

  /// Reads the line-oriented scheme format:
  ///
  ///   SCHEME X=<|X|> D=<d> FORM=<RELATIONS|PTENSOR>
  ///   RELATIONS: for each i, "REL <i>" then |X| rows of |X| chars in {0,1}
  ///   PTENSOR:   "K k_0 ... k_d", then for each h, "P <h>" and a
  ///              (d+1) x (d+1) integer block with rows indexed by i
  ///
  /// '#' comment lines and blank lines are ignored anywhere.
  inline AssociationScheme read_scheme(std::istream& in) {
    detail::LineReader rd{in};
    auto header = rd.expect("SCHEME header");
    static std::regex const re(
      R"(SCHEME\s+X=(\d+)\s+D=(\d+)\s+FORM=(RELATIONS|PTENSOR))");
    std::smatch m;
    if (!std::regex_match(header, m, re)) {
      throw ParseError(rd.line_no,
                       "expected 'SCHEME X=<n> D=<d> FORM=<RELATIONS|PTENSOR>'");
    }
    AssociationScheme s;
    s.x_size = static_cast<std::size_t>(detail::parse_int(m[1], rd.line_no));
    s.d = static_cast<std::size_t>(detail::parse_int(m[2], rd.line_no));
    if (s.x_size == 0) throw ParseError(rd.line_no, "X must be positive");
    if (s.x_size > max_builtin_points)
      throw ParseError(rd.line_no, "X exceeds 4096");
    if (s.d + 1 > s.x_size * s.x_size)
      throw ParseError(rd.line_no, "D too large for X");
    auto const n = s.x_size;
    auto const m1 = s.d + 1;

    if (m[3] == "RELATIONS") {
      s.relations.assign(m1, RelationMatrix{});
      std::vector<bool> got(m1, false);
      for (std::size_t r = 0; r < m1; ++r) {
        auto toks = detail::split_ws(rd.expect("REL block"));
        if (toks.size() != 2 || toks[0] != "REL")
          throw ParseError(rd.line_no, "expected 'REL <i>'");
        auto const i = detail::parse_index(toks[1], rd.line_no, s.d, "relation index");
        if (got[i]) throw ParseError(rd.line_no, "duplicate REL block");
        got[i] = true;
        auto& rel = s.relations[i];
        rel.reserve(n * n);
        for (std::size_t x = 0; x < n; ++x) {
          auto row = rd.expect("relation row");
          if (row.size() != n)
            throw ParseError(rd.line_no, "expected " + std::to_string(n) +
                                           " characters");
          for (char c : row) {
            if (c != '0' && c != '1')
              throw ParseError(rd.line_no, "relation rows use only '0' and '1'");
            rel.push_back(c == '1' ? 1 : 0);
          }
        }
      }
    } else {
      auto toks = detail::split_ws(rd.expect("K line"));
      if (toks.size() != m1 + 1 || toks[0] != "K")
        throw ParseError(rd.line_no, "expected 'K' followed by d+1 valencies");
      for (std::size_t i = 1; i < toks.size(); ++i)
        s.k.push_back(detail::parse_int(toks[i], rd.line_no));
      IntersectionTensor p(s.d);
      std::vector<bool> got(m1, false);
      for (std::size_t r = 0; r < m1; ++r) {
        auto head = detail::split_ws(rd.expect("P block"));
        if (head.size() != 2 || head[0] != "P")
          throw ParseError(rd.line_no, "expected 'P <h>'");
        auto const h = detail::parse_index(head[1], rd.line_no, s.d, "block index");
        if (got[h]) throw ParseError(rd.line_no, "duplicate P block");
        got[h] = true;
        for (std::size_t i = 0; i < m1; ++i) {
          auto row = detail::split_ws(rd.expect("P row"));
          if (row.size() != m1)
            throw ParseError(rd.line_no, "expected " + std::to_string(m1) +
                                           " integers");
          for (std::size_t j = 0; j < m1; ++j)
            p(h, i, j) = detail::parse_int(row[j], rd.line_no);
        }
      }
      s.p = std::move(p);
    }
    std::string extra;
    if (rd.next(extra)) throw ParseError(rd.line_no, "unexpected trailing content");
    return s;
  }

  inline void write_scheme(std::ostream& out, AssociationScheme const& s) {
    auto const n = s.x_size;
    out << "SCHEME X=" << n << " D=" << s.d << " FORM="
        << (s.has_relations() ? "RELATIONS" : "PTENSOR") << '\n';
    if (s.has_relations()) {
      for (std::size_t i = 0; i <= s.d; ++i) {
        out << "REL " << i << '\n';
        for (std::size_t x = 0; x < n; ++x) {
          for (std::size_t y = 0; y < n; ++y)
            out << (s.relations[i][x * n + y] ? '1' : '0');
          out << '\n';
        }
      }
      return;
    }
    out << 'K';
    for (auto v : s.k) out << ' ' << v;
    out << '\n';
    for (std::size_t h = 0; h <= s.d; ++h) {
      out << "P " << h << '\n';
      for (std::size_t i = 0; i <= s.d; ++i) {
        for (std::size_t j = 0; j <= s.d; ++j)
          out << (j ? " " : "") << (*s.p)(h, i, j);
        out << '\n';
      }
    }
  }

  /// Tensor-form copy of a validated scheme.
  inline AssociationScheme to_tensor_form(ValidatedScheme const& v) {
    AssociationScheme s;
    s.x_size = v.x_size;
    s.d = v.d;
    s.p = v.p;
    s.k = v.k;
    return s;
  }

  /// Parses "builtin:hypercube(n)" or "builtin:complete(n)"; empty optional
  /// when the argument does not start with "builtin:".
  inline std::optional<AssociationScheme> builtin_scheme(std::string const& spec) {
    static std::string const prefix = "builtin:";
    if (spec.rfind(prefix, 0) != 0) return std::nullopt;
    static std::regex const re(R"((hypercube|complete)\((\d+)\))");
    std::smatch m;
    auto const body = spec.substr(prefix.size());
    if (!std::regex_match(body, m, re)) {
      throw ParseError(0, "unknown builtin scheme '" + body +
                            "' (expected hypercube(n) or complete(n))");
    }
    auto const n = static_cast<std::size_t>(std::stoull(m[2]));
    return m[1] == "hypercube" ? hypercube_scheme(n) : complete_scheme(n);
  }

  inline AssociationScheme load_scheme(std::string const& path_or_builtin) {
    if (auto b = builtin_scheme(path_or_builtin)) return *b;
    std::ifstream in(path_or_builtin);
    if (!in) throw ParseError(0, "cannot open '" + path_or_builtin + "'");
    return read_scheme(in);
  }

} // namespace spectralpath
