//
// ... Standard header files
//
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

//
// ... Third-party header files
//
#include <CLI11.hpp>
#include <json.hpp>

//
// ... spectralpath header files
//
#include <spectralpath/spectralpath.hpp>

namespace {

  using spectralpath::RealMatrix;
  using spectralpath::Tolerance;
  using Json = nlohmann::ordered_json;

  enum ExitCode : int { exit_true = 0, exit_false = 1, exit_input = 2, exit_numerical = 3 };

  struct Options {
    Tolerance tol{};
    std::optional<std::uint64_t> seed_flag;
    bool json = false;
    std::vector<std::string> argv;

    std::uint64_t seed() const {
      if (seed_flag) return *seed_flag;
      if (char const* env = std::getenv("SPECTRALPATH_SEED")) {
        try {
          return std::stoull(env);
        } catch (std::exception const&) {
          throw spectralpath::PreconditionError(
            std::string("SPECTRALPATH_SEED is not an unsigned integer: ") + env);
        }
      }
      return spectralpath::default_seed;
    }
  };

  // ------------------------------------------------------------------
  // Formatting
  // ------------------------------------------------------------------

  std::string num(double v) {
    if (v == 0.0) v = 0.0; // no "-0"
    std::ostringstream out;
    out << std::setprecision(6) << v;
    return out.str();
  }

  // Entries this far below the matrix scale are printed as 0.
  std::string entry(double v, double scale) {
    return num(std::abs(v) <= 1e-12 * std::max(1.0, scale) ? 0.0 : v);
  }

  std::string join(std::vector<double> const& v) {
    double scale = 0.0;
    for (double x : v) scale = std::max(scale, std::abs(x));
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + entry(v[i], scale);
    return s;
  }

  std::string join(std::vector<std::size_t> const& v, char const* sep = " ") {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
      s += (i ? sep : "") + std::to_string(v[i]);
    return s;
  }

  void print_matrix(std::ostream& out, std::string const& label,
                    RealMatrix const& a) {
    double const scale = spectralpath::max_abs(a);
    out << label << ":\n";
    for (std::size_t i = 0; i < a.order(); ++i) {
      out << " ";
      for (std::size_t j = 0; j < a.order(); ++j)
        out << ' ' << std::setw(12) << entry(a(i, j), scale);
      out << '\n';
    }
  }

  Json matrix_json(RealMatrix const& a) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < a.order(); ++i) {
      Json row = Json::array();
      for (std::size_t j = 0; j < a.order(); ++j) row.push_back(a(i, j));
      rows.push_back(std::move(row));
    }
    return rows;
  }

  Json tolerances_json(Tolerance const& t) {
    return Json{{"zero_tol", t.zero_tol},
                {"eig_tol", t.eig_tol},
                {"residual_tol", t.residual_tol}};
  }

  void emit(Options const& o, Json result, std::string const& verdict,
            std::string const& human, bool with_seed = false) {
    if (o.json) {
      Json rep;
      rep["command"] = o.argv;
      rep["tolerances"] = tolerances_json(o.tol);
      if (with_seed) rep["seed"] = o.seed();
      rep["result"] = std::move(result);
      rep["verdict"] = verdict;
      std::cout << rep.dump(2) << '\n';
      return;
    }
    std::cout << "command:";
    for (std::size_t i = 1; i < o.argv.size(); ++i) std::cout << ' ' << o.argv[i];
    std::cout << "\ntolerances: zero " << num(o.tol.zero_tol) << ", eig "
              << num(o.tol.eig_tol) << ", residual " << num(o.tol.residual_tol)
              << '\n';
    if (with_seed) std::cout << "seed: " << o.seed() << '\n';
    std::cout << human << "verdict: " << verdict << '\n';
  }

  int input_error(Options const& o, std::string const& msg,
                  std::optional<std::size_t> line = std::nullopt) {
    if (o.json) {
      Json rep{{"command", o.argv}, {"error", msg}};
      if (line) rep["line"] = *line;
      rep["verdict"] = "input error";
      std::cout << rep.dump(2) << '\n';
    }
    std::cerr << "error: " << msg << '\n';
    return exit_input;
  }

  int numerical_error(Options const& o, std::string const& msg) {
    if (o.json) {
      Json rep{{"command", o.argv}, {"error", msg}, {"verdict", "numerical failure"}};
      std::cout << rep.dump(2) << '\n';
    }
    std::cerr << "numerical failure: " << msg << '\n';
    return exit_numerical;
  }

  // ------------------------------------------------------------------
  // Report pieces
  // ------------------------------------------------------------------

  Json profile_json(spectralpath::Profile const& p) {
    Json j{{"values", p.values},       {"mean", p.mean},
           {"spread", p.spread},       {"threshold", p.threshold},
           {"is_constant", p.is_constant}, {"is_constant_zero", p.is_constant_zero}};
    j["common_value"] = p.common_value ? Json(*p.common_value) : Json(nullptr);
    return j;
  }

  std::string profile_text(spectralpath::Profile const& p) {
    std::string s = join(p.values) + " (spread " + num(p.spread) +
                    (p.is_constant ? " <= " : " > ") + "threshold " +
                    num(p.threshold) + ")";
    if (p.common_value) s += ", common value " + num(*p.common_value);
    else if (p.is_constant_zero) s += ", constant zero";
    else s += ", not constant";
    return s;
  }

  Json symmetrizer_json(spectralpath::SymmetrizeResult const& r) {
    if (auto const* s = std::get_if<spectralpath::Symmetrizer>(&r))
      return Json{{"symmetrizable", true}, {"kappa", s->kappa}, {"delta", s->delta}};
    auto const& w = std::get<spectralpath::NotSymmetrizable>(r);
    return Json{{"symmetrizable", false},
                {"reason", spectralpath::to_string(w.reason)},
                {"i", w.i}, {"j", w.j}, {"residual", w.residual}};
  }

  std::string symmetrizer_text(spectralpath::SymmetrizeResult const& r) {
    if (auto const* s = std::get_if<spectralpath::Symmetrizer>(&r))
      return "kappa = " + join(s->kappa);
    auto const& w = std::get<spectralpath::NotSymmetrizable>(r);
    return std::string("not symmetrizable (") + spectralpath::to_string(w.reason) +
           " at " + std::to_string(w.i) + "," + std::to_string(w.j) + ")";
  }

  Json report_json(spectralpath::TheoremReport const& r) {
    auto const& ci = r.condition_i;
    auto const& cii = r.condition_ii;
    Json i{{"holds", ci.holds}};
    i["path"] = ci.path ? Json(*ci.path) : Json(nullptr);
    i["distance"] = ci.distance ? Json(*ci.distance) : Json(nullptr);
    if (r.which == spectralpath::Theorem::main) {
      i["hessenberg_ordering"] = ci.hessenberg ? Json(*ci.hessenberg) : Json(nullptr);
      i["spectral_class"] = ci.spectral_tag ? Json(spectralpath::to_string(*ci.spectral_tag))
                                            : Json(nullptr);
    }
    Json ii{{"holds", cii.holds}};
    if (cii.symmetrizable) ii["symmetrizable"] = *cii.symmetrizable;
    if (cii.witness)
      ii["not_symmetrizable"] = symmetrizer_json(spectralpath::SymmetrizeResult{*cii.witness});
    ii["spectral_class"] = cii.tag ? Json(spectralpath::to_string(*cii.tag)) : Json(nullptr);
    ii["min_eigenvalue_gap"] = std::isfinite(cii.min_gap) ? Json(cii.min_gap) : Json(nullptr);
    ii["profile"] = cii.profile ? profile_json(*cii.profile) : Json(nullptr);
    ii["numerical_failure"] =
      cii.numerical_failure ? Json(*cii.numerical_failure) : Json(nullptr);
    return Json{{"theorem", spectralpath::to_string(r.which)},
                {"s", r.s}, {"t", r.t}, {"d", r.d},
                {"condition_i", i}, {"condition_ii", ii},
                {"equivalent", r.equivalent()}};
  }

  std::string report_text(spectralpath::TheoremReport const& r,
                          std::string const& indent = "") {
    auto const& ci = r.condition_i;
    auto const& cii = r.condition_ii;
    std::ostringstream out;
    out << indent << "theorem: " << spectralpath::to_string(r.which) << ", (s, t) = ("
        << r.s << ", " << r.t << "), d = " << r.d << '\n';
    out << indent << "condition (i): " << (ci.holds ? "true" : "false") << " [";
    if (r.which == spectralpath::Theorem::main_sym) {
      out << (ci.path ? "bidirected path " + join(*ci.path, "-") : "not a bidirected path");
    } else {
      out << (ci.spectral_tag ? spectralpath::to_string(*ci.spectral_tag) : "unclassified");
    }
    out << "; distance " << (ci.distance ? std::to_string(*ci.distance) : "none");
    if (ci.hessenberg) out << "; hessenberg ordering " << join(*ci.hessenberg);
    out << "]\n";
    out << indent << "condition (ii): " << (cii.holds ? "true" : "false") << " [";
    std::vector<std::string> parts;
    if (cii.symmetrizable)
      parts.push_back(*cii.symmetrizable
                        ? "symmetrizable"
                        : symmetrizer_text(spectralpath::SymmetrizeResult{*cii.witness}));
    if (cii.tag) parts.push_back(spectralpath::to_string(*cii.tag));
    if (cii.profile) parts.push_back("profile " + profile_text(*cii.profile));
    if (cii.numerical_failure) parts.push_back("numerical failure: " + *cii.numerical_failure);
    for (std::size_t k = 0; k < parts.size(); ++k) out << (k ? "; " : "") << parts[k];
    out << "]\n";
    return out.str();
  }

  std::string theorem_verdict(spectralpath::TheoremReport const& r) {
    if (!r.equivalent()) return "numerical disagreement";
    return r.condition_i.holds ? "equivalent, both true" : "equivalent, both false";
  }

  int theorem_exit(spectralpath::TheoremReport const& r) {
    if (!r.equivalent()) return exit_numerical;
    return r.condition_i.holds ? exit_true : exit_false;
  }

  // ------------------------------------------------------------------
  // Commands
  // ------------------------------------------------------------------

  int cmd_analyze(Options const& o, std::string const& path,
                  std::optional<std::size_t> s, std::optional<std::size_t> t) {
    auto const a = spectralpath::read_matrix_file(path);
    auto const n = a.order();
    if ((s && *s >= n) || (t && *t >= n))
      return input_error(o, "vertex index out of range for order " + std::to_string(n));
    auto const g = spectralpath::gamma(a, o.tol);
    auto const path_order = spectralpath::bidirected_path_endpoints(g);
    auto const sym = spectralpath::find_symmetrizer(a, o.tol);

    std::optional<spectralpath::SpectralClass> cls;
    std::optional<std::string> failure;
    try {
      cls = spectralpath::classify(a, o.tol);
    } catch (spectralpath::Error const& e) {
      failure = e.what();
    }

    std::ostringstream text;
    Json res;
    text << "order: " << n << " (d = " << n - 1 << ")\n";
    res["order"] = n;
    text << "gamma: " << g.arc_count() << " arcs; "
         << (path_order ? "bidirected path " + join(*path_order, "-") + " (endpoints " +
                            std::to_string(path_order->front()) + ", " +
                            std::to_string(path_order->back()) + ")"
                        : std::string("not a bidirected path"))
         << '\n';
    res["gamma"] = Json{{"arcs", g.arc_count()},
                        {"bidirected_path", path_order ? Json(*path_order) : Json(nullptr)}};
    text << "symmetrizer: " << symmetrizer_text(sym) << '\n';
    res["symmetrizer"] = symmetrizer_json(sym);

    if (!cls) {
      res["spectral_class"] = nullptr;
      res["numerical_failure"] = *failure;
      emit(o, res, "numerical failure", text.str() + "spectral class: numerical failure: " +
                                          *failure + '\n');
      return exit_numerical;
    }
    text << "spectral class: " << spectralpath::to_string(cls->tag)
         << (cls->via_symmetrizer ? " (symmetric route)" : " (characteristic polynomial)")
         << '\n';
    std::vector<double> values;
    Json eig = Json::array();
    for (auto const& ev : cls->eigenvalues) {
      values.push_back(ev.value);
      eig.push_back(Json{{"value", ev.value},
                         {"algebraic", ev.algebraic},
                         {"geometric", ev.geometric}});
    }
    text << "real eigenvalues: " << (values.empty() ? "none" : join(values))
         << " (real roots with multiplicity " << cls->real_root_count << " of " << n
         << ")\n";
    if (n > 1 && std::isfinite(cls->min_gap))
      text << "min eigenvalue gap: " << num(cls->min_gap) << '\n';
    res["spectral_class"] = Json{
      {"tag", spectralpath::to_string(cls->tag)},
      {"via_symmetrizer", cls->via_symmetrizer},
      {"eigenvalues", eig},
      {"real_root_count", cls->real_root_count},
      {"min_gap", std::isfinite(cls->min_gap) ? Json(cls->min_gap) : Json(nullptr)}};

    Json profiles = Json::array();
    if (cls->tag == spectralpath::SpectralTag::multiplicity_free) {
      auto const& sp = *cls->spectrum;
      text << "spectral identity worst residual: " << num(sp.worst_residual) << " (tolerance "
           << num(o.tol.residual_tol) << ")\n";
      res["spectral_identity_residual"] = sp.worst_residual;
      double const scale = spectralpath::max_abs(a);
      for (std::size_t ss = 0; ss < n; ++ss) {
        if (s && ss != *s) continue;
        for (std::size_t tt = 0; tt < n; ++tt) {
          if (t && tt != *t) continue;
          auto const p = spectralpath::entry_product_profile(sp, scale, ss, tt, o.tol);
          text << "profile (" << ss << ", " << tt << "): " << profile_text(p) << '\n';
          Json pj = profile_json(p);
          pj["s"] = ss;
          pj["t"] = tt;
          profiles.push_back(std::move(pj));
        }
      }
    }
    res["profiles"] = profiles;
    emit(o, res, "analyzed", text.str());
    return exit_true;
  }

  int cmd_check(Options const& o, std::string const& path, std::string const& which,
                std::size_t s, std::size_t t) {
    auto const theorem = which == "main" ? spectralpath::Theorem::main
                                         : spectralpath::Theorem::main_sym;
    auto const a = spectralpath::read_matrix_file(path);
    if (s >= a.order() || t >= a.order())
      return input_error(o, "vertex index out of range for order " +
                              std::to_string(a.order()));
    auto const rep = spectralpath::check_theorem(theorem, a, s, t, o.tol);
    std::string text = report_text(rep);
    if (!rep.equivalent()) text += "diagnostic: " + rep.diagnostic() + '\n';
    emit(o, report_json(rep), theorem_verdict(rep), text);
    return theorem_exit(rep);
  }

  Json structures_json(std::vector<spectralpath::PolynomialStructure> const& all) {
    Json out = Json::array();
    for (auto const& st : all)
      out.push_back(Json{{"generator", st.generator},
                         {"ordering", st.ordering},
                         {"last", st.last}});
    return out;
  }

  std::string structures_text(std::vector<spectralpath::PolynomialStructure> const& all,
                              char const* kind) {
    std::ostringstream out;
    out << "structures: " << all.size() << '\n';
    for (auto const& st : all)
      out << "  generator " << kind << st.generator << ", ordering " << join(st.ordering)
          << ", last " << kind << st.last << '\n';
    return out.str();
  }

  Json kn_json(spectralpath::KnReport const& r) {
    return Json{{"generator", r.generator},
                {"last", r.last},
                {"side_i", r.side_i},
                {"side_ii", r.side_ii},
                {"distinct", r.distinct},
                {"theta", r.theta},
                {"expected", r.expected},
                {"actual", r.actual},
                {"residual", r.residual},
                {"threshold", r.threshold},
                {"path_profile_check", report_json(r.main_sym)},
                {"agreement", r.agreement()}};
  }

  std::string kn_text(spectralpath::KnReport const& r) {
    char const* rel = r.dual ? "E" : "A";
    char const* th = r.dual ? "theta*_i = Q_i" : "theta_i = P_i";
    char const* act = r.dual ? "P_" : "Q_";
    std::ostringstream out;
    out << "side (i): " << (r.side_i ? "true" : "false") << " ["
        << (r.dual ? "Q" : "P") << "-polynomial relative to " << rel << r.generator
        << " with last " << rel << r.last << "]\n";
    out << "side (ii): " << (r.side_ii ? "true" : "false") << '\n';
    out << "  " << th << r.generator << ": " << join(r.theta)
        << (r.distinct ? "" : " (not distinct)") << '\n';
    if (!r.expected.empty())
      out << "  expected f_0/f_i: " << join(r.expected) << '\n';
    out << "  actual " << act << r.last << "i: " << join(r.actual) << '\n';
    if (r.distinct)
      out << "  residual " << num(r.residual) << (r.side_ii ? " <= " : " > ")
          << "threshold " << num(r.threshold) << '\n';
    out << "path/profile check on " << (r.dual ? "B*_" : "B_") << r.generator << ":\n"
        << report_text(r.main_sym, "  ");
    return out.str();
  }

  int cmd_scheme(Options const& o, std::string const& source,
                 std::vector<std::string> const& action) {
    if (action.empty()) return input_error(o, "scheme: missing action");
    auto const& verb = action[0];
    bool const two = verb == "kn-p" || verb == "kn-q";
    bool const known = two || verb == "info" || verb == "p-poly" || verb == "q-poly";
    if (!known) return input_error(o, "scheme: unknown action '" + verb + "'");
    if (action.size() != (two ? 3u : 1u))
      return input_error(o, "scheme " + verb + ": wrong number of arguments");
    std::size_t x = 0, y = 0;
    if (two) {
      try {
        x = std::stoul(action[1]);
        y = std::stoul(action[2]);
      } catch (std::exception const&) {
        return input_error(o, "scheme " + verb + ": indices must be integers");
      }
    }

    auto const v = spectralpath::validate_scheme(spectralpath::load_scheme(source));
    if (two && (x < 1 || x > v.d || y < 1 || y > v.d))
      return input_error(o, "scheme " + verb + ": indices must lie in 1.." +
                              std::to_string(v.d));

    std::optional<spectralpath::SchemeEigendata> ed;
    try {
      if (verb != "p-poly") ed = spectralpath::eigendata(v, o.tol, o.seed());
    } catch (spectralpath::Error const& e) {
      return numerical_error(o, e.what());
    }

    std::ostringstream text;
    Json res{{"x_size", v.x_size}, {"d", v.d}};
    text << "|X| = " << v.x_size << ", d = " << v.d << '\n';

    if (verb == "info") {
      text << "k: " << join(ed->k) << '\n' << "m: " << join(ed->m) << '\n';
      std::ostringstream mats;
      print_matrix(mats, "P", ed->P);
      print_matrix(mats, "Q", ed->Q);
      text << mats.str();
      double qmax = 0.0;
      for (std::size_t h = 0; h <= v.d; ++h)
        for (std::size_t i = 0; i <= v.d; ++i)
          for (std::size_t j = 0; j <= v.d; ++j) qmax = std::max(qmax, ed->q(h, i, j));
      auto const& r = ed->residuals;
      text << "Krein parameters: min " << entry(ed->q.min(), qmax) << ", max " << num(qmax)
           << " (nonnegativity floor " << num(-spectralpath::krein_noise_floor(*ed, o.tol))
           << ")\n";
      text << "residuals: PQ " << num(r.pq) << ", common eigenvectors " << num(r.common_eigvec)
           << ", Krein symmetry " << num(r.krein_symmetry) << ", Krein balance "
           << num(r.krein_balance) << '\n';
      text << "combination seed: " << ed->seed << " (attempts " << ed->attempts << ")\n";
      Json q = Json::array();
      for (std::size_t h = 0; h <= v.d; ++h) {
        RealMatrix slice(v.d + 1);
        for (std::size_t i = 0; i <= v.d; ++i)
          for (std::size_t j = 0; j <= v.d; ++j) slice(i, j) = ed->q(h, i, j);
        q.push_back(matrix_json(slice));
      }
      res["k"] = ed->k;
      res["m"] = ed->m;
      res["P"] = matrix_json(ed->P);
      res["Q"] = matrix_json(ed->Q);
      res["krein"] = q;
      res["krein_min"] = ed->q.min();
      res["krein_max"] = qmax;
      res["krein_floor"] = -spectralpath::krein_noise_floor(*ed, o.tol);
      res["residuals"] = Json{{"pq", r.pq},
                              {"common_eigenvectors", r.common_eigvec},
                              {"q_column_zero", r.column_zero},
                              {"krein_symmetry", r.krein_symmetry},
                              {"krein_identity", r.krein_identity},
                              {"krein_balance", r.krein_balance}};
      res["combination_seed"] = ed->seed;
      res["attempts"] = ed->attempts;
      emit(o, res, "valid scheme", text.str(), true);
      return exit_true;
    }

    if (verb == "p-poly" || verb == "q-poly") {
      bool const dual = verb == "q-poly";
      auto const all = dual ? spectralpath::detect_q_polynomial(*ed, o.tol)
                            : spectralpath::detect_p_polynomial(v, o.tol);
      text << structures_text(all, dual ? "E" : "A");
      res["structures"] = structures_json(all);
      std::string const kind = dual ? "Q-polynomial" : "P-polynomial";
      emit(o, res, all.empty() ? "not " + kind : kind, text.str(), true);
      return all.empty() ? exit_false : exit_true;
    }

    auto const rep = verb == "kn-p" ? spectralpath::kn_p_check(v, *ed, x, y, o.tol)
                                    : spectralpath::kn_q_check(*ed, x, y, o.tol);
    text << kn_text(rep);
    res["kn"] = kn_json(rep);
    std::string verdict = !rep.agreement() ? "numerical disagreement"
                          : rep.side_i     ? "equivalent, both true"
                                           : "equivalent, both false";
    emit(o, res, verdict, text.str(), true);
    if (!rep.agreement()) return exit_numerical;
    return rep.side_i ? exit_true : exit_false;
  }

  int cmd_selftest(Options const& o, std::size_t d_max, std::size_t trials,
                   bool force_bug) {
    if (trials < 1) return input_error(o, "selftest: --trials must be at least 1");
    spectralpath::SuiteConfig cfg;
    cfg.d_max = d_max;
    cfg.trials = trials;
    cfg.seed = o.seed();
    cfg.tol = o.tol;
    cfg.force_bug = force_bug;
    std::vector<spectralpath::SuiteResult> results;
    try {
      results = spectralpath::run_property_suites(cfg);
    } catch (spectralpath::Error const& e) {
      return numerical_error(o, e.what());
    }
    std::ostringstream text;
    Json suites = Json::array();
    bool all = true;
    for (auto const& r : results) {
      all = all && r.passed();
      text << std::left << std::setw(22) << r.name << std::right << " cases " << std::setw(6)
           << r.cases << "  failures " << std::setw(4) << r.failures
           << "  worst residual/tolerance " << num(r.worst_ratio) << '\n';
      if (!r.passed()) text << "  first failure: " << r.first_failure << '\n';
      suites.push_back(Json{{"name", r.name},
                            {"cases", r.cases},
                            {"failures", r.failures},
                            {"worst_residual_ratio", r.worst_ratio},
                            {"first_failure", r.passed() ? Json(nullptr)
                                                         : Json(r.first_failure)}});
    }
    Json res{{"d_max", d_max}, {"trials", trials}, {"suites", suites}};
    emit(o, res, all ? "all suites pass" : "property failure", text.str(), true);
    return all ? exit_true : exit_numerical;
  }

} // namespace

int main(int argc, char** argv) {
  Options o;
  o.argv.assign(argv, argv + argc);
  o.argv[0] = "spectralpath";

  CLI::App app{"Spectral path and distance tests for nonnegative matrices and "
               "symmetric association schemes"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--zero-tol", o.tol.zero_tol, "entries at or below this are zero")
    ->capture_default_str()->check(CLI::NonNegativeNumber);
  app.add_option("--eig-tol", o.tol.eig_tol, "eigenvalue separation tolerance")
    ->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--residual-tol", o.tol.residual_tol, "identity residual tolerance")
    ->capture_default_str()->check(CLI::PositiveNumber);
  app.add_option("--seed", o.seed_flag, "random seed (fallback: SPECTRALPATH_SEED, then 42)");
  app.add_flag("--json", o.json, "machine-readable report");

  std::string path;
  std::optional<std::size_t> s_opt, t_opt;
  auto* analyze = app.add_subcommand("analyze", "summarize a matrix file");
  analyze->add_option("path", path, "matrix file")->required();
  analyze->add_option("--s", s_opt, "row index of the profile");
  analyze->add_option("--t", t_opt, "column index of the profile");

  std::string theorem = "mainsym";
  std::size_t s = 0, t = 0;
  auto* check = app.add_subcommand("check", "check both sides of a path/distance criterion");
  check->add_option("path", path, "matrix file")->required();
  check->add_option("--theorem", theorem, "main or mainsym")
    ->capture_default_str()->check(CLI::IsMember({"main", "mainsym"}));
  check->add_option("--s", s, "source vertex")->required();
  check->add_option("--t", t, "target vertex")->required();

  std::string source;
  std::vector<std::string> action;
  auto* scheme = app.add_subcommand("scheme", "association scheme analysis");
  scheme->add_option("source", source, "scheme file or builtin:hypercube(n) / builtin:complete(n)")
    ->required();
  scheme->add_option("action", action, "info | p-poly | q-poly | kn-p B C | kn-q E F")
    ->required()->expected(1, 3);

  std::size_t d_max = 8, trials = 100;
  bool force_bug = false;
  auto* selftest = app.add_subcommand("selftest", "run the property suites");
  selftest->add_option("--d-max", d_max, "largest matrix order minus one")->capture_default_str();
  selftest->add_option("--trials", trials, "instances per suite")->capture_default_str();
  selftest->add_flag("--force-bug", force_bug, "inject a known fault")->group("");

  try {
    app.parse(argc, argv);
  } catch (CLI::ParseError const& e) {
    auto const code = app.exit(e);
    return code == 0 ? 0 : exit_input;
  }

  try {
    if (*analyze) return cmd_analyze(o, path, s_opt, t_opt);
    if (*check) return cmd_check(o, path, theorem, s, t);
    if (*scheme) return cmd_scheme(o, source, action);
    return cmd_selftest(o, d_max, trials, force_bug);
  } catch (spectralpath::ParseError const& e) {
    return input_error(o, e.what(), e.line);
  } catch (spectralpath::NegativeEntryError const& e) {
    return input_error(o, e.what());
  } catch (spectralpath::SchemeViolation const& e) {
    std::string w = e.what();
    if (!e.witness.empty()) w += " (witness " + join(e.witness) + ")";
    return input_error(o, w);
  } catch (spectralpath::PreconditionError const& e) {
    return input_error(o, e.what());
  } catch (spectralpath::DimensionError const& e) {
    return input_error(o, e.what());
  } catch (spectralpath::Error const& e) {
    return numerical_error(o, e.what());
  }
}
