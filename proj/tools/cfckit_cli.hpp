#pragma once

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cfckit/cfckit.hpp"
#include "cfckit/json_io.hpp"

namespace cfckit::cli {

using io::json;

/// Exit codes: 0 success (junk outcomes included), 1 I/O or parse error,
/// 2 law-check failure.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitLawFailure = 2;

struct Options {
  std::string matrix;
  std::string basis;
  std::string fn;
  std::string ring = "complex";
  std::optional<double> tol;
  std::optional<double> cluster_tol;
  int trials = 10;
  std::uint64_t seed = 0;
  std::string out;
};

namespace detail {

inline json read_json_file(const std::string& path, const std::string& flag) {
  std::ifstream in(path);
  if (!in) throw ParseError(flag + ": cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(flag + ": malformed JSON in '" + path + "': " + e.what());
  }
}

inline json parse_inline_json(const std::string& text, const std::string& flag) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(flag + ": malformed JSON: " + e.what());
  }
}

inline double default_tol() {
  if (const char* env = std::getenv("CFCKIT_TOL")) {
    try {
      std::size_t used = 0;
      const double v = std::stod(env, &used);
      if (used == std::string(env).size() && v >= 0.0) return v;
    } catch (const std::exception&) {
    }
    throw ParseError("CFCKIT_TOL: expected a nonnegative number");
  }
  return kDefaultTol;
}

inline Tolerances tolerances(const Options& o) {
  Tolerances t;
  t.tol = o.tol.value_or(default_tol());
  if (t.tol < 0.0) throw ParseError("--tol: must be nonnegative");
  t.cluster_tol = o.cluster_tol;
  return t;
}

inline ComplexMatrix load_matrix(const Options& o) {
  if (o.matrix.empty()) throw ParseError("--matrix: required");
  return io::matrix_from_json(read_json_file(o.matrix, "--matrix"));
}

inline ScalarFunction load_function(const Options& o, Ring ring) {
  if (o.fn.empty()) throw ParseError("--fn: required");
  return io::function_from_json(parse_inline_json(o.fn, "--fn"), ring);
}

inline std::optional<StarSubalgebra> load_basis(const Options& o, std::size_t n, double tol) {
  if (o.basis.empty()) return std::nullopt;
  const auto mats = io::matrices_from_json(read_json_file(o.basis, "--basis"));
  for (const auto& m : mats)
    if (m.dim() != n) throw ParseError("--basis: basis matrices must match the --matrix dimension");
  return StarSubalgebra::spanned_by(n, mats, false, tol);
}

inline void emit(const json& j, const Options& o, std::ostream& out) {
  const std::string text = j.dump(2) + "\n";
  if (o.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw ParseError("--out: cannot write '" + o.out + "'");
  f << text;
}

struct LawAggregate {
  std::size_t passed = 0;
  std::size_t failed = 0;
  std::size_t skipped = 0;
  double max_residual = 0.0;
  double tolerance = 0.0;
};

inline int check_laws_verb(const Options& o, std::ostream& out, std::ostream& err) {
  const Ring ring = io::ring_from_json_string(o.ring);
  const auto a = load_matrix(o);
  const auto tols = tolerances(o);
  std::optional<ScalarFunction> user_fn;
  if (!o.fn.empty()) user_fn = load_function(o, ring);
  if (o.trials < 1) throw ParseError("--trials: must be at least 1");

  RandomSource rs(o.seed);
  std::map<std::string, LawAggregate> agg;
  for (int t = 0; t < o.trials; ++t) {
    const ScalarFunction f = user_fn ? *user_fn : rs.function(ring);
    const ScalarFunction g = rs.function(ring);
    const auto report = check_laws(a, f, g, ring, tols);
    for (const auto& e : report.entries) {
      auto& s = agg[e.name];
      s.tolerance = e.tolerance > 0.0 ? e.tolerance : s.tolerance;
      switch (e.status) {
        case LawStatus::Pass:
          ++s.passed;
          s.max_residual = std::max(s.max_residual, e.residual);
          break;
        case LawStatus::Fail:
          ++s.failed;
          s.max_residual = std::max(s.max_residual, e.residual);
          break;
        case LawStatus::Skipped:
          ++s.skipped;
          break;
      }
    }
  }

  bool all_passed = true;
  json laws = json::array();
  err << std::left << std::setw(18) << "law" << std::setw(9) << "status" << std::setw(14) << "max_residual"
      << std::setw(11) << "tolerance" << "pass/fail/skip\n";
  for (const auto& name : law_names()) {
    const auto& s = agg[name];
    const char* status = s.failed > 0 ? "fail" : (s.passed > 0 ? "pass" : "skipped");
    all_passed = all_passed && s.failed == 0;
    laws.push_back({{"name", name},
                    {"status", status},
                    {"max_residual", std::isfinite(s.max_residual) ? json(s.max_residual) : json(nullptr)},
                    {"tolerance", s.tolerance},
                    {"passed", s.passed},
                    {"failed", s.failed},
                    {"skipped", s.skipped}});
    std::ostringstream res;
    res << std::scientific << std::setprecision(2) << s.max_residual;
    std::ostringstream tol;
    tol << std::scientific << std::setprecision(0) << s.tolerance;
    err << std::left << std::setw(18) << name << std::setw(9) << status << std::setw(14) << res.str()
        << std::setw(11) << tol.str() << s.passed << "/" << s.failed << "/" << s.skipped << "\n";
  }
  emit({{"ring", o.ring}, {"trials", o.trials}, {"seed", o.seed}, {"laws", laws}, {"all_passed", all_passed}}, o,
       out);
  return all_passed ? kExitOk : kExitLawFailure;
}

inline int unitize_info_verb(const Options& o, std::ostream& out) {
  const auto a = load_matrix(o);
  const auto tols = tolerances(o);
  const auto x = UnitizationElement::inclusion(a);
  const double norm = uni_norm(x);
  const double norm_map = uni_norm_map(x);
  const double cstar = std::abs(uni_norm(uni_mul(uni_star(x), x)) - norm * norm);
  json j = {{"n", a.dim()},
            {"element", "(0, a)"},
            {"norm", norm},
            {"norm_map", norm_map},
            {"cstar_residual", cstar / std::max(norm * norm, kEpsFloor)},
            {"unit_norm", uni_norm(UnitizationElement::unit(a.dim()))}};
  try {
    j["quasispectrum"] = io::spectrum_to_json(quasispectrum_via_unitization(a, Ring::Complex, tols));
  } catch (const PredicateFailure&) {
    j["quasispectrum"] = nullptr;
  }
  emit(j, o, out);
  return kExitOk;
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Continuous functional calculus on complex matrices", "cfckit"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--matrix", o.matrix, "Matrix JSON file {\"n\":..,\"entries\":[[re,im],..]}");
    sub->add_option("--basis", o.basis, "JSON array of matrices spanning a star-subalgebra");
    sub->add_option("--fn", o.fn, "Function spec JSON, e.g. {\"builtin\":\"sqrt\"}");
    sub->add_option("--ring", o.ring, "Scalar ring: complex, real or nnreal");
    sub->add_option("--tol", o.tol, "Predicate/restriction tolerance (default 1e-9, env CFCKIT_TOL)");
    sub->add_option("--cluster-tol", o.cluster_tol, "Absolute eigenvalue cluster tolerance");
    sub->add_option("--trials", o.trials, "Random trials for check-laws");
    sub->add_option("--seed", o.seed, "Seed for check-laws");
    sub->add_option("--out", o.out, "Write JSON here instead of stdout");
  };
  CLI::App* apply = app.add_subcommand("apply", "cfc f a with junk semantics");
  CLI::App* apply_n = app.add_subcommand("apply-n", "non-unital cfc_n f a");
  CLI::App* spectrum_cmd = app.add_subcommand("spectrum", "spectrum of a over the ring");
  CLI::App* quasi = app.add_subcommand("quasispectrum", "quasispectrum of a (in --basis if given)");
  CLI::App* laws = app.add_subcommand("check-laws", "run the calculus law suite on a");
  CLI::App* uni = app.add_subcommand("unitize-info", "norms and spectrum of (0, a) in the unitization");
  for (auto* sub : {apply, apply_n, spectrum_cmd, quasi, laws, uni}) add_common(sub);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  try {
    const Ring ring = io::ring_from_json_string(o.ring);
    if (apply->parsed()) {
      const auto a = detail::load_matrix(o);
      const auto f = detail::load_function(o, ring);
      detail::emit(io::outcome_to_json(cfc(f, a, ring, detail::tolerances(o))), o, out);
      return kExitOk;
    }
    if (apply_n->parsed()) {
      const auto a = detail::load_matrix(o);
      const auto f = detail::load_function(o, ring);
      const auto tols = detail::tolerances(o);
      const auto b = detail::load_basis(o, a.dim(), tols.tol);
      detail::emit(io::outcome_to_json(cfc_n(f, a, b ? &*b : nullptr, ring, tols)), o, out);
      return kExitOk;
    }
    if (spectrum_cmd->parsed()) {
      const auto a = detail::load_matrix(o);
      detail::emit(io::spectrum_to_json(spectrum(a, ring, detail::tolerances(o))), o, out);
      return kExitOk;
    }
    if (quasi->parsed()) {
      const auto a = detail::load_matrix(o);
      const auto tols = detail::tolerances(o);
      const auto via_unit = quasispectrum_via_unitization(a, ring, tols);
      if (const auto b = detail::load_basis(o, a.dim(), tols.tol)) {
        const auto intrinsic = quasispectrum_intrinsic(*b, a, ring, tols);
        json j = io::spectrum_to_json(intrinsic);
        const double gap = hausdorff_distance(intrinsic.points.points, via_unit.points.points);
        j["unitization_agrees"] = gap <= std::max(intrinsic.points.cluster_tol, kEpsFloor);
        detail::emit(j, o, out);
      } else {
        detail::emit(io::spectrum_to_json(via_unit), o, out);
      }
      return kExitOk;
    }
    if (laws->parsed()) return detail::check_laws_verb(o, out, err);
    if (uni->parsed()) return detail::unitize_info_verb(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}

}  // namespace cfckit::cli
