#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

#include "cfc.hpp"
#include "oracle.hpp"
#include "predicates.hpp"
#include "spectrum.hpp"
#include "subalgebra.hpp"

namespace cfckit {

enum class LawStatus { Pass, Fail, Skipped };

inline std::string_view to_string(LawStatus s) {
  switch (s) {
    case LawStatus::Pass:
      return "pass";
    case LawStatus::Fail:
      return "fail";
    case LawStatus::Skipped:
      return "skipped";
  }
  return "skipped";
}

struct LawEntry {
  std::string name;
  LawStatus status = LawStatus::Skipped;
  double residual = 0.0;
  double tolerance = 0.0;
  std::string note;
};

struct LawReport {
  std::vector<LawEntry> entries;

  bool all_passed() const {
    return std::none_of(entries.begin(), entries.end(),
                        [](const LawEntry& e) { return e.status == LawStatus::Fail; });
  }

  const LawEntry* find(std::string_view name) const {
    for (const auto& e : entries)
      if (e.name == name) return &e;
    return nullptr;
  }
};

/// Thresholds for each law; all residuals are relative unless noted.
struct LawThresholds {
  double homomorphism = 1e-9;  // add, mul, star, const, id
  double spectral_mapping = 1e-8;
  double composition = 1e-8;
  double oracle = 1e-8;
  double isometry = 1e-9;
  double range = 1e-8;
  double transport = 1e-8;
};

namespace detail {

inline double rel(const ComplexMatrix& diff, double scale) {
  return operator_norm(diff) / std::max(scale, kEpsFloor);
}

class LawRecorder {
 public:
  void record(std::string name, double residual, double tol, std::string note = {}) {
    const bool ok = residual <= tol;
    report.entries.push_back({std::move(name), ok ? LawStatus::Pass : LawStatus::Fail, residual, tol,
                              std::move(note)});
  }
  void skip(std::string name, std::string note) {
    report.entries.push_back({std::move(name), LawStatus::Skipped, 0.0, 0.0, std::move(note)});
  }
  LawReport report;
};

}  // namespace detail

/// Names of every law check_laws reports, in report order.
inline const std::vector<std::string>& law_names() {
  static const std::vector<std::string> names = {
      "junk_totality", "id",          "const",       "add",          "mul",
      "star",          "congruence",  "predicate",   "spectral_mapping",
      "composition",   "isometry",    "range",       "oracle",       "nonunital_compat",
      "neg_transport", "star_transport"};
  return names;
}

/**
 * Evaluates the calculus laws for one element and two functions. Laws whose
 * hypotheses fail (the element is outside the ring's domain, or a function
 * is undefined on the spectrum) are reported as skipped.
 */
inline LawReport check_laws(const ComplexMatrix& a, const ScalarFunction& f, const ScalarFunction& g,
                            Ring ring, const Tolerances& tols, const LawThresholds& th = {}) {
  detail::LawRecorder rec;
  const std::size_t n = a.dim();
  const double tol = tols.tol;

  // Junk totality: every call returns and junk means the exact zero matrix.
  {
    bool ok = true;
    auto probe = [&](const CfcOutcome& o) {
      if (o.junk && !(o.value == ComplexMatrix(n))) ok = false;
    };
    probe(cfc(f, a, ring, tols));
    probe(cfc(g, a, ring, tols));
    probe(cfc_n(fn::sum(f, fn::constant(1.0, ring)), a, ring, tols));
    probe(cfc(builtin(Builtin::Log, ring), a, ring, tols));
    probe(cfc(f, a, Ring::NNReal, tols));
    rec.record("junk_totality", ok ? 0.0 : 1.0, 0.0);
  }

  std::optional<PreparedElement> p;
  std::string why;
  try {
    p = prepare(a, ring, tols);
  } catch (const Error& e) {
    why = e.what();
  }
  if (!p) {
    for (std::size_t i = 1; i < law_names().size(); ++i) rec.skip(law_names()[i], "predicate: " + why);
    return rec.report;
  }

  const double na = p->norm;
  const ComplexMatrix eye = ComplexMatrix::identity(n);

  // id and const only need the element.
  rec.record("id", detail::rel(cfc(fn::identity(ring), *p).value - a, na), th.homomorphism);
  const Scalar c = ring == Ring::Complex ? Scalar(0.75, -1.25) : Scalar(1.5, 0.0);
  rec.record("const", detail::rel(cfc(fn::constant(c, ring), *p).value - c * eye, std::abs(c)),
             th.homomorphism);

  const auto cf = cfc(f, *p);
  const auto cg = cfc(g, *p);
  const std::vector<std::string> need_fg = {"add", "mul", "star", "congruence", "predicate",
                                            "spectral_mapping", "composition", "isometry",
                                            "range", "oracle", "nonunital_compat",
                                            "neg_transport", "star_transport"};
  if (cf.junk || cg.junk) {
    for (const auto& name : need_fg) rec.skip(name, "function undefined on the spectrum");
    return rec.report;
  }
  const double nf = operator_norm(cf.value);
  const double ng = operator_norm(cg.value);

  rec.record("add", detail::rel(cfc(fn::sum(f, g), *p).value - cf.value - cg.value, nf + ng),
             th.homomorphism);
  rec.record("mul", detail::rel(cfc(fn::product(f, g), *p).value - cf.value * cg.value, nf * ng),
             th.homomorphism);
  rec.record("star", detail::rel(cfc(fn::conjugate(f), *p).value - adjoint(cf.value), nf),
             th.homomorphism);

  // f values on the spectrum.
  std::vector<Scalar> fvals;
  for (Scalar x : p->spectrum.points) fvals.push_back(detail::settle_output(*f(x), ring, tol).value());
  double fmax = 0.0;
  for (Scalar v : fvals) fmax = std::max(fmax, std::abs(v));

  // Congruence: a function agreeing with f on the spectrum gives the same
  // value; bumping f at one spectral point changes the value by the bump.
  {
    const auto pts = p->spectrum.points;
    ScalarFunction agree{ring,
                         [f, pts](Scalar z) -> std::optional<Scalar> {
                           auto v = f(z);
                           if (!v) return std::nullopt;
                           Scalar q{1.0};
                           for (Scalar x : pts) q *= (z - x);
                           return *v + 0.5 * q;
                         },
                         "agree"};
    const double forward = detail::rel(cfc(agree, *p).value - cf.value, std::max(nf, 1.0));
    const Scalar target = pts.back();
    ScalarFunction bumped{ring,
                          [f, target](Scalar z) -> std::optional<Scalar> {
                            auto v = f(z);
                            if (!v) return std::nullopt;
                            return z == target ? *v + 1.0 : *v;
                          },
                          "bumped"};
    const double converse = std::abs(operator_norm(cfc(bumped, *p).value - cf.value) - 1.0);
    rec.record("congruence", std::max(forward, converse), th.homomorphism);
  }

  rec.record("predicate", ring_predicate(cf.value, ring, tol).residual, tol);

  // Spectral mapping: sigma(f(a)) = f(sigma(a)).
  try {
    const auto sf = spectrum(cf.value, ring, tols);
    const double scale = std::max(diameter(fvals), fmax);
    rec.record("spectral_mapping", hausdorff_distance(sf.points.points, fvals) / std::max(scale, kEpsFloor),
               th.spectral_mapping);
  } catch (const Error& e) {
    rec.record("spectral_mapping", std::numeric_limits<double>::infinity(), th.spectral_mapping, e.what());
  }

  // Composition: cfc(g . f, a) = cfc(g, cfc(f, a)).
  {
    const auto lhs = cfc(fn::compose(g, f), *p);
    const auto rhs = cfc(g, cf.value, ring, tols);
    if (lhs.junk || rhs.junk) {
      rec.skip("composition", "g undefined on f(spectrum)");
    } else {
      rec.record("composition", detail::rel(lhs.value - rhs.value, std::max(1.0, operator_norm(lhs.value))),
                 th.composition);
    }
  }

  // Isometry: ||f(a)|| = max |f| on the spectrum, and |f(x)| <= ||f(a)||.
  {
    double pointwise = 0.0;
    for (Scalar v : fvals) pointwise = std::max(pointwise, std::abs(v) - nf);
    const double iso = std::abs(nf - fmax) / std::max(fmax, kEpsFloor);
    rec.record("isometry", std::max(iso, pointwise > th.isometry ? pointwise : 0.0), th.isometry);
  }

  // Range: f(a) lies in the unital star-algebra generated by a.
  {
    const auto b = elemental_subalgebra(a, true, tol);
    if (b.dim() < p->spectrum.size()) {
      rec.skip("range", "generated algebra lost rank (spectral points too close)");
    } else {
      rec.record("range", subalgebra_contains(b, cf.value, th.range).residual, th.range);
    }
  }

  // Uniqueness oracle.
  {
    const auto o = cfc_oracle(f, a, ring, tols);
    if (o.skipped) {
      rec.skip("oracle", o.skip_reason);
    } else {
      rec.record("oracle", operator_norm(*o.value - cf.value) / (1.0 + fmax), th.oracle);
    }
  }

  // Non-unital calculus agrees with the unital one once f(0) = 0.
  {
    const auto f0 = f(Scalar{});
    if (!f0) {
      rec.skip("nonunital_compat", "f undefined at 0");
    } else {
      const Scalar shift = *f0;
      ScalarFunction h{ring,
                       [f, shift](Scalar z) -> std::optional<Scalar> {
                         auto v = f(z);
                         if (!v) return std::nullopt;
                         return *v - shift;
                       },
                       "f-f(0)"};
      const auto un = cfc(h, *p);
      const auto nu = cfc_n(h, a, ring, tols);
      if (un.junk || nu.junk) {
        rec.skip("nonunital_compat", "shifted function leaves the ring");
      } else {
        rec.record("nonunital_compat", detail::rel(un.value - nu.value, std::max(1.0, operator_norm(un.value))),
                   th.transport);
      }
    }
  }

  // cfc(f, -a) = cfc(x -> f(-x), a); not meaningful over NNReal.
  if (ring == Ring::NNReal) {
    rec.skip("neg_transport", "-a is not nonnegative");
  } else {
    const auto lhs = cfc(f, -a, ring, tols);
    const auto rhs = cfc(fn::negate_argument(f), *p);
    rec.record("neg_transport", detail::rel(lhs.value - rhs.value, std::max(1.0, nf)), th.transport,
               lhs.junk || rhs.junk ? "junk" : "");
  }

  // cfc(f, a*) = cfc(x -> f(conj x), a).
  {
    const auto lhs = cfc(f, adjoint(a), ring, tols);
    const auto rhs = cfc(fn::conj_argument(f), *p);
    rec.record("star_transport", detail::rel(lhs.value - rhs.value, std::max(1.0, nf)), th.transport,
               lhs.junk || rhs.junk ? "junk" : "");
  }
  return rec.report;
}

inline LawReport check_laws(const ComplexMatrix& a, const ScalarFunction& f, const ScalarFunction& g,
                            Ring ring, double tol = kDefaultTol, const LawThresholds& th = {}) {
  return check_laws(a, f, g, ring, Tolerances{tol, std::nullopt}, th);
}

}  // namespace cfckit
