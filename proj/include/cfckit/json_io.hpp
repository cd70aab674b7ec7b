#pragma once

#include <cmath>
#include <string>
#include <vector>

#include <json.hpp>

#include "cfc.hpp"
#include "function.hpp"
#include "laws.hpp"
#include "matrix.hpp"
#include "oracle.hpp"
#include "scalars.hpp"
#include "spectrum.hpp"

namespace cfckit::io {

using nlohmann::json;

inline json scalar_to_json(Scalar z) { return json::array({z.real(), z.imag()}); }

inline Scalar scalar_from_json(const json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    throw ParseError("field '" + field + "': expected [re, im]");
  const double re = j[0].get<double>();
  const double im = j[1].get<double>();
  if (!std::isfinite(re) || !std::isfinite(im)) throw ParseError("field '" + field + "': non-finite value");
  return {re, im};
}

/// {"n": <int>, "entries": [[re, im], ...]} row-major.
inline json matrix_to_json(const ComplexMatrix& m) {
  json entries = json::array();
  for (const auto& z : m.entries()) entries.push_back(scalar_to_json(z));
  return {{"n", m.dim()}, {"entries", std::move(entries)}};
}

inline ComplexMatrix matrix_from_json(const json& j) {
  if (!j.is_object()) throw ParseError("matrix: expected an object with 'n' and 'entries'");
  if (!j.contains("n") || !j["n"].is_number_integer()) throw ParseError("field 'n': expected an integer");
  const auto n = j["n"].get<long long>();
  if (n <= 0) throw ParseError("field 'n': dimension must be positive");
  if (!j.contains("entries") || !j["entries"].is_array()) throw ParseError("field 'entries': expected an array");
  const auto& e = j["entries"];
  const auto count = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  if (e.size() != count)
    throw ParseError("field 'entries': expected " + std::to_string(count) + " entries, got " +
                     std::to_string(e.size()));
  std::vector<Scalar> values;
  values.reserve(count);
  for (std::size_t k = 0; k < count; ++k) values.push_back(scalar_from_json(e[k], "entries[" + std::to_string(k) + "]"));
  return ComplexMatrix(static_cast<std::size_t>(n), std::move(values));
}

/// A basis file is either an array of matrices or {"basis": [...]}.
inline std::vector<ComplexMatrix> matrices_from_json(const json& j) {
  const json* arr = &j;
  if (j.is_object()) {
    if (!j.contains("basis")) throw ParseError("field 'basis': expected an array of matrices");
    arr = &j["basis"];
  }
  if (!arr->is_array()) throw ParseError("field 'basis': expected an array of matrices");
  std::vector<ComplexMatrix> out;
  for (const auto& m : *arr) out.push_back(matrix_from_json(m));
  return out;
}

inline Ring ring_from_json_string(const std::string& s) {
  if (auto r = ring_from_string(s)) return *r;
  throw ParseError("ring: expected one of complex, real, nnreal (got '" + s + "')");
}

/**
 * {"builtin": name [, "k": int | "t": real]} | {"poly": [[re, im], ...]}
 * | {"poly2": [[k, m, re, im], ...]}
 */
inline ScalarFunction function_from_json(const json& j, Ring ring) {
  if (!j.is_object()) throw ParseError("fn: expected an object");
  if (j.contains("builtin")) {
    if (!j["builtin"].is_string()) throw ParseError("field 'builtin': expected a string");
    const auto name = j["builtin"].get<std::string>();
    const auto kind = builtin_from_string(name);
    if (!kind) throw ParseError("field 'builtin': unknown function '" + name + "'");
    double param = 0.0;
    if (*kind == Builtin::Pow) {
      if (!j.contains("k") || !j["k"].is_number_integer()) throw ParseError("field 'k': pow needs an integer k");
      param = static_cast<double>(j["k"].get<long long>());
    } else if (*kind == Builtin::Rpow) {
      if (!j.contains("t") || !j["t"].is_number()) throw ParseError("field 't': rpow needs a real t");
      param = j["t"].get<double>();
    }
    return builtin(*kind, ring, param);
  }
  if (j.contains("poly")) {
    if (!j["poly"].is_array()) throw ParseError("field 'poly': expected an array of [re, im]");
    std::vector<Scalar> coeffs;
    for (std::size_t k = 0; k < j["poly"].size(); ++k)
      coeffs.push_back(scalar_from_json(j["poly"][k], "poly[" + std::to_string(k) + "]"));
    return StarPolynomial::in_z(coeffs).as_function(ring, "poly");
  }
  if (j.contains("poly2")) {
    if (!j["poly2"].is_array()) throw ParseError("field 'poly2': expected an array of [k, m, re, im]");
    StarPolynomial p;
    for (std::size_t t = 0; t < j["poly2"].size(); ++t) {
      const auto& term = j["poly2"][t];
      const std::string field = "poly2[" + std::to_string(t) + "]";
      if (!term.is_array() || term.size() != 4 || !term[0].is_number_unsigned() || !term[1].is_number_unsigned() ||
          !term[2].is_number() || !term[3].is_number())
        throw ParseError("field '" + field + "': expected [k, m, re, im] with k, m >= 0");
      p.add_term(term[0].get<unsigned>(), term[1].get<unsigned>(), {term[2].get<double>(), term[3].get<double>()});
    }
    return p.as_function(ring, "poly2");
  }
  throw ParseError("fn: expected one of 'builtin', 'poly', 'poly2'");
}

inline json outcome_to_json(const CfcOutcome& o) {
  json j = {{"junk", o.junk},
            {"reason", o.reason ? json(std::string(to_string(*o.reason))) : json(nullptr)},
            {"matrix", matrix_to_json(o.value)}};
  if (o.range) j["range"] = {{"contained", o.range->contained}, {"residual", o.range->residual}};
  return j;
}

inline json spectrum_to_json(const SpectrumResult& s) {
  json points = json::array();
  for (Scalar z : s.points.points) points.push_back(scalar_to_json(z));
  return {{"ring", std::string(to_string(s.ring))},
          {"points", std::move(points)},
          {"multiplicities", s.points.multiplicities},
          {"source", std::string(to_string(s.source))}};
}

inline json law_report_to_json(const LawReport& r) {
  json laws = json::array();
  for (const auto& e : r.entries) {
    json entry = {{"name", e.name}, {"status", std::string(to_string(e.status))}, {"tolerance", e.tolerance}};
    entry["residual"] = std::isfinite(e.residual) ? json(e.residual) : json(nullptr);
    if (!e.note.empty()) entry["note"] = e.note;
    laws.push_back(std::move(entry));
  }
  return {{"laws", std::move(laws)}, {"all_passed", r.all_passed()}};
}

}  // namespace cfckit::io
