#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "hsum/complex.hpp"
#include "hsum/continuation.hpp"
#include "hsum/error.hpp"
#include "hsum/exact_eval.hpp"
#include "hsum/expr.hpp"
#include "hsum/index.hpp"
#include "hsum/rational.hpp"

namespace hsum {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "hsum/1";

/// Wraps a payload with the schema tag and a kind discriminator.
inline Json envelope(const std::string& kind, Json payload) {
  Json j;
  j["schema"] = kSchema;
  j["kind"] = kind;
  j["result"] = std::move(payload);
  return j;
}

/// Strips and checks the envelope.
inline const Json& open_envelope(const Json& j, const std::string& kind) {
  if (!j.is_object() || j.value("schema", "") != kSchema)
    throw UsageError(std::string("JSON payload lacks schema '") + kSchema + "'");
  if (j.value("kind", "") != kind) throw UsageError("JSON payload is not a '" + kind + "'");
  return j.at("result");
}

// --- expressions -----------------------------------------------------------

inline Json to_json(const HarmonicExpr& e) {
  Json terms = Json::array();
  for (const auto& [k, c] : e.terms()) {
    Json t;
    t["coeff"] = to_string(c);
    Json consts = Json::array();
    for (const auto& [sym, pw] : k.constants) consts.push_back({{"sym", sym}, {"power", pw}});
    t["constants"] = std::move(consts);
    if (k.sums.size() == 1)
      t["sum"] = k.sums.front().str();
    else
      t["sum"] = nullptr;
    if (k.sums.size() > 1) {
      Json s = Json::array();
      for (const auto& v : k.sums) s.push_back(v.str());
      t["sums"] = std::move(s);
    }
    terms.push_back(std::move(t));
  }
  return terms;
}

inline HarmonicExpr expr_from_json(const Json& terms) {
  if (!terms.is_array()) throw UsageError("expression JSON must be an array of terms");
  HarmonicExpr e;
  for (const auto& t : terms) {
    TermKey k;
    for (const auto& c : t.at("constants")) {
      const std::string sym = c.at("sym").get<std::string>();
      if (!is_known_constant(sym)) throw UsageError("unknown constant '" + sym + "'");
      k.constants[sym] += c.at("power").get<unsigned>();
    }
    if (t.contains("sums"))
      for (const auto& s : t.at("sums")) k.sums.push_back(IndexVector::parse(s.get<std::string>()));
    else if (!t.at("sum").is_null())
      k.sums.push_back(IndexVector::parse(t.at("sum").get<std::string>()));
    e.add_term(std::move(k), parse_rational(t.at("coeff").get<std::string>()));
  }
  return e;
}

// --- index lists ----------------------------------------------------------

inline Json to_json(const std::vector<IndexVector>& list) {
  Json a = Json::array();
  for (const auto& v : list) a.push_back(v.str());
  return a;
}

inline std::vector<IndexVector> index_list_from_json(const Json& a) {
  std::vector<IndexVector> out;
  for (const auto& s : a) out.push_back(IndexVector::parse(s.get<std::string>()));
  return out;
}

// --- numbers ----------------------------------------------------------------

/// Floats are written as decimal strings with their precision annotated.
inline Json real_to_json(long double x, int digits, long double error = -1) {
  Json j;
  j["value"] = format_real(x, digits);
  j["digits"] = digits;
  if (error >= 0) j["error_estimate"] = format_real(error, 3);
  return j;
}

inline Json complex_to_json(ComplexValue z, int digits, double error = -1) {
  Json j;
  j["re"] = format_real(z.real(), digits);
  j["im"] = format_real(z.imag(), digits);
  j["digits"] = digits;
  if (error >= 0) j["error_estimate"] = format_real(error, 3);
  return j;
}

inline ComplexValue complex_from_json(const Json& j) {
  return {std::stod(j.at("re").get<std::string>()), std::stod(j.at("im").get<std::string>())};
}

inline Json to_json(const LimitResult& r, int digits) {
  Json j;
  j["kind"] = r.finite() ? "finite" : "divergent";
  if (r.finite()) {
    j["value"] = format_real(r.value, digits);
    j["error_estimate"] = format_real(r.error_estimate, 3);
    j["digits"] = digits;
  }
  return j;
}

inline LimitResult limit_from_json(const Json& j) {
  LimitResult r;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "divergent") {
    r.kind = LimitResult::Kind::divergent;
    return r;
  }
  if (kind != "finite") throw UsageError("limit kind must be finite or divergent");
  r.value = std::stold(j.at("value").get<std::string>());
  r.error_estimate = std::stold(j.at("error_estimate").get<std::string>());
  return r;
}

// --- tables -----------------------------------------------------------------

inline Json to_json(const std::vector<ReductionRow>& rows) {
  Json a = Json::array();
  for (const auto& r : rows) a.push_back({{"weight", r.weight}, {"sums", r.sums}, {"basis", r.basis}});
  return a;
}

inline std::vector<ReductionRow> table_from_json(const Json& a) {
  std::vector<ReductionRow> out;
  for (const auto& r : a) {
    ReductionRow row;
    row.weight = r.at("weight").get<unsigned>();
    row.sums = r.at("sums").get<std::uint64_t>();
    row.basis = r.at("basis").get<std::uint64_t>();
    out.push_back(row);
  }
  return out;
}

// --- registry ---------------------------------------------------------------

inline Json to_json(const BasicFunction& f) {
  return {{"id", f.id},
          {"weight", f.weight},
          {"numerator", f.numerator},
          {"denominator_sign", f.denominator_sign},
          {"plus_regularized", f.plus_regularized},
          {"support", to_string(f.support)},
          {"designation", f.designation}};
}

inline BasicFunction basic_function_from_json(const Json& j) {
  BasicFunction f;
  f.id = j.at("id").get<std::string>();
  f.weight = j.at("weight").get<unsigned>();
  f.numerator = j.at("numerator").get<std::string>();
  f.denominator_sign = j.at("denominator_sign").get<int>();
  f.plus_regularized = j.at("plus_regularized").get<bool>();
  const std::string s = j.at("support").get<std::string>();
  f.support = s == "continuable" ? Support::continuable : Support::registry_only;
  f.designation = j.at("designation").get<std::string>();
  return f;
}

inline bool operator==(const BasicFunction& a, const BasicFunction& b) {
  return a.id == b.id && a.weight == b.weight && a.numerator == b.numerator &&
         a.denominator_sign == b.denominator_sign && a.plus_regularized == b.plus_regularized &&
         a.support == b.support && a.designation == b.designation;
}

}  // namespace hsum
