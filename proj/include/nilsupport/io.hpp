#pragma once

// JSON and CSV forms of fields, matrices, tuples, module trees and reports.
// Matrices are flat row-major integer lists of element codes. Key order is fixed
// so equal inputs serialize to identical bytes.

#include <cstddef>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "nilsupport/dsl.hpp"
#include "nilsupport/error.hpp"
#include "nilsupport/field.hpp"
#include "nilsupport/liealg.hpp"
#include "nilsupport/module_expr.hpp"
#include "nilsupport/repcore.hpp"
#include "nilsupport/support.hpp"
#include "nilsupport/verify.hpp"

namespace nilsupport {

using Json = nlohmann::ordered_json;

/// Parses JSON text; syntax errors become ParseError with a 1-based offset.
inline Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what(), e.byte == 0 ? 1 : e.byte);
  }
}

namespace detail {

inline const Json& require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw SchemaError(std::string("missing key '") + key + "'");
  return j.at(key);
}

inline std::uint64_t require_uint(const Json& j, const char* key) {
  const Json& v = require(j, key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
    throw SchemaError(std::string("key '") + key + "' must be a natural number");
  return v.get<std::uint64_t>();
}

}  // namespace detail

inline Json to_json(const FieldSpec& f) {
  Json j;
  j["p"] = f.p;
  j["m"] = f.m;
  j["modulus"] = f.m == 1 ? std::vector<std::uint32_t>{} : f.modulus;
  return j;
}

inline FieldSpec field_spec_from_json(const Json& j) {
  FieldSpec f;
  f.p = static_cast<std::uint32_t>(detail::require_uint(j, "p"));
  f.m = j.contains("m") ? static_cast<std::uint32_t>(detail::require_uint(j, "m")) : 1;
  if (j.contains("modulus")) {
    if (!j.at("modulus").is_array()) throw SchemaError("modulus must be an array");
    for (const auto& c : j.at("modulus")) {
      if (!c.is_number_integer() || c.get<std::int64_t>() < 0) throw SchemaError("modulus entries must be naturals");
      f.modulus.push_back(c.get<std::uint32_t>());
    }
  }
  return f;
}

inline Json to_json(const Matrix& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) a.push_back(m(i, j));
  return a;
}

inline Matrix matrix_from_json(const Json& a, const FieldPtr& field, std::size_t rows, std::size_t cols) {
  if (!a.is_array() || a.size() != rows * cols)
    throw SchemaError("matrix must be a list of " + std::to_string(rows * cols) + " integers");
  Matrix m(ScalarRing(field), rows, cols);
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (!a[k].is_number_integer()) throw SchemaError("matrix entries must be integers");
    const std::int64_t v = a[k].get<std::int64_t>();
    if (v < 0 || v >= static_cast<std::int64_t>(field->q()))
      throw SchemaError("matrix entry " + std::to_string(v) + " is not a field element code");
    m(k / cols, k % cols) = static_cast<Elem>(v);
  }
  return m;
}

inline Json to_json(const NilTuple& b) {
  Json j;
  j["n"] = b.n();
  j["r"] = b.r();
  j["field"] = to_json(b.field()->spec());
  Json mats = Json::array();
  for (const auto& m : b.mats()) mats.push_back(to_json(m));
  j["mats"] = std::move(mats);
  return j;
}

/// Validates shape and the commuting p-nilpotent equations (InvalidTuple).
inline NilTuple tuple_from_json(const Json& j) {
  const std::size_t n = detail::require_uint(j, "n");
  const std::size_t r = detail::require_uint(j, "r");
  const FieldPtr field = make_field(field_spec_from_json(detail::require(j, "field")));
  const Json& mats = detail::require(j, "mats");
  if (!mats.is_array() || mats.size() != r) throw SchemaError("mats must hold r matrices");
  std::vector<Matrix> ms;
  for (const auto& m : mats) ms.push_back(matrix_from_json(m, field, n, n));
  return NilTuple(field, n, std::move(ms));
}

inline Json to_json(const ModuleExpr& e) {
  Json j;
  switch (e.op()) {
    case ModuleOp::Triv: j["op"] = "triv"; break;
    case ModuleOp::Def: j["op"] = "def"; j["n"] = e.param(); break;
    case ModuleOp::Ad: j["op"] = "ad"; j["n"] = e.param(); break;
    case ModuleOp::Dual: j["op"] = "dual"; j["arg"] = to_json(e.child(0)); break;
    case ModuleOp::Sum:
    case ModuleOp::Tensor:
      j["op"] = e.op() == ModuleOp::Sum ? "sum" : "ten";
      j["left"] = to_json(e.child(0));
      j["right"] = to_json(e.child(1));
      break;
    case ModuleOp::Sym:
    case ModuleOp::Ext:
      j["op"] = e.op() == ModuleOp::Sym ? "sym" : "ext";
      j["d"] = e.param();
      j["arg"] = to_json(e.child(0));
      break;
    case ModuleOp::Twist: j["op"] = "tw"; j["r"] = e.param(); j["arg"] = to_json(e.child(0)); break;
  }
  return j;
}

inline ModuleExpr module_from_json(const Json& j) {
  const Json& opj = detail::require(j, "op");
  if (!opj.is_string()) throw SchemaError("op must be a string");
  const std::string op = opj.get<std::string>();
  if (op == "triv") return ModuleExpr::triv();
  if (op == "def") return ModuleExpr::def(detail::require_uint(j, "n"));
  if (op == "ad") return ModuleExpr::ad(detail::require_uint(j, "n"));
  if (op == "dual") return ModuleExpr::dual(module_from_json(detail::require(j, "arg")));
  if (op == "sum")
    return ModuleExpr::sum(module_from_json(detail::require(j, "left")), module_from_json(detail::require(j, "right")));
  if (op == "ten")
    return ModuleExpr::tensor(module_from_json(detail::require(j, "left")),
                              module_from_json(detail::require(j, "right")));
  if (op == "sym") return ModuleExpr::sym(detail::require_uint(j, "d"), module_from_json(detail::require(j, "arg")));
  if (op == "ext") return ModuleExpr::ext(detail::require_uint(j, "d"), module_from_json(detail::require(j, "arg")));
  if (op == "tw") return ModuleExpr::twist(module_from_json(detail::require(j, "arg")), detail::require_uint(j, "r"));
  throw SchemaError("unknown module op '" + op + "'");
}

inline Json to_json(const JordanType& jt) { return Json(jt.parts); }

inline Json to_json(const WeightTable& w) {
  Json a = Json::array();
  for (const auto& [weight, mult] : w.entries) {
    Json e;
    e["weight"] = weight;
    e["multiplicity"] = mult;
    a.push_back(std::move(e));
  }
  return a;
}

inline Json to_json(const SupportReport& rep) {
  Json j;
  j["module"] = to_dsl(rep.module);
  j["field"] = to_json(rep.field->spec());
  Json scope;
  scope["kind"] = rep.scope.kind;
  Json params = Json::object();
  for (const auto& [k, v] : rep.scope.params) params[k] = v;
  scope["params"] = std::move(params);
  j["scope"] = std::move(scope);
  Json rows = Json::array();
  for (const auto& row : rep.rows) {
    Json rj;
    rj["tuple"] = to_json(row.tuple);
    rj["jordan_type"] = to_json(row.jordan);
    rj["in_support"] = row.in_support;
    rows.push_back(std::move(rj));
  }
  j["rows"] = std::move(rows);
  Json summary;
  summary["total"] = rep.rows.size();
  summary["in_support_count"] = rep.in_support_count();
  j["summary"] = std::move(summary);
  return j;
}

/// Space-separated row-major entries, matrices separated by '|'.
inline std::string tuple_to_flat(const NilTuple& b) {
  std::string s;
  for (std::size_t k = 0; k < b.r(); ++k) {
    if (k) s += '|';
    const Matrix& m = b[k];
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = 0; j < m.cols(); ++j) {
        if (i || j) s += ' ';
        s += std::to_string(m(i, j));
      }
  }
  return s;
}

inline std::string to_csv(const SupportReport& rep) {
  std::ostringstream out;
  out << "index,tuple,jordan_type,in_support\n";
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    const auto& row = rep.rows[i];
    std::string jt;
    for (std::size_t k = 0; k < row.jordan.parts.size(); ++k) jt += (k ? " " : "") + std::to_string(row.jordan.parts[k]);
    out << i << ',' << tuple_to_flat(row.tuple) << ',' << jt << ',' << (row.in_support ? "true" : "false") << '\n';
  }
  return out.str();
}

inline std::string tuples_to_csv(const std::vector<NilTuple>& tuples) {
  std::ostringstream out;
  out << "index,tuple\n";
  for (std::size_t i = 0; i < tuples.size(); ++i) out << i << ',' << tuple_to_flat(tuples[i]) << '\n';
  return out.str();
}

inline Json to_json(const VerifyReport& rep) {
  Json j;
  j["grid"] = rep.grid;
  j["seed"] = rep.seed;
  Json cells = Json::array();
  for (const auto& c : rep.cells) {
    Json cj;
    cj["p"] = c.p;
    cj["n"] = c.n;
    cj["r"] = c.r;
    cj["tuples"] = c.tuples;
    cells.push_back(std::move(cj));
  }
  j["cells"] = std::move(cells);
  j["modules"] = rep.modules;
  Json items = Json::array();
  for (const auto& it : rep.items) {
    Json ij;
    ij["item"] = it.item;
    ij["passed"] = it.passed;
    ij["checks"] = it.checks;
    ij["skipped"] = it.skipped;
    if (it.counterexample) {
      Json cx;
      cx["modules"] = it.counterexample->modules;
      cx["tuple"] = it.counterexample->tuple ? to_json(*it.counterexample->tuple) : Json(nullptr);
      cx["detail"] = it.counterexample->detail;
      ij["counterexample"] = std::move(cx);
    } else {
      ij["counterexample"] = nullptr;
    }
    items.push_back(std::move(ij));
  }
  j["items"] = std::move(items);
  j["all_passed"] = rep.all_passed();
  return j;
}

inline std::string to_csv(const VerifyReport& rep) {
  std::ostringstream out;
  out << "item,passed,checks,skipped,counterexample\n";
  for (const auto& it : rep.items) {
    std::string cx;
    if (it.counterexample) {
      cx = it.counterexample->modules + " / " +
           (it.counterexample->tuple ? tuple_to_flat(*it.counterexample->tuple) : std::string("-")) + " / " +
           it.counterexample->detail;
      for (char& c : cx)
        if (c == ',') c = ' ';
    }
    out << it.item << ',' << (it.passed ? "true" : "false") << ',' << it.checks << ',' << it.skipped << ',' << cx
        << '\n';
  }
  return out.str();
}

}  // namespace nilsupport
