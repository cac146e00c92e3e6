#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "opineq/linops/expr.hpp"

namespace opineq::io {

using Json = nlohmann::ordered_json;

inline Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

// [re, im] or a plain real number.
inline Complex complex_from_json(const Json& j, const char* what) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw IoError(std::string(what) + ": expected [re, im] or a number");
}

inline Json matrix_to_json(const ComplexMatrix& m) {
  Json data = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index k = 0; k < m.cols(); ++k) data.push_back(complex_to_json(m(i, k)));
  Json j;
  j["rows"] = static_cast<std::size_t>(m.rows());
  j["cols"] = static_cast<std::size_t>(m.cols());
  j["data"] = std::move(data);
  return j;
}

inline ComplexMatrix matrix_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data"))
    throw IoError("matrix: expected an object with rows, cols and data");
  auto count = [](const Json& v) { return v.is_number_unsigned() || (v.is_number_integer() && v.get<long long>() >= 0); };
  if (!count(j["rows"]) || !count(j["cols"]))
    throw IoError("matrix: rows and cols must be nonnegative integers");
  const auto rows = j["rows"].get<std::size_t>();
  const auto cols = j["cols"].get<std::size_t>();
  const Json& data = j["data"];
  if (!data.is_array() || data.size() != rows * cols)
    throw IoError("matrix: data must hold rows*cols = " + std::to_string(rows * cols) + " entries");
  ComplexMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < cols; ++k)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = complex_from_json(data[i * cols + k], "matrix entry");
  require_finite(m, "matrix");
  return m;
}

inline Json rule_to_json(const SequenceRule& r) {
  Json j;
  j["rule"] = r.name();
  switch (r.kind()) {
    case SequenceRule::Kind::constant: j["value"] = complex_to_json(r.value()); break;
    case SequenceRule::Kind::geometric:
      j["first"] = complex_to_json(r.value());
      j["ratio"] = complex_to_json(r.ratio());
      break;
    case SequenceRule::Kind::list: {
      Json v = Json::array();
      for (const Complex& c : r.values()) v.push_back(complex_to_json(c));
      j["values"] = std::move(v);
      j["tail"] = complex_to_json(r.value());
      break;
    }
    case SequenceRule::Kind::custom: throw IoError("sequence rule '" + r.name() + "' has no JSON form");
    default: break;
  }
  return j;
}

inline SequenceRule rule_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("rule") || !j["rule"].is_string())
    throw IoError("sequence rule: expected an object with a string 'rule'");
  const auto name = j["rule"].get<std::string>();
  if (name == "constant") return SequenceRule::constant(complex_from_json(j.value("value", Json(1.0)), "constant"));
  if (name == "dirichlet") return SequenceRule::dirichlet();
  if (name == "bergman") return SequenceRule::bergman();
  if (name == "harmonic") return SequenceRule::harmonic();
  if (name == "geometric")
    return SequenceRule::geometric(complex_from_json(j.at("first"), "geometric first"),
                                   complex_from_json(j.at("ratio"), "geometric ratio"));
  if (name == "list") {
    std::vector<Complex> v;
    for (const auto& x : j.at("values")) v.push_back(complex_from_json(x, "list value"));
    return SequenceRule::list(std::move(v), complex_from_json(j.value("tail", Json(0.0)), "list tail"));
  }
  throw IoError("sequence rule: unknown rule '" + name + "'");
}

inline Json expr_to_json(const OperatorExpr& e) {
  using K = OperatorExpr::Kind;
  Json j;
  auto children = [&] {
    Json c = Json::array();
    for (const auto& x : e.children()) c.push_back(expr_to_json(x));
    return c;
  };
  switch (e.kind()) {
    case K::dense:
      j["kind"] = "dense";
      j["matrix"] = matrix_to_json(e.matrix());
      break;
    case K::weighted_shift:
      j["kind"] = "weighted_shift";
      j["weights"] = rule_to_json(e.rule());
      break;
    case K::diagonal:
      j["kind"] = "diagonal";
      j["entries"] = rule_to_json(e.rule());
      break;
    case K::toeplitz: {
      j["kind"] = "toeplitz";
      const auto& s = e.symbol();
      Json v = Json::array();
      if (s.is_blaschke()) {
        for (const Complex& z : s.zeros()) v.push_back(complex_to_json(z));
        j["blaschke_zeros"] = std::move(v);
        j["unimodular"] = complex_to_json(s.unimodular());
      } else {
        for (const Complex& c : s.polynomial_coeffs()) v.push_back(complex_to_json(c));
        j["coefficients"] = std::move(v);
      }
      break;
    }
    case K::adjoint:
      j["kind"] = "adjoint";
      j["child"] = expr_to_json(e.children().front());
      break;
    case K::scale:
      j["kind"] = "scale";
      j["scalar"] = complex_to_json(e.scalar());
      j["child"] = expr_to_json(e.children().front());
      break;
    case K::sum: j["kind"] = "sum"; j["children"] = children(); break;
    case K::product: j["kind"] = "product"; j["children"] = children(); break;
    case K::direct_sum: j["kind"] = "direct_sum"; j["children"] = children(); break;
    case K::tensor: j["kind"] = "tensor"; j["children"] = children(); break;
  }
  return j;
}

inline OperatorExpr expr_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw IoError("operator: expected an object with a string 'kind'");
  const auto kind = j["kind"].get<std::string>();
  auto kids = [&] {
    if (!j.contains("children") || !j["children"].is_array()) throw IoError(kind + ": missing 'children' array");
    std::vector<OperatorExpr> out;
    for (const auto& c : j["children"]) out.push_back(expr_from_json(c));
    return out;
  };
  auto child = [&]() -> OperatorExpr {
    if (!j.contains("child")) throw IoError(kind + ": missing 'child'");
    return expr_from_json(j["child"]);
  };
  if (kind == "dense") return OperatorExpr::dense(matrix_from_json(j.at("matrix")));
  if (kind == "weighted_shift") return OperatorExpr::weighted_shift(rule_from_json(j.at("weights")));
  if (kind == "shift") return OperatorExpr::shift();
  if (kind == "diagonal") return OperatorExpr::diagonal(rule_from_json(j.at("entries")));
  if (kind == "identity") return OperatorExpr::identity();
  if (kind == "toeplitz") {
    if (j.contains("blaschke_zeros")) {
      std::vector<Complex> zs;
      for (const auto& z : j["blaschke_zeros"]) zs.push_back(complex_from_json(z, "blaschke zero"));
      return OperatorExpr::toeplitz(
          ToeplitzSymbol::blaschke(std::move(zs), complex_from_json(j.value("unimodular", Json(1.0)), "unimodular")));
    }
    if (j.contains("coefficients")) {
      std::vector<Complex> cs;
      for (const auto& c : j["coefficients"]) cs.push_back(complex_from_json(c, "coefficient"));
      return OperatorExpr::toeplitz(ToeplitzSymbol::polynomial(std::move(cs)));
    }
    throw IoError("toeplitz: needs 'blaschke_zeros' or 'coefficients'");
  }
  if (kind == "adjoint") return child().adjoint();
  if (kind == "scale") return OperatorExpr::scale(complex_from_json(j.at("scalar"), "scalar"), child());
  if (kind == "sum") return OperatorExpr::sum(kids());
  if (kind == "product") return OperatorExpr::product(kids());
  if (kind == "direct_sum") return OperatorExpr::direct_sum(kids());
  if (kind == "tensor") return OperatorExpr::tensor(kids());
  throw IoError("operator: unknown kind '" + kind + "'");
}

inline Json parse_json(const std::string& text, const std::string& origin) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw IoError(origin + ": " + e.what());
  }
}

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw IoError("write to '" + path + "' failed");
}

inline Json read_json(const std::string& path) { return parse_json(read_text(path), path); }

inline ComplexMatrix read_matrix(const std::string& path) {
  try {
    return matrix_from_json(read_json(path));
  } catch (const nlohmann::json::exception& e) {
    throw IoError(path + ": " + e.what());
  }
}

inline OperatorExpr read_operator(const std::string& path) {
  try {
    return expr_from_json(read_json(path));
  } catch (const nlohmann::json::exception& e) {
    throw IoError(path + ": " + e.what());
  }
}

}  // namespace opineq::io
