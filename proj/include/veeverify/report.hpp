#ifndef VEEVERIFY_REPORT_HPP
#define VEEVERIFY_REPORT_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "veeverify/field.hpp"
#include "veeverify/matrix.hpp"

namespace veeverify {

using Json = nlohmann::ordered_json;

enum class Verdict { pass, fail, inconclusive };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

/// Failing (pivot, plane, class) of an exact certificate.
struct ExactWitness {
  std::size_t pivot = 0;
  std::size_t plane = 0;
  Matrix<QElem> plane_key;
  std::vector<std::size_t> members;   // the class, or the plane members other than the pivot
  QElem residual;
};

struct NumericSummary {
  std::size_t samples = 0;
  double max_residual = 0;
  double tol = 0;
  std::uint64_t seed = 0;
  unsigned precision_bits = 53;
  std::optional<double> escalated_residual;   // set when the precision fallback ran
  unsigned escalated_bits = 0;
};

struct CheckReport {
  std::string check;
  Verdict verdict = Verdict::pass;
  std::optional<ExactWitness> witness;
  std::optional<NumericSummary> numeric;
  Json details;   // check-specific extras; omitted from JSON when null

  bool passed() const { return verdict == Verdict::pass; }
};

inline Json matrix_to_json(const Matrix<QElem>& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(qelem_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

/// Row-major real matrix.
inline Json matrix_to_json(const Matrix<double>& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(m.row(i));
  return rows;
}

inline Json to_json(const CheckReport& r) {
  Json j;
  j["check"] = r.check;
  j["verdict"] = to_string(r.verdict);
  if (r.witness) {
    Json w;
    w["pivot"] = r.witness->pivot;
    w["plane"] = r.witness->plane;
    w["plane_key"] = matrix_to_json(r.witness->plane_key);
    w["class"] = r.witness->members;
    w["residual"] = qelem_to_json(r.witness->residual);
    j["witness"] = std::move(w);
  } else {
    j["witness"] = nullptr;
  }
  if (r.numeric) {
    Json n;
    n["samples"] = r.numeric->samples;
    n["max_residual"] = r.numeric->max_residual;
    n["tol"] = r.numeric->tol;
    n["seed"] = r.numeric->seed;
    n["precision"] = r.numeric->precision_bits;
    if (r.numeric->escalated_residual) {
      n["escalated_residual"] = *r.numeric->escalated_residual;
      n["escalated_precision"] = r.numeric->escalated_bits;
    }
    j["numeric"] = std::move(n);
  } else {
    j["numeric"] = nullptr;
  }
  if (!r.details.is_null()) j["details"] = r.details;
  return j;
}

// ---- canonical serialization ----

namespace detail {

inline std::string format_double(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Rats ({"num", "den"}) and QElems ([Rat, Rat]) stay on one line.
inline bool flat_object(const Json& j) {
  return j.is_object() && j.size() <= 3 &&
         std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); });
}

inline bool inline_value(const Json& j) {
  if (j.is_primitive() || flat_object(j)) return true;
  if (!j.is_array()) return false;
  if (std::all_of(j.begin(), j.end(), [](const Json& e) { return e.is_primitive(); })) return true;
  return j.size() <= 2 && std::all_of(j.begin(), j.end(), [](const Json& e) { return flat_object(e); });
}

inline void write_canonical(const Json& j, std::ostream& os, int indent) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  const std::string close(static_cast<std::size_t>(indent), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        os << "{}";
        return;
      }
      if (flat_object(j)) {
        os << "{";
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
          if (!first) os << ", ";
          first = false;
          os << Json(it.key()).dump() << ": ";
          write_canonical(it.value(), os, indent + 2);
        }
        os << "}";
        return;
      }
      os << "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) os << ",\n";
        first = false;
        os << pad << Json(it.key()).dump() << ": ";
        write_canonical(it.value(), os, indent + 2);
      }
      os << "\n" << close << "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        os << "[]";
        return;
      }
      if (inline_value(j)) {
        os << "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) os << ", ";
          write_canonical(j[i], os, indent + 2);
        }
        os << "]";
        return;
      }
      os << "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << ",\n";
        os << pad;
        write_canonical(j[i], os, indent + 2);
      }
      os << "\n" << close << "]";
      return;
    }
    case Json::value_t::number_float:
      os << format_double(j.get<double>());
      return;
    default:
      os << j.dump();
  }
}

}  // namespace detail

/// Fixed field order, two-space indent, doubles with 17 significant digits.
/// Parsing the output and writing it again reproduces it byte for byte.
inline std::string canonical_dump(const Json& j) {
  std::ostringstream os;
  detail::write_canonical(j, os, 0);
  os << "\n";
  return os.str();
}

}  // namespace veeverify

#endif  // VEEVERIFY_REPORT_HPP
