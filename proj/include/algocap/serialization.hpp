#pragma once

// JSON encodings for matrices, channels, enumerations and rate reports, plus
// the fixed-column CSV rate table.

#include <algorithm>
#include <cstddef>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "algocap/capacity.hpp"
#include "algocap/channels.hpp"
#include "algocap/error.hpp"
#include "algocap/linalg.hpp"
#include "algocap/states.hpp"
#include "json.hpp"

namespace algocap {

using Json = nlohmann::json;

// ---------------------------------------------------------------------------
// Field helpers raising ConfigError with a path

namespace detail {

inline const Json& require_field(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) throw ConfigError(path + "." + key, "missing field");
  return *it;
}

inline std::size_t require_count(const Json& j, const std::string& path) {
  if (!j.is_number_integer() || j.get<long long>() < 0) throw ConfigError(path, "expected a non-negative integer");
  return j.get<std::size_t>();
}

inline double require_number(const Json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path, "expected a number");
  return j.get<double>();
}

inline std::string require_string(const Json& j, const std::string& path) {
  if (!j.is_string()) throw ConfigError(path, "expected a string");
  return j.get<std::string>();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Matrices: {"rows": R, "cols": C, "data": [[re, im], ...]} row-major

inline Json matrix_to_json(const ComplexMatrix& m) {
  Json data = Json::array();
  for (const auto& x : m.data()) data.push_back(Json::array({x.real(), x.imag()}));
  return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

inline ComplexMatrix matrix_from_json(const Json& j, const std::string& path = "matrix") {
  const std::size_t rows = detail::require_count(detail::require_field(j, "rows", path), path + ".rows");
  const std::size_t cols = detail::require_count(detail::require_field(j, "cols", path), path + ".cols");
  const Json& data = detail::require_field(j, "data", path);
  if (!data.is_array()) throw ConfigError(path + ".data", "expected an array");
  if (data.size() != rows * cols) {
    throw ConfigError(path + ".data", "has " + std::to_string(data.size()) + " entries, expected " +
                                          std::to_string(rows * cols));
  }
  std::vector<Complex> entries;
  entries.reserve(data.size());
  for (std::size_t k = 0; k < data.size(); ++k) {
    const std::string where = path + ".data[" + std::to_string(k) + "]";
    const Json& e = data[k];
    if (!e.is_array() || e.size() != 2) throw ConfigError(where, "expected [re, im]");
    entries.emplace_back(detail::require_number(e[0], where + "[0]"), detail::require_number(e[1], where + "[1]"));
  }
  return ComplexMatrix(rows, cols, std::move(entries));
}

// ---------------------------------------------------------------------------
// Channels

inline Json channel_to_json(const KrausChannel& phi) {
  Json kraus = Json::array();
  for (const auto& k : phi.kraus()) kraus.push_back(matrix_to_json(k));
  return Json{{"kind", "kraus"},
              {"id", phi.id()},
              {"dim_in", phi.dim_in()},
              {"dim_out", phi.dim_out()},
              {"kraus", std::move(kraus)}};
}

/// Accepts {"kind": "kraus"|"choi"|"zoo", ...}. Library errors raised while
/// building the channel are reported against the offending field.
inline KrausChannel channel_from_json(const Json& j, const std::string& path = "channel") {
  const std::string kind = detail::require_string(detail::require_field(j, "kind", path), path + ".kind");
  if (kind == "zoo") {
    const std::string name = detail::require_string(detail::require_field(j, "name", path), path + ".name");
    const auto names = zoo_names();
    if (std::find(names.begin(), names.end(), name) == names.end()) {
      throw ConfigError(path + ".name", "unknown channel '" + name + "'");
    }
    const Json& params = detail::require_field(j, "params", path);
    const char* key = name == "identity" ? "d" : name == "amplitude_damping" ? "gamma" : "p";
    const double value = detail::require_number(detail::require_field(params, key, path + ".params"),
                                                path + ".params." + key);
    try {
      return zoo(name, value);
    } catch (const ParameterError& e) {
      throw ConfigError(path + ".params." + key, e.what());
    }
  }
  if (kind != "kraus" && kind != "choi") {
    throw ConfigError(path + ".kind", "unknown kind '" + kind + "' (expected kraus, choi or zoo)");
  }
  const std::size_t din = detail::require_count(detail::require_field(j, "dim_in", path), path + ".dim_in");
  const std::size_t dout = detail::require_count(detail::require_field(j, "dim_out", path), path + ".dim_out");
  if (din == 0) throw ConfigError(path + ".dim_in", "must be positive");
  if (dout == 0) throw ConfigError(path + ".dim_out", "must be positive");
  const std::string id = j.contains("id") && j["id"].is_string() ? j["id"].get<std::string>() : kind;
  if (kind == "kraus") {
    const Json& list = detail::require_field(j, "kraus", path);
    if (!list.is_array() || list.empty()) throw ConfigError(path + ".kraus", "expected a non-empty array");
    std::vector<ComplexMatrix> ops;
    for (std::size_t k = 0; k < list.size(); ++k) {
      const std::string where = path + ".kraus[" + std::to_string(k) + "]";
      auto op = matrix_from_json(list[k], where);
      if (op.rows() != dout || op.cols() != din) {
        throw ConfigError(where, "is " + op.shape() + ", expected " + std::to_string(dout) + "x" + std::to_string(din));
      }
      ops.push_back(std::move(op));
    }
    try {
      return KrausChannel(din, dout, std::move(ops), id);
    } catch (const ChannelError& e) {
      throw ConfigError(path + ".kraus", e.what());
    }
  }
  ChoiMatrix c{din, dout, matrix_from_json(detail::require_field(j, "choi", path), path + ".choi")};
  try {
    return kraus_from_choi(c, id);
  } catch (const Error& e) {
    throw ConfigError(path + ".choi", e.what());
  }
}

// ---------------------------------------------------------------------------
// Enumerations: {"d": int, "f_coeffs": [int...], "levels": [{"n": int, "states": [matrix...]}]}

inline Json enumeration_to_json(const StateEnumeration& e) {
  Json levels = Json::array();
  for (std::size_t n = 1; n <= e.max_level(); ++n) {
    Json states = Json::array();
    for (const auto& s : e.states(n)) states.push_back(matrix_to_json(s.matrix()));
    levels.push_back(Json{{"n", n}, {"states", std::move(states)}});
  }
  return Json{{"id", e.id()}, {"d", e.local_dim()}, {"f_coeffs", e.level_counts().coeffs}, {"levels", std::move(levels)}};
}

inline StateEnumeration enumeration_from_json(const Json& j, const std::string& path = "enum") {
  const std::size_t d = detail::require_count(detail::require_field(j, "d", path), path + ".d");
  const Json& coeffs = detail::require_field(j, "f_coeffs", path);
  if (!coeffs.is_array() || coeffs.empty()) throw ConfigError(path + ".f_coeffs", "expected a non-empty array");
  LevelCountPolynomial f;
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    f.coeffs.push_back(detail::require_count(coeffs[k], path + ".f_coeffs[" + std::to_string(k) + "]"));
  const Json& levels = detail::require_field(j, "levels", path);
  if (!levels.is_array() || levels.empty()) throw ConfigError(path + ".levels", "expected a non-empty array");
  std::vector<std::vector<DensityMatrix>> parsed;
  for (std::size_t k = 0; k < levels.size(); ++k) {
    const std::string where = path + ".levels[" + std::to_string(k) + "]";
    const std::size_t n = detail::require_count(detail::require_field(levels[k], "n", where), where + ".n");
    if (n != k + 1) throw ConfigError(where + ".n", "levels must be listed as n = 1, 2, ... in order");
    const Json& states = detail::require_field(levels[k], "states", where);
    if (!states.is_array()) throw ConfigError(where + ".states", "expected an array");
    std::vector<DensityMatrix> level;
    for (std::size_t s = 0; s < states.size(); ++s) {
      const std::string spath = where + ".states[" + std::to_string(s) + "]";
      try {
        level.emplace_back(matrix_from_json(states[s], spath));
      } catch (const InvalidStateError& e) {
        throw ConfigError(spath, e.what());
      }
    }
    parsed.push_back(std::move(level));
  }
  const std::string id = j.contains("id") && j["id"].is_string() ? j["id"].get<std::string>() : "file";
  try {
    return StateEnumeration(d, std::move(f), std::move(parsed), id);
  } catch (const ConfigError& e) {
    throw ConfigError(path + "." + e.field(), e.message());
  }
}

// ---------------------------------------------------------------------------
// Rate reports

inline Json level_to_json(const LevelReport& l) {
  return Json{{"n", l.n},
              {"reference", l.reference_id},
              {"restricted_max", l.restricted_max},
              {"eigen_max", l.eigen_max},
              {"argmax_index", l.argmax_index},
              {"slack_bits", l.slack_bits},
              {"worst_case_slack_bits", l.worst_case_slack_bits},
              {"q_n", l.q_n},
              {"bracket", Json::array({l.bracket_lo, l.bracket_hi})},
              {"dominance_margin", l.dominance_margin},
              {"premises_verified", l.premises_verified},
              {"certified", l.certified}};
}

inline Json report_to_json(const RateReport& r) {
  Json levels = Json::array();
  for (const auto& l : r.levels) levels.push_back(level_to_json(l));
  Json out{{"channel", r.channel_id},
           {"reference", r.reference_id},
           {"units", "bits"},
           {"mode", to_string(r.mode)},
           {"levels", std::move(levels)},
           {"truncated", r.truncated},
           {"worst_case_slack_monotone", r.worst_case_slack_monotone}};
  if (r.truncated) out["truncation_reason"] = r.truncation_reason;
  out["oracle_single_letter"] = r.oracle_single_letter ? Json(*r.oracle_single_letter) : Json(nullptr);
  return out;
}

inline std::string format_double(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

/// Columns: n,q_n,bracket_lo,bracket_hi
inline std::string report_to_csv(const RateReport& r) {
  std::ostringstream os;
  os << "n,q_n,bracket_lo,bracket_hi\n";
  for (const auto& l : r.levels) {
    os << l.n << ',' << format_double(l.q_n) << ',' << format_double(l.bracket_lo) << ','
       << format_double(l.bracket_hi) << '\n';
  }
  return os.str();
}

}  // namespace algocap
