#pragma once

// `algocap` command-line front end. run() takes the argument list without the
// program name so tests can drive it in-process.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "algocap/algocap.hpp"

namespace algocap::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvariantFailed = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumeric = 3;

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(item);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

inline double parse_double(const std::string& text, const std::string& field) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ConfigError(field, "expected a number, got '" + text + "'");
  }
}

inline std::size_t parse_count(const std::string& text, const std::string& field) {
  const double v = parse_double(text, field);
  if (v < 0 || v != static_cast<double>(static_cast<std::size_t>(v))) {
    throw ConfigError(field, "expected a non-negative integer, got '" + text + "'");
  }
  return static_cast<std::size_t>(v);
}

inline Json read_json_file(const std::string& path, const std::string& field) {
  std::ifstream in(path);
  if (!in) throw ConfigError(field, "cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ConfigError(field, "'" + path + "' is not valid JSON: " + e.what());
  }
}

/// zoo:name:param or a JSON file.
inline KrausChannel load_channel(const std::string& spec) {
  if (spec.rfind("zoo:", 0) == 0) {
    const auto parts = split(spec, ':');
    if (parts.size() != 3) throw ConfigError("--channel", "expected zoo:name:param, got '" + spec + "'");
    const auto names = zoo_names();
    if (std::find(names.begin(), names.end(), parts[1]) == names.end()) {
      throw ConfigError("--channel", "unknown channel '" + parts[1] + "'");
    }
    const double param = parse_double(parts[2], "--channel");
    try {
      return zoo(parts[1], param);
    } catch (const ParameterError& e) {
      throw ConfigError("--channel", e.what());
    }
  }
  return channel_from_json(read_json_file(spec, "--channel"), "channel");
}

/// default:grid or a JSON file.
inline StateEnumeration load_enumeration(const std::string& spec, std::size_t d, std::size_t n_max) {
  if (spec.rfind("default", 0) == 0) {
    std::size_t grid = 2;
    if (spec != "default") {
      const auto parts = split(spec, ':');
      if (parts.size() != 2 || parts[0] != "default") {
        throw ConfigError("--enum", "expected default:grid, got '" + spec + "'");
      }
      grid = parse_count(parts[1], "--enum");
      if (grid == 0) throw ConfigError("--enum", "grid must be positive");
    }
    return default_enumeration(d, std::max<std::size_t>(n_max, 1), grid);
  }
  auto e = enumeration_from_json(read_json_file(spec, "--enum"), "enum");
  if (e.local_dim() != d) {
    throw ConfigError("enum.d", "enumeration dimension " + std::to_string(e.local_dim()) +
                                    " does not match channel input dimension " + std::to_string(d));
  }
  return e;
}

/// mm, pure:k, diag:a,b,... or a matrix JSON file.
inline DensityMatrix load_state(const std::string& spec, std::size_t dim) {
  try {
    if (spec == "mm") return DensityMatrix::maximally_mixed(dim);
    if (spec.rfind("pure:", 0) == 0) {
      const std::size_t k = parse_count(spec.substr(5), "--state");
      if (k >= dim) throw ConfigError("--state", "basis index " + std::to_string(k) + " out of range");
      return DensityMatrix::basis(dim, k);
    }
    if (spec.rfind("diag:", 0) == 0) {
      std::vector<double> values;
      for (const auto& part : split(spec.substr(5), ',')) values.push_back(parse_double(part, "--state"));
      if (values.size() != dim) {
        throw ConfigError("--state", "expected " + std::to_string(dim) + " diagonal entries, got " +
                                         std::to_string(values.size()));
      }
      return DensityMatrix(ComplexMatrix::diagonal(values));
    }
    auto m = matrix_from_json(read_json_file(spec, "--state"), "state");
    if (m.rows() != dim || m.cols() != dim) {
      throw ConfigError("state", "is " + m.shape() + ", expected " + std::to_string(dim) + "x" + std::to_string(dim));
    }
    return DensityMatrix(std::move(m));
  } catch (const InvalidStateError& e) {
    throw ConfigError("--state", e.what());
  }
}

inline RateMode parse_mode(const std::string& s) {
  if (s == "restricted") return RateMode::restricted;
  if (s == "eigen") return RateMode::eigen;
  if (s == "both") return RateMode::both;
  throw ConfigError("--mode", "expected restricted, eigen or both, got '" + s + "'");
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw ConfigError("--out", "cannot write '" + path + "'");
  f << text;
}

inline std::string csv_path_for(const std::string& json_path) {
  const auto slash = json_path.find_last_of('/');
  const auto dot = json_path.find_last_of('.');
  if (dot != std::string::npos && (slash == std::string::npos || dot > slash)) return json_path.substr(0, dot) + ".csv";
  return json_path + ".csv";
}

inline std::string key_value_csv(const Json& j) {
  std::ostringstream os;
  os << "key,value\n";
  for (auto it = j.begin(); it != j.end(); ++it) {
    os << it.key() << ',';
    if (it->is_number()) os << format_double(it->get<double>());
    else if (it->is_string()) os << it->get<std::string>();
    else os << it->dump();
    os << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------------------

struct CommonOptions {
  std::string channel;
  std::string enumeration;
  std::string state = "mm";
  std::string mode = "restricted";
  std::string out;
  std::string format = "json";
  std::string scope = "all";
  std::size_t n_max = 2;
  std::size_t level = 1;
  std::optional<std::size_t> member;
  std::uint64_t seed = 0;
  bool oracle = false;
};

inline int cmd_coherent_info(const CommonOptions& o, std::ostream& out) {
  const auto budget = DimensionBudget::from_env();
  const auto phi = load_channel(o.channel);
  if (o.level == 0) throw ConfigError("--n", "level must be at least 1");
  const auto phi_n = tensor_power(phi, o.level, budget);

  std::optional<StateEnumeration> e;
  std::optional<ReferenceMixture> ref;
  if (!o.enumeration.empty()) {
    e = load_enumeration(o.enumeration, phi.dim_in(), o.level);
    if (!e->has_level(o.level)) throw ConfigError("--n", "enumeration has no level " + std::to_string(o.level));
    ref = build_reference(*e, o.level);
  }
  std::optional<DensityMatrix> rho;
  std::optional<std::size_t> index;
  if (o.member) {
    if (!e) throw ConfigError("--member", "needs --enum");
    if (*o.member < e->first_index(o.level) || *o.member > e->last_index(o.level)) {
      throw ConfigError("--member", "index " + std::to_string(*o.member) + " is not in level " +
                                        std::to_string(o.level) + " (" + std::to_string(e->first_index(o.level)) +
                                        ".." + std::to_string(e->last_index(o.level)) + ")");
    }
    index = *o.member;
    rho = e->states(o.level)[*index - e->first_index(o.level)];
  } else {
    rho = load_state(o.state, phi_n.dim_in());
  }

  Json report{{"channel", phi_n.id()},
              {"n", o.level},
              {"units", "bits"},
              {"coherent_information", coherent_information(*rho, phi_n)},
              {"output_entropy", von_neumann(apply(phi_n, rho->matrix()))},
              {"exchange_entropy", exchange_entropy(*rho, phi_n)}};
  report["reference"] = ref ? Json(ref->id()) : Json(nullptr);
  if (ref) {
    const auto ctx = SurrogateContext::from_mixture(phi_n, *ref);
    report["algorithmic_coherent_information"] = algorithmic_coherent_information(*rho, ctx);
    report["global_index"] = index ? Json(*index) : Json(nullptr);
    report["sandwich_slack_bits"] = index ? Json(delta_slack_bits(*index)) : Json(nullptr);
  }
  out << (o.format == "csv" ? key_value_csv(report) : report.dump(2) + "\n");
  return kExitOk;
}

inline int cmd_capacity(const CommonOptions& o, std::ostream& out, std::ostream& err) {
  const auto budget = DimensionBudget::from_env();
  const auto mode = parse_mode(o.mode);
  if (o.n_max == 0) throw ConfigError("--n-max", "must be at least 1");
  const auto phi = load_channel(o.channel);
  const auto e = load_enumeration(o.enumeration.empty() ? "default" : o.enumeration, phi.dim_in(), o.n_max);
  auto report = rate_sequence(phi, e, o.n_max, mode, budget);
  if (o.oracle) report.oracle_single_letter = single_letter_ic_max(phi).value;
  if (report.truncated) err << "warning: report truncated: " << report.truncation_reason << "\n";

  const std::string json = report_to_json(report).dump(2) + "\n";
  const std::string csv = report_to_csv(report);
  if (!o.out.empty()) {
    write_file(o.out, o.format == "csv" ? csv : json);
    if (o.format != "csv") write_file(csv_path_for(o.out), csv);
  } else {
    out << (o.format == "csv" ? csv : json);
  }
  return kExitOk;
}

inline int cmd_channel_info(const CommonOptions& o, std::ostream& out) {
  const auto phi = load_channel(o.channel);
  const auto choi = choi_from_kraus(phi);
  const auto spectrum = eigvalsh(choi.matrix);
  Json report = channel_to_json(phi);
  report["dim_env"] = phi.dim_env();
  report["completeness_residual"] = phi.completeness_residual();
  report["choi"] = matrix_to_json(choi.matrix);
  report["choi_min_eigenvalue"] = spectrum.back();
  report["choi_rank"] = std::count_if(spectrum.begin(), spectrum.end(), [](double x) { return x > kChoiDropCutoff; });
  if (o.format == "csv") {
    Json flat{{"id", phi.id()},
              {"dim_in", phi.dim_in()},
              {"dim_out", phi.dim_out()},
              {"dim_env", phi.dim_env()},
              {"completeness_residual", phi.completeness_residual()},
              {"choi_min_eigenvalue", spectrum.back()}};
    out << key_value_csv(flat);
  } else {
    out << report.dump(2) << "\n";
  }
  return kExitOk;
}

inline int cmd_verify(const CommonOptions& o, std::ostream& out, std::ostream& err) {
  const auto scopes = invariant_scopes();
  if (o.scope != "all" && std::find(scopes.begin(), scopes.end(), o.scope) == scopes.end()) {
    throw ConfigError("--scope", "unknown scope '" + o.scope + "'");
  }
  const auto results = run_invariants(o.scope, o.seed);
  const auto summary = invariant_summary(results, o.seed);
  out << summary.dump(2) << "\n";
  bool ok = true;
  for (const auto& r : results) {
    if (r.passed) continue;
    ok = false;
    err << "FAILED " << r.scope << "/" << r.name << ": worst deviation " << format_double(r.worst) << " > "
        << format_double(r.tolerance) << "\n  witness: " << r.witness.dump() << "\n";
  }
  return ok ? kExitOk : kExitInvariantFailed;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  detail::CommonOptions o;
  CLI::App app{"Coherent information and quantum capacity lower bounds", "algocap"};
  app.require_subcommand(1);

  const std::vector<std::string> formats{"json", "csv"};

  auto* ci = app.add_subcommand("coherent-info", "Coherent information of a state through a channel");
  ci->add_option("--channel", o.channel, "Channel: JSON file or zoo:name:param")->required();
  ci->add_option("--state", o.state, "Input state: mm, pure:k, diag:a,b,... or matrix JSON file");
  ci->add_option("--enum", o.enumeration, "Reference enumeration: JSON file or default:grid");
  ci->add_option("--n", o.level, "Block length (channel tensor power)");
  ci->add_option("--member", o.member, "Use enumeration member with this global index as the state");
  ci->add_option("--format", o.format)->check(CLI::IsMember(formats));

  auto* cap = app.add_subcommand("capacity", "Rate sequence with sandwich brackets");
  cap->add_option("--channel", o.channel, "Channel: JSON file or zoo:name:param")->required();
  cap->add_option("--enum", o.enumeration, "Enumeration: JSON file or default:grid (default: default:2)");
  cap->add_option("--n-max", o.n_max, "Largest block length");
  cap->add_option("--mode", o.mode, "restricted, eigen or both");
  cap->add_flag("--oracle", o.oracle, "Add the brute-force single-letter maximum");
  cap->add_option("--out", o.out, "Write JSON here and the CSV table next to it");
  cap->add_option("--format", o.format)->check(CLI::IsMember(formats));

  auto* info = app.add_subcommand("channel-info", "Representations and checks for a channel");
  info->add_option("--channel", o.channel, "Channel: JSON file or zoo:name:param")->required();
  info->add_option("--format", o.format)->check(CLI::IsMember(formats));

  auto* verify = app.add_subcommand("verify", "Run the invariant suites");
  verify->add_option("--scope", o.scope, "all, linalg, states, channels, entropy or capacity");
  verify->add_option("--seed", o.seed, "Seed for randomized checks");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (ci->parsed()) return detail::cmd_coherent_info(o, out);
    if (cap->parsed()) return detail::cmd_capacity(o, out, err);
    if (info->parsed()) return detail::cmd_channel_info(o, out);
    return detail::cmd_verify(o, out, err);
  } catch (const ConfigError& e) {
    err << "config error: " << e.field() << ": " << e.message() << "\n";
    return kExitConfig;
  } catch (const BudgetError& e) {
    err << "budget error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Error& e) {
    err << "numeric error: " << e.what() << "\n";
    return kExitNumeric;
  }
}

}  // namespace algocap::cli
