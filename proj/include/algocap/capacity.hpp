#pragma once

// Capacity estimation. The algorithmic coherent information is linear in the
// input, so at each level it is a trace pairing with one Hermitian operator T;
// its maximum over all states is the top eigenvalue of T and its maximum over
// an enumerated set brackets the coherent information to within -log2 delta(i).

#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "algocap/channels.hpp"
#include "algocap/entropy.hpp"
#include "algocap/error.hpp"
#include "algocap/linalg.hpp"
#include "algocap/states.hpp"

namespace algocap {

inline constexpr double kObjectiveHermitianTol = 1e-9;
inline constexpr double kDominanceTol = 1e-9;

struct ObjectiveOperator {
  std::size_t level = 0;
  ComplexMatrix matrix;
  std::string channel_id;
  std::string reference_id;

  /// Tr(rho T), equal to the algorithmic coherent information of rho.
  double pairing(const ComplexMatrix& rho) const { return trace_product_real(rho, matrix); }
};

/// T = Phi^dagger(-log2 Phi(rho~)) + Phi~^dagger(log2 Phi~(rho~)).
inline ObjectiveOperator objective_operator(const SurrogateContext& ctx, std::size_t level) {
  auto t = adjoint_apply(ctx.channel(), -1.0 * ctx.log_b().log2);
  t += adjoint_apply(ctx.complementary_channel(), ctx.log_e().log2);
  const double residual = hermitian_residual(t);
  if (residual > kObjectiveHermitianTol) {
    throw NotHermitianError("objective operator is not Hermitian: residual " + std::to_string(residual));
  }
  ComplexMatrix sym(t.rows(), t.cols());
  for (std::size_t i = 0; i < t.rows(); ++i)
    for (std::size_t j = 0; j < t.cols(); ++j) sym(i, j) = 0.5 * (t(i, j) + std::conj(t(j, i)));
  return {level, std::move(sym), ctx.channel().id(), ctx.reference_id()};
}

inline ObjectiveOperator objective_operator(const KrausChannel& phi, std::size_t n, const ReferenceMixture& ref,
                                            const DimensionBudget& budget = DimensionBudget{}) {
  if (ref.level() != n) {
    throw DimensionError("reference mixture is for level " + std::to_string(ref.level()) + ", requested level " +
                         std::to_string(n));
  }
  return objective_operator(SurrogateContext::from_mixture(tensor_power(phi, n, budget), ref), n);
}

/// Entry t_{IJ} = -Tr(Phi(|I><J|) log2 Phi(rho~)) + Tr(Phi~(|I><J|) log2 Phi~(rho~)),
/// evaluated through the forward maps. It equals T(J, I).
inline Complex objective_entry(const SurrogateContext& ctx, std::size_t i, std::size_t j) {
  const auto unit = ComplexMatrix::unit(ctx.channel().dim_in(), i, j);
  return -trace_product(apply(ctx.channel(), unit), ctx.log_b().log2) +
         trace_product(apply(ctx.complementary_channel(), unit), ctx.log_e().log2);
}

struct LinearMaximum {
  double value;
  DensityMatrix state;
  ComplexVector vector;
};

/// max_rho Tr(rho T) = lambda_max(T), attained on the top eigenvector.
inline LinearMaximum max_linear_objective(const ObjectiveOperator& t) {
  const auto dec = eigh(t.matrix, kObjectiveHermitianTol);
  auto v = dec.vector(0);
  return {dec.max_eigenvalue(), DensityMatrix::pure(v), std::move(v)};
}

struct SetMaximum {
  double value;
  std::size_t global_index;
  std::size_t position;  // within the level
  std::vector<double> member_values;
};

/// Maximize the algorithmic coherent information over the level-n members of
/// an enumeration. Ties go to the smallest index.
inline SetMaximum max_over_set(const SurrogateContext& ctx, const StateEnumeration& enumeration, std::size_t n) {
  const auto& states = enumeration.states(n);
  SetMaximum best{-std::numeric_limits<double>::infinity(), 0, 0, {}};
  best.member_values.reserve(states.size());
  for (std::size_t k = 0; k < states.size(); ++k) {
    const double v = algorithmic_coherent_information(states[k], ctx);
    best.member_values.push_back(v);
    if (v > best.value) {
      best.value = v;
      best.position = k;
      best.global_index = enumeration.global_index(n, k);
    }
  }
  return best;
}

inline SetMaximum max_over_set(const KrausChannel& phi, std::size_t n, const StateEnumeration& enumeration,
                               const DimensionBudget& budget = DimensionBudget{}) {
  const auto ref = build_reference(enumeration, n);
  return max_over_set(SurrogateContext::from_mixture(tensor_power(phi, n, budget), ref), enumeration, n);
}

// ---------------------------------------------------------------------------
// Rate sequences

enum class RateMode { restricted, eigen, both };

inline const char* to_string(RateMode mode) {
  switch (mode) {
    case RateMode::restricted:
      return "restricted";
    case RateMode::eigen:
      return "eigen";
    case RateMode::both:
      return "both";
  }
  return "?";
}

struct LevelReport {
  std::size_t n = 0;
  std::string reference_id;
  double restricted_max = 0.0;  // bits
  double eigen_max = 0.0;       // bits
  std::size_t argmax_index = 0;
  double slack_bits = 0.0;             // -log2 delta(argmax_index)
  double worst_case_slack_bits = 0.0;  // -log2 delta(1 + n f(n))
  double q_n = 0.0;
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
  double dominance_margin = 0.0;  // min_i lambda_min(rho~ - delta(i) rho_i)
  bool premises_verified = false;
  bool certified = false;

  bool contains(double capacity) const { return bracket_lo <= capacity && capacity <= bracket_hi; }
};

struct RateReport {
  std::string channel_id;
  std::string reference_id;
  RateMode mode = RateMode::restricted;
  std::vector<LevelReport> levels;
  bool truncated = false;
  std::string truncation_reason;
  std::optional<double> oracle_single_letter;
  /// Whether -log2 delta(1 + n f(n)) / n was non-increasing over n >= 2 in this run.
  bool worst_case_slack_monotone = true;
};

inline LevelReport evaluate_level(const KrausChannel& phi, const StateEnumeration& enumeration, std::size_t n,
                                  RateMode mode, const DimensionBudget& budget) {
  const auto ref = build_reference(enumeration, n);
  const SurrogateContext ctx = SurrogateContext::from_mixture(tensor_power(phi, n, budget), ref);
  const auto set_max = max_over_set(ctx, enumeration, n);
  const auto t = objective_operator(ctx, n);
  const auto lin_max = max_linear_objective(t);

  LevelReport level;
  level.n = n;
  level.reference_id = ref.id();
  level.restricted_max = set_max.value;
  level.eigen_max = lin_max.value;
  level.argmax_index = set_max.global_index;
  level.slack_bits = delta_slack_bits(set_max.global_index);
  level.worst_case_slack_bits = delta_slack_bits(enumeration.worst_case_index(n));
  const double nn = static_cast<double>(n);
  const double value = mode == RateMode::eigen ? level.eigen_max : level.restricted_max;
  level.q_n = value / nn;
  level.bracket_lo = level.q_n - level.slack_bits / nn;
  level.bracket_hi = level.q_n + level.slack_bits / nn;
  level.dominance_margin = ref.dominance_margin();
  level.premises_verified = level.dominance_margin >= -kDominanceTol && ref.rho_tilde().trace() <= 1.0 + kTraceTol;
  level.certified = level.premises_verified && mode != RateMode::eigen;
  return level;
}

/// Per-level maxima and brackets for n = 1..n_max. A level that does not fit
/// the dimension budget ends the run; the report is marked truncated.
inline RateReport rate_sequence(const KrausChannel& phi, const StateEnumeration& enumeration, std::size_t n_max,
                                RateMode mode = RateMode::restricted,
                                const DimensionBudget& budget = DimensionBudget{}) {
  if (n_max < 1) throw ParameterError("n_max must be at least 1");
  if (phi.dim_in() != enumeration.local_dim()) {
    throw DimensionError("channel input dimension " + std::to_string(phi.dim_in()) +
                         " does not match enumeration dimension " + std::to_string(enumeration.local_dim()));
  }
  RateReport report;
  report.channel_id = phi.id();
  report.reference_id = enumeration.id();
  report.mode = mode;
  for (std::size_t n = 1; n <= n_max; ++n) {
    if (!enumeration.has_level(n)) {
      report.truncated = true;
      report.truncation_reason = "enumeration has no level " + std::to_string(n);
      break;
    }
    try {
      report.levels.push_back(evaluate_level(phi, enumeration, n, mode, budget));
    } catch (const BudgetError& e) {
      report.truncated = true;
      report.truncation_reason = "level " + std::to_string(n) + ": " + e.what();
      break;
    }
  }
  for (std::size_t k = 2; k < report.levels.size(); ++k) {
    const auto& prev = report.levels[k - 1];
    const auto& cur = report.levels[k];
    if (cur.worst_case_slack_bits / static_cast<double>(cur.n) >
        prev.worst_case_slack_bits / static_cast<double>(prev.n) + 1e-12) {
      report.worst_case_slack_monotone = false;
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Brute-force single-letter oracle

struct SingleLetterMaximum {
  double value;
  DensityMatrix state;
};

namespace detail {

class CoherentInformationProbe {
 public:
  explicit CoherentInformationProbe(const KrausChannel& phi) : phi_(phi), env_(complementary(phi)) {}

  double operator()(const ComplexMatrix& rho) const {
    return von_neumann(apply(phi_, rho)) - von_neumann(apply(env_, rho));
  }

 private:
  const KrausChannel& phi_;
  KrausChannel env_;
};

inline ComplexMatrix bloch_state(double x, double y, double z) {
  return ComplexMatrix{{0.5 * (1.0 + z), Complex(0.5 * x, -0.5 * y)}, {Complex(0.5 * x, 0.5 * y), 0.5 * (1.0 - z)}};
}

inline SingleLetterMaximum qubit_search(const KrausChannel& phi, std::size_t resolution) {
  const CoherentInformationProbe probe(phi);
  std::array<double, 3> best_point{0.0, 0.0, 0.0};
  double best = probe(bloch_state(0.0, 0.0, 0.0));
  const double pi = std::numbers::pi;
  const auto res = static_cast<double>(resolution);
  for (std::size_t ir = 1; ir <= resolution; ++ir) {
    const double r = static_cast<double>(ir) / res;
    for (std::size_t it = 0; it <= resolution; ++it) {
      const double theta = pi * static_cast<double>(it) / res;
      const std::size_t n_phi = (it == 0 || it == resolution) ? 1 : 2 * resolution;
      for (std::size_t ip = 0; ip < n_phi; ++ip) {
        const double ph = 2.0 * pi * static_cast<double>(ip) / static_cast<double>(2 * resolution);
        const std::array<double, 3> p{r * std::sin(theta) * std::cos(ph), r * std::sin(theta) * std::sin(ph),
                                      r * std::cos(theta)};
        const double v = probe(bloch_state(p[0], p[1], p[2]));
        if (v > best) {
          best = v;
          best_point = p;
        }
      }
    }
  }
  // Compass search from the best grid point, staying inside the Bloch ball.
  for (double step = 1.0 / res; step > 1e-10; step *= 0.5) {
    bool improved = true;
    while (improved) {
      improved = false;
      for (std::size_t axis = 0; axis < 3; ++axis) {
        for (double sign : {1.0, -1.0}) {
          auto p = best_point;
          p[axis] += sign * step;
          const double norm = std::sqrt(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
          if (norm > 1.0)
            for (auto& c : p) c /= norm;
          const double v = probe(bloch_state(p[0], p[1], p[2]));
          if (v > best + 1e-15) {
            best = v;
            best_point = p;
            improved = true;
          }
        }
      }
    }
  }
  return {best, DensityMatrix(bloch_state(best_point[0], best_point[1], best_point[2]))};
}

inline void compositions(std::size_t total, std::size_t parts, std::vector<std::size_t>& current,
                         std::vector<std::vector<std::size_t>>& out) {
  if (parts == 1) {
    current.push_back(total);
    out.push_back(current);
    current.pop_back();
    return;
  }
  for (std::size_t k = 0; k <= total; ++k) {
    current.push_back(k);
    compositions(total - k, parts - 1, current, out);
    current.pop_back();
  }
}

inline SingleLetterMaximum diagonal_search(const KrausChannel& phi, std::size_t resolution) {
  const CoherentInformationProbe probe(phi);
  const std::size_t d = phi.dim_in();
  std::vector<std::vector<std::size_t>> grid;
  std::vector<std::size_t> scratch;
  compositions(resolution, d, scratch, grid);
  std::vector<double> best_spec(d, 1.0 / static_cast<double>(d));
  double best = probe(ComplexMatrix::diagonal(best_spec));
  for (const auto& c : grid) {
    std::vector<double> spec(d);
    for (std::size_t k = 0; k < d; ++k) spec[k] = static_cast<double>(c[k]) / static_cast<double>(resolution);
    const double v = probe(ComplexMatrix::diagonal(spec));
    if (v > best) {
      best = v;
      best_spec = spec;
    }
  }
  // Move probability mass between pairs of levels with a shrinking step.
  for (double step = 1.0 / static_cast<double>(resolution); step > 1e-10; step *= 0.5) {
    bool improved = true;
    while (improved) {
      improved = false;
      for (std::size_t from = 0; from < d; ++from)
        for (std::size_t to = 0; to < d; ++to) {
          if (from == to) continue;
          const double moved = std::min(step, best_spec[from]);
          if (moved <= 0.0) continue;
          auto spec = best_spec;
          spec[from] -= moved;
          spec[to] += moved;
          const double v = probe(ComplexMatrix::diagonal(spec));
          if (v > best + 1e-15) {
            best = v;
            best_spec = spec;
            improved = true;
          }
        }
    }
  }
  return {best, DensityMatrix(ComplexMatrix::diagonal(best_spec))};
}

}  // namespace detail

/// Brute-force maximum of the single-letter coherent information: a Bloch-ball
/// grid for qubit inputs, a grid over diagonal spectra for dimensions 3 and 4,
/// each polished by a compass search. Every evaluated point is a valid state,
/// so the value is a lower bound on the true maximum.
inline SingleLetterMaximum single_letter_ic_max(const KrausChannel& phi, std::size_t grid_resolution = 16) {
  if (grid_resolution < 1) throw ParameterError("grid resolution must be at least 1");
  if (phi.dim_in() == 2) return detail::qubit_search(phi, grid_resolution);
  if (phi.dim_in() <= 4) return detail::diagonal_search(phi, grid_resolution);
  throw ParameterError("single-letter oracle supports input dimension <= 4, got " + std::to_string(phi.dim_in()));
}

}  // namespace algocap
