#pragma once

// Density matrices, purifications, and the computable reference mixtures that
// stand in for a universal semi-density matrix: an enumerated state set with
// delta-weights and one subnormalized mixture per level.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "algocap/error.hpp"
#include "algocap/linalg.hpp"

namespace algocap {

inline constexpr double kTraceTol = 1e-9;

namespace detail {

inline double validate_psd(const ComplexMatrix& m, const char* what) {
  if (!m.is_square()) throw InvalidStateError(std::string(what) + ": not square (" + m.shape() + ")");
  if (m.rows() == 0) throw InvalidStateError(std::string(what) + ": empty matrix");
  const double herm = hermitian_residual(m);
  if (herm > kHermitianTol) {
    throw InvalidStateError(std::string(what) + ": not Hermitian (residual " + std::to_string(herm) + ")");
  }
  const double lmin = eigh(m).min_eigenvalue();
  if (lmin < -kPsdTol) {
    throw InvalidStateError(std::string(what) + ": negative eigenvalue " + std::to_string(lmin));
  }
  return m.trace().real();
}

}  // namespace detail

/// Hermitian PSD operator with unit trace.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix m) : matrix_(std::move(m)) {
    const double tr = detail::validate_psd(matrix_, "DensityMatrix");
    if (std::abs(tr - 1.0) > kTraceTol) {
      throw InvalidStateError("DensityMatrix: trace " + std::to_string(tr) + " is not 1");
    }
  }

  static DensityMatrix maximally_mixed(std::size_t dim) {
    return DensityMatrix(ComplexMatrix::identity(dim) * Complex(1.0 / static_cast<double>(dim)));
  }

  static DensityMatrix basis(std::size_t dim, std::size_t k) {
    return DensityMatrix(ComplexMatrix::unit(dim, k, k));
  }

  static DensityMatrix pure(std::span<const Complex> psi) {
    double norm2 = 0.0;
    for (const auto& x : psi) norm2 += std::norm(x);
    ComplexVector unit(psi.begin(), psi.end());
    for (auto& x : unit) x /= std::sqrt(norm2);
    return DensityMatrix(ComplexMatrix::outer(unit, unit));
  }

  std::size_t dim() const noexcept { return matrix_.rows(); }
  const ComplexMatrix& matrix() const noexcept { return matrix_; }

 private:
  ComplexMatrix matrix_;
};

/// Hermitian PSD operator with 0 < trace <= 1.
class SemiDensityMatrix {
 public:
  explicit SemiDensityMatrix(ComplexMatrix m) : matrix_(std::move(m)) {
    const double tr = detail::validate_psd(matrix_, "SemiDensityMatrix");
    if (tr <= 0.0 || tr > 1.0 + kTraceTol) {
      throw InvalidStateError("SemiDensityMatrix: trace " + std::to_string(tr) + " outside (0, 1]");
    }
  }

  SemiDensityMatrix(const DensityMatrix& rho) : matrix_(rho.matrix()) {}  // NOLINT: a state is a semi-state

  std::size_t dim() const noexcept { return matrix_.rows(); }
  const ComplexMatrix& matrix() const noexcept { return matrix_; }
  double trace() const { return matrix_.trace().real(); }

 private:
  ComplexMatrix matrix_;
};

/// delta(i) = 1 / (i log2(i)^2). Undefined at i = 1, so enumerations index from 2.
inline double delta_weight(std::size_t i) {
  if (i < 2) throw UndefinedWeightError("delta weight is undefined for index " + std::to_string(i));
  const double l = std::log2(static_cast<double>(i));
  return 1.0 / (static_cast<double>(i) * l * l);
}

/// -log2 delta(i), the sandwich slack attached to global index i.
inline double delta_slack_bits(std::size_t i) { return -std::log2(delta_weight(i)); }

struct Purification {
  std::size_t dim_reference = 0;
  std::size_t dim_system = 0;
  ComplexVector vector;         // reference (x) system, reference index major
  std::vector<double> schmidt;  // sqrt of eigenvalues, descending

  DensityMatrix projector() const { return DensityMatrix::pure(vector); }
};

/// |psi> = sum_k sqrt(lambda_k) |k>_R |v_k>_A.
inline Purification purify(const DensityMatrix& rho) {
  const auto dec = eigh(rho.matrix());
  const std::size_t d = rho.dim();
  Purification out;
  out.dim_reference = d;
  out.dim_system = d;
  out.vector.assign(d * d, Complex{0.0, 0.0});
  out.schmidt.resize(d);
  for (std::size_t k = 0; k < d; ++k) {
    const double amp = std::sqrt(std::max(dec.eigenvalues[k], 0.0));
    out.schmidt[k] = amp;
    for (std::size_t a = 0; a < d; ++a) out.vector[k * d + a] = amp * dec.eigenvectors(a, k);
  }
  return out;
}

/// Polynomial with non-negative integer coefficients, lowest degree first.
struct LevelCountPolynomial {
  std::vector<std::size_t> coeffs;

  std::size_t operator()(std::size_t n) const {
    std::size_t value = 0, power = 1;
    for (std::size_t c : coeffs) {
      value += c * power;
      power *= n;
    }
    return value;
  }
};

/// First global index used by any enumeration.
inline constexpr std::size_t kFirstGlobalIndex = 2;

/// The enumerated state set, listed level by level. Level n holds f(n)
/// states of dimension d^n; global indices run consecutively from 2.
class StateEnumeration {
 public:
  StateEnumeration(std::size_t d, LevelCountPolynomial f, std::vector<std::vector<DensityMatrix>> levels,
                   std::string id = "custom")
      : d_(d), f_(std::move(f)), levels_(std::move(levels)), id_(std::move(id)) {
    if (d_ < 2) throw ConfigError("d", "local dimension must be at least 2");
    if (f_.coeffs.empty()) throw ConfigError("f_coeffs", "polynomial needs at least one coefficient");
    std::size_t next = kFirstGlobalIndex;
    std::size_t dim = 1;
    for (std::size_t n = 1; n <= levels_.size(); ++n) {
      dim *= d_;
      const auto& states = levels_[n - 1];
      const std::string where = "levels[" + std::to_string(n - 1) + "]";
      if (states.size() != f_(n)) {
        throw ConfigError(where + ".states", "level " + std::to_string(n) + " has " +
                                                 std::to_string(states.size()) + " states but f(n) = " +
                                                 std::to_string(f_(n)));
      }
      for (std::size_t k = 0; k < states.size(); ++k) {
        if (states[k].dim() != dim) {
          throw ConfigError(where + ".states[" + std::to_string(k) + "]",
                            "dimension " + std::to_string(states[k].dim()) + ", expected " +
                                std::to_string(dim));
        }
      }
      first_index_.push_back(next);
      next += states.size();
    }
  }

  std::size_t local_dim() const noexcept { return d_; }
  const LevelCountPolynomial& level_counts() const noexcept { return f_; }
  std::size_t max_level() const noexcept { return levels_.size(); }
  const std::string& id() const noexcept { return id_; }

  bool has_level(std::size_t n) const noexcept { return n >= 1 && n <= levels_.size(); }

  const std::vector<DensityMatrix>& states(std::size_t n) const {
    require_level(n);
    return levels_[n - 1];
  }

  std::size_t first_index(std::size_t n) const {
    require_level(n);
    return first_index_[n - 1];
  }

  /// Global index of the k-th state (0-based) at level n.
  std::size_t global_index(std::size_t n, std::size_t k) const { return first_index(n) + k; }

  std::size_t last_index(std::size_t n) const { return first_index(n) + states(n).size() - 1; }

  /// Locate a global index: (level, position within level).
  std::pair<std::size_t, std::size_t> locate(std::size_t global) const {
    for (std::size_t n = 1; n <= levels_.size(); ++n) {
      if (global >= first_index_[n - 1] && global < first_index_[n - 1] + levels_[n - 1].size()) {
        return {n, global - first_index_[n - 1]};
      }
    }
    throw ConfigError("index", "global index " + std::to_string(global) + " is not in the enumeration");
  }

  /// Largest global index the level-n bound i <= 1 + n f(n) allows.
  std::size_t worst_case_index(std::size_t n) const { return 1 + n * f_(n); }

 private:
  void require_level(std::size_t n) const {
    if (!has_level(n)) throw ConfigError("level", "enumeration has no level " + std::to_string(n));
  }

  std::size_t d_;
  LevelCountPolynomial f_;
  std::vector<std::vector<DensityMatrix>> levels_;
  std::vector<std::size_t> first_index_;
  std::string id_;
};

/// Level n holds 1 + grid*n states: the maximally mixed state, then
/// (1 - t) I/D + t |0><0| for t = k/(grid*n), k = 1..grid*n. Every member
/// leans toward the same basis vector, so rho~ is largest there and the
/// maximally mixed member is never penalized by the reference.
inline StateEnumeration default_enumeration(std::size_t d, std::size_t n_max, std::size_t grid) {
  if (d < 2) throw ParameterError("default enumeration needs d >= 2");
  if (n_max < 1) throw ParameterError("default enumeration needs n_max >= 1");
  if (grid < 1) throw ParameterError("default enumeration needs grid >= 1");
  std::vector<std::vector<DensityMatrix>> levels;
  std::size_t dim = 1;
  for (std::size_t n = 1; n <= n_max; ++n) {
    dim *= d;
    std::vector<DensityMatrix> states;
    states.push_back(DensityMatrix::maximally_mixed(dim));
    const std::size_t steps = grid * n;
    for (std::size_t k = 1; k <= steps; ++k) {
      const double t = static_cast<double>(k) / static_cast<double>(steps);
      std::vector<double> spectrum(dim, (1.0 - t) / static_cast<double>(dim));
      spectrum[0] += t;
      states.emplace_back(ComplexMatrix::diagonal(spectrum));
    }
    levels.push_back(std::move(states));
  }
  return StateEnumeration(d, LevelCountPolynomial{{1, grid}}, std::move(levels),
                          "default(d=" + std::to_string(d) + ",grid=" + std::to_string(grid) + ")");
}

struct MixtureComponent {
  std::size_t global_index;
  double weight;
  DensityMatrix state;
};

/// rho~_n = sum over level-n members of delta(i) rho_i, left subnormalized.
class ReferenceMixture {
 public:
  ReferenceMixture(std::size_t level, SemiDensityMatrix rho_tilde, std::vector<MixtureComponent> components,
                   std::string id)
      : level_(level), rho_tilde_(std::move(rho_tilde)), components_(std::move(components)), id_(std::move(id)) {}

  std::size_t level() const noexcept { return level_; }
  const SemiDensityMatrix& rho_tilde() const noexcept { return rho_tilde_; }
  const std::vector<MixtureComponent>& components() const noexcept { return components_; }
  const std::string& id() const noexcept { return id_; }

  std::map<std::size_t, double> weights() const {
    std::map<std::size_t, double> out;
    for (const auto& c : components_) out.emplace(c.global_index, c.weight);
    return out;
  }

  /// min over members of lambda_min(rho~ - delta(i) rho_i).
  double dominance_margin() const {
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& c : components_) {
      const auto gap = rho_tilde_.matrix() - c.weight * c.state.matrix();
      worst = std::min(worst, eigh(gap).min_eigenvalue());
    }
    return worst;
  }

 private:
  std::size_t level_;
  SemiDensityMatrix rho_tilde_;
  std::vector<MixtureComponent> components_;
  std::string id_;
};

inline bool is_maximally_mixed(const DensityMatrix& rho, double tol = 1e-9) {
  return max_abs_diff(rho.matrix(), DensityMatrix::maximally_mixed(rho.dim()).matrix()) <= tol;
}

inline ReferenceMixture build_reference(const StateEnumeration& enumeration, std::size_t level) {
  const auto& states = enumeration.states(level);
  if (states.empty() || !is_maximally_mixed(states.front())) {
    throw ConfigError("levels[" + std::to_string(level - 1) + "].states[0]",
                      "each level must begin with the maximally mixed state");
  }
  const std::size_t dim = states.front().dim();
  ComplexMatrix sum(dim, dim);
  std::vector<MixtureComponent> components;
  for (std::size_t k = 0; k < states.size(); ++k) {
    const std::size_t idx = enumeration.global_index(level, k);
    const double w = delta_weight(idx);
    sum += w * states[k].matrix();
    components.push_back({idx, w, states[k]});
  }
  const double lmin = eigh(sum).min_eigenvalue();
  if (lmin <= 0.0) {
    throw RankDeficiencyError("reference mixture at level " + std::to_string(level) +
                              " is rank deficient (lambda_min = " + std::to_string(lmin) + ")");
  }
  return ReferenceMixture(level, SemiDensityMatrix(std::move(sum)), std::move(components),
                          enumeration.id() + "/level=" + std::to_string(level));
}

}  // namespace algocap
