#pragma once

// Quantum channels in Kraus form, with Choi and Stinespring conversions,
// complementary and adjoint maps, tensor powers, and a few standard channels.

#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdlib>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "algocap/error.hpp"
#include "algocap/linalg.hpp"

namespace algocap {

inline constexpr double kCompletenessTol = 1e-8;
inline constexpr double kChoiDropCutoff = 1e-10;

/// Cap on the dimensions that tensor powers may produce.
struct DimensionBudget {
  std::size_t max_dim = 64;

  /// Reads ALGOCAP_BUDGET_DIM, falling back to the default of 64.
  static DimensionBudget from_env() {
    DimensionBudget b;
    if (const char* raw = std::getenv("ALGOCAP_BUDGET_DIM")) {
      char* end = nullptr;
      const unsigned long long v = std::strtoull(raw, &end, 10);
      if (end == raw || *end != '\0' || v == 0) {
        throw ConfigError("ALGOCAP_BUDGET_DIM", "expected a positive integer, got '" + std::string(raw) + "'");
      }
      b.max_dim = static_cast<std::size_t>(v);
    }
    return b;
  }

  void require(std::size_t required) const {
    if (required > max_dim) throw BudgetError(required, max_dim);
  }
};

/// CPTP map rho -> sum_j K_j rho K_j^dagger. The order of the Kraus operators
/// fixes the environment basis of the complementary channel.
class KrausChannel {
 public:
  KrausChannel(std::size_t dim_in, std::size_t dim_out, std::vector<ComplexMatrix> kraus, std::string id = "kraus")
      : dim_in_(dim_in), dim_out_(dim_out), kraus_(std::move(kraus)), id_(std::move(id)) {
    if (dim_in_ == 0 || dim_out_ == 0) throw DimensionError("channel dimensions must be positive");
    if (kraus_.empty()) throw ChannelError("channel needs at least one Kraus operator");
    for (std::size_t j = 0; j < kraus_.size(); ++j) {
      if (kraus_[j].rows() != dim_out_ || kraus_[j].cols() != dim_in_) {
        throw DimensionError("Kraus operator " + std::to_string(j) + " is " + kraus_[j].shape() + ", expected " +
                             std::to_string(dim_out_) + "x" + std::to_string(dim_in_));
      }
    }
    const double residual = completeness_residual();
    if (residual > kCompletenessTol) {
      throw ChannelError("Kraus operators are not trace preserving: max|sum K^dagger K - I| = " +
                         std::to_string(residual));
    }
  }

  std::size_t dim_in() const noexcept { return dim_in_; }
  std::size_t dim_out() const noexcept { return dim_out_; }
  std::size_t dim_env() const noexcept { return kraus_.size(); }
  const std::vector<ComplexMatrix>& kraus() const noexcept { return kraus_; }
  const std::string& id() const noexcept { return id_; }

  double completeness_residual() const {
    ComplexMatrix sum(dim_in_, dim_in_);
    for (const auto& k : kraus_) sum += k.adjoint() * k;
    return max_abs_diff(sum, ComplexMatrix::identity(dim_in_));
  }

 private:
  std::size_t dim_in_;
  std::size_t dim_out_;
  std::vector<ComplexMatrix> kraus_;
  std::string id_;
};

struct ChoiMatrix {
  std::size_t dim_in = 0;
  std::size_t dim_out = 0;
  /// sum_{ij} |i><j| (x) Phi(|i><j|), input factor first.
  ComplexMatrix matrix;
};

inline ComplexMatrix apply(const KrausChannel& phi, const ComplexMatrix& rho) {
  if (!rho.is_square() || rho.rows() != phi.dim_in()) {
    throw DimensionError("apply: channel input dimension " + std::to_string(phi.dim_in()) + ", state is " +
                         rho.shape());
  }
  ComplexMatrix out(phi.dim_out(), phi.dim_out());
  for (const auto& k : phi.kraus()) out += sandwich(k, rho);
  return out;
}

/// Heisenberg picture: X -> sum_j K_j^dagger X K_j.
inline ComplexMatrix adjoint_apply(const KrausChannel& phi, const ComplexMatrix& x) {
  if (!x.is_square() || x.rows() != phi.dim_out()) {
    throw DimensionError("adjoint_apply: channel output dimension " + std::to_string(phi.dim_out()) +
                         ", operator is " + x.shape());
  }
  ComplexMatrix out(phi.dim_in(), phi.dim_in());
  for (const auto& k : phi.kraus()) out += k.adjoint() * x * k;
  return out;
}

/// Channel to the environment: [Phi~(rho)]_{jk} = Tr(K_j rho K_k^dagger).
/// Its Kraus operators are F_a with (F_a)_{j,x} = (K_j)_{a,x}.
inline KrausChannel complementary(const KrausChannel& phi) {
  const std::size_t m = phi.dim_env();
  std::vector<ComplexMatrix> ops;
  ops.reserve(phi.dim_out());
  for (std::size_t a = 0; a < phi.dim_out(); ++a) {
    ComplexMatrix f(m, phi.dim_in());
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t x = 0; x < phi.dim_in(); ++x) f(j, x) = phi.kraus()[j](a, x);
    ops.push_back(std::move(f));
  }
  return KrausChannel(phi.dim_in(), m, std::move(ops), "complementary(" + phi.id() + ")");
}

/// Isometry V: H_in -> H_out (x) H_env with V[(b, j), x] = (K_j)_{b,x}.
inline ComplexMatrix stinespring(const KrausChannel& phi) {
  const std::size_t m = phi.dim_env();
  ComplexMatrix v(phi.dim_out() * m, phi.dim_in());
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t b = 0; b < phi.dim_out(); ++b)
      for (std::size_t x = 0; x < phi.dim_in(); ++x) v(b * m + j, x) = phi.kraus()[j](b, x);
  return v;
}

inline ChoiMatrix choi_from_kraus(const KrausChannel& phi) {
  const std::size_t din = phi.dim_in(), dout = phi.dim_out();
  ComplexMatrix c(din * dout, din * dout);
  for (const auto& k : phi.kraus()) {
    // vec(K)[(i, o)] = K(o, i)
    ComplexVector vec(din * dout);
    for (std::size_t i = 0; i < din; ++i)
      for (std::size_t o = 0; o < dout; ++o) vec[i * dout + o] = k(o, i);
    c += ComplexMatrix::outer(vec, vec);
  }
  return {din, dout, std::move(c)};
}

inline void validate_choi(const ChoiMatrix& c) {
  const std::size_t n = c.dim_in * c.dim_out;
  if (c.matrix.rows() != n || c.matrix.cols() != n) {
    throw DimensionError("Choi matrix is " + c.matrix.shape() + ", expected " + std::to_string(n) + "x" +
                         std::to_string(n));
  }
  const double lmin = eigh(c.matrix).min_eigenvalue();
  if (lmin < -kPsdTol) throw ChannelError("Choi matrix is not PSD: eigenvalue " + std::to_string(lmin));
  const std::size_t dims[] = {c.dim_in, c.dim_out};
  const std::size_t keep[] = {0};
  const double tp = max_abs_diff(partial_trace(c.matrix, dims, keep), ComplexMatrix::identity(c.dim_in));
  if (tp > kCompletenessTol) {
    throw ChannelError("Choi matrix is not trace preserving: residual " + std::to_string(tp));
  }
}

/// Kraus operators from the Choi eigendecomposition, descending eigenvalues,
/// dropping eigenvalues below 1e-10.
inline KrausChannel kraus_from_choi(const ChoiMatrix& c, std::string id = "choi") {
  validate_choi(c);
  const auto dec = eigh(c.matrix);
  std::vector<ComplexMatrix> ops;
  for (std::size_t k = 0; k < dec.dim(); ++k) {
    if (dec.eigenvalues[k] < kChoiDropCutoff) continue;
    const double amp = std::sqrt(dec.eigenvalues[k]);
    ComplexMatrix op(c.dim_out, c.dim_in);
    for (std::size_t i = 0; i < c.dim_in; ++i)
      for (std::size_t o = 0; o < c.dim_out; ++o) op(o, i) = amp * dec.eigenvectors(i * c.dim_out + o, k);
    ops.push_back(std::move(op));
  }
  return KrausChannel(c.dim_in, c.dim_out, std::move(ops), std::move(id));
}

inline std::size_t checked_power(std::size_t base, std::size_t n, const DimensionBudget& budget) {
  std::size_t value = 1;
  for (std::size_t k = 0; k < n; ++k) {
    value *= base;
    budget.require(value);
  }
  return value;
}

/// Phi^{(x)n}: Kraus family of all n-fold Kronecker products, first factor most
/// significant. Input, output and environment dimensions must fit the budget.
inline KrausChannel tensor_power(const KrausChannel& phi, std::size_t n,
                                 const DimensionBudget& budget = DimensionBudget{}) {
  if (n == 0) throw ParameterError("tensor_power needs n >= 1");
  checked_power(phi.dim_in(), n, budget);
  checked_power(phi.dim_out(), n, budget);
  checked_power(phi.dim_env(), n, budget);
  if (n == 1) return phi;
  std::vector<ComplexMatrix> ops = phi.kraus();
  for (std::size_t level = 2; level <= n; ++level) {
    std::vector<ComplexMatrix> next;
    next.reserve(ops.size() * phi.dim_env());
    for (const auto& a : ops)
      for (const auto& b : phi.kraus()) next.push_back(kron(a, b));
    ops = std::move(next);
  }
  std::size_t din = 1, dout = 1;
  for (std::size_t k = 0; k < n; ++k) {
    din *= phi.dim_in();
    dout *= phi.dim_out();
  }
  return KrausChannel(din, dout, std::move(ops), phi.id() + "^" + std::to_string(n));
}

// ---------------------------------------------------------------------------
// Standard channels

namespace detail {

inline void require_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ParameterError(std::string(name) + " must lie in [0, 1], got " + std::to_string(p));
  }
}

// Shortest text that reads back as the same double.
inline std::string format_param(double p) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, p);
  return std::string(buf, res.ptr);
}

inline const ComplexMatrix& pauli_x() {
  static const ComplexMatrix m{{0.0, 1.0}, {1.0, 0.0}};
  return m;
}
inline const ComplexMatrix& pauli_y() {
  static const ComplexMatrix m{{0.0, Complex(0.0, -1.0)}, {Complex(0.0, 1.0), 0.0}};
  return m;
}
inline const ComplexMatrix& pauli_z() {
  static const ComplexMatrix m{{1.0, 0.0}, {0.0, -1.0}};
  return m;
}

}  // namespace detail

inline const ComplexMatrix& pauli_x() { return detail::pauli_x(); }
inline const ComplexMatrix& pauli_y() { return detail::pauli_y(); }
inline const ComplexMatrix& pauli_z() { return detail::pauli_z(); }

inline KrausChannel identity_channel(std::size_t d) {
  if (d < 2) throw ParameterError("identity channel needs d >= 2");
  return KrausChannel(d, d, {ComplexMatrix::identity(d)}, "identity(" + std::to_string(d) + ")");
}

/// (1 - p) rho + p Z rho Z
inline KrausChannel dephasing(double p) {
  detail::require_probability(p, "dephasing p");
  return KrausChannel(2, 2,
                      {std::sqrt(1.0 - p) * ComplexMatrix::identity(2), std::sqrt(p) * detail::pauli_z()},
                      "dephasing(" + detail::format_param(p) + ")");
}

/// (1 - p) rho + p I/2, written with Kraus weights (1 - 3p/4, p/4, p/4, p/4).
inline KrausChannel depolarizing(double p) {
  detail::require_probability(p, "depolarizing p");
  return KrausChannel(2, 2,
                      {std::sqrt(1.0 - 0.75 * p) * ComplexMatrix::identity(2), std::sqrt(p / 4.0) * detail::pauli_x(),
                       std::sqrt(p / 4.0) * detail::pauli_y(), std::sqrt(p / 4.0) * detail::pauli_z()},
                      "depolarizing(" + detail::format_param(p) + ")");
}

inline KrausChannel amplitude_damping(double gamma) {
  detail::require_probability(gamma, "amplitude damping gamma");
  const ComplexMatrix k0{{1.0, 0.0}, {0.0, std::sqrt(1.0 - gamma)}};
  const ComplexMatrix k1{{0.0, std::sqrt(gamma)}, {0.0, 0.0}};
  return KrausChannel(2, 2, {k0, k1}, "amplitude_damping(" + detail::format_param(gamma) + ")");
}

/// Qubit erasure into a 3-dimensional output; |2> is the erasure flag.
inline KrausChannel erasure(double p) {
  detail::require_probability(p, "erasure p");
  ComplexMatrix keep(3, 2);
  keep(0, 0) = std::sqrt(1.0 - p);
  keep(1, 1) = std::sqrt(1.0 - p);
  ComplexMatrix lose0(3, 2), lose1(3, 2);
  lose0(2, 0) = std::sqrt(p);
  lose1(2, 1) = std::sqrt(p);
  return KrausChannel(2, 3, {keep, lose0, lose1}, "erasure(" + detail::format_param(p) + ")");
}

/// Look up a standard channel by name. `param` is d for the identity channel,
/// the noise parameter otherwise.
inline KrausChannel zoo(std::string_view name, double param) {
  if (name == "identity") {
    if (param < 2.0 || param != std::floor(param)) throw ParameterError("identity channel needs integer d >= 2");
    return identity_channel(static_cast<std::size_t>(param));
  }
  if (name == "dephasing") return dephasing(param);
  if (name == "depolarizing") return depolarizing(param);
  if (name == "amplitude_damping") return amplitude_damping(param);
  if (name == "erasure") return erasure(param);
  throw ParameterError("unknown channel '" + std::string(name) + "'");
}

inline std::vector<std::string> zoo_names() {
  return {"identity", "dephasing", "depolarizing", "amplitude_damping", "erasure"};
}

/// One representative instance of each standard channel.
inline std::vector<KrausChannel> zoo_samples() {
  return {identity_channel(2), dephasing(0.3), depolarizing(0.2), amplitude_damping(0.3), erasure(0.25)};
}

}  // namespace algocap
