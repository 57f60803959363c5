#pragma once

// Entropic functionals in bits: von Neumann, relative and exchange entropy,
// coherent information, and the reference-based surrogate of Gacs complexity
// together with the algorithmic coherent information built from it.

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>

#include "algocap/channels.hpp"
#include "algocap/error.hpp"
#include "algocap/linalg.hpp"
#include "algocap/states.hpp"

namespace algocap {

/// Weight a state may put on the kernel of a reference and still count as
/// supported by it.
inline constexpr double kSupportLeakTol = 1e-10;
inline constexpr double kRouteAgreementTol = 1e-9;

inline double entropy_of_spectrum(std::span<const double> eigenvalues, double cutoff = kSupportCutoff) {
  double s = 0.0;
  for (double x : eigenvalues)
    if (x > cutoff) s -= x * std::log2(x);
  return s;
}

/// -Tr(rho log2 rho) for a PSD matrix (trace may be below one).
inline double von_neumann(const ComplexMatrix& rho) {
  const auto values = eigvalsh(rho);
  if (values.back() < -kPsdTol) {
    throw NegativeEigenvalueError("von_neumann: eigenvalue " + std::to_string(values.back()));
  }
  return entropy_of_spectrum(values);
}

inline double von_neumann(const SemiDensityMatrix& rho) { return von_neumann(rho.matrix()); }

/// Relative entropy value; +infinity is a tag, never a floating-point inf.
class RelativeEntropy {
 public:
  static RelativeEntropy finite(double bits) { return RelativeEntropy(false, bits); }
  static RelativeEntropy infinite() { return RelativeEntropy(true, 0.0); }

  bool is_infinite() const noexcept { return infinite_; }
  bool is_finite() const noexcept { return !infinite_; }

  double bits() const {
    if (infinite_) throw SupportError("relative entropy is infinite (support violation)");
    return bits_;
  }

  std::string to_string() const { return infinite_ ? "+inf" : std::to_string(bits_); }

 private:
  RelativeEntropy(bool inf, double bits) : infinite_(inf), bits_(bits) {}
  bool infinite_;
  double bits_;
};

/// log2 of a reference operator together with the projector onto its kernel,
/// so support checks and pairings reuse one eigendecomposition.
struct LogReference {
  ComplexMatrix log2;
  ComplexMatrix kernel;

  static LogReference of(const ComplexMatrix& ref, double cutoff = kSupportCutoff) {
    const auto dec = eigh(ref);
    if (dec.min_eigenvalue() < -kPsdTol) {
      throw NegativeEigenvalueError("reference has eigenvalue " + std::to_string(dec.min_eigenvalue()));
    }
    return {dec.apply([cutoff](double x) { return x > cutoff ? std::log2(x) : 0.0; }), kernel_projector(dec, cutoff)};
  }

  /// Weight rho puts outside the support of the reference.
  double leakage(const ComplexMatrix& rho) const { return trace_product_real(rho, kernel); }

  bool supports(const ComplexMatrix& rho) const { return leakage(rho) <= kSupportLeakTol; }

  /// -Tr(rho log2 ref) on the support.
  double cross_entropy(const ComplexMatrix& rho) const { return -trace_product_real(rho, log2); }
};

inline RelativeEntropy relative_entropy(const ComplexMatrix& rho, const ComplexMatrix& sigma) {
  if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols()) {
    throw DimensionError("relative_entropy: " + rho.shape() + " vs " + sigma.shape());
  }
  const auto ref = LogReference::of(sigma);
  if (!ref.supports(rho)) return RelativeEntropy::infinite();
  return RelativeEntropy::finite(ref.cross_entropy(rho) - von_neumann(rho));
}

inline RelativeEntropy relative_entropy(const DensityMatrix& rho, const SemiDensityMatrix& sigma) {
  return relative_entropy(rho.matrix(), sigma.matrix());
}

enum class SupportPolicy {
  strict,      // raise SupportError when a state leaks outside the reference support
  restricted,  // evaluate the support-restricted log regardless
};

/// -Tr(rho log2 ref), the surrogate Gacs complexity against a computable reference.
inline double gacs_surrogate(const ComplexMatrix& rho, const LogReference& ref,
                             SupportPolicy policy = SupportPolicy::strict) {
  if (policy == SupportPolicy::strict) {
    const double leak = ref.leakage(rho);
    if (leak > kSupportLeakTol) {
      throw SupportError("state puts weight " + std::to_string(leak) + " outside the reference support");
    }
  }
  return ref.cross_entropy(rho);
}

inline double gacs_surrogate(const SemiDensityMatrix& rho, const SemiDensityMatrix& ref,
                             SupportPolicy policy = SupportPolicy::strict) {
  if (rho.dim() != ref.dim()) throw DimensionError("gacs_surrogate: dimension mismatch");
  return gacs_surrogate(rho.matrix(), LogReference::of(ref.matrix()), policy);
}

// ---------------------------------------------------------------------------
// Channel entropies

enum class ExchangeRoute {
  complementary,  // S(Phi~(rho))
  purification,   // S((id (x) Phi)|psi><psi|)
  verified,       // both, raising RouteMismatchError if they differ by more than 1e-9
};

/// Joint reference/output state (id (x) Phi)(|psi><psi|) for a purification of rho.
inline ComplexMatrix reference_output_state(const DensityMatrix& rho, const KrausChannel& phi) {
  if (rho.dim() != phi.dim_in()) throw DimensionError("reference_output_state: dimension mismatch");
  const auto psi = purify(rho);
  const std::size_t dr = psi.dim_reference, din = phi.dim_in(), dout = phi.dim_out();
  ComplexMatrix joint(dr * dout, dr * dout);
  for (const auto& k : phi.kraus()) {
    ComplexVector w(dr * dout, Complex{0.0, 0.0});
    for (std::size_t r = 0; r < dr; ++r)
      for (std::size_t b = 0; b < dout; ++b) {
        Complex acc{0.0, 0.0};
        for (std::size_t a = 0; a < din; ++a) acc += k(b, a) * psi.vector[r * din + a];
        w[r * dout + b] = acc;
      }
    joint += ComplexMatrix::outer(w, w);
  }
  return joint;
}

inline double exchange_entropy(const DensityMatrix& rho, const KrausChannel& phi,
                               ExchangeRoute route = ExchangeRoute::complementary) {
  if (rho.dim() != phi.dim_in()) {
    throw DimensionError("exchange_entropy: state dimension " + std::to_string(rho.dim()) +
                         ", channel input " + std::to_string(phi.dim_in()));
  }
  if (route == ExchangeRoute::purification) return von_neumann(reference_output_state(rho, phi));
  const double via_env = von_neumann(apply(complementary(phi), rho.matrix()));
  if (route == ExchangeRoute::verified) {
    const double via_purification = von_neumann(reference_output_state(rho, phi));
    if (std::abs(via_env - via_purification) > kRouteAgreementTol) {
      throw RouteMismatchError("exchange entropy routes disagree: " + std::to_string(via_env) + " vs " +
                               std::to_string(via_purification));
    }
  }
  return via_env;
}

/// I_c = S(Phi(rho)) - S(rho, Phi).
inline double coherent_information(const DensityMatrix& rho, const KrausChannel& phi,
                                   ExchangeRoute route = ExchangeRoute::complementary) {
  if (rho.dim() != phi.dim_in()) throw DimensionError("coherent_information: dimension mismatch");
  return von_neumann(apply(phi, rho.matrix())) - exchange_entropy(rho, phi, route);
}

/// Slack -log2 c - log2 delta(i) in the relative-entropy shift bound
/// S(Phi rho, sigma_B) <= S(rho, sigma_A) + slack when c delta(i) Phi(sigma_A) <= sigma_B.
inline double shift_slack_bits(double c, std::size_t index) {
  if (!(c > 0.0)) throw ParameterError("shift constant must be positive");
  return -std::log2(c) + delta_slack_bits(index);
}

// ---------------------------------------------------------------------------
// Algorithmic coherent information against a reference mixture

/// A level-n channel together with the pushforwards of a reference input
/// operator through it and through its complementary channel. Logs are
/// computed once at construction.
class SurrogateContext {
 public:
  SurrogateContext(KrausChannel phi_n, SemiDensityMatrix ref_in, std::string reference_id,
                   SupportPolicy policy = SupportPolicy::strict)
      : phi_(std::move(phi_n)),
        env_(complementary(phi_)),
        ref_in_(std::move(ref_in)),
        ref_out_b_(apply(phi_, ref_in_.matrix())),
        ref_out_e_(apply(env_, ref_in_.matrix())),
        log_b_(LogReference::of(ref_out_b_.matrix())),
        log_e_(LogReference::of(ref_out_e_.matrix())),
        reference_id_(std::move(reference_id)),
        policy_(policy) {
    if (ref_in_.dim() != phi_.dim_in()) {
      throw DimensionError("reference dimension " + std::to_string(ref_in_.dim()) + " does not match channel input " +
                           std::to_string(phi_.dim_in()));
    }
  }

  static SurrogateContext from_mixture(KrausChannel phi_n, const ReferenceMixture& mixture,
                                       SupportPolicy policy = SupportPolicy::strict) {
    return SurrogateContext(std::move(phi_n), mixture.rho_tilde(), mixture.id(), policy);
  }

  const KrausChannel& channel() const noexcept { return phi_; }
  const KrausChannel& complementary_channel() const noexcept { return env_; }
  const SemiDensityMatrix& ref_in() const noexcept { return ref_in_; }
  const SemiDensityMatrix& ref_out_b() const noexcept { return ref_out_b_; }
  const SemiDensityMatrix& ref_out_e() const noexcept { return ref_out_e_; }
  const LogReference& log_b() const noexcept { return log_b_; }
  const LogReference& log_e() const noexcept { return log_e_; }
  const std::string& reference_id() const noexcept { return reference_id_; }
  SupportPolicy policy() const noexcept { return policy_; }

 private:
  KrausChannel phi_;
  KrausChannel env_;
  SemiDensityMatrix ref_in_;
  SemiDensityMatrix ref_out_b_;
  SemiDensityMatrix ref_out_e_;
  LogReference log_b_;
  LogReference log_e_;
  std::string reference_id_;
  SupportPolicy policy_;
};

struct SurrogateTerms {
  double output_bits;       // -Tr(Phi(rho) log2 Phi(rho~))
  double environment_bits;  // -Tr(Phi~(rho) log2 Phi~(rho~))
  double value() const noexcept { return output_bits - environment_bits; }
};

/// Both surrogate complexities for an input operator. Linear in `rho`; accepts
/// any Hermitian operator of the right dimension.
inline SurrogateTerms surrogate_terms(const ComplexMatrix& rho, const SurrogateContext& ctx) {
  if (!rho.is_square() || rho.rows() != ctx.channel().dim_in()) {
    throw DimensionError("algorithmic coherent information: input is " + rho.shape() + ", context level expects " +
                         std::to_string(ctx.channel().dim_in()));
  }
  const auto out_b = apply(ctx.channel(), rho);
  const auto out_e = apply(ctx.complementary_channel(), rho);
  try {
    return {gacs_surrogate(out_b, ctx.log_b(), ctx.policy()), gacs_surrogate(out_e, ctx.log_e(), ctx.policy())};
  } catch (const SupportError& e) {
    throw SupportError(std::string(e.what()) + " (reference " + ctx.reference_id() + ")");
  }
}

inline double algorithmic_coherent_information(const ComplexMatrix& rho, const SurrogateContext& ctx) {
  return surrogate_terms(rho, ctx).value();
}

inline double algorithmic_coherent_information(const DensityMatrix& rho, const SurrogateContext& ctx) {
  return algorithmic_coherent_information(rho.matrix(), ctx);
}

}  // namespace algocap
