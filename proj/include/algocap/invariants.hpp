#pragma once

// Registry of cross-module invariant checks run by `algocap verify`. Each check
// draws from its own seeded generator, records the worst deviation it saw and,
// on failure, the inputs that produced it.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "algocap/capacity.hpp"
#include "algocap/channels.hpp"
#include "algocap/entropy.hpp"
#include "algocap/linalg.hpp"
#include "algocap/random.hpp"
#include "algocap/serialization.hpp"
#include "algocap/states.hpp"

namespace algocap {

struct InvariantResult {
  std::string name;
  std::string scope;
  bool passed = true;
  std::size_t trials = 0;
  double worst = 0.0;  // largest deviation observed
  double tolerance = 0.0;
  Json witness;        // null unless the check failed
};

struct InvariantCheck {
  std::string name;
  std::string scope;
  std::function<InvariantResult(Rng&)> run;
};

namespace detail {

class DeviationTracker {
 public:
  DeviationTracker(std::string name, std::string scope, double tolerance) {
    result_.name = std::move(name);
    result_.scope = std::move(scope);
    result_.tolerance = tolerance;
  }

  template <typename MakeWitness>
  void observe(double deviation, MakeWitness&& make_witness) {
    ++result_.trials;
    if (!(deviation <= result_.worst)) {
      result_.worst = deviation;
      if (!(deviation <= result_.tolerance)) {
        result_.passed = false;
        result_.witness = make_witness();
      }
    }
  }

  void observe(double deviation) {
    observe(deviation, [] { return Json(nullptr); });
  }

  InvariantResult finish() { return std::move(result_); }

 private:
  InvariantResult result_;
};

inline std::size_t uniform_count(Rng& rng, std::size_t lo, std::size_t hi) {
  return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

inline double uniform_real(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

inline double binary_entropy_bits(double p) {
  double h = 0.0;
  if (p > 0.0) h -= p * std::log2(p);
  if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
  return h;
}

/// Member states, global indices and contexts for a channel at one level of
/// an enumeration.
struct LevelFixture {
  ReferenceMixture reference;
  SurrogateContext context;
};

inline LevelFixture level_fixture(const KrausChannel& phi, const StateEnumeration& e, std::size_t n) {
  auto ref = build_reference(e, n);
  SurrogateContext ctx = SurrogateContext::from_mixture(tensor_power(phi, n), ref);
  return {std::move(ref), std::move(ctx)};
}

inline std::vector<KrausChannel> property_channels(Rng& rng) {
  auto out = zoo_samples();
  for (int k = 0; k < 3; ++k) out.push_back(random_mixed_unitary(2, 3, rng));
  out.push_back(random_mixed_unitary(3, 2, rng));
  return out;
}

// --- linalg -----------------------------------------------------------------

inline InvariantResult check_kron_associativity(Rng& rng) {
  DeviationTracker t("kron_associativity", "linalg", 1e-12);
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = random_ginibre(uniform_count(rng, 1, 3), uniform_count(rng, 1, 3), rng);
    const auto b = random_ginibre(uniform_count(rng, 1, 3), uniform_count(rng, 1, 3), rng);
    const auto c = random_ginibre(uniform_count(rng, 1, 3), uniform_count(rng, 1, 3), rng);
    t.observe(max_abs_diff(kron(kron(a, b), c), kron(a, kron(b, c))), [&] {
      return Json{{"a", matrix_to_json(a)}, {"b", matrix_to_json(b)}, {"c", matrix_to_json(c)}};
    });
  }
  return t.finish();
}

inline InvariantResult check_partial_trace_of_product(Rng& rng) {
  DeviationTracker t("partial_trace_of_product", "linalg", 1e-12);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t da = uniform_count(rng, 1, 4), db = uniform_count(rng, 1, 4);
    const auto a = random_ginibre(da, da, rng);
    const auto b = random_ginibre(db, db, rng);
    const std::size_t dims[] = {da, db};
    const std::size_t keep[] = {0};
    t.observe(max_abs_diff(partial_trace(kron(a, b), dims, keep), a * b.trace()),
              [&] { return Json{{"a", matrix_to_json(a)}, {"b", matrix_to_json(b)}}; });
  }
  return t.finish();
}

inline InvariantResult check_eigh_reconstruction(Rng& rng) {
  DeviationTracker t("eigh_reconstruction", "linalg", 1e-10);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto m = random_hermitian(uniform_count(rng, 1, 16), rng);
    const auto dec = eigh(m);
    double dev = max_abs_diff(dec.reconstruct(), m);
    dev = std::max(dev, max_abs_diff(dec.eigenvectors.adjoint() * dec.eigenvectors, ComplexMatrix::identity(m.rows())));
    for (std::size_t k = 1; k < dec.dim(); ++k)
      if (dec.eigenvalues[k] > dec.eigenvalues[k - 1]) dev = std::max(dev, 1.0);
    t.observe(dev, [&] { return Json{{"m", matrix_to_json(m)}}; });
  }
  return t.finish();
}

inline InvariantResult check_log_commutes(Rng& rng) {
  DeviationTracker t("herm_log2_commutes", "linalg", 1e-9);
  for (int trial = 0; trial < 200; ++trial) {
    const auto rho = random_density(uniform_count(rng, 2, 8), rng);
    const auto& m = rho.matrix();
    const auto l = herm_log2(m);
    t.observe(max_abs_diff(m * l, l * m), [&] { return Json{{"m", matrix_to_json(m)}}; });
  }
  return t.finish();
}

// --- states -----------------------------------------------------------------

inline std::vector<StateEnumeration> sample_enumerations(Rng& rng) {
  std::vector<StateEnumeration> out;
  for (std::size_t grid : {1, 2, 3}) out.push_back(default_enumeration(2, 3, grid));
  out.push_back(default_enumeration(3, 2, 2));
  // Random members behind a maximally mixed head, constant f = 4.
  std::vector<std::vector<DensityMatrix>> levels;
  std::size_t dim = 1;
  for (std::size_t n = 1; n <= 2; ++n) {
    dim *= 2;
    std::vector<DensityMatrix> states{DensityMatrix::maximally_mixed(dim)};
    states.push_back(random_pure(dim, rng));
    states.push_back(random_density(dim, rng));
    states.push_back(random_pure(dim, rng));
    levels.push_back(std::move(states));
  }
  out.emplace_back(2, LevelCountPolynomial{{4}}, std::move(levels), "random");
  return out;
}

inline InvariantResult check_reference_dominance(Rng& rng) {
  DeviationTracker t("reference_dominance", "states", 1e-9);
  for (const auto& e : sample_enumerations(rng))
    for (std::size_t n = 1; n <= e.max_level(); ++n) {
      const auto ref = build_reference(e, n);
      for (const auto& c : ref.components()) {
        const double lmin = eigh(ref.rho_tilde().matrix() - c.weight * c.state.matrix()).min_eigenvalue();
        t.observe(-lmin, [&] { return Json{{"enumeration", e.id()}, {"level", n}, {"index", c.global_index}}; });
      }
      t.observe(ref.rho_tilde().trace() - 1.0, [&] { return Json{{"enumeration", e.id()}, {"level", n}}; });
    }
  return t.finish();
}

template <typename Deviation>
InvariantResult check_member_entropies(Rng& rng, std::string name, Deviation deviation) {
  DeviationTracker t(std::move(name), "states", 1e-9);
  for (const auto& e : sample_enumerations(rng))
    for (std::size_t n = 1; n <= e.max_level(); ++n) {
      const auto ref = build_reference(e, n);
      const auto log_ref = LogReference::of(ref.rho_tilde().matrix());
      for (const auto& c : ref.components()) {
        const double s = von_neumann(c.state.matrix());
        const double g = gacs_surrogate(c.state.matrix(), log_ref);
        t.observe(deviation(s, g, c.global_index), [&] {
          return Json{{"enumeration", e.id()}, {"level", n}, {"index", c.global_index}, {"S", s}, {"G", g}};
        });
      }
    }
  return t.finish();
}

inline InvariantResult check_purification(Rng& rng) {
  DeviationTracker t("purification_round_trip", "states", 1e-10);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = uniform_count(rng, 2, 6);
    const auto rho = trial % 3 == 0 ? random_pure(d, rng) : random_density(d, rng);
    const auto psi = purify(rho);
    const std::size_t dims[] = {d, d};
    const std::size_t keep[] = {1};
    const auto back = partial_trace(ComplexMatrix::outer(psi.vector, psi.vector), dims, keep);
    t.observe(max_abs_diff(back, rho.matrix()), [&] { return Json{{"rho", matrix_to_json(rho.matrix())}}; });
  }
  return t.finish();
}

// --- channels ---------------------------------------------------------------

inline InvariantResult check_trace_preservation(Rng& rng) {
  DeviationTracker t("trace_preservation", "channels", 1e-10);
  for (const auto& phi : property_channels(rng))
    for (int trial = 0; trial < 1000; ++trial) {
      const auto rho = random_density(phi.dim_in(), rng);
      const double tr = apply(phi, rho.matrix()).trace().real();
      t.observe(std::abs(tr - 1.0), [&] {
        return Json{{"channel", channel_to_json(phi)}, {"rho", matrix_to_json(rho.matrix())}};
      });
    }
  return t.finish();
}

inline InvariantResult check_adjoint_duality(Rng& rng) {
  DeviationTracker t("adjoint_duality", "channels", 1e-10);
  for (const auto& phi : property_channels(rng))
    for (int trial = 0; trial < 200; ++trial) {
      const auto rho = random_density(phi.dim_in(), rng);
      const auto x = random_hermitian(phi.dim_out(), rng);
      const double lhs = trace_product_real(apply(phi, rho.matrix()), x);
      const double rhs = trace_product_real(rho.matrix(), adjoint_apply(phi, x));
      t.observe(std::abs(lhs - rhs), [&] {
        return Json{{"channel", channel_to_json(phi)}, {"rho", matrix_to_json(rho.matrix())}, {"x", matrix_to_json(x)}};
      });
    }
  return t.finish();
}

inline InvariantResult check_exchange_routes(Rng& rng, std::string name, std::string scope, int trials) {
  DeviationTracker t(std::move(name), std::move(scope), kRouteAgreementTol);
  const auto channels = property_channels(rng);
  for (int trial = 0; trial < trials; ++trial) {
    const auto& phi = channels[static_cast<std::size_t>(trial) % channels.size()];
    const auto rho = trial % 4 == 0 ? random_pure(phi.dim_in(), rng) : random_density(phi.dim_in(), rng);
    const double env = exchange_entropy(rho, phi, ExchangeRoute::complementary);
    const double pur = exchange_entropy(rho, phi, ExchangeRoute::purification);
    t.observe(std::abs(env - pur), [&] {
      return Json{{"channel", channel_to_json(phi)}, {"rho", matrix_to_json(rho.matrix())}};
    });
  }
  return t.finish();
}

inline InvariantResult check_choi_psd(Rng& rng) {
  DeviationTracker t("choi_psd", "channels", 1e-9);
  for (const auto& phi : property_channels(rng)) {
    const auto c = choi_from_kraus(phi);
    t.observe(-eigh(c.matrix).min_eigenvalue(), [&] { return Json{{"channel", channel_to_json(phi)}}; });
  }
  return t.finish();
}

inline InvariantResult check_choi_round_trip(Rng& rng) {
  DeviationTracker t("choi_round_trip", "channels", 1e-8);
  for (const auto& phi : property_channels(rng)) {
    const auto c = choi_from_kraus(phi);
    const auto back = choi_from_kraus(kraus_from_choi(c));
    t.observe(max_abs_diff(back.matrix, c.matrix), [&] { return Json{{"channel", channel_to_json(phi)}}; });
  }
  return t.finish();
}

inline InvariantResult check_stinespring(Rng& rng) {
  DeviationTracker t("stinespring_marginals", "channels", 1e-9);
  for (const auto& phi : property_channels(rng)) {
    const auto v = stinespring(phi);
    t.observe(max_abs_diff(v.adjoint() * v, ComplexMatrix::identity(phi.dim_in())),
              [&] { return Json{{"channel", channel_to_json(phi)}}; });
    const auto env = complementary(phi);
    const std::size_t dims[] = {phi.dim_out(), phi.dim_env()};
    const std::size_t keep_b[] = {0};
    const std::size_t keep_e[] = {1};
    for (int trial = 0; trial < 20; ++trial) {
      const auto rho = random_density(phi.dim_in(), rng);
      const auto joint = sandwich(v, rho.matrix());
      const double dev = std::max(max_abs_diff(partial_trace(joint, dims, keep_b), apply(phi, rho.matrix())),
                                  max_abs_diff(partial_trace(joint, dims, keep_e), apply(env, rho.matrix())));
      t.observe(dev, [&] {
        return Json{{"channel", channel_to_json(phi)}, {"rho", matrix_to_json(rho.matrix())}};
      });
    }
  }
  return t.finish();
}

inline InvariantResult check_tensor_power_product(Rng& rng) {
  DeviationTracker t("tensor_power_product", "channels", 1e-10);
  for (const auto& phi : property_channels(rng)) {
    const auto phi2 = tensor_power(phi, 2);
    for (int trial = 0; trial < 20; ++trial) {
      const auto rho = random_density(phi.dim_in(), rng);
      const auto sigma = random_density(phi.dim_in(), rng);
      const auto lhs = apply(phi2, kron(rho.matrix(), sigma.matrix()));
      const auto rhs = kron(apply(phi, rho.matrix()), apply(phi, sigma.matrix()));
      t.observe(max_abs_diff(lhs, rhs), [&] {
        return Json{{"channel", channel_to_json(phi)},
                    {"rho", matrix_to_json(rho.matrix())},
                    {"sigma", matrix_to_json(sigma.matrix())}};
      });
    }
  }
  return t.finish();
}

// --- entropy ----------------------------------------------------------------

inline InvariantResult check_monotonicity(Rng& rng) {
  DeviationTracker t("relative_entropy_monotonicity", "entropy", 1e-9);
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t d = uniform_count(rng, 2, 4);
    const auto phi = random_mixed_unitary(d, uniform_count(rng, 1, 4), rng);
    const auto rho = random_density(d, rng);
    const auto sigma = random_density(d, rng);
    const double before = relative_entropy(rho.matrix(), sigma.matrix()).bits();
    const double after = relative_entropy(apply(phi, rho.matrix()), apply(phi, sigma.matrix())).bits();
    t.observe(after - before, [&] {
      return Json{{"channel", channel_to_json(phi)},
                  {"rho", matrix_to_json(rho.matrix())},
                  {"sigma", matrix_to_json(sigma.matrix())}};
    });
  }
  return t.finish();
}

/// S(Phi rho, sigma_B) <= S(rho, sigma_A) - log2 c - log2 delta(i) whenever
/// c delta(i) Phi(sigma_A) <= sigma_B; sigma_B is built to satisfy the premise.
inline InvariantResult check_shift_bound(Rng& rng) {
  DeviationTracker t("relative_entropy_shift_bound", "entropy", 1e-9);
  const auto channels = property_channels(rng);
  for (int trial = 0; trial < 200; ++trial) {
    const auto& phi = channels[static_cast<std::size_t>(trial) % channels.size()];
    const auto rho = random_density(phi.dim_in(), rng);
    const auto sigma_a = random_density(phi.dim_in(), rng);
    const auto tau = random_density(phi.dim_out(), rng);
    const double c = uniform_real(rng, 0.05, 1.0);
    const std::size_t index = uniform_count(rng, 2, 64);
    const double scale = c * delta_weight(index);
    const auto sigma_b = scale * apply(phi, sigma_a.matrix()) + (1.0 - scale) * tau.matrix();
    const double lhs = relative_entropy(apply(phi, rho.matrix()), sigma_b).bits();
    const double rhs = relative_entropy(rho.matrix(), sigma_a.matrix()).bits() + shift_slack_bits(c, index);
    t.observe(lhs - rhs, [&] {
      return Json{{"channel", channel_to_json(phi)}, {"c", c}, {"index", index}, {"rho", matrix_to_json(rho.matrix())}};
    });
  }
  return t.finish();
}

inline InvariantResult check_sandwich(Rng&) {
  DeviationTracker t("sandwich", "entropy", 1e-9);
  const auto e = default_enumeration(2, 2, 2);
  for (const auto& phi : zoo_samples())
    for (std::size_t n = 1; n <= 2; ++n) {
      const auto fx = level_fixture(phi, e, n);
      const auto& phi_n = fx.context.channel();
      for (const auto& c : fx.reference.components()) {
        const double ig = algorithmic_coherent_information(c.state, fx.context);
        const double ic = coherent_information(c.state, phi_n);
        t.observe(std::abs(ig - ic) - delta_slack_bits(c.global_index), [&] {
          return Json{{"channel", phi.id()}, {"level", n}, {"index", c.global_index}, {"IG", ig}, {"Ic", ic}};
        });
      }
    }
  return t.finish();
}

inline InvariantResult check_linearity(Rng& rng) {
  DeviationTracker t("algorithmic_ci_linearity", "entropy", 1e-9);
  const auto channels = property_channels(rng);
  for (int trial = 0; trial < 100; ++trial) {
    const auto& phi = channels[static_cast<std::size_t>(trial) % channels.size()];
    const SurrogateContext ctx(phi, random_density(phi.dim_in(), rng), "random");
    const auto r1 = random_density(phi.dim_in(), rng);
    const auto r2 = random_density(phi.dim_in(), rng);
    const double alpha = uniform_real(rng, 0.0, 1.0);
    const auto mix = alpha * r1.matrix() + (1.0 - alpha) * r2.matrix();
    const double lhs = algorithmic_coherent_information(mix, ctx);
    const double rhs = alpha * algorithmic_coherent_information(r1, ctx) +
                       (1.0 - alpha) * algorithmic_coherent_information(r2, ctx);
    t.observe(std::abs(lhs - rhs), [&] {
      return Json{{"channel", channel_to_json(phi)}, {"alpha", alpha}};
    });
  }
  return t.finish();
}

// --- capacity ---------------------------------------------------------------

inline InvariantResult check_trace_pairing(Rng& rng) {
  DeviationTracker t("objective_trace_pairing", "capacity", 1e-9);
  const auto e = default_enumeration(2, 2, 1);
  for (const auto& phi : zoo_samples())
    for (std::size_t n = 1; n <= 2; ++n) {
      const auto fx = level_fixture(phi, e, n);
      const auto op = objective_operator(fx.context, n);
      for (int trial = 0; trial < 100; ++trial) {
        const auto rho = trial % 2 ? random_pure(op.matrix.rows(), rng) : random_density(op.matrix.rows(), rng);
        const double dev = std::abs(op.pairing(rho.matrix()) - algorithmic_coherent_information(rho, fx.context));
        t.observe(dev, [&] {
          return Json{{"channel", phi.id()}, {"level", n}, {"rho", matrix_to_json(rho.matrix())}};
        });
      }
    }
  return t.finish();
}

inline InvariantResult check_entrywise_formula(Rng&) {
  DeviationTracker t("objective_entrywise_formula", "capacity", 1e-9);
  const auto e = default_enumeration(2, 2, 1);
  for (const auto& phi : zoo_samples())
    for (std::size_t n = 1; n <= 2; ++n) {
      const auto fx = level_fixture(phi, e, n);
      const auto op = objective_operator(fx.context, n);
      for (std::size_t i = 0; i < op.matrix.rows(); ++i)
        for (std::size_t j = 0; j < op.matrix.cols(); ++j)
          t.observe(std::abs(objective_entry(fx.context, i, j) - op.matrix(j, i)),
                    [&] { return Json{{"channel", phi.id()}, {"level", n}, {"I", i}, {"J", j}}; });
    }
  return t.finish();
}

inline InvariantResult check_lambda_max(Rng& rng) {
  DeviationTracker t("lambda_max_optimality", "capacity", 1e-12);
  std::vector<KrausChannel> channels = zoo_samples();
  for (int k = 0; k < 5; ++k) channels.push_back(random_mixed_unitary(2, 3, rng));
  const auto e = default_enumeration(2, 1, 2);
  for (const auto& phi : channels) {
    const auto fx = level_fixture(phi, e, 1);
    const auto op = objective_operator(fx.context, 1);
    const double lmax = max_linear_objective(op).value;
    for (int trial = 0; trial < 10000; ++trial) {
      const auto rho = trial % 2 ? random_pure(2, rng) : random_density(2, rng);
      const double v = op.pairing(rho.matrix());
      t.observe(v - lmax, [&] { return Json{{"channel", channel_to_json(phi)}, {"rho", matrix_to_json(rho.matrix())}}; });
    }
  }
  return t.finish();
}

inline InvariantResult check_subset_and_bracketing(Rng&) {
  DeviationTracker t("restricted_vs_eigen_and_bracketing", "capacity", 1e-9);
  const auto e = default_enumeration(2, 2, 2);
  for (const auto& phi : zoo_samples()) {
    const auto report = rate_sequence(phi, e, 2, RateMode::both);
    for (const auto& level : report.levels) {
      t.observe(level.restricted_max - level.eigen_max, [&] { return Json{{"channel", phi.id()}, {"level", level.n}}; });
      const auto fx = level_fixture(phi, e, level.n);
      const auto [lvl, pos] = e.locate(level.argmax_index);
      const auto& best = e.states(lvl)[pos];
      const double ic = coherent_information(best, fx.context.channel());
      t.observe(std::abs(ic - level.restricted_max) - level.slack_bits,
                [&] { return Json{{"channel", phi.id()}, {"level", level.n}, {"index", level.argmax_index}}; });
    }
  }
  return t.finish();
}

inline InvariantResult check_degradable_additivity(Rng&) {
  DeviationTracker t("degradable_additivity", "capacity", 1e-6);
  const auto e = default_enumeration(2, 2, 2);
  for (double p : {0.1, 0.2, 0.3}) {
    const auto phi2 = tensor_power(dephasing(p), 2);
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& s : e.states(2)) best = std::max(best, coherent_information(s, phi2));
    t.observe(std::abs(best / 2.0 - (1.0 - binary_entropy_bits(p))), [&] { return Json{{"p", p}, {"max_ic", best}}; });
  }
  return t.finish();
}

}  // namespace detail

inline std::vector<InvariantCheck> registered_invariants() {
  using namespace detail;
  return {
      {"kron_associativity", "linalg", check_kron_associativity},
      {"partial_trace_of_product", "linalg", check_partial_trace_of_product},
      {"eigh_reconstruction", "linalg", check_eigh_reconstruction},
      {"herm_log2_commutes", "linalg", check_log_commutes},
      {"reference_dominance", "states", check_reference_dominance},
      {"semi2_entropy_below_surrogate", "states",
       [](Rng& rng) {
         return check_member_entropies(rng, "semi2_entropy_below_surrogate",
                                       [](double s, double g, std::size_t) { return s - g; });
       }},
      {"semi1_surrogate_below_entropy_plus_slack", "states",
       [](Rng& rng) {
         return check_member_entropies(rng, "semi1_surrogate_below_entropy_plus_slack",
                                       [](double s, double g, std::size_t i) { return g - s - delta_slack_bits(i); });
       }},
      {"purification_round_trip", "states", check_purification},
      {"trace_preservation", "channels", check_trace_preservation},
      {"adjoint_duality", "channels", check_adjoint_duality},
      {"complementary_consistency", "channels",
       [](Rng& rng) { return check_exchange_routes(rng, "complementary_consistency", "channels", 100); }},
      {"choi_psd", "channels", check_choi_psd},
      {"choi_round_trip", "channels", check_choi_round_trip},
      {"stinespring_marginals", "channels", check_stinespring},
      {"tensor_power_product", "channels", check_tensor_power_product},
      {"relative_entropy_monotonicity", "entropy", check_monotonicity},
      {"relative_entropy_shift_bound", "entropy", check_shift_bound},
      {"sandwich", "entropy", check_sandwich},
      {"algorithmic_ci_linearity", "entropy", check_linearity},
      {"exchange_entropy_routes", "entropy",
       [](Rng& rng) { return check_exchange_routes(rng, "exchange_entropy_routes", "entropy", 200); }},
      {"objective_trace_pairing", "capacity", check_trace_pairing},
      {"objective_entrywise_formula", "capacity", check_entrywise_formula},
      {"lambda_max_optimality", "capacity", check_lambda_max},
      {"restricted_vs_eigen_and_bracketing", "capacity", check_subset_and_bracketing},
      {"degradable_additivity", "capacity", check_degradable_additivity},
  };
}

inline std::vector<std::string> invariant_scopes() { return {"linalg", "states", "channels", "entropy", "capacity"}; }

/// Run every check whose scope matches (`all` runs everything). Check k is
/// seeded with seed + k so results do not depend on which scopes are selected.
inline std::vector<InvariantResult> run_invariants(std::string_view scope, std::uint64_t seed) {
  std::vector<InvariantResult> out;
  const auto checks = registered_invariants();
  for (std::size_t k = 0; k < checks.size(); ++k) {
    if (scope != "all" && scope != checks[k].scope) continue;
    Rng rng(seed + k);
    try {
      out.push_back(checks[k].run(rng));
    } catch (const Error& e) {
      InvariantResult failed;
      failed.name = checks[k].name;
      failed.scope = checks[k].scope;
      failed.passed = false;
      failed.witness = Json{{"exception", e.what()}};
      out.push_back(std::move(failed));
    }
  }
  return out;
}

inline Json invariant_summary(const std::vector<InvariantResult>& results, std::uint64_t seed) {
  Json checks = Json::array();
  std::size_t failed = 0;
  for (const auto& r : results) {
    if (!r.passed) ++failed;
    Json entry{{"name", r.name},   {"scope", r.scope},         {"passed", r.passed},
               {"trials", r.trials}, {"worst_deviation", r.worst}, {"tolerance", r.tolerance}};
    if (!r.passed) entry["witness"] = r.witness;
    checks.push_back(std::move(entry));
  }
  return Json{{"seed", seed}, {"total", results.size()}, {"failed", failed}, {"checks", std::move(checks)}};
}

}  // namespace algocap
