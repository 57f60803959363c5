#pragma once

// Seeded generators for property checks: Hermitian matrices, density
// matrices, and mixed-unitary channels.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <cstddef>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "algocap/channels.hpp"
#include "algocap/linalg.hpp"
#include "algocap/states.hpp"

namespace algocap {

using Rng = std::mt19937_64;

inline Complex random_gaussian_complex(Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const double re = normal(rng);
  const double im = normal(rng);
  return {re, im};
}

inline ComplexMatrix random_ginibre(std::size_t rows, std::size_t cols, Rng& rng) {
  ComplexMatrix g(rows, cols);
  for (auto& x : g.data()) x = random_gaussian_complex(rng);
  return g;
}

inline ComplexMatrix random_hermitian(std::size_t d, Rng& rng) {
  const auto g = random_ginibre(d, d, rng);
  return 0.5 * (g + g.adjoint());
}

/// Full-rank with probability one (Ginibre, rank d).
inline DensityMatrix random_density(std::size_t d, Rng& rng) {
  const auto g = random_ginibre(d, d, rng);
  auto m = g * g.adjoint();
  m *= Complex(1.0 / m.trace().real());
  return DensityMatrix(std::move(m));
}

inline DensityMatrix random_pure(std::size_t d, Rng& rng) {
  ComplexVector psi(d);
  for (auto& x : psi) x = random_gaussian_complex(rng);
  return DensityMatrix::pure(psi);
}

/// Unitary = permutation * diagonal random phases.
inline ComplexMatrix random_phase_permutation(std::size_t d, Rng& rng) {
  std::vector<std::size_t> perm(d);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  ComplexMatrix u(d, d);
  for (std::size_t col = 0; col < d; ++col) u(perm[col], col) = std::polar(1.0, angle(rng));
  return u;
}

/// Mixed-unitary channel sum_k w_k U_k rho U_k^dagger with random convex weights.
inline KrausChannel random_mixed_unitary(std::size_t d, std::size_t terms, Rng& rng) {
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> w(terms);
  for (auto& x : w) x = expo(rng);
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  std::vector<ComplexMatrix> ops;
  ops.reserve(terms);
  for (std::size_t k = 0; k < terms; ++k) ops.push_back(std::sqrt(w[k] / total) * random_phase_permutation(d, rng));
  return KrausChannel(d, d, std::move(ops), "mixed_unitary(d=" + std::to_string(d) + ",terms=" + std::to_string(terms) + ")");
}

}  // namespace algocap
