#pragma once

/**
 * @file operator_calculus.hpp
 * @brief Radon-Nikodym derivatives, cocycles, conditional expectation and the
 *        J_n densities of W = M_u C_phi on a discrete space.
 *
 * On atoms with masses m_j:
 *
 *   h(k)      = (1/m_k) * sum_{j in phi^{-1}(k)} m_j
 *   E(f)(i)   = mass-weighted mean of f over the fiber containing i
 *   J_n(j)    = (1/m_j) * sum_{i in phi^{-1}(j)} J_{n-1}(i) u(i)^2 m_i,  J_0 = 1
 *
 * W^{*n} W^n is multiplication by J_n, so sum_j J_n(j)|f(j)|^2 m_j = ||W^n f||^2.
 */

#include <optional>
#include <vector>

#include "wco/measure_space.hpp"
#include "wco/rational.hpp"

namespace wco {

struct DensityVector {
  std::vector<double> values;
};

struct CocycleWeight {
  std::vector<double> values;
};

struct ConditionalExpectation {
  /// E(f) evaluated at every point (constant on each fiber).
  std::vector<double> pointwise;
  /// Mean over phi^{-1}({k}); empty optional when that fiber is empty.
  std::vector<std::optional<double>> by_fiber;
};

/// J_0..J_N, one vector per level. Level 0 is identically one.
template <class Scalar>
class BasicJSequence {
 public:
  explicit BasicJSequence(std::vector<std::vector<Scalar>> levels) : levels_(std::move(levels)) {}

  std::size_t depth() const noexcept { return levels_.empty() ? 0 : levels_.size() - 1; }
  std::size_t points() const noexcept { return levels_.empty() ? 0 : levels_.front().size(); }
  const std::vector<Scalar>& level(std::size_t k) const { return levels_.at(k); }
  const std::vector<std::vector<Scalar>>& levels() const noexcept { return levels_; }

 private:
  std::vector<std::vector<Scalar>> levels_;
};

using JSequence = BasicJSequence<double>;
using ExactJSequence = BasicJSequence<Rational>;

/// Rational copy of a system, built from the decimal literals of the input.
struct ExactSystem {
  std::vector<Rational> masses;
  std::vector<Rational> u;
  Transformation phi;
};

ExactSystem make_exact(const WeightedSystem& system, const SystemLiterals& literals);
/// Uses the exact binary value of every double.
ExactSystem make_exact(const WeightedSystem& system);

DensityVector radon_nikodym(const DiscreteMeasureSpace& space, const Transformation& phi);

/// u_n(j) = u(j) u(phi(j)) ... u(phi^{n-1}(j)); u_0 = 1.
CocycleWeight cocycle(const WeightFunction& u, const Transformation& phi, unsigned n);

ConditionalExpectation conditional_expectation(const DiscreteMeasureSpace& space,
                                               const Transformation& phi,
                                               const std::vector<double>& f);

/// One step of the J recursion applied to an arbitrary g:
/// (T g)(j) = (1/m_j) sum_{i in phi^{-1}(j)} g(i) u(i)^2 m_i.
template <class Scalar>
std::vector<Scalar> transfer(const std::vector<Scalar>& masses, const std::vector<Scalar>& u,
                             const Transformation& phi, const std::vector<Scalar>& g) {
  const Index n = masses.size();
  std::vector<Scalar> out(n, Scalar(0));
  for (Index j = 0; j < n; ++j) {
    Scalar acc(0);
    for (Index i : phi.fiber(j)) acc += g[i] * u[i] * u[i] * masses[i];
    out[j] = acc / masses[j];
  }
  return out;
}

std::vector<double> transfer(const WeightedSystem& system, const std::vector<double>& g);

template <class Scalar>
BasicJSequence<Scalar> j_levels(const std::vector<Scalar>& masses, const std::vector<Scalar>& u,
                                const Transformation& phi, unsigned max_level) {
  std::vector<std::vector<Scalar>> levels;
  levels.reserve(max_level + 1);
  levels.emplace_back(masses.size(), Scalar(1));
  for (unsigned k = 1; k <= max_level; ++k) levels.push_back(transfer(masses, u, phi, levels.back()));
  return BasicJSequence<Scalar>(std::move(levels));
}

/// J_0..J_N by the recursion J_n = h E(J_{n-1} u^2) ∘ phi^{-1}.
JSequence j_recursive(const WeightedSystem& system, unsigned max_level);
ExactJSequence j_recursive(const ExactSystem& system, unsigned max_level);

/// J_n from phi^n directly: h_n * E_n(u_n^2) ∘ phi^{-n}.
std::vector<double> j_direct(const WeightedSystem& system, unsigned n);

/// | sum_j J_n(j)|f(j)|^2 m_j - sum_j u_n(j)^2 |f(phi^n(j))|^2 m_j |.
double norm_identity_residual(const WeightedSystem& system, unsigned n, const std::vector<double>& f);

}  // namespace wco
