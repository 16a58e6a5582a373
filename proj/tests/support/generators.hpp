#pragma once

// Random and structured (space, phi, u) generators plus brute-force oracles
// shared by the unit and acceptance suites. The oracles read only the raw
// map/mass/weight vectors and never call into the operator_calculus code.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "wco/measure_space.hpp"

namespace wco::testkit {

struct RandomSpec {
  Index min_points = 1;
  Index max_points = 8;
  double mass_lo = 0.1;
  double mass_hi = 10.0;
  double u_lo = 0.0;
  double u_hi = 2.0;
};

inline Index random_size(std::mt19937_64& rng, const RandomSpec& spec) {
  return std::uniform_int_distribution<Index>(spec.min_points, spec.max_points)(rng);
}

inline std::vector<Index> random_map(std::mt19937_64& rng, Index n) {
  std::uniform_int_distribution<Index> pick(0, n - 1);
  std::vector<Index> map(n);
  for (auto& v : map) v = pick(rng);
  return map;
}

inline std::vector<Index> random_permutation(std::mt19937_64& rng, Index n) {
  std::vector<Index> map(n);
  for (Index i = 0; i < n; ++i) map[i] = i;
  std::shuffle(map.begin(), map.end(), rng);
  return map;
}

inline std::vector<double> random_reals(std::mt19937_64& rng, Index n, double lo, double hi) {
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> out(n);
  for (auto& v : out) v = dist(rng);
  return out;
}

/// Masses in [mass_lo, mass_hi], u in [u_lo, u_hi], arbitrary total phi.
inline WeightedSystem random_system(std::mt19937_64& rng, const RandomSpec& spec = {}) {
  const Index n = random_size(rng, spec);
  return WeightedSystem(DiscreteMeasureSpace(random_reals(rng, n, spec.mass_lo, spec.mass_hi)),
                        Transformation(random_map(rng, n)), WeightFunction(random_reals(rng, n, spec.u_lo, spec.u_hi)));
}

/// Mixture of generic draws and families with exact or near-exact zero
/// defects (isometries, 0/1 weights, u = 0, multiplication operators).
/// Masses stay in [mass_lo, mass_hi] and u in [u_lo, u_hi] only for the
/// generic family; the structured ones may leave that box.
inline WeightedSystem structured_system(std::mt19937_64& rng, const RandomSpec& spec = {}) {
  const Index n = random_size(rng, spec);
  const int family = std::uniform_int_distribution<int>(0, 5)(rng);
  std::bernoulli_distribution coin(0.5);
  auto masses = random_reals(rng, n, spec.mass_lo, spec.mass_hi);
  switch (family) {
    case 1: {
      std::vector<double> u(n);
      for (auto& v : u) v = coin(rng) ? 1.0 : 0.0;
      return WeightedSystem(DiscreteMeasureSpace::unit(n), Transformation(random_map(rng, n)), WeightFunction(u));
    }
    case 2: {
      auto map = random_permutation(rng, n);
      std::vector<double> u(n);
      for (Index i = 0; i < n; ++i) u[i] = std::sqrt(masses[map[i]] / masses[i]);
      return WeightedSystem(DiscreteMeasureSpace(masses), Transformation(map), WeightFunction(u));
    }
    case 3: {
      std::vector<double> u(n);
      for (auto& v : u) v = coin(rng) ? 1.0 : 0.0;
      return WeightedSystem(DiscreteMeasureSpace::unit(n), Transformation(random_permutation(rng, n)),
                            WeightFunction(u));
    }
    case 4:
      return WeightedSystem(DiscreteMeasureSpace(masses), Transformation(random_map(rng, n)),
                            WeightFunction::constant(n, 0.0));
    case 5: {
      std::vector<double> u(n);
      std::uniform_int_distribution<int> kind(0, 2);
      std::uniform_real_distribution<double> any(spec.u_lo, spec.u_hi);
      for (auto& v : u) {
        const int k = kind(rng);
        v = k == 0 ? 0.0 : (k == 1 ? 1.0 : any(rng));
      }
      return WeightedSystem(DiscreteMeasureSpace(masses), Transformation::identity(n), WeightFunction(u));
    }
    default:
      return WeightedSystem(DiscreteMeasureSpace(masses), Transformation(random_map(rng, n)),
                            WeightFunction(random_reals(rng, n, spec.u_lo, spec.u_hi)));
  }
}

/// Candidates likely to be normal: u(i) in {0, c * sqrt(m_phi(i) / m_i)}.
/// Callers filter with normality_check.
inline WeightedSystem normal_candidate(std::mt19937_64& rng, const RandomSpec& spec = {}) {
  const Index n = random_size(rng, spec);
  auto masses = random_reals(rng, n, spec.mass_lo, spec.mass_hi);
  std::bernoulli_distribution permute(0.5);
  std::bernoulli_distribution keep(0.6);
  std::bernoulli_distribution unit_scale(0.7);
  auto map = permute(rng) ? random_permutation(rng, n) : random_map(rng, n);
  const double c = unit_scale(rng) ? 1.0 : std::uniform_real_distribution<double>(0.2, 1.8)(rng);
  std::vector<double> u(n);
  for (Index i = 0; i < n; ++i) u[i] = keep(rng) ? c * std::sqrt(masses[map[i]] / masses[i]) : 0.0;
  return WeightedSystem(DiscreteMeasureSpace(masses), Transformation(map), WeightFunction(u));
}

// ---------------------------------------------------------------------------
// Brute-force oracles
// ---------------------------------------------------------------------------

/// J_n(j) = (1/m_j) sum over i with phi^n(i) = j of (prod_{k<n} u(phi^k i))^2 m_i,
/// by walking every orbit explicitly.
inline std::vector<double> path_sum_j(const WeightedSystem& s, unsigned n) {
  const auto& map = s.phi.map();
  const auto& m = s.space.masses();
  const auto& u = s.u.values();
  std::vector<double> out(m.size(), 0.0);
  for (Index i = 0; i < m.size(); ++i) {
    Index at = i;
    double weight = 1.0;
    for (unsigned k = 0; k < n; ++k) {
      weight *= u[at];
      at = map[at];
    }
    out[at] += weight * weight * m[i];
  }
  for (Index j = 0; j < m.size(); ++j) out[j] /= m[j];
  return out;
}

/// Every nonempty S (as a bitmask) with phi^{-1}(S) ⊆ S, by exhaustive search.
inline std::vector<std::uint64_t> brute_backward_invariant(const std::vector<Index>& map) {
  const Index n = map.size();
  std::vector<std::uint64_t> out;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    bool ok = true;
    for (Index i = 0; i < n && ok; ++i) {
      const bool image_in = (mask >> map[i]) & 1U;
      const bool i_in = (mask >> i) & 1U;
      if (image_in && !i_in) ok = false;
    }
    if (ok) out.push_back(mask);
  }
  return out;
}

inline std::uint64_t to_mask(const PointSet& s) {
  std::uint64_t mask = 0;
  for (Index j : s.members()) mask |= std::uint64_t{1} << j;
  return mask;
}

}  // namespace wco::testkit
