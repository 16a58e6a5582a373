#include "wco/operator_calculus.hpp"

#include <cmath>

namespace wco {

ExactSystem make_exact(const WeightedSystem& system, const SystemLiterals& literals) {
  if (literals.masses.size() != system.size() || literals.u.size() != system.size())
    throw InputError("literal table does not match the system size");
  ExactSystem exact{{}, {}, system.phi};
  for (const auto& s : literals.masses) exact.masses.push_back(parse_decimal(s));
  for (const auto& s : literals.u) exact.u.push_back(parse_decimal(s));
  return exact;
}

ExactSystem make_exact(const WeightedSystem& system) {
  ExactSystem exact{{}, {}, system.phi};
  for (double m : system.space.masses()) exact.masses.push_back(rational_from_double(m));
  for (double v : system.u.values()) exact.u.push_back(rational_from_double(v));
  return exact;
}

DensityVector radon_nikodym(const DiscreteMeasureSpace& space, const Transformation& phi) {
  DensityVector h{std::vector<double>(space.size(), 0.0)};
  for (Index k = 0; k < space.size(); ++k) {
    double pulled = 0.0;
    for (Index j : phi.fiber(k)) pulled += space.mass(j);
    h.values[k] = pulled / space.mass(k);
  }
  return h;
}

CocycleWeight cocycle(const WeightFunction& u, const Transformation& phi, unsigned n) {
  CocycleWeight out{std::vector<double>(u.size(), 1.0)};
  for (Index j = 0; j < u.size(); ++j) {
    Index orbit = j;
    for (unsigned k = 0; k < n; ++k) {
      out.values[j] *= u(orbit);
      orbit = phi(orbit);
    }
  }
  return out;
}

ConditionalExpectation conditional_expectation(const DiscreteMeasureSpace& space,
                                               const Transformation& phi,
                                               const std::vector<double>& f) {
  if (f.size() != space.size()) throw InputError("function length does not match the space");
  ConditionalExpectation result{std::vector<double>(space.size(), 0.0),
                                std::vector<std::optional<double>>(space.size())};
  for (Index k = 0; k < space.size(); ++k) {
    const auto& fiber = phi.fiber(k);
    if (fiber.empty()) continue;
    double weighted = 0.0;
    double mass = 0.0;
    for (Index j : fiber) {
      weighted += f[j] * space.mass(j);
      mass += space.mass(j);
    }
    result.by_fiber[k] = weighted / mass;
  }
  for (Index i = 0; i < space.size(); ++i) result.pointwise[i] = *result.by_fiber[phi(i)];
  return result;
}

std::vector<double> transfer(const WeightedSystem& system, const std::vector<double>& g) {
  if (g.size() != system.size()) throw InputError("function length does not match the space");
  return transfer(system.space.masses(), system.u.values(), system.phi, g);
}

JSequence j_recursive(const WeightedSystem& system, unsigned max_level) {
  return j_levels(system.space.masses(), system.u.values(), system.phi, max_level);
}

ExactJSequence j_recursive(const ExactSystem& system, unsigned max_level) {
  return j_levels(system.masses, system.u, system.phi, max_level);
}

std::vector<double> j_direct(const WeightedSystem& system, unsigned n) {
  const auto& space = system.space;
  const Transformation phi_n = iterate_map(system.phi, n);
  const DensityVector h_n = radon_nikodym(space, phi_n);
  const CocycleWeight u_n = cocycle(system.u, system.phi, n);

  std::vector<double> u_n_sq(space.size());
  for (Index j = 0; j < space.size(); ++j) u_n_sq[j] = u_n.values[j] * u_n.values[j];
  const ConditionalExpectation e_n = conditional_expectation(space, phi_n, u_n_sq);

  // Composing with phi^{-n} reads the fiber aggregate at j; empty fibers give 0.
  std::vector<double> j_n(space.size(), 0.0);
  for (Index j = 0; j < space.size(); ++j) {
    if (e_n.by_fiber[j]) j_n[j] = h_n.values[j] * *e_n.by_fiber[j];
  }
  return j_n;
}

double norm_identity_residual(const WeightedSystem& system, unsigned n, const std::vector<double>& f) {
  if (f.size() != system.size()) throw InputError("function length does not match the space");
  const auto j_n = j_recursive(system, n).level(n);
  const auto u_n = cocycle(system.u, system.phi, n);
  const Transformation phi_n = iterate_map(system.phi, n);

  double lhs = 0.0;
  double rhs = 0.0;
  for (Index j = 0; j < system.size(); ++j) {
    const double m = system.space.mass(j);
    lhs += j_n[j] * f[j] * f[j] * m;
    const double wf = u_n.values[j] * f[phi_n(j)];
    rhs += wf * wf * m;
  }
  return std::abs(lhs - rhs);
}

}  // namespace wco
