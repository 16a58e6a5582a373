#pragma once

/**
 * @file classifier.hpp
 * @brief Closed-form classification of W = M_u C_phi from its J_n densities.
 *
 * With J_0 = 1 and W^{*k} W^k = M_{J_k}:
 *
 *   G0_m = sum_{k=0}^{m} (-1)^{m-k} C(m,k) J_k       W is an m-isometry iff G0_m = 0
 *   G_m  = sum_{k=0}^{m} (-1)^{m-k} C(m,k) J_{k+1}   W is a quasi-m-isometry iff G_m = 0
 *
 * at every point. Floating-point tests compare max |defect| to an absolute
 * tolerance; the exact path decides zero-ness in rational arithmetic.
 */

#include <optional>
#include <string>
#include <vector>

#include "wco/measure_space.hpp"
#include "wco/operator_calculus.hpp"

namespace wco {

inline constexpr double kDefaultTolerance = 1e-9;
/// Residuals in (tol, kBorderlineFactor * tol] are flagged as borderline.
inline constexpr double kBorderlineFactor = 10.0;

template <class Scalar>
struct BasicDefectVectors {
  unsigned m = 0;
  std::vector<Scalar> g0;  ///< m-isometry defect per point (uses J_0..J_m)
  std::vector<Scalar> g;   ///< quasi-m-isometry defect per point (uses J_1..J_{m+1})
};

using DefectVectors = BasicDefectVectors<double>;
using ExactDefectVectors = BasicDefectVectors<Rational>;

/// Outcome of one "vanishes at every point" test.
struct ZeroTest {
  bool passed = false;
  double residual = 0.0;   ///< max |defect| over points
  Index witness = 0;       ///< point attaining the residual
  bool borderline = false;
  bool exact = false;      ///< decided in rational arithmetic
};

struct Verdict {
  unsigned m = 1;
  double tolerance = kDefaultTolerance;
  ZeroTest isometry;
  ZeroTest m_isometry;
  ZeroTest quasi_isometry;
  ZeroTest quasi_m_isometry;

  bool is_isometry() const noexcept { return isometry.passed; }
  bool is_m_isometry() const noexcept { return m_isometry.passed; }
  bool is_quasi_isometry() const noexcept { return quasi_isometry.passed; }
  bool is_quasi_m_isometry() const noexcept { return quasi_m_isometry.passed; }

  /// True iff all four class booleans coincide.
  bool same_classes(const Verdict& other) const noexcept;
};

struct SpectrumPrediction {
  /// Allowed eigenvalue moduli when a containment applies ({0,1} or {1}).
  std::optional<std::vector<double>> predicted_moduli;
  /// Distinct J_1 values (values within the merge tolerance are identified).
  std::vector<double> ess_range_of_j;
  /// |lambda| = sqrt(r) for r in the range of J, from {|lambda|^2} = sigma(W*W).
  std::vector<double> moduli_from_squared_reading;
  /// |lambda| = r^2, the alternative reading |lambda|^{1/2} in range(J).
  std::vector<double> moduli_from_root_reading;
};

struct NotTwoIsometryCertificate {
  PointSet set;                             ///< backward invariant, delta <= J_1 < 1 on it
  double measure = 0.0;
  double delta = 0.0;                       ///< min J_1 on the set
  std::vector<double> j2_lower_bound;       ///< delta^2 per member (J_2 >= delta^2 there)
  std::vector<double> defect_lower_bound;   ///< delta^2 - 2 J_1 + 1 per member
  Index contraction_point = 0;              ///< ||W e_x||^2 = J_1(x) < 1 at this point
  double contraction_value = 0.0;
};

/// Checks m >= 1; throws InputError otherwise.
void require_order(unsigned m);

/// Alternating binomial sums. Throws InputError if J has fewer than m+2 levels.
DefectVectors defect_sums(const JSequence& j, unsigned m);
ExactDefectVectors defect_sums(const ExactJSequence& j, unsigned m);

ZeroTest zero_test(const std::vector<double>& values, double tolerance);
ZeroTest zero_test(const std::vector<Rational>& values);

Verdict classify(const WeightedSystem& system, unsigned m, double tolerance = kDefaultTolerance);
/// All four tests decided exactly.
Verdict classify(const ExactSystem& system, unsigned m);

/// Composition operator C_phi: classify with u = 1 (so J_n = h_n).
Verdict classify_composition(const DiscreteMeasureSpace& space, const Transformation& phi, unsigned m,
                             double tolerance = kDefaultTolerance);

/**
 * Multiplication operator M_u. Quasi-m-isometric iff every u(j) is 0 or 1,
 * m-isometric iff every u(j) is 1, independent of m. Throws InternalError if
 * the exact defect zero pattern at order m differs from the one at order 2.
 */
Verdict classify_multiplication(const WeightFunction& u, unsigned m, double tolerance = kDefaultTolerance);

/// Normal W: quasi-m iff J_1 in {0,1} pointwise, m-isometry iff J_1 = 1.
/// The verdict carries the collapse quasi-m = quasi-isometry, m-isometry = isometry.
Verdict classify_normal(const std::vector<double>& j1, unsigned m, double tolerance = kDefaultTolerance);

SpectrumPrediction spectrum_prediction(const Verdict& verdict, const std::vector<double>& j1,
                                       double merge_tolerance = kDefaultTolerance);

/**
 * Searches backward-invariant sets on which margin < J_1 < 1 - margin.
 * Returns the largest such set (the union of all qualifying backward
 * closures). An empty result says nothing about 2-isometry.
 */
std::optional<NotTwoIsometryCertificate> certify_not_two_isometry(const WeightedSystem& system,
                                                                  double margin = kDefaultTolerance);

/// min over x in set, 1 <= n <= max_n of J_n(x) - delta^n with delta = min J_1 on set.
double power_lower_bound_slack(const JSequence& j, const PointSet& set, unsigned max_n);

std::string describe(const Verdict& verdict);

}  // namespace wco
