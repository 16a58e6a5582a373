#pragma once

/**
 * @file matrix_oracle.hpp
 * @brief Dense-matrix ground truth for W = M_u C_phi.
 *
 * W is written in the orthonormal basis e_j = 1_{j} / sqrt(m_j), so the
 * adjoint is the transpose:
 *
 *   A(i, j) = u(i) * sqrt(m_i / m_j)   if phi(i) = j,   0 otherwise.
 *
 * Everything here is computed from A by matrix products and eigensolves,
 * never from the J recursion, so it can referee the closed-form classifier.
 */

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "wco/classifier.hpp"
#include "wco/measure_space.hpp"

namespace wco {

inline constexpr Index kDefaultMatrixCap = 64;

struct OperatorMatrix {
  Eigen::MatrixXd entries;

  Index size() const noexcept { return static_cast<Index>(entries.rows()); }
  Eigen::MatrixXd adjoint() const { return entries.transpose(); }
};

struct DefectOperators {
  Eigen::MatrixXd b_m;    ///< sum (-1)^{m-k} C(m,k) A*^k A^k
  Eigen::MatrixXd quasi;  ///< A* B_m A
};

struct NormalityReport {
  bool normal = false;
  double residual = 0.0;  ///< max |A*A - AA*|
};

struct HermitianReport {
  std::string label;
  double max_abs_residual = 0.0;
  std::vector<double> eigenvalues;  ///< ascending
};

struct SpectrumReport {
  std::vector<std::complex<double>> eigenvalues;
  bool normal = false;
  /// For normal A: max mismatch between sorted |lambda|^2 and sorted eig(A*A).
  double gram_modulus_mismatch = 0.0;
};

struct HyponormalityReport {
  bool holds = false;
  double min_eigenvalue = 0.0;  ///< of (A*A)^p - (AA*)^p
};

/// Throws InputError when the space has more than `cap` points.
OperatorMatrix build_matrix(const WeightedSystem& system, Index cap = kDefaultMatrixCap);

DefectOperators defect_operator(const OperatorMatrix& a, unsigned m);

/// (A*)^k A^k.
Eigen::MatrixXd power_gram(const OperatorMatrix& a, unsigned k);

NormalityReport normality_check(const OperatorMatrix& a, double tolerance = kDefaultTolerance);

/// General dense eigensolve. For normal A also compares moduli against the
/// spectrum of A*A and throws InternalError if they differ by more than 1e-8.
/// Throws InternalError if the solver does not converge.
SpectrumReport spectrum_eigen(const OperatorMatrix& a, double normal_tolerance = kDefaultTolerance);

/// (A*A)^p >= (AA*)^p in the semidefinite order, up to -tolerance.
HyponormalityReport p_hyponormality_check(const OperatorMatrix& a, double p,
                                          double tolerance = kDefaultTolerance);

/// Symmetric eigensolve of `m`, residual = max |m - reference|.
HermitianReport hermitian_report(std::string label, const Eigen::MatrixXd& m,
                                 const Eigen::MatrixXd& reference);

/// Largest |entry| off the diagonal.
double off_diagonal_max(const Eigen::MatrixXd& m);

/// Classification straight from the definitions: B_1 = A*A - I, B_m, A*B_mA,
/// and A*^2A^2 - A*A, each tested as max |entry| <= tolerance.
Verdict oracle_classify(const OperatorMatrix& a, unsigned m, double tolerance = kDefaultTolerance);

}  // namespace wco
