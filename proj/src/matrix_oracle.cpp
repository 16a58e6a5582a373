#include "wco/matrix_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace wco {

namespace {

ZeroTest matrix_zero_test(const Eigen::MatrixXd& m, double tolerance) {
  ZeroTest t;
  Eigen::Index row = 0;
  Eigen::Index col = 0;
  t.residual = m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(&row, &col);
  t.witness = static_cast<Index>(row);
  t.passed = t.residual <= tolerance;
  t.borderline = !t.passed && t.residual <= kBorderlineFactor * tolerance;
  return t;
}

Eigen::MatrixXd symmetric_power(const Eigen::MatrixXd& h, double p, double tolerance) {
  if ((h - h.transpose()).cwiseAbs().maxCoeff() > tolerance)
    throw InternalError("matrix power requested for a non-symmetric matrix");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
  if (solver.info() != Eigen::Success) throw InternalError("symmetric eigensolver did not converge");
  // Gram matrices are semidefinite; rounding can push zero eigenvalues slightly negative.
  Eigen::VectorXd powered =
      solver.eigenvalues().unaryExpr([p](double x) { return std::pow(std::max(x, 0.0), p); });
  return solver.eigenvectors() * powered.asDiagonal() * solver.eigenvectors().transpose();
}

}  // namespace

OperatorMatrix build_matrix(const WeightedSystem& system, Index cap) {
  const Index n = system.size();
  if (n > cap) {
    std::ostringstream msg;
    msg << "space has " << n << " points, above the dense matrix cap of " << cap;
    throw InputError(msg.str());
  }
  OperatorMatrix a{Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n))};
  for (Index i = 0; i < n; ++i) {
    const Index j = system.phi(i);
    a.entries(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
        system.u(i) * std::sqrt(system.space.mass(i) / system.space.mass(j));
  }
  return a;
}

Eigen::MatrixXd power_gram(const OperatorMatrix& a, unsigned k) {
  const auto n = a.entries.rows();
  Eigen::MatrixXd power = Eigen::MatrixXd::Identity(n, n);
  for (unsigned i = 0; i < k; ++i) power = a.entries * power;
  return power.transpose() * power;
}

DefectOperators defect_operator(const OperatorMatrix& a, unsigned m) {
  require_order(m);
  const auto n = a.entries.rows();
  DefectOperators d{Eigen::MatrixXd::Zero(n, n), Eigen::MatrixXd()};
  for (unsigned k = 0; k <= m; ++k) {
    double c = binomial(m, k).convert_to<double>();
    if ((m - k) % 2 == 1) c = -c;
    d.b_m += c * power_gram(a, k);
  }
  d.quasi = a.adjoint() * d.b_m * a.entries;
  return d;
}

NormalityReport normality_check(const OperatorMatrix& a, double tolerance) {
  const Eigen::MatrixXd diff = a.adjoint() * a.entries - a.entries * a.adjoint();
  NormalityReport r;
  r.residual = diff.size() == 0 ? 0.0 : diff.cwiseAbs().maxCoeff();
  r.normal = r.residual <= tolerance;
  return r;
}

SpectrumReport spectrum_eigen(const OperatorMatrix& a, double normal_tolerance) {
  SpectrumReport report;
  Eigen::EigenSolver<Eigen::MatrixXd> solver(a.entries, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) throw InternalError("general eigensolver did not converge");
  const Eigen::VectorXcd values = solver.eigenvalues();
  for (Eigen::Index i = 0; i < values.size(); ++i) report.eigenvalues.push_back(values(i));
  std::sort(report.eigenvalues.begin(), report.eigenvalues.end(),
            [](const auto& x, const auto& y) {
              if (std::abs(x) != std::abs(y)) return std::abs(x) < std::abs(y);
              return std::arg(x) < std::arg(y);
            });

  report.normal = normality_check(a, normal_tolerance).normal;
  if (report.normal) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> gram(a.adjoint() * a.entries,
                                                        Eigen::EigenvaluesOnly);
    if (gram.info() != Eigen::Success) throw InternalError("symmetric eigensolver did not converge");
    std::vector<double> squared;
    for (const auto& lambda : report.eigenvalues) squared.push_back(std::norm(lambda));
    std::sort(squared.begin(), squared.end());
    const Eigen::VectorXd& g = gram.eigenvalues();
    for (Index i = 0; i < squared.size(); ++i) {
      report.gram_modulus_mismatch =
          std::max(report.gram_modulus_mismatch, std::abs(squared[i] - g(static_cast<Eigen::Index>(i))));
    }
    if (report.gram_modulus_mismatch > 1e-8) {
      std::ostringstream msg;
      msg << "normal operator: squared eigenvalue moduli differ from the spectrum of A*A by "
          << report.gram_modulus_mismatch;
      throw InternalError(msg.str());
    }
  }
  return report;
}

HyponormalityReport p_hyponormality_check(const OperatorMatrix& a, double p, double tolerance) {
  if (!(p > 0.0)) throw InputError("p must be positive");
  const Eigen::MatrixXd lhs = symmetric_power(a.adjoint() * a.entries, p, tolerance);
  const Eigen::MatrixXd rhs = symmetric_power(a.entries * a.adjoint(), p, tolerance);
  const Eigen::MatrixXd diff = lhs - rhs;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(0.5 * (diff + diff.transpose()),
                                                        Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw InternalError("symmetric eigensolver did not converge");
  HyponormalityReport r;
  r.min_eigenvalue = solver.eigenvalues().size() == 0 ? 0.0 : solver.eigenvalues().minCoeff();
  r.holds = r.min_eigenvalue >= -tolerance;
  return r;
}

HermitianReport hermitian_report(std::string label, const Eigen::MatrixXd& m,
                                 const Eigen::MatrixXd& reference) {
  HermitianReport r;
  r.label = std::move(label);
  r.max_abs_residual = m.size() == 0 ? 0.0 : (m - reference).cwiseAbs().maxCoeff();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(0.5 * (m + m.transpose()), Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw InternalError("symmetric eigensolver did not converge");
  const Eigen::VectorXd& ev = solver.eigenvalues();
  r.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  return r;
}

double off_diagonal_max(const Eigen::MatrixXd& m) {
  double worst = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (i != j) worst = std::max(worst, std::abs(m(i, j)));
  return worst;
}

Verdict oracle_classify(const OperatorMatrix& a, unsigned m, double tolerance) {
  require_order(m);
  const auto n = a.entries.rows();
  const Eigen::MatrixXd gram1 = power_gram(a, 1);
  const Eigen::MatrixXd gram2 = power_gram(a, 2);
  const DefectOperators d = defect_operator(a, m);
  Verdict v;
  v.m = m;
  v.tolerance = tolerance;
  v.isometry = matrix_zero_test(gram1 - Eigen::MatrixXd::Identity(n, n), tolerance);
  v.quasi_isometry = matrix_zero_test(gram2 - gram1, tolerance);
  v.m_isometry = matrix_zero_test(d.b_m, tolerance);
  v.quasi_m_isometry = matrix_zero_test(d.quasi, tolerance);
  return v;
}

}  // namespace wco
