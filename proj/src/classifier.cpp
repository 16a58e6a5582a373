#include "wco/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace wco {

namespace {

template <class Scalar>
BasicDefectVectors<Scalar> alternating_sums(const BasicJSequence<Scalar>& j, unsigned m) {
  require_order(m);
  if (j.depth() < m + 1) {
    std::ostringstream msg;
    msg << "order " << m << " needs J_0..J_" << (m + 1) << " but only " << j.depth() + 1
        << " levels were supplied";
    throw InputError(msg.str());
  }
  const Index n = j.points();
  BasicDefectVectors<Scalar> out{m, std::vector<Scalar>(n, Scalar(0)), std::vector<Scalar>(n, Scalar(0))};
  for (unsigned k = 0; k <= m; ++k) {
    const BigInt c = binomial(m, k);
    const bool negative = (m - k) % 2 == 1;
    Scalar coeff;
    if constexpr (std::is_same_v<Scalar, Rational>) {
      coeff = Rational(c);
    } else {
      coeff = c.template convert_to<double>();
    }
    if (negative) coeff = -coeff;
    const auto& jk = j.level(k);
    const auto& jk1 = j.level(k + 1);
    for (Index p = 0; p < n; ++p) {
      out.g0[p] += coeff * jk[p];
      out.g[p] += coeff * jk1[p];
    }
  }
  return out;
}

std::vector<double> minus_one(const std::vector<double>& v) {
  std::vector<double> out(v.size());
  std::transform(v.begin(), v.end(), out.begin(), [](double x) { return x - 1.0; });
  return out;
}

std::vector<double> difference(const std::vector<double>& a, const std::vector<double>& b) {
  std::vector<double> out(a.size());
  for (Index i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

std::vector<Rational> difference(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  std::vector<Rational> out(a.size());
  for (Index i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

// Pointwise predicate verdict shared by the multiplication and normal cases:
// x(j) in {0,1} for the quasi classes, x(j) = 1 for the isometric classes.
Verdict two_valued_verdict(const std::vector<double>& x, unsigned m, double tolerance) {
  require_order(m);
  std::vector<double> to_one(x.size());
  std::vector<double> to_zero_or_one(x.size());
  for (Index j = 0; j < x.size(); ++j) {
    to_one[j] = std::abs(x[j] - 1.0);
    to_zero_or_one[j] = std::min(std::abs(x[j]), to_one[j]);
  }
  Verdict v;
  v.m = m;
  v.tolerance = tolerance;
  v.m_isometry = zero_test(to_one, tolerance);
  v.isometry = v.m_isometry;
  v.quasi_m_isometry = zero_test(to_zero_or_one, tolerance);
  v.quasi_isometry = v.quasi_m_isometry;
  return v;
}

}  // namespace

bool Verdict::same_classes(const Verdict& other) const noexcept {
  return is_isometry() == other.is_isometry() && is_m_isometry() == other.is_m_isometry() &&
         is_quasi_isometry() == other.is_quasi_isometry() &&
         is_quasi_m_isometry() == other.is_quasi_m_isometry();
}

void require_order(unsigned m) {
  if (m == 0) throw InputError("order m must be at least 1");
}

DefectVectors defect_sums(const JSequence& j, unsigned m) { return alternating_sums(j, m); }

ExactDefectVectors defect_sums(const ExactJSequence& j, unsigned m) { return alternating_sums(j, m); }

ZeroTest zero_test(const std::vector<double>& values, double tolerance) {
  ZeroTest t;
  for (Index j = 0; j < values.size(); ++j) {
    const double r = std::abs(values[j]);
    if (r > t.residual || std::isnan(r)) {
      t.residual = std::isnan(r) ? std::numeric_limits<double>::infinity() : r;
      t.witness = j;
    }
  }
  t.passed = t.residual <= tolerance;
  t.borderline = !t.passed && t.residual <= kBorderlineFactor * tolerance;
  return t;
}

ZeroTest zero_test(const std::vector<Rational>& values) {
  ZeroTest t;
  t.exact = true;
  Rational worst = 0;
  for (Index j = 0; j < values.size(); ++j) {
    const Rational r = abs(values[j]);
    if (r > worst) {
      worst = r;
      t.witness = j;
    }
  }
  t.residual = to_double(worst);
  t.passed = worst == 0;
  return t;
}

Verdict classify(const WeightedSystem& system, unsigned m, double tolerance) {
  require_order(m);
  const JSequence j = j_recursive(system, std::max(m + 1, 2u));
  const DefectVectors d = defect_sums(j, m);
  Verdict v;
  v.m = m;
  v.tolerance = tolerance;
  v.isometry = zero_test(minus_one(j.level(1)), tolerance);
  v.quasi_isometry = zero_test(difference(j.level(2), j.level(1)), tolerance);
  v.m_isometry = zero_test(d.g0, tolerance);
  v.quasi_m_isometry = zero_test(d.g, tolerance);
  return v;
}

Verdict classify(const ExactSystem& system, unsigned m) {
  require_order(m);
  const ExactJSequence j = j_recursive(system, std::max(m + 1, 2u));
  const ExactDefectVectors d = defect_sums(j, m);
  std::vector<Rational> ones(j.points(), Rational(1));
  Verdict v;
  v.m = m;
  v.tolerance = 0.0;
  v.isometry = zero_test(difference(j.level(1), ones));
  v.quasi_isometry = zero_test(difference(j.level(2), j.level(1)));
  v.m_isometry = zero_test(d.g0);
  v.quasi_m_isometry = zero_test(d.g);
  return v;
}

Verdict classify_composition(const DiscreteMeasureSpace& space, const Transformation& phi, unsigned m,
                             double tolerance) {
  return classify(WeightedSystem(space, phi, WeightFunction::constant(space.size(), 1.0)), m, tolerance);
}

Verdict classify_multiplication(const WeightFunction& u, unsigned m, double tolerance) {
  require_order(m);
  // Exact defects of M_u: J_k = u^{2k}, so G0 = (u^2-1)^m and G = u^2 (u^2-1)^m.
  auto zero_pattern = [&](unsigned order) {
    std::vector<bool> pattern;
    for (double value : u.values()) {
      const Rational sq = rational_from_double(value) * rational_from_double(value);
      Rational g0 = 0;
      Rational g = 0;
      Rational power = 1;
      for (unsigned k = 0; k <= order; ++k) {
        Rational c(binomial(order, k));
        if ((order - k) % 2 == 1) c = -c;
        g0 += c * power;
        power *= sq;
        g += c * power;
      }
      pattern.push_back(g0 == 0);
      pattern.push_back(g == 0);
    }
    return pattern;
  };
  if (zero_pattern(m) != zero_pattern(2)) {
    throw InternalError("multiplication operator defect zero pattern depends on the order");
  }
  return two_valued_verdict(u.values(), m, tolerance);
}

Verdict classify_normal(const std::vector<double>& j1, unsigned m, double tolerance) {
  return two_valued_verdict(j1, m, tolerance);
}

SpectrumPrediction spectrum_prediction(const Verdict& verdict, const std::vector<double>& j1,
                                       double merge_tolerance) {
  SpectrumPrediction p;
  std::vector<double> sorted(j1);
  std::sort(sorted.begin(), sorted.end());
  for (double x : sorted) {
    if (p.ess_range_of_j.empty() || x - p.ess_range_of_j.back() > merge_tolerance) p.ess_range_of_j.push_back(x);
  }
  for (double r : p.ess_range_of_j) {
    p.moduli_from_squared_reading.push_back(std::sqrt(std::max(r, 0.0)));
    p.moduli_from_root_reading.push_back(r * r);
  }
  if (verdict.is_m_isometry()) {
    p.predicted_moduli = std::vector<double>{1.0};
  } else if (verdict.is_quasi_m_isometry()) {
    p.predicted_moduli = std::vector<double>{0.0, 1.0};
  }
  return p;
}

std::optional<NotTwoIsometryCertificate> certify_not_two_isometry(const WeightedSystem& system,
                                                                  double margin) {
  const JSequence j = j_recursive(system, 2);
  const auto& j1 = j.level(1);
  const Index n = system.size();

  std::vector<bool> admissible(n);
  for (Index x = 0; x < n; ++x) admissible[x] = j1[x] > margin && j1[x] < 1.0 - margin;
  const PointSet candidates(admissible);

  PointSet chosen = PointSet::empty(n);
  for (Index x = 0; x < n; ++x) {
    if (!admissible[x] || chosen.contains(x)) continue;
    PointSet closure = backward_closure(system.phi, x);
    if (closure.is_subset_of(candidates)) chosen = chosen.united(closure);
  }
  if (chosen.is_empty()) return std::nullopt;

  NotTwoIsometryCertificate cert{chosen, chosen.measure(system.space), 1.0, {}, {}, 0, 1.0};
  for (Index x : chosen.members()) {
    if (j1[x] < cert.delta) cert.delta = j1[x];
    if (j1[x] < cert.contraction_value) {
      cert.contraction_value = j1[x];
      cert.contraction_point = x;
    }
  }
  for (Index x : chosen.members()) {
    cert.j2_lower_bound.push_back(cert.delta * cert.delta);
    cert.defect_lower_bound.push_back(cert.delta * cert.delta - 2.0 * j1[x] + 1.0);
  }
  return cert;
}

double power_lower_bound_slack(const JSequence& j, const PointSet& set, unsigned max_n) {
  if (j.depth() < max_n) throw InputError("J sequence is shorter than the requested depth");
  const auto members = set.members();
  double delta = std::numeric_limits<double>::infinity();
  for (Index x : members) delta = std::min(delta, j.level(1)[x]);
  double slack = std::numeric_limits<double>::infinity();
  for (unsigned n = 1; n <= max_n; ++n) {
    const double bound = std::pow(delta, static_cast<double>(n));
    for (Index x : members) slack = std::min(slack, j.level(n)[x] - bound);
  }
  return slack;
}

std::string describe(const Verdict& v) {
  std::ostringstream out;
  out.precision(15);
  auto line = [&](const char* name, const ZeroTest& t) {
    out << "  " << name << ": " << (t.passed ? "yes" : "no") << "  (residual " << t.residual << " at point "
        << t.witness << (t.borderline ? ", borderline" : "") << (t.exact ? ", exact" : "") << ")\n";
  };
  out << "order m = " << v.m << ", tolerance = " << v.tolerance << "\n";
  line("isometry", v.isometry);
  line("m-isometry", v.m_isometry);
  line("quasi-isometry", v.quasi_isometry);
  line("quasi-m-isometry", v.quasi_m_isometry);
  return out.str();
}

}  // namespace wco
