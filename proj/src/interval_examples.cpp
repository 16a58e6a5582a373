#include "wco/interval_examples.hpp"

#include <cmath>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace wco::interval {

namespace {

void require_unit_interval(double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    std::ostringstream msg;
    msg << "x = " << x << " is outside [0, 1]";
    throw InputError(msg.str());
  }
}

}  // namespace

double InjectiveIntervalSystem::j(unsigned n, double x) const {
  if (!(x > 0.0 && x <= 1.0)) throw InputError("the recursion needs x in (0, 1]");
  double value = 1.0;
  for (unsigned k = 0; k < n; ++k) {
    const double pre = phi_inverse(x);
    value *= h(x) * u(pre) * u(pre);
    x = pre;
  }
  return value;
}

InjectiveIntervalSystem example_a_system() {
  return {[](double x) { return std::sqrt(x * (x * x + 1.0)); }};
}

double example_a_j(unsigned n, double x) {
  require_unit_interval(x);
  // h(x) u(sqrt x)^2 simplifies to (x + 1)/2, which is also its value at 0.
  double value = 1.0;
  for (unsigned k = 0; k < n; ++k) {
    value *= (x + 1.0) / 2.0;
    x = std::sqrt(x);
  }
  return value;
}

double example_a_j_quoted(unsigned k, double x) {
  require_unit_interval(x);
  if (k == 0) return 1.0;
  if (k == 1) return (x + 1.0) / 2.0;
  return (std::sqrt(x) + 1.0) * std::pow(x + 1.0, static_cast<double>(k - 1)) / std::ldexp(1.0, static_cast<int>(k));
}

double example_a_defect2(double x) {
  require_unit_interval(x);
  return ((x + 1.0) * (std::sqrt(x) - 3.0) + 4.0) / 4.0;
}

double example_a_defect2_quoted(double x) {
  require_unit_interval(x);
  const double s = std::sqrt(x);
  return (s + 1.0) * (x - 4.0 * s + 2.0) / 4.0;
}

double example_b_j1(double x) {
  require_unit_interval(x);
  if (x == 0.0) return 0.0;
  const double s = std::sqrt(x);
  return std::floor(s) / (2.0 * s);
}

Verdict example_b_classification(unsigned m) {
  require_order(m);
  std::vector<std::vector<Rational>> levels{{Rational(1)}};
  for (unsigned k = 1; k <= m + 1; ++k) levels.push_back({Rational(0)});
  const ExactJSequence j(std::move(levels));
  const ExactDefectVectors d = defect_sums(j, m);

  Verdict v;
  v.m = m;
  v.tolerance = 0.0;
  v.isometry = zero_test(std::vector<Rational>{j.level(1)[0] - 1});
  v.quasi_isometry = zero_test(std::vector<Rational>{j.level(2)[0] - j.level(1)[0]});
  v.m_isometry = zero_test(d.g0);
  v.quasi_m_isometry = zero_test(d.g);
  return v;
}

ExampleCDefects example_c_defects(unsigned m) {
  require_order(m);
  std::vector<std::vector<Rational>> levels;
  Rational value = 1;
  for (unsigned k = 0; k <= m + 1; ++k) {
    levels.push_back({value});
    value /= 4;
  }
  const ExactJSequence j(std::move(levels));
  const ExactDefectVectors d = defect_sums(j, m);

  ExampleCDefects out;
  out.g = d.g[0];
  out.g0 = d.g0[0];
  out.g_magnitude = to_double(abs(out.g));
  out.g0_magnitude = to_double(abs(out.g0));
  out.verdict.m = m;
  out.verdict.tolerance = 0.0;
  out.verdict.isometry = zero_test(std::vector<Rational>{j.level(1)[0] - 1});
  out.verdict.quasi_isometry = zero_test(std::vector<Rational>{j.level(2)[0] - j.level(1)[0]});
  out.verdict.m_isometry = zero_test(d.g0);
  out.verdict.quasi_m_isometry = zero_test(d.g);
  return out;
}

double integrate(const std::function<double(double)>& f, double a, double b, double tolerance) {
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 30, tolerance);
}

double pushforward_integral(const std::function<double(double)>& f, double a, double b) {
  auto integrand = [&](double x) { return f(std::sqrt(x)) / (2.0 * std::sqrt(x)); };
  if (a == 0.0) {
    return integrate([&](double t) { return integrand(t * t) * 2.0 * t; }, 0.0, std::sqrt(b));
  }
  return integrate(integrand, a, b);
}

double preimage_integral(const std::function<double(double)>& f, double a, double b) {
  return integrate(f, std::sqrt(a), std::sqrt(b));
}

}  // namespace wco::interval
