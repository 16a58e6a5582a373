#include "wco/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <limits>
#include <iomanip>
#include <sstream>

#include "wco/interval_examples.hpp"
#include "wco/operator_calculus.hpp"

namespace wco::cli {

using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open input file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

LoadedSystem load(const std::string& path, RunReport& report) {
  const std::string text = read_file(path);
  report.input_digest = digest(text);
  try {
    LoadedSystem loaded = load_space(text);
    for (Index b : loaded.system.boundary) {
      report.notes.push_back("point " + std::to_string(b) +
                             " is a truncation boundary; its true fiber may extend past the window");
    }
    return loaded;
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::string fmt(double x) {
  std::ostringstream out;
  out << std::setprecision(15) << x;
  return out.str();
}

std::string fmt(const json& v) {
  if (v.is_number_float()) return fmt(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

double relative_gap(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

json prediction_json(const SpectrumPrediction& p) {
  json j;
  j["predicted_moduli"] = p.predicted_moduli ? json(*p.predicted_moduli) : json(nullptr);
  j["ess_range_of_j"] = p.ess_range_of_j;
  j["moduli_from_squared_reading"] = p.moduli_from_squared_reading;
  j["moduli_from_root_reading"] = p.moduli_from_root_reading;
  return j;
}

json make_table(std::vector<std::string> columns) {
  return json{{"columns", std::move(columns)}, {"rows", json::array()}};
}

void add_check(RunReport& r, std::string name, bool passed, std::string detail, bool expected_failure = false) {
  r.checks.push_back(Check{std::move(name), passed, expected_failure, std::move(detail)});
}

}  // namespace

bool RunReport::all_checks_pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const Check& c) { return c.passed || c.expected_failure; });
}

std::string digest(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << hash;
  return out.str();
}

json to_json(const ZeroTest& t) {
  return json{{"holds", t.passed},
              {"residual", t.residual},
              {"witness", t.witness},
              {"borderline", t.borderline},
              {"exact", t.exact}};
}

json to_json(const Verdict& v) {
  return json{{"m", v.m},
              {"tolerance", v.tolerance},
              {"isometry", to_json(v.isometry)},
              {"m_isometry", to_json(v.m_isometry)},
              {"quasi_isometry", to_json(v.quasi_isometry)},
              {"quasi_m_isometry", to_json(v.quasi_m_isometry)}};
}

json to_json(const NotTwoIsometryCertificate& c) {
  return json{{"set", c.set.members()},
              {"measure", c.measure},
              {"delta", c.delta},
              {"j2_lower_bound", c.j2_lower_bound},
              {"defect_lower_bound", c.defect_lower_bound},
              {"contraction_point", c.contraction_point},
              {"contraction_value", c.contraction_value}};
}

json to_json(const RunReport& r) {
  json j;
  j["command"] = r.command;
  j["input_digest"] = r.input_digest;
  j["verdict"] = r.verdict;
  j["residuals"] = r.residuals;
  j["certificate"] = r.certificate;
  j["oracle_agreement"] = r.oracle_agreement ? json(*r.oracle_agreement) : json(nullptr);
  j["tables"] = r.tables;
  json checks = json::array();
  for (const auto& c : r.checks) {
    checks.push_back(json{{"name", c.name},
                          {"passed", c.passed},
                          {"expected_failure", c.expected_failure},
                          {"detail", c.detail}});
  }
  j["checks"] = checks;
  j["notes"] = r.notes;
  return j;
}

RunReport report_from_json(const json& j) {
  RunReport r;
  r.command = j.at("command").get<std::string>();
  r.input_digest = j.at("input_digest").get<std::string>();
  r.verdict = j.at("verdict");
  r.residuals = j.at("residuals");
  r.certificate = j.at("certificate");
  if (!j.at("oracle_agreement").is_null()) r.oracle_agreement = j.at("oracle_agreement").get<bool>();
  r.tables = j.at("tables");
  for (const auto& c : j.at("checks")) {
    r.checks.push_back(Check{c.at("name").get<std::string>(), c.at("passed").get<bool>(),
                             c.at("expected_failure").get<bool>(), c.at("detail").get<std::string>()});
  }
  r.notes = j.at("notes").get<std::vector<std::string>>();
  return r;
}

std::string render_text(const RunReport& r) {
  std::ostringstream out;
  out << "command: " << r.command << "\n";
  if (!r.input_digest.empty()) out << "input digest: " << r.input_digest << "\n";
  if (!r.verdict.is_null()) {
    out << "verdict (m = " << r.verdict.at("m") << ", tolerance = " << fmt(r.verdict.at("tolerance")) << "):\n";
    for (const char* name : {"isometry", "m_isometry", "quasi_isometry", "quasi_m_isometry"}) {
      const auto& t = r.verdict.at(name);
      out << "  " << std::left << std::setw(18) << name << (t.at("holds").get<bool>() ? "yes" : "no")
          << "   residual " << fmt(t.at("residual")) << " at point " << t.at("witness");
      if (t.at("borderline").get<bool>()) out << " [borderline]";
      if (t.at("exact").get<bool>()) out << " [exact]";
      out << "\n";
    }
  }
  if (!r.residuals.empty()) {
    out << "residuals:\n";
    for (const auto& [key, value] : r.residuals.items()) out << "  " << key << ": " << fmt(value) << "\n";
  }
  if (!r.certificate.is_null()) out << "certificate: " << r.certificate.dump() << "\n";
  if (r.oracle_agreement) out << "oracle agreement: " << (*r.oracle_agreement ? "true" : "false") << "\n";
  for (const auto& [name, table] : r.tables.items()) {
    out << "table " << name << ":\n";
    if (!table.is_object() || !table.contains("columns")) {
      out << "  " << table.dump() << "\n";
      continue;
    }
    const auto& columns = table.at("columns");
    for (std::size_t i = 0; i < columns.size(); ++i) out << (i ? "," : "") << columns[i].get<std::string>();
    out << "\n";
    for (const auto& row : table.at("rows")) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << fmt(row[i]);
      out << "\n";
    }
  }
  for (const auto& c : r.checks) {
    const char* status = c.passed ? "PASS" : (c.expected_failure ? "FAIL(expected)" : "FAIL");
    out << status << "  " << c.name;
    if (!c.detail.empty()) out << "  -- " << c.detail;
    out << "\n";
  }
  for (const auto& n : r.notes) out << "note: " << n << "\n";
  return out.str();
}

RunReport cmd_jseq(const std::string& path, unsigned levels) {
  RunReport r;
  r.command = "jseq --input " + path + " --levels " + std::to_string(levels);
  const LoadedSystem loaded = load(path, r);
  const WeightedSystem& sys = loaded.system;

  const JSequence rec = j_recursive(sys, levels);
  std::vector<std::vector<double>> direct;
  for (unsigned n = 0; n <= levels; ++n) direct.push_back(j_direct(sys, n));

  std::vector<std::string> columns{"point"};
  for (unsigned n = 0; n <= levels; ++n) columns.push_back("J" + std::to_string(n));
  json recursive_table = make_table(columns);
  json direct_table = make_table(columns);

  double max_abs = 0.0;
  double max_rel = 0.0;
  for (Index j = 0; j < sys.size(); ++j) {
    json rec_row = json::array({j});
    json dir_row = json::array({j});
    for (unsigned n = 0; n <= levels; ++n) {
      const double a = rec.level(n)[j];
      const double b = direct[n][j];
      rec_row.push_back(a);
      dir_row.push_back(b);
      max_abs = std::max(max_abs, std::abs(a - b));
      max_rel = std::max(max_rel, relative_gap(a, b));
    }
    recursive_table["rows"].push_back(rec_row);
    direct_table["rows"].push_back(dir_row);
  }
  r.tables["recursive"] = recursive_table;
  r.tables["direct"] = direct_table;
  r.residuals["max_discrepancy"] = max_abs;
  r.residuals["max_relative_discrepancy"] = max_rel;
  if (max_rel > 1e-10) {
    throw InternalError("recursive and direct J_n disagree (relative gap " + fmt(max_rel) + ")");
  }
  return r;
}

RunReport cmd_classify(const std::string& path, const ClassifyOptions& options) {
  require_order(options.m);
  RunReport r;
  r.command = "classify --input " + path + " --m " + std::to_string(options.m) + " --tol " +
              fmt(options.tolerance) + (options.exact ? " --exact" : "");
  const LoadedSystem loaded = load(path, r);
  const WeightedSystem& sys = loaded.system;

  const Verdict verdict = options.exact ? classify(make_exact(sys, loaded.literals), options.m)
                                        : classify(sys, options.m, options.tolerance);
  r.verdict = to_json(verdict);
  r.residuals["isometry"] = verdict.isometry.residual;
  r.residuals["m_isometry"] = verdict.m_isometry.residual;
  r.residuals["quasi_isometry"] = verdict.quasi_isometry.residual;
  r.residuals["quasi_m_isometry"] = verdict.quasi_m_isometry.residual;

  const JSequence j = j_recursive(sys, options.m + 1);
  const DefectVectors d = defect_sums(j, options.m);
  json defects = make_table({"point", "J1", "g0", "g"});
  for (Index p = 0; p < sys.size(); ++p) defects["rows"].push_back(json::array({p, j.level(1)[p], d.g0[p], d.g[p]}));
  r.tables["defects"] = defects;

  if (auto cert = certify_not_two_isometry(sys)) {
    json c = to_json(*cert);
    // The certificate refutes 2-isometry; the exact order-2 defect must agree.
    const Verdict order2 = classify(make_exact(sys), 2);
    c["order2_exact_defect_nonzero"] = !order2.is_m_isometry();
    if (order2.is_m_isometry()) throw InternalError("certificate issued for an exact 2-isometry");
    r.certificate = c;
  }
  if (verdict.quasi_m_isometry.borderline || verdict.m_isometry.borderline || verdict.isometry.borderline ||
      verdict.quasi_isometry.borderline) {
    r.notes.push_back("a residual lies within 10x the tolerance; rerun with --exact to settle it");
  }
  return r;
}

RunReport cmd_oracle(const std::string& path, const OracleOptions& options) {
  require_order(options.m);
  RunReport r;
  r.command = "oracle --input " + path + " --m " + std::to_string(options.m) + " --tol " +
              fmt(options.tolerance) + " --cap " + std::to_string(options.cap);
  const LoadedSystem loaded = load(path, r);
  const WeightedSystem& sys = loaded.system;
  const OperatorMatrix a = build_matrix(sys, options.cap);

  const JSequence j = j_recursive(sys, options.m + 1);
  double worst_gram = 0.0;
  for (unsigned k = 0; k <= options.m + 1; ++k) {
    const Eigen::MatrixXd gram = power_gram(a, k);
    const double scale = std::max(1.0, gram.cwiseAbs().maxCoeff());
    const double off = off_diagonal_max(gram) / scale;
    double diag = 0.0;
    for (Index p = 0; p < sys.size(); ++p) {
      const auto i = static_cast<Eigen::Index>(p);
      diag = std::max(diag, relative_gap(gram(i, i), j.level(k)[p]));
    }
    r.residuals["gram" + std::to_string(k) + "_off_diagonal"] = off;
    r.residuals["gram" + std::to_string(k) + "_vs_J"] = diag;
    worst_gram = std::max({worst_gram, off, diag});
  }
  if (worst_gram > 1e-10) {
    throw InternalError("(A*)^k A^k is not diag(J_k) within 1e-10 (gap " + fmt(worst_gram) + ")");
  }

  const DefectOperators d = defect_operator(a, options.m);
  r.residuals["b_m_max_abs"] = d.b_m.cwiseAbs().maxCoeff();
  r.residuals["quasi_b_m_max_abs"] = d.quasi.cwiseAbs().maxCoeff();

  const NormalityReport normal = normality_check(a, options.tolerance);
  r.residuals["normality"] = normal.residual;
  const HyponormalityReport hypo = p_hyponormality_check(a, 1.0, options.tolerance);
  r.residuals["hyponormal_min_eigenvalue"] = hypo.min_eigenvalue;

  const SpectrumReport spectrum = spectrum_eigen(a, options.tolerance);
  json eig = make_table({"re", "im", "modulus"});
  for (const auto& lambda : spectrum.eigenvalues) {
    eig["rows"].push_back(json::array({lambda.real(), lambda.imag(), std::abs(lambda)}));
  }
  r.tables["eigenvalues"] = eig;

  const Verdict oracle = oracle_classify(a, options.m, options.tolerance);
  const Verdict closed = classify(sys, options.m, options.tolerance);
  r.verdict = to_json(oracle);
  r.oracle_agreement = oracle.same_classes(closed);
  add_check(r, "oracle verdict matches closed-form verdict", *r.oracle_agreement, "");

  if (spectrum.normal) {
    r.residuals["gram_modulus_mismatch"] = spectrum.gram_modulus_mismatch;
    const Verdict nv = classify_normal(j.level(1), options.m, options.tolerance);
    const SpectrumPrediction prediction = spectrum_prediction(nv, j.level(1));
    r.tables["spectrum_prediction"] = prediction_json(prediction);
    if (prediction.predicted_moduli) {
      double worst = 0.0;
      for (const auto& lambda : spectrum.eigenvalues) {
        double nearest = std::numeric_limits<double>::infinity();
        for (double allowed : *prediction.predicted_moduli) nearest = std::min(nearest, std::abs(std::abs(lambda) - allowed));
        worst = std::max(worst, nearest);
      }
      r.residuals["spectrum_containment"] = worst;
      add_check(r, "eigenvalue moduli lie in the predicted set", worst <= 1e-8, "max distance " + fmt(worst));
    }
  } else {
    r.notes.push_back("operator is not normal; no spectrum containment is asserted");
  }
  return r;
}

namespace {

RunReport example_a(const ExampleOptions& options) {
  RunReport r;
  r.command = "examples a --grid " + std::to_string(options.grid);
  if (options.grid == 0) throw InputError("--grid must be positive");
  json rows = make_table({"x", "J1", "J2", "defect"});
  double j1_gap = 0.0;
  double j2_gap = 0.0;
  double min_defect = std::numeric_limits<double>::infinity();
  for (unsigned i = 1; i <= options.grid; ++i) {
    const double x = static_cast<double>(i) / options.grid;
    const double j1 = interval::example_a_j(1, x);
    const double j2 = interval::example_a_j(2, x);
    const double defect = j2 - 2.0 * j1 + 1.0;
    j1_gap = std::max(j1_gap, std::abs(j1 - (x + 1.0) / 2.0));
    j2_gap = std::max(j2_gap, std::abs(j2 - (std::sqrt(x) + 1.0) * (x + 1.0) / 4.0));
    if (x <= 1.0 - 1e-6) min_defect = std::min(min_defect, defect);
    rows["rows"].push_back(json::array({x, j1, j2, defect}));
  }
  r.tables["grid"] = rows;
  r.residuals["j1_formula_gap"] = j1_gap;
  r.residuals["j2_formula_gap"] = j2_gap;
  r.residuals["min_defect_below_1"] = min_defect;
  add_check(r, "J_1 = (x+1)/2", j1_gap <= 1e-12, "max gap " + fmt(j1_gap));
  add_check(r, "J_2 = (sqrt x + 1)(x + 1)/4", j2_gap <= 1e-12, "max gap " + fmt(j2_gap));
  add_check(r, "J_2 - 2J_1 + 1 > 0 for x <= 1 - 1e-6 (not 2-isometric)", min_defect > 0.0,
            "min " + fmt(min_defect));

  const double x = 0.25;
  const double j3 = interval::example_a_j(3, x);
  const double j3_quoted = interval::example_a_j_quoted(3, x);
  add_check(r, "quoted general formula (sqrt x+1)(x+1)^{k-1}/2^k at k = 3, x = 0.25",
            std::abs(j3 - j3_quoted) <= 1e-12, "recursion " + fmt(j3) + " vs quoted " + fmt(j3_quoted), true);
  const double d = interval::example_a_defect2(x);
  const double d_quoted = interval::example_a_defect2_quoted(x);
  add_check(r, "quoted factorization (sqrt x+1)(x-4 sqrt x+2)/4 at x = 0.25", std::abs(d - d_quoted) <= 1e-12,
            "expansion " + fmt(d) + " vs quoted " + fmt(d_quoted), true);
  r.notes.push_back("the defect vanishes at x = 1, a null set; the conclusion holds almost everywhere");
  return r;
}

RunReport example_b(const ExampleOptions& options) {
  const unsigned m = options.m.value_or(4);
  RunReport r;
  r.command = "examples b --m " + std::to_string(m);
  const Verdict v = interval::example_b_classification(m);
  r.verdict = to_json(v);

  double worst_j1 = 0.0;
  json rows = make_table({"x", "J1"});
  for (unsigned i = 1; i < 100; ++i) {
    const double x = i / 100.0;
    const double j1 = interval::example_b_j1(x);
    worst_j1 = std::max(worst_j1, std::abs(j1));
    if (i % 10 == 0) rows["rows"].push_back(json::array({x, j1}));
  }
  r.tables["grid"] = rows;
  r.residuals["max_j1_on_open_interval"] = worst_j1;
  add_check(r, "J_1 = 0 on (0,1)", worst_j1 == 0.0, "");
  add_check(r, "quasi-" + std::to_string(m) + "-isometric", v.is_quasi_m_isometry(), "G_m = 0 exactly");
  add_check(r, std::to_string(m) + "-isometric", v.is_m_isometry(),
            "G0_m = (-1)^m = " + fmt(m % 2 ? -1.0 : 1.0), true);
  return r;
}

RunReport example_c(const ExampleOptions& options) {
  const unsigned max_m = options.m.value_or(6);
  require_order(max_m);
  RunReport r;
  r.command = "examples c --m " + std::to_string(max_m);
  json rows = make_table({"m", "g_magnitude", "g0_magnitude"});
  bool formulas = true;
  bool ratio = true;
  bool neither = true;
  Rational previous_g = 0;
  for (unsigned m = 1; m <= max_m; ++m) {
    const auto c = interval::example_c_defects(m);
    const Rational three_quarters_pow = boost::multiprecision::pow(BigInt(3), m);
    const Rational expected_g0 = three_quarters_pow / Rational(boost::multiprecision::pow(BigInt(4), m));
    formulas = formulas && abs(c.g0) == expected_g0 && abs(c.g) == expected_g0 / 4;
    if (m > 1) ratio = ratio && abs(c.g) / abs(previous_g) == Rational(3, 4);
    previous_g = c.g;
    neither = neither && !c.verdict.is_m_isometry() && !c.verdict.is_quasi_m_isometry();
    rows["rows"].push_back(json::array({m, c.g_magnitude, c.g0_magnitude}));
  }
  r.tables["defects"] = rows;
  add_check(r, "|G_m| = (1/4)(3/4)^m and |G0_m| = (3/4)^m (exact)", formulas, "");
  add_check(r, "|G_{m+1}| / |G_m| = 3/4 (exact)", ratio, "");
  add_check(r, "neither m-isometric nor quasi-m-isometric", neither, "");
  r.notes.push_back("uses J_n = 4^{-n} on [0,1); the point x = 1 is null");
  return r;
}

}  // namespace

RunReport cmd_examples(const std::string& which, const ExampleOptions& options) {
  if (which == "a") return example_a(options);
  if (which == "b") return example_b(options);
  if (which == "c") return example_c(options);
  throw InputError("unknown example \"" + which + "\" (expected a, b or c)");
}

}  // namespace wco::cli
