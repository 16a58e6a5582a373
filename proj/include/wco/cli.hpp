#pragma once

// Command implementations behind the `wco` executable. Each command returns a
// RunReport; the executable renders it as text or as one JSON object.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "wco/classifier.hpp"
#include "wco/matrix_oracle.hpp"

namespace wco::cli {

struct Check {
  std::string name;
  bool passed = false;
  bool expected_failure = false;  ///< the check documents a known negative outcome
  std::string detail;

  friend bool operator==(const Check&, const Check&) = default;
};

struct RunReport {
  std::string command;
  std::string input_digest;
  nlohmann::json verdict;      ///< null when the command produced none
  nlohmann::json residuals = nlohmann::json::object();
  nlohmann::json certificate;  ///< null when absent
  std::optional<bool> oracle_agreement;
  nlohmann::json tables = nlohmann::json::object();
  std::vector<Check> checks;
  std::vector<std::string> notes;

  /// True unless some check failed without being an expected failure.
  bool all_checks_pass() const;

  friend bool operator==(const RunReport&, const RunReport&) = default;
};

nlohmann::json to_json(const ZeroTest& t);
nlohmann::json to_json(const Verdict& v);
nlohmann::json to_json(const NotTwoIsometryCertificate& c);
nlohmann::json to_json(const RunReport& r);
RunReport report_from_json(const nlohmann::json& j);

/// 64-bit FNV-1a of the bytes, as 16 hex digits.
std::string digest(std::string_view bytes);

/// Human-readable rendering with 15 significant digits.
std::string render_text(const RunReport& r);

struct ClassifyOptions {
  unsigned m = 2;
  double tolerance = kDefaultTolerance;
  bool exact = false;
};

struct OracleOptions {
  unsigned m = 2;
  double tolerance = kDefaultTolerance;
  Index cap = kDefaultMatrixCap;
};

struct ExampleOptions {
  std::optional<unsigned> m;  ///< b: the order (default 4); c: the largest order (default 6)
  unsigned grid = 100;        ///< a: number of sample points in (0, 1]
};

RunReport cmd_jseq(const std::string& path, unsigned levels);
RunReport cmd_classify(const std::string& path, const ClassifyOptions& options);
RunReport cmd_oracle(const std::string& path, const OracleOptions& options);
RunReport cmd_examples(const std::string& which, const ExampleOptions& options);

}  // namespace wco::cli
