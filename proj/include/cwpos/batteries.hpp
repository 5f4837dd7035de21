#pragma once

// Verification batteries behind the command-line driver, and their reports.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "cwpos/chern_weil.hpp"
#include "cwpos/generators.hpp"
#include "cwpos/positivity.hpp"

namespace cwpos {

inline constexpr const char* kVersion = "cwpos 1.0.0";

struct RunConfig {
  enum class Command { VerifyMain, VerifyC2, VerifyIneq, VerifyPushforwards, CheckForm };
  Command command = Command::VerifyMain;
  /// Empty means the command's default (see README).
  std::vector<int> dims;
  std::vector<int> ranks;
  /// Samples in total (verify-main, verify-ineq) or per (r, n) pair (verify-c2);
  /// negative means the command's default.
  int samples = -1;
  std::uint64_t seed = 0;
  SearchBudget budget;
  /// Relative tolerance for agreement of two computation routes of one form.
  double route_tol = 1e-10;
  /// Use indefinite controls instead of positive controls.
  bool negative = false;
  /// Worker threads; 0 means CWPOS_THREADS or the hardware concurrency.
  int threads = 0;
  /// check-form: curvature file, requested form and tests.
  std::string input;
  std::string form = "c2";
  std::vector<std::string> verdicts{"weak"};

  void validate() const;
};

std::string to_string(RunConfig::Command command);
RunConfig::Command parse_command(const std::string& name);

struct CheckOutcome {
  std::string form;  ///< form name, see named_form
  std::string test;  ///< "weak", "hermitian" or "strong"
  PositivityVerdict verdict;
  /// Witness value recomputed from scratch for refutations.
  std::optional<double> replay;
};

struct SampleRecord {
  std::size_t index = 0;
  GeneratorSpec spec;
  std::string source = "generator";  ///< or the input path for check-form
  bool expected_positive = true;
  std::vector<CheckOutcome> checks;
  std::vector<std::pair<std::string, double>> metrics;
  std::vector<std::string> failures;
  /// Kept for records with a refutation so that the report can be replayed alone.
  std::optional<CurvaturePoint> curvature;
  std::vector<std::pair<std::string, ExteriorForm>> forms;
};

struct SymbolicCheck {
  std::string name;
  bool passed = false;
  std::size_t cases = 0;
  std::string detail;
};

struct Report {
  RunConfig::Command command = RunConfig::Command::VerifyMain;
  std::string version = kVersion;
  std::string timestamp;
  nlohmann::json config;
  std::vector<SampleRecord> records;
  std::vector<SymbolicCheck> symbolic;

  std::size_t count(PositivityVerdict::Status status) const;
  /// Refutations of forms that theory predicts to be positive.
  std::size_t unexpected_refutations() const;
  /// Route disagreements, failed symbolic identities, witnesses that do not replay.
  std::size_t failures() const;
  bool ok() const { return unexpected_refutations() == 0 && failures() == 0; }

  nlohmann::json to_json(bool include_timestamp = true) const;
  /// One line per (sample, check).
  std::string to_csv() const;
};

/// Forms by name: "c<k>", "s<k>", "S(a,b,...)" (Schur form), "s(a,b,...)"
/// (generalized Schur form), "c1^3-c1c2", "c1c2-c3". Throws InvalidArgument otherwise.
ExteriorForm named_form(const CharacteristicForms& f, const std::string& name);

Report verify_main_theorem(const RunConfig& cfg);
Report verify_c2(const RunConfig& cfg);
Report verify_inequalities(const RunConfig& cfg);
Report verify_pushforwards(const RunConfig& cfg);
Report check_form_file(const RunConfig& cfg);
Report run(const RunConfig& cfg);

struct ReplayResult {
  std::size_t index = 0;
  std::string form;
  std::string test;
  double value = 0.0;
  double tol = 0.0;
  /// Deviation between the stored form and the form recomputed from the stored curvature.
  double form_deviation = 0.0;
};

/// Re-evaluates every refutation witness of a JSON report using only the report.
std::vector<ReplayResult> replay_report(const nlohmann::json& report);

/// Runs fn(0..count-1) on a pool of workers; the first exception is rethrown.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& fn);
/// CWPOS_THREADS if set and positive, else the hardware concurrency (at least 1).
int default_thread_count();

}  // namespace cwpos
