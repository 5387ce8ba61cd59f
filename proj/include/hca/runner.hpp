#pragma once

// Experiment configs, orchestration and reports for the hca command-line tool.
//
// A config is one JSON object. Fields outside the schema of its kind are rejected.
// Exit status: 0 all checks pass, 1 a check failed (or a module raised), 2 invalid config.

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hca/literal.hpp"
#include "hca/matrix.hpp"
#include "hca/sampling.hpp"

namespace hca {

enum class Kind { evolve, audit, reconstruct, converge, multi, bell, leibniz };

std::string to_string(Kind k);
std::optional<Kind> kind_from_string(const std::string& s);

struct ValidationIssue {
  std::string path;
  std::string reason;
};

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<ValidationIssue> issues);
  const std::vector<ValidationIssue>& issues() const { return issues_; }

 private:
  std::vector<ValidationIssue> issues_;
};

struct ObservableSpec {
  std::string label;
  HermitianMatrix matrix;
};

struct RandomInstanceSpec {
  std::size_t dim = 2;
  long max_entry = 3;
};

struct ExperimentConfig {
  Kind kind = Kind::evolve;
  json source;

  std::vector<HermitianMatrix> hamiltonians;
  std::vector<GIVector> seeds;
  std::optional<RandomInstanceSpec> random_instance;
  /// One entry per part; single-part kinds use steps[0].
  std::vector<std::size_t> steps;

  std::vector<ObservableSpec> observables;

  std::optional<double> scale_l;
  std::size_t window = 32;
  std::vector<double> times;

  std::vector<double> scales;
  double time = 2.0;
  std::optional<GIVector> initial_state;
  SeedRule seed_rule = SeedRule::oracle_slice;
  double min_order = 1.7;

  std::optional<GIMatrix> interaction;
  std::vector<std::int64_t> slice_clocks{0, 0};

  std::vector<GaussianInt> sequence_a;
  std::vector<GaussianInt> sequence_b;

  std::string output_path = "hca_out";
  std::string format = "csv";
};

/// Validates a parsed config. If verb is given the config's "kind" may be omitted but must agree.
ExperimentConfig parse_config(const json& j, std::optional<Kind> verb = std::nullopt);
/// Throws ConfigError (with path "$") for unreadable or unparsable files.
ExperimentConfig load_config(const std::filesystem::path& path, std::optional<Kind> verb = std::nullopt);

enum class CheckStatus { pass, fail, info };
std::string to_string(CheckStatus s);

struct Check {
  std::string name;
  CheckStatus status = CheckStatus::info;
  json detail;
};

struct RunReport {
  Kind kind = Kind::evolve;
  json config;
  std::uint64_t seed = 0;
  std::vector<Check> checks;
  /// file name -> content, written by emit_report
  std::map<std::string, std::string> artifacts;
  double wall_seconds = 0;

  bool all_pass() const;
  int exit_code() const { return all_pass() ? 0 : 1; }
};

RunReport run(const ExperimentConfig& config, std::uint64_t seed = 1);

/// report.json (no wall time, so reruns are byte-identical) plus the artifacts; returns the paths written.
std::vector<std::filesystem::path> emit_report(const RunReport& report, const std::filesystem::path& out_dir);
json to_json(const RunReport& report);

int run_cli(int argc, char** argv);

}  // namespace hca
