#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace circlayout::cli {

enum ExitCode : int {
  kSuccess = 0,
  kValidationFailure = 1,
  kAssertionFailure = 2,
  kNumericalFailure = 3,
};

struct ModelOptions {
  int n = 0;
  std::vector<int> offsets;
  std::optional<double> gamma;
  std::optional<double> c;
  double p = 1.0;
};

struct GenerateOptions {
  ModelOptions model;
  std::optional<std::uint64_t> seed;  ///< also writes a sampled edge list
  bool shuffle = false;
  std::string out;  ///< path prefix: <out>.json, <out>.edges, <out>.sample.edges
};

struct LayoutOptions {
  std::string input;
  std::uint64_t seed = 0;
  bool shuffle = false;
  std::vector<int> k;
  std::vector<double> beta;
  std::string out;         ///< JSON; stdout when empty
  std::string points_csv;  ///< optional point cloud
};

struct ExperimentOptions {
  std::string config;
  std::string out;  ///< CSV; stdout when empty
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::optional<int> threads;
};

struct VerifyOptions {
  std::string config;  ///< built-in sweep when empty
  std::optional<std::uint64_t> seed;
  std::optional<int> trials;
  std::optional<int> threads;
};

struct SpectrumOptions {
  ModelOptions model;
  std::string out;  ///< JSON; stdout when empty
};

/// Sweep used by `verify` without --config.
std::string default_verify_config();

// Each command reports problems on `err` and returns an ExitCode.
int cmd_generate(const GenerateOptions& options, std::ostream& out, std::ostream& err);
int cmd_layout(const LayoutOptions& options, std::ostream& out, std::ostream& err);
int cmd_experiment(const ExperimentOptions& options, std::ostream& out, std::ostream& err);
int cmd_verify(const VerifyOptions& options, std::ostream& out, std::ostream& err);
int cmd_spectrum(const SpectrumOptions& options, std::ostream& out, std::ostream& err);

}  // namespace circlayout::cli
