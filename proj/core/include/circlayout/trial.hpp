#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "circlayout/format.hpp"
#include "circlayout/model.hpp"
#include "circlayout/sampling.hpp"

namespace circlayout {

/// Test hook for the verification suite.
enum class FaultInjection {
  none,
  corrupt_eigenvector,  ///< replaces the second recovered eigenvector with v4
};

struct TrialSpec {
  CirculantModel model;
  Seed seed;
  std::vector<int> k_list{1};
  int witness_k = 1;
  bool shuffle = false;
  bool timing = false;
  FaultInjection fault = FaultInjection::none;
};

/// Per-trial checks of the deterministic inequalities and metric identities.
struct TrialChecks {
  bool davis_kahan_applicable = true;  ///< eigengap of M is positive
  bool davis_kahan = true;             ///< sin_theta_F <= dk_bound_rhs
  bool frobenius_chain = true;         ///< ||z - z_hat||^2 <= 2 ||sin Theta||_F^2
  bool witness = true;                 ///< lower_witness_left >= lower_witness_right
  bool witness_count = true;           ///< |R| = D_k of the angular order
  bool d1_equals_d = true;
  bool dk_monotone = true;
};

/// One row of an experiment sweep. Serialized fields and their order match
/// `trial_csv_header()`.
struct TrialRecord {
  int n = 0;
  double p = 0.0;
  std::optional<double> gamma;
  std::optional<double> c;
  std::string offsets_hash;
  std::uint64_t seed = 0;
  std::vector<int> k_list;
  std::int64_t d_raw = 0;
  std::int64_t d_aligned = 0;
  std::vector<std::int64_t> d_k_raw;
  std::vector<std::int64_t> d_k_aligned;
  std::array<double, 4> lambda_hat{};
  double gap12 = 0.0;  ///< p (lambda1 - lambda2)
  double gap34 = 0.0;  ///< p (lambda3 - fourth largest), exact
  double norm_e_op = 0.0;
  double norm_e_fro = 0.0;
  double sin_theta_f = 0.0;
  double dk_bound_rhs = 0.0;
  double frobenius_gap = 0.0;
  double lower_witness_left = 0.0;
  double lower_witness_right = 0.0;
  std::optional<double> runtime_ms;
  std::string status = "ok";

  // Diagnostics kept out of the CSV.
  int witness_k = 1;
  std::int64_t witness_pairs = 0;
  double radial_spread = 0.0;
  TrialChecks checks;
};

/// Absolute slack for the Davis-Kahan check; covers eigensolver roundoff
/// when both sides vanish (p = 1).
inline constexpr double kNumericalFloor = 1e-9;

/// FNV-1a over the comma-joined offsets, 16 hex digits.
std::string offsets_hash(std::span<const int> offsets);

/// Samples, lays out and measures one trial. Numerical failures are reported
/// in `status` instead of thrown.
TrialRecord run_trial(const TrialSpec& spec);

struct SweepPoint {
  CirculantModel model;
  std::vector<int> k_list;
  int witness_k = 1;
};

/// Parsed experiment configuration (JSON object):
///   n        int | [int]                required
///   p        number | [number]          required
///   offsets  [int]                      explicit S, or
///   gamma    number | [number], c number   S = {1..ceil(c n^gamma)}
///   k        [int]         beta [number]   D_k list (default [1])
///   witness_k int | witness_beta number    default witness_beta 0.6
///   trials int (1), seed uint (0), shuffle bool (false),
///   threads int (0 = hardware), timing bool (false),
///   fault "none" | "corrupt_eigenvector"
/// Sweep points enumerate n, then gamma, then p.
struct SweepConfig {
  std::vector<SweepPoint> points;
  int trials = 1;
  Seed master_seed;
  bool shuffle = false;
  int threads = 0;
  bool timing = false;
  FaultInjection fault = FaultInjection::none;
};

SweepConfig parse_sweep_config(std::string_view json_text);

/// Seed of trial t at sweep point i.
Seed trial_seed(Seed master, std::size_t point_index, std::size_t trial_index) noexcept;

/// Rows ordered by (sweep point, trial index) regardless of thread count.
std::vector<TrialRecord> run_sweep(const SweepConfig& config);

std::string trial_csv_header();
std::string trial_csv_row(const TrialRecord& record);
void write_trial_csv(std::ostream& out, std::span<const TrialRecord> records);

}  // namespace circlayout
