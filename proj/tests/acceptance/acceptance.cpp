// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails. Optional argument: artifact directory.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "circlayout/layout.hpp"
#include "circlayout/metrics.hpp"
#include "circlayout/model.hpp"
#include "circlayout/sampling.hpp"
#include "circlayout/spectral.hpp"
#include "circlayout/trial.hpp"
#include "commands.hpp"
#include "oracles.hpp"

using namespace circlayout;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
};

std::string fmt(double value, int precision = 4) {
  std::ostringstream out;
  out << std::setprecision(precision) << value;
  return out.str();
}

std::vector<int> range(int first, int last) {
  std::vector<int> out;
  for (int s = first; s <= last; ++s) out.push_back(s);
  return out;
}

std::vector<int> images(const Permutation& p) { return {p.images().begin(), p.images().end()}; }

std::vector<TrialRecord> sweep(const std::string& json) { return run_sweep(parse_sweep_config(json)); }

Outcome spectrum_equivalence() {
  Rng rng(Seed{101});
  int matched = 0;
  double worst = 0.0;
  for (int model_index = 0; model_index < 25; ++model_index) {
    const int n = 8 + static_cast<int>(rng.below(57));
    const int max_s = (n - 1) / 2;
    std::vector<int> offsets;
    for (int s = 1; s <= max_s; ++s) {
      if (rng.uniform() < 0.4) offsets.push_back(s);
    }
    if (offsets.empty()) offsets.push_back(1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_s))));
    const auto model = CirculantModel::create(n, offsets, 1.0);
    const auto closed = closed_form_spectrum(model);
    const auto numeric = top_eigenpairs(adjacency(model), n).eigenvalues;
    bool ok = true;
    for (double lambda : closed.eigenvalues) {
      const double nearest = (numeric.array() - lambda).abs().minCoeff();
      worst = std::max(worst, nearest);
      ok = ok && nearest <= 1e-8;
    }
    const auto copies = ((numeric.array() - closed.eigenvalues[1]).abs() <= 1e-8).count();
    ok = ok && std::abs(closed.eigenvalues[1] - closed.eigenvalues[2]) <= 1e-8 && copies >= 2;
    matched += ok;
  }
  return {matched == 25, std::to_string(matched) + "/25 models, worst deviation " + fmt(worst)};
}

Outcome exact_recovery() {
  int exact = 0, total = 0;
  for (int n : {10, 50, 200}) {
    for (const auto& offsets : {std::vector<int>{1}, std::vector<int>{1, 2, 3}, range(1, n / 4)}) {
      const auto model = CirculantModel::create(n, offsets, 1.0);
      const auto instance = relabel(sample(model, Seed{1}), Seed{2});
      const auto layout = recover_layout(instance.adjacency);
      exact += kendall_distance(align_to_truth(layout.order, *instance.hidden_truth).ranks) == 0;
      ++total;
    }
  }
  return {exact == total, std::to_string(exact) + "/" + std::to_string(total) + " cases with aligned D = 0"};
}

const std::string kInequalitySweep = R"({"n": 200, "offsets": [1,2,3,4,5,6,7,8,9,10],
  "p": [0.3, 0.5, 0.9], "trials": 100, "seed": 3003, "shuffle": true, "witness_beta": 0.6})";

std::vector<TrialRecord>& inequality_records() {
  static std::vector<TrialRecord> records = sweep(kInequalitySweep);
  return records;
}

Outcome davis_kahan() {
  const auto& records = inequality_records();
  long held = 0;
  double worst = 0.0;
  for (const auto& r : records) {
    const bool ok = r.checks.davis_kahan_applicable && r.sin_theta_f <= r.dk_bound_rhs;
    held += ok;
    worst = std::max(worst, r.sin_theta_f / r.dk_bound_rhs);
  }
  return {held == static_cast<long>(records.size()),
          std::to_string(held) + "/" + std::to_string(records.size()) +
              " trials, max sin_theta_F / bound " + fmt(worst)};
}

Outcome lower_bound_witness() {
  const auto& records = inequality_records();
  long held = 0, nonempty = 0;
  for (const auto& r : records) {
    held += r.lower_witness_left >= r.lower_witness_right;
    nonempty += r.witness_pairs > 0;
  }
  return {held == static_cast<long>(records.size()),
          std::to_string(held) + "/" + std::to_string(records.size()) + " trials (k = " +
              std::to_string(k_from_beta(200, 0.6)) + ", " + std::to_string(nonempty) +
              " with nonempty R)"};
}

struct PermutationCorpus {
  std::vector<std::vector<int>> items;
};

PermutationCorpus& corpus() {
  static PermutationCorpus c = [] {
    PermutationCorpus out;
    std::vector<int> p(7);
    std::iota(p.begin(), p.end(), 0);
    do {
      out.items.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    Rng rng(Seed{505});
    for (int i = 0; i < 100; ++i) out.items.push_back(images(random_permutation(50, rng)));
    return out;
  }();
  return c;
}

Outcome metric_oracles() {
  long mismatches = 0, comparisons = 0;
  for (const auto& p : corpus().items) {
    const Permutation sigma(p);
    mismatches += kendall_distance(sigma) != oracle::inversions(p);
    ++comparisons;
    for (int k = 1; k <= static_cast<int>(p.size()); ++k) {
      mismatches += d_k(sigma, k) != oracle::circular_inversions(p, k);
      ++comparisons;
    }
  }
  return {mismatches == 0, std::to_string(corpus().items.size()) + " permutations, " +
                               std::to_string(comparisons) + " comparisons, " +
                               std::to_string(mismatches) + " mismatches"};
}

Outcome metric_identities() {
  long bad = 0;
  for (const auto& p : corpus().items) {
    const Permutation sigma(p);
    bad += d_k(sigma, 1) != kendall_distance(sigma);
    for (int k = 2; k <= static_cast<int>(p.size()); ++k) bad += d_k(sigma, k) > d_k(sigma, k - 1);
  }
  return {bad == 0, std::to_string(corpus().items.size()) + " permutations, " + std::to_string(bad) +
                        " violations of D_1 = D or monotonicity"};
}

const std::string kScalingSweep = R"({"n": [100, 200, 400, 800], "gamma": 1, "c": 0.25,
  "p": 0.5, "trials": 20, "seed": 7007, "shuffle": true, "beta": [0.6], "witness_beta": 0.6})";

struct ScalingData {
  std::vector<std::pair<double, double>> d;
  std::vector<std::pair<double, double>> gap;
  std::vector<std::pair<double, double>> dk;
};

ScalingData& scaling() {
  static ScalingData data = [] {
    const auto config = parse_sweep_config(kScalingSweep);
    const auto records = run_sweep(config);
    ScalingData out;
    const auto trials = static_cast<std::size_t>(config.trials);
    for (std::size_t i = 0; i < config.points.size(); ++i) {
      std::vector<double> d, gap, dk;
      for (std::size_t t = 0; t < trials; ++t) {
        const auto& r = records[i * trials + t];
        d.push_back(static_cast<double>(r.d_aligned));
        gap.push_back(r.frobenius_gap * r.frobenius_gap);
        dk.push_back(static_cast<double>(r.d_k_aligned.back()));
      }
      const double n = config.points[i].model.n();
      out.d.emplace_back(n, median(d));
      out.gap.emplace_back(n, median(gap));
      out.dk.emplace_back(n, median(dk));
    }
    return out;
  }();
  return data;
}

Outcome kendall_scaling() {
  const double limit = bound_exponent(RateBound::kendall, {1.0, 0.0, 0.25}) + 0.3;
  const auto fit = fit_loglog_slope(scaling().d);
  return {fit.slope <= limit, "slope " + fmt(fit.slope) + " <= " + fmt(limit)};
}

Outcome circular_scaling() {
  const double limit = bound_exponent(RateBound::dk, {1.0, 0.6, 0.25}) + 0.3;
  const auto fit = fit_loglog_slope(scaling().dk);
  return {fit.slope <= limit, "k = ceil(n^0.6), slope " + fmt(fit.slope) + " <= " + fmt(limit)};
}

Outcome subspace_scaling() {
  const double limit = (5.0 - 6.0 * 1.0) + 0.3;
  const auto fit = fit_loglog_slope(scaling().gap);
  return {fit.slope <= limit, "slope " + fmt(fit.slope) + " <= " + fmt(limit)};
}

Outcome norm_concentration() {
  double worst = 0.0;
  long within = 0, total = 0;
  for (int n : {200, 400, 800}) {
    // All admissible offsets: the most perturbed entries per row.
    const auto model = CirculantModel::create(n, range(1, (n - 1) / 2), 0.5);
    for (std::uint64_t t = 0; t < 50; ++t) {
      const auto instance = sample(model, derive_seed(Seed{9009}, t));
      const double ratio =
          operator_norm(perturbation(instance, model)) / (bernoulli_sigma(0.5) * std::sqrt(n));
      worst = std::max(worst, ratio);
      within += ratio <= 3.0;
      ++total;
    }
  }
  return {within == total, std::to_string(within) + "/" + std::to_string(total) + " trials, max ratio " + fmt(worst)};
}

Outcome radial_spread_trend(const fs::path& artifacts) {
  const auto offsets = range(1, 30);
  std::vector<double> medians;
  for (double p : {0.3, 0.5, 0.9}) {
    const auto model = CirculantModel::create(300, offsets, p);
    std::vector<double> spreads;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto layout = recover_layout(sample(model, Seed{seed}).adjacency);
      spreads.push_back(radial_spread(layout.embedding));
      if (seed == 0) {
        std::ofstream csv(artifacts / ("point_cloud_p" + fmt(p) + ".csv"));
        write_point_cloud_csv(csv, layout.embedding, layout.order);
      }
    }
    medians.push_back(median(spreads));
  }
  const bool decreasing = medians[0] > medians[1] && medians[1] > medians[2];
  return {decreasing, "median radial sd " + fmt(medians[0]) + " > " + fmt(medians[1]) + " > " +
                          fmt(medians[2]) + " (p = 0.3, 0.5, 0.9)"};
}

Outcome pair_gap_identity() {
  Rng rng(Seed{1111});
  double worst = 0.0;
  for (int t = 0; t < 1000; ++t) {
    const int n = 5 + static_cast<int>(rng.below(1996));
    const int k = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    const int i = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    worst = std::max(worst, std::abs(exact_pair_gap(n, k) - oracle::direct_pair_gap(n, k, i)));
  }
  return {worst <= 1e-12, "1000 triples, max deviation " + fmt(worst)};
}

Outcome determinism(const fs::path& artifacts) {
  const fs::path config = artifacts / "determinism.json";
  {
    std::ofstream out(config);
    out << R"({"n": [60, 90], "gamma": [0.8, 1], "c": 0.2, "p": [0.4, 0.8], "beta": [0.5],
  "k": [1, 3], "trials": 5, "seed": 1212, "shuffle": true})";
  }
  std::vector<std::string> outputs;
  for (int threads : {1, 4, 4}) {
    cli::ExperimentOptions options;
    options.config = config.string();
    options.out = (artifacts / ("determinism_" + std::to_string(outputs.size()) + ".csv")).string();
    options.threads = threads;
    std::ostringstream sink, err;
    if (cli::cmd_experiment(options, sink, err) != cli::kSuccess) return {false, "experiment failed: " + err.str()};
    std::ifstream in(options.out, std::ios::binary);
    std::ostringstream text;
    text << in.rdbuf();
    outputs.push_back(text.str());
  }
  const bool same = outputs[0] == outputs[1] && outputs[1] == outputs[2];
  return {same, "3 runs (1, 4, 4 threads), " + std::to_string(outputs[0].size()) + " bytes each, " +
                    (same ? "identical" : "different")};
}

}  // namespace

int main(int argc, char** argv) {
  const fs::path artifacts = argc > 1 ? fs::path(argv[1]) : fs::path("acceptance_artifacts");
  fs::create_directories(artifacts);

  struct Criterion {
    std::string id;
    const char* name;
    double time_limit_s;  // 0 = none
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria = {
      {"1", "spectrum equivalence", 10, spectrum_equivalence},
      {"2", "exact recovery at p = 1", 30, exact_recovery},
      {"3", "Davis-Kahan bound", 120, davis_kahan},
      {"4", "lower-bound witness inequality", 0, lower_bound_witness},
      {"5", "metric oracles", 30, metric_oracles},
      {"6", "D_1 = D and D_k monotone", 0, metric_identities},
      {"7", "Kendall distance scaling", 600, kendall_scaling},
      {"7a", "circular distance scaling", 0, circular_scaling},
      {"8", "subspace error scaling", 0, subspace_scaling},
      {"9", "perturbation norm scale", 0, norm_concentration},
      {"10", "radial spread decreases with p", 0, [&] { return radial_spread_trend(artifacts); }},
      {"11", "pair gap identity", 0, pair_gap_identity},
      {"12", "experiment determinism", 0, [&] { return determinism(artifacts); }},
  };

  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = c.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit_s > 0 && seconds > c.time_limit_s) {
      outcome.passed = false;
      outcome.detail += "; over time limit " + fmt(c.time_limit_s) + " s";
    }
    failures += !outcome.passed;
    std::cout << (outcome.passed ? "PASS" : "FAIL") << "  [" << std::setw(2) << c.id << "] " << c.name
              << ": " << outcome.detail << " (" << std::fixed << std::setprecision(2) << seconds << " s)"
              << std::defaultfloat << std::endl;
  }
  std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failures == 0 ? 0 : 1;
}
