#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "circlayout/error.hpp"
#include "circlayout/layout.hpp"
#include "circlayout/metrics.hpp"
#include "circlayout/model.hpp"
#include "circlayout/sampling.hpp"
#include "circlayout/spectral.hpp"
#include "circlayout/trial.hpp"
#include "json.hpp"

#ifndef CIRCLAYOUT_VERSION
#define CIRCLAYOUT_VERSION "0.0.0"
#endif

namespace circlayout::cli {

namespace {

using nlohmann::ordered_json;

constexpr double kSpectrumTolerance = 1e-8;

CirculantModel build_model(const ModelOptions& options) {
  const bool density = options.gamma.has_value() || options.c.has_value();
  if (density && !options.offsets.empty()) {
    throw ValidationError("give either --offsets or --gamma/--c, not both");
  }
  if (density) {
    if (!options.gamma || !options.c) throw ValidationError("--gamma and --c go together");
    return CirculantModel::from_density(options.n, *options.gamma, *options.c, options.p);
  }
  if (options.offsets.empty()) throw ValidationError("one of --offsets or --gamma/--c is required");
  return CirculantModel::create(options.n, options.offsets, options.p);
}

ordered_json model_json(const CirculantModel& model) {
  ordered_json j;
  j["n"] = model.n();
  j["offsets"] = std::vector<int>(model.offsets().begin(), model.offsets().end());
  j["p"] = model.p();
  j["gamma"] = model.gamma() ? ordered_json(*model.gamma()) : ordered_json(nullptr);
  j["c"] = model.c() ? ordered_json(*model.c()) : ordered_json(nullptr);
  j["degree"] = model.degree();
  j["edge_count"] = model.edge_count();
  return j;
}

ordered_json header_json(const char* command) {
  ordered_json j;
  j["tool"] = "circlayout";
  j["version"] = CIRCLAYOUT_VERSION;
  j["command"] = command;
  return j;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw std::ios_base::failure("cannot open '" + path + "' for writing");
  return file;
}

std::string read_file(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw std::ios_base::failure("cannot open '" + path + "'");
  std::ostringstream text;
  text << file.rdbuf();
  return text.str();
}

// Writes to `path`, or to `fallback` when the path is empty.
template <class Writer>
void emit(const std::string& path, std::ostream& fallback, Writer&& write) {
  if (path.empty()) {
    write(fallback);
    return;
  }
  std::ofstream file = open_output(path);
  write(file);
  if (!file) throw std::ios_base::failure("write to '" + path + "' failed");
}

template <class Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return kValidationFailure;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << '\n';
    return kNumericalFailure;
  } catch (const std::ios_base::failure& e) {
    err << "I/O error: " << e.what() << '\n';
    return kValidationFailure;
  }
}

SweepConfig load_sweep(const std::string& path, const std::optional<std::uint64_t>& seed,
                       const std::optional<int>& trials, const std::optional<int>& threads,
                       const std::string& builtin) {
  SweepConfig config = parse_sweep_config(path.empty() ? builtin : read_file(path));
  if (seed) config.master_seed = Seed{*seed};
  if (trials) {
    if (*trials < 1) throw ValidationError("--trials must be positive");
    config.trials = *trials;
  }
  if (threads) config.threads = *threads;
  return config;
}

bool violated(const TrialRecord& r) {
  const auto& c = r.checks;
  return !(c.davis_kahan && c.frobenius_chain && c.witness && c.witness_count && c.d1_equals_d &&
           c.dk_monotone);
}

bool numerical_failure(const TrialRecord& r) {
  return r.status.rfind("numerical_failure", 0) == 0 || r.status.rfind("error", 0) == 0;
}

// Largest distance from a closed-form eigenvalue to the nearest numeric one,
// and the lambda2/lambda3 split.
struct SpectrumCheck {
  std::array<double, 4> closed{};
  std::vector<double> numeric;
  double max_deviation = 0.0;
  double pair_split = 0.0;
  bool passed() const { return max_deviation <= kSpectrumTolerance && pair_split <= kSpectrumTolerance; }
};

SpectrumCheck check_spectrum(const CirculantModel& model) {
  SpectrumCheck out;
  const ClosedFormSpectrum closed = closed_form_spectrum(model);
  out.closed = closed.eigenvalues;
  const SpectralDecomposition all = top_eigenpairs(adjacency(model), model.n());
  out.numeric.assign(all.eigenvalues.data(), all.eigenvalues.data() + all.eigenvalues.size());
  for (double lambda : out.closed) {
    double nearest = std::numeric_limits<double>::infinity();
    for (double mu : out.numeric) nearest = std::min(nearest, std::abs(lambda - mu));
    out.max_deviation = std::max(out.max_deviation, nearest);
  }
  out.pair_split = std::abs(out.closed[1] - out.closed[2]);
  return out;
}

}  // namespace

std::string default_verify_config() {
  return R"({
  "description": "default deterministic-inequality suite",
  "n": [60, 120],
  "gamma": 1,
  "c": 0.1,
  "p": [0.3, 0.6, 1.0],
  "k": [1, 2],
  "beta": [0.5],
  "witness_beta": 0.6,
  "trials": 4,
  "seed": 2024,
  "shuffle": true
})";
}

int cmd_generate(const GenerateOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (options.out.empty()) throw ValidationError("--out is required");
    if (options.shuffle && !options.seed) throw ValidationError("--shuffle requires --seed");
    const CirculantModel model = build_model(options.model);
    const ClosedFormSpectrum spectrum = closed_form_spectrum(model);

    ordered_json doc = header_json("generate");
    doc["model"] = model_json(model);
    doc["closed_form"] = {{"eigenvalues", spectrum.eigenvalues},
                          {"fourth_largest", spectrum.fourth_largest},
                          {"gap12", spectrum.gap12},
                          {"gap34", spectrum.eigenvalues[2] - spectrum.fourth_largest}};
    doc["model_edges"] = options.out + ".edges";

    {
      std::ofstream edges = open_output(options.out + ".edges");
      write_edge_list(edges, adjacency(model), "circulant model");
    }
    if (options.seed) {
      RandomGraphInstance instance = sample(model, Seed{*options.seed});
      if (options.shuffle) instance = relabel(instance, derive_seed(Seed{*options.seed}, 1));
      std::ofstream edges = open_output(options.out + ".sample.edges");
      write_edge_list(edges, instance.adjacency, "random subgraph");
      ordered_json sampled;
      sampled["seed"] = *options.seed;
      sampled["shuffle"] = options.shuffle;
      sampled["edges"] = options.out + ".sample.edges";
      sampled["edge_count"] = edge_count(instance.adjacency);
      if (options.shuffle) {
        // 1-based model position of each presented vertex.
        std::vector<int> truth;
        for (int v : instance.hidden_truth->images()) truth.push_back(v + 1);
        sampled["truth"] = truth;
      }
      doc["sample"] = sampled;
    }
    std::ofstream json = open_output(options.out + ".json");
    json << doc.dump(2) << '\n';
    out << "wrote " << options.out << ".json\n";
    return kSuccess;
  });
}

int cmd_layout(const LayoutOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (options.input.empty()) throw ValidationError("--input is required");
    std::ifstream in(options.input);
    if (!in) throw std::ios_base::failure("cannot open '" + options.input + "'");
    const SymmetricMatrix input = read_edge_list(in);
    const int n = static_cast<int>(input.order());

    // Presented graph: vertex pi[v] of the presented graph is input vertex v.
    Permutation pi = Permutation::identity(static_cast<std::size_t>(n));
    if (options.shuffle) {
      Rng rng(derive_seed(Seed{options.seed}, 1));
      pi = random_permutation(static_cast<std::size_t>(n), rng);
    }
    Eigen::MatrixXd presented(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) presented(pi[i], pi[j]) = input(i, j);
    }
    const LayoutResult layout = recover_layout(SymmetricMatrix(std::move(presented)), 4);

    // Results reported per input vertex; input labels serve as truth.
    const Permutation truth = pi.inverse();
    const Permutation ranks = ranks_in_model_order(layout.order, truth);
    const CircularOrder aligned = align_to_truth(layout.order, truth);

    std::vector<int> k_list = options.k;
    for (double beta : options.beta) k_list.push_back(k_from_beta(n, beta));
    if (k_list.empty()) k_list.push_back(1);
    std::sort(k_list.begin(), k_list.end());
    k_list.erase(std::unique(k_list.begin(), k_list.end()), k_list.end());

    ordered_json doc = header_json("layout");
    doc["parameters"] = {{"input", options.input},
                         {"n", n},
                         {"edge_count", edge_count(input)},
                         {"seed", options.seed},
                         {"shuffle", options.shuffle},
                         {"k", k_list}};
    std::vector<int> permutation;
    std::vector<double> angles;
    ordered_json points = ordered_json::array();
    for (int v = 0; v < n; ++v) {
      permutation.push_back(ranks[v] + 1);
      angles.push_back(layout.embedding.angles[pi[v]]);
      points.push_back({layout.embedding.points(pi[v], 0), layout.embedding.points(pi[v], 1)});
    }
    doc["permutation"] = permutation;
    doc["angles"] = angles;
    doc["points"] = points;
    doc["eigenvalues"] = std::vector<double>(layout.spectrum.eigenvalues.data(),
                                             layout.spectrum.eigenvalues.data() + 4);
    doc["radial_spread"] = radial_spread(layout.embedding);
    ordered_json metrics;
    metrics["D_raw"] = kendall_distance(ranks);
    metrics["D_aligned"] = kendall_distance(aligned.ranks);
    ordered_json dk_raw, dk_aligned;
    for (int k : k_list) {
      dk_raw[std::to_string(k)] = d_k(ranks, k);
      dk_aligned[std::to_string(k)] = d_k(aligned.ranks, k);
    }
    metrics["D_k_raw"] = dk_raw;
    metrics["D_k_aligned"] = dk_aligned;
    metrics["rotation_offset"] = aligned.rotation_offset;
    metrics["orientation"] = aligned.orientation;
    doc["metrics"] = metrics;

    emit(options.out, out, [&](std::ostream& sink) { sink << doc.dump(2) << '\n'; });
    if (!options.points_csv.empty()) {
      // Rows per input vertex, matching the JSON.
      AngularEmbedding embedding;
      embedding.points.resize(n, 2);
      for (int v = 0; v < n; ++v) embedding.points.row(v) = layout.embedding.points.row(pi[v]);
      embedding.angles = angles;
      std::ofstream csv = open_output(options.points_csv);
      write_point_cloud_csv(csv, embedding, CircularOrder{ranks, 1, 0});
    }
    return kSuccess;
  });
}

int cmd_experiment(const ExperimentOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (options.config.empty()) throw ValidationError("--config is required");
    const SweepConfig config =
        load_sweep(options.config, options.seed, options.trials, options.threads, {});
    const std::vector<TrialRecord> records = run_sweep(config);
    emit(options.out, out, [&](std::ostream& sink) { write_trial_csv(sink, records); });
    if (!options.out.empty()) {
      ordered_json meta = header_json("experiment");
      meta["config"] = ordered_json::parse(read_file(options.config));
      meta["master_seed"] = config.master_seed.value;
      meta["trials"] = config.trials;
      meta["rows"] = records.size();
      std::ofstream file = open_output(options.out + ".meta.json");
      file << meta.dump(2) << '\n';
    }
    const auto failures = std::count_if(records.begin(), records.end(), violated);
    const auto numeric = std::count_if(records.begin(), records.end(), numerical_failure);
    if (numeric > 0) {
      err << numeric << " of " << records.size() << " trials hit a numerical failure\n";
      return kNumericalFailure;
    }
    if (failures > 0) {
      err << failures << " of " << records.size() << " trials failed a check; see status column\n";
      return kAssertionFailure;
    }
    return kSuccess;
  });
}

int cmd_verify(const VerifyOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const SweepConfig config = load_sweep(options.config, options.seed, options.trials,
                                          options.threads, default_verify_config());
    const std::vector<TrialRecord> records = run_sweep(config);

    struct Tally {
      long passed = 0;
      long failed = 0;
      long skipped = 0;
    };
    std::map<std::string, Tally> tallies;
    const std::vector<std::string> names = {"spectrum",    "davis_kahan", "frobenius_chain",
                                            "witness",     "witness_count", "d1_equals_d",
                                            "dk_monotone", "numerical"};
    for (const auto& name : names) tallies[name];

    for (const auto& point : config.points) {
      const SpectrumCheck check = check_spectrum(point.model);
      (check.passed() ? tallies["spectrum"].passed : tallies["spectrum"].failed)++;
    }
    auto count = [&](const char* name, bool ok) { (ok ? tallies[name].passed : tallies[name].failed)++; };
    for (const auto& r : records) {
      if (numerical_failure(r)) {
        tallies["numerical"].failed++;
        continue;
      }
      tallies["numerical"].passed++;
      if (r.checks.davis_kahan_applicable) {
        count("davis_kahan", r.checks.davis_kahan);
      } else {
        tallies["davis_kahan"].skipped++;
      }
      count("frobenius_chain", r.checks.frobenius_chain);
      count("witness", r.checks.witness);
      count("witness_count", r.checks.witness_count);
      count("d1_equals_d", r.checks.d1_equals_d);
      count("dk_monotone", r.checks.dk_monotone);
    }

    out << "circlayout verify: " << config.points.size() << " sweep points, " << records.size()
        << " trials\n";
    bool all_passed = true;
    for (const auto& name : names) {
      const Tally& t = tallies[name];
      const bool ok = t.failed == 0;
      all_passed = all_passed && ok;
      out << (ok ? "PASS " : "FAIL ") << name << ": " << t.passed << " passed, " << t.failed
          << " failed";
      if (t.skipped > 0) out << ", " << t.skipped << " not applicable";
      out << '\n';
    }
    if (tallies["numerical"].failed > 0) return kNumericalFailure;
    return all_passed ? kSuccess : kAssertionFailure;
  });
}

int cmd_spectrum(const SpectrumOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const CirculantModel model = build_model(options.model);
    const ClosedFormSpectrum closed = closed_form_spectrum(model);
    const SpectrumCheck check = check_spectrum(model);

    ordered_json doc = header_json("spectrum");
    doc["model"] = model_json(model);
    doc["closed_form"] = {{"eigenvalues", closed.eigenvalues},
                          {"fourth_largest", closed.fourth_largest},
                          {"gap12", closed.gap12},
                          {"gap34", closed.eigenvalues[2] - closed.fourth_largest}};
    doc["numeric_top4"] = std::vector<double>(check.numeric.begin(), check.numeric.begin() + 4);
    doc["max_deviation"] = check.max_deviation;
    doc["pair_split"] = check.pair_split;
    doc["match"] = check.passed();
    emit(options.out, out, [&](std::ostream& sink) { sink << doc.dump(2) << '\n'; });
    return check.passed() ? kSuccess : kAssertionFailure;
  });
}

}  // namespace circlayout::cli
