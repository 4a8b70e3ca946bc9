#include "circlayout/trial.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <numbers>
#include <ostream>
#include <sstream>
#include <thread>

#include "json.hpp"

#include "circlayout/error.hpp"
#include "circlayout/layout.hpp"
#include "circlayout/metrics.hpp"
#include "circlayout/spectral.hpp"
#include "circlayout/subspace.hpp"

namespace circlayout {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Rows of the estimate expressed in the model frame, where model vertex i
// sits at angle 2 pi i / n. Angles are measured from a cut half a step
// before vertex 0, so exact model points never straddle the cut.
std::vector<double> model_frame_angles(const Eigen::MatrixXd& aligned_estimate) {
  const auto n = aligned_estimate.rows();
  const double half_step = std::numbers::pi / static_cast<double>(n);
  std::vector<double> angles(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    double phi = std::atan2(aligned_estimate(i, 1), aligned_estimate(i, 0)) + half_step;
    if (phi < 0.0) phi += kTwoPi;
    if (phi >= kTwoPi) phi -= kTwoPi;
    angles[i] = phi;
  }
  return angles;
}

// Pairs i < j with k <= j - i <= n - k and equal angles.
std::int64_t tied_pairs(const std::vector<double>& angles, int k) {
  const int n = static_cast<int>(angles.size());
  std::int64_t count = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + k; j <= i + (n - k) && j < n; ++j) count += angles[i] == angles[j];
  }
  return count;
}

void append_status(std::string& status, std::string_view note) {
  if (status == "ok") {
    status = std::string(note);
  } else {
    status += ';';
    status += note;
  }
}

std::string sanitize(std::string text) {
  std::replace(text.begin(), text.end(), ',', ' ');
  std::replace(text.begin(), text.end(), '\n', ' ');
  return text;
}

void measure(const TrialSpec& spec, TrialRecord& rec) {
  const CirculantModel& model = spec.model;
  const int n = model.n();
  const double p = model.p();

  RandomGraphInstance instance = sample(model, spec.seed);
  if (spec.shuffle) instance = relabel(instance, derive_seed(spec.seed, 1));
  const Permutation truth = *instance.hidden_truth;

  const LayoutResult layout = recover_layout(instance.adjacency, 4);
  for (int i = 0; i < 4; ++i) rec.lambda_hat[i] = layout.spectrum.eigenvalues(i);
  rec.radial_spread = radial_spread(layout.embedding);

  // Rank metrics, raw (fixed gauge) and after circle alignment.
  const Permutation raw = ranks_in_model_order(layout.order, truth);
  const CircularOrder aligned = align_to_truth(layout.order, truth);
  rec.d_raw = kendall_distance(raw);
  rec.d_aligned = kendall_distance(aligned.ranks);
  for (int k : spec.k_list) {
    rec.d_k_raw.push_back(d_k(raw, k));
    rec.d_k_aligned.push_back(d_k(aligned.ranks, k));
  }
  rec.checks.d1_equals_d = d_k(raw, 1) == rec.d_raw && d_k(aligned.ranks, 1) == rec.d_aligned;
  std::int64_t previous = std::numeric_limits<std::int64_t>::max();
  for (int k = 1; k <= n; ++k) {
    const std::int64_t value = d_k(aligned.ranks, k);
    if (value > previous) rec.checks.dk_monotone = false;
    previous = value;
  }

  // Perturbation and eigengaps of M.
  const ClosedFormSpectrum closed = closed_form_spectrum(model);
  rec.gap12 = p * closed.gap12;
  rec.gap34 = p * (closed.eigenvalues[2] - closed.fourth_largest);
  const SymmetricMatrix m = model_matrix(model);
  const SymmetricMatrix m_hat = model_order_adjacency(instance);
  const SymmetricMatrix e = perturbation(instance, model);
  rec.norm_e_op = operator_norm(e);
  rec.norm_e_fro = frobenius_norm(e);

  // Principal angles between span{v2, v3} and the recovered pair, both indexed
  // by model position.
  const Eigen::MatrixXd basis = closed.eigenvectors.middleCols(1, 2);
  Eigen::MatrixXd basis_hat(n, 2);
  for (int v = 0; v < n; ++v) {
    basis_hat.row(truth[v]) = layout.spectrum.eigenvectors.row(v).segment(1, 2);
  }
  if (spec.fault == FaultInjection::corrupt_eigenvector) {
    Eigen::VectorXd junk = closed.eigenvectors.col(3);
    junk -= basis_hat.col(0).dot(junk) * basis_hat.col(0);
    basis_hat.col(1) = junk.normalized();
  }
  const PrincipalAngleDecomposition angles = principal_angles(basis, basis_hat);
  rec.sin_theta_f = angles.sin_theta_frobenius;
  rec.frobenius_gap = frobenius_gap(angles);

  // Gaps below the degeneracy tolerance are roundoff of an exact zero.
  const double gap_floor = kDefaultDegeneracyTolerance * std::max(1.0, p * closed.eigenvalues[0]);
  if (rec.gap12 > gap_floor && rec.gap34 > gap_floor) {
    rec.dk_bound_rhs = davis_kahan_bound(m, m_hat, rec.gap12, rec.gap34);
    rec.checks.davis_kahan = rec.sin_theta_f <= rec.dk_bound_rhs + kNumericalFloor;
    if (!rec.checks.davis_kahan) append_status(rec.status, "davis_kahan_violated");
  } else {
    rec.dk_bound_rhs = std::numeric_limits<double>::quiet_NaN();
    rec.checks.davis_kahan_applicable = false;
    append_status(rec.status, "davis_kahan_not_applicable");
  }
  rec.checks.frobenius_chain =
      rec.frobenius_gap * rec.frobenius_gap <= 2.0 * rec.sin_theta_f * rec.sin_theta_f + 1e-8;
  if (!rec.checks.frobenius_chain) append_status(rec.status, "frobenius_chain_violated");

  // Lower-bound witness on the inverted-pair set R at witness_k.
  const std::vector<double> frame_angles = model_frame_angles(angles.aligned_estimate());
  const std::vector<IndexPair> pairs = inverted_pair_set(frame_angles, spec.witness_k);
  const LowerBoundWitness witness = lower_bound_witness(angles, pairs);
  rec.witness_k = spec.witness_k;
  rec.witness_pairs = static_cast<std::int64_t>(pairs.size());
  rec.lower_witness_left = witness.left;
  rec.lower_witness_right = witness.right;
  rec.checks.witness = witness.holds();
  if (!rec.checks.witness) append_status(rec.status, "witness_violated");
  // R uses a weak inequality; D_k of the index-tie-broken order misses the
  // tied pairs, so they are added back.
  rec.checks.witness_count =
      rec.witness_pairs == d_k(order_by_angle(frame_angles).ranks, spec.witness_k) +
                               tied_pairs(frame_angles, spec.witness_k);
  if (!rec.checks.witness_count) append_status(rec.status, "witness_count_mismatch");
  if (!rec.checks.d1_equals_d) append_status(rec.status, "d1_differs_from_d");
  if (!rec.checks.dk_monotone) append_status(rec.status, "dk_not_monotone");
}

template <class T>
std::vector<T> scalar_or_list(const nlohmann::json& doc, const char* key) {
  const auto& value = doc.at(key);
  if (value.is_array()) {
    if (value.empty()) throw ValidationError(std::string("config: '") + key + "' is empty");
    return value.get<std::vector<T>>();
  }
  return {value.get<T>()};
}

std::string join(const auto& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ';';
    out += std::to_string(values[i]);
  }
  return out;
}

std::string optional_field(const std::optional<double>& value) {
  return value ? format_double(*value) : std::string();
}

}  // namespace

std::string offsets_hash(std::span<const int> offsets) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  std::string text;
  for (std::size_t i = 0; i < offsets.size(); ++i) {
    if (i > 0) text += ',';
    text += std::to_string(offsets[i]);
  }
  for (unsigned char ch : text) {
    hash ^= ch;
    hash *= 0x100000001b3ULL;
  }
  char buffer[17];
  std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(hash));
  return buffer;
}

TrialRecord run_trial(const TrialSpec& spec) {
  TrialRecord rec;
  rec.n = spec.model.n();
  rec.p = spec.model.p();
  rec.gamma = spec.model.gamma();
  rec.c = spec.model.c();
  rec.offsets_hash = offsets_hash(spec.model.offsets());
  rec.seed = spec.seed.value;
  rec.k_list = spec.k_list;
  rec.witness_k = spec.witness_k;

  const auto start = std::chrono::steady_clock::now();
  try {
    measure(spec, rec);
  } catch (const NumericalError& error) {
    rec.status = "numerical_failure: " + sanitize(error.what());
  }
  if (spec.timing) {
    const auto elapsed = std::chrono::steady_clock::now() - start;
    rec.runtime_ms = std::chrono::duration<double, std::milli>(elapsed).count();
  }
  return rec;
}

SweepConfig parse_sweep_config(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& error) {
    throw ValidationError(std::string("config: ") + error.what());
  }
  if (!doc.is_object()) throw ValidationError("config: top level must be an object");

  static const std::vector<std::string> known = {
      "n",         "p",       "offsets", "gamma",   "c",      "k",      "beta",   "witness_k",
      "witness_beta", "trials", "seed",   "shuffle", "threads", "timing", "fault", "description"};
  for (const auto& [key, value] : doc.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ValidationError("config: unknown key '" + key + "'");
    }
  }

  try {
    if (!doc.contains("n") || !doc.contains("p")) throw ValidationError("config: 'n' and 'p' are required");
    const auto ns = scalar_or_list<int>(doc, "n");
    const auto ps = scalar_or_list<double>(doc, "p");
    const bool explicit_offsets = doc.contains("offsets");
    if (explicit_offsets == doc.contains("gamma")) {
      throw ValidationError("config: give exactly one of 'offsets' or 'gamma' (with 'c')");
    }
    if (doc.contains("gamma") != doc.contains("c")) {
      throw ValidationError("config: 'gamma' requires 'c'");
    }
    const std::vector<double> gammas =
        explicit_offsets ? std::vector<double>{0.0} : scalar_or_list<double>(doc, "gamma");
    const std::vector<int> ks = doc.contains("k") ? scalar_or_list<int>(doc, "k") : std::vector<int>{};
    const std::vector<double> betas =
        doc.contains("beta") ? scalar_or_list<double>(doc, "beta") : std::vector<double>{};

    SweepConfig config;
    config.trials = doc.value("trials", 1);
    if (config.trials < 1) throw ValidationError("config: 'trials' must be positive");
    config.master_seed = Seed{doc.value("seed", std::uint64_t{0})};
    config.shuffle = doc.value("shuffle", false);
    config.threads = doc.value("threads", 0);
    config.timing = doc.value("timing", false);
    const std::string fault = doc.value("fault", std::string("none"));
    if (fault == "corrupt_eigenvector") {
      config.fault = FaultInjection::corrupt_eigenvector;
    } else if (fault != "none") {
      throw ValidationError("config: unknown fault '" + fault + "'");
    }

    for (int n : ns) {
      for (double gamma : gammas) {
        for (double p : ps) {
          SweepPoint point{explicit_offsets
                               ? CirculantModel::create(n, doc.at("offsets").get<std::vector<int>>(), p)
                               : CirculantModel::from_density(n, gamma, doc.at("c").get<double>(), p),
                           {}, 1};
          auto add_k = [&](int k) {
            if (k < 1 || k > n) {
              throw ValidationError("config: k = " + std::to_string(k) + " outside [1, n] for n = " +
                                    std::to_string(n));
            }
            if (std::find(point.k_list.begin(), point.k_list.end(), k) == point.k_list.end()) {
              point.k_list.push_back(k);
            }
          };
          for (int k : ks) add_k(k);
          for (double beta : betas) add_k(k_from_beta(n, beta));
          if (point.k_list.empty()) point.k_list.push_back(1);
          if (doc.contains("witness_k")) {
            point.witness_k = doc.at("witness_k").get<int>();
            if (point.witness_k < 1 || point.witness_k > n) {
              throw ValidationError("config: witness_k outside [1, n]");
            }
          } else {
            point.witness_k = k_from_beta(n, doc.value("witness_beta", 0.6));
          }
          config.points.push_back(std::move(point));
        }
      }
    }
    return config;
  } catch (const nlohmann::json::exception& error) {
    throw ValidationError(std::string("config: ") + error.what());
  }
}

Seed trial_seed(Seed master, std::size_t point_index, std::size_t trial_index) noexcept {
  return derive_seed(derive_seed(master, point_index), trial_index);
}

std::vector<TrialRecord> run_sweep(const SweepConfig& config) {
  const std::size_t trials = static_cast<std::size_t>(config.trials);
  const std::size_t tasks = config.points.size() * trials;
  std::vector<TrialRecord> records(tasks);

  auto run_task = [&](std::size_t task) {
    const std::size_t point_index = task / trials;
    const SweepPoint& point = config.points[point_index];
    const TrialSpec spec{point.model,        trial_seed(config.master_seed, point_index, task % trials),
                         point.k_list,       point.witness_k,
                         config.shuffle,     config.timing,
                         config.fault};
    try {
      records[task] = run_trial(spec);
    } catch (const std::exception& error) {
      TrialRecord failed;
      failed.n = point.model.n();
      failed.p = point.model.p();
      failed.seed = spec.seed.value;
      failed.status = "error: " + sanitize(error.what());
      records[task] = std::move(failed);
    }
  };

  std::size_t threads = config.threads > 0 ? static_cast<std::size_t>(config.threads)
                                           : std::max(1U, std::thread::hardware_concurrency());
  threads = std::min(threads, std::max<std::size_t>(tasks, 1));
  if (threads <= 1) {
    for (std::size_t task = 0; task < tasks; ++task) run_task(task);
    return records;
  }
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> workers;
    for (std::size_t t = 0; t < threads; ++t) {
      workers.emplace_back([&] {
        for (std::size_t task = next++; task < tasks; task = next++) run_task(task);
      });
    }
  }
  return records;
}

std::string trial_csv_header() {
  return "n,p,gamma,c,offsets_hash,seed,k_list,D_raw,D_aligned,D_k_raw,D_k_aligned,"
         "lambda_hat_1,lambda_hat_2,lambda_hat_3,lambda_hat_4,gap12,gap34,norm_E_op,norm_E_fro,"
         "sin_theta_F,dk_bound_rhs,frobenius_gap,lower_witness_left,lower_witness_right,"
         "runtime_ms,status";
}

std::string trial_csv_row(const TrialRecord& r) {
  std::ostringstream row;
  row << r.n << ',' << format_double(r.p) << ',' << optional_field(r.gamma) << ','
      << optional_field(r.c) << ',' << r.offsets_hash << ',' << r.seed << ',' << join(r.k_list)
      << ',' << r.d_raw << ',' << r.d_aligned << ',' << join(r.d_k_raw) << ','
      << join(r.d_k_aligned);
  for (double lambda : r.lambda_hat) row << ',' << format_double(lambda);
  for (double value : {r.gap12, r.gap34, r.norm_e_op, r.norm_e_fro, r.sin_theta_f, r.dk_bound_rhs,
                       r.frobenius_gap, r.lower_witness_left, r.lower_witness_right}) {
    row << ',' << format_double(value);
  }
  row << ',' << optional_field(r.runtime_ms) << ',' << r.status;
  return row.str();
}

void write_trial_csv(std::ostream& out, std::span<const TrialRecord> records) {
  out << trial_csv_header() << '\n';
  for (const auto& record : records) out << trial_csv_row(record) << '\n';
}

}  // namespace circlayout
