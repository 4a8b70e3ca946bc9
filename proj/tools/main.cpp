#include <iostream>
#include <optional>

#include "CLI11.hpp"
#include "commands.hpp"

namespace {

using namespace circlayout::cli;

void add_model_options(CLI::App& app, ModelOptions& model, std::optional<double>& gamma,
                       std::optional<double>& c) {
  app.add_option("--n", model.n, "number of vertices (>= 5)")->required();
  app.add_option("--offsets", model.offsets, "offset set S, e.g. --offsets 1 2 3")->delimiter(',');
  app.add_option("--gamma", gamma, "density exponent; S = {1..ceil(c n^gamma)}");
  app.add_option("--c", c, "density constant");
  app.add_option("--p", model.p, "edge retention probability in (0, 1]");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectral circular layout of random circulant graphs"};
  app.require_subcommand(1);
  app.set_version_flag("--version", CIRCLAYOUT_VERSION);

  GenerateOptions generate;
  std::optional<double> gen_gamma, gen_c;
  std::optional<std::uint64_t> gen_seed;
  auto* gen = app.add_subcommand("generate", "write a circulant model and optionally a random subgraph");
  add_model_options(*gen, generate.model, gen_gamma, gen_c);
  gen->add_option("--seed", gen_seed, "also sample a random subgraph with this seed");
  gen->add_flag("--shuffle", generate.shuffle, "hide the vertex order of the sample");
  gen->add_option("--out", generate.out, "output path prefix")->required();

  LayoutOptions layout;
  auto* lay = app.add_subcommand("layout", "recover a circular order from an edge list");
  lay->add_option("--input", layout.input, "edge list (1-based, u < v per line)")->required();
  lay->add_option("--seed", layout.seed, "relabeling seed for --shuffle");
  lay->add_flag("--shuffle", layout.shuffle, "relabel vertices before the layout");
  lay->add_option("--k", layout.k, "D_k distances to report")->delimiter(',');
  lay->add_option("--beta", layout.beta, "report D_k at k = ceil(n^beta)")->delimiter(',');
  lay->add_option("--out", layout.out, "JSON output (default stdout)");
  lay->add_option("--points-csv", layout.points_csv, "write the point cloud as CSV");

  ExperimentOptions experiment;
  auto* exp = app.add_subcommand("experiment", "run a seeded Monte-Carlo sweep to CSV");
  exp->add_option("--config", experiment.config, "JSON sweep configuration")->required();
  exp->add_option("--out", experiment.out, "CSV output (default stdout)");
  exp->add_option("--seed", experiment.seed, "override the master seed");
  exp->add_option("--trials", experiment.trials, "override trials per sweep point");
  exp->add_option("--threads", experiment.threads, "worker threads (0 = hardware)");

  VerifyOptions verify;
  auto* ver = app.add_subcommand("verify", "check the deterministic inequalities over a sweep");
  ver->add_option("--config", verify.config, "JSON sweep configuration (default: built-in)");
  ver->add_option("--seed", verify.seed, "override the master seed");
  ver->add_option("--trials", verify.trials, "override trials per sweep point");
  ver->add_option("--threads", verify.threads, "worker threads (0 = hardware)");

  SpectrumOptions spectrum;
  std::optional<double> spec_gamma, spec_c;
  auto* spe = app.add_subcommand("spectrum", "closed-form vs numeric spectrum of a model");
  add_model_options(*spe, spectrum.model, spec_gamma, spec_c);
  spe->add_option("--out", spectrum.out, "JSON output (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kValidationFailure;
  }

  if (*gen) {
    generate.model.gamma = gen_gamma;
    generate.model.c = gen_c;
    generate.seed = gen_seed;
    return cmd_generate(generate, std::cout, std::cerr);
  }
  if (*lay) return cmd_layout(layout, std::cout, std::cerr);
  if (*exp) return cmd_experiment(experiment, std::cout, std::cerr);
  if (*ver) return cmd_verify(verify, std::cout, std::cerr);
  spectrum.model.gamma = spec_gamma;
  spectrum.model.c = spec_c;
  return cmd_spectrum(spectrum, std::cout, std::cerr);
}
