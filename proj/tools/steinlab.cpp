// steinlab: sample-quality scoring with (stochastic) kernel Stein discrepancies,
// SGLD step-size tuning, sampler ranking, stochastic SVGD and convergence curves.
//
//   steinlab score|tune-sgld|rank-samplers|ssvgd|curve --config <file> [--seed N] [--out <path>] [--threads N]

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "steinlab/config.hpp"
#include "steinlab/errors.hpp"
#include "steinlab/experiments.hpp"
#include "steinlab/io.hpp"
#include "steinlab/parallel.hpp"

namespace fs = std::filesystem;
using namespace steinlab;

namespace {

struct Args {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  int threads = 0;
};

std::string provenance(const std::string& command, const Config& resolved) {
  return comment_block("steinlab " + command + "\n" + resolved.to_ini());
}

fs::path sibling(const fs::path& out, const std::string& suffix) {
  fs::path p = out;
  p.replace_extension(suffix);
  return p;
}

void require_out(const Args& args, const std::string& command) {
  if (args.out.empty()) throw CLI::ValidationError("--out", command + " requires --out <path>");
}

int cmd_score(const Args& args) {
  const Config config = Config::parse_file(args.config);
  const auto target_spec = TargetSpec::from_config(config);
  const auto kernel = KernelSpec::from_config(config);
  const auto options = ScoreOptions::from_config(config, args.seed);

  SampleBatch samples = read_samples_csv(options.samples);
  if (options.discard >= samples.rows()) throw ParseError(options.samples + ": discard leaves no samples");
  samples = samples.bottomRows(samples.rows() - options.discard).eval();
  const auto target = target_spec.build();
  const auto result = score_samples(samples, target, kernel, options.m, options.seed);

  Config resolved = config;
  target_spec.to_config(resolved);
  kernel.to_config(resolved);
  options.to_config(resolved);

  auto json = nlohmann::ordered_json::parse(to_json(result));
  json["config"] = resolved.to_ini();
  const std::string text = json.dump(2) + "\n";
  if (args.out.empty()) std::cout << text;
  else write_file_atomic(args.out, text);
  return 0;
}

int cmd_tune_sgld(const Args& args) {
  require_out(args, "tune-sgld");
  const Config config = Config::parse_file(args.config);
  const auto target_spec = TargetSpec::from_config(config);
  const auto kernel = KernelSpec::from_config(config);
  const auto options = TuneSgldOptions::from_config(config, args.seed);
  const auto target = target_spec.build();
  const auto result = tune_sgld(target, kernel, options);

  Config resolved = config;
  target_spec.to_config(resolved);
  kernel.to_config(resolved);
  options.to_config(resolved);
  const std::string header = provenance("tune-sgld", resolved);
  write_file_atomic(args.out, header + tune_rows_csv(result));
  write_file_atomic(sibling(args.out, ".summary.csv"), header + tune_summary_csv(result));
  for (const auto& [m, eps] : result.argmin) std::cout << "m=" << m << " selected epsilon=" << format_double(eps) << "\n";
  return 0;
}

int cmd_rank_samplers(const Args& args) {
  require_out(args, "rank-samplers");
  const Config config = Config::parse_file(args.config);
  const auto target_spec = TargetSpec::from_config(config);
  const auto kernel = KernelSpec::from_config(config);
  const auto target = target_spec.build();
  const auto options = RankOptions::from_config(config, target.dim(), args.seed);
  const auto rows = rank_samplers(target, kernel, options);

  Config resolved = config;
  target_spec.to_config(resolved);
  kernel.to_config(resolved);
  options.to_config(resolved);
  write_file_atomic(args.out, provenance("rank-samplers", resolved) + rank_rows_csv(rows));
  return 0;
}

int cmd_ssvgd(const Args& args) {
  require_out(args, "ssvgd");
  const Config config = Config::parse_file(args.config);
  const auto target_spec = TargetSpec::from_config(config);
  const auto init_spec = InitSpec::from_config(config);
  auto svgd = svgd_config_from(config, config.get_seed("svgd.seed", 0));
  if (args.seed) svgd.seed = *args.seed;
  const auto target = target_spec.build();
  const SampleBatch init = init_spec.build(target.dim());
  const auto result = run_ssvgd(init, target, svgd);

  Config resolved = config;
  target_spec.to_config(resolved);
  init_spec.to_config(resolved);
  svgd_config_to(resolved, svgd);
  const std::string header = provenance("ssvgd", resolved);
  write_file_atomic(args.out, samples_to_csv(result.particles, header));

  std::string diagnostics = svgd_diagnostics_jsonl(result);
  if (diagnostics.empty()) {
    nlohmann::ordered_json j;
    j["round"] = svgd.rounds;
    j["term_evals"] = result.term_evals;
    j["ksd"] = nullptr;
    diagnostics = j.dump() + "\n";
  }
  write_file_atomic(sibling(args.out, ".diagnostics.jsonl"), diagnostics);

  if (!result.trajectory.empty()) {
    std::string traj = header + "round,particle";
    for (Eigen::Index j = 0; j < result.particles.cols(); ++j) traj += ",x" + std::to_string(j + 1);
    traj += "\n";
    for (const auto& cp : result.trajectory) {
      for (Eigen::Index i = 0; i < cp.particles.rows(); ++i) {
        traj += std::to_string(cp.round) + "," + std::to_string(i);
        for (Eigen::Index j = 0; j < cp.particles.cols(); ++j) traj += "," + format_double(cp.particles(i, j));
        traj += "\n";
      }
    }
    write_file_atomic(sibling(args.out, ".trajectory.csv"), traj);
  }
  return 0;
}

int cmd_curve(const Args& args) {
  require_out(args, "curve");
  const Config config = Config::parse_file(args.config);
  const auto target_spec = TargetSpec::from_config(config);
  const auto kernel = KernelSpec::from_config(config);
  const auto options = CurveOptions::from_config(config, args.seed);
  const auto target = target_spec.build();
  const auto result = convergence_curve(target, kernel, options);

  Config resolved = config;
  target_spec.to_config(resolved);
  kernel.to_config(resolved);
  options.to_config(resolved);
  const std::string header = provenance("curve", resolved);
  write_file_atomic(args.out, header + curve_rows_csv(result));
  std::string summary = header + "n,median,mean\n";
  for (const auto& s : result.summary) {
    summary += std::to_string(s.n) + "," + format_double(s.median) + "," + format_double(s.mean) + "\n";
  }
  write_file_atomic(sibling(args.out, ".summary.csv"), summary);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"steinlab: kernel Stein discrepancies and stochastic SVGD"};
  app.require_subcommand(1);

  Args args;
  std::uint64_t seed_value = 0;
  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", args.config, "Key-value config file")->required()->check(CLI::ExistingFile);
    sub->add_option("--seed", seed_value, "Override the config seed");
    sub->add_option("--out", args.out, "Output path");
    sub->add_option("--threads", args.threads, "Worker threads (overrides STEINLAB_THREADS)")
        ->check(CLI::PositiveNumber);
  };

  struct Command {
    const char* name;
    const char* help;
    int (*run)(const Args&);
  };
  const Command commands[] = {
      {"score", "Score a sample CSV with KSD or stochastic KSD", cmd_score},
      {"tune-sgld", "Select an SGLD step size by (stochastic) KSD", cmd_tune_sgld},
      {"rank-samplers", "Compare two SGLD samplers by (stochastic) KSD", cmd_rank_samplers},
      {"ssvgd", "Run stochastic Stein variational gradient descent", cmd_ssvgd},
      {"curve", "Discrepancy versus sample size for i.i.d. Gaussian samples", cmd_curve},
  };
  for (const auto& c : commands) add_common(app.add_subcommand(c.name, c.help));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (const char* env = std::getenv("STEINLAB_THREADS")) set_num_threads(std::stoi(env));
    if (args.threads > 0) set_num_threads(args.threads);
    for (const auto& c : commands) {
      auto* sub = app.get_subcommand(c.name);
      if (!sub->parsed()) continue;
      if (sub->count("--seed") > 0) args.seed = seed_value;
      return c.run(args);
    }
  } catch (const ParseError& e) {
    std::cerr << "steinlab: parse error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalConsistencyError& e) {
    std::cerr << "steinlab: numerical consistency error: " << e.what() << "\n";
    return 3;
  } catch (const DivergenceError& e) {
    std::cerr << "steinlab: " << e.what() << "\n";
    return 4;
  } catch (const CLI::Error& e) {
    std::cerr << "steinlab: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "steinlab: error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
