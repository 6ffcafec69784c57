#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "steinlab/config.hpp"
#include "steinlab/discrepancy.hpp"
#include "steinlab/kernels.hpp"
#include "steinlab/models.hpp"
#include "steinlab/samplers.hpp"
#include "steinlab/svgd.hpp"

namespace steinlab {

/// Resolved `[target]` section. `type` selects the model:
///   gaussian  dim, mean, variance, L
///   gmm       data (csv, first column) or generated from theta1, theta2,
///             sigma_x_sq, L, data_seed; prior sigma1_sq, sigma2_sq
///   logreg    data (csv, last column is the label) or generated from
///             n, d, w_true, data_seed
struct TargetSpec {
  std::string type = "gaussian";
  std::string data;  // optional CSV path
  Eigen::Index dim = 2;
  std::vector<double> mean{0.0};
  std::vector<double> variance{1.0};
  Eigen::Index num_terms = 1;
  std::uint64_t data_seed = 0;
  double theta1 = 0.0;
  double theta2 = 1.0;
  GmmParams gmm;
  Eigen::Index n = 500;
  Eigen::Index d = 5;
  std::vector<double> w_true;

  static TargetSpec from_config(const Config& config);
  void to_config(Config& config) const;
  DecomposableTarget build() const;
};

/// Reads `section.{step,batch,steps,init,seed}`; init defaults to the origin.
SgldConfig sgld_config_from(const Config& config, const std::string& section, Eigen::Index dim,
                            std::uint64_t default_seed);
void sgld_config_to(Config& config, const std::string& section, const SgldConfig& sgld);

SvgdConfig svgd_config_from(const Config& config, std::uint64_t default_seed);
void svgd_config_to(Config& config, const SvgdConfig& svgd);

// ---------------------------------------------------------------- score

struct ScoreOptions {
  std::string samples;
  Eigen::Index m = 0;  // 0 = exact KSD
  Eigen::Index discard = 0;
  std::uint64_t seed = 0;

  static ScoreOptions from_config(const Config& config, std::optional<std::uint64_t> seed_override);
  void to_config(Config& config) const;
};

DiscrepancyResult score_samples(const Eigen::Ref<const SampleBatch>& samples, const DecomposableTarget& target,
                                const KernelSpec& kernel, Eigen::Index m, std::uint64_t seed);

// ---------------------------------------------------------------- tune-sgld

struct TuneSgldOptions {
  std::vector<double> epsilons{1e-4, 5e-4, 1e-3, 5e-3, 1e-2, 5e-2};
  int trials = 10;
  Eigen::Index n = 1000;
  std::vector<Eigen::Index> m_list{1, 10};
  bool exact = true;  // also score with m = L
  Eigen::Index batch = 1;
  Eigen::Index discard = 0;
  std::vector<double> init;  // empty = origin
  std::uint64_t seed = 0;

  static TuneSgldOptions from_config(const Config& config, std::optional<std::uint64_t> seed_override);
  void to_config(Config& config) const;
};

struct TuneRow {
  double epsilon;
  Eigen::Index m;
  int trial;
  double value;  // NaN when the chain diverged
  std::uint64_t term_evals;
  bool diverged;
};

struct TuneSummary {
  double epsilon;
  Eigen::Index m;
  double mean;
  double std_error;
  double median;
  int scored;
  int diverged;
  bool selected;  // argmin of the mean over ε for this m
};

struct TuneResult {
  std::vector<TuneRow> rows;
  std::vector<TuneSummary> summary;
  std::map<Eigen::Index, double> argmin;  // m -> selected ε (ties toward smaller ε)
};

/// One SGLD chain per (ε, trial), scored by SKSD for every m. Chain and subset
/// seeds are derived from (seed, ε, trial[, m]) only, so adding trials or ε
/// values never changes existing rows.
TuneResult tune_sgld(const DecomposableTarget& target, const KernelSpec& kernel, const TuneSgldOptions& options);

/// Per-(ε, m) summary of scored rows. Diverged rows are counted but not
/// averaged; the argmin over ε uses the mean and breaks ties toward the smaller ε.
TuneResult summarize_tune(std::vector<TuneRow> rows);

std::string tune_rows_csv(const TuneResult& result);
std::string tune_summary_csv(const TuneResult& result);

// ---------------------------------------------------------------- rank-samplers

struct RankOptions {
  SgldConfig sampler_a;
  SgldConfig sampler_b;
  std::vector<Eigen::Index> n_grid{2000};
  std::vector<Eigen::Index> m_list{5};
  std::uint64_t seed = 0;

  static RankOptions from_config(const Config& config, Eigen::Index dim, std::optional<std::uint64_t> seed_override);
  void to_config(Config& config) const;
};

struct RankRow {
  Eigen::Index n;
  Eigen::Index m;
  double value_a;
  double value_b;
  std::uint64_t term_evals_a;
  std::uint64_t term_evals_b;
  std::string preferred;  // "A", "B" or "tie"
};

/// Scores the first n iterates of each sampler for every (n, m); lower SKSD wins.
/// Both samplers' subsets for a cell share one seed.
std::vector<RankRow> rank_samplers(const DecomposableTarget& target, const KernelSpec& kernel,
                                   const RankOptions& options);

std::string rank_rows_csv(const std::vector<RankRow>& rows);

// ---------------------------------------------------------------- ssvgd

struct InitSpec {
  std::string file;           // CSV in the sample format, or
  Eigen::Index n = 50;        // n i.i.d. draws from N(mean, sd^2 I)
  std::vector<double> mean{0.0};
  double sd = 1.0;
  std::uint64_t seed = 0;

  static InitSpec from_config(const Config& config);
  void to_config(Config& config) const;
  SampleBatch build(Eigen::Index dim) const;
};

std::string svgd_diagnostics_jsonl(const SvgdResult& result);

// ---------------------------------------------------------------- curve

struct CurveOptions {
  std::vector<Eigen::Index> n_grid{100, 200, 500, 1000, 2000};
  Eigen::Index m = 1;  // 0 = exact KSD
  int seeds = 20;
  std::uint64_t seed = 0;
  std::vector<double> sample_mean{0.0};
  double sample_sd = 1.0;

  static CurveOptions from_config(const Config& config, std::optional<std::uint64_t> seed_override);
  void to_config(Config& config) const;
};

struct CurveRow {
  Eigen::Index n;
  int replicate;
  double value;
  std::uint64_t term_evals;
};

struct CurveSummary {
  Eigen::Index n;
  double median;
  double mean;
};

struct CurveResult {
  std::vector<CurveRow> rows;
  std::vector<CurveSummary> summary;
};

/// For each replicate draws one i.i.d. N(sample_mean, sample_sd^2 I) stream
/// and scores its nested prefixes of every size in n_grid.
CurveResult convergence_curve(const DecomposableTarget& target, const KernelSpec& kernel, const CurveOptions& options);

std::string curve_rows_csv(const CurveResult& result);

// ---------------------------------------------------------------- shared helpers

/// Broadcasts a length-1 list to `dim`, otherwise requires length `dim`.
Eigen::VectorXd broadcast(const std::vector<double>& values, Eigen::Index dim, const std::string& what);

double median_of(std::vector<double> values);

}  // namespace steinlab
