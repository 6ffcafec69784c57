#include "steinlab/experiments.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include <fmt/format.h>
#include <json.hpp>

#include "steinlab/errors.hpp"
#include "steinlab/io.hpp"
#include "steinlab/parallel.hpp"
#include "steinlab/rng.hpp"

namespace steinlab {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string seed_string(std::uint64_t seed) { return std::to_string(seed); }

std::vector<Eigen::Index> to_indices(const std::vector<std::int64_t>& values) {
  return {values.begin(), values.end()};
}

std::vector<std::int64_t> to_ints(const std::vector<Eigen::Index>& values) { return {values.begin(), values.end()}; }

std::uint64_t bits(double x) { return std::bit_cast<std::uint64_t>(x); }

std::uint64_t resolve_seed(const Config& config, const std::string& key, std::optional<std::uint64_t> override_seed) {
  return override_seed ? *override_seed : config.get_seed(key, 0);
}

}  // namespace

Eigen::VectorXd broadcast(const std::vector<double>& values, Eigen::Index dim, const std::string& what) {
  if (values.size() == 1) return Eigen::VectorXd::Constant(dim, values.front());
  if (static_cast<Eigen::Index>(values.size()) != dim) {
    throw DimensionError(fmt::format("{} has {} entries, expected 1 or {}", what, values.size(), dim));
  }
  return Eigen::Map<const Eigen::VectorXd>(values.data(), dim);
}

double median_of(std::vector<double> values) {
  if (values.empty()) return kNaN;
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  return values.size() % 2 ? values[mid] : 0.5 * (values[mid - 1] + values[mid]);
}

// ---------------------------------------------------------------- target

TargetSpec TargetSpec::from_config(const Config& c) {
  TargetSpec t;
  t.type = c.get_string("target.type", t.type);
  t.data = c.get_string("target.data", "");
  t.data_seed = c.get_seed("target.data_seed", t.data_seed);
  if (t.type == "gaussian") {
    t.dim = c.get_int("target.dim", t.dim);
    t.mean = c.get_doubles("target.mean", t.mean);
    t.variance = c.get_doubles("target.variance", t.variance);
    t.num_terms = c.get_int("target.L", t.num_terms);
  } else if (t.type == "gmm") {
    t.num_terms = c.get_int("target.L", 100);
    t.theta1 = c.get_double("target.theta1", t.theta1);
    t.theta2 = c.get_double("target.theta2", t.theta2);
    t.gmm.sigma1_sq = c.get_double("target.sigma1_sq", t.gmm.sigma1_sq);
    t.gmm.sigma2_sq = c.get_double("target.sigma2_sq", t.gmm.sigma2_sq);
    t.gmm.sigma_x_sq = c.get_double("target.sigma_x_sq", t.gmm.sigma_x_sq);
  } else if (t.type == "logreg") {
    t.n = c.get_int("target.n", t.n);
    t.d = c.get_int("target.d", t.d);
    t.w_true = c.get_doubles("target.w_true", {0.0});
  } else {
    throw ParseError("config: target.type must be gaussian, gmm or logreg, got '" + t.type + "'");
  }
  return t;
}

void TargetSpec::to_config(Config& c) const {
  c.set("target.type", type);
  if (!data.empty()) c.set("target.data", data);
  if (type == "gaussian") {
    c.set("target.dim", std::int64_t{dim});
    c.set("target.mean", mean);
    c.set("target.variance", variance);
    c.set("target.L", std::int64_t{num_terms});
  } else if (type == "gmm") {
    if (data.empty()) {
      c.set("target.L", std::int64_t{num_terms});
      c.set("target.theta1", theta1);
      c.set("target.theta2", theta2);
      c.set("target.data_seed", seed_string(data_seed));
    }
    c.set("target.sigma1_sq", gmm.sigma1_sq);
    c.set("target.sigma2_sq", gmm.sigma2_sq);
    c.set("target.sigma_x_sq", gmm.sigma_x_sq);
  } else if (type == "logreg" && data.empty()) {
    c.set("target.n", std::int64_t{n});
    c.set("target.d", std::int64_t{d});
    c.set("target.w_true", w_true);
    c.set("target.data_seed", seed_string(data_seed));
  }
}

DecomposableTarget TargetSpec::build() const {
  if (type == "gaussian") {
    return make_gaussian(broadcast(mean, dim, "target.mean"), broadcast(variance, dim, "target.variance"), num_terms);
  }
  if (type == "gmm") {
    Eigen::VectorXd y;
    if (!data.empty()) {
      const auto table = read_csv(data);
      if (table.values.rows() == 0) throw ParseError(data + ": no observations");
      y = table.values.col(0);
    } else {
      y = gen_gmm_data(theta1, theta2, gmm.sigma_x_sq, num_terms, data_seed);
    }
    return make_gmm_posterior(y, gmm);
  }
  if (type == "logreg") {
    if (!data.empty()) {
      const auto table = read_csv(data);
      if (table.values.cols() < 2) throw ParseError(data + ": need at least one feature column and a label column");
      const Eigen::Index p = table.values.cols() - 1;
      return make_logreg(table.values.leftCols(p), table.values.col(p));
    }
    const auto gen = gen_logreg_data(n, d, broadcast(w_true, d, "target.w_true"), data_seed);
    return make_logreg(gen.features, gen.labels);
  }
  throw ParseError("unknown target type '" + type + "'");
}

// ---------------------------------------------------------------- module configs

SgldConfig sgld_config_from(const Config& c, const std::string& s, Eigen::Index dim, std::uint64_t default_seed) {
  SgldConfig cfg;
  cfg.step = c.get_double(s + ".step", cfg.step);
  cfg.batch = c.get_int(s + ".batch", cfg.batch);
  cfg.steps = c.get_int(s + ".steps", cfg.steps);
  cfg.init = c.has(s + ".init") ? broadcast(c.get_doubles(s + ".init"), dim, s + ".init")
                                : Eigen::VectorXd::Zero(dim).eval();
  cfg.seed = c.get_seed(s + ".seed", default_seed);
  return cfg;
}

void sgld_config_to(Config& c, const std::string& s, const SgldConfig& cfg) {
  c.set(s + ".step", cfg.step);
  c.set(s + ".batch", std::int64_t{cfg.batch});
  c.set(s + ".steps", std::int64_t{cfg.steps});
  c.set(s + ".init", std::vector<double>(cfg.init.data(), cfg.init.data() + cfg.init.size()));
  c.set(s + ".seed", seed_string(cfg.seed));
}

SvgdConfig svgd_config_from(const Config& c, std::uint64_t default_seed) {
  SvgdConfig cfg;
  cfg.kernel = KernelSpec::from_config(c);
  cfg.rounds = c.get_int("svgd.rounds", cfg.rounds);
  cfg.batch = c.get_int("svgd.batch", cfg.batch);
  cfg.schedule = step_schedule_from_string(c.get_string("svgd.schedule", "adagrad"));
  cfg.step = c.get_double("svgd.step", cfg.step);
  cfg.fudge = c.get_double("svgd.fudge", cfg.fudge);
  const std::string policy_default = cfg.kernel.family == KernelFamily::kRbf ? "median" : "fixed";
  cfg.bandwidth = bandwidth_policy_from_string(c.get_string("svgd.bandwidth", policy_default));
  cfg.seed = c.get_seed("svgd.seed", default_seed);
  cfg.checkpoint_every = c.get_int("svgd.checkpoint_every", cfg.checkpoint_every);
  cfg.checkpoint_ksd = c.get_bool("svgd.checkpoint_ksd", cfg.checkpoint_ksd);
  return cfg;
}

void svgd_config_to(Config& c, const SvgdConfig& cfg) {
  cfg.kernel.to_config(c);
  c.set("svgd.rounds", std::int64_t{cfg.rounds});
  c.set("svgd.batch", std::int64_t{cfg.batch});
  c.set("svgd.schedule", to_string(cfg.schedule));
  c.set("svgd.step", cfg.step);
  c.set("svgd.fudge", cfg.fudge);
  c.set("svgd.bandwidth", to_string(cfg.bandwidth));
  c.set("svgd.seed", seed_string(cfg.seed));
  c.set("svgd.checkpoint_every", std::int64_t{cfg.checkpoint_every});
  c.set("svgd.checkpoint_ksd", std::string(cfg.checkpoint_ksd ? "true" : "false"));
}

// ---------------------------------------------------------------- score

ScoreOptions ScoreOptions::from_config(const Config& c, std::optional<std::uint64_t> seed_override) {
  ScoreOptions o;
  o.samples = c.get_string("score.samples");
  o.m = c.get_int("score.m", 0);
  o.discard = c.get_int("score.discard", 0);
  o.seed = resolve_seed(c, "score.seed", seed_override);
  if (o.m < 0 || o.discard < 0) throw ParseError("config: score.m and score.discard must be >= 0");
  return o;
}

void ScoreOptions::to_config(Config& c) const {
  c.set("score.samples", samples);
  c.set("score.m", std::int64_t{m});
  c.set("score.discard", std::int64_t{discard});
  c.set("score.seed", seed_string(seed));
}

DiscrepancyResult score_samples(const Eigen::Ref<const SampleBatch>& samples, const DecomposableTarget& target,
                                const KernelSpec& kernel, Eigen::Index m, std::uint64_t seed) {
  return m == 0 ? ksd(samples, target, kernel) : sksd(samples, target, kernel, m, seed);
}

// ---------------------------------------------------------------- tune-sgld

TuneSgldOptions TuneSgldOptions::from_config(const Config& c, std::optional<std::uint64_t> seed_override) {
  TuneSgldOptions o;
  o.epsilons = c.get_doubles("tune.epsilons", o.epsilons);
  o.trials = static_cast<int>(c.get_int("tune.trials", o.trials));
  o.n = c.get_int("tune.n", o.n);
  o.m_list = to_indices(c.get_ints("tune.m", to_ints(o.m_list)));
  o.exact = c.get_bool("tune.exact", o.exact);
  o.batch = c.get_int("tune.batch", o.batch);
  o.discard = c.get_int("tune.discard", o.discard);
  o.init = c.get_doubles("tune.init", {0.0});
  o.seed = resolve_seed(c, "tune.seed", seed_override);
  if (o.epsilons.empty()) throw ParseError("config: tune.epsilons must be nonempty");
  if (o.trials < 1 || o.n < 1) throw ParseError("config: tune.trials and tune.n must be >= 1");
  return o;
}

void TuneSgldOptions::to_config(Config& c) const {
  c.set("tune.epsilons", epsilons);
  c.set("tune.trials", std::int64_t{trials});
  c.set("tune.n", std::int64_t{n});
  c.set("tune.m", to_ints(m_list));
  c.set("tune.exact", std::string(exact ? "true" : "false"));
  c.set("tune.batch", std::int64_t{batch});
  c.set("tune.discard", std::int64_t{discard});
  c.set("tune.init", init.empty() ? std::vector<double>{0.0} : init);
  c.set("tune.seed", seed_string(seed));
}

TuneResult tune_sgld(const DecomposableTarget& target, const KernelSpec& kernel, const TuneSgldOptions& options) {
  if (options.epsilons.empty()) throw std::invalid_argument("tune_sgld: empty epsilon grid");
  std::vector<Eigen::Index> ms = options.m_list;
  if (options.exact && std::find(ms.begin(), ms.end(), target.num_terms()) == ms.end()) {
    ms.push_back(target.num_terms());
  }
  for (auto m : ms) {
    if (m < 1 || m > target.num_terms()) throw std::invalid_argument("tune_sgld: m outside [1, L]");
  }

  std::vector<double> eps = options.epsilons;
  std::sort(eps.begin(), eps.end());
  eps.erase(std::unique(eps.begin(), eps.end()), eps.end());

  const auto n_eps = static_cast<std::ptrdiff_t>(eps.size());
  const std::ptrdiff_t cells = n_eps * options.trials;
  std::vector<std::vector<TuneRow>> cell_rows(static_cast<std::size_t>(cells));
  const Eigen::VectorXd init = options.init.empty() ? Eigen::VectorXd::Zero(target.dim()).eval()
                                                    : broadcast(options.init, target.dim(), "tune.init");

  parallel_for(cells, [&](std::ptrdiff_t cell) {
    const double epsilon = eps[static_cast<std::size_t>(cell / options.trials)];
    const int trial = static_cast<int>(cell % options.trials);
    SgldConfig sgld;
    sgld.step = epsilon;
    sgld.batch = options.batch;
    sgld.steps = options.n + options.discard;
    sgld.init = init;
    sgld.seed = derive_seed(options.seed, {bits(epsilon), static_cast<std::uint64_t>(trial)});

    auto& rows = cell_rows[static_cast<std::size_t>(cell)];
    SampleBatch chain;
    bool diverged = false;
    try {
      chain = sgld_chain(target, sgld).bottomRows(options.n);
    } catch (const DivergenceError&) {
      diverged = true;
    }
    for (auto m : ms) {
      TuneRow row{epsilon, m, trial, kNaN, 0, diverged};
      if (!diverged) {
        const auto seed = derive_seed(options.seed, {bits(epsilon), static_cast<std::uint64_t>(trial),
                                                     static_cast<std::uint64_t>(m)});
        const auto r = sksd(chain, target, kernel, m, seed);
        row.value = r.value;
        row.term_evals = r.term_evals;
      }
      rows.push_back(row);
    }
  });

  std::vector<TuneRow> rows;
  for (auto& cell : cell_rows) rows.insert(rows.end(), cell.begin(), cell.end());
  return summarize_tune(std::move(rows));
}

TuneResult summarize_tune(std::vector<TuneRow> rows) {
  std::vector<double> eps;
  std::vector<Eigen::Index> ms;
  for (const auto& row : rows) {
    eps.push_back(row.epsilon);
    if (std::find(ms.begin(), ms.end(), row.m) == ms.end()) ms.push_back(row.m);
  }
  std::sort(eps.begin(), eps.end());
  eps.erase(std::unique(eps.begin(), eps.end()), eps.end());

  TuneResult result;
  result.rows = std::move(rows);

  for (auto m : ms) {
    std::size_t best = 0;
    bool have_best = false;
    for (double epsilon : eps) {
      std::vector<double> values;
      int diverged = 0;
      for (const auto& row : result.rows) {
        if (row.m != m || row.epsilon != epsilon) continue;
        if (row.diverged) ++diverged;
        else values.push_back(row.value);
      }
      TuneSummary s{epsilon, m, kNaN, kNaN, kNaN, static_cast<int>(values.size()), diverged, false};
      if (!values.empty()) {
        const double k = static_cast<double>(values.size());
        s.mean = std::accumulate(values.begin(), values.end(), 0.0) / k;
        double ss = 0.0;
        for (double v : values) ss += (v - s.mean) * (v - s.mean);
        s.std_error = values.size() > 1 ? std::sqrt(ss / (k - 1.0) / k) : 0.0;
        s.median = median_of(values);
        if (!have_best || s.mean < result.summary[best].mean) {
          best = result.summary.size();
          have_best = true;
        }
      }
      result.summary.push_back(s);
    }
    if (have_best) {
      result.summary[best].selected = true;
      result.argmin[m] = result.summary[best].epsilon;
    }
  }
  return result;
}

std::string tune_rows_csv(const TuneResult& result) {
  std::string out = "epsilon,m,trial,value,term_evals,status\n";
  for (const auto& r : result.rows) {
    out += fmt::format("{},{},{},{},{},{}\n", format_double(r.epsilon), r.m, r.trial,
                       r.diverged ? "nan" : format_double(r.value), r.term_evals, r.diverged ? "diverged" : "ok");
  }
  return out;
}

std::string tune_summary_csv(const TuneResult& result) {
  std::string out = "epsilon,m,mean,std_error,median,scored,diverged,selected\n";
  for (const auto& s : result.summary) {
    out += fmt::format("{},{},{},{},{},{},{},{}\n", format_double(s.epsilon), s.m, format_double(s.mean),
                       format_double(s.std_error), format_double(s.median), s.scored, s.diverged, s.selected ? 1 : 0);
  }
  return out;
}

// ---------------------------------------------------------------- rank-samplers

RankOptions RankOptions::from_config(const Config& c, Eigen::Index dim, std::optional<std::uint64_t> seed_override) {
  RankOptions o;
  o.seed = resolve_seed(c, "rank.seed", seed_override);
  o.n_grid = to_indices(c.get_ints("rank.n", to_ints(o.n_grid)));
  o.m_list = to_indices(c.get_ints("rank.m", to_ints(o.m_list)));
  o.sampler_a = sgld_config_from(c, "sampler_a", dim, o.seed);
  o.sampler_b = sgld_config_from(c, "sampler_b", dim, o.seed);
  if (seed_override) {
    o.sampler_a.seed = *seed_override;
    o.sampler_b.seed = *seed_override;
  }
  if (o.n_grid.empty() || o.m_list.empty()) throw ParseError("config: rank.n and rank.m must be nonempty");
  const auto longest = *std::max_element(o.n_grid.begin(), o.n_grid.end());
  o.sampler_a.steps = longest;
  o.sampler_b.steps = longest;
  return o;
}

void RankOptions::to_config(Config& c) const {
  c.set("rank.seed", seed_string(seed));
  c.set("rank.n", to_ints(n_grid));
  c.set("rank.m", to_ints(m_list));
  sgld_config_to(c, "sampler_a", sampler_a);
  sgld_config_to(c, "sampler_b", sampler_b);
}

std::vector<RankRow> rank_samplers(const DecomposableTarget& target, const KernelSpec& kernel,
                                   const RankOptions& options) {
  if (options.n_grid.empty() || options.m_list.empty()) throw std::invalid_argument("rank_samplers: empty grid");
  const auto longest = *std::max_element(options.n_grid.begin(), options.n_grid.end());
  for (auto n : options.n_grid) {
    if (n < 1) throw std::invalid_argument("rank_samplers: n must be >= 1");
  }

  const auto run_chain = [&](SgldConfig cfg) -> std::optional<SampleBatch> {
    cfg.steps = std::max(cfg.steps, longest);
    try {
      return sgld_chain(target, cfg);
    } catch (const DivergenceError&) {
      return std::nullopt;
    }
  };
  const auto chain_a = run_chain(options.sampler_a);
  const auto chain_b = run_chain(options.sampler_b);

  const auto cells = static_cast<std::ptrdiff_t>(options.n_grid.size() * options.m_list.size());
  std::vector<RankRow> rows(static_cast<std::size_t>(cells));
  parallel_for(cells, [&](std::ptrdiff_t cell) {
    const auto n = options.n_grid[static_cast<std::size_t>(cell) / options.m_list.size()];
    const auto m = options.m_list[static_cast<std::size_t>(cell) % options.m_list.size()];
    const auto seed = derive_seed(options.seed, {static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(m)});
    RankRow row{n, m, kNaN, kNaN, 0, 0, "tie"};
    if (chain_a) {
      const auto r = sksd(chain_a->topRows(n), target, kernel, m, seed);
      row.value_a = r.value;
      row.term_evals_a = r.term_evals;
    }
    if (chain_b) {
      const auto r = sksd(chain_b->topRows(n), target, kernel, m, seed);
      row.value_b = r.value;
      row.term_evals_b = r.term_evals;
    }
    if (chain_a && chain_b) {
      row.preferred = row.value_a < row.value_b ? "A" : row.value_b < row.value_a ? "B" : "tie";
    } else if (chain_a || chain_b) {
      row.preferred = chain_a ? "A" : "B";
    }
    rows[static_cast<std::size_t>(cell)] = row;
  });
  return rows;
}

std::string rank_rows_csv(const std::vector<RankRow>& rows) {
  std::string out = "n,m,value_a,value_b,term_evals_a,term_evals_b,preferred\n";
  for (const auto& r : rows) {
    out += fmt::format("{},{},{},{},{},{},{}\n", r.n, r.m, std::isnan(r.value_a) ? "nan" : format_double(r.value_a),
                       std::isnan(r.value_b) ? "nan" : format_double(r.value_b), r.term_evals_a, r.term_evals_b,
                       r.preferred);
  }
  return out;
}

// ---------------------------------------------------------------- ssvgd

InitSpec InitSpec::from_config(const Config& c) {
  InitSpec s;
  s.file = c.get_string("init.file", "");
  s.n = c.get_int("init.n", s.n);
  s.mean = c.get_doubles("init.mean", s.mean);
  s.sd = c.get_double("init.sd", s.sd);
  s.seed = c.get_seed("init.seed", s.seed);
  return s;
}

void InitSpec::to_config(Config& c) const {
  if (!file.empty()) {
    c.set("init.file", file);
    return;
  }
  c.set("init.n", std::int64_t{n});
  c.set("init.mean", mean);
  c.set("init.sd", sd);
  c.set("init.seed", seed_string(seed));
}

SampleBatch InitSpec::build(Eigen::Index dim) const {
  if (!file.empty()) {
    SampleBatch batch = read_samples_csv(file);
    if (batch.cols() != dim) throw DimensionError(file + ": particle dimension does not match the target");
    return batch;
  }
  return iid_gaussian(n, broadcast(mean, dim, "init.mean"), sd, stream_seed(seed, Stream::kInit));
}

std::string svgd_diagnostics_jsonl(const SvgdResult& result) {
  std::string out;
  for (const auto& cp : result.trajectory) {
    nlohmann::ordered_json j;
    j["round"] = cp.round;
    j["term_evals"] = cp.term_evals;
    j["ksd"] = cp.ksd ? nlohmann::ordered_json(*cp.ksd) : nlohmann::ordered_json(nullptr);
    out += j.dump() + "\n";
  }
  return out;
}

// ---------------------------------------------------------------- curve

CurveOptions CurveOptions::from_config(const Config& c, std::optional<std::uint64_t> seed_override) {
  CurveOptions o;
  o.n_grid = to_indices(c.get_ints("curve.n", to_ints(o.n_grid)));
  o.m = c.get_int("curve.m", o.m);
  o.seeds = static_cast<int>(c.get_int("curve.seeds", o.seeds));
  o.seed = resolve_seed(c, "curve.seed", seed_override);
  o.sample_mean = c.get_doubles("curve.sample_mean", o.sample_mean);
  o.sample_sd = c.get_double("curve.sample_sd", o.sample_sd);
  if (o.n_grid.empty() || o.seeds < 1) throw ParseError("config: curve.n must be nonempty and curve.seeds >= 1");
  return o;
}

void CurveOptions::to_config(Config& c) const {
  c.set("curve.n", to_ints(n_grid));
  c.set("curve.m", std::int64_t{m});
  c.set("curve.seeds", std::int64_t{seeds});
  c.set("curve.seed", seed_string(seed));
  c.set("curve.sample_mean", sample_mean);
  c.set("curve.sample_sd", sample_sd);
}

CurveResult convergence_curve(const DecomposableTarget& target, const KernelSpec& kernel,
                              const CurveOptions& options) {
  if (options.n_grid.empty()) throw std::invalid_argument("convergence_curve: empty n grid");
  const auto longest = *std::max_element(options.n_grid.begin(), options.n_grid.end());
  const Eigen::VectorXd mu = broadcast(options.sample_mean, target.dim(), "curve.sample_mean");
  const auto per_rep = options.n_grid.size();

  std::vector<CurveRow> rows(static_cast<std::size_t>(options.seeds) * per_rep);
  parallel_for(options.seeds, [&](std::ptrdiff_t rep) {
    const auto rep_seed = derive_seed(options.seed, {static_cast<std::uint64_t>(rep)});
    const SampleBatch stream = iid_gaussian(longest, mu, options.sample_sd, stream_seed(rep_seed, Stream::kInit));
    for (std::size_t k = 0; k < per_rep; ++k) {
      const auto n = options.n_grid[k];
      const auto r = score_samples(stream.topRows(n), target, kernel, options.m,
                                   derive_seed(rep_seed, {static_cast<std::uint64_t>(n)}));
      rows[static_cast<std::size_t>(rep) * per_rep + k] = {n, static_cast<int>(rep), r.value, r.term_evals};
    }
  });

  CurveResult result{rows, {}};
  for (auto n : options.n_grid) {
    std::vector<double> values;
    for (const auto& row : rows) {
      if (row.n == n) values.push_back(row.value);
    }
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
    result.summary.push_back({n, median_of(values), mean});
  }
  return result;
}

std::string curve_rows_csv(const CurveResult& result) {
  std::string out = "n,replicate,value,term_evals\n";
  for (const auto& r : result.rows) {
    out += fmt::format("{},{},{},{}\n", r.n, r.replicate, format_double(r.value), r.term_evals);
  }
  return out;
}

}  // namespace steinlab
