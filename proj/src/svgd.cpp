#include "steinlab/svgd.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <fmt/format.h>

#include "steinlab/errors.hpp"
#include "steinlab/parallel.hpp"
#include "steinlab/rng.hpp"

namespace steinlab {

void SvgdConfig::validate(Eigen::Index num_terms) const {
  if (rounds < 0) throw std::invalid_argument("SVGD rounds must be >= 0");
  if (batch < 1 || batch > num_terms) {
    throw std::invalid_argument("SVGD batch " + std::to_string(batch) + " outside [1, " + std::to_string(num_terms) +
                                "]");
  }
  if (!(step > 0.0) || !std::isfinite(step)) throw std::invalid_argument("SVGD step size must be > 0");
  if (!(fudge >= 0.0)) throw std::invalid_argument("AdaGrad fudge must be >= 0");
  if (checkpoint_every < 0) throw std::invalid_argument("checkpoint interval must be >= 0");
  kernel.validate();
}

Eigen::MatrixXd svgd_direction_from_scores(const Eigen::Ref<const SampleBatch>& particles,
                                           const Eigen::Ref<const Eigen::MatrixXd>& scores, const KernelSpec& spec) {
  const Eigen::Index n = particles.rows();
  const Eigen::Index d = particles.cols();
  if (scores.rows() != n || scores.cols() != d) throw DimensionError("score matrix does not match particles");
  const double h = spec.bandwidth;
  Eigen::MatrixXd out(n, d);
  parallel_for(block_count(n), [&](std::ptrdiff_t block) {
    Eigen::VectorXd acc(d);
    Eigen::VectorXd u(d);
    const Eigen::Index last = std::min<Eigen::Index>((block + 1) * kBlockRows, n);
    for (Eigen::Index i = block * kBlockRows; i < last; ++i) {
      acc.setZero();
      for (Eigen::Index j = 0; j < n; ++j) {
        u = (particles.row(j) - particles.row(i)).transpose();
        const auto p = radial_profile(spec, u.squaredNorm() / h);
        // ∇_{x_j} k(x_j, x_i) = 2 phi'(s) (x_j - x_i) / h
        acc += p.value * scores.row(j).transpose() + (2.0 * p.d1 / h) * u;
      }
      acc /= static_cast<double>(n);
      if (!acc.allFinite()) {
        throw NonFiniteScore("SVGD direction for particle " + std::to_string(i) + " is not finite",
                             static_cast<std::size_t>(i));
      }
      out.row(i) = acc.transpose();
    }
  });
  return out;
}

Eigen::MatrixXd ssvgd_direction(const Eigen::Ref<const SampleBatch>& particles, const DecomposableTarget& target,
                                const KernelSpec& spec) {
  return svgd_direction_from_scores(particles, scaled_scores(particles, target), spec);
}

Eigen::MatrixXd ssvgd_direction(const Eigen::Ref<const SampleBatch>& particles, const DecomposableTarget& target,
                                const KernelSpec& spec, const SubsetAssignment& assignment) {
  return svgd_direction_from_scores(particles, scaled_scores(particles, target, assignment), spec);
}

namespace {

SvgdResult run(const Eigen::Ref<const SampleBatch>& init, const DecomposableTarget& target, const SvgdConfig& config,
               bool stochastic) {
  validate_batch(init);
  if (init.cols() != target.dim()) throw DimensionError("initial particles do not match the target dimension");
  const Eigen::Index m = stochastic ? config.batch : target.num_terms();
  SvgdConfig checked = config;
  if (!stochastic) checked.batch = m;
  checked.validate(target.num_terms());

  const Eigen::Index n = init.rows();
  const auto per_round = static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(m);
  const std::uint64_t subset_base = stream_seed(config.seed, Stream::kSvgd);

  SvgdResult result;
  result.particles = init;
  Eigen::MatrixXd history = Eigen::MatrixXd::Zero(n, init.cols());

  const auto checkpoint = [&](Eigen::Index round) {
    SvgdCheckpoint cp{round, result.term_evals, result.particles, std::nullopt};
    if (config.checkpoint_ksd) cp.ksd = ksd(result.particles, target, config.kernel).value;
    result.trajectory.push_back(std::move(cp));
  };
  if (config.checkpoint_every > 0) checkpoint(0);

  for (Eigen::Index round = 0; round < config.rounds; ++round) {
    KernelSpec spec = config.kernel;
    if (config.bandwidth == BandwidthPolicy::kMedianPerRound && n >= 2) {
      spec = spec.with_bandwidth(median_heuristic_bandwidth(result.particles).value);
    }

    Eigen::MatrixXd direction;
    try {
      if (stochastic) {
        const auto assignment = draw_subsets(n, target.num_terms(), m, derive_seed(subset_base, {std::uint64_t(round)}));
        direction = m == target.num_terms() ? ssvgd_direction(result.particles, target, spec)
                                            : ssvgd_direction(result.particles, target, spec, assignment);
      } else {
        direction = ssvgd_direction(result.particles, target, spec);
      }
    } catch (const NonFiniteScore& e) {
      throw DivergenceError(fmt::format("SVGD diverged in round {}: {}", round, e.what()),
                            static_cast<std::size_t>(round));
    }

    if (config.schedule == StepSchedule::kAdagrad) {
      history.array() += direction.array().square();
      result.particles.array() += config.step * direction.array() / (config.fudge + history.array().sqrt());
    } else {
      result.particles += config.step * direction;
    }
    result.term_evals += per_round;

    if (!result.particles.allFinite()) {
      throw DivergenceError(fmt::format("SVGD diverged in round {}: non-finite particle", round),
                            static_cast<std::size_t>(round));
    }
    if (config.checkpoint_every > 0 &&
        ((round + 1) % config.checkpoint_every == 0 || round + 1 == config.rounds)) {
      checkpoint(round + 1);
    }
  }
  return result;
}

}  // namespace

SvgdResult run_ssvgd(const Eigen::Ref<const SampleBatch>& init, const DecomposableTarget& target,
                     const SvgdConfig& config) {
  return run(init, target, config, true);
}

SvgdResult run_svgd(const Eigen::Ref<const SampleBatch>& init, const DecomposableTarget& target,
                    const SvgdConfig& config) {
  return run(init, target, config, false);
}

std::string to_string(StepSchedule schedule) { return schedule == StepSchedule::kAdagrad ? "adagrad" : "constant"; }

std::string to_string(BandwidthPolicy policy) { return policy == BandwidthPolicy::kFixed ? "fixed" : "median"; }

StepSchedule step_schedule_from_string(const std::string& name) {
  if (name == "adagrad") return StepSchedule::kAdagrad;
  if (name == "constant") return StepSchedule::kConstant;
  throw std::invalid_argument("unknown step schedule '" + name + "' (expected adagrad or constant)");
}

BandwidthPolicy bandwidth_policy_from_string(const std::string& name) {
  if (name == "fixed") return BandwidthPolicy::kFixed;
  if (name == "median") return BandwidthPolicy::kMedianPerRound;
  throw std::invalid_argument("unknown bandwidth policy '" + name + "' (expected fixed or median)");
}

}  // namespace steinlab
