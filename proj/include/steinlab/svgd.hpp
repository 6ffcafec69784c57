#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "steinlab/discrepancy.hpp"
#include "steinlab/kernels.hpp"
#include "steinlab/models.hpp"

namespace steinlab {

enum class StepSchedule { kConstant, kAdagrad };
enum class BandwidthPolicy { kFixed, kMedianPerRound };

struct SvgdConfig {
  Eigen::Index rounds = 500;
  Eigen::Index batch = 1;  // m; m == L gives deterministic SVGD
  StepSchedule schedule = StepSchedule::kAdagrad;
  double step = 0.05;      // ε₀
  double fudge = 1e-6;     // AdaGrad denominator offset
  KernelSpec kernel = KernelSpec::imq();
  BandwidthPolicy bandwidth = BandwidthPolicy::kFixed;
  std::uint64_t seed = 0;
  Eigen::Index checkpoint_every = 0;  // 0 disables the trajectory
  bool checkpoint_ksd = false;        // exact KSD at each checkpoint; its n*L evaluations hit the
                                      // target counter but not SvgdResult::term_evals

  void validate(Eigen::Index num_terms) const;
};

struct SvgdCheckpoint {
  Eigen::Index round;         // rounds completed
  std::uint64_t term_evals;   // update cost so far, n * m per round
  SampleBatch particles;
  std::optional<double> ksd;
};

struct SvgdResult {
  SampleBatch particles;
  std::uint64_t term_evals = 0;
  std::vector<SvgdCheckpoint> trajectory;
};

/// Row i = (1/n) Σ_j [ k(x_j, x_i) s_j + ∇_{x_j} k(x_j, x_i) ] with s_j the exact score.
Eigen::MatrixXd ssvgd_direction(const Eigen::Ref<const SampleBatch>& particles, const DecomposableTarget& target,
                                const KernelSpec& spec);

/// Same with s_j = (L/m) ∇log p_{σ_j}(x_j); subset j belongs to source particle j.
Eigen::MatrixXd ssvgd_direction(const Eigen::Ref<const SampleBatch>& particles, const DecomposableTarget& target,
                                const KernelSpec& spec, const SubsetAssignment& assignment);

/// Direction from a precomputed score matrix; row i sums sources j = 0..n-1 in order.
Eigen::MatrixXd svgd_direction_from_scores(const Eigen::Ref<const SampleBatch>& particles,
                                           const Eigen::Ref<const Eigen::MatrixXd>& scores, const KernelSpec& spec);

/// Stochastic SVGD: every round draws n fresh size-m subsets, evaluates the
/// direction at the round-start positions and moves all particles at once.
/// With m == L the subsets are still drawn but the exact scores are used.
SvgdResult run_ssvgd(const Eigen::Ref<const SampleBatch>& init, const DecomposableTarget& target,
                     const SvgdConfig& config);

/// Deterministic SVGD with exact scores; config.batch and config.seed are ignored.
SvgdResult run_svgd(const Eigen::Ref<const SampleBatch>& init, const DecomposableTarget& target,
                    const SvgdConfig& config);

std::string to_string(StepSchedule schedule);
std::string to_string(BandwidthPolicy policy);
StepSchedule step_schedule_from_string(const std::string& name);
BandwidthPolicy bandwidth_policy_from_string(const std::string& name);

}  // namespace steinlab
