#pragma once

#include <cstdint>

#include <Eigen/Core>

#include "steinlab/discrepancy.hpp"
#include "steinlab/models.hpp"

namespace steinlab {

/// Constant-step stochastic gradient Langevin dynamics.
struct SgldConfig {
  double step = 1e-3;          // ε > 0
  Eigen::Index batch = 1;      // minibatch size b in [1, L]
  Eigen::Index steps = 1000;   // number of returned iterates
  Eigen::VectorXd init;        // x_0, length target.dim()
  std::uint64_t seed = 0;

  /// Throws std::invalid_argument unless step > 0, 1 <= batch <= num_terms,
  /// steps >= 1 and init has length dim.
  void validate(Eigen::Index dim, Eigen::Index num_terms) const;
};

/// x_{t+1} = x_t + (ε/2) ĝ(x_t) + sqrt(ε) ξ_t with
/// ĝ(x) = ∇log π₀(x) + (L/b) Σ_{l∈batch_t} ∇log π(y_l|x), a fresh minibatch
/// drawn without replacement every step. Returns the `steps` post-update
/// iterates. Consumes exactly steps * batch term evaluations. Throws
/// DivergenceError (step index and ε in the message) on a non-finite iterate.
SampleBatch sgld_chain(const DecomposableTarget& target, const SgldConfig& config);

/// n i.i.d. rows from N(mu, sigma^2 I_d). `mu` has length d.
SampleBatch iid_gaussian(Eigen::Index n, const Eigen::VectorXd& mu, double sigma, std::uint64_t seed);

}  // namespace steinlab
