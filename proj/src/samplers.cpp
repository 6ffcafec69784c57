#include "steinlab/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "steinlab/errors.hpp"
#include "steinlab/rng.hpp"

namespace steinlab {

void SgldConfig::validate(Eigen::Index dim, Eigen::Index num_terms) const {
  if (!(step > 0.0) || !std::isfinite(step)) throw std::invalid_argument("SGLD step size must be finite and > 0");
  if (batch < 1 || batch > num_terms) {
    throw std::invalid_argument("SGLD minibatch size " + std::to_string(batch) + " outside [1, " +
                                std::to_string(num_terms) + "]");
  }
  if (steps < 1) throw std::invalid_argument("SGLD chain length must be >= 1");
  if (init.size() != dim) throw DimensionError("SGLD init has the wrong dimension");
  if (!init.allFinite()) throw std::invalid_argument("SGLD init must be finite");
}

SampleBatch sgld_chain(const DecomposableTarget& target, const SgldConfig& config) {
  config.validate(target.dim(), target.num_terms());
  const Eigen::Index d = target.dim();
  const Eigen::Index L = target.num_terms();
  const Eigen::Index b = config.batch;
  const double noise_sd = std::sqrt(config.step);

  CounterRng rng(stream_seed(config.seed, Stream::kChain));
  std::vector<Eigen::Index> perm(static_cast<std::size_t>(L));
  std::iota(perm.begin(), perm.end(), Eigen::Index{0});
  std::vector<Eigen::Index> minibatch(static_cast<std::size_t>(b));

  SampleBatch chain(config.steps, d);
  Eigen::VectorXd x = config.init;
  Eigen::VectorXd noise(d);
  for (Eigen::Index t = 0; t < config.steps; ++t) {
    for (Eigen::Index k = 0; k < b; ++k) {
      const auto uk = static_cast<std::uint64_t>(k);
      const auto pick = static_cast<std::size_t>(uk + rng.below(static_cast<std::uint64_t>(L) - uk));
      std::swap(perm[static_cast<std::size_t>(k)], perm[pick]);
    }
    std::copy(perm.begin(), perm.begin() + b, minibatch.begin());
    std::sort(minibatch.begin(), minibatch.end());
    for (Eigen::Index j = 0; j < d; ++j) noise(j) = rng.normal();

    Eigen::VectorXd drift;
    try {
      drift = target.scaled_subset_score(minibatch, x);
    } catch (const NonFiniteScore& e) {
      throw DivergenceError(fmt::format("SGLD diverged at step {} (epsilon = {}): {}", t, config.step, e.what()),
                            static_cast<std::size_t>(t));
    }
    x += (0.5 * config.step) * drift + noise_sd * noise;
    if (!x.allFinite()) {
      throw DivergenceError(fmt::format("SGLD diverged at step {} (epsilon = {}): non-finite iterate", t, config.step),
                            static_cast<std::size_t>(t));
    }
    chain.row(t) = x.transpose();
  }
  return chain;
}

SampleBatch iid_gaussian(Eigen::Index n, const Eigen::VectorXd& mu, double sigma, std::uint64_t seed) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) throw std::invalid_argument("iid_gaussian: sigma must be > 0");
  if (n < 1 || mu.size() < 1) throw std::invalid_argument("iid_gaussian: need n >= 1 and d >= 1");
  CounterRng rng(seed);
  SampleBatch out(n, mu.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < mu.size(); ++j) out(i, j) = mu(j) + sigma * rng.normal();
  }
  return out;
}

}  // namespace steinlab
