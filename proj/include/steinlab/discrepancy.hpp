#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "steinlab/kernels.hpp"
#include "steinlab/models.hpp"

namespace steinlab {

/// n x d sample, row i is the point x_i. Row order is significant because
/// subset i is attached to row i. Entries must be finite and n >= 1.
using SampleBatch = Eigen::MatrixXd;

/// Throws std::invalid_argument for an empty batch or non-finite entries.
void validate_batch(const Eigen::Ref<const SampleBatch>& batch);

/// n independent uniform size-m subsets of the zero-based term indices [0, L),
/// each sorted ascending, regenerated exactly from (n, L, m, seed).
struct SubsetAssignment {
  std::vector<Eigen::Index> indices;  // row-major n x m
  Eigen::Index n = 0;
  Eigen::Index m = 0;
  Eigen::Index num_terms = 0;
  std::uint64_t seed = 0;

  std::span<const Eigen::Index> subset(Eigen::Index i) const {
    return {indices.data() + i * m, static_cast<std::size_t>(m)};
  }
  bool operator==(const SubsetAssignment&) const = default;
};

/// Draws subsets for i = 0..n-1 in order from one CounterRng stream by
/// partial Fisher-Yates over a persistent permutation of [0, L).
SubsetAssignment draw_subsets(Eigen::Index n, Eigen::Index num_terms, Eigen::Index m, std::uint64_t seed);

/// Row i = grad_log_full(x_i).
Eigen::MatrixXd scaled_scores(const Eigen::Ref<const SampleBatch>& batch, const DecomposableTarget& target);

/// Row i = (L/m) grad_log_subset(σ_i, x_i).
Eigen::MatrixXd scaled_scores(const Eigen::Ref<const SampleBatch>& batch, const DecomposableTarget& target,
                              const SubsetAssignment& assignment);

/// Per-coordinate squared RKHS norms of the Stein-operator mean embedding:
///
///   w_j^2 = 1/n^2 Σ_{i,i'} [ B_ij B_i'j k + B_ij ∂k/∂y_j + B_i'j ∂k/∂x_j + ∂²k/∂x_j∂y_j ](x_i, x_i')
///
/// Each unordered pair is visited once. Rows are split into kBlockRows blocks
/// whose partial sums are combined in block order, so the result is
/// bit-identical for every worker count. Throws NumericalConsistencyError if
/// some w_j^2 < -1e-8 * (largest |pair term| in coordinate j).
Eigen::VectorXd coord_stein_sums(const Eigen::Ref<const SampleBatch>& batch, const Eigen::Ref<const Eigen::MatrixXd>& scores,
                                 const KernelSpec& spec);

struct DiscrepancyResult {
  double value = 0.0;     // ||w||_2 over clamped w_j^2
  Eigen::VectorXd w_sq;   // clamped to >= 0
  Eigen::Index n = 0;
  Eigen::Index m = 0;     // equals L for the exact discrepancy
  Eigen::Index num_terms = 0;
  std::uint64_t term_evals = 0;
  std::optional<std::uint64_t> seed;  // absent for the exact discrepancy
};

/// Stochastic KSD with independent size-m subsets per point. m == L is
/// routed through the exact score path after the subset stream is consumed,
/// so its value matches ksd() bit-for-bit.
DiscrepancyResult sksd(const Eigen::Ref<const SampleBatch>& batch, const DecomposableTarget& target,
                       const KernelSpec& spec, Eigen::Index m, std::uint64_t seed);

/// Exact Langevin KSD (every term at every point).
DiscrepancyResult ksd(const Eigen::Ref<const SampleBatch>& batch, const DecomposableTarget& target,
                      const KernelSpec& spec);

/// Dense pairwise matrix M(i, i') of the w_j^2 summand, built from the
/// public kernel derivative functions. Test oracle: sum(M) / n^2 == w_j^2.
Eigen::MatrixXd stein_gram(Eigen::Index j, const Eigen::Ref<const SampleBatch>& batch,
                           const Eigen::Ref<const Eigen::MatrixXd>& scores, const KernelSpec& spec);

}  // namespace steinlab
