#include "steinlab/discrepancy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "steinlab/errors.hpp"
#include "steinlab/parallel.hpp"
#include "steinlab/rng.hpp"

namespace steinlab {

namespace {

constexpr double kNegativeTolerance = 1e-8;

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct SteinSums {
  Eigen::VectorXd w_sq;
  Eigen::VectorXd scale;
};

SteinSums stein_sums(const Eigen::Ref<const SampleBatch>& batch, const Eigen::Ref<const Eigen::MatrixXd>& scores,
                     const KernelSpec& spec) {
  validate_batch(batch);
  if (scores.rows() != batch.rows() || scores.cols() != batch.cols()) {
    throw DimensionError("score matrix is " + std::to_string(scores.rows()) + "x" + std::to_string(scores.cols()) +
                         " but batch is " + std::to_string(batch.rows()) + "x" + std::to_string(batch.cols()));
  }
  spec.validate();

  const Eigen::Index n = batch.rows();
  const Eigen::Index d = batch.cols();
  const RowMatrix x = batch;
  const RowMatrix b = scores;
  const double h = spec.bandwidth;
  const std::ptrdiff_t blocks = block_count(n);

  std::vector<SteinSums> partial(static_cast<std::size_t>(blocks));
  parallel_for(blocks, [&](std::ptrdiff_t block) {
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(d);
    Eigen::VectorXd scale = Eigen::VectorXd::Zero(d);
    const Eigen::Index first = block * kBlockRows;
    const Eigen::Index last = std::min<Eigen::Index>(first + kBlockRows, n);
    for (Eigen::Index i = first; i < last; ++i) {
      const double* xi = x.row(i).data();
      const double* bi = b.row(i).data();
      for (Eigen::Index i2 = i; i2 < n; ++i2) {
        const double* xk = x.row(i2).data();
        const double* bk = b.row(i2).data();
        double sq = 0.0;
        for (Eigen::Index j = 0; j < d; ++j) {
          const double u = xi[j] - xk[j];
          sq += u * u;
        }
        const auto p = radial_profile(spec, sq / h);
        const double gx_coef = 2.0 * p.d1 / h;  // ∂k/∂x = gx_coef * u, ∂k/∂y = -gx_coef * u
        const double cross_u2 = -4.0 * p.d2 / (h * h);
        const double cross_0 = -gx_coef;
        const double weight = i2 == i ? 1.0 : 2.0;
        for (Eigen::Index j = 0; j < d; ++j) {
          const double u = xi[j] - xk[j];
          const double gx = gx_coef * u;
          const double term = bi[j] * bk[j] * p.value - bi[j] * gx + bk[j] * gx + cross_u2 * u * u + cross_0;
          acc[j] += weight * term;
          scale[j] = std::max(scale[j], std::abs(term));
        }
      }
    }
    partial[static_cast<std::size_t>(block)] = {std::move(acc), std::move(scale)};
  });

  SteinSums total{Eigen::VectorXd::Zero(d), Eigen::VectorXd::Zero(d)};
  for (const auto& part : partial) {
    total.w_sq += part.w_sq;
    total.scale = total.scale.cwiseMax(part.scale);
  }
  total.w_sq /= static_cast<double>(n) * static_cast<double>(n);

  for (Eigen::Index j = 0; j < d; ++j) {
    if (total.w_sq[j] < -kNegativeTolerance * total.scale[j] || !std::isfinite(total.w_sq[j])) {
      throw NumericalConsistencyError("w_sq[" + std::to_string(j) + "] = " + std::to_string(total.w_sq[j]) +
                                      " is below -1e-8 * scale (scale = " + std::to_string(total.scale[j]) + ")");
    }
  }
  return total;
}

DiscrepancyResult assemble(const Eigen::VectorXd& w_sq, Eigen::Index n, Eigen::Index m, Eigen::Index num_terms,
                           std::optional<std::uint64_t> seed) {
  DiscrepancyResult result;
  result.w_sq = w_sq.cwiseMax(0.0);
  result.value = std::sqrt(result.w_sq.sum());
  result.n = n;
  result.m = m;
  result.num_terms = num_terms;
  result.term_evals = static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(m);
  result.seed = seed;
  return result;
}

void check_target(const Eigen::Ref<const SampleBatch>& batch, const DecomposableTarget& target) {
  validate_batch(batch);
  if (batch.cols() != target.dim()) {
    throw DimensionError("batch has " + std::to_string(batch.cols()) + " columns, target dimension is " +
                         std::to_string(target.dim()));
  }
}

template <typename RowScore>
Eigen::MatrixXd score_rows(const Eigen::Ref<const SampleBatch>& batch, RowScore&& row_score) {
  const Eigen::Index n = batch.rows();
  Eigen::MatrixXd out(n, batch.cols());
  parallel_for(block_count(n), [&](std::ptrdiff_t block) {
    const Eigen::Index last = std::min<Eigen::Index>((block + 1) * kBlockRows, n);
    for (Eigen::Index i = block * kBlockRows; i < last; ++i) {
      try {
        out.row(i) = row_score(i, batch.row(i).transpose()).transpose();
      } catch (const NonFiniteScore& e) {
        throw NonFiniteScore("sample row " + std::to_string(i) + ": " + e.what(), static_cast<std::size_t>(i));
      }
    }
  });
  return out;
}

}  // namespace

void validate_batch(const Eigen::Ref<const SampleBatch>& batch) {
  if (batch.rows() < 1 || batch.cols() < 1) throw std::invalid_argument("sample batch is empty");
  if (!batch.allFinite()) throw std::invalid_argument("sample batch contains non-finite entries");
}

SubsetAssignment draw_subsets(Eigen::Index n, Eigen::Index num_terms, Eigen::Index m, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("draw_subsets: n must be >= 1");
  if (m < 1) throw std::invalid_argument("draw_subsets: m must be >= 1");
  if (m > num_terms) {
    throw std::invalid_argument("draw_subsets: m = " + std::to_string(m) + " exceeds L = " + std::to_string(num_terms));
  }

  SubsetAssignment out;
  out.n = n;
  out.m = m;
  out.num_terms = num_terms;
  out.seed = seed;
  out.indices.resize(static_cast<std::size_t>(n * m));

  CounterRng rng(stream_seed(seed, Stream::kSubsets));
  std::vector<Eigen::Index> perm(static_cast<std::size_t>(num_terms));
  std::iota(perm.begin(), perm.end(), Eigen::Index{0});
  const auto L = static_cast<std::uint64_t>(num_terms);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index k = 0; k < m; ++k) {
      const auto uk = static_cast<std::uint64_t>(k);
      const auto pick = static_cast<std::size_t>(uk + rng.below(L - uk));
      std::swap(perm[static_cast<std::size_t>(k)], perm[pick]);
    }
    auto dst = out.indices.begin() + i * m;
    std::copy(perm.begin(), perm.begin() + m, dst);
    std::sort(dst, dst + m);
  }
  return out;
}

Eigen::MatrixXd scaled_scores(const Eigen::Ref<const SampleBatch>& batch, const DecomposableTarget& target) {
  check_target(batch, target);
  return score_rows(batch, [&](Eigen::Index, const auto& x) { return target.grad_log_full(x); });
}

Eigen::MatrixXd scaled_scores(const Eigen::Ref<const SampleBatch>& batch, const DecomposableTarget& target,
                              const SubsetAssignment& assignment) {
  check_target(batch, target);
  if (assignment.num_terms != target.num_terms()) {
    throw DimensionError("assignment drawn for L = " + std::to_string(assignment.num_terms) + ", target has L = " +
                         std::to_string(target.num_terms()));
  }
  if (assignment.n != batch.rows()) {
    throw DimensionError("assignment has " + std::to_string(assignment.n) + " subsets for " +
                         std::to_string(batch.rows()) + " sample rows");
  }
  return score_rows(batch, [&](Eigen::Index i, const auto& x) {
    return target.scaled_subset_score(assignment.subset(i), x);
  });
}

Eigen::VectorXd coord_stein_sums(const Eigen::Ref<const SampleBatch>& batch,
                                 const Eigen::Ref<const Eigen::MatrixXd>& scores, const KernelSpec& spec) {
  return stein_sums(batch, scores, spec).w_sq;
}

DiscrepancyResult sksd(const Eigen::Ref<const SampleBatch>& batch, const DecomposableTarget& target,
                       const KernelSpec& spec, Eigen::Index m, std::uint64_t seed) {
  check_target(batch, target);
  const auto assignment = draw_subsets(batch.rows(), target.num_terms(), m, seed);
  const Eigen::MatrixXd scores =
      m == target.num_terms() ? scaled_scores(batch, target) : scaled_scores(batch, target, assignment);
  return assemble(stein_sums(batch, scores, spec).w_sq, batch.rows(), m, target.num_terms(), seed);
}

DiscrepancyResult ksd(const Eigen::Ref<const SampleBatch>& batch, const DecomposableTarget& target,
                      const KernelSpec& spec) {
  const Eigen::MatrixXd scores = scaled_scores(batch, target);
  return assemble(stein_sums(batch, scores, spec).w_sq, batch.rows(), target.num_terms(), target.num_terms(),
                  std::nullopt);
}

Eigen::MatrixXd stein_gram(Eigen::Index j, const Eigen::Ref<const SampleBatch>& batch,
                           const Eigen::Ref<const Eigen::MatrixXd>& scores, const KernelSpec& spec) {
  const Eigen::Index n = batch.rows();
  Eigen::MatrixXd gram(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::VectorXd xi = batch.row(i).transpose();
    for (Eigen::Index k = 0; k < n; ++k) {
      const Eigen::VectorXd xk = batch.row(k).transpose();
      gram(i, k) = scores(i, j) * scores(k, j) * kernel::eval(spec, xi, xk) +
                   scores(i, j) * kernel::grad_y(spec, xi, xk)(j) + scores(k, j) * kernel::grad_x(spec, xi, xk)(j) +
                   kernel::cross_deriv_diag(spec, xi, xk)(j);
    }
  }
  return gram;
}

}  // namespace steinlab
