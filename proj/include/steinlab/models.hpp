#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <span>
#include <string>

#include <Eigen/Core>

namespace steinlab {

/// Log-density p(x) ∝ π₀(x) ∏_{l<L} π(y_l | x) known through its score pieces.
///
/// Term indices are zero-based. Every call that touches a likelihood term
/// bumps an atomic evaluation counter by one per term; the prior is free.
/// Any non-finite gradient raises NonFiniteScore naming the term index
/// (npos for the prior).
class DecomposableTarget {
 public:
  /// Writes ∇log π₀(x) into `out`.
  using PriorGradient = std::function<void(const Eigen::Ref<const Eigen::VectorXd>& x, Eigen::Ref<Eigen::VectorXd> out)>;
  /// Writes ∇log π(y_l | x) into `out`.
  using TermGradient =
      std::function<void(Eigen::Index l, const Eigen::Ref<const Eigen::VectorXd>& x, Eigen::Ref<Eigen::VectorXd> out)>;

  DecomposableTarget(Eigen::Index dim, Eigen::Index num_terms, PriorGradient prior, TermGradient term,
                     std::string name = "custom");

  DecomposableTarget(const DecomposableTarget& other);
  DecomposableTarget& operator=(const DecomposableTarget& other);

  Eigen::Index dim() const noexcept { return dim_; }
  Eigen::Index num_terms() const noexcept { return num_terms_; }
  const std::string& name() const noexcept { return name_; }

  Eigen::VectorXd grad_log_prior(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  Eigen::VectorXd grad_log_term(Eigen::Index l, const Eigen::Ref<const Eigen::VectorXd>& x) const;

  /// prior + Σ_l term_l, terms accumulated in ascending l then added to the prior.
  Eigen::VectorXd grad_log_full(const Eigen::Ref<const Eigen::VectorXd>& x) const;

  /// ∇log p_σ(x) = (|σ|/L) prior + Σ_{l∈σ} term_l. σ must be nonempty,
  /// in range and duplicate free; terms are summed in the order given.
  Eigen::VectorXd grad_log_subset(std::span<const Eigen::Index> sigma, const Eigen::Ref<const Eigen::VectorXd>& x) const;

  /// (L/|σ|) ∇log p_σ(x), evaluated as prior + (L/|σ|) Σ_{l∈σ} term_l.
  /// The prior share cancels exactly, so σ = [L] reproduces grad_log_full bit-for-bit.
  Eigen::VectorXd scaled_subset_score(std::span<const Eigen::Index> sigma,
                                      const Eigen::Ref<const Eigen::VectorXd>& x) const;

  std::uint64_t eval_count() const noexcept { return evals_.load(std::memory_order_relaxed); }
  void reset_eval_count() noexcept { evals_.store(0, std::memory_order_relaxed); }

 private:
  void check_point(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  void check_subset(std::span<const Eigen::Index> sigma) const;
  Eigen::VectorXd prior_at(const Eigen::Ref<const Eigen::VectorXd>& x) const;
  Eigen::VectorXd sum_terms(std::span<const Eigen::Index> sigma, const Eigen::Ref<const Eigen::VectorXd>& x) const;
  Eigen::VectorXd sum_all_terms(const Eigen::Ref<const Eigen::VectorXd>& x) const;

  Eigen::Index dim_;
  Eigen::Index num_terms_;
  PriorGradient prior_;
  TermGradient term_;
  std::string name_;
  mutable std::atomic<std::uint64_t> evals_{0};
};

/// N(mu, diag(variance)) as L equal factors p_l = π₀^{1/L}: the prior carries
/// the Gaussian and every likelihood term is constant (zero gradient). The
/// scaled subset score therefore equals the full score exactly for any σ.
DecomposableTarget make_gaussian(const Eigen::VectorXd& mu, const Eigen::VectorXd& variance, Eigen::Index num_terms);

/// Two-component mixture posterior over θ = (θ₁, θ₂):
///   θ₁ ~ N(0, σ₁²), θ₂ ~ N(0, σ₂²), y_l ~ ½N(θ₁, σ_x²) + ½N(θ₁ + θ₂, σ_x²).
struct GmmParams {
  double sigma1_sq = 10.0;
  double sigma2_sq = 1.0;
  double sigma_x_sq = 2.0;
};

DecomposableTarget make_gmm_posterior(const Eigen::VectorXd& data, const GmmParams& params = {});

/// Bayesian logistic regression with a flat prior (prior gradient ≡ 0).
/// Rows of `features` are covariates, `labels` are 0/1.
DecomposableTarget make_logreg(const Eigen::MatrixXd& features, const Eigen::VectorXd& labels);

/// L i.i.d. draws from ½N(θ₁, σ_x²) + ½N(θ₁ + θ₂, σ_x²).
Eigen::VectorXd gen_gmm_data(double theta1, double theta2, double sigma_x_sq, Eigen::Index num_obs,
                             std::uint64_t seed);

struct LogregData {
  Eigen::MatrixXd features;
  Eigen::VectorXd labels;
};

/// Standard-normal covariates, labels ~ Bernoulli(sigmoid(<w_true, x>)).
LogregData gen_logreg_data(Eigen::Index n, Eigen::Index d, const Eigen::VectorXd& w_true, std::uint64_t seed);

}  // namespace steinlab
