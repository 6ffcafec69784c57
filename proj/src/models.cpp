#include "steinlab/models.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "steinlab/errors.hpp"
#include "steinlab/rng.hpp"

namespace steinlab {

DecomposableTarget::DecomposableTarget(Eigen::Index dim, Eigen::Index num_terms, PriorGradient prior,
                                       TermGradient term, std::string name)
    : dim_(dim), num_terms_(num_terms), prior_(std::move(prior)), term_(std::move(term)), name_(std::move(name)) {
  if (dim_ < 1) throw std::invalid_argument("target dimension must be >= 1");
  if (num_terms_ < 1) throw std::invalid_argument("target needs at least one likelihood term");
  if (!prior_ || !term_) throw std::invalid_argument("target gradient callbacks must be set");
}

DecomposableTarget::DecomposableTarget(const DecomposableTarget& other)
    : dim_(other.dim_),
      num_terms_(other.num_terms_),
      prior_(other.prior_),
      term_(other.term_),
      name_(other.name_),
      evals_(other.eval_count()) {}

DecomposableTarget& DecomposableTarget::operator=(const DecomposableTarget& other) {
  if (this != &other) {
    dim_ = other.dim_;
    num_terms_ = other.num_terms_;
    prior_ = other.prior_;
    term_ = other.term_;
    name_ = other.name_;
    evals_.store(other.eval_count(), std::memory_order_relaxed);
  }
  return *this;
}

void DecomposableTarget::check_point(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  if (x.size() != dim_) {
    throw DimensionError("point has dimension " + std::to_string(x.size()) + ", target expects " +
                         std::to_string(dim_));
  }
}

void DecomposableTarget::check_subset(std::span<const Eigen::Index> sigma) const {
  if (sigma.empty()) throw std::invalid_argument("subset must be nonempty");
  for (auto l : sigma) {
    if (l < 0 || l >= num_terms_) {
      throw std::out_of_range("subset index " + std::to_string(l) + " outside [0, " + std::to_string(num_terms_) +
                              ")");
    }
  }
  if (!std::is_sorted(sigma.begin(), sigma.end())) {
    std::vector<Eigen::Index> sorted(sigma.begin(), sigma.end());
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw std::invalid_argument("subset contains duplicate indices");
    }
  } else if (std::adjacent_find(sigma.begin(), sigma.end()) != sigma.end()) {
    throw std::invalid_argument("subset contains duplicate indices");
  }
}

Eigen::VectorXd DecomposableTarget::prior_at(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  Eigen::VectorXd out(dim_);
  prior_(x, out);
  if (!out.allFinite()) throw NonFiniteScore("prior gradient is not finite", NonFiniteScore::npos);
  return out;
}

Eigen::VectorXd DecomposableTarget::sum_terms(std::span<const Eigen::Index> sigma,
                                              const Eigen::Ref<const Eigen::VectorXd>& x) const {
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(dim_);
  Eigen::VectorXd scratch(dim_);
  for (auto l : sigma) {
    term_(l, x, scratch);
    if (!scratch.allFinite()) {
      evals_.fetch_add(sigma.size(), std::memory_order_relaxed);
      throw NonFiniteScore("likelihood term " + std::to_string(l) + " produced a non-finite gradient",
                           static_cast<std::size_t>(l));
    }
    sum += scratch;
  }
  evals_.fetch_add(sigma.size(), std::memory_order_relaxed);
  return sum;
}

Eigen::VectorXd DecomposableTarget::sum_all_terms(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  std::vector<Eigen::Index> all(static_cast<std::size_t>(num_terms_));
  for (Eigen::Index l = 0; l < num_terms_; ++l) all[static_cast<std::size_t>(l)] = l;
  return sum_terms(all, x);
}

Eigen::VectorXd DecomposableTarget::grad_log_prior(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  check_point(x);
  return prior_at(x);
}

Eigen::VectorXd DecomposableTarget::grad_log_term(Eigen::Index l, const Eigen::Ref<const Eigen::VectorXd>& x) const {
  check_point(x);
  const Eigen::Index one[] = {l};
  check_subset(one);
  return sum_terms(one, x);
}

Eigen::VectorXd DecomposableTarget::grad_log_full(const Eigen::Ref<const Eigen::VectorXd>& x) const {
  check_point(x);
  return prior_at(x) + sum_all_terms(x);
}

Eigen::VectorXd DecomposableTarget::grad_log_subset(std::span<const Eigen::Index> sigma,
                                                    const Eigen::Ref<const Eigen::VectorXd>& x) const {
  check_point(x);
  check_subset(sigma);
  const double share = static_cast<double>(sigma.size()) / static_cast<double>(num_terms_);
  return share * prior_at(x) + sum_terms(sigma, x);
}

Eigen::VectorXd DecomposableTarget::scaled_subset_score(std::span<const Eigen::Index> sigma,
                                                        const Eigen::Ref<const Eigen::VectorXd>& x) const {
  check_point(x);
  check_subset(sigma);
  const double scale = static_cast<double>(num_terms_) / static_cast<double>(sigma.size());
  return prior_at(x) + scale * sum_terms(sigma, x);
}

DecomposableTarget make_gaussian(const Eigen::VectorXd& mu, const Eigen::VectorXd& variance, Eigen::Index num_terms) {
  if (mu.size() < 1 || mu.size() != variance.size()) {
    throw DimensionError("gaussian mean and variance must be nonempty and of equal length");
  }
  if (!(variance.array() > 0.0).all() || !variance.allFinite()) {
    throw std::invalid_argument("gaussian variances must be finite and > 0");
  }
  auto prior = [mu, precision = variance.cwiseInverse().eval()](const Eigen::Ref<const Eigen::VectorXd>& x,
                                                                Eigen::Ref<Eigen::VectorXd> out) {
    out = -(x - mu).cwiseProduct(precision);
  };
  auto term = [](Eigen::Index, const Eigen::Ref<const Eigen::VectorXd>&, Eigen::Ref<Eigen::VectorXd> out) {
    out.setZero();
  };
  return DecomposableTarget(mu.size(), num_terms, prior, term, "gaussian");
}

DecomposableTarget make_gmm_posterior(const Eigen::VectorXd& data, const GmmParams& params) {
  if (data.size() == 0) throw std::invalid_argument("gmm posterior needs at least one observation");
  if (!(params.sigma1_sq > 0 && params.sigma2_sq > 0 && params.sigma_x_sq > 0)) {
    throw std::invalid_argument("gmm variances must be > 0");
  }
  auto prior = [params](const Eigen::Ref<const Eigen::VectorXd>& theta, Eigen::Ref<Eigen::VectorXd> out) {
    out(0) = -theta(0) / params.sigma1_sq;
    out(1) = -theta(1) / params.sigma2_sq;
  };
  auto term = [data, params](Eigen::Index l, const Eigen::Ref<const Eigen::VectorXd>& theta,
                             Eigen::Ref<Eigen::VectorXd> out) {
    const double y = data(l);
    const double ra = y - theta(0);
    const double rb = y - theta(0) - theta(1);
    // Responsibility of the shifted component, via the log-odds of the equal-weight pair.
    const double log_odds = (ra * ra - rb * rb) / (2.0 * params.sigma_x_sq);
    const double wb = 1.0 / (1.0 + std::exp(-log_odds));
    const double wa = 1.0 - wb;
    out(0) = (wa * ra + wb * rb) / params.sigma_x_sq;
    out(1) = wb * rb / params.sigma_x_sq;
  };
  return DecomposableTarget(2, data.size(), prior, term, "gmm");
}

DecomposableTarget make_logreg(const Eigen::MatrixXd& features, const Eigen::VectorXd& labels) {
  if (features.rows() == 0 || features.cols() == 0) throw std::invalid_argument("logistic regression needs data");
  if (features.rows() != labels.size()) {
    throw DimensionError("logistic regression: " + std::to_string(features.rows()) + " feature rows but " +
                         std::to_string(labels.size()) + " labels");
  }
  for (Eigen::Index i = 0; i < labels.size(); ++i) {
    if (labels(i) != 0.0 && labels(i) != 1.0) {
      throw std::invalid_argument("logistic regression label at row " + std::to_string(i) + " is not 0 or 1");
    }
  }
  auto prior = [](const Eigen::Ref<const Eigen::VectorXd>&, Eigen::Ref<Eigen::VectorXd> out) { out.setZero(); };
  auto term = [features, labels](Eigen::Index l, const Eigen::Ref<const Eigen::VectorXd>& w,
                                 Eigen::Ref<Eigen::VectorXd> out) {
    const double margin = features.row(l).dot(w);
    const double prob = 1.0 / (1.0 + std::exp(-margin));
    out = (labels(l) - prob) * features.row(l).transpose();
  };
  return DecomposableTarget(features.cols(), features.rows(), prior, term, "logreg");
}

Eigen::VectorXd gen_gmm_data(double theta1, double theta2, double sigma_x_sq, Eigen::Index num_obs,
                             std::uint64_t seed) {
  if (num_obs < 1) throw std::invalid_argument("gmm data size must be >= 1");
  if (!(sigma_x_sq > 0.0)) throw std::invalid_argument("gmm observation variance must be > 0");
  CounterRng rng(seed);
  const double sd = std::sqrt(sigma_x_sq);
  Eigen::VectorXd y(num_obs);
  for (Eigen::Index l = 0; l < num_obs; ++l) {
    const double centre = rng.bernoulli(0.5) ? theta1 + theta2 : theta1;
    y(l) = centre + sd * rng.normal();
  }
  return y;
}

LogregData gen_logreg_data(Eigen::Index n, Eigen::Index d, const Eigen::VectorXd& w_true, std::uint64_t seed) {
  if (n < 1 || d < 1) throw std::invalid_argument("logistic data needs n >= 1 and d >= 1");
  if (w_true.size() != d) throw DimensionError("w_true must have length d");
  CounterRng rng(seed);
  LogregData data{Eigen::MatrixXd(n, d), Eigen::VectorXd(n)};
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) data.features(i, j) = rng.normal();
    const double prob = 1.0 / (1.0 + std::exp(-data.features.row(i).dot(w_true)));
    data.labels(i) = rng.bernoulli(prob) ? 1.0 : 0.0;
  }
  return data;
}

}  // namespace steinlab
