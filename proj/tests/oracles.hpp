#pragma once

// Test-only oracles: finite differences in long double, log-densities of the
// concrete models, and random instance generators. Nothing here is used by
// the library.

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include <Eigen/Core>

#include "steinlab/kernels.hpp"
#include "steinlab/models.hpp"
#include "steinlab/rng.hpp"

namespace oracle {

using LVector = Eigen::Matrix<long double, Eigen::Dynamic, 1>;

inline constexpr long double kStep = 1e-5L;

inline LVector widen(const Eigen::VectorXd& v) { return v.cast<long double>(); }

/// |a - b| / max(|b|, floor).
inline double rel_err(double a, double b, double floor = 1e-6) {
  return std::abs(a - b) / std::max(std::abs(b), floor);
}

inline double max_rel_err(const Eigen::VectorXd& a, const Eigen::VectorXd& b, double floor = 1e-6) {
  double worst = 0.0;
  for (Eigen::Index j = 0; j < a.size(); ++j) worst = std::max(worst, rel_err(a(j), b(j), floor));
  return worst;
}

/// Central difference of f at x along every coordinate.
inline Eigen::VectorXd fd_gradient(const std::function<long double(const LVector&)>& f, const LVector& x,
                                   long double h = kStep) {
  Eigen::VectorXd g(x.size());
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    LVector xp = x, xm = x;
    xp(j) += h;
    xm(j) -= h;
    g(j) = static_cast<double>((f(xp) - f(xm)) / (2 * h));
  }
  return g;
}

inline Eigen::VectorXd fd_kernel_grad_x(const steinlab::KernelSpec& spec, const Eigen::VectorXd& x,
                                        const Eigen::VectorXd& y) {
  const LVector yl = widen(y);
  return fd_gradient([&](const LVector& z) { return steinlab::kernel::eval(spec, z, yl); }, widen(x));
}

/// Nested central differences for d^2 k / dx_j dy_j.
inline Eigen::VectorXd fd_kernel_cross(const steinlab::KernelSpec& spec, const Eigen::VectorXd& x,
                                       const Eigen::VectorXd& y, long double h = kStep) {
  const LVector xl = widen(x), yl = widen(y);
  Eigen::VectorXd out(x.size());
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    auto k = [&](long double sx, long double sy) {
      LVector a = xl, b = yl;
      a(j) += sx;
      b(j) += sy;
      return steinlab::kernel::eval(spec, a, b);
    };
    out(j) = static_cast<double>((k(h, h) - k(h, -h) - k(-h, h) + k(-h, -h)) / (4 * h * h));
  }
  return out;
}

// ------------------------------------------------------------- model log-densities

inline long double log_normal(long double y, long double mean, long double var) {
  return -0.5L * (y - mean) * (y - mean) / var - 0.5L * std::log(2 * 3.14159265358979323846L * var);
}

inline long double gmm_log_density(const Eigen::VectorXd& data, const steinlab::GmmParams& p, const LVector& t) {
  long double lp = log_normal(t(0), 0, p.sigma1_sq) + log_normal(t(1), 0, p.sigma2_sq);
  for (Eigen::Index l = 0; l < data.size(); ++l) {
    const long double a = std::exp(log_normal(data(l), t(0), p.sigma_x_sq));
    const long double b = std::exp(log_normal(data(l), t(0) + t(1), p.sigma_x_sq));
    lp += std::log(0.5L * a + 0.5L * b);
  }
  return lp;
}

inline long double logreg_log_density(const Eigen::MatrixXd& x, const Eigen::VectorXd& y, const LVector& w) {
  long double lp = 0;
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    long double margin = 0;
    for (Eigen::Index j = 0; j < x.cols(); ++j) margin += static_cast<long double>(x(i, j)) * w(j);
    // y log s(m) + (1 - y) log(1 - s(m)) = y m - log(1 + e^m)
    lp += static_cast<long double>(y(i)) * margin - std::log1p(std::exp(margin));
  }
  return lp;
}

inline long double gaussian_log_density(const Eigen::VectorXd& mu, const Eigen::VectorXd& var, const LVector& x) {
  long double lp = 0;
  for (Eigen::Index j = 0; j < x.size(); ++j) lp += log_normal(x(j), mu(j), var(j));
  return lp;
}

// ------------------------------------------------------------- generators

inline Eigen::VectorXd normal_vector(steinlab::CounterRng& rng, Eigen::Index d, double sd = 1.0) {
  Eigen::VectorXd v(d);
  for (Eigen::Index j = 0; j < d; ++j) v(j) = sd * rng.normal();
  return v;
}

inline Eigen::MatrixXd normal_matrix(steinlab::CounterRng& rng, Eigen::Index n, Eigen::Index d, double sd = 1.0) {
  Eigen::MatrixXd m(n, d);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) m(i, j) = sd * rng.normal();
  }
  return m;
}

inline double uniform_in(steinlab::CounterRng& rng, double lo, double hi) { return lo + (hi - lo) * rng.uniform(); }

/// Random valid spec of the given family.
inline steinlab::KernelSpec random_spec(steinlab::CounterRng& rng, steinlab::KernelFamily family) {
  using steinlab::KernelSpec;
  switch (family) {
    case steinlab::KernelFamily::kImq:
      return KernelSpec::imq(uniform_in(rng, -0.9, -0.1), uniform_in(rng, 0.5, 3.0));
    case steinlab::KernelFamily::kLogInverse:
      return KernelSpec::log_inverse(uniform_in(rng, -2.0, -0.1), uniform_in(rng, 0.5, 3.0), uniform_in(rng, 0.5, 3.0));
    case steinlab::KernelFamily::kRbf:
      return KernelSpec::rbf(uniform_in(rng, 0.5, 3.0));
  }
  return KernelSpec::imq();
}

inline const std::vector<steinlab::KernelFamily>& all_families() {
  static const std::vector<steinlab::KernelFamily> families{
      steinlab::KernelFamily::kImq, steinlab::KernelFamily::kLogInverse, steinlab::KernelFamily::kRbf};
  return families;
}

/// Exhaustive list of the size-m subsets of [0, L), each ascending.
inline std::vector<std::vector<Eigen::Index>> all_subsets(Eigen::Index L, Eigen::Index m) {
  std::vector<std::vector<Eigen::Index>> out;
  std::vector<bool> pick(static_cast<std::size_t>(L), false);
  std::fill(pick.begin(), pick.begin() + m, true);
  do {
    std::vector<Eigen::Index> s;
    for (Eigen::Index l = 0; l < L; ++l) {
      if (pick[static_cast<std::size_t>(l)]) s.push_back(l);
    }
    out.push_back(s);
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return out;
}

}  // namespace oracle
