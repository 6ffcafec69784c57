#pragma once

#include <cmath>
#include <string>

#include <Eigen/Core>

#include "steinlab/errors.hpp"

namespace steinlab {

class Config;

enum class KernelFamily { kImq, kLogInverse, kRbf };

std::string to_string(KernelFamily family);
KernelFamily kernel_family_from_string(const std::string& name);

/// Radial reproducing kernel k(x, y) = phi(|x - y|^2 / bandwidth).
///
///   IMQ          phi(s) = (1 + s)^beta,               beta in (-1, 0)
///   LOG_INVERSE  phi(s) = (alpha + log(1 + s))^beta,  beta < 0, alpha > 0
///   RBF          phi(s) = exp(-s)
///
/// All three are C^(1,1) and positive definite. `alpha` is ignored except
/// for LOG_INVERSE and `beta` is ignored for RBF. Use the named
/// constructors; they validate the parameter ranges.
struct KernelSpec {
  KernelFamily family = KernelFamily::kImq;
  double beta = -0.5;
  double alpha = 1.0;
  double bandwidth = 1.0;

  static KernelSpec imq(double beta = -0.5, double bandwidth = 1.0);
  static KernelSpec log_inverse(double beta = -0.5, double alpha = 1.0, double bandwidth = 1.0);
  static KernelSpec rbf(double bandwidth = 1.0);

  /// Throws std::invalid_argument when a parameter is outside its family's range.
  void validate() const;

  KernelSpec with_bandwidth(double h) const;

  /// Reads family/beta/alpha/bandwidth from `section` of a config.
  static KernelSpec from_config(const Config& config, const std::string& section = "kernel");
  void to_config(Config& config, const std::string& section = "kernel") const;

  bool operator==(const KernelSpec&) const = default;
};

/// phi and its first two derivatives with respect to the scaled squared distance s.
template <typename Scalar>
struct RadialProfile {
  Scalar value;
  Scalar d1;
  Scalar d2;
};

template <typename Scalar>
RadialProfile<Scalar> radial_profile(const KernelSpec& spec, Scalar s) {
  using std::exp;
  using std::log;
  using std::pow;
  const auto beta = static_cast<Scalar>(spec.beta);
  switch (spec.family) {
    case KernelFamily::kImq: {
      using std::sqrt;
      const Scalar base = Scalar(1) + s;
      const Scalar value = spec.beta == -0.5 ? Scalar(1) / sqrt(base) : pow(base, beta);
      return {value, beta * value / base, beta * (beta - Scalar(1)) * value / (base * base)};
    }
    case KernelFamily::kLogInverse: {
      const Scalar onep = Scalar(1) + s;
      const Scalar a = static_cast<Scalar>(spec.alpha) + log(onep);
      const Scalar value = pow(a, beta);
      const Scalar d1 = beta * value / (a * onep);
      // d/ds [beta a^(beta-1) / (1+s)] = beta (beta-1) a^(beta-2) / (1+s)^2 - beta a^(beta-1) / (1+s)^2
      const Scalar d2 = beta * value / (a * onep * onep) * ((beta - Scalar(1)) / a - Scalar(1));
      return {value, d1, d2};
    }
    case KernelFamily::kRbf: {
      const Scalar value = exp(-s);
      return {value, -value, value};
    }
  }
  return {Scalar(0), Scalar(0), Scalar(0)};
}

namespace kernel {

namespace detail {

template <typename DX, typename DY>
void check_dims(const Eigen::MatrixBase<DX>& x, const Eigen::MatrixBase<DY>& y) {
  if (x.size() != y.size()) {
    throw DimensionError("kernel arguments have dimensions " + std::to_string(x.size()) + " and " +
                         std::to_string(y.size()));
  }
}

}  // namespace detail

template <typename Derived>
using Vector = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1>;

/// k(x, y).
template <typename DX, typename DY>
typename DX::Scalar eval(const KernelSpec& spec, const Eigen::MatrixBase<DX>& x, const Eigen::MatrixBase<DY>& y) {
  detail::check_dims(x, y);
  using Scalar = typename DX::Scalar;
  const Scalar s = (x - y).squaredNorm() / static_cast<Scalar>(spec.bandwidth);
  return radial_profile(spec, s).value;
}

/// Gradient of k(x, y) with respect to x: 2 phi'(s) (x - y) / h.
template <typename DX, typename DY>
Vector<DX> grad_x(const KernelSpec& spec, const Eigen::MatrixBase<DX>& x, const Eigen::MatrixBase<DY>& y) {
  detail::check_dims(x, y);
  using Scalar = typename DX::Scalar;
  const auto h = static_cast<Scalar>(spec.bandwidth);
  const Vector<DX> u = x - y;
  const auto p = radial_profile(spec, u.squaredNorm() / h);
  return (Scalar(2) * p.d1 / h) * u;
}

/// Gradient of k(x, y) with respect to y.
template <typename DX, typename DY>
Vector<DX> grad_y(const KernelSpec& spec, const Eigen::MatrixBase<DX>& x, const Eigen::MatrixBase<DY>& y) {
  return grad_x(spec, y, x);
}

/// Entry j is d^2 k(x, y) / dx_j dy_j = -4 phi''(s) u_j^2 / h^2 - 2 phi'(s) / h, u = x - y.
template <typename DX, typename DY>
Vector<DX> cross_deriv_diag(const KernelSpec& spec, const Eigen::MatrixBase<DX>& x, const Eigen::MatrixBase<DY>& y) {
  detail::check_dims(x, y);
  using Scalar = typename DX::Scalar;
  const auto h = static_cast<Scalar>(spec.bandwidth);
  const Vector<DX> u = x - y;
  const auto p = radial_profile(spec, u.squaredNorm() / h);
  return (Scalar(-4) * p.d2 / (h * h)) * u.array().square().matrix() -
         Vector<DX>::Constant(u.size(), Scalar(2) * p.d1 / h);
}

/// Dense Gram matrix K(i, i') = k(row i, row i').
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic> gram(const KernelSpec& spec,
                                                                            const Eigen::MatrixBase<Derived>& points) {
  using Scalar = typename Derived::Scalar;
  const auto n = points.rows();
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> k(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      k(i, j) = k(j, i) = eval(spec, points.row(i).transpose(), points.row(j).transpose());
    }
  }
  return k;
}

}  // namespace kernel

struct BandwidthEstimate {
  double value;
  bool degenerate;  // median distance is zero (e.g. all points coincide); value is kBandwidthFloor
};

inline constexpr double kBandwidthFloor = 1e-6;

/// median^2 / log(n) over the n(n-1)/2 pairwise Euclidean distances of the rows.
/// Throws std::invalid_argument for fewer than two points.
BandwidthEstimate median_heuristic_bandwidth(const Eigen::Ref<const Eigen::MatrixXd>& points);

}  // namespace steinlab
