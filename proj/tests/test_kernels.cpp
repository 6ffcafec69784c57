#include <cmath>

#include <Eigen/Eigenvalues>
#include <doctest.h>

#include "oracles.hpp"
#include "steinlab/config.hpp"
#include "steinlab/kernels.hpp"

using namespace steinlab;

namespace {

Eigen::VectorXd vec(std::initializer_list<double> v) {
  Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (double x : v) out(i++) = x;
  return out;
}

}  // namespace

TEST_CASE("kernel values at reference points") {
  const auto imq = KernelSpec::imq(-0.5);
  CHECK(kernel::eval(imq, vec({0.3, -1.2, 4.0}), vec({0.3, -1.2, 4.0})) == 1.0);
  // 1/sqrt(2) to 20 digits
  CHECK(kernel::eval(imq, vec({0.0}), vec({1.0})) == doctest::Approx(0.70710678118654752440).epsilon(1e-15));
  CHECK(kernel::eval(KernelSpec::rbf(2.0), vec({0.0}), vec({0.0})) == 1.0);

  const auto logk = KernelSpec::log_inverse(-0.5, 2.0);
  CHECK(kernel::eval(logk, vec({1.0, 2.0}), vec({1.0, 2.0})) == doctest::Approx(std::pow(2.0, -0.5)));
  // (1 + log 2)^(-1/2) at unit distance
  CHECK(kernel::eval(KernelSpec::log_inverse(), vec({0.0}), vec({1.0})) ==
        doctest::Approx(1.0 / std::sqrt(1.0 + std::log(2.0))));
}

TEST_CASE("kernel gradients at reference points") {
  const auto imq = KernelSpec::imq(-0.5);
  CHECK(kernel::grad_x(imq, vec({0.0}), vec({1.0}))(0) ==
        doctest::Approx(0.35355339059327376220).epsilon(1e-14));
  for (auto family : oracle::all_families()) {
    steinlab::CounterRng rng(11);
    const auto spec = oracle::random_spec(rng, family);
    const auto x = vec({0.4, -2.0, 1.5});
    CHECK(kernel::grad_x(spec, x, x).isZero(0.0));
    CHECK(kernel::grad_y(spec, x, x).isZero(0.0));
  }
}

TEST_CASE("cross derivative at coincident points") {
  const auto x = vec({0.1, 0.2, -0.3, 5.0});
  CHECK(kernel::cross_deriv_diag(KernelSpec::imq(-0.5), x, x).isApprox(Eigen::VectorXd::Ones(4)));
  // -2 beta / h for general IMQ
  CHECK(kernel::cross_deriv_diag(KernelSpec::imq(-0.25, 2.0), x, x).isApprox(Eigen::VectorXd::Constant(4, 0.25)));
  CHECK(kernel::cross_deriv_diag(KernelSpec::rbf(0.7), x, x).isApprox(Eigen::VectorXd::Constant(4, 2.0 / 0.7)));

  // nested finite differences agree at the coincident point as well
  for (auto family : oracle::all_families()) {
    steinlab::CounterRng rng(5);
    const auto spec = oracle::random_spec(rng, family);
    CHECK(oracle::max_rel_err(kernel::cross_deriv_diag(spec, x, x), oracle::fd_kernel_cross(spec, x, x)) < 1e-4);
  }
}

TEST_CASE("kernel derivatives match finite differences on random draws") {
  steinlab::CounterRng rng(2024);
  for (auto family : oracle::all_families()) {
    double worst_grad = 0.0, worst_cross = 0.0;
    for (int draw = 0; draw < 200; ++draw) {
      const auto spec = oracle::random_spec(rng, family);
      const auto d = static_cast<Eigen::Index>(1 + rng.below(5));
      const Eigen::VectorXd x = oracle::normal_vector(rng, d);
      const Eigen::VectorXd y = oracle::normal_vector(rng, d);
      worst_grad = std::max(worst_grad, oracle::max_rel_err(kernel::grad_x(spec, x, y), oracle::fd_kernel_grad_x(spec, x, y)));
      worst_cross =
          std::max(worst_cross, oracle::max_rel_err(kernel::cross_deriv_diag(spec, x, y), oracle::fd_kernel_cross(spec, x, y)));
    }
    INFO("family " << to_string(family));
    CHECK(worst_grad <= 1e-4);
    CHECK(worst_cross <= 1e-4);
  }
}

TEST_CASE("radial symmetries") {
  steinlab::CounterRng rng(99);
  for (auto family : oracle::all_families()) {
    for (int draw = 0; draw < 100; ++draw) {
      const auto spec = oracle::random_spec(rng, family);
      const Eigen::VectorXd x = oracle::normal_vector(rng, 3, 2.0);
      const Eigen::VectorXd y = oracle::normal_vector(rng, 3, 2.0);
      CHECK(kernel::eval(spec, x, y) == kernel::eval(spec, y, x));
      CHECK(kernel::grad_y(spec, x, y).isApprox(-kernel::grad_x(spec, x, y), 1e-14));
      CHECK(kernel::cross_deriv_diag(spec, x, y) == kernel::cross_deriv_diag(spec, y, x));
    }
  }
}

TEST_CASE("kernel functions are pure") {
  steinlab::CounterRng rng(3);
  for (auto family : oracle::all_families()) {
    const auto spec = oracle::random_spec(rng, family);
    const Eigen::VectorXd x = oracle::normal_vector(rng, 4), y = oracle::normal_vector(rng, 4);
    const double k = kernel::eval(spec, x, y);
    const Eigen::VectorXd g = kernel::grad_x(spec, x, y);
    const Eigen::VectorXd c = kernel::cross_deriv_diag(spec, x, y);
    for (int rep = 0; rep < 5; ++rep) {
      CHECK(kernel::eval(spec, x, y) == k);
      CHECK(kernel::grad_x(spec, x, y) == g);
      CHECK(kernel::cross_deriv_diag(spec, x, y) == c);
    }
  }
}

TEST_CASE("Gram matrices are positive semidefinite") {
  steinlab::CounterRng rng(77);
  for (int set = 0; set < 20; ++set) {
    const auto family = oracle::all_families()[static_cast<std::size_t>(set % 3)];
    const auto spec = oracle::random_spec(rng, family);
    const auto n = static_cast<Eigen::Index>(2 + rng.below(29));
    const auto d = static_cast<Eigen::Index>(1 + rng.below(5));
    const Eigen::MatrixXd pts = oracle::normal_matrix(rng, n, d, 1.5);
    const Eigen::MatrixXd k = kernel::gram(spec, pts);
    const double floor = -1e-8 * k.trace();
    const double min_eig = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(k, Eigen::EigenvaluesOnly).eigenvalues()(0);
    CHECK(min_eig >= floor);
  }
}

TEST_CASE("kernel parameter validation") {
  CHECK_THROWS_AS(KernelSpec::imq(0.0), std::invalid_argument);
  CHECK_THROWS_AS(KernelSpec::imq(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(KernelSpec::imq(-0.5, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(KernelSpec::log_inverse(0.5), std::invalid_argument);
  CHECK_THROWS_AS(KernelSpec::log_inverse(-0.5, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(KernelSpec::rbf(-1.0), std::invalid_argument);
  CHECK_NOTHROW(KernelSpec::log_inverse(-3.0, 0.1));
  CHECK_THROWS_AS(kernel::eval(KernelSpec::imq(), vec({1.0, 2.0}), vec({1.0})), DimensionError);
  CHECK_THROWS_AS(kernel::grad_x(KernelSpec::imq(), vec({1.0}), vec({1.0, 2.0})), DimensionError);
  CHECK_THROWS_AS(kernel::cross_deriv_diag(KernelSpec::rbf(), vec({1.0}), vec({1.0, 2.0})), DimensionError);
}

TEST_CASE("median heuristic bandwidth") {
  Eigen::MatrixXd pts(3, 1);
  pts << 0.0, 1.0, 2.0;
  const auto bw = median_heuristic_bandwidth(pts);
  CHECK_FALSE(bw.degenerate);
  CHECK(bw.value == doctest::Approx(1.0 / std::log(3.0)).epsilon(1e-15));
  CHECK(bw.value == doctest::Approx(0.9102392266));

  const auto scaled = median_heuristic_bandwidth(3.0 * pts);
  CHECK(scaled.value == doctest::Approx(9.0 * bw.value).epsilon(1e-14));

  Eigen::MatrixXd twin(2, 2);
  twin << 1.0, 2.0, 1.0, 2.0;
  const auto degenerate = median_heuristic_bandwidth(twin);
  CHECK(degenerate.degenerate);
  CHECK(degenerate.value == kBandwidthFloor);

  // four points on a line: distances {1,1,1,2,2,3}, median (1+2)/2
  Eigen::MatrixXd four(4, 1);
  four << 0.0, 1.0, 2.0, 3.0;
  CHECK(median_heuristic_bandwidth(four).value == doctest::Approx(2.25 / std::log(4.0)));

  CHECK_THROWS_AS(median_heuristic_bandwidth(Eigen::MatrixXd::Zero(1, 2)), std::invalid_argument);
}

TEST_CASE("kernel spec config block") {
  Config config;
  const auto spec = KernelSpec::log_inverse(-0.75, 1.5, 2.0);
  spec.to_config(config);
  CHECK(KernelSpec::from_config(config) == spec);

  const auto parsed = Config::parse_string("[kernel]\nfamily = rbf\nbandwidth = 0.5\n");
  CHECK(KernelSpec::from_config(parsed) == KernelSpec::rbf(0.5));
  CHECK(KernelSpec::from_config(Config{}) == KernelSpec::imq());
  CHECK_THROWS(KernelSpec::from_config(Config::parse_string("[kernel]\nfamily = matern\n")));
  CHECK_THROWS(KernelSpec::from_config(Config::parse_string("[kernel]\nbeta = 0.5\n")));
}
