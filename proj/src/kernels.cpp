#include "steinlab/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "steinlab/config.hpp"

namespace steinlab {

std::string to_string(KernelFamily family) {
  switch (family) {
    case KernelFamily::kImq:
      return "imq";
    case KernelFamily::kLogInverse:
      return "log_inverse";
    case KernelFamily::kRbf:
      return "rbf";
  }
  return "unknown";
}

KernelFamily kernel_family_from_string(const std::string& name) {
  if (name == "imq") return KernelFamily::kImq;
  if (name == "log_inverse") return KernelFamily::kLogInverse;
  if (name == "rbf") return KernelFamily::kRbf;
  throw std::invalid_argument("unknown kernel family '" + name + "' (expected imq, log_inverse or rbf)");
}

KernelSpec KernelSpec::imq(double beta, double bandwidth) {
  KernelSpec spec{KernelFamily::kImq, beta, 1.0, bandwidth};
  spec.validate();
  return spec;
}

KernelSpec KernelSpec::log_inverse(double beta, double alpha, double bandwidth) {
  KernelSpec spec{KernelFamily::kLogInverse, beta, alpha, bandwidth};
  spec.validate();
  return spec;
}

KernelSpec KernelSpec::rbf(double bandwidth) {
  KernelSpec spec{KernelFamily::kRbf, 0.0, 1.0, bandwidth};
  spec.validate();
  return spec;
}

void KernelSpec::validate() const {
  if (!(bandwidth > 0.0) || !std::isfinite(bandwidth)) {
    throw std::invalid_argument("kernel bandwidth must be finite and > 0");
  }
  switch (family) {
    case KernelFamily::kImq:
      if (!(beta > -1.0 && beta < 0.0)) throw std::invalid_argument("IMQ kernel requires beta in (-1, 0)");
      break;
    case KernelFamily::kLogInverse:
      if (!(beta < 0.0) || !std::isfinite(beta)) throw std::invalid_argument("log-inverse kernel requires beta < 0");
      if (!(alpha > 0.0) || !std::isfinite(alpha)) throw std::invalid_argument("log-inverse kernel requires alpha > 0");
      break;
    case KernelFamily::kRbf:
      break;
  }
}

KernelSpec KernelSpec::with_bandwidth(double h) const {
  KernelSpec copy = *this;
  copy.bandwidth = h;
  copy.validate();
  return copy;
}

KernelSpec KernelSpec::from_config(const Config& config, const std::string& section) {
  const auto key = [&](const char* name) { return section + "." + name; };
  KernelSpec spec;
  spec.family = kernel_family_from_string(config.get_string(key("family"), "imq"));
  spec.beta = config.get_double(key("beta"), spec.family == KernelFamily::kRbf ? 0.0 : -0.5);
  spec.alpha = config.get_double(key("alpha"), 1.0);
  spec.bandwidth = config.get_double(key("bandwidth"), 1.0);
  spec.validate();
  return spec;
}

void KernelSpec::to_config(Config& config, const std::string& section) const {
  config.set(section + ".family", to_string(family));
  config.set(section + ".beta", beta);
  config.set(section + ".alpha", alpha);
  config.set(section + ".bandwidth", bandwidth);
}

BandwidthEstimate median_heuristic_bandwidth(const Eigen::Ref<const Eigen::MatrixXd>& points) {
  const auto n = points.rows();
  if (n < 2) throw std::invalid_argument("median heuristic needs at least two points");

  std::vector<double> dist;
  dist.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) dist.push_back((points.row(i) - points.row(j)).norm());
  }
  const auto mid = dist.begin() + static_cast<std::ptrdiff_t>(dist.size() / 2);
  std::nth_element(dist.begin(), mid, dist.end());
  double median = *mid;
  if (dist.size() % 2 == 0) median = 0.5 * (median + *std::max_element(dist.begin(), mid));

  if (!(median > 0.0)) return {kBandwidthFloor, true};
  return {median * median / std::log(static_cast<double>(n)), false};
}

}  // namespace steinlab
