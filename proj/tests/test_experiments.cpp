#include <cmath>

#include <doctest.h>

#include "steinlab/errors.hpp"
#include "steinlab/experiments.hpp"

using namespace steinlab;

namespace {

TuneRow row(double eps, Eigen::Index m, int trial, double value, bool diverged = false) {
  return {eps, m, trial, diverged ? std::nan("") : value, 0, diverged};
}

DecomposableTarget small_gmm() { return make_gmm_posterior(gen_gmm_data(0.0, 1.0, 2.0, 20, 1)); }

}  // namespace

TEST_CASE("tune summary statistics and tie-breaking") {
  std::vector<TuneRow> rows{
      row(0.5, 1, 0, 2.0), row(0.5, 1, 1, 4.0),   // mean 3
      row(0.1, 1, 0, 1.0), row(0.1, 1, 1, 5.0),   // mean 3, smaller ε wins the tie
      row(0.9, 1, 0, 0.0, true), row(0.9, 1, 1, 0.0, true),
      row(0.5, 7, 0, 1.0), row(0.1, 7, 0, 2.0), row(0.9, 7, 0, 0.5, true),
  };
  const auto r = summarize_tune(rows);
  CHECK(r.rows.size() == rows.size());
  CHECK(r.argmin.at(1) == 0.1);
  CHECK(r.argmin.at(7) == 0.5);
  REQUIRE(r.summary.size() == 6);
  const auto& s = r.summary[0];
  CHECK(s.epsilon == 0.1);
  CHECK(s.m == 1);
  CHECK(s.mean == 3.0);
  CHECK(s.median == 3.0);
  CHECK(s.std_error == doctest::Approx(2.0));
  CHECK(s.scored == 2);
  CHECK(s.selected);
  CHECK(r.summary[2].diverged == 2);
  CHECK(std::isnan(r.summary[2].mean));
  CHECK_FALSE(r.summary[2].selected);
}

TEST_CASE("tune rows are isolated from the size of the grid") {
  const auto target = small_gmm();
  TuneSgldOptions small;
  small.epsilons = {1e-3, 1e-2};
  small.trials = 2;
  small.n = 50;
  small.m_list = {1, 5};
  small.seed = 3;
  auto big = small;
  big.trials = 3;
  big.epsilons = {1e-4, 1e-3, 1e-2};

  const auto a = tune_sgld(target, KernelSpec::imq(), small);
  const auto b = tune_sgld(target, KernelSpec::imq(), big);
  CHECK(a.rows.size() == 2 * 2 * 3);  // m list plus the exact L
  std::size_t matched = 0;
  for (const auto& ra : a.rows) {
    for (const auto& rb : b.rows) {
      if (ra.epsilon == rb.epsilon && ra.trial == rb.trial && ra.m == rb.m) {
        CHECK(ra.value == rb.value);
        ++matched;
      }
    }
  }
  CHECK(matched == a.rows.size());
  for (const auto& r : a.rows) CHECK(r.term_evals == static_cast<std::uint64_t>(50 * r.m));
}

TEST_CASE("divergent step sizes are flagged and never selected") {
  const auto target = make_gaussian(Eigen::VectorXd::Zero(1), Eigen::VectorXd::Ones(1), 4);
  TuneSgldOptions o;
  o.epsilons = {1e-2, 10.0};
  o.trials = 2;
  o.n = 1000;
  o.m_list = {1};
  o.exact = false;
  const auto r = tune_sgld(target, KernelSpec::imq(), o);
  CHECK(r.argmin.at(1) == 1e-2);
  for (const auto& row : r.rows) CHECK(row.diverged == (row.epsilon == 10.0));
}

TEST_CASE("identical samplers tie") {
  const auto target = small_gmm();
  RankOptions o;
  o.sampler_a.step = 1e-3;
  o.sampler_a.init = Eigen::VectorXd::Zero(2);
  o.sampler_a.seed = 5;
  o.sampler_b = o.sampler_a;
  o.n_grid = {100, 200};
  o.m_list = {2};
  const auto rows = rank_samplers(target, KernelSpec::imq(), o);
  REQUIRE(rows.size() == 2);
  for (const auto& r : rows) {
    CHECK(r.preferred == "tie");
    CHECK(r.value_a == r.value_b);
    CHECK(r.term_evals_a == static_cast<std::uint64_t>(2 * r.n));
  }
}

TEST_CASE("small-step SGLD outranks an overdispersed chain on logistic regression") {
  Eigen::VectorXd w(5);
  w << 1.0, -1.0, 0.5, 0.0, -0.5;
  const auto data = gen_logreg_data(500, 5, w, 21);
  const auto target = make_logreg(data.features, data.labels);
  RankOptions o;
  o.sampler_a.step = 1e-3;
  o.sampler_a.batch = 50;
  o.sampler_a.steps = 2000;
  o.sampler_a.init = Eigen::VectorXd::Zero(5);
  o.sampler_a.seed = 1;
  o.sampler_b = o.sampler_a;
  o.sampler_b.step = 0.5;
  o.sampler_b.seed = 2;
  o.n_grid = {2000};
  o.m_list = {5, 50, 500};
  o.seed = 3;
  const auto rows = rank_samplers(target, KernelSpec::imq(), o);
  REQUIRE(rows.size() == 3);
  for (const auto& r : rows) {
    INFO("m = " << r.m);
    CHECK(r.preferred == "A");
    CHECK(r.term_evals_a == static_cast<std::uint64_t>(2000 * r.m));
  }
}

TEST_CASE("curve with one sample size") {
  const auto target = make_gaussian(Eigen::VectorXd::Zero(1), Eigen::VectorXd::Ones(1), 10);
  CurveOptions o;
  o.n_grid = {100};
  o.seeds = 5;
  o.m = 0;
  const auto r = convergence_curve(target, KernelSpec::imq(), o);
  REQUIRE(r.rows.size() == 5);
  REQUIRE(r.summary.size() == 1);
  std::vector<double> values;
  for (const auto& row : r.rows) values.push_back(row.value);
  CHECK(r.summary[0].median == median_of(values));
  CHECK(r.rows[0].term_evals == 1000);

  // nested prefixes: adding a larger n leaves the smaller one untouched
  o.n_grid = {100, 300};
  const auto r2 = convergence_curve(target, KernelSpec::imq(), o);
  CHECK(r2.summary[0].median == r.summary[0].median);
}

TEST_CASE("target config round trip") {
  const auto c = Config::parse_string(
      "[target]\ntype = gmm\nL = 30\ndata_seed = 4\n");
  const auto spec = TargetSpec::from_config(c);
  Config out;
  spec.to_config(out);
  const auto again = TargetSpec::from_config(out);
  const auto t1 = spec.build();
  const auto t2 = again.build();
  CHECK(t1.num_terms() == 30);
  const Eigen::VectorXd x = Eigen::Vector2d(0.3, 0.4);
  CHECK(t1.grad_log_full(x) == t2.grad_log_full(x));

  const auto g = TargetSpec::from_config(Config::parse_string("[target]\ntype = gaussian\ndim = 3\nL = 5\n")).build();
  CHECK(g.dim() == 3);
  CHECK(g.num_terms() == 5);

  const auto lr = TargetSpec::from_config(Config::parse_string("[target]\ntype = logreg\nn = 40\nd = 3\n")).build();
  CHECK(lr.dim() == 3);
  CHECK(lr.num_terms() == 40);

  CHECK_THROWS(TargetSpec::from_config(Config::parse_string("[target]\ntype = banana\n")).build());
}

TEST_CASE("shared helpers") {
  CHECK(broadcast({2.0}, 3, "x") == Eigen::Vector3d(2.0, 2.0, 2.0));
  CHECK(broadcast({1.0, 2.0}, 2, "x") == Eigen::Vector2d(1.0, 2.0));
  CHECK_THROWS(broadcast({1.0, 2.0}, 3, "x"));
  CHECK(median_of({3.0, 1.0, 2.0}) == 2.0);
  CHECK(median_of({4.0, 1.0, 2.0, 3.0}) == 2.5);
}
