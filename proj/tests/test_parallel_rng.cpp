#include <atomic>
#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

#include <doctest.h>

#include "steinlab/parallel.hpp"
#include "steinlab/rng.hpp"

using namespace steinlab;

TEST_CASE("SplitMix64 reference outputs") {
  // first three outputs of the reference splitmix64 generator seeded with 0
  CHECK(mix64(1 * CounterRng::kGamma) == 0xe220a8397b1dcdafULL);
  CHECK(mix64(2 * CounterRng::kGamma) == 0x6e789e6aa1b965f4ULL);
  CHECK(mix64(3 * CounterRng::kGamma) == 0x06c45d188009454fULL);
}

TEST_CASE("counter stream is replayable") {
  CounterRng a(42), b(42), c(43);
  std::vector<std::uint64_t> wa, wc;
  for (int k = 0; k < 100; ++k) {
    wa.push_back(a.next_u64());
    wc.push_back(c.next_u64());
    CHECK(b.next_u64() == wa.back());
  }
  CHECK(wa != wc);
  CHECK(a.counter() == 100);
}

TEST_CASE("distribution moments") {
  CounterRng rng(7);
  const int n = 200000;
  double su = 0, sn = 0, sn2 = 0;
  std::vector<int> counts(7, 0);
  bool in_range = true;
  for (int k = 0; k < n; ++k) {
    const double u = rng.uniform();
    in_range = in_range && u >= 0.0 && u < 1.0;
    su += u;
    const double z = rng.normal();
    sn += z;
    sn2 += z * z;
    ++counts[rng.below(7)];
  }
  CHECK(in_range);
  CHECK(std::abs(su / n - 0.5) < 0.005);
  CHECK(std::abs(sn / n) < 0.01);
  CHECK(std::abs(sn2 / n - 1.0) < 0.02);
  double chi = 0;
  for (int c : counts) chi += (c - n / 7.0) * (c - n / 7.0) / (n / 7.0);
  CHECK(chi < 22.46);  // 6 dof, 0.1%
  CHECK(rng.uniform_open0() > 0.0);
}

TEST_CASE("derived seeds separate cells and streams") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t a = 0; a < 20; ++a) {
    for (std::uint64_t b = 0; b < 20; ++b) seen.insert(derive_seed(5, {a, b}));
  }
  CHECK(seen.size() == 400);
  CHECK(derive_seed(5, {1, 2}) != derive_seed(5, {2, 1}));
  CHECK(derive_seed(5, {1}) != derive_seed(5, {1, 0}));
  CHECK(stream_seed(5, Stream::kChain) != stream_seed(5, Stream::kSubsets));
  CHECK(stream_seed(5, Stream::kChain) == stream_seed(5, Stream::kChain));
}

TEST_CASE("parallel_for covers every task once") {
  for (int threads : {1, 3, 8}) {
    ScopedThreads scope(threads);
    CHECK(num_threads() == threads);
    std::vector<std::atomic<int>> hits(1000);
    parallel_for(1000, [&](std::ptrdiff_t t) { hits[static_cast<std::size_t>(t)].fetch_add(1); });
    for (const auto& h : hits) CHECK(h.load() == 1);
  }
  parallel_for(0, [](std::ptrdiff_t) { FAIL("no tasks expected"); });
}

TEST_CASE("parallel_for rethrows the lowest failing task") {
  ScopedThreads scope(4);
  try {
    parallel_for(100, [](std::ptrdiff_t t) {
      if (t == 17 || t == 80) throw std::runtime_error("task " + std::to_string(t));
    });
    FAIL("expected an exception");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()) == "task 17");
  }
}

TEST_CASE("nested regions run serially") {
  ScopedThreads scope(4);
  std::atomic<int> inner_threads{0};
  parallel_for(4, [&](std::ptrdiff_t) { inner_threads.fetch_add(num_threads()); });
  CHECK(inner_threads.load() == 4);
}

TEST_CASE("worker count settings") {
  const int before = num_threads();
  {
    ScopedThreads scope(6);
    CHECK(num_threads() == 6);
  }
  CHECK(num_threads() == before);
  CHECK(block_count(0) == 0);
  CHECK(block_count(1) == 1);
  CHECK(block_count(kBlockRows) == 1);
  CHECK(block_count(kBlockRows + 1) == 2);
}
