#include <doctest.h>

#include <algorithm>
#include <chrono>
#include <numeric>
#include <random>
#include <vector>

#include "dnml/block_stats.hpp"
#include "dnml/errors.hpp"
#include "dnml/sbm_sampler.hpp"
#include "dnml/selector.hpp"

using namespace dnml;

namespace {

Graph two_cliques() {
  std::vector<Edge> edges;
  for (NodeId base : {NodeId{0}, NodeId{10}}) {
    for (NodeId i = 0; i < 10; ++i) {
      for (NodeId j = i + 1; j < 10; ++j) edges.push_back({base + i, base + j});
    }
  }
  return Graph(20, std::move(edges));
}

constexpr Method kAllMethods[] = {Method::kDnml, Method::kCbic, Method::kIl};

}  // namespace

TEST_CASE("two disjoint 10-cliques select k = 2") {
  SelectorOptions options;
  options.k_max = 5;
  const SelectionResult r = select_k(two_cliques(), Method::kDnml, options);
  CHECK(r.k_hat == 2);
  CHECK(r.k_max == 5);
  REQUIRE(r.candidates.size() == 5);
  CHECK(r.candidates[0].score.penalized == doctest::Approx(-134.32226557681413));
  CHECK(r.candidates[1].score.penalized == doctest::Approx(-29.437990558318833));
  for (const CandidateRecord& c : r.candidates) {
    CHECK(c.ok());
    CHECK(std::isfinite(c.score.penalized));
    REQUIRE(c.labels.has_value());
    CHECK(c.labels->size() == 20);
  }
  CHECK(r.chosen().k == 2);
}

TEST_CASE("empty graph selects k = 1") {
  SelectorOptions options;
  options.k_max = 5;
  for (Method m : kAllMethods) CHECK(select_k(Graph(10, {}), m, options).k_hat == 1);
}

TEST_CASE("default and invalid k_max") {
  CHECK(select_k(Graph(4, {{0, 1}}), Method::kDnml).k_max == 4);
  CHECK(select_k(two_cliques(), Method::kDnml).k_max == 10);
  SelectorOptions options;
  options.k_max = 21;
  CHECK_THROWS_AS(select_k(two_cliques(), Method::kDnml, options), DomainError);
  options.k_max = 0;
  CHECK_THROWS_AS(select_k(two_cliques(), Method::kDnml, options), DomainError);
}

TEST_CASE("planted five-block SBM at n = 350 selects k = 5") {
  const SBMParams params = SBMParams::planted(SBMParams::balanced(5), 0.8, 0.3);
  const SBMSample s = sample_sbm(350, params, Seed{2023});
  SelectorOptions options;
  options.detector.seed = Seed{2023};
  CHECK(select_k(s.graph, Method::kDnml, options).k_hat == 5);
}

TEST_CASE("constant log score makes every method choose k = 1") {
  const SBMParams params = SBMParams::planted(SBMParams::balanced(3), 0.7, 0.1);
  const SBMSample s = sample_sbm(60, params, Seed{5});
  const Scorer flat = [](Method m, const BlockStats& stats, const PenaltyConfig& config,
                         ComplexityCache*) {
    CriterionScore out;
    out.k = stats.k();
    out.method = m;
    out.log_score = -7.0;
    out.penalty = penalty(m, stats.k(), stats.num_nodes(), config);
    out.penalized = out.log_score - out.penalty;
    return out;
  };
  SelectorOptions options;
  for (const SelectionResult& r : select_k(s.graph, kAllMethods, options, flat)) {
    CHECK(r.k_hat == 1);
  }
}

TEST_CASE("failures are recorded and excluded from the argmax") {
  const Scorer failing = [](Method m, const BlockStats& stats, const PenaltyConfig& config,
                            ComplexityCache* cache) {
    if (stats.k() == 2) throw DetectorError("synthetic failure");
    return score(m, stats, config, cache);
  };
  SelectorOptions options;
  options.k_max = 4;
  const Method dnml[] = {Method::kDnml};
  const SelectionResult r = select_k(two_cliques(), dnml, options, failing).front();
  REQUIRE(r.candidates.size() == 4);
  CHECK_FALSE(r.candidates[1].ok());
  CHECK(r.candidates[1].failure.find("synthetic failure") != std::string::npos);
  CHECK(r.k_hat != 2);
  CHECK(r.chosen().ok());

  std::vector<CandidateRecord> none(2);
  none[0].failure = "x";
  none[1].failure = "y";
  CHECK_THROWS_AS(argmax_k(none), DetectorError);
}

TEST_CASE("argmax breaks ties toward smaller k") {
  std::vector<CandidateRecord> records(3);
  for (int i = 0; i < 3; ++i) records[i].k = i + 1;
  records[0].score.penalized = -5.0;
  records[1].score.penalized = -1.0;
  records[2].score.penalized = -1.0;
  CHECK(argmax_k(records) == 2);
}

TEST_CASE("results do not depend on the thread count or node order") {
  const SBMParams params = SBMParams::planted(SBMParams::balanced(3), 0.7, 0.2);
  const SBMSample s = sample_sbm(120, params, Seed{77});
  SelectorOptions serial;
  SelectorOptions threaded;
  threaded.threads = 4;
  const auto a = select_k(s.graph, kAllMethods, serial);
  const auto b = select_k(s.graph, kAllMethods, threaded);
  for (std::size_t m = 0; m < a.size(); ++m) {
    CHECK(a[m].k_hat == b[m].k_hat);
    for (std::size_t i = 0; i < a[m].candidates.size(); ++i) {
      CHECK(a[m].candidates[i].score.penalized == b[m].candidates[i].score.penalized);
      CHECK(a[m].candidates[i].labels == b[m].candidates[i].labels);
    }
  }

  std::vector<NodeId> perm(120);
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937_64 rng(9);
  std::shuffle(perm.begin(), perm.end(), rng);
  const Graph permuted = s.graph.permuted(perm);
  for (Method m : kAllMethods) {
    CHECK(select_k(permuted, m, serial).k_hat == select_k(s.graph, m, serial).k_hat);
  }
}

TEST_CASE("criterion evaluation time grows at most quadratically") {
  const auto seconds = [](std::size_t n) {
    std::vector<int> z(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = 1 + static_cast<int>(i % 5);
    const Labeling labels(5, z);
    const SBMSample s = sample_sbm(n, SBMParams::planted(SBMParams::balanced(5), 0.5, 0.2),
                                   Seed{n});
    std::vector<double> runs;
    for (int rep = 0; rep < 7; ++rep) {
      const auto start = std::chrono::steady_clock::now();
      const BlockStats stats = block_stats(s.graph, labels);
      volatile double sink = score(Method::kDnml, stats, PenaltyConfig{}).penalized;
      (void)sink;
      runs.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    }
    std::sort(runs.begin(), runs.end());
    return runs[runs.size() / 2];
  };
  const double t200 = seconds(200);
  const double t400 = seconds(400);
  const double t800 = seconds(800);
  MESSAGE("criterion time (s): n=200 " << t200 << ", n=400 " << t400 << ", n=800 " << t800);
  CHECK(t400 / t200 <= 5.0);
  CHECK(t800 / t400 <= 5.0);
}
