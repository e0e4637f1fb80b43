#include <doctest.h>

#include <cmath>

#include "dnml/block_stats.hpp"
#include "dnml/criteria.hpp"
#include "dnml/errors.hpp"
#include "oracle/oracle.hpp"

using namespace dnml;
using namespace dnml::oracle;

TEST_CASE("brute_c_mn") {
  CHECK(brute_c_mn(2, 3) == doctest::Approx(4.5));
  CHECK(brute_c_mn(3, 2) == doctest::Approx(26.0 / 9.0));
  for (int m = 0; m <= 8; ++m) CHECK(brute_c_mn(m, 1) == 1.0);
  for (int q = 1; q <= 4; ++q) CHECK(brute_c_mn(0, q) == 1.0);
  CHECK_THROWS_AS(brute_c_mn(9, 2), DomainError);
  CHECK_THROWS_AS(brute_c_mn(2, 5), DomainError);
}

TEST_CASE("brute_c_dnml_A") {
  CHECK(brute_c_dnml_A(Labeling::constant(3)) == doctest::Approx(26.0 / 9.0).epsilon(1e-12));
  CHECK(brute_c_dnml_A(Labeling(2, {1, 2})) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("brute_c_dnml_A factorizes over block pairs") {
  for (int n = 1; n <= 4; ++n) {
    for (int k = 1; k <= 3; ++k) {
      for_each_labeling(n, k, [&](const Labeling& z) {
        const BlockStats s = block_stats(Graph(n, {}), z);
        double log_product = 0.0;
        for (int a = 0; a < k; ++a) {
          for (int b = a; b < k; ++b) {
            log_product += log_multinomial_complexity(s.pair_capacity(a, b), 2);
          }
        }
        const double brute = brute_c_dnml_A(z);
        CHECK(std::abs(brute - std::exp(log_product)) <= 1e-10 * brute);
      });
    }
  }
}

TEST_CASE("DNML sums to one over labelings and graphs") {
  CHECK(std::abs(brute_dnml_normalization(3, 1) - 1.0) < 1e-10);
  CHECK(std::abs(brute_dnml_normalization(3, 2) - 1.0) < 1e-10);
  CHECK(std::abs(brute_dnml_normalization(4, 2) - 1.0) < 1e-10);
  CHECK(std::abs(brute_dnml_normalization(4, 3) - 1.0) < 1e-10);
}

TEST_CASE("brute_c_nmcl") {
  CHECK(brute_c_nmcl(2, 1) == doctest::Approx(2.0));
  for (int n = 1; n <= 4; ++n) {
    CHECK(brute_c_nmcl(n, 1) == doctest::Approx(brute_c_dnml_A(Labeling::constant(n))));
    for (int k = 1; k <= 2; ++k) CHECK(std::log(brute_c_nmcl(n, k)) >= 0.0);
  }
}

TEST_CASE("guard rejects instances beyond the bound") {
  CHECK_THROWS_AS(TinyInstanceBound::check(5, 1), DomainError);
  CHECK_THROWS_AS(TinyInstanceBound::check(3, 4), DomainError);
  CHECK_THROWS_AS(brute_dnml_normalization(5, 2), DomainError);
  int graphs = 0;
  for_each_graph(4, [&](const Graph&) { ++graphs; });
  CHECK(graphs == 64);
  int labelings = 0;
  for_each_labeling(4, 3, [&](const Labeling&) { ++labelings; });
  CHECK(labelings == 81);
}
