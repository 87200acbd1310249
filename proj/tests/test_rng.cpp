#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "radbkg/phase_space.hpp"
#include "radbkg/rng.hpp"

using namespace radbkg;

TEST_CASE("identical seed and stream give identical sequences", "[rng]") {
  RandomStream a(123, 4), b(123, 4);
  for (int i = 0; i < 1000; ++i) REQUIRE(a.next_u64() == b.next_u64());
}

TEST_CASE("different streams of one seed are distinct", "[rng]") {
  RandomStream a(123, 0), b(123, 1);
  int same = 0;
  for (int i = 0; i < 100; ++i) same += (a.next_u64() == b.next_u64());
  CHECK(same == 0);
}

TEST_CASE("uniform deviates have the right first moments", "[rng]") {
  RandomStream rng(7);
  const int n = 200000;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    double u = rng.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    sum += u;
    sum2 += u * u;
  }
  double mean = sum / n;
  CHECK(std::abs(mean - 0.5) < 3.0 / std::sqrt(12.0 * n));
  CHECK(std::abs(sum2 / n - 1.0 / 3.0) < 3e-3);
}

TEST_CASE("exponential deviates have unit mean", "[rng]") {
  RandomStream rng(8);
  const int n = 200000;
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += rng.exponential();
  CHECK(std::abs(sum / n - 1.0) < 3.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("isotropic directions are unit length and balanced", "[rng]") {
  RandomStream rng(9);
  const int n = 100000;
  double mz = 0.0;
  for (int i = 0; i < n; ++i) {
    auto d = rng.isotropic_direction();
    REQUIRE(std::abs(norm(d) - 1.0) < 1e-12);
    mz += d[2];
  }
  // var(mu) = 1/3 for isotropic
  CHECK(std::abs(mz / n) < 3.0 / std::sqrt(3.0 * n));
}
