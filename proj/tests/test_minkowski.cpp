#include "doctest.h"
#include "dms/error.hpp"
#include "dms/minkowski.hpp"
#include "testing.hpp"

using namespace dms;
using dms::testing::random_vec;

TEST_CASE("bilinear form values") {
  CHECK(bilinear({1, 0, 0}, {1, 0, 0}) == 1.0);
  CHECK(bilinear({0, 0, 1}, {0, 0, 1}) == -1.0);
  CHECK(bilinear({0, 1, 1}, {0, -1, 1}) == -2.0);
}

TEST_CASE("cross product values") {
  CHECK(mcross({1, 0, 0}, {0, 1, 0}) == Vec21(0, 0, 1));
  CHECK(mcross({0.3, -2, 5}, {0.3, -2, 5}) == Vec21(0, 0, 0));
  CHECK(mcross({0, -1, 1}, {0, 1, 1}) == Vec21(2, 0, 0));
}

TEST_CASE("classification") {
  CHECK(classify({1, 0, 0}) == CausalClass::Spacelike);
  CHECK(classify({0, 1, 1}) == CausalClass::LightlikePositive);
  CHECK(classify({0, 0, -1}) == CausalClass::TimelikeNegative);
  CHECK(classify({0, 0, 0}) == CausalClass::Zero);
  CHECK(classify({0, -1, -1}) == CausalClass::LightlikeNegative);
}

TEST_CASE("dual plane normal") {
  CHECK(bilinear({0, 1, 1}, dual_plane_normal({1, 0, 0})) == 0.0);
  const Vec21 l{0, 1, 1};
  CHECK(bilinear(l, dual_plane_normal(l)) == 0.0);
  CHECK_THROWS_AS(dual_plane_normal({0, 0, 0}), Error);
}

TEST_CASE("cross product identities on random samples") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    const Vec21 u = random_vec(rng), v = random_vec(rng), w = random_vec(rng);
    const Vec21 c = mcross(u, v);
    const double scale = 1 + euclid_norm(u) * euclid_norm(v) * euclid_norm(w);
    CHECK(std::fabs(bilinear(c, u)) < 1e-14 * scale);
    CHECK(std::fabs(bilinear(c, v)) < 1e-14 * scale);
    CHECK(std::fabs(bilinear(c, w) + bilinear(mcross(v, u), w)) < 1e-14 * scale);
    CHECK(std::fabs(bilinear(c, w) + det3(u, v, w)) < 1e-13 * scale);
  }
}

TEST_CASE("classification is scale stable") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 1000; ++i) {
    const Vec21 v = random_vec(rng);
    const CausalClass c = classify(v);
    CHECK(classify(3.7 * v) == c);
    const CausalClass n = classify(-2.0 * v);
    switch (c) {
      case CausalClass::TimelikePositive: CHECK(n == CausalClass::TimelikeNegative); break;
      case CausalClass::TimelikeNegative: CHECK(n == CausalClass::TimelikePositive); break;
      case CausalClass::LightlikePositive: CHECK(n == CausalClass::LightlikeNegative); break;
      case CausalClass::LightlikeNegative: CHECK(n == CausalClass::LightlikePositive); break;
      default: CHECK(n == c);
    }
  }
}

TEST_CASE("cross of independent future lightlike vectors is spacelike") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 1000; ++i) {
    const Vec21 a = dms::testing::random_lightlike(rng), b = dms::testing::random_lightlike(rng);
    if (max_abs(mcross(a, b)) < 1e-6) continue;
    CHECK(norm2(mcross(a, b)) > 0);
  }
}
