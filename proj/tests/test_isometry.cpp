#include "doctest.h"
#include "dms/error.hpp"
#include "dms/isometry.hpp"
#include "dms/words.hpp"
#include "testing.hpp"

using namespace dms;
using namespace dms::testing;

namespace {

Mat2 commutator(const Mat2& a, const Mat2& b) { return a * b + (-1.0) * (b * a); }

bool mat_eq(const Mat2& a, const Mat2& b) {
  return a.a == b.a && a.b == b.b && a.c == b.c && a.d == b.d;
}

}  // namespace

TEST_CASE("Killing field matrix map") {
  CHECK(mat_eq(killing_to_matrix({0, 0, 1}), Mat2{0, 1, -1, 0}));
  CHECK(mat_eq(killing_to_matrix({1, 0, 0}), Mat2{0, 1, 1, 0}));
  CHECK(mat_eq(killing_to_matrix({0, 1, 0}), Mat2{1, 0, 0, -1}));
  std::mt19937_64 rng(1);
  for (int i = 0; i < 100; ++i) {
    const Vec21 v = random_vec(rng);
    CHECK(vdist(matrix_to_killing(killing_to_matrix(v)), v) < 1e-15 * (1 + max_abs(v)));
  }
}

TEST_CASE("commutator against cross product pins the constant") {
  // Basis pairs evaluated directly: [K(e_i), K(e_j)] = c K(e_i x e_j)
  const Vec21 e[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      const Vec21 lhs = matrix_to_killing(commutator(killing_to_matrix(e[i]), killing_to_matrix(e[j])));
      CHECK(lhs == kAdCross * mcross(e[i], e[j]));
    }
  std::mt19937_64 rng(2);
  for (int i = 0; i < 200; ++i) {
    const Vec21 v = random_vec(rng), w = random_vec(rng);
    const Vec21 lhs = matrix_to_killing(commutator(killing_to_matrix(v), killing_to_matrix(w)));
    CHECK(vdist(lhs, kAdCross * mcross(v, w)) < 1e-13);
  }
}

TEST_CASE("adjoint action") {
  const Vec21 v{0.3, -1.2, 0.8};
  CHECK(vdist(adjoint(identity_isometry(), v), v) < 1e-15);
  const double e = std::exp(1.0);
  const Isometry D = make_isometry({e, 0, 0, 1 / e});
  CHECK(vdist(adjoint(D, {0, 1, 0}), {0, 1, 0}) < 1e-15);
  std::mt19937_64 rng(3);
  for (int i = 0; i < 300; ++i) {
    const Isometry A = random_isometry(rng, i % 2 ? 1 : -1);
    const Vec21 a = random_vec(rng), b = random_vec(rng);
    CHECK(bilinear(adjoint(A, a), adjoint(A, b)) == doctest::Approx(bilinear(a, b)).epsilon(1e-9).scale(10));
    // Killing fields push forward by Ad; points move by det * Ad
    CHECK(vdist(mcross(adjoint(A, a), adjoint(A, b)), adjoint(A, mcross(a, b))) < 1e-8 * (1 + euclid_norm(a) * euclid_norm(b)) * 100);
    const Vec21 p = random_point(rng, 2);
    CHECK(act_point(A, p).z > 0);
  }
  // a det -1 conjugation swaps the future and past cones
  const Isometry R = make_isometry({1, 0, 0, -1});
  CHECK(vdist(adjoint(R, {1, 2, 3}), {-1, 2, -3}) < 1e-15);
}

TEST_CASE("trace length") {
  const double e = std::exp(1.0);
  const Isometry D = make_isometry({e, 0, 0, 1 / e});
  CHECK(trace_length(D) == doctest::Approx(2.0).epsilon(1e-14));
  std::mt19937_64 rng(4);
  const Isometry B = random_isometry(rng);
  CHECK(trace_length(compose(compose(B, D), inverse(B))) == doctest::Approx(2.0).epsilon(1e-12));
  const Isometry G = make_isometry({e, 0, 0, -1 / e});
  CHECK(trace_length(G) == doctest::Approx(2.0).epsilon(1e-14));
  CHECK_THROWS_AS(trace_length(make_isometry({1, 1, 0, 1})), Error);
  CHECK_THROWS_AS(trace_length(make_isometry({0, 1, -1, 0})), Error);
}

TEST_CASE("isometry classes") {
  CHECK(classify_isometry(identity_isometry()) == IsometryClass::Identity);
  CHECK(classify_isometry(make_isometry({1, 1, 0, 1})) == IsometryClass::Parabolic);
  const double e = std::exp(1.0);
  CHECK(classify_isometry(make_isometry({e, 0, 0, -1 / e})) == IsometryClass::GlideReflection);
  CHECK(classify_isometry(make_isometry({1, 0, 0, -1})) == IsometryClass::Reflection);
  CHECK(classify_isometry(make_isometry({0, 1, -1, 0})) == IsometryClass::Elliptic);
  CHECK(classify_isometry(make_isometry({e, 0, 0, 1 / e})) == IsometryClass::Hyperbolic);
}

TEST_CASE("axis and neutral vector") {
  const double e = std::exp(1.0);
  const Isometry D = make_isometry({e, 0, 0, 1 / e});
  const Geodesic g = axis(D);
  CHECK(vdist(g.vplus, {1, 0, 1}) < 1e-12);
  CHECK(vdist(g.vminus, {-1, 0, 1}) < 1e-12);
  // the Ad-fixed vector whose flow agrees with D points along (0,-1,0)
  CHECK(vdist(neutral_vector(D), {0, -1, 0}) < 1e-12);
  CHECK(vdist(neutral_vector(inverse(D)), {0, 1, 0}) < 1e-12);
  const Geodesic gi = axis(inverse(D));
  CHECK(vdist(gi.vplus, g.vminus) < 1e-12);
  CHECK_THROWS_AS(axis(make_isometry({1, 1, 0, 1})), Error);

  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    const Isometry A = random_isometry(rng, i % 3 ? 1 : -1);
    const IsometryClass k = classify_isometry(A, 1e-6);
    if (k != IsometryClass::Hyperbolic && k != IsometryClass::GlideReflection) continue;
    if (trace_length(A) < 0.05) continue;
    const Geodesic ax = axis(A);
    CHECK(vdist(normalize_ideal(act_point(A, ax.vplus)), ax.vplus) < 1e-8);
    CHECK(euclid_norm(act_point(A, ax.vplus)) > euclid_norm(ax.vplus));
    CHECK(vdist(adjoint(A, neutral_vector(A)), neutral_vector(A)) < 1e-8);
    const Isometry B = random_isometry(rng);
    const Geodesic cb = axis(compose(compose(B, A), inverse(B)));
    CHECK(vdist(cb.vplus, normalize_ideal(act_point(B, ax.vplus))) < 1e-7);
  }
}

TEST_CASE("exponential of Killing fields") {
  CHECK(isometry_distance(exp_killing({0, 0, 1}, M_PI), identity_isometry()) < 1e-14);
  CHECK(isometry_distance(exp_killing({0.4, 0.2, 0.1}, 0.0), identity_isometry()) == 0.0);
  std::mt19937_64 rng(6);
  for (int i = 0; i < 100; ++i) {
    const Vec21 k = random_vec(rng, 1);
    const double s = 0.3, t = -0.7;
    CHECK(isometry_distance(compose(exp_killing(k, s), exp_killing(k, t)), exp_killing(k, s + t)) < 1e-12);
  }
  // unit spacelike: translation length 2|t|
  CHECK(trace_length(exp_killing({1, 0, 0}, 0.8)) == doctest::Approx(1.6).epsilon(1e-13));
}

TEST_CASE("flow velocity is the cross product") {
  std::mt19937_64 rng(8);
  const double h = 1e-5;
  for (int i = 0; i < 100; ++i) {
    const Vec21 k = random_vec(rng, 1), p = random_point(rng, 2);
    const Vec21 fd = (act_point(killing_flow(k, h), p) - act_point(killing_flow(k, -h), p)) / (2 * h);
    CHECK(vdist(fd, mcross(k, p)) < 1e-7 * (1 + euclid_norm(p)));
  }
}

TEST_CASE("longitudinal motions on the rectangle configuration") {
  for (double th : {M_PI / 6, M_PI / 4, M_PI / 3}) {
    const Vec21 a{-std::cos(th), -std::sin(th), 1}, b{std::cos(th), -std::sin(th), 1};
    const Vec21 c{std::cos(th), std::sin(th), 1}, d{-std::cos(th), std::sin(th), 1};
    const Vec21 XG = mcross(mcross(a, c), mcross(b, d));
    const Vec21 XE = mcross(mcross(a, d), mcross(c, b));
    const Vec21 XF = mcross(mcross(a, b), mcross(c, d));
    const double s2 = std::sin(th) * std::sin(th);
    CHECK(longitudinal_motion(XG, a, b) == doctest::Approx(-8 * s2).epsilon(1e-12));
    CHECK(longitudinal_motion(XG, c, d) == doctest::Approx(-8 * s2).epsilon(1e-12));
    // equal magnitude, opposite signs; the magnitude is 8 sin^2
    CHECK(longitudinal_motion(XE, a, b) == doctest::Approx(8 * s2).epsilon(1e-12));
    CHECK(longitudinal_motion(XE, c, d) == doctest::Approx(-8 * s2).epsilon(1e-12));
    CHECK(std::fabs(longitudinal_motion(XF, a, b)) < 1e-12);
    CHECK(std::fabs(longitudinal_motion(XF, c, d)) < 1e-12);
    CHECK(std::fabs(longitudinal_motion(a, a, b)) < 1e-15);
  }
  CHECK_THROWS_AS(longitudinal_motion({1, 0, 0}, {0, 1, 1}, {0, 2, 2}), Error);
}

TEST_CASE("words and cocycles") {
  CHECK(reduce({1, 2, -2, -1, 1}) == Word{1});
  CHECK(cyclic_reduce({-1, 2, 1}) == Word{2});
  CHECK(conjugacy_rep({-1}) == Word{1});
  CHECK(conjugacy_rep({2, 1}) == Word{1, 2});
  CHECK(reduced_words(1, 3).size() == 6);
  CHECK(reduced_words(2, 2).size() == 4 + 12);
  std::mt19937_64 rng(9);
  std::vector<Isometry> gens{random_isometry(rng), random_isometry(rng, -1)};
  std::vector<Vec21> u{random_vec(rng), random_vec(rng)};
  for (const Word& w : reduced_words(2, 3)) {
    for (const Word& v : reduced_words(2, 2)) {
      const Vec21 lhs = evaluate_cocycle(gens, u, concat(w, v));
      const Vec21 rhs = evaluate_cocycle(gens, u, w) + adjoint(evaluate(gens, w), evaluate_cocycle(gens, u, v));
      CHECK(vdist(lhs, rhs) < 1e-8 * (1 + euclid_norm(lhs)));
    }
    CHECK(vdist(evaluate_cocycle(gens, u, concat(w, inverse(w))), {0, 0, 0}) < 1e-9);
  }
}

TEST_CASE("axis of a long translation keeps both endpoints accurate") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 20; ++trial) {
    const Isometry C = random_isometry(rng);
    const double L = 5.0 + 1.25 * trial;  // mu up to e^28.75
    const Isometry D = make_isometry({std::exp(L / 2), 0, 0, std::exp(-L / 2)});
    const Isometry A = compose(compose(C, D), inverse(C));
    const Geodesic g = axis(A);
    const Geodesic g0 = axis(D);
    CHECK(vdist(g.vplus, normalize_ideal(act_point(C, g0.vplus))) < 1e-8);
    CHECK(vdist(g.vminus, normalize_ideal(act_point(C, g0.vminus))) < 1e-8);
  }
}
