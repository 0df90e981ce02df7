#include <algorithm>

#include "doctest.h"
#include "dms/error.hpp"
#include "dms/hyperbolic.hpp"
#include "dms/isometry.hpp"
#include "testing.hpp"

using namespace dms;
using namespace dms::testing;

TEST_CASE("distance values") {
  const HypPoint o{{0, 0, 1}};
  CHECK(dist(o, o) == 0.0);
  const HypPoint q{{std::sinh(1.0), 0, std::cosh(1.0)}};
  CHECK(dist(o, q) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(dist_hilbert(o, q) == doctest::Approx(1.0).epsilon(1e-13));
  CHECK_THROWS_AS(dist_hilbert(o, o), Error);
}

TEST_CASE("distance is isometry invariant") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 200; ++i) {
    const HypPoint p{random_point(rng)}, q{random_point(rng)};
    const Isometry A = random_isometry(rng, i % 2 ? 1 : -1);
    const HypPoint Ap{act_point(A, p.v)}, Aq{act_point(A, q.v)};
    CHECK(dist(Ap, Aq) == doctest::Approx(dist(p, q)).epsilon(1e-9));
  }
}

TEST_CASE("hyperboloid and Hilbert distances agree on 10^4 pairs") {
  std::mt19937_64 rng(2024);
  double worst = 0;
  for (int i = 0; i < 10000; ++i) {
    const HypPoint p{random_point(rng)}, q{random_point(rng)};
    if (dist(p, q) < 1e-6) continue;
    worst = std::max(worst, std::fabs(dist(p, q) - dist_hilbert(p, q)));
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("geodesic from endpoints") {
  const Geodesic g = geodesic_from_endpoints({-1, 0, 1}, {1, 0, 1});
  CHECK(vdist(g.n, {0, -1, 0}) < 1e-15);
  CHECK(det3(g.vminus, g.n, g.vplus) > 0);
  const Geodesic r = geodesic_from_endpoints({1, 0, 1}, {-1, 0, 1});
  CHECK(vdist(r.n, -1.0 * g.n) < 1e-15);
  const Geodesic s = geodesic_from_endpoints({-2, 0, 2}, {3, 0, 3});
  CHECK(vdist(s.n, g.n) < 1e-15);
  CHECK_THROWS_AS(geodesic_from_endpoints({1, 0, 1}, {2, 0, 2}), Error);
  CHECK_THROWS_AS(geodesic_from_endpoints({1, 0, 0}, {0, 1, 1}), Error);
}

TEST_CASE("constructed geodesics satisfy the orientation rule") {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 500; ++i) {
    const Vec21 a = random_lightlike(rng), b = random_lightlike(rng);
    if (max_abs(mcross(normalize_ideal(a), normalize_ideal(b))) < 1e-3) continue;
    const Geodesic g = geodesic_from_endpoints(a, b);
    CHECK(det3(g.vminus, g.n, g.vplus) > 0);
    CHECK(std::fabs(norm2(g.n) - 1) < 1e-12);
    CHECK(vdist(g.vplus, normalize_ideal(b)) < 1e-12);
    const Geodesic d = geodesic_from_dual(g.n);
    CHECK(vdist(d.vplus, g.vplus) < 1e-9);
    CHECK(vdist(d.vminus, g.vminus) < 1e-9);
    const Vec21 p = random_point(rng), q = random_point(rng);
    const Geodesic t = geodesic_through(p, q);
    // forward endpoint is reached from p through q
    CHECK(dist(HypPoint{p}, HypPoint{q}) < 1e9);
    CHECK(bilinear(q - p, mcross(t.n, make_point(p).v)) > 0);
  }
}

TEST_CASE("horoball connection length") {
  CHECK(horoball_connection_length({{0, 1, 1}}, {{0, -1, 1}}) == doctest::Approx(0.0));
  const double e = std::exp(1.0);
  CHECK(horoball_connection_length({{0, e, e}}, {{0, -e, e}}) == doctest::Approx(2.0));
  CHECK_THROWS_AS(horoball_connection_length({{0, 1, 1}}, {{0, 2, 2}}), Error);
  std::mt19937_64 rng(4);
  for (int i = 0; i < 200; ++i) {
    const Vec21 a = random_lightlike(rng), b = random_lightlike(rng);
    if (max_abs(mcross(normalize_ideal(a), normalize_ideal(b))) < 1e-3) continue;
    const double s = 0.1 + i * 0.05;
    CHECK(horoball_connection_length({s * a}, {s * b}) ==
          doctest::Approx(horoball_connection_length({a}, {b}) + 2 * std::log(s)).epsilon(1e-12));
  }
}

TEST_CASE("angles and perpendiculars") {
  const HypPoint o{{0, 0, 1}};
  const Geodesic g1 = geodesic_from_dual({1, 0, 0}), g2 = geodesic_from_dual({0, 1, 0});
  CHECK(sin_angle_at(o, g1, g2) == doctest::Approx(1.0));
  const Geodesic g3 = geodesic_from_dual({std::cos(M_PI / 3), std::sin(M_PI / 3), 0});
  CHECK(sin_angle_at(o, g1, g3) == doctest::Approx(std::sqrt(3.0) / 2));
  CHECK(sin_angle_at(o, g1, g1) == doctest::Approx(0.0));
  CHECK_THROWS_AS(sin_angle_at(HypPoint{{std::sinh(1.0), 0, std::cosh(1.0)}}, g1, g2), Error);

  const Geodesic p = perpendicular_at(g2, o);
  CHECK(std::fabs(std::fabs(p.n.x) - 1) < 1e-15);
  const Geodesic pp = perpendicular_at(p, o);
  CHECK(std::fabs(std::fabs(bilinear(pp.n, g2.n)) - 1) < 1e-14);

  std::mt19937_64 rng(12);
  for (int i = 0; i < 100; ++i) {
    const Vec21 a = random_point(rng), b = random_point(rng);
    const Geodesic g = geodesic_through(a, b);
    const HypPoint m = midpoint({a}, {b});
    const Geodesic q = perpendicular_at(g, m);
    CHECK(sin_angle_at(m, g, q) == doctest::Approx(1.0));
    const Isometry A = random_isometry(rng);
    const Geodesic Ag = geodesic_from_dual(adjoint(A, g.n));
    const Geodesic Aq = perpendicular_at(Ag, HypPoint{act_point(A, m.v)});
    CHECK(std::fabs(std::fabs(bilinear(Aq.n, adjoint(A, q.n))) - 1) < 1e-8);
  }
}

TEST_CASE("horoballs") {
  const HypPoint o{{0, 0, 1}};
  CHECK_FALSE(horoball_contains({{0, 1, 1}}, o));
  CHECK(horoball_level({{0, 1, 1}}, o) == -1.0);
  CHECK_FALSE(horoball_contains({{0, 2, 2}}, o));
  CHECK(horoball_contains({{0, 0.5, 0.5}}, o));
}

TEST_CASE("horoball nesting") {
  std::mt19937_64 rng(17);
  const Vec21 v0 = ideal_point(0.7);
  for (int i = 0; i < 2000; ++i) {
    const HypPoint p{random_point(rng, 4)};
    const double k = 0.2 + 0.001 * i, kk = k * 1.7;
    if (horoball_contains({kk * v0}, p)) CHECK(horoball_contains({k * v0}, p));
  }
}
