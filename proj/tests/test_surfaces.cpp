#include <doctest.h>

#include <cmath>
#include <map>

#include "topoquench/surfaces.hpp"

using namespace tq;

namespace {

double loop_signed_area(const Loop& lp, double period) {
  // shoelace with seam-aware increments, loop unwrapped from its first vertex
  double area = 0;
  double x = lp.k[0][0], y = lp.k[0][1];
  const int n = static_cast<int>(lp.k.size());
  for (int j = 0; j < n; ++j) {
    const double dx = wrap_delta(lp.k[(j + 1) % n][0] - lp.k[j][0], period);
    const double dy = wrap_delta(lp.k[(j + 1) % n][1] - lp.k[j][1], period);
    area += x * dy - y * dx;
    x += dx;
    y += dy;
  }
  return 0.5 * area;
}

}  // namespace

TEST_CASE("1D zero detection") {
  GridSpec g;
  g.n = 201;
  auto f = [](const Vec3& k) { return -std::cos(k[0]); };
  auto z = detect_zeros_1d(f, g);
  REQUIRE(z.size() == 2);
  CHECK(z[0] == doctest::Approx(-M_PI / 2).epsilon(1e-12));
  CHECK(z[1] == doctest::Approx(M_PI / 2).epsilon(1e-12));
  CHECK_THROWS_AS(detect_zeros_1d([](const Vec3&) { return 1.0; }, g),
                  EmptySurface);
}

TEST_CASE("2D contour: closed, on-surface, oriented") {
  GridSpec g;
  g.n = 101;
  auto f = [](const Vec3& k) { return 1 - std::cos(k[0]) - std::cos(k[1]); };
  auto loops = contour_2d(f, g);
  REQUIRE(loops.size() == 1);
  const Loop& lp = loops[0];
  CHECK(lp.k.size() > 50);
  for (const auto& k : lp.k) CHECK(std::abs(f(k)) < 1e-10);
  // consecutive vertices stay close (closed chain, no jumps)
  const int n = static_cast<int>(lp.k.size());
  for (int j = 0; j < n; ++j) {
    const double dx = wrap_delta(lp.k[(j + 1) % n][0] - lp.k[j][0], g.period);
    const double dy = wrap_delta(lp.k[(j + 1) % n][1] - lp.k[j][1], g.period);
    CHECK(std::hypot(dx, dy) < 3 * g.spacing());
  }
  // inverted region (f < 0) sits around the origin; with k_perp = grad f
  // pointing outward, the CCW-rotated tangent orientation walks the loop CCW
  CHECK(loop_signed_area(lp, g.period) > 0);
}

TEST_CASE("2D contour: inverted-region-outside ring runs clockwise") {
  GridSpec g;
  g.n = 101;
  auto f = [](const Vec3& k) { return -1 - std::cos(k[0]) - std::cos(k[1]); };
  auto loops = contour_2d(f, g);
  REQUIRE(loops.size() == 1);
  // the ring encloses (pi, pi) where f > 0; k_perp points inward
  CHECK(loop_signed_area(loops[0], g.period) < 0);
}

TEST_CASE("3D isosurface: watertight oriented sphere-like mesh") {
  GridSpec g;
  g.n = 61;
  auto f = [](const Vec3& k) {
    return 1.5 - std::cos(k[0]) - std::cos(k[1]) - std::cos(k[2]);
  };
  TriMesh m = isosurface_3d(f, g);
  CHECK(m.tri.size() > 500);
  for (const auto& v : m.v) CHECK(std::abs(f(v)) < 1e-10);

  std::map<std::pair<int, int>, int> edge_count;
  std::map<std::pair<int, int>, int> directed;
  for (const auto& t : m.tri) {
    for (int e = 0; e < 3; ++e) {
      int a = t[e], b = t[(e + 1) % 3];
      edge_count[{std::min(a, b), std::max(a, b)}]++;
      directed[{a, b}]++;
    }
  }
  for (const auto& [e, c] : edge_count) CHECK(c == 2);
  // consistent orientation: each directed edge used exactly once
  for (const auto& [e, c] : directed) CHECK(c == 1);
  // Euler characteristic of a sphere
  const int V = static_cast<int>(m.v.size());
  const int E = static_cast<int>(edge_count.size());
  const int F = static_cast<int>(m.tri.size());
  CHECK(V - E + F == 2);
}

TEST_CASE("mesh section and loop zeros") {
  GridSpec g;
  g.n = 61;
  auto f = [](const Vec3& k) {
    return 1.5 - std::cos(k[0]) - std::cos(k[1]) - std::cos(k[2]);
  };
  auto r = [](const Vec3& k) { return std::sin(k[0]); };
  TriMesh m = isosurface_3d(f, g);
  auto rings = mesh_section(m, f, r, g);
  REQUIRE(rings.size() == 1);  // only the k_x = 0 plane cuts this surface
  for (const auto& k : rings[0].k) {
    CHECK(std::abs(r(k)) < 1e-10);
    CHECK(std::abs(f(k)) < 5e-3);  // chordal deviation from the mesh
  }
  auto pz = loop_zeros(rings[0], [](const Vec3& k) { return std::sin(k[1]); },
                       g);
  CHECK(pz.size() == 2);
  int dsum = 0;
  for (const auto& c : pz) {
    CHECK(std::abs(c.k[1]) < 1e-9);
    dsum += c.ds_sign;
  }
  CHECK(dsum == 0);  // up and down crossings balance on a closed loop
  CHECK_THROWS_AS(
      loop_zeros(rings[0], [](const Vec3&) { return 1.0; }, g), EmptySurface);
}

TEST_CASE("normal direction and flat field") {
  auto f = [](const Vec3& k) { return 1 - std::cos(k[0]) - std::cos(k[1]); };
  Vec3 u = kperp_dir(f, {1.047197551196598, 0, 0}, 1e-4);  // on the ring, +x side
  CHECK(u[0] == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(std::abs(u[1]) < 1e-8);
  CHECK_THROWS_AS(kperp_dir([](const Vec3&) { return 1.0; }, {0, 0, 0}, 1e-4),
                  FlatField);
}

TEST_CASE("quench field scalars on the 1D model") {
  ModelParams p;
  p.m_z = 0;
  QuenchField qf(Model::from_name("aiii1d", p), QuenchSpec{0, 1.0});
  GridSpec g;
  g.n = 201;

  auto bis = detect_zeros_1d(qf.bis_scalar(), g);
  REQUIRE(bis.size() == 2);
  CHECK(std::abs(bis[1] - M_PI / 2) < 1e-10);

  auto sis = detect_zeros_1d(qf.sis_scalar(), g);
  REQUIRE(sis.size() == 2);
  const double kstar = std::acos(-sis_level(1.0));
  CHECK(sis[0] == doctest::Approx(-kstar).epsilon(1e-10));
  CHECK(sis[1] == doctest::Approx(kstar).epsilon(1e-10));
  // imbalance really vanishes there
  CHECK(std::abs(qf.imbalance({kstar, 0, 0})) < 1e-12);

  // gradient component aligns with the spin-orbit field at the SIS
  auto g1 = qf.gradient_fn(1, g.spacing());
  CHECK(g1({kstar, 0, 0}) > 0.1);    // sin(k*) > 0
  CHECK(g1({-kstar, 0, 0}) < -0.1);

  // value component on the BIS reproduces the on-surface prefactor
  auto v1 = qf.value_fn(1);
  CHECK(v1({M_PI / 2, 0, 0}) == doctest::Approx(-prefactor_c(1.0)).epsilon(1e-12));
  CHECK_THROWS_AS(QuenchField(Model::from_name("aiii1d", p), QuenchSpec{0, 0.0})
                      .sis_scalar(),
                  EmptySurface);
}

TEST_CASE("SIS gradient is parallel to the spin-orbit field on the 2D ring") {
  ModelParams p;
  p.m_z = 1.0;
  QuenchField qf(Model::from_name("qah2d", p), QuenchSpec{0, 1.0});
  GridSpec g;
  g.n = 201;
  auto loops = contour_2d(qf.sis_scalar(), g);
  REQUIRE(loops.size() == 1);
  auto g1 = qf.gradient_fn(1, g.spacing());
  auto g2 = qf.gradient_fn(2, g.spacing());
  int checked = 0;
  for (size_t j = 0; j < loops[0].k.size(); j += 7) {
    const Vec3& k = loops[0].k[j];
    Coeffs h = qf.field(k);
    const double hn = h.so_norm();
    if (hn < 0.3) continue;
    const double a = g1(k), b = g2(k);
    const double cosang = (a * h[1] + b * h[2]) / (std::hypot(a, b) * hn);
    CHECK(cosang > std::cos(2 * M_PI / 180));
    ++checked;
  }
  CHECK(checked > 10);
}
