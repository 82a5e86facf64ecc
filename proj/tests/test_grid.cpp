#include <doctest.h>

#include <random>

#include "wgf/grid.hpp"

using namespace wgf;

TEST_CASE("grid construction and invariants") {
  Grid g = Grid::make_1d(99, 0.0, 2.0);
  CHECK(g.dx == doctest::Approx(2.0 / 99).epsilon(1e-15));
  CHECK(g.n_cells() == 99);
  CHECK(g.n_faces_x() == 100);
  CHECK(g.n_interior_faces() == 98);

  Grid g2 = Grid::make_2d(4, 3, 0.0, 2.0, -1.0, 1.0);
  CHECK(g2.n_cells() == 12);
  CHECK(g2.n_faces_x() == 5 * 3);
  CHECK(g2.n_faces_y() == 4 * 4);
  CHECK(g2.n_interior_faces() == 3 * 3 + 4 * 2);
  CHECK(g2.cell_volume() == doctest::Approx(0.5 * (2.0 / 3.0)));

  CHECK_THROWS_AS(Grid::make_1d(0, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Grid::make_1d(4, 1.0, 0.0), std::invalid_argument);
}

TEST_CASE("cell centers") {
  Grid g = Grid::make_1d(2, 0.0, 2.0);
  auto pts = cell_centers(g);
  CHECK(pts[0].x == doctest::Approx(0.5));
  CHECK(pts[1].x == doctest::Approx(1.5));

  Grid g1 = Grid::make_1d(1, -1.0, 1.0);
  CHECK(cell_centers(g1)[0].x == doctest::Approx(0.0));

  Grid g2 = Grid::make_2d(2, 1, 0.0, 2.0, 0.0, 1.0);
  auto pts2 = cell_centers(g2);
  REQUIRE(pts2.size() == 2);
  CHECK(pts2[0].x == doctest::Approx(0.5));
  CHECK(pts2[0].y == doctest::Approx(0.5));
  CHECK(pts2[1].x == doctest::Approx(1.5));
  CHECK(pts2[1].y == doctest::Approx(0.5));
}

TEST_CASE("divergence: centered differences with no-flux boundaries") {
  Grid g = Grid::make_1d(2, 0.0, 2.0);
  FluxField m(g);
  m.face_x(1) = 0.5;
  auto div = divergence(m);
  CHECK(div[0] == doctest::Approx(0.5));
  CHECK(div[1] == doctest::Approx(-0.5));

  FluxField zero(g);
  for (double v : divergence(zero)) CHECK(v == 0.0);
}

TEST_CASE("divergence sums to zero and is linear") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Grid g = Grid::make_2d(7, 5, 0.0, 1.0, 0.0, 2.0);
  FluxField m1(g), m2(g);
  for (int l = 0; l < g.ny; ++l)
    for (int j = 1; j < g.nx; ++j) {
      m1.face_x(j, l) = dist(rng);
      m2.face_x(j, l) = dist(rng);
    }
  for (int l = 1; l < g.ny; ++l)
    for (int j = 0; j < g.nx; ++j) {
      m1.face_y(j, l) = dist(rng);
      m2.face_y(j, l) = dist(rng);
    }

  double norm = 0.0, sum = 0.0;
  for (double v : m1.x) norm += std::abs(v);
  for (double v : divergence(m1)) sum += v;
  CHECK(std::abs(sum) <= 1e-12 * std::max(1.0, norm));

  auto d1 = divergence(m1), d2 = divergence(m2);
  FluxField combo(g);
  const double a = 0.3, b = -1.7;
  for (std::size_t i = 0; i < combo.x.size(); ++i)
    combo.x[i] = a * m1.x[i] + b * m2.x[i];
  for (std::size_t i = 0; i < combo.y.size(); ++i)
    combo.y[i] = a * m1.y[i] + b * m2.y[i];
  auto dc = divergence(combo);
  for (int i = 0; i < g.n_cells(); ++i)
    CHECK(dc[i] == doctest::Approx(a * d1[i] + b * d2[i]).epsilon(1e-12));
}

TEST_CASE("2D divergence of an x-only flux matches row-wise 1D divergence") {
  Grid g2 = Grid::make_2d(6, 4, 0.0, 3.0, 0.0, 1.0);
  Grid g1 = Grid::make_1d(6, 0.0, 3.0);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  FluxField m2(g2);
  for (int l = 0; l < g2.ny; ++l)
    for (int j = 1; j < g2.nx; ++j) m2.face_x(j, l) = dist(rng);
  auto d2 = divergence(m2);
  for (int l = 0; l < g2.ny; ++l) {
    FluxField m1(g1);
    for (int j = 1; j < g1.nx; ++j) m1.face_x(j) = m2.face_x(j, l);
    auto d1 = divergence(m1);
    for (int j = 0; j < g1.nx; ++j)
      CHECK(d2[g2.cell_index(j, l)] == doctest::Approx(d1[j]).epsilon(1e-14));
  }
}

TEST_CASE("face averages") {
  Grid g = Grid::make_1d(2, 0.0, 2.0);
  DensityField rho(g);
  rho.values = {1.0, 3.0};
  CHECK(face_average(rho).x[0] == doctest::Approx(2.0));

  rho.values = {1.0, std::exp(1.0)};
  CHECK(face_average(rho).x[0] ==
        doctest::Approx(0.5 * (1.0 + std::exp(1.0))));

  Grid g2 = Grid::make_2d(3, 3, 0.0, 1.0, 0.0, 1.0);
  DensityField c(g2, 0.7);
  auto fa = face_average(c);
  for (double v : fa.x) CHECK(v == doctest::Approx(0.7));
  for (double v : fa.y) CHECK(v == doctest::Approx(0.7));
}

TEST_CASE("density field mass and minimum") {
  Grid g = Grid::make_1d(4, 0.0, 1.0);
  DensityField rho(g);
  rho.values = {1.0, 2.0, 3.0, 2.0};
  CHECK(rho.mass() == doctest::Approx(8.0 * 0.25));
  CHECK(rho.min_value() == 1.0);
}
