#include "wgf/grid.hpp"

#include <algorithm>
#include <cmath>

namespace wgf {

Grid Grid::make_1d(int nx, double xmin, double xmax) {
  if (nx < 1 || !(xmax > xmin))
    throw std::invalid_argument("Grid::make_1d: need nx >= 1 and xmax > xmin");
  Grid g;
  g.dim = 1;
  g.nx = nx;
  g.ny = 1;
  g.xmin = xmin;
  g.xmax = xmax;
  g.dx = (xmax - xmin) / nx;
  g.dy = 0.0;
  return g;
}

Grid Grid::make_2d(int nx, int ny, double xmin, double xmax, double ymin,
                   double ymax) {
  if (nx < 1 || ny < 1 || !(xmax > xmin) || !(ymax > ymin))
    throw std::invalid_argument("Grid::make_2d: bad cell counts or bounds");
  Grid g;
  g.dim = 2;
  g.nx = nx;
  g.ny = ny;
  g.xmin = xmin;
  g.xmax = xmax;
  g.ymin = ymin;
  g.ymax = ymax;
  g.dx = (xmax - xmin) / nx;
  g.dy = (ymax - ymin) / ny;
  return g;
}

double DensityField::mass() const {
  double s = 0.0;
  for (double v : values) s += v;
  return s * grid.cell_volume();
}

double DensityField::min_value() const {
  return values.empty() ? 0.0
                        : *std::min_element(values.begin(), values.end());
}

std::vector<double> divergence(const FluxField& m) {
  const Grid& g = m.grid;
  if ((int)m.x.size() != g.n_faces_x() || (int)m.y.size() != g.n_faces_y())
    throw std::invalid_argument("divergence: flux sized for a different grid");
  std::vector<double> out(static_cast<std::size_t>(g.n_cells()), 0.0);
  for (int l = 0; l < g.ny; ++l) {
    for (int j = 0; j < g.nx; ++j) {
      double d = (m.face_x(j + 1, l) - m.face_x(j, l)) / g.dx;
      if (g.dim == 2) d += (m.face_y(j, l + 1) - m.face_y(j, l)) / g.dy;
      out[g.cell_index(j, l)] = d;
    }
  }
  return out;
}

FaceAverages face_average(const DensityField& rho) {
  const Grid& g = rho.grid;
  FaceAverages fa;
  fa.x.resize(static_cast<std::size_t>(g.n_interior_faces_x()));
  fa.y.resize(static_cast<std::size_t>(g.n_interior_faces_y()));
  for (int l = 0; l < g.ny; ++l)
    for (int j = 0; j + 1 < g.nx; ++j)
      fa.x[l * (g.nx - 1) + j] = 0.5 * (rho.values[g.cell_index(j, l)] +
                                        rho.values[g.cell_index(j + 1, l)]);
  if (g.dim == 2)
    for (int l = 0; l + 1 < g.ny; ++l)
      for (int j = 0; j < g.nx; ++j)
        fa.y[l * g.nx + j] = 0.5 * (rho.values[g.cell_index(j, l)] +
                                    rho.values[g.cell_index(j, l + 1)]);
  return fa;
}

std::vector<Point> cell_centers(const Grid& g) {
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(g.n_cells()));
  for (int l = 0; l < g.ny; ++l)
    for (int j = 0; j < g.nx; ++j)
      pts.push_back({g.x_center(j), g.dim == 2 ? g.y_center(l) : 0.0});
  return pts;
}

}  // namespace wgf
