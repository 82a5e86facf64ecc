#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace wgf {

/// Uniform cell-centered grid in 1D or 2D. Cells are flattened row-major
/// with x fastest; this ordering is the canonical one for every matrix in
/// the library.
struct Grid {
  int dim = 1;
  int nx = 0;
  int ny = 1;  // 1 in 1D
  double xmin = 0.0, xmax = 1.0;
  double ymin = 0.0, ymax = 1.0;
  double dx = 0.0, dy = 0.0;

  static Grid make_1d(int nx, double xmin, double xmax);
  static Grid make_2d(int nx, int ny, double xmin, double xmax, double ymin,
                      double ymax);

  int n_cells() const { return dim == 1 ? nx : nx * ny; }
  int n_faces_x() const { return dim == 1 ? nx + 1 : (nx + 1) * ny; }
  int n_faces_y() const { return dim == 1 ? 0 : nx * (ny + 1); }
  // Interior faces are the flux unknowns; boundary faces are pinned to zero.
  int n_interior_faces_x() const { return dim == 1 ? nx - 1 : (nx - 1) * ny; }
  int n_interior_faces_y() const { return dim == 1 ? 0 : nx * (ny - 1); }
  int n_interior_faces() const {
    return n_interior_faces_x() + n_interior_faces_y();
  }

  int cell_index(int j, int l = 0) const { return l * nx + j; }
  double cell_volume() const { return dim == 1 ? dx : dx * dy; }

  double x_center(int j) const { return xmin + (j + 0.5) * dx; }
  double y_center(int l) const { return ymin + (l + 0.5) * dy; }
};

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Density values, one per cell, row-major.
struct DensityField {
  Grid grid;
  std::vector<double> values;

  DensityField() = default;
  explicit DensityField(const Grid& g, double fill = 0.0)
      : grid(g), values(static_cast<std::size_t>(g.n_cells()), fill) {}

  double mass() const;
  double min_value() const;
};

/// Face-centered momentum, one value per face per axis, including boundary
/// faces which are identically zero (no-flux). x-faces are indexed
/// (j, l) -> l*(nx+1)+j for j in [0, nx]; y-faces (j, l) -> l*nx+j for
/// l in [0, ny].
struct FluxField {
  Grid grid;
  std::vector<double> x;
  std::vector<double> y;

  FluxField() = default;
  explicit FluxField(const Grid& g)
      : grid(g),
        x(static_cast<std::size_t>(g.n_faces_x()), 0.0),
        y(static_cast<std::size_t>(g.n_faces_y()), 0.0) {}

  double& face_x(int j, int l = 0) { return x[l * (grid.nx + 1) + j]; }
  double face_x(int j, int l = 0) const { return x[l * (grid.nx + 1) + j]; }
  double& face_y(int j, int l) { return y[l * grid.nx + j]; }
  double face_y(int j, int l) const { return y[l * grid.nx + j]; }
};

/// Discrete divergence with centered differences: cell i receives
/// sum over axes of (m_{i+e/2} - m_{i-e/2}) / dx_e. Output sums to zero
/// because boundary faces carry no flux.
std::vector<double> divergence(const FluxField& m);

/// Arithmetic mean of the two cells adjacent to each interior face,
/// returned per axis. Boundary faces are excluded.
struct FaceAverages {
  std::vector<double> x;  // interior x-faces, (nx-1)*ny
  std::vector<double> y;  // interior y-faces, nx*(ny-1)
};
FaceAverages face_average(const DensityField& rho);

/// Cell-center coordinates, row-major. y is 0 for 1D grids.
std::vector<Point> cell_centers(const Grid& grid);

}  // namespace wgf
