#pragma once

#include <utility>
#include <vector>

#include "wgf/grid.hpp"

namespace wgf {

/// Index map for the packed step unknown u = [rho-block ; m-blocks].
/// Only interior faces are unknowns; boundary faces stay pinned to zero.
struct StateLayout {
  Grid grid;

  explicit StateLayout(const Grid& g) : grid(g) {}

  int n_rho() const { return grid.n_cells(); }
  int n_mx() const { return grid.n_interior_faces_x(); }
  int n_my() const { return grid.n_interior_faces_y(); }
  int size() const { return n_rho() + n_mx() + n_my(); }

  int rho_index(int cell) const { return cell; }
  /// Interior x-face between cells (j-1,l) and (j,l); j in [1, nx-1].
  int mx_index(int j, int l = 0) const {
    return n_rho() + l * (grid.nx - 1) + (j - 1);
  }
  /// Interior y-face between cells (j,l-1) and (j,l); l in [1, ny-1].
  int my_index(int j, int l) const {
    return n_rho() + n_mx() + (l - 1) * grid.nx + j;
  }

  std::vector<double> pack(const DensityField& rho, const FluxField& m) const;
  std::pair<DensityField, FluxField> unpack(const std::vector<double>& u) const;
};

}  // namespace wgf
