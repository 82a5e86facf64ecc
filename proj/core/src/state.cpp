#include "wgf/state.hpp"

#include <stdexcept>

namespace wgf {

std::vector<double> StateLayout::pack(const DensityField& rho,
                                      const FluxField& m) const {
  if ((int)rho.values.size() != n_rho())
    throw std::invalid_argument("StateLayout::pack: density size");
  if ((int)m.x.size() != grid.n_faces_x() || (int)m.y.size() != grid.n_faces_y())
    throw std::invalid_argument("StateLayout::pack: flux size");
  std::vector<double> u(static_cast<std::size_t>(size()), 0.0);
  for (int i = 0; i < n_rho(); ++i) u[i] = rho.values[i];
  for (int l = 0; l < grid.ny; ++l)
    for (int j = 1; j < grid.nx; ++j) u[mx_index(j, l)] = m.face_x(j, l);
  if (grid.dim == 2)
    for (int l = 1; l < grid.ny; ++l)
      for (int j = 0; j < grid.nx; ++j) u[my_index(j, l)] = m.face_y(j, l);
  return u;
}

std::pair<DensityField, FluxField> StateLayout::unpack(
    const std::vector<double>& u) const {
  if ((int)u.size() != size())
    throw std::invalid_argument("StateLayout::unpack: state size");
  DensityField rho(grid);
  FluxField m(grid);
  for (int i = 0; i < n_rho(); ++i) rho.values[i] = u[i];
  for (int l = 0; l < grid.ny; ++l)
    for (int j = 1; j < grid.nx; ++j) m.face_x(j, l) = u[mx_index(j, l)];
  if (grid.dim == 2)
    for (int l = 1; l < grid.ny; ++l)
      for (int j = 0; j < grid.nx; ++j) m.face_y(j, l) = u[my_index(j, l)];
  return {std::move(rho), std::move(m)};
}

}  // namespace wgf
