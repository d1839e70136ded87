#include "divcurl/grid.hpp"

#include <algorithm>
#include <string>

namespace divcurl {

Grid::Grid(int dim, int n) : dim_(dim), n_(n) {
  if (dim != 2 && dim != 3) {
    throw std::invalid_argument("unsupported dimension " + std::to_string(dim) +
                                " (expected 2 or 3)");
  }
  if (n < 8) {
    throw std::invalid_argument("grid needs at least 8 points per axis, got " +
                                std::to_string(n));
  }
  h_ = 1.0 / static_cast<double>(n - 1);
  strides_ = {1, static_cast<std::size_t>(n),
              static_cast<std::size_t>(n) * static_cast<std::size_t>(n)};
  size_ = 1;
  for (int a = 0; a < dim; ++a) size_ *= static_cast<std::size_t>(n);
}

NodeIndex Grid::node(std::size_t flat) const {
  NodeIndex idx{0, 0, 0};
  const auto un = static_cast<std::size_t>(n_);
  for (int a = 0; a < dim_; ++a) {
    idx[a] = static_cast<int>(flat % un);
    flat /= un;
  }
  return idx;
}

Point Grid::point(std::size_t flat) const {
  const NodeIndex idx = node(flat);
  return {coord(idx[0]), coord(idx[1]), coord(idx[2])};
}

int Grid::depth(std::size_t flat) const {
  const NodeIndex idx = node(flat);
  int d = n_;
  for (int a = 0; a < dim_; ++a) {
    d = std::min({d, idx[a], n_ - 1 - idx[a]});
  }
  return d;
}

Grid make_grid(int dim, int n) { return Grid(dim, n); }

void require_same_grid(const Grid& a, const Grid& b, const char* where) {
  if (!(a == b)) {
    throw GridMismatch(std::string(where) + ": fields live on different grids (" +
                       std::to_string(a.dim()) + "D n=" + std::to_string(a.n()) +
                       " vs " + std::to_string(b.dim()) + "D n=" +
                       std::to_string(b.n()) + ")");
  }
}

}  // namespace divcurl
