#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>

namespace divcurl {

/// Point in R^dim, padded with zeros to three coordinates.
using Point = std::array<double, 3>;

/// Integer node coordinates (i1, i2, i3); unused axes are 0.
using NodeIndex = std::array<int, 3>;

/// Uniform node-centred discretization of the unit box (0,1)^dim.
///
/// Nodes sit at x_k = k*h for k = 0..n-1 on every axis, h = 1/(n-1).
/// Storage order is row-major with axis 1 fastest:
/// flat = i1 + n*(i2 + n*i3).
class Grid {
 public:
  Grid(int dim, int n);

  int dim() const { return dim_; }
  int n() const { return n_; }
  double h() const { return h_; }
  std::size_t size() const { return size_; }

  /// Distance between consecutive nodes along `axis` in flat storage.
  std::size_t stride(int axis) const { return strides_[axis]; }

  double coord(int k) const { return k * h_; }

  std::size_t flat(const NodeIndex& idx) const {
    return static_cast<std::size_t>(idx[0]) + strides_[1] * idx[1] +
           strides_[2] * idx[2];
  }
  NodeIndex node(std::size_t flat) const;
  Point point(std::size_t flat) const;

  /// Number of node layers between `flat` and the nearest box face.
  int depth(std::size_t flat) const;

  bool is_boundary(std::size_t flat) const { return depth(flat) == 0; }

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.dim_ == b.dim_ && a.n_ == b.n_;
  }

 private:
  int dim_;
  int n_;
  double h_;
  std::size_t size_;
  std::array<std::size_t, 3> strides_{};
};

Grid make_grid(int dim, int n);

/// Thrown when fields on different grids are combined.
class GridMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

void require_same_grid(const Grid& a, const Grid& b, const char* where);

}  // namespace divcurl
