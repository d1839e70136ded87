#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "divcurl/grid.hpp"

namespace divcurl {

/// Real values sampled at every node of a Grid.
///
/// `untrusted_layers` counts the node layers next to the box faces whose
/// values involve one-sided boundary stencils. Sampled fields have 0; every
/// derivative adds one. Composite quantities take the maximum of their inputs.
class ScalarField {
 public:
  explicit ScalarField(const Grid& grid);
  ScalarField(const Grid& grid, std::vector<double> values,
              int untrusted_layers = 0);

  const Grid& grid() const { return grid_; }
  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t flat) const { return values_[flat]; }
  double at(const NodeIndex& idx) const { return values_[grid_.flat(idx)]; }

  int untrusted_layers() const { return untrusted_layers_; }
  bool trusted(std::size_t flat) const {
    return grid_.depth(flat) >= untrusted_layers_;
  }

  double max_abs() const;

 private:
  Grid grid_;
  std::vector<double> values_;
  int untrusted_layers_ = 0;
};

/// dim scalar components on a shared grid.
class VectorField {
 public:
  explicit VectorField(std::vector<ScalarField> components);
  static VectorField zeros(const Grid& grid);

  const Grid& grid() const { return components_.front().grid(); }
  int dim() const { return static_cast<int>(components_.size()); }
  const ScalarField& operator[](int i) const { return components_[i]; }
  const std::vector<ScalarField>& components() const { return components_; }
  int untrusted_layers() const;
  double max_abs() const;

 private:
  std::vector<ScalarField> components_;
};

/// Antisymmetric dim x dim matrix of scalar fields, entry(i,j) = -entry(j,i).
class SkewMatrixField {
 public:
  /// `upper` holds entries (i,j), i<j, in row-major order:
  /// dim 2: (0,1); dim 3: (0,1), (0,2), (1,2).
  SkewMatrixField(const Grid& grid, std::vector<ScalarField> upper);

  const Grid& grid() const { return grid_; }
  int dim() const { return grid_.dim(); }
  const ScalarField& entry(int i, int j) const {
    return entries_[static_cast<std::size_t>(i * dim() + j)];
  }
  int untrusted_layers() const;

 private:
  Grid grid_;
  std::vector<ScalarField> entries_;
};

using ScalarFunction = std::function<double(const Point&)>;
using VectorFunction = std::function<Point(const Point&)>;

ScalarField sample(const Grid& grid, const ScalarFunction& f);
VectorField sample(const Grid& grid, const VectorFunction& f);
ScalarField constant(const Grid& grid, double value);

ScalarField operator+(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a);
/// Nodewise product.
ScalarField operator*(const ScalarField& a, const ScalarField& b);
ScalarField operator*(double s, const ScalarField& a);

VectorField operator+(const VectorField& a, const VectorField& b);
VectorField operator-(const VectorField& a, const VectorField& b);
VectorField operator-(const VectorField& a);
VectorField operator*(double s, const VectorField& a);
VectorField operator*(const ScalarField& s, const VectorField& a);

/// Nodewise Euclidean inner product.
ScalarField dot(const VectorField& a, const VectorField& b);
/// Nodewise Euclidean norm.
ScalarField magnitude(const VectorField& a);
ScalarField abs(const ScalarField& a);

}  // namespace divcurl
